"""
Network to base: each triple (a, P, alpha) becomes the clause
(!a | !P : 1 - alpha). The min chain rule is the union of these clauses, the
product chain rule their iterated product combination.
"""
import logging

from logic.propositional import Clause
from network.graph import check_mode, triples
from possibilistic.base import PossBase, WeightedClause
from possibilistic.distribution import ONE

logger = logging.getLogger(__name__)


def triple_to_clause(t):
    literals = [~t.instance] + [~l for l in t.context]
    return WeightedClause(Clause.of(literals), ONE - t.degree)


def encode_min(G):
    return PossBase(G.variables, [triple_to_clause(t) for t in triples(G)])


def cross_weight(a, b):
    """ a + b - ab, i.e. 1 - (1 - a)(1 - b) """
    return a + b - a * b


def combine_product(S1, S2):
    """
    Base of the pointwise product of two distributions: both bases plus every
    cross disjunction at weight a + b - ab. Tautological disjunctions are
    dropped and duplicate clauses keep the largest weight.
    """
    if tuple(v.name for v in S1.variables) != tuple(v.name for v in S2.variables):
        raise ValueError('Bases are over different variables')
    entries = list(S1) + list(S2)
    for p in S1:
        for q in S2:
            entries.append((p.clause | q.clause, cross_weight(p.weight, q.weight)))
    return PossBase(S1.variables, entries)


def encode_product(G):
    """ Left fold of combine_product over the triples, nodes in topological order """
    result = PossBase(G.variables)
    by_node = {}
    for t in triples(G):
        by_node.setdefault(t.instance.variable, []).append(t)
    for var in G.topological_order():
        for t in by_node.get(var, ()):
            result = combine_product(result, PossBase(G.variables, [triple_to_clause(t)]))
    logger.debug('Product encoding: {} triples -> {} clauses'.format(
        sum(len(ts) for ts in by_node.values()), len(result)))
    return result


def encode(G, mode='min'):
    return encode_min(G) if check_mode(mode) == 'min' else encode_product(G)
