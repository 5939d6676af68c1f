"""
Base to min-based network.

For each variable X of the ordering, the clauses whose earliest variable is X
(head clauses) are cleaned of subsumed and replaceable entries, their other
variables become the parents of X, they are rewritten to one clause per
parent instantiation, and the rewritten set gives the table of X directly:
Pi(x | P) = 1 - a when (!x | !P : a) is a head clause of X, 1 otherwise.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from logic.propositional import Clause, Literal, Variable, to_cnf
from network.graph import (ConditionalTable, PossNetwork,
                           parent_instantiations)
from possibilistic.base import (FormulaBase, PossBase, WeightedClause,
                                entails, is_subsumed, processing_order)
from possibilistic.distribution import ONE, ZERO

logger = logging.getLogger(__name__)

SUBSUMED = 'subsumed'
REPLACED = 'replaced'
EXTENDED = 'extended'
REWRITTEN = 'rewritten'


@dataclass(frozen=True)
class TraceStep:
    kind: str
    variable: Variable
    removed: Tuple[WeightedClause, ...]
    added: Tuple[WeightedClause, ...] = ()

    def __str__(self):
        text = '[{}] {}: -{{{}}}'.format(self.variable, self.kind, ', '.join(str(wc) for wc in self.removed))
        if self.added:
            text += ' +{{{}}}'.format(', '.join(str(wc) for wc in self.added))
        return text


@dataclass
class CompilationResult:
    network: PossNetwork
    ordering: Tuple[Variable, ...]
    partition: Dict[Variable, Tuple[WeightedClause, ...]] = field(default_factory=dict)
    trace: List[TraceStep] = field(default_factory=list)
    base: PossBase = None

    def parents(self, var):
        return self.network.parents[var]


def preprocess(S):
    """
    Clausal form of a base of weighted formulas, each clause at the weight of
    its formula; tautologies vanish.

    :param S: FormulaBase or PossBase
    :return: PossBase
    """
    if isinstance(S, PossBase):
        return PossBase(S.variables, S.entries)
    if not isinstance(S, FormulaBase):
        raise TypeError('Invalid base {}'.format(type(S).__name__))
    entries = []
    for wf in S.formulas:
        clauses = to_cnf(wf.formula)
        if not clauses:
            logger.debug('Dropping tautological formula {}'.format(wf))
        entries.extend((c, wf.weight) for c in clauses)
    return PossBase(S.variables, entries)


def _split(wc, node):
    """ (head literal, remaining literals) of a clause containing node """
    head = [l for l in wc.clause.literals if l.variable == node]
    if len(head) != 1:
        raise ValueError('Clause {} has no single instance of {}'.format(wc.clause, node))
    return head[0], tuple(l for l in wc.clause.literals if l.variable != node)


def complete_extension(K, node, parents):
    """
    One clause (x | lits of P : a) per instance x of node and instantiation P
    of the parents, with a the largest weight of a clause (x | p : a) in K
    whose literals of p all occur in P. Entries with a = 0 are left out.
    """
    parents = tuple(sorted(parents, key=lambda v: v.index))
    parent_set = set(parents)
    split = []
    for wc in K:
        head, rest = _split(wc, node)
        if not {l.variable for l in rest} <= parent_set:
            raise ValueError('Clause {} uses variables outside the parents of {}'.format(wc.clause, node))
        split.append((head, frozenset(rest), wc.weight))

    out = []
    for positive in (False, True):
        head = Literal(node, positive)
        for pvals in parent_instantiations(parents):
            inst = frozenset(Literal(p, v == 1) for p, v in zip(parents, pvals))
            alpha = max((w for h, rest, w in split if h == head and rest <= inst), default=ZERO)
            if alpha > 0:
                out.append(WeightedClause(Clause.of((head,) + tuple(inst)), alpha))
    return out


def _head_clauses(S, node, later):
    return [wc for wc in S if node in wc.clause.variables and wc.clause.variables - {node} <= later]


def _replace(S, wc, p, trace, kind, node):
    added = WeightedClause(p, wc.weight)
    trace.append(TraceStep(kind, node, (wc,), (added,)))
    return S.remove(wc.clause).add(added)


def build_graph(S, ordering=None):
    """
    Compile a clausal base into a min-based network.

    :param S: preprocessed PossBase
    :param ordering: sequence of Variable covering S.variables; defaults to index order
    :return: CompilationResult
    """
    ordering = tuple(S.variables if ordering is None else ordering)
    if sorted(v.index for v in ordering) != list(range(len(S.variables))) or set(ordering) != set(S.variables):
        raise ValueError('Invalid ordering: it must list every variable of the base exactly once')
    if any(wc.clause.is_empty() for wc in S):
        raise ValueError('Invalid base: the empty clause has no variable to attach to')

    current = S
    trace = []
    parents = {}
    partition = {}
    for i, node in enumerate(ordering):
        later = frozenset(ordering[i + 1:])

        for wc in processing_order(_head_clauses(current, node, later)):
            if wc not in current:
                continue
            _, rest = _split(wc, node)
            if is_subsumed(current, wc):
                trace.append(TraceStep(SUBSUMED, node, (wc,)))
                current = current.remove(wc.clause)
            elif rest and entails(current, Clause(rest), wc.weight):
                current = _replace(current, wc, Clause(rest), trace, REPLACED, node)

        K = _head_clauses(current, node, later)
        pars = tuple(sorted({v for wc in K for v in wc.clause.variables} - {node}, key=lambda v: v.index))
        parents[node] = pars

        E = complete_extension(K, node, pars)
        if set(K) != set(E):
            trace.append(TraceStep(EXTENDED, node, tuple(processing_order(K)), tuple(processing_order(E))))
        current = current.remove(*[wc.clause for wc in K]).add(*E)

        for wc in processing_order(_head_clauses(current, node, later)):
            _, rest = _split(wc, node)
            if rest and entails(current, Clause(rest), wc.weight):
                current = _replace(current, wc, Clause(rest), trace, REWRITTEN, node)

        partition[node] = tuple(processing_order(_head_clauses(current, node, later)))
        logger.debug('{}: parents {{{}}}, {} head clauses'.format(
            node, ', '.join(str(p) for p in pars), len(partition[node])))

    network = _tables(S.variables, parents, partition)
    return CompilationResult(network=network, ordering=ordering, partition=partition, trace=trace, base=current)


def _tables(variables, parents, partition):
    tables = {}
    for node in variables:
        pars = parents.get(node, ())
        table = ConditionalTable(node, pars)
        for wc in partition.get(node, ()):
            head, rest = _split(wc, node)
            by_var = {l.variable: l.positive for l in rest}
            if set(by_var) != set(pars):
                raise ValueError('Clause {} does not instantiate every parent of {}'.format(wc.clause, node))
            # the clause is falsified by the complement of each of its literals
            value = 0 if head.positive else 1
            pvals = tuple(0 if by_var[p] else 1 for p in pars)
            table.set(value, pvals, ONE - wc.weight)
        tables[node] = table
    return PossNetwork(variables, parents, tables)


def conditional_tables(r):
    """ Tables read off the head clauses of a compilation """
    return _tables(r.network.variables, r.network.parents, r.partition)


def replay_trace(S, trace):
    """ The base after each trace step, starting from S """
    current = S
    states = []
    for step in trace:
        current = current.remove(*[wc.clause for wc in step.removed]).add(*step.added)
        states.append(current)
    return states
