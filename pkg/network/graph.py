"""
Possibilistic networks: a DAG over binary variables with one conditional
possibility table per node, the min / product chain rules, validation and the
chain decomposition of a distribution.
"""
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import networkx as nx

from logic.propositional import (Literal, all_interpretations, check_guard,
                                 conjunction, literal_formula)
from possibilistic.distribution import (ONE, ZERO, PossibilityDistribution,
                                        is_normal, possibility)
from utils.errors import EnumerationGuardError, NormalizationError

logger = logging.getLogger(__name__)

MODES = ('min', 'prod')


def check_mode(mode):
    if mode == 'product':
        return 'prod'
    if mode not in MODES:
        raise ValueError('Invalid mode {}'.format(mode))
    return mode


def parent_instantiations(parents):
    """ All 0/1 assignments to the parents, in enumeration order """
    return list(itertools.product((0, 1), repeat=len(parents)))


def context_literals(parents, values):
    return tuple(Literal(p, v == 1) for p, v in zip(parents, values))


class ConditionalTable(object):
    """
    Sparse table Pi(x | P) for one node. Entries are keyed by the node value
    (0/1) and the tuple of parent values, parents sorted by variable index.
    Unlisted entries are 1.
    """

    def __init__(self, node, parents=(), entries=None):
        self.node = node
        self.parents = tuple(sorted(parents, key=lambda v: v.index))
        self._entries = {}
        for (value, pvals), degree in (entries or {}).items():
            self.set(value, pvals, degree)

    def _key(self, value, pvals):
        pvals = tuple(int(v) for v in pvals)
        if value not in (0, 1) or len(pvals) != len(self.parents) or any(v not in (0, 1) for v in pvals):
            raise ValueError('Invalid table key ({}, {}) for node {}'.format(value, pvals, self.node))
        return int(value), pvals

    def get(self, value, pvals=()):
        return self._entries.get(self._key(value, pvals), ONE)

    def set(self, value, pvals, degree):
        degree = Fraction(degree)
        if not 0 <= degree <= 1:
            raise ValueError('Invalid possibility degree {} for node {}'.format(degree, self.node))
        key = self._key(value, pvals)
        if degree == ONE:
            self._entries.pop(key, None)
        else:
            self._entries[key] = degree

    def get_literal(self, instance, context=()):
        """ Pi(instance | context) with context given as parent literals """
        by_var = {l.variable: l.positive for l in context}
        if set(by_var) != set(self.parents):
            raise ValueError('Context {} does not match parents of {}'.format(
                ' '.join(str(l) for l in context), self.node))
        pvals = tuple(1 if by_var[p] else 0 for p in self.parents)
        return self.get(1 if instance.positive else 0, pvals)

    def rows(self):
        """ (parent values, Pi(not x | P), Pi(x | P)) for every parent instantiation """
        return [(pvals, self.get(0, pvals), self.get(1, pvals)) for pvals in parent_instantiations(self.parents)]

    def non_one(self):
        """ Entries different from 1 in canonical order """
        return sorted(self._entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __eq__(self, other):
        if not isinstance(other, ConditionalTable):
            return NotImplemented
        return self.node == other.node and self.parents == other.parents and self._entries == other._entries

    def __repr__(self):
        return 'ConditionalTable({} | {}, {})'.format(
            self.node, ' '.join(str(p) for p in self.parents), self._entries)


@dataclass(frozen=True)
class Triple:
    instance: Literal
    context: Tuple[Literal, ...]
    degree: Fraction

    def __post_init__(self):
        if not 0 <= self.degree < 1:
            raise ValueError('Invalid triple degree {}'.format(self.degree))

    def __str__(self):
        ctx = ' '.join(str(l) for l in self.context) if self.context else '-'
        return '({}, {}, {})'.format(self.instance, ctx, self.degree)


class PossNetwork(object):
    """
    Directed possibilistic graph. Nodes are Variables; parents[v] is the
    tuple of parents of v sorted by index; tables[v] is its ConditionalTable.
    """

    def __init__(self, variables, parents=None, tables=None):
        self.variables = tuple(variables)
        parents = parents or {}
        tables = tables or {}
        self.parents = {}
        self.tables = {}
        for var in self.variables:
            pars = tuple(sorted(parents.get(var, ()), key=lambda v: v.index))
            if var in tables and tables[var].parents != pars:
                raise ValueError('Table of {} is not over its parents'.format(var))
            self.parents[var] = pars
            self.tables[var] = tables.get(var, ConditionalTable(var, pars))

        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(self.variables)
        for var, pars in self.parents.items():
            for p in pars:
                if p not in self.parents:
                    raise ValueError('Parent {} of {} is not a node'.format(p, var))
                self.graph.add_edge(p, var)

    @property
    def n_vars(self):
        return len(self.variables)

    def is_acyclic(self):
        return nx.is_directed_acyclic_graph(self.graph)

    def topological_order(self):
        return list(nx.lexicographical_topological_sort(self.graph, key=lambda v: v.index))

    def descendants(self, var):
        return nx.descendants(self.graph, var)

    def edges(self):
        return sorted(self.graph.edges(), key=lambda e: (e[1].index, e[0].index))

    def variable(self, name):
        for var in self.variables:
            if var.name == name:
                return var
        raise KeyError(name)

    def __eq__(self, other):
        if not isinstance(other, PossNetwork):
            return NotImplemented
        return (self.variables == other.variables and self.parents == other.parents
                and self.tables == other.tables)

    def __repr__(self):
        return 'PossNetwork({})'.format(', '.join(
            '{}|{}'.format(v, ''.join(str(p) for p in self.parents[v])) for v in self.variables))


@dataclass
class ValidationReport:
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return len(self.errors) == 0

    def raise_for_errors(self):
        if self.errors:
            raise NormalizationError('; '.join(self.errors))


def _joint(G, combine, max_vars=None):
    check_guard(G.n_vars, max_vars)
    if not G.is_acyclic():
        raise ValueError('Invalid network: the parent relation has a cycle')
    lookups = [([p.index for p in G.parents[v]], v.index, G.tables[v]) for v in G.variables]
    degrees = []
    for w in all_interpretations(G.n_vars):
        acc = ONE
        for pidx, idx, table in lookups:
            acc = combine(acc, table.get(w[idx], tuple(w[i] for i in pidx)))
            if acc == ZERO:
                break
        degrees.append(acc)
    return PossibilityDistribution(G.variables, tuple(degrees))


def joint_min(G, max_vars=None):
    """ pi_m(w) = min over nodes of Pi(x_i | parents of x_i in w) """
    return _joint(G, min, max_vars)


def joint_product(G, max_vars=None):
    """ pi*(w) = product over nodes of Pi(x_i | parents of x_i in w) """
    return _joint(G, lambda a, b: a * b, max_vars)


def joint(G, mode='min', max_vars=None):
    return joint_min(G, max_vars) if check_mode(mode) == 'min' else joint_product(G, max_vars)


def validate_network(G, max_vars=None):
    """
    Structural and normalization check of a network.

    Errors: cycles and rows whose max is not 1 in a context that is possible.
    Warnings: non-normalized rows in a zero-possibility context, coherence
    violations (Pi(x|P) < 1 and Pi(x|P) > Pi_m(P) under the min joint), and
    skipped semantic checks when the network is above the enumeration guard.
    """
    report = ValidationReport()
    if not G.is_acyclic():
        cycle = nx.find_cycle(G.graph)
        report.errors.append('cycle: {}'.format(' -> '.join(str(u) for u, _ in cycle)))
        return report

    bad_rows = []
    for var in G.variables:
        table = G.tables[var]
        for pvals, neg, pos in table.rows():
            if max(neg, pos) != ONE:
                bad_rows.append((var, pvals, max(neg, pos)))

    try:
        check_guard(G.n_vars, max_vars)
    except EnumerationGuardError:
        report.warnings.append('semantic checks skipped: {} variables above the enumeration guard'.format(G.n_vars))
        for var, pvals, top in bad_rows:
            report.errors.append(_row_message(G, var, pvals, top))
        return report

    pi_m = joint_min(G)
    pi_p = joint_product(G)
    for var, pvals, top in bad_rows:
        ctx = conjunction(literal_formula(l) for l in context_literals(G.parents[var], pvals))
        if G.parents[var] and possibility(pi_p, ctx) == ZERO:
            report.warnings.append('{} (zero-possibility context)'.format(_row_message(G, var, pvals, top)))
        else:
            report.errors.append(_row_message(G, var, pvals, top))

    for var in G.variables:
        table = G.tables[var]
        for (value, pvals), degree in table.non_one():
            lits = context_literals(G.parents[var], pvals)
            ctx_pi = possibility(pi_m, conjunction(literal_formula(l) for l in lits))
            if degree > ctx_pi:
                report.warnings.append('coherence: Pi({} | {}) = {} > Pi({}) = {}'.format(
                    Literal(var, value == 1), _ctx_str(lits), degree, _ctx_str(lits), ctx_pi))
    for msg in report.warnings:
        logger.warning(msg)
    return report


def _ctx_str(lits):
    return ' '.join(str(l) for l in lits) if lits else 'true'


def _row_message(G, var, pvals, top):
    lits = context_literals(G.parents[var], pvals)
    return 'normalization: max Pi({} | {}) = {} != 1'.format(var, _ctx_str(lits), top)


def triples(G):
    """ One Triple per table entry below 1, nodes in index order """
    out = []
    for var in G.variables:
        for (value, pvals), degree in G.tables[var].non_one():
            out.append(Triple(Literal(var, value == 1), context_literals(G.parents[var], pvals), degree))
    return out


def _marginals(d, ordering):
    """ Pi of every prefix instantiation of the ordering, keyed by value tuple """
    idx = [v.index for v in ordering]
    marg = [dict() for _ in range(len(ordering) + 1)]
    for w, deg in d.items():
        vals = tuple(w[i] for i in idx)
        for k in range(len(ordering) + 1):
            key = vals[:k]
            if deg > marg[k].get(key, ZERO):
                marg[k][key] = deg
            else:
                marg[k].setdefault(key, ZERO)
    return marg


def decompose(d, ordering, mode='min'):
    """
    Chain decomposition of a normal distribution: node i of the ordering gets
    all earlier variables as parents and the conditional of d given them.

    :param d: normal PossibilityDistribution
    :param ordering: sequence of Variable covering d's variables
    :param mode: 'min' or 'prod' conditioning
    """
    mode = check_mode(mode)
    ordering = tuple(ordering)
    if sorted(v.index for v in ordering) != list(range(d.n_vars)):
        raise ValueError('Invalid ordering: it must list every variable exactly once')
    if not is_normal(d):
        raise NormalizationError('cannot decompose a subnormal distribution (max degree {})'.format(d.max_degree()))

    marg = _marginals(d, ordering)
    parents, tables = {}, {}
    for i, var in enumerate(ordering):
        pars = tuple(sorted(ordering[:i], key=lambda v: v.index))
        table = ConditionalTable(var, pars)
        # prefix keys follow the ordering, table keys follow index order
        pos = [ordering.index(p) for p in pars]
        for prefix, p_ctx in marg[i].items():
            pvals = tuple(prefix[j] for j in pos)
            for value in (0, 1):
                p_joint = marg[i + 1].get(prefix + (value,), ZERO)
                if mode == 'min':
                    degree = ONE if p_joint == p_ctx else p_joint
                else:
                    degree = p_joint / p_ctx if p_ctx > 0 else ZERO
                table.set(value, pvals, degree)
        parents[var] = pars
        tables[var] = table
    return PossNetwork(d.variables, parents, tables)
