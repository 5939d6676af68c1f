"""
Possibilistic bases: sets of weighted clauses (p, alpha) read as N(p) >= alpha,
their possibility distribution, alpha-cuts, entailment and subsumption.
"""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from logic.propositional import (Clause, Formula, Not, Variable,
                                 all_interpretations, check_guard,
                                 entails_clause,
                                 is_consistent, is_tautology, to_cnf)
from possibilistic.distribution import ONE, ZERO, PossibilityDistribution
from utils.errors import ParseError

logger = logging.getLogger(__name__)

WEIGHT_RE = re.compile(r'^\s*(?:(?P<num>\d+)\s*/\s*(?P<den>\d+)|(?P<dec>\d+(?:\.\d*)?|\.\d+))\s*$')


def parse_weight(text, column=None):
    """
    Exact weight from 'num/den' or a decimal ('0.7' is 7/10).

    :param text: weight text
    :param column: column of text in its line, for error reporting
    :return: Fraction in [0, 1]
    """
    m = WEIGHT_RE.match(text)
    if m is None:
        raise ParseError('malformed weight {!r}'.format(text.strip()), column=column)
    if m.group('num') is not None:
        if int(m.group('den')) == 0:
            raise ParseError('malformed weight {!r}: zero denominator'.format(text.strip()), column=column)
        w = Fraction(int(m.group('num')), int(m.group('den')))
    else:
        w = Fraction(m.group('dec'))
    if w > 1:
        raise ParseError('weight {} is outside [0, 1]'.format(text.strip()), column=column)
    return w


def format_weight(w):
    w = Fraction(w)
    if w.denominator == 1:
        return str(w.numerator)
    return '{}/{}'.format(w.numerator, w.denominator)


@dataclass(frozen=True)
class WeightedClause:
    clause: Clause
    weight: Fraction

    def __post_init__(self):
        if not isinstance(self.weight, Fraction):
            object.__setattr__(self, 'weight', Fraction(self.weight))
        if not 0 < self.weight <= 1:
            raise ValueError('Invalid weight {} for clause {}'.format(self.weight, self.clause))
        if self.clause != self.clause.canonical():
            raise ValueError('Clause {} is not canonical'.format(self.clause))
        if is_tautology(self.clause):
            raise ValueError('Tautological clause {}'.format(self.clause))

    def __str__(self):
        return '{} : {}'.format(self.clause, format_weight(self.weight))


@dataclass(frozen=True)
class WeightedFormula:
    formula: Formula
    weight: Fraction

    def __str__(self):
        return '{} : {}'.format(self.formula, format_weight(self.weight))


@dataclass(frozen=True)
class FormulaBase:
    """ A base of arbitrary weighted formulas, before clausal preprocessing """
    variables: Tuple[Variable, ...]
    formulas: Tuple[WeightedFormula, ...]


def processing_order(entries):
    """ Decreasing weight, ties by canonical clause order """
    return sorted(entries, key=lambda wc: (-wc.weight, wc.clause.sort_key))


class PossBase(object):
    """
    Immutable set of weighted clauses over a declared variable universe.
    Duplicate clauses keep the largest weight; tautologies and weight-0
    entries carry no constraint and are dropped.
    """

    def __init__(self, variables, entries=()):
        self.variables = tuple(variables)
        weights = {}
        for entry in entries:
            clause, weight = (entry.clause, entry.weight) if isinstance(entry, WeightedClause) else entry
            clause = clause.canonical()
            weight = Fraction(weight)
            if weight == 0:
                logger.debug('Dropping weight-0 clause {}'.format(clause))
                continue
            if is_tautology(clause):
                logger.debug('Dropping tautology {}'.format(clause))
                continue
            if clause in weights:
                weights[clause] = max(weights[clause], weight)
            else:
                weights[clause] = weight
        names = {v.name for v in self.variables}
        for clause in weights:
            for var in clause.variables:
                if var.name not in names:
                    raise ValueError('Clause {} uses undeclared variable {}'.format(clause, var))
        self._weights = weights
        self._entries = tuple(WeightedClause(c, w) for c, w in weights.items())

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __contains__(self, item):
        if isinstance(item, WeightedClause):
            return self._weights.get(item.clause) == item.weight
        return item in self._weights

    def __eq__(self, other):
        if not isinstance(other, PossBase):
            return NotImplemented
        return self.variables == other.variables and self._weights == other._weights

    def __hash__(self):
        return hash((self.variables, frozenset(self._weights.items())))

    def __repr__(self):
        return 'PossBase({{{}}})'.format(', '.join(str(wc) for wc in self._entries))

    @property
    def entries(self):
        return self._entries

    def weight_of(self, clause):
        return self._weights.get(clause.canonical(), ZERO)

    def clauses(self):
        return frozenset(self._weights)

    def as_dict(self):
        return dict(self._weights)

    def add(self, *entries):
        return PossBase(self.variables, self._entries + tuple(entries))

    def remove(self, *clauses):
        drop = {c.canonical() for c in clauses}
        return PossBase(self.variables, [wc for wc in self._entries if wc.clause not in drop])

    def union(self, other):
        return PossBase(self.variables, self._entries + tuple(other))

    def weights(self):
        return sorted(set(self._weights.values()), reverse=True)


def pi_from_base(S, max_vars=None):
    """
    pi(w) = 1 if w satisfies every clause, else 1 - max weight of the
    clauses w falsifies.
    """
    check_guard(len(S.variables), max_vars)
    entries = [([(l.variable.index, 1 if l.positive else 0) for l in wc.clause.literals], wc.weight)
               for wc in S]
    degrees = []
    for w in all_interpretations(len(S.variables)):
        worst = ZERO
        for lits, weight in entries:
            if weight > worst and not any(w[i] == b for i, b in lits):
                worst = weight
        degrees.append(ONE - worst)
    return PossibilityDistribution(S.variables, tuple(degrees))


def alpha_cut(S, a, strict=False):
    """ Clauses with weight >= a (or > a when strict) """
    a = Fraction(a)
    if a <= 0:
        raise ValueError('Invalid cut level {}'.format(a))
    if strict:
        return frozenset(wc.clause for wc in S if wc.weight > a)
    return frozenset(wc.clause for wc in S if wc.weight >= a)


def entails(S, p, a):
    """
    S |- (p, a) iff the a-cut of S together with the clauses of not p is
    inconsistent.

    :param p: Formula or Clause
    """
    cut = alpha_cut(S, a)
    if isinstance(p, Clause):
        return entails_clause(cut, p)
    return not is_consistent(list(cut) + list(to_cnf(Not(p))))


def is_subsumed(S, wc, strict=False):
    """
    (p, a) in S is subsumed when the other clauses of weight >= a entail p;
    strictly subsumed when the clauses of weight > a already do.
    """
    if wc not in S:
        raise ValueError('Clause {} is not in the base'.format(wc))
    if strict:
        others = [e.clause for e in S if e.weight > wc.weight and e.clause != wc.clause]
    else:
        others = [e.clause for e in S if e.weight >= wc.weight and e.clause != wc.clause]
    return entails_clause(others, wc.clause)


def strictly_subsumed(S, wc):
    return is_subsumed(S, wc, strict=True)


def has_strictly_subsumed(S):
    return any(strictly_subsumed(S, wc) for wc in S)


def remove_subsumed(S):
    """
    Drop subsumed clauses one at a time, checking each against the current
    base. Removal only shrinks cuts, so a single pass leaves no subsumed entry.
    """
    current = S
    for wc in processing_order(S.entries):
        if is_subsumed(current, wc):
            current = current.remove(wc.clause)
    return current


def equivalent(S1, S2, max_vars=None):
    if tuple(v.name for v in S1.variables) != tuple(v.name for v in S2.variables):
        raise ValueError('Bases are over different variables')
    return pi_from_base(S1, max_vars).degrees == pi_from_base(S2, max_vars).degrees


def inconsistency_degree(S):
    """ Largest a whose a-cut is inconsistent, 0 for a consistent base """
    for a in S.weights():
        if not is_consistent(alpha_cut(S, a)):
            return a
    return ZERO
