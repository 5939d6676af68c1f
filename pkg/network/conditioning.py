"""
Conditioning of possibility distributions (min-based and product-based) and
the kappa-ranking bridge, degree = 2^-rank.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from logic.propositional import Not, Variable, all_interpretations, evaluate
from network.graph import check_mode
from possibilistic.distribution import (ONE, ZERO, PossibilityDistribution,
                                        possibility)
from utils.errors import EvidenceConflictError

INF = math.inf

Rank = Union[int, float]


def _evidence_level(d, p):
    level = possibility(d, p)
    if level == ZERO:
        raise EvidenceConflictError(p)
    return level


def condition_min(d, p):
    """
    Min-based conditioning: worlds of p at the level Pi(p) rise to 1, the
    other models of p keep their degree, countermodels get 0.
    """
    level = _evidence_level(d, p)
    degrees = []
    for w, deg in d.items():
        if not evaluate(p, w):
            degrees.append(ZERO)
        elif deg == level:
            degrees.append(ONE)
        else:
            degrees.append(deg)
    return PossibilityDistribution(d.variables, tuple(degrees))


def condition_product(d, p):
    """ Product-based conditioning: pi(w) / Pi(p) on models of p, 0 elsewhere """
    level = _evidence_level(d, p)
    return PossibilityDistribution(d.variables, tuple(
        deg / level if evaluate(p, w) else ZERO for w, deg in d.items()))


def condition(d, p, mode='min'):
    if check_mode(mode) == 'min':
        return condition_min(d, p)
    return condition_product(d, p)


def conditional_possibility(d, q, p, mode='min'):
    """ Pi(q | p) under the given conditioning rule """
    return possibility(condition(d, p, mode), q)


def necessity_given(d, q, p, mode='min'):
    """ N(q | p) = 1 - Pi(not q | p) """
    return ONE - conditional_possibility(d, Not(q), p, mode)


@dataclass(frozen=True)
class KappaRanking:
    variables: Tuple[Variable, ...]
    ranks: Tuple[Rank, ...]

    def __post_init__(self):
        if len(self.ranks) != 2 ** len(self.variables):
            raise ValueError('Invalid ranking: {} ranks for {} variables'.format(
                len(self.ranks), len(self.variables)))
        for r in self.ranks:
            if r != INF and (int(r) != r or r < 0):
                raise ValueError('Invalid rank {}'.format(r))

    def items(self):
        return zip(all_interpretations(len(self.variables)), self.ranks)

    def rank_of(self, p):
        """ kappa(p) = min rank over models of p, infinite when p has none """
        return min((r for w, r in self.items() if evaluate(p, w)), default=INF)


def rank_to_degree(r):
    if r == INF:
        return ZERO
    return Fraction(1, 2 ** int(r))


def kappa_to_possibility(k):
    return PossibilityDistribution(k.variables, tuple(rank_to_degree(r) for r in k.ranks))


def condition_kappa(k, p):
    """ kappa(w | p) = kappa(w) - kappa(p) for models of p, infinite otherwise """
    base = k.rank_of(p)
    if base == INF:
        raise EvidenceConflictError(p)
    return KappaRanking(k.variables, tuple(
        r - base if evaluate(p, w) and r != INF else INF for w, r in k.items()))


def degree_to_rank(degree):
    degree = Fraction(degree)
    if degree == ZERO:
        return INF
    den = degree.denominator
    if degree.numerator != 1 or den & (den - 1) != 0:
        raise ValueError('Degree {} is not a power of 1/2'.format(degree))
    return den.bit_length() - 1


def possibility_to_kappa(d):
    """ Inverse of kappa_to_possibility for degrees that are 0 or powers of 1/2 """
    return KappaRanking(d.variables, tuple(degree_to_rank(deg) for deg in d.degrees))
