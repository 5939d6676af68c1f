"""
Possibility distributions over all interpretations of a variable set, and the
possibility / necessity measures they induce. Degrees are exact Fractions.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from logic.propositional import (Not, Variable, all_interpretations,
                                 enumerate_interpretations,
                                 evaluate, format_world, world_index)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class PossibilityDistribution:
    variables: Tuple[Variable, ...]
    degrees: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.degrees) != 2 ** len(self.variables):
            raise ValueError('Invalid distribution: {} degrees for {} variables'.format(
                len(self.degrees), len(self.variables)))
        for d in self.degrees:
            if not 0 <= d <= 1:
                raise ValueError('Invalid possibility degree {}'.format(d))

    @classmethod
    def from_function(cls, variables, fn, max_vars=None):
        variables = tuple(variables)
        worlds = enumerate_interpretations(len(variables), max_vars)
        return cls(variables, tuple(Fraction(fn(w)) for w in worlds))

    @classmethod
    def uniform(cls, variables, degree=ONE):
        variables = tuple(variables)
        return cls(variables, (Fraction(degree),) * (2 ** len(variables)))

    @property
    def n_vars(self):
        return len(self.variables)

    def worlds(self):
        return all_interpretations(self.n_vars)

    def degree(self, world):
        return self.degrees[world_index(world)]

    def items(self):
        return zip(self.worlds(), self.degrees)

    def max_degree(self):
        return max(self.degrees)

    def same_universe(self, other):
        return tuple(v.name for v in self.variables) == tuple(v.name for v in other.variables)

    def differences(self, other):
        """ Worlds where two distributions over the same variables disagree """
        if not self.same_universe(other):
            raise ValueError('Distributions are over different variables')
        return [(w, a, b) for w, a, b in zip(self.worlds(), self.degrees, other.degrees) if a != b]

    def listing(self):
        """ (bits, literals, degree) per world, in enumeration order """
        rows = []
        for w, d in self.items():
            bits, lits = format_world(w, self.variables)
            rows.append((bits, lits, d))
        return rows


def possibility(d, f):
    """ Pi(f) = max of pi over models of f; the max of the empty set is 0 """
    return max((deg for w, deg in d.items() if evaluate(f, w)), default=ZERO)


def necessity(d, f):
    """ N(f) = min of 1 - pi over countermodels of f; the min of the empty set is 1 """
    return min((ONE - deg for w, deg in d.items() if not evaluate(f, w)), default=ONE)


def is_normal(d):
    return d.max_degree() == ONE


def pointwise_min(d1, d2):
    if not d1.same_universe(d2):
        raise ValueError('Distributions are over different variables')
    return PossibilityDistribution(d1.variables, tuple(min(a, b) for a, b in zip(d1.degrees, d2.degrees)))


def pointwise_product(d1, d2):
    if not d1.same_universe(d2):
        raise ValueError('Distributions are over different variables')
    return PossibilityDistribution(d1.variables, tuple(a * b for a, b in zip(d1.degrees, d2.degrees)))


def dual_necessity(d, f):
    return ONE - possibility(d, Not(f))
