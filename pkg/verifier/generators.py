"""
Seeded random networks and bases for the property checks.
"""
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from logic.propositional import Clause, Literal, Variable, check_guard
from network.graph import ConditionalTable, PossNetwork, parent_instantiations
from possibilistic.base import PossBase


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n_vars: int = 4
    max_parents: int = 2
    weight_den: int = 8
    max_clauses: int = 6
    max_clause_len: int = 3
    consistent: bool = True
    orderings: int = 3

    def __post_init__(self):
        for name in ('n_vars', 'weight_den', 'max_clause_len', 'orderings'):
            if getattr(self, name) <= 0:
                raise ValueError('Invalid generator config: {} must be positive'.format(name))
        if self.max_parents < 0 or self.max_clauses < 0:
            raise ValueError('Invalid generator config: negative bound')
        check_guard(self.n_vars)


def make_rng(seed):
    """ Generator from an int seed or a SeedSequence """
    return np.random.default_rng(seed)


def variables(n):
    return tuple(Variable('x{}'.format(i + 1), i) for i in range(n))


def random_degree(rng, den):
    return Fraction(int(rng.integers(0, den + 1)), den)


def random_network(cfg, rng=None):
    """
    Normalized acyclic network. Parents of node i are drawn from nodes
    0..i-1; each table row has one entry at 1 and the other drawn from
    {0, 1/den, ..., 1}.
    """
    rng = make_rng(cfg.seed) if rng is None else rng
    vs = variables(cfg.n_vars)
    parents, tables = {}, {}
    for i, var in enumerate(vs):
        k = int(rng.integers(0, min(cfg.max_parents, i) + 1))
        picks = sorted(int(j) for j in rng.choice(i, size=k, replace=False)) if k else []
        pars = tuple(vs[j] for j in picks)
        table = ConditionalTable(var, pars)
        for pvals in parent_instantiations(pars):
            top = int(rng.integers(0, 2))
            table.set(1 - top, pvals, random_degree(rng, cfg.weight_den))
        parents[var] = pars
        tables[var] = table
    return PossNetwork(vs, parents, tables)


def random_base(cfg, rng=None):
    """
    Random clauses with weights in {1/den, ..., 1}. When cfg.consistent is
    set every clause is satisfied by a hidden witness world, so the base is
    consistent and its distribution normal.
    """
    rng = make_rng(cfg.seed) if rng is None else rng
    vs = variables(cfg.n_vars)
    witness = [int(b) for b in rng.integers(0, 2, size=cfg.n_vars)]
    entries = []
    for _ in range(int(rng.integers(0, cfg.max_clauses + 1))):
        size = int(rng.integers(1, min(cfg.max_clause_len, cfg.n_vars) + 1))
        picks = sorted(int(j) for j in rng.choice(cfg.n_vars, size=size, replace=False))
        signs = [bool(rng.integers(0, 2)) for _ in picks]
        if cfg.consistent and all(witness[j] != int(s) for j, s in zip(picks, signs)):
            signs[0] = not signs[0]
        clause = Clause.of(Literal(vs[j], s) for j, s in zip(picks, signs))
        entries.append((clause, Fraction(int(rng.integers(1, cfg.weight_den + 1)), cfg.weight_den)))
    return PossBase(vs, entries)


def random_ordering(vs, rng):
    return tuple(vs[int(j)] for j in rng.permutation(len(vs)))
