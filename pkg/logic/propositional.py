"""
Propositional substrate: variables, literals, clauses, formulas, clausal form,
interpretation enumeration and consistency checking.

Interpretations are tuples of 0/1 of width n, bit i being the truth value of
the variable with index i. Enumeration is in ascending bit-pattern order with
index 0 as the most significant position, so for n=2 the order is
00, 01, 10, 11.
"""
import functools
import itertools
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Tuple

from pysat.solvers import Glucose3

from utils.errors import EnumerationGuardError, ParseError

MAX_VARS = 20
NAME_RE = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')
RESERVED = {'true', 'false'}

Interpretation = Tuple[int, ...]


def set_max_vars(n):
    global MAX_VARS
    if n is None:
        return
    if int(n) < 0:
        raise ValueError('Invalid enumeration guard {}'.format(n))
    MAX_VARS = int(n)


def check_guard(n_vars, max_vars=None):
    limit = MAX_VARS if max_vars is None else max_vars
    if n_vars > limit:
        raise EnumerationGuardError(n_vars, limit)


@dataclass(frozen=True)
class Variable:
    name: str
    index: int

    def __post_init__(self):
        if not NAME_RE.match(self.name) or self.name in RESERVED:
            raise ValueError('Invalid variable name {!r}'.format(self.name))
        if self.index < 0:
            raise ValueError('Invalid variable index {}'.format(self.index))

    def __str__(self):
        return self.name

    def lit(self, positive=True):
        return Literal(self, positive)


class VariableRegistry(object):
    """
    Maps names to variables; indices follow first appearance. A frozen
    registry rejects names it has not seen. `reserved` holds extra words a
    file format keeps for itself.
    """

    def __init__(self, names=(), frozen=False, reserved=()):
        self.reserved = frozenset(reserved)
        self._by_name = {}
        self._order = []
        self.frozen = False
        for name in names:
            self.get_or_add(name)
        self.frozen = frozen

    @classmethod
    def from_variables(cls, variables, frozen=True):
        registry = cls()
        for var in sorted(variables, key=lambda v: v.index):
            if var.index != len(registry._order):
                raise ValueError('Invalid variable indices: expected {} got {}'.format(
                    len(registry._order), var.index))
            registry._by_name[var.name] = var
            registry._order.append(var)
        registry.frozen = frozen
        return registry

    def get_or_add(self, name, column=None):
        if name in self._by_name:
            return self._by_name[name]
        if self.frozen:
            raise ParseError('undeclared variable {!r}'.format(name), column=column)
        if not NAME_RE.match(name) or name in RESERVED:
            raise ParseError('invalid variable name {!r}'.format(name), column=column)
        if name in self.reserved:
            raise ParseError('reserved word {!r} cannot name a variable'.format(name), column=column)
        var = Variable(name, len(self._order))
        self._by_name[name] = var
        self._order.append(var)
        return var

    def get(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise ParseError('undeclared variable {!r}'.format(name))

    def __contains__(self, name):
        return name in self._by_name

    def __len__(self):
        return len(self._order)

    @property
    def variables(self):
        return tuple(self._order)


@dataclass(frozen=True)
class Literal:
    variable: Variable
    positive: bool = True

    def __invert__(self):
        return Literal(self.variable, not self.positive)

    def __str__(self):
        return self.variable.name if self.positive else '!' + self.variable.name

    @property
    def sort_key(self):
        return (self.variable.index, self.positive)

    @property
    def dimacs(self):
        return self.variable.index + 1 if self.positive else -(self.variable.index + 1)

    def holds(self, world):
        return world[self.variable.index] == (1 if self.positive else 0)


@dataclass(frozen=True)
class Clause:
    literals: Tuple[Literal, ...] = ()

    @classmethod
    def of(cls, literals: Iterable[Literal]):
        return cls(tuple(sorted(set(literals), key=lambda l: l.sort_key)))

    def canonical(self):
        return Clause.of(self.literals)

    @property
    def sort_key(self):
        return (len(self.literals), tuple(l.sort_key for l in self.literals))

    @property
    def variables(self):
        return frozenset(l.variable for l in self.literals)

    def is_empty(self):
        return len(self.literals) == 0

    def __or__(self, other):
        return Clause.of(self.literals + other.literals)

    def __iter__(self):
        return iter(self.literals)

    def __len__(self):
        return len(self.literals)

    def __contains__(self, lit):
        return lit in self.literals

    def __str__(self):
        if not self.literals:
            return 'false'
        return ' | '.join(str(l) for l in self.literals)


# Formulas

class Formula(object):
    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def __str__(self):
        return 'true' if self.value else 'false'


@dataclass(frozen=True)
class Atom(Formula):
    variable: Variable

    def __str__(self):
        return self.variable.name


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula

    def __str__(self):
        return '!' + _paren(self.operand, 4)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return '{} & {}'.format(_paren(self.left, 3), _paren(self.right, 3))


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return '{} | {}'.format(_paren(self.left, 2), _paren(self.right, 2))


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def __str__(self):
        return '{} -> {}'.format(_paren(self.left, 2), _paren(self.right, 1))


TRUE = Const(True)
FALSE = Const(False)

_LEVEL = {Implies: 1, Or: 2, And: 3, Not: 4, Atom: 5, Const: 5}


def _paren(f, level):
    s = str(f)
    return s if _LEVEL[type(f)] >= level else '(' + s + ')'


def literal_formula(lit):
    atom = Atom(lit.variable)
    return atom if lit.positive else Not(atom)


def conjunction(formulas):
    formulas = list(formulas)
    if not formulas:
        return TRUE
    out = formulas[0]
    for f in formulas[1:]:
        out = And(out, f)
    return out


def formula_variables(f):
    if isinstance(f, Atom):
        return frozenset([f.variable])
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, Not):
        return formula_variables(f.operand)
    return formula_variables(f.left) | formula_variables(f.right)


def evaluate(f, world):
    if isinstance(f, Atom):
        return world[f.variable.index] == 1
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.operand, world)
    if isinstance(f, And):
        return evaluate(f.left, world) and evaluate(f.right, world)
    if isinstance(f, Or):
        return evaluate(f.left, world) or evaluate(f.right, world)
    if isinstance(f, Implies):
        return (not evaluate(f.left, world)) or evaluate(f.right, world)
    raise TypeError('Invalid formula node {}'.format(type(f).__name__))


def _nnf(f, positive=True):
    """ Negation normal form as nested ('and'|'or', l, r) / Literal / bool """
    if isinstance(f, Const):
        return f.value if positive else not f.value
    if isinstance(f, Atom):
        return Literal(f.variable, positive)
    if isinstance(f, Not):
        return _nnf(f.operand, not positive)
    if isinstance(f, And):
        op = 'and' if positive else 'or'
        return (op, _nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Or):
        op = 'or' if positive else 'and'
        return (op, _nnf(f.left, positive), _nnf(f.right, positive))
    if isinstance(f, Implies):
        op = 'or' if positive else 'and'
        return (op, _nnf(f.left, not positive), _nnf(f.right, positive))
    raise TypeError('Invalid formula node {}'.format(type(f).__name__))


def _has_complement(lits):
    return any(Literal(l.variable, not l.positive) in lits for l in lits)


def _cnf_sets(node):
    # set of frozensets of literals; the empty set of clauses is true
    if node is True:
        return set()
    if node is False:
        return {frozenset()}
    if isinstance(node, Literal):
        return {frozenset([node])}
    op, left, right = node
    lcnf, rcnf = _cnf_sets(left), _cnf_sets(right)
    if op == 'and':
        return lcnf | rcnf
    out = set()
    for lc in lcnf:
        for rc in rcnf:
            merged = lc | rc
            if not _has_complement(merged):
                out.add(merged)
    return out


def to_cnf(f) -> FrozenSet[Clause]:
    """
    Clausal form by distribution, without auxiliary variables. Tautological
    clauses are dropped and the result is deduplicated.
    """
    clauses = _cnf_sets(_nnf(f))
    return frozenset(Clause.of(c) for c in clauses if not _has_complement(c))


def is_tautology(c):
    return _has_complement(frozenset(c.literals))


def eval_clause(c, world):
    return any(l.holds(world) for l in c.literals)


@functools.lru_cache(maxsize=None)
def all_interpretations(n):
    """ Unguarded, cached enumeration for callers that already passed the guard """
    return tuple(itertools.product((0, 1), repeat=n))


def enumerate_interpretations(n, max_vars=None):
    check_guard(n, max_vars)
    return list(all_interpretations(n))


def world_index(world):
    idx = 0
    for bit in world:
        idx = (idx << 1) | bit
    return idx


def format_world(world, variables):
    bits = ''.join(str(b) for b in world)
    lits = ' '.join(str(Literal(v, world[v.index] == 1)) for v in variables)
    return bits, lits


def models(clauses, n_vars, max_vars=None):
    clauses = list(clauses)
    return [w for w in enumerate_interpretations(n_vars, max_vars)
            if all(eval_clause(c, w) for c in clauses)]


def is_consistent(clauses, method='sat', n_vars=None, max_vars=None):
    """
    True iff some interpretation satisfies every clause.

    :param clauses: iterable of Clause
    :param method: 'sat' (Glucose3) or 'enumerate' (exhaustive, guarded)
    :param n_vars: width for enumeration; defaults to the largest index used
    """
    clauses = list(clauses)
    if any(c.is_empty() for c in clauses):
        return False
    if not clauses:
        return True

    if method == 'sat':
        with Glucose3(bootstrap_with=[[l.dimacs for l in c.literals] for c in clauses]) as solver:
            return bool(solver.solve())

    elif method == 'enumerate':
        if n_vars is None:
            n_vars = 1 + max(l.variable.index for c in clauses for l in c.literals)
        return len(models(clauses, n_vars, max_vars)) > 0

    else:
        raise ValueError('Invalid consistency method {}'.format(method))


def entails_clause(clauses, c):
    """ Classical entailment of clause c by a clause set: clauses + {not c} is inconsistent """
    units = [Clause((~l,)) for l in c.literals]
    return not is_consistent(list(clauses) + units)
