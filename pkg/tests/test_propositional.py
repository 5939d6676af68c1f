from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from logic.propositional import (FALSE, TRUE, And, Atom, Clause, Implies,
                                 Literal, Not, Or, Variable, VariableRegistry,
                                 all_interpretations, check_guard,
                                 entails_clause, enumerate_interpretations,
                                 eval_clause, evaluate, format_world,
                                 is_consistent, is_tautology, models,
                                 set_max_vars, to_cnf, world_index)
from utils.errors import EnumerationGuardError, ParseError

VARS = tuple(Variable(n, i) for i, n in enumerate('abcd'))


@st.composite
def formulas(draw, n_vars=3, depth=4):
    vs = VARS[:n_vars]
    leaves = st.one_of(st.sampled_from([Atom(v) for v in vs]), st.sampled_from([TRUE, FALSE]))

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.tuples(children, children).map(lambda t: And(*t)),
            st.tuples(children, children).map(lambda t: Or(*t)),
            st.tuples(children, children).map(lambda t: Implies(*t)),
        )
    return draw(st.recursive(leaves, extend, max_leaves=depth * 2))


def test_enumeration_order():
    assert enumerate_interpretations(2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert enumerate_interpretations(0) == [()]
    assert [world_index(w) for w in all_interpretations(3)] == list(range(8))


def test_enumeration_guard():
    with pytest.raises(EnumerationGuardError) as e:
        enumerate_interpretations(21)
    assert '--max-vars' in str(e.value)
    check_guard(3, max_vars=3)
    set_max_vars(2)
    with pytest.raises(EnumerationGuardError):
        check_guard(3)


def test_format_world():
    bits, lits = format_world((1, 0), VARS[:2])
    assert bits == '10'
    assert lits == 'a !b'


def test_registry_first_appearance():
    registry = VariableRegistry()
    assert registry.get_or_add('x').index == 0
    assert registry.get_or_add('y').index == 1
    assert registry.get_or_add('x').index == 0
    assert [v.name for v in registry.variables] == ['x', 'y']


def test_registry_from_names():
    registry = VariableRegistry(['a', 'b'])
    assert [(v.name, v.index) for v in registry.variables] == [('a', 0), ('b', 1)]
    assert registry.get_or_add('c').index == 2
    frozen = VariableRegistry(['a'], frozen=True)
    assert frozen.frozen and len(frozen) == 1


def test_registry_rejects():
    registry = VariableRegistry(['a'], frozen=True)
    with pytest.raises(ParseError):
        registry.get_or_add('b')
    with pytest.raises(ParseError):
        VariableRegistry().get_or_add('true')
    with pytest.raises(ParseError):
        VariableRegistry(reserved=('vars',)).get_or_add('vars')
    with pytest.raises(ValueError):
        Variable('1x', 0)


def test_registry_format_words_are_plain_names():
    registry = VariableRegistry()
    assert [registry.get_or_add(n).name for n in ('inf', 'vars', 'node')] == ['inf', 'vars', 'node']


def test_clause_canonical():
    a, b = VARS[0], VARS[1]
    c = Clause.of([Literal(b), Literal(a, False), Literal(b)])
    assert str(c) == '!a | b'
    assert c == Clause.of([Literal(a, False), Literal(b)])
    assert str(Clause()) == 'false'
    assert is_tautology(Clause.of([Literal(a), Literal(a, False)]))
    assert not is_tautology(c)
    assert eval_clause(c, (0, 0))
    assert not eval_clause(c, (1, 0))


raw_clauses = st.lists(st.tuples(st.sampled_from(VARS[:3]), st.booleans()), max_size=5).map(
    lambda lits: Clause(tuple(Literal(v, p) for v, p in lits)))


@given(raw_clauses)
def test_canonical_is_idempotent(c):
    once = c.canonical()
    assert once.canonical() == once
    assert Clause.of(reversed(c.literals)) == once
    assert str(once) == str(Clause.of(once))


@given(raw_clauses)
def test_tautology_iff_valid(c):
    assert is_tautology(c) == all(eval_clause(c, w) for w in all_interpretations(3))


def test_cnf_examples():
    a, b = Atom(VARS[0]), Atom(VARS[1])
    assert {str(c) for c in to_cnf(Not(And(a, b)))} == {'!a | !b'}
    assert to_cnf(Or(Or(Not(a), Not(b)), And(a, b))) == frozenset()
    assert to_cnf(TRUE) == frozenset()
    assert to_cnf(FALSE) == frozenset([Clause()])
    assert {str(c) for c in to_cnf(Implies(a, b))} == {'!a | b'}


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_cnf_equivalent(f):
    clauses = to_cnf(f)
    for w in all_interpretations(3):
        assert evaluate(f, w) == all(eval_clause(c, w) for c in clauses)
    assert not any(is_tautology(c) for c in clauses)


@settings(max_examples=200, deadline=None)
@given(formulas(n_vars=4))
def test_sat_matches_enumeration(f):
    clauses = list(to_cnf(f))
    expected = len(models(clauses, 4)) > 0
    assert is_consistent(clauses) == expected
    assert is_consistent(clauses, method='enumerate', n_vars=4) == expected


def test_consistency_edge_cases():
    a = VARS[0]
    assert is_consistent([])
    assert not is_consistent([Clause()])
    assert not is_consistent([Clause((Literal(a),)), Clause((Literal(a, False),))])
    with pytest.raises(ValueError):
        is_consistent([Clause((Literal(a),))], method='dpll')


def test_entails_clause():
    a, b = VARS[0], VARS[1]
    unit_a = Clause((Literal(a),))
    a_or_b = Clause.of([Literal(a), Literal(b)])
    assert entails_clause([unit_a], a_or_b)
    assert not entails_clause([a_or_b], unit_a)
    assert entails_clause([unit_a, Clause((Literal(a, False),))], Clause())


def test_formula_str_round_trips_through_parser():
    from logic.parser import parse_formula
    f = Implies(Or(Atom(VARS[0]), Not(And(Atom(VARS[1]), Atom(VARS[2])))), Atom(VARS[3]))
    registry = VariableRegistry.from_variables(VARS)
    assert parse_formula(str(f), registry) == f
