from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from logic.propositional import And, Literal, Variable
from network.conditioning import (INF, KappaRanking, condition,
                                  condition_kappa, condition_min,
                                  condition_product, conditional_possibility,
                                  degree_to_rank, kappa_to_possibility,
                                  necessity_given, possibility_to_kappa,
                                  rank_to_degree)
from network.graph import (ConditionalTable, PossNetwork, Triple, check_mode,
                           decompose, joint, joint_min, joint_product,
                           triples, validate_network)
from possibilistic.base import pi_from_base
from possibilistic.distribution import (PossibilityDistribution, is_normal,
                                        possibility)
from utils.errors import EvidenceConflictError, NormalizationError
from verifier.generators import make_rng, random_ordering, variables

A, B, C = Variable('a', 0), Variable('b', 1), Variable('c', 2)


def test_check_mode():
    assert check_mode('product') == 'prod'
    assert check_mode('min') == 'min'
    with pytest.raises(ValueError):
        check_mode('max')


def test_table_is_sparse():
    t = ConditionalTable(B, (A,))
    assert t.get(1, (0,)) == 1
    t.set(1, (0,), F(1, 3))
    assert t.get_literal(Literal(B), (Literal(A, False),)) == F(1, 3)
    t.set(1, (0,), 1)
    assert t.non_one() == []
    with pytest.raises(ValueError):
        t.set(2, (0,), F(1, 2))
    with pytest.raises(ValueError):
        t.get(1, (0, 1))
    with pytest.raises(ValueError):
        t.get_literal(Literal(B), (Literal(C),))


def test_network_structure(abcde_network):
    G = abcde_network
    a, b, c, d, e = G.variables
    assert [v.name for v in G.variables] == ['a', 'b', 'c', 'd', 'e']
    assert G.parents[b] == (a, c)
    assert G.is_acyclic()
    assert G.topological_order() == [a, c, b, d, e]
    assert G.descendants(c) == {b, d, e}
    assert G.variable('d') == d
    with pytest.raises(KeyError):
        G.variable('z')


def test_table_parents_must_match():
    with pytest.raises(ValueError):
        PossNetwork((A, B), {B: (A,)}, {B: ConditionalTable(B, ())})


def test_triples(abcde_network):
    got = [(str(t.instance), ' '.join(str(l) for l in t.context), t.degree) for t in triples(abcde_network)]
    assert got == [
        ('!a', '', F(3, 4)),
        ('!b', '!a c', F(1, 4)),
        ('b', 'a c', F(1, 2)),
        ('d', '!c', F(1, 4)),
        ('e', '!b d', F(1, 2)),
        ('!e', 'b !d', F(3, 4)),
    ]
    with pytest.raises(ValueError):
        Triple(Literal(A), (), F(1))


def test_incoherent_joints(incoherent_network):
    G = incoherent_network
    assert joint_min(G).degrees == (F(1, 4), F(1, 4), 1, F(1, 3))
    assert joint_product(G).degrees == (F(1, 4), F(1, 12), 1, F(1, 3))
    assert joint(G, 'product') == joint_product(G)


def test_validate_incoherent(incoherent_network):
    report = validate_network(incoherent_network)
    assert report.ok
    assert len(report.warnings) == 1
    assert report.warnings[0].startswith('coherence: Pi(b | !a)')


def test_validate_clean(abcde_network):
    report = validate_network(abcde_network)
    assert report.ok and report.warnings == []


def test_validate_normalization():
    t = ConditionalTable(A, ())
    t.set(0, (), F(1, 2))
    t.set(1, (), F(1, 2))
    report = validate_network(PossNetwork((A,), {}, {A: t}))
    assert not report.ok
    with pytest.raises(NormalizationError):
        report.raise_for_errors()


def test_validate_zero_context_row_is_a_warning():
    ta = ConditionalTable(A, ())
    ta.set(1, (), 0)
    tb = ConditionalTable(B, (A,))
    tb.set(0, (1,), F(1, 2))
    tb.set(1, (1,), F(1, 2))
    report = validate_network(PossNetwork((A, B), {B: (A,)}, {A: ta, B: tb}))
    assert report.ok
    assert any('zero-possibility context' in w for w in report.warnings)


def test_validate_cycle():
    G = PossNetwork((A, B), {A: (B,), B: (A,)})
    report = validate_network(G)
    assert report.errors and report.errors[0].startswith('cycle')
    with pytest.raises(ValueError):
        joint_min(G)


def test_validate_above_guard(abcde_network):
    report = validate_network(abcde_network, max_vars=3)
    assert report.ok
    assert report.warnings[0].startswith('semantic checks skipped')


def test_decompose_sigma1_min(sigma1):
    a, b = sigma1.variables
    d = pi_from_base(sigma1)

    G = decompose(d, (a, b))
    assert G.parents[b] == (a,)
    assert G.tables[a].get(1) == F(4, 5)
    assert G.tables[b].get(1, (0,)) == F(7, 10)
    assert G.tables[b].get(1, (1,)) == 1

    H = decompose(d, (b, a))
    assert H.tables[b].get(1) == F(4, 5)
    assert H.tables[a].get(1, (0,)) == F(4, 5)
    assert H.tables[a].get(0, (1,)) == F(7, 10)


@pytest.mark.parametrize('mode', ['min', 'prod'])
def test_decompose_recovers_distribution(abcde_network, mode):
    d = joint(abcde_network, mode)
    order = tuple(reversed(abcde_network.variables))
    assert joint(decompose(d, order, mode), mode) == d


def test_decompose_rejects():
    d = PossibilityDistribution.uniform((A, B), F(1, 2))
    with pytest.raises(NormalizationError):
        decompose(d, (A, B))
    with pytest.raises(ValueError):
        decompose(PossibilityDistribution.uniform((A, B)), (A,))


def test_conditioning_incoherent(incoherent_network, formula):
    vs = incoherent_network.variables
    q, p = formula(vs, 'b'), formula(vs, '!a')
    assert conditional_possibility(joint_min(incoherent_network), q, p, 'min') == 1
    assert conditional_possibility(joint_product(incoherent_network), q, p, 'prod') == F(1, 3)


def test_conditioning_rules(sigma1, formula):
    d = pi_from_base(sigma1)
    vs = sigma1.variables
    m = condition(d, formula(vs, 'b'), 'min')
    assert m.degrees == (0, F(7, 10), 0, 1)
    p = condition(d, formula(vs, 'b'), 'prod')
    assert p.degrees == (0, F(7, 8), 0, 1)
    assert necessity_given(d, formula(vs, 'a'), formula(vs, 'b'), 'min') == F(3, 10)


def test_conditioning_impossible_evidence(sigma1, formula):
    d = pi_from_base(sigma1)
    with pytest.raises(EvidenceConflictError):
        condition(d, formula(sigma1.variables, 'a & !a'))


def test_kappa_to_possibility(ab_ranking):
    assert kappa_to_possibility(ab_ranking).degrees == (1, F(1, 4), F(1, 8), 0)


def test_kappa_conditioning(ab_ranking, formula):
    k = condition_kappa(ab_ranking, formula(ab_ranking.variables, 'a'))
    assert k.ranks == (INF, INF, 0, INF)
    with pytest.raises(EvidenceConflictError):
        condition_kappa(ab_ranking, formula(ab_ranking.variables, 'false'))


def test_kappa_conditioning_matches_product_conditioning(ab_ranking, formula):
    p = formula(ab_ranking.variables, 'b')
    via_kappa = kappa_to_possibility(condition_kappa(ab_ranking, p))
    assert via_kappa == condition(kappa_to_possibility(ab_ranking), p, 'prod')


def test_rank_degree_bridge(ab_ranking):
    assert rank_to_degree(3) == F(1, 8)
    assert rank_to_degree(INF) == 0
    assert degree_to_rank(F(1, 4)) == 2
    assert degree_to_rank(0) == INF
    with pytest.raises(ValueError):
        degree_to_rank(F(1, 3))
    assert possibility_to_kappa(kappa_to_possibility(ab_ranking)) == ab_ranking
    with pytest.raises(ValueError):
        KappaRanking(ab_ranking.variables, (0, -1, 0, 0))


SEEDS = st.integers(min_value=0, max_value=2 ** 32 - 1)
EVIDENCE = st.integers(min_value=1, max_value=255)


def random_distribution(seed, n_vars=3, den=6):
    """ Normal distribution with degrees in {0, 1/den, ..., 1} """
    rng = make_rng(seed)
    degrees = [F(int(rng.integers(0, den + 1)), den) for _ in range(2 ** n_vars)]
    degrees[int(rng.integers(0, 2 ** n_vars))] = F(1)
    return PossibilityDistribution(variables(n_vars), tuple(degrees))


@settings(max_examples=100, deadline=None)
@given(SEEDS, st.sampled_from(['min', 'prod']))
def test_decompose_recomposes_random_distributions(seed, mode):
    d = random_distribution(seed, n_vars=4)
    ordering = random_ordering(d.variables, make_rng(seed + 1))
    assert joint(decompose(d, ordering, mode), mode) == d


@settings(max_examples=100, deadline=None)
@given(SEEDS, EVIDENCE, EVIDENCE)
def test_product_conditioning_commutes(truth_tables, seed, m1, m2):
    d = random_distribution(seed)
    p, r = truth_tables[m1], truth_tables[m2]
    if possibility(d, And(p, r)) == 0:
        return
    assert condition_product(condition_product(d, p), r) == condition_product(condition_product(d, r), p)


@settings(max_examples=100, deadline=None)
@given(SEEDS, EVIDENCE)
def test_min_conditioning_is_normal(truth_tables, seed, mask):
    d = random_distribution(seed)
    p = truth_tables[mask]
    if possibility(d, p) == 0:
        return
    assert is_normal(condition_min(d, p))


@settings(max_examples=20, deadline=None)
@given(SEEDS)
def test_kappa_conditioning_matches_product_on_every_evidence(truth_tables, seed):
    rng = make_rng(seed)
    ranks = [int(r) for r in rng.integers(0, 5, size=8)]
    low = min(ranks)
    k = KappaRanking(variables(3), tuple(r - low for r in ranks))
    d = kappa_to_possibility(k)
    for p in truth_tables[1:]:
        assert kappa_to_possibility(condition_kappa(k, p)) == condition_product(d, p)
