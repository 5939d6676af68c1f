import os

import pytest

from data import kappa, pkb, pnet
from logic.parser import parse_formula
from logic.propositional import (FALSE, Literal, Or, VariableRegistry,
                                 all_interpretations, conjunction,
                                 literal_formula, set_max_vars, to_cnf)
from verifier.generators import variables

DATASETS = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'datasets')


@pytest.fixture(autouse=True)
def default_guard():
    set_max_vars(20)
    yield
    set_max_vars(20)


@pytest.fixture
def datasets_dir():
    return DATASETS


def dataset(name):
    return os.path.join(DATASETS, name)


@pytest.fixture
def sigma1():
    return pkb.read_base(dataset('ab_sigma1.pkb'))


@pytest.fixture
def sigma2():
    return pkb.read_base(dataset('ab_sigma2.pkb'))


@pytest.fixture
def abcde_network():
    return pnet.read_network(dataset('abcde_network.pnet'))


@pytest.fixture
def incoherent_network():
    return pnet.read_network(dataset('ab_incoherent.pnet'))


@pytest.fixture
def abcdef_base():
    return pkb.read_base(dataset('abcdef_base.pkb'))


@pytest.fixture
def ab_ranking():
    return kappa.read_kappa(dataset('ab_ranking.kap'))


@pytest.fixture
def formula():
    """ formula(variables, text) parses text over a fixed variable set """
    def make(variables, text):
        return parse_formula(text, VariableRegistry.from_variables(variables, frozen=True))
    return make


@pytest.fixture
def clause():
    """ clause(variables, 'a | !b') """
    def make(variables, text):
        f = parse_formula(text, VariableRegistry.from_variables(variables, frozen=True))
        (c,) = to_cnf(f)
        return c
    return make


@pytest.fixture
def base():
    """ base('a | b : 1/2', 'c : 0.3', vars='a b c') """
    def make(*facts, vars=None):
        header = 'vars {}\n'.format(vars) if vars else ''
        return pkb.loads(header + ''.join(f + '\n' for f in facts))
    return make


@pytest.fixture(scope='session')
def truth_tables():
    """
    One formula per Boolean function of x1, x2, x3: entry m is the
    disjunction of the worlds whose index bit is set in m.
    """
    vs = variables(3)
    minterms = [conjunction(literal_formula(Literal(v, b == 1)) for v, b in zip(vs, w))
                for w in all_interpretations(3)]
    out = []
    for mask in range(2 ** len(minterms)):
        chosen = [m for i, m in enumerate(minterms) if mask >> i & 1]
        f = chosen[0] if chosen else FALSE
        for m in chosen[1:]:
            f = Or(f, m)
        out.append(f)
    return out
