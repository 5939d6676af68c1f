"""
Brute-force property checks. Every check compares exact distributions
computed by world enumeration and reports all failing cases of an instance.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, List

import numpy as np
import pandas as pd

from data import pkb, pnet
from logic.propositional import (And, Literal, conjunction, format_world,
                                 literal_formula)
from network.conditioning import conditional_possibility
from network.graph import (context_literals, joint_min, joint_product,
                           parent_instantiations)
from possibilistic.base import pi_from_base
from possibilistic.distribution import (ONE, ZERO, is_normal, pointwise_product,
                                        possibility)
from translate.base_to_graph import build_graph, replay_trace
from translate.graph_to_base import combine_product, encode_min, encode_product
from utils.utils import AverageMeter, ProgressMeter
from verifier.generators import (make_rng, random_base, random_network,
                                 random_ordering)

logger = logging.getLogger(__name__)


@dataclass
class Failure:
    instance: str
    case: str
    expected: Any
    actual: Any


@dataclass
class CheckReport:
    name: str
    instances: int = 0
    failures: List[Failure] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    seed: Any = None
    elapsed: float = 0.0

    @property
    def passed(self):
        return len(self.failures) == 0

    def fail(self, instance, case, expected, actual):
        self.failures.append(Failure(instance, case, expected, actual))

    def merge(self, other):
        self.instances += other.instances
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        self.elapsed += other.elapsed
        return self

    def to_frame(self):
        return pd.DataFrame([{'check': self.name, 'instance': f.instance, 'case': f.case,
                              'expected': str(f.expected), 'actual': str(f.actual)}
                             for f in self.failures],
                            columns=['check', 'instance', 'case', 'expected', 'actual'])

    def summary(self):
        return {'check': self.name, 'instances': self.instances, 'failures': len(self.failures),
                'notes': len(self.notes), 'seed': self.seed, 'elapsed': round(self.elapsed, 3),
                'passed': self.passed}


def _compare(report, instance, expected, actual):
    for (w, e), a in zip(expected.items(), actual.degrees):
        if e != a:
            bits, lits = format_world(w, expected.variables)
            report.fail(instance, '{} ({})'.format(bits, lits), e, a)


def _context(pars, pvals):
    return conjunction(literal_formula(l) for l in context_literals(pars, pvals))


def _ctx_str(pars, pvals):
    return ' '.join(str(l) for l in context_literals(pars, pvals)) or 'true'


def check_encode_min(G):
    report = CheckReport('encode-min', instances=1)
    _compare(report, pnet.dumps(G), joint_min(G), pi_from_base(encode_min(G)))
    return report


def check_encode_product(G):
    report = CheckReport('encode-product', instances=1)
    _compare(report, pnet.dumps(G), joint_product(G), pi_from_base(encode_product(G)))
    return report


def _recovered(G, d, mode):
    """ (node, instance, parent values, table entry, recovered entry) over possible contexts """
    for var in G.variables:
        pars = G.parents[var]
        for pvals in parent_instantiations(pars):
            ctx = _context(pars, pvals)
            if possibility(d, ctx) == ZERO:
                continue
            for value in (0, 1):
                lit = Literal(var, value == 1)
                got = conditional_possibility(d, literal_formula(lit), ctx, mode)
                yield var, lit, pvals, G.tables[var].get(value, pvals), got


def check_recovery_product(G):
    """ Product conditioning of the product joint returns every table entry """
    report = CheckReport('recovery-product', instances=1)
    d = joint_product(G)
    for var, lit, pvals, entry, got in _recovered(G, d, 'prod'):
        if got != entry:
            report.fail(pnet.dumps(G), 'Pi({} | {})'.format(lit, _ctx_str(G.parents[var], pvals)), entry, got)
    return report


def check_recovery_min(G):
    """
    Min conditioning of the min joint returns each table entry or 1; entries
    pushed up to 1 are listed in the notes.
    """
    report = CheckReport('recovery-min', instances=1)
    d = joint_min(G)
    for var, lit, pvals, entry, got in _recovered(G, d, 'min'):
        case = 'Pi({} | {})'.format(lit, _ctx_str(G.parents[var], pvals))
        if got == entry:
            continue
        if got == ONE:
            report.notes.append('degraded {}: {} -> 1'.format(case, entry))
        else:
            report.fail(pnet.dumps(G), case, '{} or 1'.format(entry), got)
    return report


def check_independence(G):
    """
    Non-interactivity of X and every Y that is neither a parent nor a
    descendant of X, in the context of the parents of X, under the min joint.
    """
    report = CheckReport('independence', instances=1)
    d = joint_min(G)
    for x_var in G.variables:
        pars = G.parents[x_var]
        below = G.descendants(x_var)
        others = [y for y in G.variables if y != x_var and y not in pars and y not in below]
        for y_var in others:
            for pvals in parent_instantiations(pars):
                ctx = _context(pars, pvals)
                if possibility(d, ctx) == ZERO:
                    continue
                for xv in (0, 1):
                    for yv in (0, 1):
                        x = literal_formula(Literal(x_var, xv == 1))
                        y = literal_formula(Literal(y_var, yv == 1))
                        joint = conditional_possibility(d, And(x, y), ctx, 'min')
                        split = min(conditional_possibility(d, x, ctx, 'min'),
                                    conditional_possibility(d, y, ctx, 'min'))
                        if joint != split:
                            report.fail(pnet.dumps(G), 'Pi({} {} | {})'.format(
                                Literal(x_var, xv == 1), Literal(y_var, yv == 1), _ctx_str(pars, pvals)),
                                split, joint)
    return report


def check_roundtrip(S, ordering=None):
    """
    Compile S, compare the min joint of the result with pi_S, check that every
    trace step preserves pi_S and, for a normal pi_S, that min conditioning
    recovers every table entry.
    """
    report = CheckReport('roundtrip', instances=1)
    r = build_graph(S, ordering)
    instance = '{}# order: {}'.format(pkb.dumps(S), ' '.join(v.name for v in r.ordering))
    pi_s = pi_from_base(S)
    d = joint_min(r.network)
    _compare(report, instance, pi_s, d)

    for i, state in enumerate(replay_trace(S, r.trace)):
        if pi_from_base(state).degrees != pi_s.degrees:
            report.fail(instance, 'trace step {}: {}'.format(i, r.trace[i]), 'pi_S preserved', 'changed')

    if is_normal(pi_s):
        for var, lit, pvals, entry, got in _recovered(r.network, d, 'min'):
            if got != entry:
                report.fail(instance, 'Pi({} | {})'.format(lit, _ctx_str(r.network.parents[var], pvals)),
                            entry, got)
    return report


def check_cstar_algebra(S1, S2, S3):
    """ Product combination is commutative and associative on distributions """
    report = CheckReport('cstar-algebra', instances=1)
    instance = '\n'.join(pkb.dumps(S) for S in (S1, S2, S3))
    p1, p2, p3 = pi_from_base(S1), pi_from_base(S2), pi_from_base(S3)

    _compare(report, instance, pointwise_product(p1, p2), pi_from_base(combine_product(S1, S2)))
    _compare(report, instance, pi_from_base(combine_product(S2, S1)), pi_from_base(combine_product(S1, S2)))
    left = pi_from_base(combine_product(combine_product(S1, S2), S3))
    right = pi_from_base(combine_product(S1, combine_product(S2, S3)))
    _compare(report, instance, left, right)
    _compare(report, instance, pointwise_product(pointwise_product(p1, p2), p3), left)
    return report


def _network_trial(check):
    def trial(cfg, rng):
        return check(random_network(cfg, rng))
    return trial


def roundtrip_trial(cfg, rng):
    S = random_base(cfg, rng)
    report = CheckReport('roundtrip')
    for _ in range(cfg.orderings):
        report.merge(check_roundtrip(S, random_ordering(S.variables, rng)))
    return report


def cstar_trial(cfg, rng):
    return check_cstar_algebra(random_base(cfg, rng), random_base(cfg, rng), random_base(cfg, rng))


TRIALS = {
    'encode-min': _network_trial(check_encode_min),
    'encode-product': _network_trial(check_encode_product),
    'recovery-product': _network_trial(check_recovery_product),
    'recovery-min': _network_trial(check_recovery_min),
    'independence': _network_trial(check_independence),
    'roundtrip': roundtrip_trial,
    'cstar-algebra': cstar_trial,
}


def _run_trial(name, cfg, seed_seq):
    start = time.time()
    report = TRIALS[name](cfg, make_rng(seed_seq))
    report.elapsed = time.time() - start
    return report


def run_check(name, cfg, trials, workers=1, print_freq=50):
    """
    Run a check on `trials` generated instances. Each trial draws from its
    own SeedSequence child of cfg.seed, so the report does not depend on
    the number of workers.
    """
    if name not in TRIALS:
        raise ValueError('Invalid check {}'.format(name))
    children = np.random.SeedSequence(cfg.seed).spawn(trials)
    report = CheckReport(name, seed=cfg.seed)
    start = time.time()

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, [name] * trials, [cfg] * trials, children))
    else:
        trial_time = AverageMeter('Time', ':.3f')
        progress = ProgressMeter(trials, [trial_time], prefix='{}: '.format(name))
        results = []
        for i, child in enumerate(children):
            results.append(_run_trial(name, cfg, child))
            trial_time.update(results[-1].elapsed)
            if print_freq and (i + 1) % print_freq == 0:
                progress.display(i + 1)

    for result in results:
        report.merge(result)
    report.elapsed = time.time() - start
    logger.info('{}: {} instances, {} failures in {:.2f}s'.format(
        name, report.instances, len(report.failures), report.elapsed))
    return report
