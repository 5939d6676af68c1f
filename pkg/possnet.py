import argparse
import logging
import os
import sys

import pandas as pd
from easydict import EasyDict
from termcolor import colored

from data import kappa, pkb, pnet
from logic.parser import parse_formula
from logic.propositional import VariableRegistry, set_max_vars
from network.conditioning import (condition_kappa, conditional_possibility,
                                  kappa_to_possibility)
from network.graph import joint, validate_network
from possibilistic.base import (entails, format_weight, inconsistency_degree,
                                parse_weight, pi_from_base)
from possibilistic.distribution import is_normal
from translate.base_to_graph import build_graph
from translate.graph_to_base import encode
from utils.common_config import get_check, get_generator_config, get_ordering
from utils.config import create_config, load_tool_config
from utils.errors import NormalizationError, PossnetError, UsageError
from utils.logger import init_logging
from verifier.checks import TRIALS, check_roundtrip, run_check

logger = logging.getLogger('possnet')

ROOT = os.path.dirname(os.path.abspath(__file__))


def banner(text, color='yellow'):
    print(colored(text, color), file=sys.stderr)


def emit(text, args):
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info('Wrote {}'.format(args.output))
    else:
        sys.stdout.write(text)


def is_network_file(path):
    return path.endswith('.pnet')


def load_network(path):
    G = pnet.read_network(path)
    report = validate_network(G)
    if not report.ok:
        raise NormalizationError('{}: {}'.format(path, '; '.join(report.errors)))
    return G


def load_distribution(args):
    """ pi of a base file, or the chain-rule joint of a network file """
    if is_network_file(args.file):
        G = load_network(args.file)
        return joint(G, args.mode), G.variables
    S = pkb.read_base(args.file)
    d = pi_from_base(S)
    if not is_normal(d):
        logger.warning('{}: base is inconsistent to degree {}'.format(
            args.file, format_weight(inconsistency_degree(S))))
    return d, S.variables


def parse_query_formula(text, variables, source, offset=0):
    """ Errors point at line 1 of the argument, offset by where text starts in it """
    registry = VariableRegistry.from_variables(variables, frozen=True)
    try:
        return parse_formula(text, registry)
    except UsageError as e:
        raise e.at_line(1, source, offset)


def listing(d):
    return ''.join('{}  {}  {}  {:.4f}\n'.format(bits, lits, format_weight(deg), float(deg))
                   for bits, lits, deg in d.listing())


def cmd_dist(args):
    d, _ = load_distribution(args)
    emit(listing(d), args)
    return 0


def cmd_entail(args):
    S = pkb.read_base(args.file)
    f = parse_query_formula(args.query, S.variables, '<query>')
    alpha = parse_weight(args.alpha)
    if alpha == 0:
        raise UsageError('alpha must be in (0, 1]')
    emit('yes\n' if entails(S, f, alpha) else 'no\n', args)
    return 0


def cmd_net2base(args):
    G = load_network(args.file)
    emit(pkb.dumps(encode(G, args.mode)), args)
    return 0


def cmd_base2net(args):
    S = pkb.read_base(args.file)
    try:
        ordering = get_ordering(args.order, S.variables)
    except ValueError as e:
        raise UsageError(str(e))
    r = build_graph(S, ordering)
    for var in r.ordering:
        logger.info('Par({}) = {{{}}}'.format(var, ', '.join(p.name for p in r.parents(var))))
    if args.trace:
        for step in r.trace:
            print(step, file=sys.stderr)
    emit(pnet.dumps(r.network), args)
    return 0


def cmd_query(args):
    d, variables = load_distribution(args)
    target_text, _, evidence_text = args.query.partition('|')
    target = parse_query_formula(target_text, variables, '<query>')
    evidence = parse_query_formula(evidence_text if evidence_text.strip() else 'true', variables, '<query>',
                                   offset=len(target_text) + 1)
    emit('{}\n'.format(format_weight(conditional_possibility(d, target, evidence, args.mode))), args)
    return 0


def cmd_kappa2pi(args):
    k = kappa.read_kappa(args.file)
    if args.evidence:
        k = condition_kappa(k, parse_query_formula(args.evidence, k.variables, '<evidence>'))
    emit(listing(kappa_to_possibility(k)), args)
    return 0


def verify_config(args):
    """ Experiment config from --config_exp, with command-line overrides """
    if args.config_exp:
        p = create_config(args.config_env, args.config_exp)
    else:
        p = EasyDict(check=args.check or 'roundtrip', trials=100, seed=0, workers=1, generator_kwargs={})
    overrides = {'check': args.check, 'trials': args.trials, 'seed': args.seed, 'workers': args.workers}
    for k, v in overrides.items():
        if v is not None:
            p[k] = v
    gen = {'n_vars': args.vars, 'max_parents': args.max_parents, 'weight_den': args.weight_den,
           'max_clauses': args.clauses}
    p.generator_kwargs = dict(p.generator_kwargs or {})
    for k, v in gen.items():
        if v is not None:
            p.generator_kwargs[k] = v
    try:
        get_check(p)
    except ValueError:
        raise UsageError('unknown check {!r} (choose from {})'.format(p.check, ', '.join(sorted(TRIALS))))
    return p


def render_report(report):
    lines = ['check {}: {} instances, {} failures, {} notes, seed {}'.format(
        report.name, report.instances, len(report.failures), len(report.notes), report.seed)]
    for note in report.notes:
        lines.append('note: {}'.format(note))
    for f in report.failures:
        lines.append('FAIL {}: expected {}, got {}'.format(f.case, f.expected, f.actual))
        lines.extend('  ' + l for l in f.instance.splitlines())
    return '\n'.join(lines) + '\n'


def cmd_verify(args):
    p = verify_config(args)
    if 'log_dir' in p:
        init_logging(log_dir=p.log_dir, prefix=p.fname, level=args.log_level)
    banner('possnet verify {} -->'.format(p.check))
    if args.base:
        S = pkb.read_base(args.base)
        try:
            ordering = get_ordering(args.order, S.variables)
        except ValueError as e:
            raise UsageError(str(e))
        report = check_roundtrip(S, ordering)
    else:
        try:
            cfg = get_generator_config(p)
        except ValueError as e:
            raise UsageError(str(e))
        report = run_check(p.check, cfg, int(p.trials), workers=int(p.workers))

    summary = pd.DataFrame([report.summary()])
    if 'report_csv' in p:
        summary.to_csv(p.report_csv, index=False)
        if report.failures:
            report.to_frame().to_csv(os.path.join(p.failures_dir, 'failures.csv'), index=False)
    if args.output:
        summary.to_csv(args.output, index=False)
        if report.failures:
            report.to_frame().to_csv(os.path.splitext(args.output)[0] + '_failures.csv', index=False)
    sys.stdout.write(render_report(report))

    if report.passed:
        banner('PASS', 'green')
        return 0
    banner('FAIL', 'red')
    return 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--max-vars', type=int, default=None,
                        help='Enumeration guard (largest variable count for exhaustive enumeration)')
    common.add_argument('--output', default=None,
                        help='Write the result to this file instead of standard output')
    common.add_argument('--trace', action='store_true',
                        help='Print the compilation steps of base2net')
    common.add_argument('--config',
                        default=os.path.join(ROOT, 'configs', 'possnet.yml'),
                        help='Config file for the tool defaults')
    common.add_argument('--config_env',
                        default=os.path.join(ROOT, 'configs', 'env.yml'),
                        help='Config file for the environment')

    parser = argparse.ArgumentParser(description='possnet')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('dist', parents=[common], help='Possibility distribution of a base or network')
    p.add_argument('file')
    p.add_argument('--mode', choices=['min', 'prod'], default='min')
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser('entail', parents=[common], help='Does the base entail (FORMULA, ALPHA)')
    p.add_argument('file')
    p.add_argument('query')
    p.add_argument('alpha')
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser('net2base', parents=[common], help='Encode a network as a base')
    p.add_argument('file')
    p.add_argument('--mode', choices=['min', 'prod'], default='min')
    p.set_defaults(func=cmd_net2base)

    p = sub.add_parser('base2net', parents=[common], help='Compile a base into a min-based network')
    p.add_argument('file')
    p.add_argument('--order', default=None, help='Comma separated variable ordering')
    p.set_defaults(func=cmd_base2net)

    p = sub.add_parser('query', parents=[common], help='Conditional possibility "TARGET | EVIDENCE"')
    p.add_argument('file')
    p.add_argument('query')
    p.add_argument('--mode', choices=['min', 'prod'], default='min')
    p.set_defaults(func=cmd_query)

    p = sub.add_parser('verify', parents=[common], help='Run a property check')
    p.add_argument('--check', default=None)
    p.add_argument('--config_exp', default=None, help='Config file for the experiment')
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--vars', type=int, default=None)
    p.add_argument('--max-parents', type=int, default=None)
    p.add_argument('--weight-den', type=int, default=None)
    p.add_argument('--clauses', type=int, default=None)
    p.add_argument('--workers', type=int, default=None)
    p.add_argument('--base', default=None, help='Check the roundtrip of this base file')
    p.add_argument('--order', default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('kappa2pi', parents=[common], help='Possibility distribution of a kappa ranking')
    p.add_argument('file')
    p.add_argument('--evidence', default=None)
    p.set_defaults(func=cmd_kappa2pi)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    tool = load_tool_config(args.config)
    args.log_level = tool.log_level
    init_logging(level=tool.log_level)
    set_max_vars(args.max_vars if args.max_vars is not None else tool.max_vars)
    if getattr(args, 'workers', None) is None and args.command == 'verify' and not args.config_exp:
        args.workers = tool.workers

    try:
        return args.func(args)
    except PossnetError as e:
        print(colored('error: {}'.format(e), 'red'), file=sys.stderr)
        return e.exit_code
    except (ValueError, OSError) as e:
        print(colored('error: {}'.format(e), 'red'), file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
