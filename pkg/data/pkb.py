"""
Base files (.pkb).

    # comment
    vars a b c            (optional, pins the variable order)
    a | !b : 3/10
    !(a & b) : 0.5        (any formula; put in clausal form on load)
    false : 1/4           (the empty clause)

'vars' is a keyword here and cannot name a variable.
"""
import logging
import re

from logic.parser import parse_formula
from logic.propositional import VariableRegistry
from possibilistic.base import (FormulaBase, WeightedFormula, format_weight,
                                parse_weight, processing_order)
from translate.base_to_graph import preprocess
from utils.errors import ParseError

logger = logging.getLogger(__name__)

KEYWORDS = ('vars',)


def strip_comment(line):
    return line.split('#', 1)[0].rstrip()


def parse_vars_line(line, lineno, source, reserved=KEYWORDS):
    """ Names of a 'vars a b c' header line """
    registry = VariableRegistry(reserved=reserved)
    for m in list(re.finditer(r'\S+', line))[1:]:
        name = m.group()
        if name in registry:
            raise ParseError('duplicate variable {!r} in vars header'.format(name), line=lineno,
                             column=m.start(), source=source)
        try:
            registry.get_or_add(name, column=m.start())
        except ParseError as e:
            raise e.at_line(lineno, source)
    registry.frozen = True
    return registry


def parse_pkb(text, source=None):
    """
    Weighted formulas of a base file, before clausal preprocessing.

    :param text: file contents
    :param source: name used in error messages
    :return: FormulaBase
    """
    registry = VariableRegistry(reserved=KEYWORDS)
    formulas = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line.strip():
            continue
        if line.split()[0] == 'vars':
            if formulas or len(registry):
                raise ParseError('vars header must come before any fact', line=lineno, column=0, source=source)
            registry = parse_vars_line(line, lineno, source)
            continue

        colon = line.rfind(':')
        if colon < 0:
            raise ParseError('expected FORMULA : WEIGHT', line=lineno, column=len(line), source=source)
        weight_text = line[colon + 1:]
        try:
            formula = parse_formula(line[:colon], registry)
            weight = parse_weight(weight_text, column=colon + 1 + len(weight_text) - len(weight_text.lstrip()))
        except ParseError as e:
            raise e.at_line(lineno, source)
        if weight == 0:
            logger.warning('{}:{}: dropping fact with weight 0'.format(source or '<input>', lineno))
            continue
        formulas.append(WeightedFormula(formula, weight))
    return FormulaBase(registry.variables, tuple(formulas))


def loads(text, source=None):
    """ Clausal PossBase of a base file """
    return preprocess(parse_pkb(text, source))


def read_base(path):
    with open(path, 'r', encoding='utf-8') as f:
        return loads(f.read(), source=path)


def check_writable(variables, reserved):
    for v in variables:
        if v.name in reserved:
            raise ValueError('Invalid variable name {!r}: reserved in this file format'.format(v.name))


def dumps(S):
    check_writable(S.variables, KEYWORDS)
    lines = []
    if S.variables:
        lines.append('vars ' + ' '.join(v.name for v in S.variables))
    for wc in processing_order(S.entries):
        lines.append('{} : {}'.format(wc.clause, format_weight(wc.weight)))
    return '\n'.join(lines) + '\n' if lines else ''


def write_base(S, path):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(S))
