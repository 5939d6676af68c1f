"""
Parser for the formula grammar shared by the file formats and the command
line, lowest precedence first:

    formula := implies
    implies := or ('->' implies)?
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '!' unary | atom
    atom    := NAME | 'true' | 'false' | '(' formula ')'

Columns in errors are 0-based offsets into the parsed text.
"""
import re

import pyparsing

from logic.propositional import (FALSE, TRUE, And, Atom, Implies, Literal,
                                 Not, Or)
from utils.errors import ParseError

LPAR, RPAR = map(pyparsing.Suppress, '()')
NOT, AND, OR, IMPLIES = map(pyparsing.Suppress, ['!', '&', '|', '->'])
NAME = pyparsing.Word(pyparsing.alphas, pyparsing.alphanums + '_')
NAME_RE = re.compile(r'^[A-Za-z][A-Za-z0-9_]*$')


def _fold(cls):
    def action(s, loc, toks):
        operands = list(toks)
        f = operands[0]
        for g in operands[1:]:
            f = cls(f, g)
        return f
    return action


def _grammar(registry):
    def atom_action(s, loc, toks):
        name = toks[0]
        if name == 'true':
            return TRUE
        if name == 'false':
            return FALSE
        return Atom(registry.get_or_add(name, column=loc))

    implies = pyparsing.Forward()
    unary = pyparsing.Forward()
    # '-' stops backtracking once an operator has been read
    atom = NAME.copy().set_parse_action(atom_action) | (LPAR - implies - RPAR)
    unary <<= (NOT - unary).set_parse_action(lambda s, loc, toks: Not(toks[0])) | atom
    conj = (unary + pyparsing.ZeroOrMore(AND - unary)).set_parse_action(_fold(And))
    disj = (conj + pyparsing.ZeroOrMore(OR - conj)).set_parse_action(_fold(Or))
    implies <<= (disj + pyparsing.Optional(IMPLIES - implies)).set_parse_action(_fold(Implies))
    return implies.parse_with_tabs()


def parse_formula(text, registry):
    """
    Parse text into a formula, registering unseen variables in the registry
    in order of first appearance.
    """
    if not text.strip():
        raise ParseError('empty formula', column=0)
    try:
        return _grammar(registry).parse_string(text, parse_all=True)[0]
    except pyparsing.ParseBaseException as e:
        raise ParseError('syntax error: {}'.format(e.msg), column=e.loc)


def parse_literal(text, registry, column=0):
    """ NAME or !NAME """
    stripped = text.strip()
    offset = column + (len(text) - len(text.lstrip()))
    positive = True
    body = stripped
    if stripped.startswith('!'):
        positive = False
        body = stripped[1:].strip()
    if not body or not NAME_RE.match(body) or body in ('true', 'false'):
        raise ParseError('invalid literal {!r}'.format(stripped), column=offset)
    return Literal(registry.get_or_add(body, column=offset), positive)
