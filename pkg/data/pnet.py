"""
Network files (.pnet).

    vars a b c                (optional, pins the variable order)
    node a
    !a : 3/4
    node b : a c
    b | a c : 1/2

A node block is a 'node NAME [: PARENT ...]' line followed by its table lines
'LIT [| PARENT-LIT ...] : WEIGHT'. Unlisted entries are 1. 'vars' and 'node'
are keywords and cannot name a variable.
"""
import re

from logic.parser import parse_literal
from logic.propositional import VariableRegistry
from network.graph import ConditionalTable, PossNetwork
from possibilistic.base import format_weight, parse_weight
from data.pkb import check_writable, parse_vars_line, strip_comment
from utils.errors import ParseError

WORD_RE = re.compile(r'\S+')
KEYWORDS = ('vars', 'node')


def _words(text, offset=0):
    return [(m.group(), offset + m.start()) for m in WORD_RE.finditer(text)]


def loads(text, source=None):
    registry = VariableRegistry(reserved=KEYWORDS)
    declared = False
    order = []
    parents = {}
    entries = {}
    referenced = {}
    current = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line.strip():
            continue
        words = _words(line)
        head = words[0][0]

        if head == 'vars':
            if order or len(registry):
                raise ParseError('vars header must come before any node', line=lineno, column=0, source=source)
            registry = parse_vars_line(line, lineno, source, KEYWORDS)
            declared = True
            continue

        try:
            if head == 'node':
                current = _parse_node(line, words, registry, order, parents, referenced, lineno)
                entries[current] = {}
            else:
                if current is None:
                    raise ParseError('table line before any node', column=0)
                _parse_entry(line, registry, current, parents[current], entries[current])
        except ParseError as e:
            raise e if e.line is not None else e.at_line(lineno, source)

    for var, lineno in referenced.items():
        if var not in parents:
            raise ParseError('parent {} has no node block'.format(var), line=lineno, source=source)
    if declared:
        for var in registry.variables:
            if var not in parents:
                raise ParseError('declared variable {} has no node block'.format(var), source=source)

    variables = registry.variables
    tables = {}
    for var in variables:
        table = ConditionalTable(var, parents[var])
        for (value, pvals), degree in entries[var].items():
            table.set(value, pvals, degree)
        tables[var] = table
    return PossNetwork(variables, parents, tables)


def _parse_node(line, words, registry, order, parents, referenced, lineno):
    rest = line[words[0][1] + 4:]
    offset = words[0][1] + 4
    if ':' in rest:
        colon = rest.index(':')
        name_part, parent_part = rest[:colon], rest[colon + 1:]
        parent_words = _words(parent_part, offset + colon + 1)
    else:
        name_part, parent_words = rest, []
    names = _words(name_part, offset)
    if len(names) != 1:
        col = names[1][1] if len(names) > 1 else len(line)
        raise ParseError('expected node NAME [: PARENTS]', column=col)
    name, col = names[0]
    var = registry.get_or_add(name, column=col)
    if var in parents:
        raise ParseError('duplicate node {}'.format(name), column=col)
    pars = []
    for pname, pcol in parent_words:
        p = registry.get_or_add(pname, column=pcol)
        if p == var or p in pars:
            raise ParseError('invalid parent {} of {}'.format(pname, name), column=pcol)
        pars.append(p)
        referenced.setdefault(p, lineno)
    order.append(var)
    parents[var] = tuple(sorted(pars, key=lambda v: v.index))
    return var


def _parse_entry(line, registry, node, pars, table_entries):
    colon = line.rfind(':')
    if colon < 0:
        raise ParseError('expected LITERAL [| CONTEXT] : WEIGHT', column=len(line))
    left, weight_text = line[:colon], line[colon + 1:]
    weight = parse_weight(weight_text, column=colon + 1 + len(weight_text) - len(weight_text.lstrip()))

    bar = left.find('|')
    inst_text = left if bar < 0 else left[:bar]
    instance = parse_literal(inst_text, registry)
    if instance.variable != node:
        raise ParseError('literal {} is not an instance of node {}'.format(instance, node),
                         column=len(inst_text) - len(inst_text.lstrip()))

    context = {}
    if bar >= 0:
        for word, col in _words(left[bar + 1:], bar + 1):
            lit = parse_literal(word, registry, column=col)
            if lit.variable not in pars or lit.variable in context:
                raise ParseError('literal {} is not a parent of {}'.format(word, node), column=col)
            context[lit.variable] = lit.positive
    if set(context) != set(pars):
        raise ParseError('context must instantiate every parent of {}'.format(node), column=bar if bar >= 0 else colon)

    key = (1 if instance.positive else 0, tuple(1 if context[p] else 0 for p in pars))
    if key in table_entries:
        raise ParseError('duplicate entry for {}'.format(left.strip()), column=0)
    table_entries[key] = weight


def read_network(path):
    with open(path, 'r', encoding='utf-8') as f:
        return loads(f.read(), source=path)


def dumps(G):
    check_writable(G.variables, KEYWORDS)
    lines = ['vars ' + ' '.join(v.name for v in G.variables)] if G.variables else []
    for var in G.variables:
        pars = G.parents[var]
        lines.append('node {}'.format(var) + (' : ' + ' '.join(p.name for p in pars) if pars else ''))
        for (value, pvals), degree in G.tables[var].non_one():
            lit = var.name if value == 1 else '!' + var.name
            ctx = ' '.join(p.name if v == 1 else '!' + p.name for p, v in zip(pars, pvals))
            lines.append('{}{} : {}'.format(lit, ' | ' + ctx if ctx else '', format_weight(degree)))
    return '\n'.join(lines) + '\n' if lines else ''


def write_network(G, path):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(G))
