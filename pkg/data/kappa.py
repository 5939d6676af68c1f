"""
Kappa files (.kap): a 'vars' header, then 'BITS RANK' lines with RANK a
non-negative integer or 'inf'. Unlisted worlds have rank 0.
"""
import re

from data.pkb import parse_vars_line, strip_comment
from logic.propositional import check_guard, world_index
from network.conditioning import INF, KappaRanking
from utils.errors import ParseError

RANK_RE = re.compile(r'^(\d+|inf)$')


def loads(text, source=None, max_vars=None):
    registry = None
    ranks = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line.strip():
            continue
        words = [(m.group(), m.start()) for m in re.finditer(r'\S+', line)]
        if words[0][0] == 'vars':
            if registry is not None:
                raise ParseError('duplicate vars header', line=lineno, column=0, source=source)
            registry = parse_vars_line(line, lineno, source, reserved=())
            check_guard(len(registry), max_vars)
            ranks = [0] * (2 ** len(registry))
            continue
        if registry is None:
            raise ParseError('expected vars header', line=lineno, column=words[0][1], source=source)
        if len(words) != 2:
            col = words[2][1] if len(words) > 2 else len(line)
            raise ParseError('expected BITS RANK', line=lineno, column=col, source=source)

        (bits, bcol), (rank, rcol) = words
        if len(bits) != len(registry) or set(bits) - {'0', '1'}:
            raise ParseError('invalid bit pattern {!r} for {} variables'.format(bits, len(registry)),
                             line=lineno, column=bcol, source=source)
        if not RANK_RE.match(rank):
            raise ParseError('invalid rank {!r}'.format(rank), line=lineno, column=rcol, source=source)
        world = tuple(int(b) for b in bits)
        if world in seen:
            raise ParseError('duplicate world {}'.format(bits), line=lineno, column=bcol, source=source)
        seen.add(world)
        ranks[world_index(world)] = INF if rank == 'inf' else int(rank)

    if registry is None:
        raise ParseError('expected vars header', source=source)
    return KappaRanking(registry.variables, tuple(ranks))


def read_kappa(path, max_vars=None):
    with open(path, 'r', encoding='utf-8') as f:
        return loads(f.read(), source=path, max_vars=max_vars)


def dumps(k):
    lines = ['vars ' + ' '.join(v.name for v in k.variables)]
    for w, r in k.items():
        if r != 0:
            lines.append('{} {}'.format(''.join(str(b) for b in w), 'inf' if r == INF else r))
    return '\n'.join(lines) + '\n'
