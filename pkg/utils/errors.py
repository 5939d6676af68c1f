"""
Exceptions raised by the library, grouped by the exit code the command line
maps them to.
"""


class PossnetError(Exception):
    exit_code = 1


class DomainError(PossnetError):
    exit_code = 1


class EnumerationGuardError(DomainError):
    def __init__(self, n_vars, max_vars):
        super(EnumerationGuardError, self).__init__(
            'Enumeration over {} variables exceeds the guard of {} (use --max-vars)'.format(n_vars, max_vars))
        self.n_vars = n_vars
        self.max_vars = max_vars


class EvidenceConflictError(DomainError):
    def __init__(self, evidence):
        super(EvidenceConflictError, self).__init__(
            'evidence impossible: Pi({}) = 0'.format(evidence))
        self.evidence = evidence


class NormalizationError(DomainError):
    pass


class UsageError(PossnetError):
    exit_code = 2


class ParseError(UsageError, ValueError):
    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super(ParseError, self).__init__(self.render())

    def render(self):
        where = []
        if self.source is not None:
            where.append(str(self.source))
        if self.line is not None:
            where.append(str(self.line))
        if self.column is not None:
            where.append(str(self.column))
        if where:
            return '{}: {}'.format(':'.join(where), self.message)
        return self.message

    def at_line(self, line, source=None, offset=0):
        """ Re-anchor an error raised on a fragment of a line """
        column = None if self.column is None else self.column + offset
        return ParseError(self.message, line=line, column=column, source=source)
