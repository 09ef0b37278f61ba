import os
import tempfile

from .constants import THREADS_ENV_VAR
from .perm import Permutation


class CycleParseError(ValueError):
    def __init__(self, msg, text, position):
        self.text = text
        self.position = position
        super().__init__('{} at position {}: {!r}'.format(msg, position, text))


def _tokens(text):
    '''Yields (position, token) for '(', ')' and integers'''
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace() or ch == ',':
            i += 1
        elif ch in '()':
            yield i, ch
            i += 1
        elif ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            yield start, int(text[start:i])
        else:
            raise CycleParseError('Unexpected character {!r}'.format(ch), text, i)


def parse_cycles(text, degree=0):
    '''Parses cycle notation with 1-based points, e.g. "(1 2)(3 4 5)"

    Cycles need not be disjoint; they are composed left to right, so a point
    is carried through the first cycle, then the second, and so on.  The
    degree is the larger of `degree` and the largest point mentioned.
    '''
    cycles = []
    current = None
    for pos, tok in _tokens(text):
        if tok == '(':
            if current is not None:
                raise CycleParseError('Nested parenthesis', text, pos)
            current = []
            seen = set()
        elif tok == ')':
            if current is None:
                raise CycleParseError('Unbalanced closing parenthesis', text, pos)
            cycles.append(current)
            current = None
        else:
            if current is None:
                raise CycleParseError('Point outside of a cycle', text, pos)
            if tok < 1:
                raise CycleParseError('Points are numbered from 1', text, pos)
            if tok in seen:
                raise CycleParseError('Repeated point {} in cycle'.format(tok), text, pos)
            seen.add(tok)
            current.append(tok - 1)
    if current is not None:
        raise CycleParseError('Unbalanced opening parenthesis', text, len(text))
    if not cycles and text.strip():
        raise CycleParseError('No cycles found', text, 0)

    degree = max([degree] + [p + 1 for c in cycles for p in c])
    result = Permutation.identity(degree)
    for c in cycles:
        result = result * Permutation.from_cycles(degree, [c])
    return result


def format_cycles(perm):
    '''Formats a permutation in 1-based cycle notation'''
    cycles = perm.cycles()
    if not cycles:
        return '()'
    return ''.join('({})'.format(' '.join(str(p + 1) for p in c)) for c in cycles)


def atomic_write(path, text):
    '''Writes text to path via a temporary file and a rename'''
    dirname = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=dirname, prefix='.tmp-', suffix='.part')
    try:
        with os.fdopen(fd, 'w') as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def worker_count(environ=None):
    '''Worker processes allowed by TDLC_CERTIFY_THREADS (default 1)'''
    if environ is None:
        environ = os.environ
    value = environ.get(THREADS_ENV_VAR)
    if value is None or value.strip() == '':
        return 1
    try:
        n = int(value)
    except ValueError:
        raise ValueError('{} must be a positive integer, not {!r}'.format(THREADS_ENV_VAR, value))
    if n < 1:
        raise ValueError('{} must be a positive integer, not {!r}'.format(THREADS_ENV_VAR, value))
    return n

