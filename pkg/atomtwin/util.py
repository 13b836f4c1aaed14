# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
AtomTwin utilities.

@since: 0.1
"""

import math

import numpy as np


__all__ = [
    'LineStream',
    'make_rng',
    'spawn_rngs',
    'wrap_angle',
    'operator_distance',
    'bit_table',
    'format_bits',
]


class LineStream(object):
    """
    A line oriented text stream, the circuit codec reads and writes one
    element per line.

    Features:
     - Raises L{IOError} if reading past end.
     - Allows you to C{peek()} at the next line.
    """

    def __init__(self, buf=None):
        """
        @param buf: Initial text.
        @type buf: C{str}, C{list} of lines or another L{LineStream}
        @raise TypeError: Unable to coerce C{buf} to lines.
        """
        self._lines = []
        self._pos = 0

        if buf is None:
            return

        if hasattr(buf, 'getvalue'):
            buf = buf.getvalue()

        if isinstance(buf, bytes):
            buf = buf.decode('utf-8')

        if isinstance(buf, str):
            self._lines = buf.splitlines()
        elif isinstance(buf, (list, tuple)):
            self._lines = [str(x) for x in buf]
        else:
            raise TypeError('Unable to coerce buf->LineStream got %r' % (buf,))

    def __len__(self):
        return len(self._lines)

    def read(self):
        """
        Reads the next line.

        @raise IOError: Attempted to read past the end of the stream.
        """
        if self.at_eof():
            raise IOError(
                'Attempted to read from the stream but already at the end')

        line = self._lines[self._pos]
        self._pos += 1

        return line

    def peek(self):
        """
        Returns the next line without moving the pointer, or C{None} at the
        end of the stream.
        """
        if self.at_eof():
            return None

        return self._lines[self._pos]

    def write(self, line):
        """
        Writes C{line} at the pointer, overwriting what is there.
        """
        if self._pos < len(self._lines):
            self._lines[self._pos] = line
        else:
            self._lines.append(line)

        self._pos += 1

    def append(self, data):
        """
        Append text to the end of the stream. The pointer will not move.
        """
        if hasattr(data, 'getvalue'):
            data = data.getvalue()

        self._lines.extend(data.splitlines())

    def tell(self):
        return self._pos

    def seek(self, pos, mode=0):
        if mode == 2:
            pos = len(self._lines) + pos

        self._pos = max(0, min(pos, len(self._lines)))

    def at_eof(self):
        return self._pos >= len(self._lines)

    def getvalue(self):
        """
        Returns the whole stream as text, one line per element.
        """
        if not self._lines:
            return ''

        return '\n'.join(self._lines) + '\n'


def make_rng(seed):
    """
    Returns a counter-based C{numpy} generator (Philox) for C{seed}.

    @param seed: An C{int} or a L{numpy.random.SeedSequence}.
    """
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)

    return np.random.Generator(np.random.Philox(seed))


def spawn_rngs(seed, count):
    """
    Returns C{count} independent Philox generators spawned from C{seed}, one
    per shot batch or trajectory.
    """
    return [make_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def wrap_angle(theta):
    """
    Maps C{theta} onto C{(-pi, pi]}.
    """
    w = math.fmod(theta + math.pi, 2 * math.pi)

    if w <= 0:
        w += 2 * math.pi

    return w - math.pi


def operator_distance(u, v):
    """
    Distance between two operators up to a global phase.

    The phase of C{v} is aligned to C{u} through the trace overlap, then the
    nuclear (trace) norm of the difference is returned. Identical operators
    give C{0}; a pair of stray diagonal phases C{a} shows up as C{2|a|}.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)

    if u.shape != v.shape:
        raise ValueError('Shape mismatch %r != %r' % (u.shape, v.shape))

    overlap = np.trace(v.conj().T @ u)

    if abs(overlap) > 1e-12:
        v = v * (overlap / abs(overlap))

    return float(np.linalg.norm(u - v, 'nuc'))


def bit_table(n):
    """
    Returns the C{(2**n, n)} table of basis state bits, qubit 0 in the most
    significant position.
    """
    idx = np.arange(2 ** n)
    shifts = np.arange(n - 1, -1, -1)

    return (idx[:, None] >> shifts[None, :]) & 1


def format_bits(index, n):
    """
    Renders basis state C{index} as an C{n} character bitstring.
    """
    return format(int(index), '0%db' % (n,)) if n else ''
