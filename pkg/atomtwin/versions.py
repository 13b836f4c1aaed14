# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Release numbers. Every JSON run record carries the string form so a result
can be traced back to the code that produced it.

@since: 0.1
"""

import re


__all__ = [
    'Version',
    'get_version',
]

_PATTERN = re.compile(r'^(\d+(?:\.\d+)*)([a-z]*)$')


class Version(tuple):
    """
    C{(major, minor[, micro][, qualifier])}, e.g. C{Version(0, 2, 'dev')}.
    Compares as a tuple.
    """

    def __new__(cls, *args):
        return tuple.__new__(cls, args)

    @classmethod
    def parse(cls, text):
        """
        The inverse of C{str()}: C{'0.2.0alpha'} gives
        C{Version(0, 2, 0, 'alpha')}.

        @raise ValueError: C{text} is not a release number.
        """
        match = _PATTERN.match(text.strip())

        if not match:
            raise ValueError('Not a version: %r' % (text,))

        parts = [int(x) for x in match.group(1).split('.')]

        if match.group(2):
            parts.append(match.group(2))

        return cls(*parts)

    @property
    def release(self):
        """
        The numeric part.
        """
        return tuple(x for x in self if isinstance(x, int))

    @property
    def qualifier(self):
        for x in self:
            if not isinstance(x, int):
                return x

        return None

    def __str__(self):
        return get_version(self)


def get_version(parts):
    """
    Renders a version tuple: numbers joined by dots, a qualifier appended
    directly (C{(0, 2, 'dev')} is C{'0.2dev'}).
    """
    numbers = '.'.join(str(x) for x in parts if isinstance(x, int))
    qualifier = ''.join(str(x) for x in parts if not isinstance(x, int))

    return numbers + qualifier
