# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Native operations and circuits of the neutral-atom machine.

The native gate set is a global microwave rotation C{GlobalRot(phi, theta)}
acting on every qubit, a single-site Stark shift rotation C{LocalRz(site,
theta)}, a Rydberg C{Cz(site_a, site_b)} between two sites and a final
C{MeasureAll}. Sites are L{SiteCoord}s of the trap array.

@since: 0.1
"""

import math

import atomtwin


__all__ = [
    'SiteCoord',
    'NativeOp',
    'GlobalRot',
    'LocalRz',
    'Cz',
    'MeasureAll',
    'NativeCircuit',
]


class SiteCoord(tuple):
    """
    A trap array site, C{(row, col)}. Immutable, ordered and hashable.
    """

    def __new__(cls, row, col):
        row = int(row)
        col = int(col)

        if row < 0 or col < 0:
            raise atomtwin.CircuitError(
                'Negative site index (%d, %d)' % (row, col))

        return tuple.__new__(cls, (row, col))

    def __getnewargs__(self):
        return tuple(self)

    @property
    def row(self):
        return self[0]

    @property
    def col(self):
        return self[1]

    def shares_line(self, other):
        """
        C{True} if C{other} sits in the same row or the same column. This is
        the connectivity rule for C{C_Z}.
        """
        return self[0] == other[0] or self[1] == other[1]

    def distance2(self, other):
        """
        Squared Euclidean distance in array periods.
        """
        return (self[0] - other[0]) ** 2 + (self[1] - other[1]) ** 2

    def __str__(self):
        return '%d,%d' % self

    def __repr__(self):
        return 'SiteCoord(%d, %d)' % self


def as_site(site):
    """
    Coerces C{(row, col)} pairs and C{"r,c"} strings to L{SiteCoord}.
    """
    if isinstance(site, SiteCoord):
        return site

    if isinstance(site, str):
        try:
            row, col = site.split(',')
        except ValueError:
            raise atomtwin.CircuitError('Bad site %r' % (site,))

        return SiteCoord(row, col)

    return SiteCoord(*site)


def _check_angle(name, value):
    value = float(value)

    if not math.isfinite(value):
        raise atomtwin.CircuitError('%s must be finite, got %r' % (
            name, value))

    return value


class NativeOp(object):
    """
    Base class for all native operations.

    @cvar mnemonic: The circuit text mnemonic.
    """

    mnemonic = None

    def key(self):
        raise NotImplementedError

    def sites(self):
        """
        The sites this operation addresses, empty for whole-register ops.
        """
        return ()

    def inverse(self):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, NativeOp):
            return NotImplemented

        return self.key() == other.key()

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def __hash__(self):
        return hash(self.key())


class GlobalRot(NativeOp):
    """
    C{exp(-i theta/2 (cos(phi) X + sin(phi) Y))} on every qubit.
    """

    mnemonic = 'GR'

    def __init__(self, phi, theta):
        self.phi = _check_angle('phi', phi)
        self.theta = _check_angle('theta', theta)

    def key(self):
        return (self.mnemonic, self.phi, self.theta)

    def inverse(self):
        return GlobalRot(self.phi, -self.theta)

    def __repr__(self):
        return 'GlobalRot(phi=%r, theta=%r)' % (self.phi, self.theta)


class LocalRz(NativeOp):
    """
    C{diag(exp(-i theta/2), exp(i theta/2))} on the qubit at C{site}.
    """

    mnemonic = 'RZ'

    def __init__(self, site, theta):
        self.site = as_site(site)
        self.theta = _check_angle('theta', theta)

    def key(self):
        return (self.mnemonic, self.site, self.theta)

    def sites(self):
        return (self.site,)

    def inverse(self):
        return LocalRz(self.site, -self.theta)

    def __repr__(self):
        return 'LocalRz(%r, theta=%r)' % (self.site, self.theta)


class Cz(NativeOp):
    """
    C{diag(1, 1, 1, -1)} between two distinct sites.
    """

    mnemonic = 'CZ'

    def __init__(self, site_a, site_b):
        self.site_a = as_site(site_a)
        self.site_b = as_site(site_b)

        if self.site_a == self.site_b:
            raise atomtwin.CircuitError('C_Z on identical sites %s' % (
                self.site_a,))

    def key(self):
        # symmetric in its sites
        return (self.mnemonic,) + tuple(sorted((self.site_a, self.site_b)))

    def sites(self):
        return (self.site_a, self.site_b)

    def inverse(self):
        return self

    def __repr__(self):
        return 'Cz(%r, %r)' % (self.site_a, self.site_b)


class MeasureAll(NativeOp):
    """
    Final measurement of every qubit in the computational basis.
    """

    mnemonic = 'M'

    def key(self):
        return (self.mnemonic,)

    def inverse(self):
        raise atomtwin.CircuitError('Measurement has no inverse')

    def __repr__(self):
        return 'MeasureAll()'


class NativeCircuit(object):
    """
    An ordered sequence of native operations over a register of sites.

    @ivar sites: The register order, qubit C{i} lives at C{sites[i]}.
    @type sites: C{tuple} of L{SiteCoord}
    @ivar ops: The operations in time order.
    @ivar readout: C{readout[i]} is the qubit whose measured bit is reported
        at position C{i} of output bitstrings.
    """

    def __init__(self, sites, ops=None, readout=None):
        self.sites = tuple(as_site(s) for s in sites)

        if len(set(self.sites)) != len(self.sites):
            raise atomtwin.CircuitError('Duplicate register sites %r' % (
                self.sites,))

        self._index = dict((s, i) for i, s in enumerate(self.sites))

        n = len(self.sites)

        if readout is None:
            readout = range(n)

        self.readout = tuple(int(x) for x in readout)

        if sorted(self.readout) != list(range(n)):
            raise atomtwin.CircuitError(
                'Readout %r is not a permutation of %d qubits' % (
                    self.readout, n))

        self.ops = []

        if ops:
            self.extend(ops)

    @property
    def n_qubits(self):
        return len(self.sites)

    def index(self, site):
        """
        Returns the qubit index of C{site}.

        @raise CircuitError: C{site} is not in the register.
        """
        try:
            return self._index[as_site(site)]
        except KeyError:
            raise atomtwin.CircuitError('Site %s is not in the register' % (
                site,))

    def append(self, op):
        if not isinstance(op, NativeOp):
            raise atomtwin.CircuitError('Not a native operation %r' % (op,))

        for site in op.sites():
            self.index(site)

        self.ops.append(op)

    def extend(self, ops):
        for op in ops:
            self.append(op)

    def copy(self, ops=None):
        """
        Returns a new circuit over the same register and readout, with
        C{ops} (defaults to a copy of this circuit's operations).
        """
        if ops is None:
            ops = self.ops

        return NativeCircuit(self.sites, ops, self.readout)

    def counts(self):
        """
        Returns the number of operations per mnemonic.
        """
        ret = {}

        for op in self.ops:
            ret[op.mnemonic] = ret.get(op.mnemonic, 0) + 1

        return ret

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def __eq__(self, other):
        if not isinstance(other, NativeCircuit):
            return NotImplemented

        return (
            self.sites == other.sites and
            self.readout == other.readout and
            self.ops == other.ops
        )

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def __repr__(self):
        return '<%s.%s qubits=%d ops=%d 0x%x>' % (
            self.__class__.__module__,
            self.__class__.__name__,
            self.n_qubits,
            len(self.ops),
            id(self))
