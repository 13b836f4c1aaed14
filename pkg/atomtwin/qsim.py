# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Statevector simulator over the native gate set.

Qubit 0 is the leftmost character of every bitstring and the most significant
bit of the basis state index. Operations are pure: a new L{StateVector} is
returned, the input is never modified.

Conventions::

    GlobalRot(phi, theta) = exp(-i theta/2 (cos(phi) X + sin(phi) Y))
    LocalRz(theta)        = diag(exp(-i theta/2), exp(i theta/2))
    Cz                    = diag(1, 1, 1, -1)

Shot sampling uses C{numpy}'s counter-based C{Philox} generator, one
independent stream per batch spawned from a C{SeedSequence}.

@since: 0.1
"""

import math

import numpy as np

import atomtwin
from atomtwin import util
from atomtwin.circuit import (
    SiteCoord, GlobalRot, LocalRz, Cz, MeasureAll, as_site)


__all__ = [
    'StateVector',
    'Distribution',
    'ShotHistogram',
    'init_state',
    'apply_native',
    'apply_matrix',
    'probabilities',
    'sample_shots',
    'parity',
    'run',
    'circuit_unitary',
    'rotation_matrix',
]

#: Tolerance on the norm of states and on distributions summing to one.
NORM_TOLERANCE = 1e-9


def rotation_matrix(phi, theta):
    """
    The single qubit matrix of C{GlobalRot(phi, theta)}.
    """
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)

    return np.array([
        [c, -1j * s * np.exp(-1j * phi)],
        [-1j * s * np.exp(1j * phi), c],
    ], dtype=complex)


def rz_matrix(theta):
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


#: The C{C_Z} matrix.
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)


class StateVector(object):
    """
    A register of C{n} qubits.

    @ivar amplitudes: Complex vector of length C{2**n}, index C{b0 b1 ...}
        with qubit 0 most significant.
    @ivar sites: Register order, qubit C{i} lives at C{sites[i]}.
    @ivar lost: Per qubit lost/leaked flags, only set by noise runs.
    """

    def __init__(self, amplitudes, sites=None, lost=None):
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        size = len(amplitudes)
        n = size.bit_length() - 1

        if size == 0 or 2 ** n != size:
            raise atomtwin.SimulationError(
                'Amplitude vector length %d is not a power of two' % (size,))

        if not 1 <= n <= atomtwin.MAX_QUBITS:
            raise atomtwin.SimulationError(
                'Register of %d qubits outside 1..%d' % (
                    n, atomtwin.MAX_QUBITS))

        if sites is None:
            sites = [SiteCoord(0, i) for i in range(n)]

        sites = tuple(as_site(s) for s in sites)

        if len(sites) != n:
            raise atomtwin.SimulationError(
                '%d sites for %d qubits' % (len(sites), n))

        if lost is None:
            lost = np.zeros(n, dtype=bool)

        self.amplitudes = amplitudes
        self.n_qubits = n
        self.sites = sites
        self.lost = np.array(lost, dtype=bool)
        self._index = dict((s, i) for i, s in enumerate(sites))

    def norm(self):
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))

    def copy(self, amplitudes=None):
        """
        Returns a new state over the same register, with C{amplitudes} if
        given.
        """
        if amplitudes is None:
            amplitudes = self.amplitudes.copy()

        return StateVector(amplitudes, self.sites, self.lost.copy())

    def qubit(self, site):
        """
        Returns the qubit index of C{site}.

        @raise SimulationError: C{site} is not part of this register.
        """
        try:
            return self._index[as_site(site)]
        except (KeyError, atomtwin.CircuitError):
            raise atomtwin.SimulationError('Invalid site %r' % (site,))

    def __getitem__(self, label):
        """
        The amplitude of basis state C{label} (a bitstring).
        """
        return self.amplitudes[int(label, 2)]

    def __repr__(self):
        return '<StateVector qubits=%d norm=%.12f>' % (
            self.n_qubits, self.norm())


def init_state(n_qubits, basis_label=None, sites=None):
    """
    A computational basis state.

    @param n_qubits: 1 to L{atomtwin.MAX_QUBITS}.
    @param basis_label: Bitstring of length C{n_qubits}, defaults to all
        zeros; C{"zeros"} and C{"ones"} name the uniform labels.
    @raise SimulationError: Size out of range or label length mismatch.
    """
    if not 1 <= n_qubits <= atomtwin.MAX_QUBITS:
        raise atomtwin.SimulationError(
            'Register of %d qubits outside 1..%d' % (
                n_qubits, atomtwin.MAX_QUBITS))

    if basis_label is None:
        basis_label = '0' * n_qubits
    elif basis_label in ('zeros', 'ones'):
        basis_label = ('0' if basis_label == 'zeros' else '1') * n_qubits

    if len(basis_label) != n_qubits or set(basis_label) - set('01'):
        raise atomtwin.SimulationError(
            'Basis label %r does not match %d qubits' % (
                basis_label, n_qubits))

    amplitudes = np.zeros(2 ** n_qubits, dtype=complex)
    amplitudes[int(basis_label, 2)] = 1.0

    return StateVector(amplitudes, sites)


def _apply_1q(amplitudes, n, q, matrix):
    psi = amplitudes.reshape(2 ** q, 2, 2 ** (n - q - 1))

    return np.einsum('ij,ajb->aib', matrix, psi).reshape(-1)


def _apply_2q(amplitudes, n, qa, qb, matrix):
    psi = amplitudes.reshape((2,) * n)
    m = matrix.reshape(2, 2, 2, 2)
    out = np.tensordot(m, psi, axes=([2, 3], [qa, qb]))

    return np.moveaxis(out, [0, 1], [qa, qb]).reshape(-1)


def _bit(n, q):
    return (np.arange(2 ** n) >> (n - 1 - q)) & 1


def apply_matrix(state, matrix, qubits):
    """
    Applies an arbitrary 2x2 or 4x4 operator to C{qubits} (indices). The
    operator need not be unitary, the pulse-level gate carries leakage.
    """
    matrix = np.asarray(matrix, dtype=complex)
    qubits = tuple(int(q) for q in qubits)
    n = state.n_qubits

    for q in qubits:
        if not 0 <= q < n:
            raise atomtwin.SimulationError('Invalid qubit %d' % (q,))

    if len(set(qubits)) != len(qubits):
        raise atomtwin.SimulationError('Repeated qubits %r' % (qubits,))

    if matrix.shape != (2 ** len(qubits),) * 2:
        raise atomtwin.SimulationError(
            'Matrix of shape %r does not act on %d qubits' % (
                matrix.shape, len(qubits)))

    if len(qubits) == 1:
        amplitudes = _apply_1q(state.amplitudes, n, qubits[0], matrix)
    elif len(qubits) == 2:
        amplitudes = _apply_2q(state.amplitudes, n, qubits[0], qubits[1],
                               matrix)
    else:
        raise atomtwin.SimulationError('Only 1 and 2 qubit operators')

    return state.copy(amplitudes)


def _apply_global(state, op):
    m = rotation_matrix(op.phi, op.theta)
    amplitudes = state.amplitudes

    for q in range(state.n_qubits):
        amplitudes = _apply_1q(amplitudes, state.n_qubits, q, m)

    return state.copy(amplitudes)


def _apply_rz(state, op):
    q = state.qubit(op.site)
    phases = np.where(
        _bit(state.n_qubits, q),
        np.exp(0.5j * op.theta),
        np.exp(-0.5j * op.theta))

    return state.copy(state.amplitudes * phases)


def _apply_cz(state, op):
    qa = state.qubit(op.site_a)
    qb = state.qubit(op.site_b)

    if qa == qb:
        raise atomtwin.SimulationError('C_Z on identical sites')

    n = state.n_qubits
    signs = 1 - 2 * (_bit(n, qa) & _bit(n, qb))

    return state.copy(state.amplitudes * signs)


def _apply_measure(state, op):
    # terminal, sampling happens on the distribution
    return state.copy()


_APPLY = {
    GlobalRot: _apply_global,
    LocalRz: _apply_rz,
    Cz: _apply_cz,
    MeasureAll: _apply_measure,
}


def apply_native(state, op):
    """
    Applies one native operation.

    @raise SimulationError: Unknown operation or site not in the register.
    """
    try:
        func = _APPLY[type(op)]
    except KeyError:
        raise atomtwin.SimulationError('Not a native operation %r' % (op,))

    return func(state, op)


def run(circuit, initial=None, initial_label=None):
    """
    Applies every operation of C{circuit}.

    @param initial: Initial L{StateVector}, defaults to the basis state
        C{initial_label} over the circuit's register.
    """
    if initial is None:
        initial = init_state(circuit.n_qubits, initial_label, circuit.sites)

    state = initial

    for op in circuit:
        state = apply_native(state, op)

    return state


def circuit_unitary(circuit):
    """
    The dense unitary of C{circuit} on its register (up to 8 qubits), column
    C{j} is the image of basis state C{j}. The readout permutation is not
    applied.
    """
    n = circuit.n_qubits

    if n > 8:
        raise atomtwin.SimulationError('Dense unitary limited to 8 qubits')

    dim = 2 ** n
    u = np.zeros((dim, dim), dtype=complex)

    for j in range(dim):
        basis = np.zeros(dim, dtype=complex)
        basis[j] = 1.0

        u[:, j] = run(circuit, StateVector(basis, circuit.sites)).amplitudes

    return u


class Distribution(object):
    """
    A probability vector over the C{2**n} bitstrings, qubit 0 most
    significant.
    """

    def __init__(self, probs, n_qubits=None):
        probs = np.asarray(probs, dtype=float).reshape(-1)

        if n_qubits is None:
            n_qubits = len(probs).bit_length() - 1

        if len(probs) != 2 ** n_qubits:
            raise atomtwin.SimulationError(
                '%d probabilities for %d qubits' % (len(probs), n_qubits))

        if np.any(probs < -NORM_TOLERANCE) or not np.all(np.isfinite(probs)):
            raise atomtwin.SimulationError('Negative or non-finite '
                                           'probabilities')

        total = probs.sum()

        if abs(total - 1.0) > NORM_TOLERANCE:
            raise atomtwin.SimulationError(
                'Probabilities sum to %r' % (total,))

        self.probs = np.clip(probs, 0.0, None)
        self.n_qubits = n_qubits

    @classmethod
    def coerce(cls, dist):
        """
        Accepts a L{Distribution} or a C{dict} of bitstring to probability.
        """
        if isinstance(dist, Distribution):
            return dist

        if isinstance(dist, dict):
            if not dist:
                raise atomtwin.SimulationError('Empty distribution')

            n = len(next(iter(dist)))
            probs = np.zeros(2 ** n)

            for bits, p in dist.items():
                if len(bits) != n:
                    raise atomtwin.SimulationError(
                        'Mixed bitstring lengths in %r' % (dist,))

                probs[int(bits, 2)] += p

            return cls(probs, n)

        return cls(dist)

    def __getitem__(self, bits):
        return float(self.probs[int(bits, 2)])

    def as_dict(self, cutoff=0.0):
        """
        Returns C{{bitstring: probability}} for every outcome above
        C{cutoff}.
        """
        return dict(
            (util.format_bits(i, self.n_qubits), float(p))
            for i, p in enumerate(self.probs) if p > cutoff)

    def marginal(self, qubits):
        """
        The distribution of the bit positions in C{qubits}, in that order.
        """
        qubits = list(qubits)
        n = self.n_qubits
        rest = tuple(q for q in range(n) if q not in qubits)
        t = self.probs.reshape((2,) * n).sum(axis=rest)
        kept = sorted(qubits)
        t = np.transpose(t, [kept.index(q) for q in qubits])

        return Distribution(t.reshape(-1), len(qubits))

    def tvd(self, other):
        """
        Total variation distance to C{other}.
        """
        other = Distribution.coerce(other)

        return 0.5 * float(np.abs(self.probs - other.probs).sum())

    def expectation(self, values):
        """
        C{sum p_i values[i]} for a vector of per-outcome values.
        """
        return float(np.dot(self.probs, values))


def probabilities(state, readout=None):
    """
    The outcome distribution of C{state}.

    @param readout: Optional readout permutation; position C{i} of each
        bitstring reports qubit C{readout[i]}.
    @raise SimulationError: C{state} is not normalised.
    """
    probs = np.abs(state.amplitudes) ** 2
    total = probs.sum()

    if abs(total - 1.0) > NORM_TOLERANCE:
        raise atomtwin.SimulationError('State is not normalised (%r)' % (
            total,))

    n = state.n_qubits

    if readout is not None and tuple(readout) != tuple(range(n)):
        probs = np.transpose(probs.reshape((2,) * n), readout).reshape(-1)

    return Distribution(probs / total, n)


class ShotHistogram(object):
    """
    Seeded shot counts.

    @ivar counts: C{{bitstring: count}}, zero counts omitted.
    @ivar shots: Total number of shots.
    @ivar seed: The seed the shots were drawn with.
    """

    def __init__(self, counts, shots=None, seed=None):
        counts = dict((k, int(v)) for k, v in counts.items() if v)
        total = sum(counts.values())

        if shots is None:
            shots = total

        if total != shots:
            raise atomtwin.SimulationError(
                'Counts sum to %d, expected %d' % (total, shots))

        if len(set(len(k) for k in counts)) > 1:
            raise atomtwin.SimulationError('Mixed bitstring lengths')

        self.counts = counts
        self.shots = shots
        self.seed = seed

    @property
    def n_qubits(self):
        for k in self.counts:
            return len(k)

        return 0

    def __getitem__(self, bits):
        return self.counts.get(bits, 0)

    def __eq__(self, other):
        if not isinstance(other, ShotHistogram):
            return NotImplemented

        return (self.counts, self.shots) == (other.counts, other.shots)

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def probabilities(self):
        """
        Relative frequencies, C{{bitstring: fraction}}.
        """
        return dict(
            (k, v / float(self.shots)) for k, v in self.counts.items())

    def most_common(self):
        """
        The modal bitstring, ties broken by the smaller bitstring.
        """
        if not self.counts:
            return None

        ranked = sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))

        return ranked[0][0]

    def merge(self, other):
        """
        Returns a new histogram holding the shots of both.
        """
        counts = dict(self.counts)

        for k, v in other.counts.items():
            counts[k] = counts.get(k, 0) + v

        return ShotHistogram(counts, self.shots + other.shots, self.seed)

    def marginal(self, positions):
        """
        Counts over the bit positions C{positions}, in that order.
        """
        counts = {}

        for k, v in self.counts.items():
            key = ''.join(k[i] for i in positions)
            counts[key] = counts.get(key, 0) + v

        return ShotHistogram(counts, self.shots, self.seed)

    def sorted_items(self):
        return sorted(self.counts.items())

    def __repr__(self):
        return '<ShotHistogram shots=%d outcomes=%d seed=%r>' % (
            self.shots, len(self.counts), self.seed)


def sample_shots(dist, shots, seed, batches=1):
    """
    Draws C{shots} outcomes from C{dist}.

    The shots are split into C{batches}; each batch owns an independent
    Philox stream spawned from C{SeedSequence(seed)}, so a fixed C{(seed,
    batches)} pair always gives the same histogram.

    @raise SimulationError: C{shots} is not positive or C{dist} is invalid.
    """
    shots = int(shots)

    if shots <= 0:
        raise atomtwin.SimulationError('Shots must be positive, got %d' % (
            shots,))

    dist = Distribution.coerce(dist)
    batches = max(1, min(int(batches), shots))
    sizes = [len(x) for x in np.array_split(np.arange(shots), batches)]
    total = np.zeros(len(dist.probs), dtype=np.int64)
    probs = dist.probs / dist.probs.sum()

    for rng, size in zip(util.spawn_rngs(seed, batches), sizes):
        total += rng.multinomial(size, probs)

    counts = dict(
        (util.format_bits(i, dist.n_qubits), int(c))
        for i, c in enumerate(total) if c)

    return ShotHistogram(counts, shots, seed)


def parity(bits):
    """
    C{+1} for an even number of ones in C{bits}, C{-1} otherwise.

    @raise SimulationError: Empty bitstring.
    """
    if not bits:
        raise atomtwin.SimulationError('Parity of an empty bitstring')

    return -1 if bits.count('1') % 2 else 1


def parity_vector(n):
    """
    The parity of every basis state of C{n} qubits, as a vector.
    """
    return 1 - 2 * (util.bit_table(n).sum(axis=1) % 2)
