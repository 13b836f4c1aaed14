# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Quantum phase estimation, with the two level H2 energy problem.

The counting register is qubits C{0 .. m-1}, qubit C{j} controls
C{U^(2^(m-1-j))} on the state qubit C{m}; the inverse Fourier transform then
leaves the phase fraction in the counting bits, qubit 0 most significant.
The state qubit is prepared in C{|1>}.

@since: 0.1
"""

import math

import numpy as np
from scipy import linalg

import atomtwin
from atomtwin import compiler, experiments, util


__all__ = [
    'H2Problem',
    'QpeResult',
    'z_power_unitary',
    'qpe_program',
    'qpe_run',
    'h2_phases',
    'h2_energy',
]

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class H2Problem(object):
    """
    The two level hydrogen Hamiltonian C{H = a0 + a1 Z + a2 X} (Hartree).

    @ivar t0: Evolution time scale, C{pi/(|a1| + |a2|)} by default so that
        every eigenphase fits in C{(-pi, pi]}.
    """

    def __init__(self, a0=-0.328717, a1=0.787967, a2=0.181289, t0=None):
        self.a0 = float(a0)
        self.a1 = float(a1)
        self.a2 = float(a2)

        scale = abs(self.a1) + abs(self.a2)

        if t0 is None:
            if not scale:
                raise atomtwin.DomainError('No energy scale to set t0')

            t0 = math.pi / scale

        self.t0 = float(t0)

        if not self.t0 > 0:
            raise atomtwin.DomainError('t0 must be positive')

    def trotter_unitary(self):
        """
        First order Trotter step C{exp(i a2 t0 X) exp(i a1 t0 Z)}; the
        constant C{a0} is left out and added back to the energy.
        """
        return (linalg.expm(1j * self.a2 * self.t0 * _X) @
                linalg.expm(1j * self.a1 * self.t0 * _Z))

    def as_dict(self):
        return {'a0': self.a0, 'a1': self.a1, 'a2': self.a2, 't0': self.t0}

    def __repr__(self):
        return 'H2Problem(a0=%r, a1=%r, a2=%r, t0=%r)' % (
            self.a0, self.a1, self.a2, self.t0)


def z_power_unitary(k):
    """
    C{Z^k = diag(1, exp(i pi k))}.
    """
    return np.diag([1, np.exp(1j * math.pi * k)])


def _unitary(u_spec):
    if isinstance(u_spec, H2Problem):
        return u_spec.trotter_unitary()

    if isinstance(u_spec, dict):
        if 'z_power' in u_spec:
            return z_power_unitary(u_spec['z_power'])

        return H2Problem(**u_spec).trotter_unitary()

    if np.isscalar(u_spec):
        return z_power_unitary(u_spec)

    return np.asarray(u_spec, dtype=complex)


def qpe_program(unitary, m_bits, prepare_one=True):
    """
    The phase estimation program for a single qubit C{unitary} with
    C{m_bits} counting qubits.
    """
    if m_bits < 1:
        raise atomtwin.DomainError('At least one counting bit is needed')

    m = m_bits
    program = []

    if prepare_one:
        program.append(compiler.X(m))

    program.extend(compiler.H(j) for j in range(m))

    for j in range(m):
        power = np.linalg.matrix_power(unitary, 2 ** (m - 1 - j))
        program.append(compiler.ControlledU(j, m, power))

    program.append(compiler.QFTInv(range(m)))
    program.append(compiler.Measure())

    return program


def h2_phases(problem):
    """
    Eigenphase fractions C{phi/(2 pi)} in C{[0, 1)} of the Trotter step,
    ascending.
    """
    values = np.linalg.eigvals(problem.trotter_unitary())
    fractions = np.mod(np.angle(values) / (2 * math.pi), 1.0)

    return sorted(float(f) for f in fractions)


def h2_energy(bits, problem):
    """
    Energy estimate of a counting register readout: the phase fraction
    C{bits/2^m} is mapped to C{(-pi, pi]}, divided by C{t0} and the offset
    C{a0} is added back.
    """
    if not bits or set(bits) - set('01'):
        raise atomtwin.DomainError('Bad bitstring %r' % (bits,))

    fraction = int(bits, 2) / float(2 ** len(bits))
    phi = util.wrap_angle(2 * math.pi * fraction)

    return phi / problem.t0 + problem.a0


class QpeResult(object):
    """
    @ivar histogram: Counting register shots.
    @ivar distribution: Exact counting register distribution of an ideal run,
        C{None} when noisy.
    @ivar modal: Most frequent counting bitstring.
    @ivar phase: Phase fraction of C{modal}.
    """

    def __init__(self, histogram, distribution, circuit, m_bits):
        self.histogram = histogram
        self.distribution = distribution
        self.circuit = circuit
        self.m_bits = m_bits
        self.modal = histogram.most_common()
        self.phase = int(self.modal, 2) / float(2 ** m_bits)

    def probability(self, bits):
        """
        Exact probability when known, the shot frequency otherwise.
        """
        if self.distribution is not None:
            return self.distribution[bits]

        return self.histogram[bits] / float(self.histogram.shots)

    def __repr__(self):
        return '<QpeResult modal=%s phase=%r>' % (self.modal, self.phase)


def qpe_run(u_spec, m_bits, shots, noise=None, seed=0, layout=None,
            timing=None, logger=None):
    """
    Compiles and runs phase estimation of C{u_spec}.

    @param u_spec: An L{H2Problem}, a C{Z} power C{k} (or C{{'z_power': k}})
        or a 2x2 unitary.
    @param m_bits: Counting bits, 2 or 3.
    @param layout: Defaults to C{qpe3} or C{qpe4} by register size.
    @rtype: L{QpeResult}
    @raise ConnectivityError: The layout cannot host the controlled powers.
    """
    if m_bits not in (2, 3):
        raise atomtwin.DomainError('Counting bits must be 2 or 3, got %r' % (
            m_bits,))

    unitary = _unitary(u_spec)
    n = m_bits + 1

    if layout is None:
        layout = experiments.get_layout('qpe%d' % (n,))

    circuit = compiler.compile(qpe_program(unitary, m_bits), layout, n,
                               logger=logger)
    dist, histogram = experiments.simulate(circuit, shots, seed, noise,
                                           timing, logger)
    counting = list(range(m_bits))

    if dist is not None:
        dist = dist.marginal(counting)

    result = QpeResult(histogram.marginal(counting), dist, circuit, m_bits)

    if logger:
        logger.info('QPE m=%d: modal %s, phase %.4f', m_bits, result.modal,
                    result.phase)

    return result
