# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Pulse level model of the Rydberg C{C_Z} gate.

Two atoms with three levels each (C{|0>}, C{|1>}, C{|r>}), basis index
C{3a + b}. Only C{|1> <-> |r>} is driven::

    H = sum_j (Omega/2)(e^{i xi} |1><r|_j + h.c.) - Delta sum_j |r><r|_j
        + B |rr><rr|

The gate is two pulses of length C{tau} at detuning C{Delta}, the second
shifted in phase by C{xi}. When tuned the computational states return to the
qubit manifold and C{phi11 - phi01 - phi10 = pi (mod 2 pi)}, the single atom
phases are then removed by two local C{R_Z} compensation pulses.

The Hamiltonian is piecewise constant so the classical fixed-step RK4 update
is the polynomial C{P(hA)}, C{A = -iH}; a pulse of C{N} steps is C{P^N}.

@since: 0.1
"""

import math

import numpy as np
from scipy import optimize

import atomtwin
from atomtwin import compiler, qsim, util
from atomtwin.circuit import Cz, GlobalRot, SiteCoord


__all__ = [
    'RydbergParams',
    'GatePhases',
    'TunedGate',
    'evolve_pulse',
    'pulse_propagator',
    'cz_phases',
    'tune_cz',
    'pulse_gate_unitary',
    'bell_test',
    'scan_detuning',
]

#: Computational basis indices inside the two atom, nine level space.
COMPUTATIONAL = (0, 1, 3, 4)

#: Integrator step: C{h <= 2 pi / (STEPS_PER_CYCLE * rate)}.
STEPS_PER_CYCLE = 200

CONVERGENCE_TOLERANCE = 1e-7
NORM_TOLERANCE = 1e-8
MAX_DOUBLINGS = 6

#: Tuned gates must reach this return population for every input.
RETURN_FLOOR = 0.99
PHASE_TOLERANCE = 0.05

#: Detuning grid in units of the Rabi frequency.
DETUNING_GRID = np.linspace(-0.6, 0.0, 25)

# drive phase xi enters as D U D^dagger with D = diag(1, e^{i xi/2},
# e^{-i xi/2}) per atom, these are the exponents of D on the nine levels
_PHASE_WEIGHTS = np.add.outer(
    np.array([0.0, 0.5, -0.5]), np.array([0.0, 0.5, -0.5])).reshape(-1)


class RydbergParams(object):
    """
    Parameters of the two pulse protocol. Rates are angular (rad/s).

    @ivar omega_r: Single atom resonant Rabi frequency.
    @ivar blockade_b: Interaction shift of C{|rr>}.
    @ivar delta: Detuning, entering the Hamiltonian as C{-Delta |r><r|}.
    @ivar tau: Duration of each pulse (s).
    @ivar xi: Phase of the second pulse relative to the first.
    @ivar omega_ratio_b: Rabi frequency of the second atom relative to the
        first, C{1} for symmetric illumination.
    """

    def __init__(self, omega_r, blockade_b, delta=0.0, tau=None, xi=0.0,
                 omega_ratio_b=1.0):
        self.omega_r = float(omega_r)
        self.blockade_b = float(blockade_b)
        self.delta = float(delta)
        self.xi = float(xi)
        self.omega_ratio_b = float(omega_ratio_b)

        if self.omega_r < 0 or self.omega_ratio_b < 0:
            raise atomtwin.DomainError('Rabi frequencies must not be negative')

        if tau is None:
            tau = blockaded_tau(self.omega_r, self.delta, self.omega_ratio_b)

        self.tau = float(tau)

        if not self.tau > 0:
            raise atomtwin.DomainError('Pulse duration must be positive, '
                                       'got %r' % (self.tau,))

    @property
    def omega_b(self):
        return self.omega_r * self.omega_ratio_b

    @property
    def omega_prime(self):
        """
        The detuned single atom Rabi frequency.
        """
        return math.hypot(self.omega_r, self.delta)

    def replace(self, **kwargs):
        """
        A copy with some fields replaced.
        """
        values = dict(
            omega_r=self.omega_r,
            blockade_b=self.blockade_b,
            delta=self.delta,
            tau=self.tau,
            xi=self.xi,
            omega_ratio_b=self.omega_ratio_b,
        )
        values.update(kwargs)

        return RydbergParams(**values)

    def __repr__(self):
        return ('RydbergParams(omega_r=%r, blockade_b=%r, delta=%r, tau=%r, '
                'xi=%r, omega_ratio_b=%r)') % (
            self.omega_r, self.blockade_b, self.delta, self.tau, self.xi,
            self.omega_ratio_b)


class GatePhases(object):
    """
    Phases and return populations of the computational inputs after the two
    pulse sequence.

    @ivar leakage: Population left outside the qubit manifold, averaged over
        the four computational inputs.
    """

    def __init__(self, phi01, phi10, phi11, return01, return10, return11,
                 leakage):
        self.phi01 = float(phi01)
        self.phi10 = float(phi10)
        self.phi11 = float(phi11)
        self.return01 = float(return01)
        self.return10 = float(return10)
        self.return11 = float(return11)
        self.leakage = float(leakage)

    @property
    def phase_error(self):
        """
        Distance of C{phi11 - phi01 - phi10} from an odd multiple of C{pi}.
        """
        return util.wrap_angle(
            self.phi11 - self.phi01 - self.phi10 - math.pi)

    @property
    def min_return(self):
        return min(self.return01, self.return10, self.return11)

    def objective(self, weight=1.0):
        """
        C{J = p01 p10 p11 - weight err^2}, maximised by the tuning.
        """
        return (
            self.return01 * self.return10 * self.return11 -
            weight * self.phase_error ** 2)

    def __repr__(self):
        return ('<GatePhases phi=(%.6f, %.6f, %.6f) returns=(%.6f, %.6f, '
                '%.6f) error=%.3e>') % (
            self.phi01, self.phi10, self.phi11, self.return01,
            self.return10, self.return11, self.phase_error)


class TunedGate(object):
    """
    A tuned pulse plus its compensation.

    @ivar pulse: The tuned L{RydbergParams}.
    @ivar comp_phase_a: Local phase cancelling the C{|01>} phase.
    @ivar comp_phase_b: Local phase cancelling the C{|10>} phase.
    @ivar phases: The L{GatePhases} at the tuned point, if computed.
    @ivar objective: The tuning objective at the tuned point.
    """

    def __init__(self, pulse, comp_phase_a, comp_phase_b, phases=None,
                 objective=None):
        self.pulse = pulse
        self.comp_phase_a = float(comp_phase_a)
        self.comp_phase_b = float(comp_phase_b)
        self.phases = phases
        self.objective = objective

    @classmethod
    def from_phases(cls, pulse, phases):
        return cls(pulse, -phases.phi01, -phases.phi10, phases,
                   phases.objective())

    def __repr__(self):
        return '<TunedGate %r comp=(%.6f, %.6f) objective=%r>' % (
            self.pulse, self.comp_phase_a, self.comp_phase_b, self.objective)


def blockaded_tau(omega_r, delta, omega_ratio_b=1.0):
    """
    One full cycle of C{|11>} in the blockade limit, where it couples to
    the symmetric single excitation at C{sqrt(Omega_a^2 + Omega_b^2)}.
    """
    collective = math.sqrt(
        omega_r ** 2 * (1 + omega_ratio_b ** 2) + delta ** 2)

    if collective == 0:
        raise atomtwin.DomainError('No drive and no detuning')

    return 2 * math.pi / collective


def _atom_hamiltonian(omega, delta):
    h = np.zeros((3, 3), dtype=complex)
    h[1, 2] = h[2, 1] = omega / 2.0
    h[2, 2] = -delta

    return h


def hamiltonian(params):
    """
    The 9x9 Hamiltonian of a pulse with zero drive phase.
    """
    eye = np.eye(3)
    h = (
        np.kron(_atom_hamiltonian(params.omega_r, params.delta), eye) +
        np.kron(eye, _atom_hamiltonian(params.omega_b, params.delta))
    )
    h[8, 8] += params.blockade_b

    return h


def _phase_frame(phase):
    return np.exp(1j * phase * _PHASE_WEIGHTS)


def _step_count(params, h):
    rate = max(
        params.omega_prime,
        math.hypot(params.omega_b, params.delta),
        abs(params.blockade_b),
        abs(params.delta),
        float(np.abs(np.linalg.eigvalsh(h)).max()),
    )

    if rate == 0:
        return 1

    max_step = 2 * math.pi / (STEPS_PER_CYCLE * rate)

    return max(1, int(math.ceil(params.tau / max_step)))


def _rk4_power(h, tau, steps):
    dt = tau / steps
    a = -1j * dt * h
    a2 = a @ a
    a3 = a2 @ a
    poly = np.eye(len(h)) + a + a2 / 2.0 + a3 / 6.0 + (a3 @ a) / 24.0

    return np.linalg.matrix_power(poly, steps)


def _check_norm(u):
    drift = np.abs(u.conj().T @ u - np.eye(len(u))).max()

    if drift > NORM_TOLERANCE:
        raise atomtwin.IntegratorError(
            'Norm drifted by %.3e over the pulse' % (drift,))


def pulse_propagator(params, phase=0.0, steps=None):
    """
    The 9x9 propagator of one pulse with drive phase C{phase}.

    Without C{steps} the step count is doubled until the propagator changes
    by less than L{CONVERGENCE_TOLERANCE}, the finer result is returned.
    The norm is checked against L{NORM_TOLERANCE} either way.

    @raise IntegratorError: No convergence after L{MAX_DOUBLINGS}
        doublings, or the norm drifted (a fixed C{steps} too coarse for
        the pulse).
    """
    h = hamiltonian(params)

    if steps is not None:
        u = _rk4_power(h, params.tau, int(steps))
    else:
        steps = _step_count(params, h)
        u = _rk4_power(h, params.tau, steps)

        for _ in range(MAX_DOUBLINGS):
            steps *= 2
            finer = _rk4_power(h, params.tau, steps)
            change = np.abs(finer - u).max()
            u = finer

            if change < CONVERGENCE_TOLERANCE:
                break
        else:
            raise atomtwin.IntegratorError(
                'Pulse propagator did not converge (last change %.3e with '
                '%d steps)' % (change, steps))

    _check_norm(u)

    if phase:
        d = _phase_frame(phase)
        u = d[:, None] * u * d.conj()[None, :]

    return u


def evolve_pulse(psi, params, phase=0.0):
    """
    Evolves a normalised nine level vector through one pulse.

    @raise IntegratorError: See L{pulse_propagator}.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)

    if psi.shape != (9,):
        raise atomtwin.SimulationError('Expected a 9 level two atom vector')

    return pulse_propagator(params, phase) @ psi


def two_pulse_propagator(params, first=None):
    """
    The propagator of the full protocol: a pulse, then the same pulse with
    phase C{xi}.
    """
    if first is None:
        first = pulse_propagator(params)

    d = _phase_frame(params.xi)
    second = d[:, None] * first * d.conj()[None, :]

    return second @ first


def _phases_from(u):
    amps = np.array([u[k, k] for k in COMPUTATIONAL])
    block = u[np.ix_(COMPUTATIONAL, COMPUTATIONAL)]
    kept = (np.abs(block) ** 2).sum(axis=0)

    return GatePhases(
        phi01=np.angle(amps[1]),
        phi10=np.angle(amps[2]),
        phi11=np.angle(amps[3]),
        return01=abs(amps[1]) ** 2,
        return10=abs(amps[2]) ** 2,
        return11=abs(amps[3]) ** 2,
        leakage=float(np.clip(1.0 - kept, 0.0, 1.0).mean()),
    )


def cz_phases(params):
    """
    Runs the two pulse sequence on C{|01>}, C{|10>} and C{|11>} and reports
    their return populations and phases.
    """
    return _phases_from(two_pulse_propagator(params))


def _tune_tau(params):
    """
    Pulse length maximising the single pulse C{|11>} return, near the first
    blockaded revival.
    """
    seed = blockaded_tau(params.omega_r, params.delta, params.omega_ratio_b)

    def loss(tau):
        u = pulse_propagator(params.replace(tau=tau))

        return -abs(u[4, 4]) ** 2

    grid = seed * np.linspace(0.7, 1.3, 121)
    values = [loss(t) for t in grid]
    i = int(np.argmin(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, len(grid) - 1)]

    result = optimize.minimize_scalar(
        loss, bounds=(lo, hi), method='bounded',
        options={'xatol': 1e-6 * seed})

    if result.fun <= values[i]:
        return float(result.x)

    return float(grid[i])


def _tune_xi(params, first):
    """
    Second pulse phase maximising the two pulse C{|01>} return.
    """
    k = COMPUTATIONAL[1]
    weights = first[k, :] * first[:, k]
    shift = _PHASE_WEIGHTS[k] - _PHASE_WEIGHTS

    def returns(xi):
        xi = np.atleast_1d(xi)

        return np.abs(np.exp(1j * np.outer(xi, shift)) @ weights) ** 2

    grid = np.linspace(0, 2 * math.pi, 360, endpoint=False)
    values = returns(grid)
    i = int(np.argmax(values))
    step = grid[1] - grid[0]

    result = optimize.minimize_scalar(
        lambda x: -returns(x)[0],
        bounds=(grid[i] - step, grid[i] + step), method='bounded',
        options={'xatol': 1e-9})

    if -result.fun >= values[i]:
        return float(result.x) % (2 * math.pi)

    return float(grid[i])


def tune_at(params):
    """
    Tunes C{tau} then C{xi} at the detuning of C{params}, returning the
    L{TunedGate}.
    """
    params = params.replace(tau=_tune_tau(params))
    first = pulse_propagator(params)
    params = params.replace(xi=_tune_xi(params, first))
    phases = _phases_from(two_pulse_propagator(params, first))

    return TunedGate.from_phases(params, phases)


def tune_cz(omega_r, blockade_b, omega_ratio_b=1.0, deltas=None,
            logger=None):
    """
    Tunes the two pulse gate as done on the machine.

    For every detuning of the grid (C{Delta/Omega} in C{[-0.6, 0]}) the
    pulse length and phase jump are tuned, the phase condition is then
    solved by C{brentq} inside every grid cell where its error changes sign.
    Among the roots the largest objective wins.

    @raise TuningError: No root reaches the return floor and phase
        tolerance, C{best} carries the best candidate.
    """
    if not omega_r > 0 or not blockade_b > 0:
        raise atomtwin.DomainError('Rabi frequency and blockade must be '
                                   'positive')

    base = RydbergParams(omega_r, blockade_b, omega_ratio_b=omega_ratio_b)

    if deltas is None:
        deltas = DETUNING_GRID * omega_r

    cache = {}

    def tuned(delta):
        try:
            return cache[delta]
        except KeyError:
            gate = tune_at(base.replace(delta=delta, tau=None))
            cache[delta] = gate

            return gate

    def error(delta):
        return tuned(delta).phases.phase_error

    errors = [error(d) for d in deltas]

    if logger:
        logger.debug('Phase error on the detuning grid: %r', errors)

    candidates = []

    for i in range(len(deltas) - 1):
        e0, e1 = errors[i], errors[i + 1]

        # a jump through +-pi is a branch change, not a root
        if abs(e0) >= math.pi / 2 or abs(e1) >= math.pi / 2:
            continue

        if e0 == 0:
            candidates.append(tuned(deltas[i]))
        elif e0 * e1 < 0:
            root = optimize.brentq(
                error, deltas[i], deltas[i + 1], xtol=1e-7 * omega_r)
            candidates.append(tuned(root))

    if not candidates:
        best = max(cache.values(), key=lambda g: g.objective)

        raise atomtwin.TuningError(
            'Phase condition has no root on the detuning grid', best)

    best = max(candidates, key=lambda g: g.objective)
    phases = best.phases

    if logger:
        logger.info('Tuned C_Z: delta/omega=%.5f tau*omega=%.5f xi=%.5f '
                    'error=%.2e', best.pulse.delta / omega_r,
                    best.pulse.tau * omega_r, best.pulse.xi,
                    phases.phase_error)

    if phases.min_return < RETURN_FLOOR or \
            abs(phases.phase_error) >= PHASE_TOLERANCE:
        raise atomtwin.TuningError(
            'Best tuned gate misses the floor: returns %.4f, phase error '
            '%.4f' % (phases.min_return, phases.phase_error), best)

    return best


def pulse_gate_unitary(gate):
    """
    The compensated gate on the computational subspace.

    @return: C{(matrix, leakage, distance)}, the 4x4 block (not unitary when
        population leaks), the mean leaked population and the operator
        distance to C{diag(1, 1, 1, -1)}.
    """
    u = two_pulse_propagator(gate.pulse)
    block = u[np.ix_(COMPUTATIONAL, COMPUTATIONAL)]
    ca = gate.comp_phase_a
    cb = gate.comp_phase_b
    comp = np.exp(1j * np.array([0.0, ca, cb, ca + cb]))
    block = comp[:, None] * block

    leakage = float(np.clip(
        1.0 - (np.abs(block) ** 2).sum(axis=0), 0.0, 1.0).mean())

    return block, leakage, util.operator_distance(block, qsim.CZ_MATRIX)


_BELL_SITES = (SiteCoord(0, 0), SiteCoord(0, 1))


def bell_circuit():
    """
    The two qubit GHZ circuit, C{H} then C{CNOT}, compiled.

    With the C{C_Z} swapped for the identity the pair ends in C{|+0>}.
    No choice of single qubit pulses can both cancel around the C{C_Z}
    and leave a Bell pair after it.
    """
    return compiler.compile(
        [compiler.H(0), compiler.CNOT(0, 1)], compiler.Layout(_BELL_SITES))


def bell_test(gate, parity_points=32):
    """
    Bell state fidelity of a two qubit gate used as the machine's C{C_Z}.

    The GHZ circuit is run with every C{C_Z} replaced by C{gate}, then a
    global C{pi/2} analysis pulse is scanned over C{parity_points} phases.
    The coherence C{C} is twice the magnitude of the parity's Fourier
    component at frequency 2.

    @param gate: A 4x4 matrix or a L{TunedGate}.
    @return: C{{'P00', 'P11', 'C', 'F'}}.
    """
    if isinstance(gate, TunedGate):
        matrix = pulse_gate_unitary(gate)[0]
    else:
        matrix = np.asarray(gate, dtype=complex)

    if matrix.shape != (4, 4):
        raise ValueError('Expected a 4x4 gate, got shape %r' % (
            matrix.shape,))

    parity_points = int(parity_points)

    if parity_points < 5:
        raise ValueError('At least 5 parity points are needed to resolve '
                         'frequency 2')

    circuit = bell_circuit()
    state = qsim.init_state(2, sites=circuit.sites)

    for op in circuit:
        if isinstance(op, Cz):
            qubits = (state.qubit(op.site_a), state.qubit(op.site_b))
            state = qsim.apply_matrix(state, matrix, qubits)
        else:
            state = qsim.apply_native(state, op)

    pops = np.abs(state.amplitudes) ** 2
    signs = qsim.parity_vector(2)
    phis = 2 * math.pi * np.arange(parity_points) / parity_points
    parities = np.array([
        np.dot(np.abs(qsim.apply_native(
            state, GlobalRot(phi, math.pi / 2)).amplitudes) ** 2,
            signs)
        for phi in phis
    ])

    c = 2 * abs(np.dot(parities, np.exp(-2j * phis))) / parity_points
    p00 = float(pops[0])
    p11 = float(pops[3])

    return {
        'P00': p00,
        'P11': p11,
        'C': float(c),
        'F': (p00 + p11 + c) / 2.0,
    }


def scan_detuning(omega_r, blockade_b, deltas=None, omega_ratio_b=1.0,
                  logger=None):
    """
    The tuning table: for each detuning the tuned pulse length and phase
    jump, the phase sum, the return populations and the Bell fidelity of the
    compensated gate.

    @return: A C{list} of C{dict} rows.
    """
    base = RydbergParams(omega_r, blockade_b, omega_ratio_b=omega_ratio_b)

    if deltas is None:
        deltas = DETUNING_GRID * omega_r

    rows = []

    for delta in deltas:
        gate = tune_at(base.replace(delta=delta, tau=None))
        phases = gate.phases

        rows.append({
            'delta_over_omega': delta / omega_r,
            'tau_cycles': gate.pulse.tau * omega_r / (2 * math.pi),
            'xi': gate.pulse.xi,
            'phase_sum': util.wrap_angle(
                phases.phi11 - phases.phi01 - phases.phi10),
            'return01': phases.return01,
            'return10': phases.return10,
            'return11': phases.return11,
            'f_bell': bell_test(gate)['F'],
        })

        if logger:
            logger.debug('scan %r', rows[-1])

    return rows
