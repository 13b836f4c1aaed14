# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Monte-Carlo noise channels for native circuits.

Noise is quasi-static: every trajectory draws its qubit frequency errors,
failed optical pumping and stochastic gate errors once, runs the circuit and
then hands a share of the shots to SPAM sampling. Each trajectory owns a
Philox stream spawned from the run seed, a seed gives the same histogram bit
for bit.

Channels, in circuit order:

 - pumping failure: the atom is absent, every C{C_Z} touching it is the
   identity and it reads dark;
 - dephasing: a Gaussian frequency error of width C{sqrt(2)/T2*} per
   trajectory (shared or per qubit) plus the static site offsets, applied as
   a C{Z} phase over every operation and the latency after it;
 - C{R_Z} intensity noise: the angle is scaled by C{1 + sigma g};
 - scattering: with probability C{eps |theta| / pi} the qubit is projected
   onto C{|0>} or C{|1>};
 - C{C_Z} depolarizing: with probability C{p} one of the 16 two-qubit Paulis
   follows the gate;
 - readout loss: per shot and atom the bit reads dark (C{1}).

@since: 0.1
"""

import math

import numpy as np

import atomtwin
from atomtwin import compiler, qsim, util
from atomtwin.circuit import LocalRz, Cz, MeasureAll


__all__ = [
    'TrajectoryRunner',
    'noisy_histogram',
    'noisy_shot',
]

_PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

#: The 16 two-qubit Paulis, C{I x I} first.
TWO_QUBIT_PAULIS = tuple(np.kron(a, b) for a in _PAULIS for b in _PAULIS)


class TrajectoryRunner(object):
    """
    Runs one circuit under one L{NoiseParams<atomtwin.noise.NoiseParams>}
    many times.

    @ivar circuit: The native circuit.
    @ivar params: The noise parameters.
    @ivar timing: L{TimingConfig<compiler.TimingConfig>} for the dephasing
        clock.
    """

    def __init__(self, circuit, params, timing=None, **kwargs):
        self.circuit = circuit
        self.params = params
        self.timing = timing or compiler.TimingConfig()
        self.logger = kwargs.pop('logger', None)

        n = circuit.n_qubits
        self.n_qubits = n
        self.bits = util.bit_table(n)
        self._z = 1 - 2 * self.bits

        self.offsets = 2 * math.pi * np.array([
            params.qubit_freq_offsets.get(site, 0.0)
            for site in circuit.sites])

        ops = [op for op in circuit if not isinstance(op, MeasureAll)]
        latency = self.timing.latency
        self.ops = ops
        self.intervals = [
            self.timing.op_duration(op) + (latency if i < len(ops) - 1 else 0)
            for i, op in enumerate(ops)
        ]

    def draw_detuning(self, rng):
        """
        The angular frequency error of every qubit for one trajectory.
        """
        n = self.n_qubits
        t2 = self.params.t2_star

        if math.isinf(t2):
            return self.offsets.copy()

        sigma = math.sqrt(2) / t2

        if self.params.dephasing_mode == 'collective':
            detuning = np.full(n, rng.normal(0.0, sigma))
        else:
            detuning = rng.normal(0.0, sigma, size=n)

        return detuning + self.offsets

    def _project(self, state, q, rng):
        mask = self.bits[:, q].astype(bool)
        amplitudes = state.amplitudes
        p1 = float(np.sum(np.abs(amplitudes[mask]) ** 2))
        total = float(np.sum(np.abs(amplitudes) ** 2))
        one = rng.random() * total < p1
        keep = mask if one else ~mask
        amplitudes = np.where(keep, amplitudes, 0)
        norm = math.sqrt(p1 if one else total - p1)

        return state.copy(amplitudes / norm)

    def trajectory(self, rng):
        """
        One noise draw.

        @return: C{(probs, absent)}, the outcome probabilities over the
            register (qubit order, no readout permutation) and the mask of
            atoms that failed optical pumping.
        """
        params = self.params
        n = self.n_qubits
        absent = rng.random(n) < params.pumping_error
        detuning = self.draw_detuning(rng)
        angles = self._z @ detuning
        dephase = bool(np.any(detuning))

        state = qsim.init_state(n, sites=self.circuit.sites)

        for op, dt in zip(self.ops, self.intervals):
            if isinstance(op, LocalRz):
                theta = op.theta

                if params.sigma_rel_intensity:
                    theta *= 1 + params.sigma_rel_intensity * rng.normal()

                state = qsim.apply_native(state, LocalRz(op.site, theta))

                if params.scattering_per_rz_pi:
                    p = min(1.0, params.scattering_per_rz_pi *
                            abs(theta) / math.pi)

                    if rng.random() < p:
                        state = self._project(state, state.qubit(op.site),
                                              rng)
            elif isinstance(op, Cz):
                qa = state.qubit(op.site_a)
                qb = state.qubit(op.site_b)

                if not (absent[qa] or absent[qb]):
                    state = qsim.apply_native(state, op)

                    if params.cz_depolarizing and \
                            rng.random() < params.cz_depolarizing:
                        pauli = TWO_QUBIT_PAULIS[rng.integers(16)]
                        state = qsim.apply_matrix(state, pauli, (qa, qb))
            else:
                state = qsim.apply_native(state, op)

            if dephase and dt:
                state = state.copy(
                    state.amplitudes * np.exp(-0.5j * dt * angles))

        probs = np.abs(state.amplitudes) ** 2

        return probs / probs.sum(), absent

    def _dark(self, rng, shape):
        if self.params.dark_on_loss:
            return np.ones(shape, dtype=int)

        return rng.integers(0, 2, size=shape)

    def sample(self, rng, shots):
        """
        Runs one trajectory and draws C{shots} readouts from it.

        @return: Outcome counts indexed by the reported bitstring.
        """
        n = self.n_qubits
        probs, absent = self.trajectory(rng)
        outcomes = rng.choice(len(probs), size=shots, p=probs)
        bits = self.bits[outcomes].copy()

        if np.any(absent):
            bits[:, absent] = self._dark(rng, (shots, int(absent.sum())))

        if self.params.readout_loss:
            lost = rng.random((shots, n)) < self.params.readout_loss

            if np.any(lost):
                bits[lost] = self._dark(rng, int(lost.sum()))

        bits = bits[:, list(self.circuit.readout)]
        weights = 1 << np.arange(n - 1, -1, -1)

        return np.bincount(bits @ weights, minlength=2 ** n)

    def run(self, shots, seed, trajectories=None):
        """
        Draws C{shots} noisy readouts.

        @param trajectories: Number of noise draws, defaults to the
            parameters' C{trajectories}; never more than C{shots}.
        """
        shots = int(shots)

        if shots <= 0:
            raise atomtwin.SimulationError(
                'Shots must be positive, got %d' % (shots,))

        if trajectories is None:
            trajectories = self.params.trajectories

        if self.params.is_ideal:
            trajectories = 1

        trajectories = max(1, min(int(trajectories), shots))
        sizes = [len(x) for x in np.array_split(np.arange(shots),
                                                trajectories)]
        total = np.zeros(2 ** self.n_qubits, dtype=np.int64)

        for rng, size in zip(util.spawn_rngs(seed, trajectories), sizes):
            total += self.sample(rng, size)

        if self.logger:
            self.logger.debug('%d shots over %d trajectories, %d outcomes',
                              shots, trajectories,
                              int(np.count_nonzero(total)))

        counts = dict(
            (util.format_bits(i, self.n_qubits), int(c))
            for i, c in enumerate(total) if c)

        return qsim.ShotHistogram(counts, shots, seed)


def noisy_histogram(circuit, params, shots, seed, trajectories=None,
                    timing=None, logger=None):
    """
    Samples C{shots} noisy runs of C{circuit}, reported with the circuit's
    readout permutation.
    """
    runner = TrajectoryRunner(circuit, params, timing, logger=logger)

    return runner.run(shots, seed, trajectories)


def noisy_shot(circuit, params, seed, timing=None):
    """
    One noisy readout of C{circuit} as a bitstring.
    """
    return noisy_histogram(circuit, params, 1, seed, timing=timing)\
        .most_common()
