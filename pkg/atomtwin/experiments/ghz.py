# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
GHZ state preparation and parity analysis.

The state is built by a Hadamard on the central qubit and a fan of C{CNOT}s
out of it. The fidelity is C{(P_0..0 + P_1..1 + C_N)/2}, the populations
from direct readout and C{C_N} the amplitude of the parity oscillation after
a global C{pi/2} analysis pulse of variable phase.

@since: 0.1
"""

import math

import numpy as np
from scipy import optimize

import atomtwin
from atomtwin import compiler, experiments, qsim
from atomtwin.circuit import GlobalRot, MeasureAll


__all__ = [
    'ParityScan',
    'GhzResult',
    'ghz_program',
    'ghz_experiment',
    'fit_ghz_decay',
    'ghz_decay_series',
    'calibrate_cz_depolarizing',
]

#: C{CNOT} fan out of qubit 0, the last link is relayed through qubit 4.
GHZ_LINKS = ((0, 1), (0, 2), (0, 3), (0, 4), (4, 5))

MAX_GHZ = len(GHZ_LINKS) + 1

#: Closest a decay pole may come to a data point.
POLE_TOLERANCE = 1e-3


class ParityScan(object):
    """
    Parity expectation against the analysis pulse phase.

    @ivar phases: Uniform grid on C{[0, 2 pi)}.
    @ivar parities: C{<P>} per phase, C{|P| <= 1}.
    @ivar n: Qubit count.
    """

    def __init__(self, phases, parities, n):
        self.phases = np.asarray(phases, dtype=float)
        self.parities = np.asarray(parities, dtype=float)
        self.n = n

        if len(self.phases) != len(self.parities):
            raise atomtwin.DomainError('Phase and parity lengths differ')

        if np.any(np.abs(self.parities) > 1 + 1e-9):
            raise atomtwin.DomainError('Parity outside [-1, 1]')

    @property
    def amplitude(self):
        return experiments.parity_amplitude(self.phases, self.parities,
                                            self.n)

    def spectrum(self):
        """
        DFT power per frequency C{0 .. K/2}.
        """
        return np.abs(np.fft.rfft(self.parities)) ** 2

    def power_fraction(self, frequency=None):
        """
        Share of the non-DC power at C{frequency} (default C{n}).
        """
        if frequency is None:
            frequency = self.n

        power = self.spectrum()[1:]
        total = power.sum()

        if not total:
            return 0.0

        return float(power[frequency - 1] / total)

    def rows(self):
        return [(float(p), float(v))
                for p, v in zip(self.phases, self.parities)]


class GhzResult(object):
    """
    @ivar p_all0: Population of C{|0..0>}.
    @ivar p_all1: Population of C{|1..1>}.
    @ivar c_n: Parity oscillation amplitude.
    @ivar fidelity: C{(p_all0 + p_all1 + c_n)/2}, clipped to C{[0, 1]}.
    """

    def __init__(self, n, p_all0, p_all1, c_n):
        self.n = n
        self.p_all0 = float(p_all0)
        self.p_all1 = float(p_all1)
        self.c_n = abs(float(c_n))
        self.fidelity = min(1.0, max(
            0.0, (self.p_all0 + self.p_all1 + self.c_n) / 2))

    def as_dict(self):
        return {
            'n': self.n,
            'p_all0': self.p_all0,
            'p_all1': self.p_all1,
            'c_n': self.c_n,
            'fidelity': self.fidelity,
        }

    def __repr__(self):
        return '<GhzResult n=%d fidelity=%.4f>' % (self.n, self.fidelity)


def ghz_program(n):
    """
    The abstract program preparing C{(|0..0> + |1..1>)/sqrt(2)} on C{n}
    qubits.
    """
    if not 1 <= n <= MAX_GHZ:
        raise atomtwin.DomainError('GHZ size %d outside 1..%d' % (
            n, MAX_GHZ))

    program = [compiler.H(0)]
    program.extend(compiler.CNOT(c, t) for c, t in GHZ_LINKS[:n - 1])

    return program


def _analysis(circuit, phi):
    ops = [op for op in circuit if not isinstance(op, MeasureAll)]
    ops += [GlobalRot(phi, math.pi / 2), MeasureAll()]

    return circuit.copy(ops)


def ghz_experiment(n, shots, scan_points=None, noise=None, seed=0,
                   layout=None, timing=None, logger=None):
    """
    Prepares GHZ_n, reads the populations and scans the parity.

    An ideal run takes the populations from C{shots} direct readouts and the
    parities from the exact distribution; a noisy run draws C{shots}
    readouts per scan point.

    @param scan_points: Phase points, at least C{4n + 1} (the default).
    @param layout: Defaults to the C{ghz6} group.
    @return: C{(GhzResult, ParityScan, circuit, histogram)}, the compiled
        preparation circuit and its direct readout histogram.
    @raise DomainError: C{n} outside 2..6 or too few scan points.
    @raise ConnectivityError: The layout cannot host the C{CNOT} fan.
    """
    if not 2 <= n <= MAX_GHZ:
        raise atomtwin.DomainError('GHZ size %d outside 2..%d' % (
            n, MAX_GHZ))

    if scan_points is None:
        scan_points = 4 * n + 1

    if scan_points < 4 * n + 1:
        raise atomtwin.DomainError(
            '%d scan points cannot resolve frequency %d' % (scan_points, n))

    if layout is None:
        layout = experiments.get_layout('ghz6')

    circuit = compiler.compile(ghz_program(n) + [compiler.Measure()], layout,
                               n, logger=logger)
    seeds = experiments.child_seeds(seed, scan_points + 1)

    dist, histogram = experiments.simulate(circuit, shots, seeds[0], noise,
                                           timing, logger)
    p_all0 = histogram['0' * n] / float(shots)
    p_all1 = histogram['1' * n] / float(shots)

    phases = 2 * math.pi * np.arange(scan_points) / scan_points
    signs = qsim.parity_vector(n)
    parities = []

    for phi, s in zip(phases, seeds[1:]):
        d, h = experiments.simulate(_analysis(circuit, phi), shots, s, noise,
                                    timing, logger)

        if d is not None:
            parities.append(d.expectation(signs))
        else:
            parities.append(sum(
                qsim.parity(bits) * count for bits, count in h.counts.items()
            ) / float(shots))

    scan = ParityScan(phases, parities, n)
    result = GhzResult(n, p_all0, p_all1, scan.amplitude)

    if logger:
        logger.info('GHZ_%d: P0=%.4f P1=%.4f C=%.4f F=%.4f', n, p_all0,
                    p_all1, result.c_n, result.fidelity)

    return result, scan, circuit, histogram


def _decay(x, n):
    a, b, c = x

    return a + b / (n - c)


def fit_ghz_decay(points, full_output=False):
    """
    Least squares fit of C{F(N) = a + b/(N - c)}.

    The pole C{c} is first located on a grid on both sides of the data with
    C{a} and C{b} solved linearly, then all three are refined together.

    @param points: C{(N, fidelity)} pairs, at least four.
    @param full_output: Also return the residuals.
    @return: C{(a, b, c)}, or C{(a, b, c, residuals)}.
    @raise DomainError: Too few points, or the pole lands on a data point.
    """
    points = sorted((float(n), float(f)) for n, f in points)

    if len(points) < 4:
        raise atomtwin.DomainError('At least 4 points are needed, got %d' % (
            len(points),))

    ns = np.array([p[0] for p in points])
    fs = np.array([p[1] for p in points])

    lo = ns.min()
    hi = ns.max()
    grid = np.concatenate([
        lo - np.geomspace(0.02, 50, 400),
        hi + np.geomspace(0.02, 50, 400),
    ])

    best = None

    for c in grid:
        design = np.column_stack([np.ones_like(ns), 1 / (ns - c)])
        coef, _, _, _ = np.linalg.lstsq(design, fs, rcond=None)
        sse = float(np.sum((design @ coef - fs) ** 2))

        if best is None or sse < best[0]:
            best = (sse, coef[0], coef[1], c)

    start = np.array(best[1:])

    if best[0] > 0:
        fit = optimize.least_squares(
            lambda x: _decay(x, ns) - fs, start, method='lm',
            xtol=1e-15, ftol=1e-15, gtol=1e-15)
        a, b, c = fit.x
    else:
        a, b, c = start

    if np.min(np.abs(ns - c)) < POLE_TOLERANCE:
        raise atomtwin.DomainError(
            'Singular fit, pole at %r next to the data' % (c,))

    a, b, c = float(a), float(b), float(c)

    if full_output:
        return a, b, c, _decay((a, b, c), ns) - fs

    return a, b, c


def ghz_decay_series(ns, noise=None, shots=1000, seed=0, layout=None,
                     timing=None, logger=None):
    """
    GHZ fidelity for every size in C{ns}.

    @return: C{(N, fidelity)} pairs, ready for L{fit_ghz_decay}.
    """
    ns = list(ns)
    seeds = experiments.child_seeds(seed, len(ns))
    points = []

    for n, s in zip(ns, seeds):
        result = ghz_experiment(n, shots, noise=noise, seed=s, layout=layout,
                                timing=timing, logger=logger)[0]
        points.append((n, result.fidelity))

    return points


def calibrate_cz_depolarizing(target, noise, shots=2000, seed=0,
                              grid=None, layout=None, timing=None,
                              logger=None):
    """
    The C{C_Z} depolarizing probability at which the simulated Bell state
    (GHZ_2) fidelity meets C{target}, with the other channels of C{noise}
    fixed.

    The seeded fidelity is evaluated on C{grid} and interpolated.

    @raise DomainError: C{target} is outside the fidelities of the grid.
    """
    if grid is None:
        grid = np.linspace(0.0, 0.15, 16)

    fidelities = []

    for p in grid:
        result = ghz_experiment(
            2, shots, noise=noise.replace(cz_depolarizing=p), seed=seed,
            layout=layout, timing=timing)[0]
        fidelities.append(result.fidelity)

    fidelities = np.array(fidelities)

    if logger:
        logger.debug('Bell fidelity over the depolarizing grid: %r',
                     fidelities)

    if not fidelities.min() <= target <= fidelities.max():
        raise atomtwin.DomainError(
            'Bell fidelity %r not reachable in [%r, %r]' % (
                target, fidelities.min(), fidelities.max()))

    # fidelity falls with the depolarizing rate
    order = np.argsort(fidelities)

    return float(np.interp(target, fidelities[order], np.asarray(grid)[order]))
