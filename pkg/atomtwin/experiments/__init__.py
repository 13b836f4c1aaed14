# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
End to end benchmark harnesses.

Every harness builds an abstract program, compiles it onto a layout of the
array, simulates it ideally or through the Monte-Carlo noise channels and
scores the shots. The harnesses live in L{atomtwin.experiments.ghz},
L{atomtwin.experiments.qpe} and L{atomtwin.experiments.qaoa}; this module
holds the shared plumbing.

@since: 0.1
"""

import math

import numpy as np

import atomtwin
from atomtwin import compiler, qsim
from atomtwin.noise import channels


__all__ = [
    'LAYOUTS',
    'ExperimentResult',
    'parity_amplitude',
    'child_seeds',
    'simulate',
    'get_layout',
]

#: Default qubit groups of the 7x7 array.
LAYOUTS = {
    'ghz6': ((3, 3), (0, 3), (3, 0), (6, 3), (3, 6), (0, 6)),
    'qpe3': ((3, 1), (3, 3), (3, 5)),
    'qpe4': ((3, 0), (3, 2), (3, 4), (3, 6)),
    'edge2': ((3, 3), (3, 6)),
    'line3': ((0, 3), (3, 3), (3, 6)),
    't4': ((0, 3), (3, 3), (3, 0), (3, 6)),
}


def get_layout(name, layouts=None):
    """
    The L{Layout<compiler.Layout>} called C{name}, from C{layouts} (the
    machine config groups) or the defaults.

    @raise CompileError: No such group.
    """
    if layouts and name in layouts:
        layout = layouts[name]

        if isinstance(layout, compiler.Layout):
            return layout

        return compiler.Layout(layout, name=name)

    try:
        sites = LAYOUTS[name]
    except KeyError:
        raise atomtwin.CompileError('Unknown layout %r' % (name,))

    return compiler.Layout(sites, name=name)


def child_seeds(seed, count):
    """
    C{count} independent integer seeds derived from C{seed}.
    """
    children = np.random.SeedSequence(seed).spawn(count)

    return [int(c.generate_state(1, np.uint64)[0]) for c in children]


def simulate(circuit, shots, seed, noise=None, timing=None, logger=None):
    """
    Runs C{circuit} and draws C{shots} readouts.

    @param noise: L{NoiseParams<atomtwin.noise.NoiseParams>}; C{None} or an
        ideal parameter set runs the exact statevector.
    @return: C{(dist, histogram)}; C{dist} is the exact outcome
        L{Distribution<qsim.Distribution>} of an ideal run, C{None} for a
        noisy one.
    """
    if noise is None or noise.is_ideal:
        dist = qsim.probabilities(qsim.run(circuit), circuit.readout)

        return dist, qsim.sample_shots(dist, shots, seed)

    histogram = channels.noisy_histogram(
        circuit, noise, shots, seed, timing=timing, logger=logger)

    return None, histogram


def parity_amplitude(phases, parities, n):
    """
    Amplitude of the parity oscillation at frequency C{n}: twice the magnitude
    of the discrete Fourier component C{n} of a scan on a uniform phase grid.
    """
    phases = np.asarray(phases, dtype=float)
    parities = np.asarray(parities, dtype=float)

    if len(phases) != len(parities) or not len(phases):
        raise atomtwin.DomainError('Phase and parity lengths differ')

    return float(2 * abs(np.mean(parities * np.exp(-1j * n * phases))))


class ExperimentResult(object):
    """
    The record of one harness run.

    @ivar command: The harness name.
    @ivar inputs: The arguments the run was made with.
    @ivar seed: Run seed.
    @ivar histogram: The reported L{ShotHistogram<qsim.ShotHistogram>}, if
        any.
    @ivar metrics: Scalar scores.
    @ivar duration_estimate: Estimated wall clock time of the circuit on the
        machine (s).
    @ivar tables: CSV sidecars, C{{name: (header, rows)}}.
    """

    def __init__(self, command, inputs, seed, histogram=None, metrics=None,
                 duration_estimate=None, tables=None):
        self.command = command
        self.inputs = dict(inputs)
        self.seed = seed
        self.histogram = histogram
        self.metrics = dict(metrics or {})
        self.duration_estimate = duration_estimate
        self.tables = dict(tables or {})

    def to_document(self, config_hash=None):
        """
        The JSON record of this run.
        """
        histogram = None

        if self.histogram is not None:
            histogram = dict(self.histogram.sorted_items())

        return {
            'command': self.command,
            'config_hash': config_hash,
            'seed': self.seed,
            'version': str(atomtwin.__version__),
            'inputs': self.inputs,
            'histogram': histogram,
            'metrics': self.metrics,
            'duration_estimate': self.duration_estimate,
        }

    def summary(self):
        """
        One line for the console.
        """
        parts = ['%s:' % (self.command,)]

        for key in sorted(self.metrics):
            value = self.metrics[key]

            if isinstance(value, float):
                if math.isfinite(value):
                    parts.append('%s=%.6g' % (key, value))
                else:
                    parts.append('%s=%s' % (key, value))
            elif isinstance(value, (int, str)):
                parts.append('%s=%s' % (key, value))

        return ' '.join(parts)

    def __repr__(self):
        return '<ExperimentResult %s seed=%r>' % (self.command, self.seed)
