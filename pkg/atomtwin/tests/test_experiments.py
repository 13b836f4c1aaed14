# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Tests for L{atomtwin.experiments}

@since: 0.1
"""

import math
import unittest

import numpy as np

import atomtwin
from atomtwin import compiler, experiments, noise, qsim
from atomtwin.experiments import ghz, qaoa, qpe


class SharedTestCase(unittest.TestCase):
    """
    Tests for the shared harness plumbing.
    """

    def test_layouts(self):
        layout = experiments.get_layout('t4')

        self.assertEqual(len(layout), 4)
        self.assertEqual(layout.name, 't4')
        self.assertRaises(atomtwin.CompileError, experiments.get_layout,
                          'nope')

    def test_config_layouts(self):
        mine = compiler.Layout([(1, 1), (1, 2)], name='edge2')

        self.assertIs(experiments.get_layout('edge2', {'edge2': mine}), mine)
        self.assertEqual(
            experiments.get_layout('x', {'x': [(0, 0)]}).sites, ((0, 0),))

    def test_child_seeds(self):
        a = experiments.child_seeds(5, 3)

        self.assertEqual(a, experiments.child_seeds(5, 3))
        self.assertEqual(len(set(a)), 3)

    def test_parity_amplitude(self):
        phases = 2 * math.pi * np.arange(17) / 17

        self.assertAlmostEqual(
            experiments.parity_amplitude(phases, 0.8 * np.cos(3 * phases), 3),
            0.8)
        self.assertAlmostEqual(
            experiments.parity_amplitude(phases, np.cos(2 * phases), 3), 0.0)
        self.assertRaises(atomtwin.DomainError,
                          experiments.parity_amplitude, [0, 1], [1], 1)

    def test_simulate_ideal(self):
        circuit = compiler.compile(ghz.ghz_program(2) + [compiler.Measure()],
                                   experiments.get_layout('edge2'))
        dist, histogram = experiments.simulate(circuit, 100, 0)

        self.assertAlmostEqual(dist['00'], 0.5)
        self.assertEqual(histogram.shots, 100)

    def test_simulate_noisy(self):
        circuit = compiler.compile(ghz.ghz_program(2) + [compiler.Measure()],
                                   experiments.get_layout('edge2'))
        dist, histogram = experiments.simulate(circuit, 100, 0,
                                               noise.NoiseParams())

        self.assertIsNone(dist)
        self.assertEqual(histogram.shots, 100)

    def test_document(self):
        result = experiments.ExperimentResult(
            'ghz', {'n': 2}, 7, qsim.ShotHistogram({'11': 2, '00': 1}),
            {'fidelity': 0.5, 'n': 2, 'nan': float('nan')}, 1e-5)

        doc = result.to_document('abc')

        self.assertEqual(doc['command'], 'ghz')
        self.assertEqual(doc['config_hash'], 'abc')
        self.assertEqual(doc['histogram'], {'00': 1, '11': 2})
        self.assertEqual(doc['version'], str(atomtwin.__version__))
        self.assertEqual(result.summary(), 'ghz: fidelity=0.5 n=2 nan=nan')


class GhzTestCase(unittest.TestCase):
    """
    Tests for L{atomtwin.experiments.ghz}
    """

    def test_program(self):
        self.assertEqual(ghz.ghz_program(1), [compiler.H(0)])
        self.assertEqual(len(ghz.ghz_program(6)), 6)
        self.assertRaises(atomtwin.DomainError, ghz.ghz_program, 7)

    def test_ideal(self):
        for n in (2, 4, 6):
            result, scan, circuit, histogram = ghz.ghz_experiment(
                n, 500, seed=n)

            self.assertAlmostEqual(result.fidelity, 1.0, places=9)
            self.assertAlmostEqual(result.c_n, 1.0, places=9)
            self.assertEqual(set(histogram.counts),
                             set(['0' * n, '1' * n]))
            self.assertEqual(len(scan.phases), 4 * n + 1)
            self.assertGreater(scan.power_fraction(), 0.99)
            self.assertEqual(circuit.n_qubits, n)

    def test_parity_frequency(self):
        _, scan, _, _ = ghz.ghz_experiment(3, 100, scan_points=24)
        spectrum = scan.spectrum()

        self.assertEqual(int(np.argmax(spectrum[1:])) + 1, 3)
        self.assertEqual(len(scan.rows()), 24)

    def test_noisy(self):
        result = ghz.ghz_experiment(2, 400, noise=noise.NoiseParams(),
                                    seed=1)[0]

        self.assertLess(result.fidelity, 0.99)
        self.assertGreater(result.fidelity, 0.5)

    def test_noisy_pair(self):
        # calibrated noise reproduces the measured Bell pair fidelity
        result = ghz.ghz_experiment(2, 2000, noise=noise.NoiseParams(),
                                    seed=0)[0]

        self.assertAlmostEqual(result.fidelity, 0.927, delta=0.02)

    def test_noisy_decay(self):
        points = ghz.ghz_decay_series(range(2, 7), noise.NoiseParams(),
                                      seed=0)
        fidelities = [f for _, f in points]

        self.assertEqual([n for n, _ in points], [2, 3, 4, 5, 6])

        for bigger, smaller in zip(fidelities, fidelities[1:]):
            self.assertGreater(bigger, smaller)

        self.assertGreater(ghz.fit_ghz_decay(points)[1], 0)

    def test_reproducible(self):
        params = noise.NoiseParams()
        a = ghz.ghz_experiment(3, 200, noise=params, seed=4)
        b = ghz.ghz_experiment(3, 200, noise=params, seed=4)

        self.assertEqual(a[0].as_dict(), b[0].as_dict())
        self.assertEqual(a[3], b[3])

    def test_bad_arguments(self):
        self.assertRaises(atomtwin.DomainError, ghz.ghz_experiment, 1, 10)
        self.assertRaises(atomtwin.DomainError, ghz.ghz_experiment, 3, 10,
                          scan_points=12)

    def test_connectivity(self):
        layout = compiler.Layout([(0, 0), (1, 1)])

        self.assertRaises(atomtwin.ConnectivityError, ghz.ghz_experiment, 2,
                          10, layout=layout)

    def test_result(self):
        result = ghz.GhzResult(2, 0.6, 0.5, 1.0)

        self.assertEqual(result.fidelity, 1.0)
        self.assertEqual(ghz.GhzResult(2, 0.4, 0.4, -0.2).c_n, 0.2)

    def test_scan_validation(self):
        self.assertRaises(atomtwin.DomainError, ghz.ParityScan, [0, 1], [2, 0],
                          1)


class DecayFitTestCase(unittest.TestCase):
    """
    Tests for L{ghz.fit_ghz_decay}
    """

    def _points(self, a, b, c):
        return [(n, a + b / (n - c)) for n in range(2, 7)]

    def test_recover(self):
        for params in ((0.192, 2.21, -1.014), (0.269, 1.96, -0.872)):
            fit = ghz.fit_ghz_decay(self._points(*params))

            self.assertAllClose(fit, params, atol=1e-4)

    def test_residuals(self):
        fit = ghz.fit_ghz_decay(self._points(0.192, 2.21, -1.014),
                                full_output=True)

        self.assertEqual(len(fit), 4)
        self.assertLess(np.abs(fit[3]).max(), 1e-6)

    def test_noisy_points(self):
        points = self._points(0.192, 2.21, -1.014)
        points = [(n, f + 0.002 * (-1) ** n) for n, f in points]

        a, b, c = ghz.fit_ghz_decay(points)

        self.assertAlmostEqual(a + b / (4 - c), dict(points)[4], delta=0.01)

    def test_too_few(self):
        self.assertRaises(atomtwin.DomainError, ghz.fit_ghz_decay,
                          [(2, 0.9), (3, 0.8), (4, 0.7)])

    def test_series(self):
        points = ghz.ghz_decay_series([2, 3], shots=100, seed=1)

        self.assertEqual([n for n, _ in points], [2, 3])

        for _, fidelity in points:
            self.assertAlmostEqual(fidelity, 1.0, places=9)


class CalibrationTestCase(unittest.TestCase):
    """
    Tests for L{ghz.calibrate_cz_depolarizing}
    """

    def test_unreachable(self):
        self.assertRaises(atomtwin.DomainError, ghz.calibrate_cz_depolarizing,
                          1.5, noise.NoiseParams(), shots=100,
                          grid=[0.0, 0.1])

    def test_in_range(self):
        params = noise.NoiseParams.ideal(trajectories=50)
        grid = [0.0, 0.2, 0.4]
        low = ghz.ghz_experiment(
            2, 400, noise=params.replace(cz_depolarizing=0.4))[0].fidelity

        p = ghz.calibrate_cz_depolarizing(low, params, shots=400, grid=grid)

        self.assertAlmostEqual(p, 0.4, delta=1e-9)


class QpeTestCase(unittest.TestCase):
    """
    Tests for L{atomtwin.experiments.qpe}
    """

    def test_z_powers(self):
        for k, m, expected in ((0, 2, '00'), (1, 2, '10'), (0.5, 2, '01'),
                               (1.5, 2, '11'), (0.5, 3, '010'),
                               (1.5, 3, '110')):
            result = qpe.qpe_run(k, m, 200, seed=3)

            self.assertEqual(result.modal, expected)
            self.assertAlmostEqual(result.probability(expected), 1.0,
                                   places=9)

    def test_dict_spec(self):
        result = qpe.qpe_run({'z_power': 1}, 2, 100)

        self.assertEqual(result.modal, '10')
        self.assertEqual(result.phase, 0.5)

    def test_noisy_floor(self):
        result = qpe.qpe_run(1, 2, 2000, noise=noise.NoiseParams(), seed=5)

        self.assertIsNone(result.distribution)
        self.assertEqual(result.modal, '10')
        self.assertGreaterEqual(result.probability('10'), 0.60)
        self.assertLess(result.probability('10'), 1.0)

    def test_noisy_floor_all_powers(self):
        params = noise.NoiseParams()

        for k, expected in ((0, '00'), (0.5, '01'), (1, '10'),
                            (1.5, '11')):
            result = qpe.qpe_run(k, 2, 2000, noise=params, seed=11)

            self.assertEqual(result.modal, expected)
            self.assertGreaterEqual(result.probability(expected), 0.60)

    def test_bits(self):
        self.assertRaises(atomtwin.DomainError, qpe.qpe_run, 1, 4, 10)
        self.assertRaises(atomtwin.DomainError, qpe.qpe_program,
                          np.eye(2), 0)

    def test_program(self):
        program = qpe.qpe_program(qpe.z_power_unitary(1), 2)

        self.assertEqual(program[0], compiler.X(2))
        self.assertIsInstance(program[-2], compiler.QFTInv)
        self.assertEqual(program[-2].qubits, (0, 1))


class H2TestCase(unittest.TestCase):
    """
    Tests for the H2 energy problem.
    """

    problem = qpe.H2Problem()

    def test_t0(self):
        self.assertAlmostEqual(self.problem.t0, math.pi / 0.969256)
        self.assertRaises(atomtwin.DomainError, qpe.H2Problem, a1=0, a2=0)

    def test_phases(self):
        low, high = qpe.h2_phases(self.problem)

        self.assertAlmostEqual(low, 0.3718, places=4)
        self.assertAlmostEqual(high, 0.6282, places=4)

    def test_unitary(self):
        u = self.problem.trotter_unitary()

        self.assertAllClose(u @ u.conj().T, np.eye(2))

    def test_energy(self):
        self.assertAlmostEqual(qpe.h2_energy('101', self.problem), -1.0557,
                               places=4)
        self.assertAlmostEqual(qpe.h2_energy('000', self.problem),
                               self.problem.a0)
        self.assertAlmostEqual(qpe.h2_energy('011', self.problem), 0.398,
                               places=3)
        self.assertRaises(atomtwin.DomainError, qpe.h2_energy, '',
                          self.problem)
        self.assertRaises(atomtwin.DomainError, qpe.h2_energy, '1x1',
                          self.problem)

    def test_ideal_qpe(self):
        result = qpe.qpe_run(self.problem, 3, 1000, seed=1)

        self.assertEqual(result.modal, '101')
        self.assertAlmostEqual(result.probability('101'), 0.80, delta=0.03)
        self.assertAlmostEqual(result.probability('011'), 0.17, delta=0.03)
        self.assertGreaterEqual(
            result.probability('101') + result.probability('011'), 0.93)

    def test_h2_dict(self):
        result = qpe.qpe_run(self.problem.as_dict(), 3, 100, seed=1)

        self.assertEqual(result.modal, '101')


class MaxCutTestCase(unittest.TestCase):
    """
    Tests for L{qaoa.maxcut_oracle} and L{qaoa.GraphSpec}
    """

    def test_oracle(self):
        self.assertEqual(qaoa.maxcut_oracle(qaoa.GRAPHS['line3']),
                         {'s_max': 2, 'partitions': ['010', '101']})
        self.assertEqual(qaoa.maxcut_oracle(qaoa.GRAPHS['edge2'])['s_max'], 1)
        self.assertEqual(qaoa.maxcut_oracle(qaoa.GRAPHS['t4']),
                         {'s_max': 3, 'partitions': ['0100', '1011']})

    def test_cap(self):
        self.assertRaises(atomtwin.DomainError, qaoa.maxcut_oracle,
                          qaoa.GraphSpec(21, []))

    def test_graph_validation(self):
        self.assertRaises(atomtwin.DomainError, qaoa.GraphSpec, 2, [(0, 0)])
        self.assertRaises(atomtwin.DomainError, qaoa.GraphSpec, 2, [(0, 2)])
        self.assertRaises(atomtwin.DomainError, qaoa.GraphSpec, 2,
                          [(0, 1), (1, 0)])
        self.assertRaises(atomtwin.DomainError, qaoa.GraphSpec, 0, [])

    def test_expected_cut(self):
        line3 = qaoa.GRAPHS['line3']

        # no layers leaves the uniform superposition, half the edges cut
        self.assertAlmostEqual(qaoa.expected_cut(line3, [], []), 1.0)
        self.assertAlmostEqual(
            qaoa.expected_cut(line3, [1.25], [1.67]) / 2,
            qaoa.approximation_ratio(line3, [1.25], [1.67]))

    def test_histogram_ratio(self):
        histogram = qsim.ShotHistogram({'010': 3, '000': 1})

        self.assertAlmostEqual(
            qaoa.histogram_ratio(qaoa.GRAPHS['line3'], histogram), 0.75)

    def test_no_edges(self):
        graph = qaoa.GraphSpec(2, [])

        self.assertEqual(qaoa.approximation_ratio(graph, [0.1], [0.2]), 1.0)


class QaoaTestCase(unittest.TestCase):
    """
    Tests for L{atomtwin.experiments.qaoa}
    """

    def test_reference_angles(self):
        t4 = qaoa.GRAPHS['t4']
        line3 = qaoa.GRAPHS['line3']

        self.assertAlmostEqual(
            qaoa.approximation_ratio(t4, [0.750], [0.696]), 0.772,
            delta=0.005)
        self.assertAlmostEqual(
            qaoa.approximation_ratio(line3, [1.25], [1.67]), 0.825,
            delta=0.005)

    def test_compiled_matches_analytic(self):
        result = qaoa.qaoa_run('t4', [0.750], [0.696], 500, seed=2)

        self.assertAlmostEqual(result.ratio, result.expected_ratio,
                               places=9)
        self.assertAlmostEqual(result.sampled_ratio, result.ratio,
                               delta=0.05)

    def test_optimise(self):
        for name, p, expected in (('t4', 2, 0.934), ('t4', 3, 1.0),
                                  ('line3', 2, 1.0)):
            betas, gammas, ratio = qaoa.qaoa_optimize(name, p, seed=1)

            self.assertAlmostEqual(ratio, expected, delta=0.01)
            self.assertEqual(len(betas), p)
            self.assertTrue(all(0 <= b < qaoa.BETA_PERIOD for b in betas))
            self.assertTrue(all(0 <= g < qaoa.GAMMA_PERIOD for g in gammas))
            self.assertAlmostEqual(
                qaoa.approximation_ratio(qaoa.GRAPHS[name], betas, gammas),
                ratio)

    def test_noisy_below_ideal(self):
        ideal = qaoa.qaoa_run('line3', [1.25], [1.67], 2000, seed=3)
        noisy = qaoa.qaoa_run('line3', [1.25], [1.67], 2000,
                              noise=noise.NoiseParams(), seed=3)

        self.assertLess(noisy.ratio, ideal.ratio)

    def test_angles(self):
        self.assertRaises(atomtwin.DomainError, qaoa.qaoa_program,
                          qaoa.GRAPHS['t4'], [0.1], [0.1, 0.2])
        self.assertRaises(atomtwin.DomainError, qaoa.qaoa_optimize, 't4', 0)

    def test_program(self):
        program = qaoa.qaoa_program(qaoa.GRAPHS['line3'], [0.5], [0.25])

        self.assertEqual(program[0], compiler.GlobalRphi(math.pi / 2,
                                                         math.pi / 2))
        self.assertEqual(program[1], compiler.ZZ(0, 1, math.pi * 0.25))
        self.assertEqual(program[-2], compiler.GlobalRphi(0.0, math.pi / 2))
        self.assertIsInstance(program[-1], compiler.Measure)
