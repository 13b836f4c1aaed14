# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Tests for L{atomtwin.pulse}

@since: 0.1
"""

import math
import unittest

import numpy as np
from scipy import linalg

import atomtwin
from atomtwin import circuit, pulse, qsim


MHZ = 2 * math.pi * 1e6


class HamiltonianTestCase(unittest.TestCase):
    """
    Tests for L{pulse.hamiltonian}
    """

    def test_hermitian(self):
        h = pulse.hamiltonian(pulse.RydbergParams(1.0, 5.0, delta=-0.3))

        self.assertEqual(h.shape, (9, 9))
        self.assertAllClose(h, h.conj().T)

    def test_rr_shift(self):
        h = pulse.hamiltonian(pulse.RydbergParams(1.0, 5.0, delta=-0.3))

        self.assertAlmostEqual(h[8, 8].real, 5.0 + 0.6)

    def test_qubit_zero_dark(self):
        h = pulse.hamiltonian(pulse.RydbergParams(1.0, 5.0))

        self.assertAllClose(h[0], np.zeros(9))

    def test_params(self):
        self.assertRaises(atomtwin.DomainError, pulse.RydbergParams, -1.0, 1)
        self.assertRaises(atomtwin.DomainError, pulse.RydbergParams, 1.0, 1,
                          tau=0)
        self.assertRaises(atomtwin.DomainError, pulse.RydbergParams, 0.0, 1)

        p = pulse.RydbergParams(1.0, 2.0, delta=0.5)

        self.assertAlmostEqual(p.omega_prime, math.hypot(1.0, 0.5))
        self.assertEqual(p.replace(xi=1.0).xi, 1.0)
        self.assertEqual(p.replace(xi=1.0).delta, 0.5)


class PropagatorTestCase(unittest.TestCase):
    """
    Tests for L{pulse.pulse_propagator}
    """

    def test_single_atom_cycle(self):
        # no interaction: |01> does a full Rabi cycle and picks up a sign
        params = pulse.RydbergParams(1.0, 0.0, tau=2 * math.pi)
        u = pulse.pulse_propagator(params)

        self.assertAlmostEqual(u[1, 1], -1, places=6)
        self.assertAlmostEqual(u[0, 0], 1, places=12)

    def test_unitary(self):
        params = pulse.RydbergParams(1.0, 3.0, delta=-0.4)
        u = pulse.pulse_propagator(params, phase=0.7)

        self.assertAllClose(u.conj().T @ u, np.eye(9), atol=1e-8)

    def test_blockade(self):
        # deep blockade: |11> cycles through the symmetric single excitation
        params = pulse.RydbergParams(1.0, 200.0)
        u = pulse.pulse_propagator(params)

        self.assertAlmostEqual(params.tau, 2 * math.pi / math.sqrt(2))
        self.assertGreater(abs(u[4, 4]) ** 2, 0.99)

    def test_fixed_steps(self):
        params = pulse.RydbergParams(1.0, 3.0)

        self.assertAllClose(pulse.pulse_propagator(params, steps=4000),
                            pulse.pulse_propagator(params), atol=1e-6)

    def test_fourth_order(self):
        # resonant, no interaction: exact propagator is expm(-i tau H)
        params = pulse.RydbergParams(1.0, 0.0, tau=2 * math.pi)
        exact = linalg.expm(-1j * params.tau * pulse.hamiltonian(params))

        coarse = np.abs(
            pulse.pulse_propagator(params, steps=256) - exact).max()
        fine = np.abs(
            pulse.pulse_propagator(params, steps=512) - exact).max()

        self.assertGreater(coarse, 0)
        self.assertGreaterEqual(coarse / fine, 4.0)

    def test_coarse_steps(self):
        params = pulse.RydbergParams(1.0, 3.0)

        self.assertRaises(atomtwin.IntegratorError,
                          pulse.pulse_propagator, params, steps=1)

    def test_evolve(self):
        params = pulse.RydbergParams(1.0, 3.0)
        psi = np.zeros(9)
        psi[4] = 1

        out = pulse.evolve_pulse(psi, params)

        self.assertAlmostEqual(np.vdot(out, out).real, 1.0, places=8)
        self.assertRaises(atomtwin.SimulationError, pulse.evolve_pulse,
                          np.ones(4), params)


class BellTestTestCase(unittest.TestCase):
    """
    Tests for L{pulse.bell_test}
    """

    def test_ideal_cz(self):
        result = pulse.bell_test(qsim.CZ_MATRIX)

        self.assertAlmostEqual(result['P00'], 0.5)
        self.assertAlmostEqual(result['P11'], 0.5)
        self.assertAlmostEqual(result['C'], 1.0)
        self.assertAlmostEqual(result['F'], 1.0)

    def test_identity(self):
        # the pair is left in |+0>: half the |00> population, no parity
        result = pulse.bell_test(np.eye(4))

        self.assertAlmostEqual(result['P00'], 0.5)
        self.assertAlmostEqual(result['P11'], 0.0)
        self.assertAlmostEqual(result['C'], 0.0)
        self.assertAlmostEqual(result['F'], 0.25)

    def test_cancelling_pulses(self):
        # pulses that undo each other around one C_Z cannot make a Bell
        # pair: the C_Z leaves a quarter of the population in |01>
        sites = (circuit.SiteCoord(0, 0), circuit.SiteCoord(0, 1))
        before = circuit.GlobalRot(math.pi / 2, math.pi / 2)
        after = circuit.GlobalRot(math.pi / 2, -math.pi / 2)

        bare = circuit.NativeCircuit(sites, [before, after])
        entangled = circuit.NativeCircuit(
            sites, [before, circuit.Cz(sites[0], sites[1]), after])

        self.assertAlmostEqual(
            qsim.probabilities(qsim.run(bare))['00'], 1.0)

        dist = qsim.probabilities(qsim.run(entangled))

        for bits in ('00', '01', '10', '11'):
            self.assertAlmostEqual(dist[bits], 0.25)

    def test_bad_input(self):
        self.assertRaises(ValueError, pulse.bell_test, np.eye(2))
        self.assertRaises(ValueError, pulse.bell_test, qsim.CZ_MATRIX, 4)


class TuneTestCase(unittest.TestCase):
    """
    Tests for L{pulse.tune_cz}
    """

    @classmethod
    def setUpClass(cls):
        cls.gate = pulse.tune_cz(1.7 * MHZ, 3 * MHZ)

    def test_detuning(self):
        self.assertAlmostEqual(
            self.gate.pulse.delta / (1.7 * MHZ), -0.250, delta=0.005)

    def test_phase_condition(self):
        phases = self.gate.phases

        self.assertLess(abs(phases.phase_error), pulse.PHASE_TOLERANCE)
        self.assertGreaterEqual(phases.min_return, pulse.RETURN_FLOOR)

    def test_phases_of_pulse(self):
        phases = pulse.cz_phases(self.gate.pulse)

        self.assertLess(abs(phases.phase_error), pulse.PHASE_TOLERANCE)
        self.assertAlmostEqual(phases.return11,
                               self.gate.phases.return11, places=6)

    def test_compensation(self):
        self.assertEqual(self.gate.comp_phase_a, -self.gate.phases.phi01)
        self.assertEqual(self.gate.comp_phase_b, -self.gate.phases.phi10)

    def test_gate(self):
        block, leakage, distance = pulse.pulse_gate_unitary(self.gate)

        self.assertEqual(block.shape, (4, 4))
        self.assertLess(leakage, 0.01)
        self.assertLess(distance, 0.2)
        self.assertGreaterEqual(pulse.bell_test(self.gate)['F'], 0.995)

    def test_blockade_limit(self):
        gate = pulse.tune_cz(1.7 * MHZ, 1030 * MHZ)

        self.assertAlmostEqual(
            gate.pulse.delta / (1.7 * MHZ), -0.377, delta=0.008)

    def test_domain(self):
        self.assertRaises(atomtwin.DomainError, pulse.tune_cz, 0, 1)

    def test_no_root(self):
        with self.assertRaises(atomtwin.TuningError) as cm:
            pulse.tune_cz(1.0, 3.0, deltas=[-0.01, 0.0])

        self.assertIsInstance(cm.exception.best, pulse.TunedGate)


class ScanTestCase(unittest.TestCase):
    """
    Tests for L{pulse.scan_detuning}
    """

    def test_rows(self):
        rows = pulse.scan_detuning(1.0, 3.0, deltas=[-0.3, -0.2])

        self.assertEqual(len(rows), 2)
        self.assertAlmostEqual(rows[0]['delta_over_omega'], -0.3)

        for row in rows:
            self.assertTrue(0 <= row['return11'] <= 1 + 1e-9)
            self.assertTrue(0 <= row['f_bell'] <= 1 + 1e-9)
