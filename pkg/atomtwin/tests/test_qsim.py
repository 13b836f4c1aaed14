# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Tests for L{atomtwin.qsim}

@since: 0.1
"""

import math
import unittest

import numpy as np

import atomtwin
from atomtwin import qsim
from atomtwin.circuit import (
    GlobalRot, LocalRz, Cz, MeasureAll, NativeCircuit)


def bell_circuit():
    """
    A Bell pair from global pulses: C_Z on C{|++>}, then an echoed Y(-pi/2)
    that only the target sees.
    """
    return NativeCircuit([(0, 0), (0, 1)], [
        GlobalRot(math.pi / 2, math.pi / 2),
        Cz((0, 0), (0, 1)),
        GlobalRot(math.pi / 2, -math.pi / 4),
        LocalRz((0, 1), math.pi),
        GlobalRot(math.pi / 2, math.pi / 4),
        LocalRz((0, 1), -math.pi),
        MeasureAll(),
    ])


class InitStateTestCase(unittest.TestCase):
    """
    Tests for L{qsim.init_state}
    """

    def test_default(self):
        state = qsim.init_state(3)

        self.assertEqual(state.n_qubits, 3)
        self.assertEqual(state['000'], 1)
        self.assertAlmostEqual(state.norm(), 1.0)

    def test_label(self):
        self.assertEqual(qsim.init_state(2, '10')['10'], 1)
        self.assertEqual(qsim.init_state(2, 'ones')['11'], 1)

    def test_bad_size(self):
        self.assertRaises(atomtwin.SimulationError, qsim.init_state, 0)
        self.assertRaises(atomtwin.SimulationError, qsim.init_state,
                          atomtwin.MAX_QUBITS + 1)

    def test_bad_label(self):
        self.assertRaises(atomtwin.SimulationError, qsim.init_state, 2, '1')
        self.assertRaises(atomtwin.SimulationError, qsim.init_state, 2, '1x')

    def test_vector_length(self):
        self.assertRaises(atomtwin.SimulationError, qsim.StateVector,
                          np.ones(3))


class NativeOpTestCase(unittest.TestCase):
    """
    Tests for L{qsim.apply_native}
    """

    def test_global_pi_flips_all(self):
        state = qsim.apply_native(qsim.init_state(3), GlobalRot(0, math.pi))

        self.assertAlmostEqual(abs(state['111']), 1.0)
        self.assertAlmostEqual(state['111'], (-1j) ** 3)

    def test_global_matrix(self):
        m = qsim.rotation_matrix(0.3, 1.1)

        self.assertAllClose(m @ m.conj().T, np.eye(2))
        self.assertAllClose(qsim.rotation_matrix(0, math.pi),
                            [[0, -1j], [-1j, 0]])

    def test_rz_phases(self):
        state = qsim.init_state(2, '01', sites=[(0, 0), (0, 1)])
        state = qsim.apply_native(state, LocalRz((0, 1), 0.5))

        self.assertAlmostEqual(state['01'], np.exp(0.25j))

    def test_cz_sign(self):
        state = qsim.init_state(2, '11')
        state = qsim.apply_native(state, Cz((0, 0), (0, 1)))

        self.assertAlmostEqual(state['11'], -1)

    def test_unknown_site(self):
        state = qsim.init_state(2)

        self.assertRaises(atomtwin.SimulationError, qsim.apply_native, state,
                          LocalRz((4, 4), 1.0))

    def test_unknown_op(self):
        self.assertRaises(atomtwin.SimulationError, qsim.apply_native,
                          qsim.init_state(1), 'GR 0 1')

    def test_pure(self):
        state = qsim.init_state(1)

        qsim.apply_native(state, GlobalRot(0, 1.0))

        self.assertEqual(state['0'], 1)

    def test_norm_preserved(self):
        rng = np.random.default_rng(4)
        sites = [(0, c) for c in range(4)]
        circuit = NativeCircuit(sites)

        for _ in range(40):
            kind = rng.integers(3)

            if kind == 0:
                circuit.append(GlobalRot(*rng.uniform(-3, 3, 2)))
            elif kind == 1:
                circuit.append(LocalRz(sites[rng.integers(4)],
                                       rng.uniform(-3, 3)))
            else:
                a, b = rng.choice(4, 2, replace=False)
                circuit.append(Cz(sites[a], sites[b]))

        self.assertAlmostEqual(qsim.run(circuit).norm(), 1.0, places=10)


class ApplyMatrixTestCase(unittest.TestCase):
    """
    Tests for L{qsim.apply_matrix}
    """

    def test_two_qubit_order(self):
        cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1],
                         [0, 0, 1, 0]])
        state = qsim.init_state(3, '001')

        # control qubit 2, target qubit 0
        state = qsim.apply_matrix(state, cnot, [2, 0])

        self.assertAlmostEqual(state['101'], 1)

    def test_errors(self):
        state = qsim.init_state(2)

        self.assertRaises(atomtwin.SimulationError, qsim.apply_matrix, state,
                          np.eye(2), [2])
        self.assertRaises(atomtwin.SimulationError, qsim.apply_matrix, state,
                          np.eye(4), [0, 0])
        self.assertRaises(atomtwin.SimulationError, qsim.apply_matrix, state,
                          np.eye(2), [0, 1])


class RunTestCase(unittest.TestCase):
    """
    Tests for L{qsim.run} and L{qsim.circuit_unitary}
    """

    def test_bell(self):
        dist = qsim.probabilities(qsim.run(bell_circuit()))

        self.assertAllClose(dist.probs, [0.5, 0, 0, 0.5])

    def test_unitary(self):
        u = qsim.circuit_unitary(bell_circuit())

        self.assertAllClose(u @ u.conj().T, np.eye(4))

    def test_gr_then_inverse(self):
        circuit = NativeCircuit([(0, 0), (1, 0)], [
            GlobalRot(0.4, 1.3), GlobalRot(0.4, 1.3).inverse()])

        self.assertAllClose(qsim.circuit_unitary(circuit), np.eye(4))

    def test_readout_permutation(self):
        circuit = NativeCircuit([(0, 0), (0, 1)], [LocalRz((0, 0), 0)],
                                readout=[1, 0])
        state = qsim.run(circuit, initial_label='10')

        dist = qsim.probabilities(state, circuit.readout)

        self.assertAlmostEqual(dist['01'], 1.0)


class DistributionTestCase(unittest.TestCase):
    """
    Tests for L{qsim.Distribution}
    """

    def test_validation(self):
        self.assertRaises(atomtwin.SimulationError, qsim.Distribution,
                          [0.5, 0.6])
        self.assertRaises(atomtwin.SimulationError, qsim.Distribution,
                          [1.5, -0.5])
        self.assertRaises(atomtwin.SimulationError, qsim.Distribution,
                          [0.5, 0.25, 0.25])

    def test_coerce(self):
        dist = qsim.Distribution.coerce({'00': 0.5, '11': 0.5})

        self.assertEqual(dist.n_qubits, 2)
        self.assertEqual(dist['11'], 0.5)
        self.assertEqual(dist.as_dict(), {'00': 0.5, '11': 0.5})

        self.assertRaises(atomtwin.SimulationError,
                          qsim.Distribution.coerce, {})
        self.assertRaises(atomtwin.SimulationError,
                          qsim.Distribution.coerce, {'0': 0.5, '11': 0.5})

    def test_marginal(self):
        dist = qsim.Distribution.coerce({'011': 0.75, '100': 0.25})

        self.assertEqual(dist.marginal([2, 0]).as_dict(),
                         {'10': 0.75, '01': 0.25})

    def test_tvd(self):
        a = qsim.Distribution([1, 0])

        self.assertEqual(a.tvd({'0': 0.5, '1': 0.5}), 0.5)
        self.assertEqual(a.tvd(a), 0.0)

    def test_expectation(self):
        dist = qsim.Distribution([0.25, 0.75])

        self.assertAlmostEqual(dist.expectation([1, -1]), -0.5)


class SamplingTestCase(unittest.TestCase):
    """
    Tests for L{qsim.sample_shots} and L{qsim.ShotHistogram}
    """

    dist = {'00': 0.5, '11': 0.5}

    def test_reproducible(self):
        a = qsim.sample_shots(self.dist, 1000, seed=11)
        b = qsim.sample_shots(self.dist, 1000, seed=11)

        self.assertEqual(a, b)
        self.assertEqual(a.seed, 11)
        self.assertEqual(a.shots, 1000)

    def test_batches_reproducible(self):
        a = qsim.sample_shots(self.dist, 1000, seed=5, batches=4)
        b = qsim.sample_shots(self.dist, 1000, seed=5, batches=4)

        self.assertEqual(a, b)

    def test_support(self):
        h = qsim.sample_shots(self.dist, 500, seed=2)

        self.assertEqual(set(h.counts) - set(['00', '11']), set())
        self.assertEqual(h['01'], 0)
        self.assertLess(abs(h['00'] - 250), 60)

    def test_bad_shots(self):
        self.assertRaises(atomtwin.SimulationError, qsim.sample_shots,
                          self.dist, 0, 1)

    def test_histogram(self):
        h = qsim.ShotHistogram({'01': 3, '10': 3, '11': 1, '00': 0})

        self.assertEqual(h.shots, 7)
        self.assertEqual(h.n_qubits, 2)
        self.assertEqual(h.most_common(), '01')
        self.assertEqual(h.sorted_items(), [('01', 3), ('10', 3), ('11', 1)])
        self.assertEqual(h.marginal([1]).counts, {'1': 4, '0': 3})
        self.assertAlmostEqual(h.probabilities()['11'], 1 / 7.0)

        self.assertRaises(atomtwin.SimulationError, qsim.ShotHistogram,
                          {'0': 1}, 2)

    def test_merge(self):
        h = qsim.ShotHistogram({'0': 2}).merge(qsim.ShotHistogram({'0': 1,
                                                                   '1': 1}))

        self.assertEqual(h.counts, {'0': 3, '1': 1})
        self.assertEqual(h.shots, 4)


class ParityTestCase(unittest.TestCase):
    """
    Tests for L{qsim.parity}
    """

    def test_parity(self):
        self.assertEqual(qsim.parity('0000'), 1)
        self.assertEqual(qsim.parity('0100'), -1)
        self.assertEqual(qsim.parity('1111'), 1)
        self.assertRaises(atomtwin.SimulationError, qsim.parity, '')

    def test_vector(self):
        self.assertEqual(list(qsim.parity_vector(2)), [1, -1, -1, 1])
        self.assertEqual(qsim.parity_vector(3)[7], -1)
