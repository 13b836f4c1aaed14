# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Tests for L{atomtwin.util}
"""

import math
import unittest

import numpy as np

from atomtwin import util


class LineStreamTestCase(unittest.TestCase):
    """
    Tests for L{util.LineStream}
    """

    def test_create(self):
        self.assertEqual(len(util.LineStream()), 0)
        self.assertEqual(len(util.LineStream('a\nb\n')), 2)
        self.assertEqual(len(util.LineStream(['a', 'b', 'c'])), 3)
        self.assertEqual(util.LineStream(b'GR 0 1').read(), 'GR 0 1')

        self.assertRaises(TypeError, util.LineStream, 42)

    def test_read_past_end(self):
        s = util.LineStream('M')

        self.assertEqual(s.read(), 'M')
        self.assertTrue(s.at_eof())
        self.assertRaises(IOError, s.read)

    def test_peek(self):
        s = util.LineStream('a\nb')

        self.assertEqual(s.peek(), 'a')
        self.assertEqual(s.tell(), 0)
        s.read()
        self.assertEqual(s.peek(), 'b')
        s.read()
        self.assertEqual(s.peek(), None)

    def test_write_and_getvalue(self):
        s = util.LineStream()

        s.write('a')
        s.write('b')
        s.seek(0)
        s.write('c')

        self.assertEqual(s.getvalue(), 'c\nb\n')
        self.assertEqual(util.LineStream().getvalue(), '')

    def test_append(self):
        s = util.LineStream('a')

        s.append('b\nc')

        self.assertEqual(s.tell(), 0)
        self.assertEqual(len(s), 3)
        self.assertEqual(s.getvalue(), 'a\nb\nc\n')

    def test_seek_end(self):
        s = util.LineStream('a\nb\nc')

        s.seek(-1, 2)

        self.assertEqual(s.read(), 'c')


class RandomTestCase(unittest.TestCase):
    """
    Tests for L{util.make_rng} and L{util.spawn_rngs}
    """

    def test_reproducible(self):
        a = util.make_rng(7).random(5)
        b = util.make_rng(7).random(5)

        self.assertAllClose(a, b, atol=0)

    def test_spawned_streams_differ(self):
        a, b = util.spawn_rngs(7, 2)

        self.assertFalse(np.allclose(a.random(5), b.random(5)))

    def test_spawned_reproducible(self):
        first = [r.random() for r in util.spawn_rngs(3, 4)]
        second = [r.random() for r in util.spawn_rngs(3, 4)]

        self.assertEqual(first, second)


class AngleTestCase(unittest.TestCase):
    """
    Tests for L{util.wrap_angle}
    """

    def test_range(self):
        self.assertAlmostEqual(util.wrap_angle(0.0), 0.0)
        self.assertAlmostEqual(util.wrap_angle(math.pi), math.pi)
        self.assertAlmostEqual(util.wrap_angle(-math.pi), math.pi)
        self.assertAlmostEqual(util.wrap_angle(3 * math.pi / 2), -math.pi / 2)
        self.assertAlmostEqual(util.wrap_angle(4 * math.pi + 0.25), 0.25)


class OperatorDistanceTestCase(unittest.TestCase):
    """
    Tests for L{util.operator_distance}
    """

    def test_global_phase(self):
        u = np.diag([1, 1, 1, -1]).astype(complex)

        self.assertAlmostEqual(
            util.operator_distance(u, np.exp(0.7j) * u), 0.0, places=12)

    def test_stray_phase(self):
        u = np.eye(2, dtype=complex)
        v = np.diag([1, np.exp(0.01j)])

        self.assertGreater(util.operator_distance(u, v), 0.009)

    def test_shape_mismatch(self):
        self.assertRaises(ValueError, util.operator_distance, np.eye(2),
                          np.eye(4))


class BitsTestCase(unittest.TestCase):
    """
    Tests for L{util.bit_table} and L{util.format_bits}
    """

    def test_msb_first(self):
        table = util.bit_table(3)

        self.assertEqual(table.shape, (8, 3))
        self.assertEqual(list(table[1]), [0, 0, 1])
        self.assertEqual(list(table[4]), [1, 0, 0])

    def test_format(self):
        self.assertEqual(util.format_bits(5, 4), '0101')
        self.assertEqual(util.format_bits(0, 0), '')
