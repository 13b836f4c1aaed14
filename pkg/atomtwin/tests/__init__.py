# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Unit tests.

@since: 0.1
"""

import os.path
import unittest

import numpy as np


if not hasattr(unittest.TestCase, 'assertAllClose'):
    def assertAllClose(self, first, second, atol=1e-9, msg=None):
        """
        Fail the test unless C{first} and C{second} agree elementwise within
        C{atol}.
        """
        first = np.asarray(first)
        second = np.asarray(second)

        if first.shape != second.shape or not np.allclose(
                first, second, rtol=0, atol=atol):
            raise AssertionError(msg or '%r != %r within %g' % (
                first, second, atol))

    unittest.TestCase.assertAllClose = assertAllClose


def get_suite():
    """
    Discover the entire test suite.
    """
    loader = unittest.TestLoader()
    here = os.path.dirname(os.path.abspath(__file__))
    tld = os.path.dirname(os.path.dirname(here))

    return loader.discover(os.path.dirname(here), top_level_dir=tld)


def main():
    """
    Run all of the tests when run as a module with -m.
    """
    runner = unittest.TextTestRunner()
    runner.run(get_suite())


if __name__ == '__main__':
    main()
