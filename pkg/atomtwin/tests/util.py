# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Test utilities: dense matrix oracles and random program generators.

@since: 0.1
"""

import itertools
import math

import numpy as np

from atomtwin import compiler, qsim, util


#: A row of the array, every pair of sites may take a C_Z.
ROW_LAYOUT = compiler.Layout([(0, c) for c in range(6)], name='row')


def logical_unitary(circuit):
    """
    The unitary of a compiled circuit on logical qubits: the register
    unitary with its outputs reordered by the readout permutation.
    """
    u = qsim.circuit_unitary(circuit)
    n = circuit.n_qubits
    dim = 2 ** n
    t = u.reshape((2,) * n + (dim,))
    t = np.transpose(t, list(circuit.readout) + [n])

    return t.reshape(dim, dim)


def same_up_to_phase(u, v):
    """
    The operator distance of L{util.operator_distance}.
    """
    return util.operator_distance(u, v)


def random_unitary(rng):
    """
    A Haar random 2x2 unitary.
    """
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    d = np.diag(r)

    return q * (d / np.abs(d))


def random_program(rng, n_qubits, depth):
    """
    A random abstract program over every gate the compiler lowers.
    """
    program = []

    def angle():
        return float(rng.uniform(-math.pi, math.pi))

    def pair():
        a, b = rng.choice(n_qubits, size=2, replace=False)

        return int(a), int(b)

    for _ in range(depth):
        q = int(rng.integers(n_qubits))
        kind = int(rng.integers(12 if n_qubits > 1 else 6))

        if kind == 0:
            program.append(compiler.H(q))
        elif kind == 1:
            program.append(compiler.X(q))
        elif kind == 2:
            program.append(compiler.Rz(q, angle()))
        elif kind == 3:
            program.append(compiler.Rphi(q, angle(), angle()))
        elif kind == 4:
            program.append(compiler.Ry(q, angle()))
        elif kind == 5:
            program.append(compiler.GlobalRphi(angle(), angle()))
        elif kind == 6:
            program.append(compiler.CNOT(*pair()))
        elif kind == 7:
            program.append(compiler.CZ(*pair()))
        elif kind == 8:
            program.append(compiler.ZZ(*(pair() + (angle(),))))
        elif kind == 9:
            program.append(compiler.CPhase(*(pair() + (angle(),))))
        elif kind == 10:
            c, t = pair()
            program.append(compiler.ControlledU(c, t, random_unitary(rng)))
        else:
            size = int(rng.integers(2, n_qubits + 1))
            register = rng.choice(n_qubits, size=size, replace=False)
            program.append(compiler.QFTInv([int(r) for r in register]))

    return program


def brute_force_assignment(cost):
    """
    The minimum total cost of assigning every column of C{cost} a distinct
    row, by enumeration.
    """
    cost = np.asarray(cost, dtype=float)
    n, m = cost.shape
    cols = np.arange(m)

    return min(
        float(cost[list(rows), cols].sum())
        for rows in itertools.permutations(range(n), m))
