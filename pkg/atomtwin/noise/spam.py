# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
State preparation and measurement (SPAM) correction.

@since: 0.1
"""

import itertools
import math

import numpy as np

import atomtwin
from atomtwin import pulse, qsim
from atomtwin.circuit import GlobalRot, Cz


__all__ = [
    'spam_correct',
    'spam_process_bounds',
    'bell_fidelity_with_spam',
]

#: Optical pumping error range used for the process bounds.
PUMPING_RANGE = (0.0, 0.005)

# per atom: present through readout, lost at readout, never pumped
_FINE, _LOST, _ABSENT = range(3)


def _force_dark(probs, n, qubits):
    """
    Moves the probability of every outcome onto bit C{1} for C{qubits}.
    """
    t = probs.reshape((2,) * n)

    for q in qubits:
        summed = t.sum(axis=q, keepdims=True)
        t = np.concatenate([np.zeros_like(summed), summed], axis=q)

    return t.reshape(-1)


def bell_fidelity_with_spam(loss, pumping, parity_points=32):
    """
    Bell state fidelity of an ideal C{C_Z} seen through SPAM.

    Every atom is independently never pumped (absent from the circuit, the
    C{C_Z} acts as the identity), lost at readout, or fine; absent and lost
    atoms read dark. The mixture is enumerated exactly, the fidelity is
    C{(P00 + P11 + C)/2} from the parity scan of the mixture.
    """
    circuit = pulse.bell_circuit()
    signs = qsim.parity_vector(2)
    phis = 2 * math.pi * np.arange(parity_points) / parity_points
    weights = {
        _FINE: (1 - pumping) * (1 - loss),
        _LOST: (1 - pumping) * loss,
        _ABSENT: pumping,
    }

    pops = np.zeros(4)
    parities = np.zeros(parity_points)

    for kinds in itertools.product((_FINE, _LOST, _ABSENT), repeat=2):
        weight = weights[kinds[0]] * weights[kinds[1]]

        if not weight:
            continue

        coupled = _ABSENT not in kinds
        state = qsim.init_state(2, sites=circuit.sites)

        for op in circuit:
            if isinstance(op, Cz) and not coupled:
                continue

            state = qsim.apply_native(state, op)

        dark = [q for q in range(2) if kinds[q] != _FINE]
        pops += weight * _force_dark(np.abs(state.amplitudes) ** 2, 2, dark)

        for k, phi in enumerate(phis):
            rotated = qsim.apply_native(state, GlobalRot(phi, math.pi / 2))
            probs = _force_dark(np.abs(rotated.amplitudes) ** 2, 2, dark)
            parities[k] += weight * np.dot(probs, signs)

    c = 2 * abs(np.dot(parities, np.exp(-2j * phis))) / parity_points

    return (pops[0] + pops[3] + c) / 2.0


def spam_process_bounds(loss, pumping_range=PUMPING_RANGE):
    """
    The interval of Bell infidelity caused by SPAM alone, for readout loss
    C{loss} and the optical pumping error anywhere in C{pumping_range}.
    """
    lo, hi = pumping_range

    if not 0 <= lo <= hi <= 1 or not 0 <= loss <= 1:
        raise atomtwin.DomainError('Probabilities out of range')

    return (
        1 - bell_fidelity_with_spam(loss, lo),
        1 - bell_fidelity_with_spam(loss, hi),
    )


def spam_correct(raw_fidelity, n_qubits, per_qubit, process_model=False):
    """
    Divides a raw fidelity by the per qubit survival C{(1 - p)^N}.

    @return: C{(corrected, clamped, bounds)}. C{clamped} is C{True} when the
        corrected value exceeded 1 and was clamped. C{bounds} is the SPAM
        infidelity interval of L{spam_process_bounds} for two qubits when
        C{process_model} is set, C{None} otherwise.
    """
    raw_fidelity = float(raw_fidelity)

    if not 0 <= raw_fidelity <= 1:
        raise atomtwin.DomainError('Raw fidelity %r not in [0, 1]' % (
            raw_fidelity,))

    if not 0 <= per_qubit < 1:
        raise atomtwin.DomainError('Per qubit error %r not in [0, 1)' % (
            per_qubit,))

    corrected = raw_fidelity / (1 - per_qubit) ** n_qubits
    clamped = corrected > 1

    if clamped:
        corrected = 1.0

    bounds = None

    if process_model:
        if n_qubits != 2:
            raise atomtwin.DomainError(
                'The process model covers two qubits only')

        bounds = spam_process_bounds(per_qubit)

    return corrected, clamped, bounds
