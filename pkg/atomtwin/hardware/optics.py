# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Addressing optics: the magnification match of the two AOD paths that scan
the 459 nm and 1038 nm beams together, and the Stark phase of a local
C{R_Z} pulse.

@since: 0.1
"""

import math

import atomtwin
from atomtwin import constants


__all__ = [
    'aod_magnification',
    'stark_shift',
    'stark_phase',
    'stark_phase_duration',
]

#: Closest approach to a pole of the Stark shift (rad/s).
POLE_TOLERANCE = 2 * math.pi * constants.MHZ


def aod_magnification(lambda1, lambda2, n1=1.0, n2=1.0, m1=1, m2=-1):
    """
    Magnifications that keep two AOD scanned beams on the same site with
    cancelling frequency shifts.

    Deflecting in opposite orders (C{m1 m2 = -1}) the optical frequency
    shifts cancel when the beams land on the same site, which fixes
    C{M2/M1 = lambda1 n2 / (lambda2 n1)}. Equal spot sizes at the atoms
    then need C{w2/w1 = n2/n1}.

    @param lambda1: Wavelength of the first path (m).
    @param lambda2: Wavelength of the second path (m).
    @param n1: Acoustic-to-optical index ratio of the first AOD.
    @param n2: Same for the second AOD.
    @param m1: Diffraction order of the first AOD.
    @param m2: Diffraction order of the second AOD.
    @return: C{{'mag_ratio', 'waist_ratio'}}.
    @raise DomainError: Same sign orders, the shifts cannot cancel.
    """
    if m1 * m2 != -1:
        raise atomtwin.DomainError(
            'Diffraction orders %r and %r must be opposite first orders' % (
                m1, m2))

    for name, value in (('lambda1', lambda1), ('lambda2', lambda2),
                        ('n1', n1), ('n2', n2)):
        if not value > 0:
            raise atomtwin.DomainError('%s must be positive' % (name,))

    return {
        'mag_ratio': float(lambda1) * n2 / (float(lambda2) * n1),
        'waist_ratio': float(n2) / n1,
    }


def stark_shift(omega459, delta, omega_q=2 * math.pi * constants.NU_CLOCK):
    """
    Differential light shift of the qubit (rad/s) for a 6s-7p Rabi frequency
    C{omega459} detuned by C{delta} from the upper hyperfine level, the
    effective Rabi rate of the local C{R_Z}.

    @raise DomainError: C{delta} within L{POLE_TOLERANCE} of either pole.
    """
    if abs(delta) < POLE_TOLERANCE or abs(delta - omega_q) < POLE_TOLERANCE:
        raise atomtwin.DomainError(
            'Detuning %r rad/s too close to a resonance' % (delta,))

    power = abs(omega459) ** 2

    return power / (4 * delta) - power / (4 * (delta - omega_q))


def stark_phase(omega459, delta, omega_q, t):
    """
    Phase accumulated by a local Stark pulse of length C{t} seconds.
    """
    return stark_shift(omega459, delta, omega_q) * t


def stark_phase_duration(omega459, delta, omega_q, theta):
    """
    Pulse length (s) giving the phase C{theta}.

    @raise DomainError: No shift, or the shift has the wrong sign for
        C{theta}.
    """
    rate = stark_shift(omega459, delta, omega_q)

    if theta == 0:
        return 0.0

    if rate == 0 or (theta / rate) < 0:
        raise atomtwin.DomainError(
            'A shift of %r rad/s cannot give a phase of %r' % (rate, theta))

    return theta / rate
