# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Analytic hardware calculators.

This package holds the blue-detuned line array trap model. Atoms sit at the
intensity minima of a square array of crossed Gaussian lines with spacing
C{d} and waist C{w}; the aspect ratio C{s = d/w} sets the barrier heights.
Intensities are reported relative to the spatially averaged intensity
C{I_d}, which produces the light shift C{U_d}.

Addressing optics and the Stark phase calibration live in
L{atomtwin.hardware.optics}, atom rearrangement planning in
L{atomtwin.hardware.rearrange}.

@since: 0.1
"""

import math

import atomtwin
from atomtwin import constants


__all__ = [
    'TrapArrayConfig',
    'trap_profile',
]

_SQRT_2PI = math.sqrt(2 * math.pi)

#: Limit of the axial barrier ratio for large aspect ratios,
#: C{4/sqrt(2 pi e)}.
ITZ_LIMIT = 4 / math.sqrt(2 * math.pi * math.e)


class TrapArrayConfig(object):
    """
    Geometry and temperature of the trap array.

    Give the spacing C{d} with either the waist C{w} or the aspect ratio
    C{s}.

    @ivar d: Line spacing (m).
    @ivar w: Line waist (m).
    @ivar s: Aspect ratio C{d/w}.
    @ivar lambda_trap: Trap wavelength (m).
    @ivar u_d: Light shift of the averaged intensity C{I_d} (J).
    @ivar t_atom: Atom temperature (K).
    @ivar atom_mass: Atom mass (kg).
    """

    def __init__(self, d=3e-6, w=None, s=None,
                 lambda_trap=constants.TRAP_WAVELENGTH,
                 u_d=constants.K_B * 300 * constants.UK,
                 t_atom=5 * constants.UK, atom_mass=constants.CS_MASS):
        if (w is None) == (s is None):
            raise atomtwin.DomainError('Give exactly one of w and s')

        self.d = float(d)

        if w is None:
            self.s = float(s)
            self.w = self.d / self.s if self.s else float('inf')
        else:
            self.w = float(w)
            self.s = self.d / self.w if self.w else float('inf')

        self.lambda_trap = float(lambda_trap)
        self.u_d = float(u_d)
        self.t_atom = float(t_atom)
        self.atom_mass = float(atom_mass)

        for name in ('d', 'w', 's', 'lambda_trap', 'u_d', 't_atom',
                     'atom_mass'):
            value = getattr(self, name)

            if not (value > 0 and math.isfinite(value)):
                raise atomtwin.DomainError('%s must be positive, got %r' % (
                    name, value))

    def replace(self, **kwargs):
        values = dict(
            d=self.d,
            w=self.w,
            lambda_trap=self.lambda_trap,
            u_d=self.u_d,
            t_atom=self.t_atom,
            atom_mass=self.atom_mass,
        )

        if 's' in kwargs:
            values.pop('w')

        values.update(kwargs)

        return TrapArrayConfig(**values)

    def as_dict(self):
        return {
            'd': self.d,
            'w': self.w,
            's': self.s,
            'lambda_trap': self.lambda_trap,
            'u_d': self.u_d,
            't_atom': self.t_atom,
            'atom_mass': self.atom_mass,
        }

    def __repr__(self):
        return ('TrapArrayConfig(d=%r, s=%r, lambda_trap=%r, u_d=%r, '
                't_atom=%r)') % (self.d, self.s, self.lambda_trap, self.u_d,
                                 self.t_atom)


def intensity_ratios(s):
    """
    Intensities at the trap centre (C{ic}), the saddle between two sites
    (C{is}), the radial barrier C{it = is - ic} and the axial barrier
    (C{itz}), each relative to C{I_d}.

    @raise DomainError: C{s <= 1}, the array does not trap.
    """
    s = float(s)

    if not s > 1:
        raise atomtwin.DomainError(
            'Aspect ratio must exceed 1 to trap, got %r' % (s,))

    g = math.exp(-s * s / 2)
    ic = 4 * s / _SQRT_2PI * g
    is_ = s / _SQRT_2PI * (1 + 2 * g)

    return {
        'ic_ratio': ic,
        'is_ratio': is_,
        'it_ratio': is_ - ic,
        'itz_ratio': 4 / _SQRT_2PI * (math.exp(-0.5) - s * g),
    }


def trap_profile(config):
    """
    Barrier heights, spring constants, vibration frequencies and thermal
    position spreads of an atom in the array.

    The harmonic expansion about the trap centre gives::

        kappa_x = (U_d/d^2) sqrt(32/pi) s^3 (s^2 - 1) exp(-s^2/2)
        kappa_z = (U_d lambda^2/d^4) sqrt(8) s^5 / pi^(5/2)
                  (s^2 - 1) exp(-s^2/2)

    and the thermal variances follow from equipartition,
    C{sigma^2 = k_B T / kappa}.

    @type config: L{TrapArrayConfig}
    @return: A C{dict} of SI quantities; frequencies in Hz, C{z_max} is the
        axial position of the barrier maximum.
    @raise DomainError: C{s <= 1}.
    """
    s = config.s
    ret = intensity_ratios(s)

    d = config.d
    lam = config.lambda_trap
    u_d = config.u_d
    kt = constants.K_B * config.t_atom
    common = (s * s - 1) * math.exp(-s * s / 2)

    kappa_x = u_d / d ** 2 * math.sqrt(32 / math.pi) * s ** 3 * common
    kappa_z = (u_d * lam ** 2 / d ** 4 * math.sqrt(8) * s ** 5 /
               math.pi ** 2.5 * common)

    rayleigh = math.pi * config.w ** 2 / lam

    ret.update(
        potential_ratio=ret['it_ratio'] / ret['ic_ratio'],
        z_max=rayleigh * math.sqrt(s * s - 1),
        kappa_x=kappa_x,
        kappa_z=kappa_z,
        f_vib_radial=math.sqrt(kappa_x / config.atom_mass) / (2 * math.pi),
        f_vib_axial=math.sqrt(kappa_z / config.atom_mass) / (2 * math.pi),
        sigma_x=math.sqrt(kt / kappa_x),
        sigma_z=math.sqrt(kt / kappa_z),
        depth_x=u_d * ret['it_ratio'],
        depth_z=u_d * ret['itz_ratio'],
    )

    return ret
