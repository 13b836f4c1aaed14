# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Physical constants in SI units.

Fundamental constants come from L{scipy.constants} (CODATA); the caesium
values are the ones used throughout the machine model.

@since: 0.1
"""

from scipy import constants as _codata


__all__ = [
    'HBAR',
    'K_B',
    'MU_B',
    'NU_CLOCK',
    'CS_MASS',
    'TRAP_WAVELENGTH',
    'ADDRESS_WAVELENGTH',
    'RYDBERG_WAVELENGTH',
    'US',
    'UK',
    'MHZ',
    'KHZ',
]


#: Reduced Planck constant (J s).
HBAR = _codata.hbar

#: Boltzmann constant (J/K).
K_B = _codata.k

#: Bohr magneton (J/T).
MU_B = _codata.physical_constants['Bohr magneton'][0]

#: Caesium-133 ground state hyperfine (clock) frequency (Hz), exact by
#: definition of the second.
NU_CLOCK = 9192631770.0

#: Caesium-133 atomic mass (kg).
CS_MASS = 132.905451961 * _codata.atomic_mass

#: Wavelength of the blue-detuned trapping light (m).
TRAP_WAVELENGTH = 825e-9

#: Wavelength of the 6s-7p addressing light (m).
ADDRESS_WAVELENGTH = 459e-9

#: Wavelength of the 7p-Rydberg light (m).
RYDBERG_WAVELENGTH = 1038e-9

#: One microsecond, one microkelvin and friends, for readable defaults.
US = 1e-6
UK = 1e-6
MHZ = 1e6
KHZ = 1e3
