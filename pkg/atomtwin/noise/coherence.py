# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Monte-Carlo coherence studies: local gate dephasing from thermal motion under
the addressing beam, GHZ Ramsey coherence and the T2* grid.

@since: 0.1
"""

import math

import numpy as np
from scipy import optimize

import atomtwin
from atomtwin import constants, noise, util


__all__ = [
    'position_dephasing',
    'ghz_coherence_time',
    'coherence_slope',
    'coherence_grid',
]

_INV_E = 1 / math.e


def _first_crossing(envelope, start):
    """
    The first argument where the decreasing C{envelope} reaches 1/e,
    bracketed by doubling from C{start} then solved by C{brentq}.
    """
    lo = 0.0
    hi = start

    for _ in range(60):
        if envelope(hi) < _INV_E:
            break

        lo = hi
        hi *= 2
    else:
        raise atomtwin.DomainError('No decay to 1/e found')

    return optimize.brentq(lambda x: envelope(x) - _INV_E, lo, hi,
                           xtol=1e-9 * hi)


def position_dephasing(sigma_r, sigma_z, beam_waist,
                       wavelength=constants.ADDRESS_WAVELENGTH,
                       samples=200000, seed=0):
    """
    Decay of a local Stark rotation for thermally distributed atoms under a
    Gaussian addressing beam.

    Each atom sees the relative intensity C{(w0/w(z))^2 exp(-2 r^2/w(z)^2)}
    for the whole pulse. The Rabi amplitude C{|<exp(i theta I)>|} decays
    with the nominal angle C{theta}; the figure of merit C{f_tau} is the
    number of Rabi cycles to 1/e amplitude.

    @param sigma_r: Transverse position spread (m), per axis.
    @param sigma_z: Axial position spread (m).
    @return: C{{'f_tau', 'epsilon_pi'}}, C{epsilon_pi = (1/e)/(2 f_tau)}.
    """
    if not beam_waist > 0 or sigma_r < 0 or sigma_z < 0:
        raise atomtwin.DomainError('Invalid beam or position spread')

    rng = util.make_rng(seed)
    x = rng.normal(0.0, sigma_r, samples)
    y = rng.normal(0.0, sigma_r, samples)
    z = rng.normal(0.0, sigma_z, samples)

    rayleigh = math.pi * beam_waist ** 2 / wavelength
    w2 = beam_waist ** 2 * (1 + (z / rayleigh) ** 2)
    intensity = (beam_waist ** 2 / w2) * np.exp(-2 * (x ** 2 + y ** 2) / w2)

    # the common phase of the mean intensity does not decay
    offsets = intensity - intensity.mean()

    def envelope(theta):
        return abs(np.mean(np.exp(1j * theta * offsets)))

    if not np.any(offsets):
        return {'f_tau': float('inf'), 'epsilon_pi': 0.0}

    theta = _first_crossing(envelope, 2 * math.pi)
    f_tau = theta / (2 * math.pi)

    return {'f_tau': f_tau, 'epsilon_pi': _INV_E / (2 * f_tau)}


def ghz_coherence_time(n, t2_single, mode='collective', samples=20000,
                       seed=0):
    """
    Ramsey coherence time of an C{n} qubit GHZ state under quasi-static
    Gaussian frequency noise, from C{samples} noise draws.

    The GHZ phase is the sum of the single qubit phases; in C{collective}
    mode every qubit shares one frequency error, in C{independent} mode each
    draws its own.
    """
    if n < 1:
        raise atomtwin.DomainError('n must be at least 1')

    if mode not in noise.DEPHASING_MODES:
        raise atomtwin.DomainError('Unknown dephasing mode %r' % (mode,))

    rng = util.make_rng(seed)
    sigma = math.sqrt(2) / t2_single

    if mode == 'collective':
        total = n * rng.normal(0.0, sigma, samples)
    else:
        total = rng.normal(0.0, sigma, (samples, n)).sum(axis=1)

    def contrast(t):
        return abs(np.mean(np.exp(1j * t * total)))

    return _first_crossing(contrast, t2_single / (4.0 * n))


def coherence_slope(ns, t2_single, mode='collective', samples=20000,
                    seed=0):
    """
    The log-log slope of the GHZ coherence time against C{n}; C{-1} for
    collective and C{-1/2} for independent dephasing.
    """
    ns = np.asarray(list(ns), dtype=float)
    times = [
        ghz_coherence_time(int(n), t2_single, mode, samples, seed)
        for n in ns
    ]

    slope, _ = np.polyfit(np.log(ns), np.log(times), 1)

    return float(slope)


def coherence_grid(temperatures, sigmas, b0, eta=noise.ETA_825):
    """
    T2* over a grid of atom temperatures (K) and magnetic noise (T).

    @return: A C{list} of C{dict} rows with C{t_atom}, C{sigma_b},
        C{t2_magnetic}, C{t2_motion} and C{t2_star}.
    """
    rows = []

    for t_atom in temperatures:
        for sigma_b in sigmas:
            result = noise.coherence_model(
                noise.CoherenceInputs(sigma_b, b0, t_atom, eta))
            row = {'t_atom': t_atom, 'sigma_b': sigma_b}
            row.update(result)
            rows.append(row)

    return rows
