# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Error model of the machine.

This package holds the noise parameters and the analytic error formulas:
qubit coherence from magnetic noise and atomic motion, Rabi amplitude decay
from shot to shot intensity noise, photon scattering of the Stark shift beam
and the quadrature error budget of a local C{R_Z}.

The Monte-Carlo channel layer lives in L{atomtwin.noise.channels}, SPAM
correction in L{atomtwin.noise.spam} and the Monte-Carlo coherence studies in
L{atomtwin.noise.coherence}.

@since: 0.1
"""

import math

import atomtwin
from atomtwin import constants
from atomtwin.circuit import as_site


__all__ = [
    'CoherenceInputs',
    'NoiseParams',
    'coherence_model',
    'intensity_dephasing',
    'scattering_error',
    'error_budget',
    'ghz_coherence_scaling',
]

#: Dephasing modes of the quasi-static frequency noise.
DEPHASING_MODES = ('collective', 'independent')

#: Prefactor of the semi-classical motional dephasing time.
MOTION_PREFACTOR = 1.947

#: Differential light shift parameter of 825 nm trapping light.
ETA_825 = -0.00079


class CoherenceInputs(object):
    """
    Inputs of the T2* model.

    @ivar sigma_b: Magnetic noise standard deviation (T).
    @ivar b0: Bias field (T).
    @ivar t_atom: Atom temperature (K).
    @ivar eta: Differential light shift parameter, negative for 825 nm light.
    @ivar nu_clock: Qubit frequency (Hz).
    """

    def __init__(self, sigma_b, b0, t_atom, eta=ETA_825,
                 nu_clock=constants.NU_CLOCK):
        self.sigma_b = float(sigma_b)
        self.b0 = float(b0)
        self.t_atom = float(t_atom)
        self.eta = float(eta)
        self.nu_clock = float(nu_clock)

        if self.sigma_b < 0:
            raise atomtwin.DomainError('sigma_b must not be negative')

        for name in ('b0', 't_atom', 'nu_clock'):
            if not getattr(self, name) > 0:
                raise atomtwin.DomainError('%s must be positive' % (name,))

    def __repr__(self):
        return ('CoherenceInputs(sigma_b=%r, b0=%r, t_atom=%r, eta=%r, '
                'nu_clock=%r)') % (self.sigma_b, self.b0, self.t_atom,
                                   self.eta, self.nu_clock)


def _check_probability(name, value):
    value = float(value)

    if not 0.0 <= value <= 1.0:
        raise atomtwin.ConfigError(
            'must be a probability in [0, 1], got %r' % (value,),
            field='noise.%s' % (name,))

    return value


class NoiseParams(object):
    """
    Rates of every noise channel.

    @ivar readout_loss: Per atom probability of reading dark through loss.
    @ivar pumping_error: Per atom probability of not being pumped into the
        qubit basis, the atom is then absent from the circuit.
    @ivar t2_star: Ramsey coherence time (s), C{inf} for none.
    @ivar sigma_rel_intensity: Shot to shot relative intensity noise of the
        C{R_Z} beam.
    @ivar cz_depolarizing: Two qubit depolarizing probability per C{C_Z}.
    @ivar scattering_per_rz_pi: Scattering probability of a C{pi} Stark
        rotation, scaled by the rotation angle.
    @ivar qubit_freq_offsets: Static qubit frequency offsets (Hz) by site.
    @ivar dephasing_mode: C{'collective'} (one frequency shared by the
        register) or C{'independent'}.
    @ivar dark_on_loss: Lost atoms read as C{1}; otherwise as a random bit.
    @ivar trajectories: Number of quasi-static noise draws per run.
    """

    RATES = (
        'readout_loss',
        'pumping_error',
        'sigma_rel_intensity',
        'cz_depolarizing',
        'scattering_per_rz_pi',
    )

    def __init__(self, readout_loss=0.015, pumping_error=0.0025,
                 t2_star=3.5e-3, sigma_rel_intensity=0.0045,
                 cz_depolarizing=0.06, scattering_per_rz_pi=0.0042,
                 qubit_freq_offsets=None, dephasing_mode='collective',
                 dark_on_loss=True, trajectories=200):
        self.readout_loss = _check_probability('readout_loss', readout_loss)
        self.pumping_error = _check_probability('pumping_error',
                                                pumping_error)
        self.cz_depolarizing = _check_probability('cz_depolarizing',
                                                  cz_depolarizing)
        self.scattering_per_rz_pi = _check_probability(
            'scattering_per_rz_pi', scattering_per_rz_pi)

        self.sigma_rel_intensity = float(sigma_rel_intensity)

        if not self.sigma_rel_intensity >= 0:
            raise atomtwin.ConfigError(
                'must not be negative', field='noise.sigma_rel_intensity')

        self.t2_star = float(t2_star)

        if not self.t2_star > 0:
            raise atomtwin.ConfigError('must be positive',
                                       field='noise.t2_star')

        if dephasing_mode not in DEPHASING_MODES:
            raise atomtwin.ConfigError(
                'must be one of %s, got %r' % (
                    ', '.join(DEPHASING_MODES), dephasing_mode),
                field='noise.dephasing_mode')

        self.dephasing_mode = dephasing_mode
        self.dark_on_loss = bool(dark_on_loss)
        self.trajectories = int(trajectories)

        if self.trajectories < 1:
            raise atomtwin.ConfigError('must be at least 1',
                                       field='noise.trajectories')

        self.qubit_freq_offsets = dict(
            (as_site(k), float(v))
            for k, v in (qubit_freq_offsets or {}).items())

    @classmethod
    def ideal(cls, **kwargs):
        """
        Every channel switched off.
        """
        values = dict((name, 0.0) for name in cls.RATES)
        values['t2_star'] = float('inf')
        values.update(kwargs)

        return cls(**values)

    def replace(self, **kwargs):
        values = dict(
            readout_loss=self.readout_loss,
            pumping_error=self.pumping_error,
            t2_star=self.t2_star,
            sigma_rel_intensity=self.sigma_rel_intensity,
            cz_depolarizing=self.cz_depolarizing,
            scattering_per_rz_pi=self.scattering_per_rz_pi,
            qubit_freq_offsets=self.qubit_freq_offsets,
            dephasing_mode=self.dephasing_mode,
            dark_on_loss=self.dark_on_loss,
            trajectories=self.trajectories,
        )
        values.update(kwargs)

        return NoiseParams(**values)

    def scaled(self, factor):
        """
        Multiplies every channel rate by C{factor}; the dephasing rate
        C{1/t2_star} and the frequency offsets scale too.

        @raise ConfigError: A scaled probability leaves C{[0, 1]}.
        """
        factor = float(factor)

        if not factor >= 0:
            raise atomtwin.ConfigError('Noise scale must not be negative')

        values = dict(
            (name, getattr(self, name) * factor) for name in self.RATES)

        if factor == 0:
            values['t2_star'] = float('inf')
        else:
            values['t2_star'] = self.t2_star / factor

        values['qubit_freq_offsets'] = dict(
            (k, v * factor) for k, v in self.qubit_freq_offsets.items())

        return self.replace(**values)

    @property
    def is_ideal(self):
        return (
            not any(getattr(self, name) for name in self.RATES) and
            math.isinf(self.t2_star) and
            not any(self.qubit_freq_offsets.values())
        )

    def as_dict(self):
        ret = dict((name, getattr(self, name)) for name in self.RATES)
        ret.update(
            t2_star=self.t2_star,
            dephasing_mode=self.dephasing_mode,
            dark_on_loss=self.dark_on_loss,
            trajectories=self.trajectories,
            qubit_freq_offsets=dict(
                (str(k), v) for k, v in self.qubit_freq_offsets.items()),
        )

        return ret

    def __repr__(self):
        return '<NoiseParams %r>' % (self.as_dict(),)


def coherence_model(inputs):
    """
    Magnetic, motional and combined Ramsey coherence times.

    Gaussian magnetic noise gives C{T_B = sqrt(2) pi^2 hbar^2 nu / (mu_B^2
    B0 sigma)}, motion in the trap C{T_m = 1.947 hbar / (k_B T |eta|)}; they
    combine as C{1/T^2 = 1/T_B^2 + 1/T_m^2}.

    @return: C{{'t2_magnetic', 't2_motion', 't2_star'}} in seconds, C{inf}
        where a mechanism is absent.
    """
    inf = float('inf')

    if inputs.sigma_b == 0:
        t2_b = inf
    else:
        t2_b = (
            math.sqrt(2) * math.pi ** 2 * constants.HBAR ** 2 *
            inputs.nu_clock /
            (constants.MU_B ** 2 * inputs.b0 * inputs.sigma_b))

    if inputs.eta == 0:
        t2_m = inf
    else:
        t2_m = MOTION_PREFACTOR * constants.HBAR / (
            constants.K_B * inputs.t_atom * abs(inputs.eta))

    rate2 = sum(1.0 / t ** 2 for t in (t2_b, t2_m) if not math.isinf(t))

    return {
        't2_magnetic': t2_b,
        't2_motion': t2_m,
        't2_star': 1.0 / math.sqrt(rate2) if rate2 else inf,
    }


def intensity_dephasing(theta0, sigma_rel):
    """
    Amplitude factor C{exp(-theta0^2 sigma^2 / 2)} of a Rabi oscillation of
    nominal area C{theta0} under Gaussian shot to shot intensity noise. The
    error is C{1 - factor}.
    """
    if sigma_rel < 0:
        raise atomtwin.DomainError('sigma_rel must not be negative')

    return math.exp(-0.5 * (theta0 * sigma_rel) ** 2)


def scattering_error(delta, tau_7p):
    """
    Photon scattering probability of a C{pi} Stark rotation, C{pi / (Delta
    tau)} for an intermediate state detuning C{Delta} (rad/s) and lifetime
    C{tau_7p}.

    @raise DomainError: The result is not a probability, the detuning is too
        small for the formula.
    """
    if not delta > 0 or not tau_7p > 0:
        raise atomtwin.DomainError('Detuning and lifetime must be positive')

    eps = 0.5 * 2 * math.pi / (delta * tau_7p)

    if eps >= 1:
        raise atomtwin.DomainError(
            'Scattering probability %.3f >= 1, detuning too small' % (eps,))

    return eps


def error_budget(components):
    """
    Adds independent errors per C{pi} pulse in quadrature.

    @return: C{{'epsilon_total', 'f_tau'}}, C{f_tau = (1/e)/(2 epsilon)}
        is the number of Rabi cycles to 1/e amplitude.
    """
    components = [float(c) for c in components]

    for c in components:
        if not 0 <= c < 1:
            raise atomtwin.DomainError('Error %r is not in [0, 1)' % (c,))

    total = math.sqrt(sum(c * c for c in components))

    return {
        'epsilon_total': total,
        'f_tau': (1 / math.e) / (2 * total) if total else float('inf'),
    }


def ghz_coherence_scaling(n, t2_single):
    """
    GHZ coherence time under collective dephasing: the phase of an C{n}
    qubit GHZ state is C{n} times the single qubit phase, so C{T2*/n}.
    """
    if n < 1:
        raise atomtwin.DomainError('n must be at least 1')

    return t2_single / float(n)
