# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Machine configuration.

The configuration is a plain text C{ConfigParser} file of C{[section]}
headers and C{key: value} lines. Every key is known in advance: unknown
sections or keys and missing keys are errors, so a typo never falls back to
a default silently. The package ships L{DEFAULT_PATH}.

@since: 0.1
"""

import configparser
import hashlib
import math
import os.path

import atomtwin
from atomtwin import compiler, constants, hardware, noise
from atomtwin.circuit import SiteCoord, as_site


__all__ = [
    'DEFAULT_PATH',
    'MachineConfig',
    'load_config',
    'loads_config',
]

#: The shipped configuration.
DEFAULT_PATH = os.path.join(os.path.dirname(__file__), 'default.cfg')


def _boolean(value):
    value = value.strip().lower()

    if value in ('1', 'yes', 'true', 'on'):
        return True

    if value in ('0', 'no', 'false', 'off'):
        return False

    raise ValueError('not a boolean: %r' % (value,))


def _offsets(value):
    ret = {}

    for item in value.split():
        site, _, hz = item.partition(':')
        ret[as_site(site)] = float(hz)

    return ret


#: C{{section: {key: parser}}}. Layout groups are free form.
SCHEMA = {
    'array': {
        'rows': int,
        'cols': int,
        'spacing': float,
    },
    'timing': {
        'rabi_frequency': float,
        'stark_shift': float,
        'cz_duration': float,
        'latency': float,
    },
    'trap': {
        'aspect_ratio': float,
        'wavelength': float,
        'depth': float,
        'temperature': float,
    },
    'noise': {
        'readout_loss': float,
        'pumping_error': float,
        't2_star': float,
        'sigma_rel_intensity': float,
        'cz_depolarizing': float,
        'scattering_per_rz_pi': float,
        'dephasing_mode': str,
        'dark_on_loss': _boolean,
        'trajectories': int,
        'qubit_freq_offsets': _offsets,
    },
    'coherence': {
        'sigma_b': float,
        'b0': float,
        'temperature': float,
        'eta': float,
    },
    'pulse': {
        'rabi_frequency': float,
        'blockade': float,
        'omega_ratio_b': float,
    },
    'run': {
        'seed': int,
        'shots': int,
    },
    'layouts': None,
}


class MachineConfig(object):
    """
    A validated machine configuration.

    @ivar rows: Array rows.
    @ivar cols: Array columns.
    @ivar spacing: Site spacing (m).
    @ivar layouts: C{{name: Layout}}.
    @ivar timing: L{TimingConfig<compiler.TimingConfig>}.
    @ivar trap: L{TrapArrayConfig<hardware.TrapArrayConfig>}.
    @ivar noise: L{NoiseParams<noise.NoiseParams>}.
    @ivar coherence: L{CoherenceInputs<noise.CoherenceInputs>}.
    @ivar pulse: C{{'omega_r', 'blockade_b', 'omega_ratio_b'}}, angular.
    @ivar seed: Default run seed.
    @ivar shots: Default shot count.
    @ivar text: The canonical configuration text.
    """

    def __init__(self, values, text):
        array = values['array']
        self.rows = array['rows']
        self.cols = array['cols']
        self.spacing = array['spacing']

        if self.rows < 1 or self.cols < 1:
            raise atomtwin.ConfigError('must be positive', field='array.rows')

        if not self.spacing > 0:
            raise atomtwin.ConfigError('must be positive',
                                       field='array.spacing')

        self.timing = compiler.TimingConfig(**values['timing'])

        trap = values['trap']

        try:
            self.trap = hardware.TrapArrayConfig(
                d=self.spacing, s=trap['aspect_ratio'],
                lambda_trap=trap['wavelength'],
                u_d=constants.K_B * trap['depth'],
                t_atom=trap['temperature'])
        except atomtwin.DomainError as e:
            raise atomtwin.ConfigError(str(e), field='trap')

        self.noise = noise.NoiseParams(**values['noise'])

        coherence = values['coherence']

        try:
            self.coherence = noise.CoherenceInputs(
                coherence['sigma_b'], coherence['b0'],
                coherence['temperature'], coherence['eta'])
        except atomtwin.DomainError as e:
            raise atomtwin.ConfigError(str(e), field='coherence')

        pulse = values['pulse']
        self.pulse = {
            'omega_r': 2 * math.pi * pulse['rabi_frequency'],
            'blockade_b': 2 * math.pi * pulse['blockade'],
            'omega_ratio_b': pulse['omega_ratio_b'],
        }

        for key in ('rabi_frequency', 'blockade', 'omega_ratio_b'):
            if not pulse[key] > 0:
                raise atomtwin.ConfigError('must be positive',
                                           field='pulse.%s' % (key,))

        self.seed = values['run']['seed']
        self.shots = values['run']['shots']

        if self.shots < 1:
            raise atomtwin.ConfigError('must be positive', field='run.shots')

        self.layouts = self._build_layouts(values['layouts'])

        for site in self.noise.qubit_freq_offsets:
            self.check_site(site, 'noise.qubit_freq_offsets')

        self.text = text

    def check_site(self, site, field):
        if site.row >= self.rows or site.col >= self.cols:
            raise atomtwin.ConfigError(
                'site %s outside the %dx%d array' % (site, self.rows,
                                                     self.cols),
                field=field)

    def _build_layouts(self, groups):
        sites = {}
        pairs = {}

        for key, value in groups.items():
            if key.endswith('.pairs'):
                pairs[key[:-len('.pairs')]] = value
            else:
                sites[key] = value

        for name in pairs:
            if name not in sites:
                raise atomtwin.ConfigError(
                    'pairs given for an undefined group',
                    field='layouts.%s.pairs' % (name,))

        layouts = {}

        for name, value in sorted(sites.items()):
            field = 'layouts.%s' % (name,)

            try:
                group = [as_site(s) for s in value.split()]
            except (atomtwin.BaseError, ValueError, TypeError):
                raise atomtwin.ConfigError('bad site list %r' % (value,),
                                           field=field)

            if not group:
                raise atomtwin.ConfigError('empty group', field=field)

            for site in group:
                self.check_site(site, field)

            try:
                couplings = [
                    tuple(int(q) for q in p.split('-'))
                    for p in pairs.get(name, '').split()
                ]

                if any(len(p) != 2 for p in couplings):
                    raise ValueError
            except ValueError:
                raise atomtwin.ConfigError(
                    'bad pair list %r' % (pairs[name],),
                    field=field + '.pairs')

            try:
                layouts[name] = compiler.Layout(group, name=name,
                                                pairs=couplings)
            except atomtwin.CompileError as e:
                raise atomtwin.ConfigError(str(e), field=field)

        return layouts

    @property
    def hash(self):
        """
        SHA-256 of the canonical configuration text.
        """
        return hashlib.sha256(self.text.encode('utf-8')).hexdigest()

    def array_sites(self):
        return [SiteCoord(r, c) for r in range(self.rows)
                for c in range(self.cols)]

    def __repr__(self):
        return '<MachineConfig %dx%d layouts=%r hash=%s>' % (
            self.rows, self.cols, sorted(self.layouts), self.hash[:12])


def _parse_error(e):
    lineno = getattr(e, 'lineno', None)

    if lineno is None and getattr(e, 'errors', None):
        lineno = e.errors[0][0]

    return atomtwin.ConfigError(str(e).splitlines()[0], lineno=lineno)


def _canonical(parser):
    lines = []

    for section in sorted(parser.sections()):
        lines.append('[%s]' % (section,))

        for key in sorted(parser.options(section)):
            value = ' '.join(parser.get(section, key).split())
            lines.append('%s: %s' % (key, value))

    return '\n'.join(lines) + '\n'


def loads_config(text):
    """
    Parses and validates configuration text.

    @rtype: L{MachineConfig}
    @raise ConfigError: Parse error (with the line number), unknown or
        missing key, or an invalid value (with the field name).
    """
    parser = configparser.ConfigParser(interpolation=None,
                                       inline_comment_prefixes=None)

    try:
        parser.read_string(text)
    except configparser.Error as e:
        raise _parse_error(e)

    for section in parser.sections():
        if section not in SCHEMA:
            raise atomtwin.ConfigError('unknown section', field=section)

    values = {}

    for section, keys in SCHEMA.items():
        if not parser.has_section(section):
            raise atomtwin.ConfigError('missing section', field=section)

        if keys is None:
            values[section] = dict(parser.items(section))

            continue

        for key in parser.options(section):
            if key not in keys:
                raise atomtwin.ConfigError(
                    'unknown key', field='%s.%s' % (section, key))

        values[section] = {}

        for key, convert in keys.items():
            field = '%s.%s' % (section, key)

            if not parser.has_option(section, key):
                raise atomtwin.ConfigError('missing key', field=field)

            raw = parser.get(section, key).strip()

            try:
                values[section][key] = convert(raw)
            except (ValueError, atomtwin.BaseError) as e:
                raise atomtwin.ConfigError(
                    'bad value %r (%s)' % (raw, e), field=field)

    return MachineConfig(values, _canonical(parser))


def load_config(path=None):
    """
    Loads the configuration file at C{path}, the shipped default if
    C{None}.

    @rtype: L{MachineConfig}
    @raise ConfigError: The file is unreadable or invalid.
    """
    if path is None:
        path = DEFAULT_PATH

    try:
        with open(path, 'rt') as f:
            text = f.read()
    except (IOError, OSError) as e:
        raise atomtwin.ConfigError('cannot read %s: %s' % (path, e))

    return loads_config(text)
