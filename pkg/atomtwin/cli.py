# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
The C{atomtwin} command.

Every subcommand loads the machine configuration, runs one job and writes
C{<command>.json} plus CSV sidecars to the output directory, then prints a
one line summary. Exit status is 0 on success, 1 when the job fails and 2
for a usage error.

@since: 0.1
"""

import argparse
import csv
import json
import logging
import math
import os.path
import sys

import numpy as np

import atomtwin
from atomtwin import compiler, config, constants, experiments, hardware, \
    noise, pulse
from atomtwin.experiments import ghz, qaoa, qpe
from atomtwin.hardware import rearrange
from atomtwin.noise import coherence, spam


__all__ = [
    'build_parser',
    'run_command',
    'main',
]

#: Exit status of a failed job.
EXIT_FAILURE = 1

#: Exit status of a usage error.
EXIT_USAGE = 2

log = logging.getLogger(__name__)


class UsageError(atomtwin.BaseError):
    """
    Raised for arguments the parser accepts but the job cannot use.
    """


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(value):
    try:
        return [float(v) for v in value.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected a comma separated list '
                                         'of numbers, got %r' % (value,))


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument('--config', default=None,
                        help='machine configuration file [default: shipped]')
    common.add_argument('--seed', type=int, default=None,
                        help='run seed [default: from the configuration]')
    common.add_argument('--out-dir', default='.',
                        help='output directory [default: %(default)s]')
    common.add_argument('--ideal', action='store_true',
                        help='switch every noise channel off')
    common.add_argument('--noise-scale', type=float, default=1.0,
                        help='multiply every noise rate [default: 1]')
    common.add_argument('--verbose', action='store_true',
                        help='log at debug level')

    parser = _Parser(prog='atomtwin',
                     description='Neutral atom quantum computer twin.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + str(atomtwin.__version__))
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    p = sub.add_parser('ghz', parents=[common],
                       help='GHZ preparation and parity analysis')
    p.add_argument('--n', type=int, default=6)
    p.add_argument('--shots', type=int, default=None)
    p.add_argument('--scan-points', type=int, default=None)
    p.add_argument('--layout', default='ghz6')
    p.add_argument('--series', action='store_true',
                   help='run every size 2..n and fit the decay')

    p = sub.add_parser('qpe', parents=[common],
                       help='quantum phase estimation')
    p.add_argument('--bits', type=int, default=3, choices=(2, 3))
    target = p.add_mutually_exclusive_group()
    target.add_argument('--z-power', type=float, default=None,
                        help='estimate the phase of Z^k')
    target.add_argument('--h2', action='store_true',
                        help='the H2 energy problem [default]')
    p.add_argument('--shots', type=int, default=None)
    p.add_argument('--layout', default=None)

    p = sub.add_parser('qaoa', parents=[common], help='QAOA MaxCut')
    p.add_argument('--graph', default='t4', choices=sorted(qaoa.GRAPHS))
    p.add_argument('--p', type=int, default=1)
    p.add_argument('--betas', type=_floats, default=None)
    p.add_argument('--gammas', type=_floats, default=None)
    p.add_argument('--restarts', type=int, default=qaoa.RESTARTS)
    p.add_argument('--shots', type=int, default=None)
    p.add_argument('--layout', default=None)

    p = sub.add_parser('tune-cz', parents=[common],
                       help='tune the Rydberg C_Z pulse')
    p.add_argument('--rabi', type=float, default=None,
                   help='Rydberg Rabi frequency (Hz)')
    p.add_argument('--blockade', type=float, default=None,
                   help='blockade shift (Hz)')
    p.add_argument('--scan', action='store_true',
                   help='also write the detuning scan table')

    sub.add_parser('trap-report', parents=[common],
                   help='trap profile and T2* grid')
    sub.add_parser('coherence-report', parents=[common],
                   help='coherence and local gate error budget')

    p = sub.add_parser('rearrange', parents=[common],
                       help='plan atom rearrangement')
    p.add_argument('--fill', type=float, default=0.6)
    p.add_argument('--targets', default=None,
                   help='layout group to fill [default: the central 3x3 '
                        'block]')

    p = sub.add_parser('compile', parents=[common],
                       help='compile an abstract program file')
    p.add_argument('program', help='program file, one gate per line')
    p.add_argument('--layout', required=True)
    p.add_argument('--no-optimise', action='store_true')

    return parser


def _write_csv(path, header, rows):
    with open(path, 'wt', newline='') as f:
        writer = csv.writer(f)
        writer.writerow(header)

        for row in rows:
            writer.writerow(row)


def _dict_table(rows):
    header = sorted(rows[0]) if rows else []

    return header, [[row[k] for k in header] for row in rows]


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)

    if isinstance(obj, np.floating):
        return float(obj)

    if isinstance(obj, np.ndarray):
        return obj.tolist()

    return str(obj)


class Runner(object):
    """
    Runs one parsed command against a L{MachineConfig<config.MachineConfig>}.
    """

    def __init__(self, options, machine, **kwargs):
        self.options = options
        self.machine = machine
        self.logger = kwargs.pop('logger', None)

        if options.seed is None:
            self.seed = machine.seed
        else:
            self.seed = options.seed

        if options.ideal:
            self.noise = None
        elif options.noise_scale != 1.0:
            self.noise = machine.noise.scaled(options.noise_scale)
        else:
            self.noise = machine.noise

    def shots(self):
        shots = getattr(self.options, 'shots', None)

        return self.machine.shots if shots is None else shots

    def layout(self, name):
        return experiments.get_layout(name, self.machine.layouts)

    def inputs(self, **kwargs):
        ret = {
            'ideal': self.noise is None,
            'noise_scale': self.options.noise_scale,
        }
        ret.update(kwargs)

        return ret

    def run(self):
        name = 'run_' + self.options.command.replace('-', '_')

        return getattr(self, name)()

    def run_ghz(self):
        """
        GHZ parity run. On a noisy run the fidelity is also SPAM corrected:
        readout loss and pumping error both count as per qubit loss for
        L{spam.spam_correct}.
        """
        o = self.options
        layout = self.layout(o.layout)
        shots = self.shots()

        result, scan, circuit, histogram = ghz.ghz_experiment(
            o.n, shots, o.scan_points, self.noise, self.seed, layout,
            self.machine.timing, logger=self.logger)

        metrics = result.as_dict()
        metrics['power_fraction'] = scan.power_fraction()

        if self.noise is not None:
            per_qubit = self.noise.readout_loss + self.noise.pumping_error
            corrected, clamped, _ = spam.spam_correct(
                result.fidelity, o.n, min(per_qubit, 0.5))
            metrics.update(fidelity_spam_corrected=corrected,
                           spam_clamped=clamped)
        tables = {'parity': (['phi', 'parity'], scan.rows())}

        if o.series:
            points = ghz.ghz_decay_series(
                range(2, o.n + 1), self.noise, shots, self.seed, layout,
                self.machine.timing, logger=self.logger)
            tables['series'] = (['n', 'fidelity'], points)

            if len(points) >= 4:
                a, b, c, residuals = ghz.fit_ghz_decay(points, True)
                metrics.update(fit_a=a, fit_b=b, fit_c=c,
                               fit_rms=float(np.sqrt(np.mean(residuals ** 2))))

        return experiments.ExperimentResult(
            'ghz', self.inputs(n=o.n, shots=shots, layout=o.layout,
                               scan_points=len(scan.phases)),
            self.seed, histogram, metrics,
            compiler.estimate_duration(circuit, self.machine.timing), tables)

    def run_qpe(self):
        o = self.options
        shots = self.shots()
        layout = self.layout(o.layout) if o.layout else None

        if o.z_power is not None:
            u_spec = {'z_power': o.z_power}
            problem = None
        else:
            problem = qpe.H2Problem()
            u_spec = problem

        result = qpe.qpe_run(u_spec, o.bits, shots, self.noise, self.seed,
                             layout, self.machine.timing, logger=self.logger)

        metrics = {
            'modal': result.modal,
            'phase': result.phase,
            'p_modal': result.probability(result.modal),
        }

        if problem is not None:
            metrics['energy'] = qpe.h2_energy(result.modal, problem)
            metrics['exact_phases'] = qpe.h2_phases(problem)

        inputs = self.inputs(bits=o.bits, shots=shots,
                             z_power=o.z_power, h2=problem is not None)

        if problem is not None:
            inputs['problem'] = problem.as_dict()

        rows = [(bits, count, count / float(shots))
                for bits, count in result.histogram.sorted_items()]

        return experiments.ExperimentResult(
            'qpe', inputs, self.seed, result.histogram, metrics,
            compiler.estimate_duration(result.circuit, self.machine.timing),
            {'counts': (['bits', 'count', 'fraction'], rows)})

    def run_qaoa(self):
        o = self.options
        shots = self.shots()
        graph = qaoa.GRAPHS[o.graph]
        layout = self.layout(o.layout or o.graph)
        metrics = {}

        if (o.betas is None) != (o.gammas is None):
            raise UsageError('give both --betas and --gammas')

        if o.betas is not None:
            betas, gammas = o.betas, o.gammas
        elif (o.graph, o.p) in qaoa.REFERENCE_ANGLES:
            betas, gammas = qaoa.REFERENCE_ANGLES[(o.graph, o.p)]
        else:
            betas, gammas, best = qaoa.qaoa_optimize(
                graph, o.p, o.restarts, self.seed, logger=self.logger)
            metrics['optimised_ratio'] = best

        result = qaoa.qaoa_run(graph, betas, gammas, shots, self.noise,
                               self.seed, layout, self.machine.timing,
                               logger=self.logger)
        metrics.update(
            ratio=result.ratio,
            sampled_ratio=result.sampled_ratio,
            expected_ratio=result.expected_ratio,
            s_max=qaoa.maxcut_oracle(graph)['s_max'],
        )

        return experiments.ExperimentResult(
            'qaoa', self.inputs(graph=o.graph, p=len(betas), betas=betas,
                                gammas=gammas, shots=shots),
            self.seed, result.histogram, metrics,
            compiler.estimate_duration(result.circuit, self.machine.timing),
            {'angles': (['layer', 'beta', 'gamma'],
                        [(k + 1, b, g) for k, (b, g) in
                         enumerate(zip(betas, gammas))])})

    def run_tune_cz(self):
        o = self.options
        p = self.machine.pulse
        omega_r = p['omega_r'] if o.rabi is None else 2 * math.pi * o.rabi
        blockade = p['blockade_b'] if o.blockade is None else \
            2 * math.pi * o.blockade

        gate = pulse.tune_cz(omega_r, blockade, p['omega_ratio_b'],
                             logger=self.logger)
        bell = pulse.bell_test(gate)
        _, leakage, distance = pulse.pulse_gate_unitary(gate)
        phases = gate.phases

        metrics = {
            'delta_over_omega': gate.pulse.delta / omega_r,
            'tau_cycles': gate.pulse.tau * omega_r / (2 * math.pi),
            'xi': gate.pulse.xi,
            'phase_error': phases.phase_error,
            'min_return': phases.min_return,
            'comp_phase_a': gate.comp_phase_a,
            'comp_phase_b': gate.comp_phase_b,
            'leakage': leakage,
            'distance': distance,
            'bell_fidelity': bell['F'],
        }
        tables = {}

        if o.scan:
            tables['scan'] = _dict_table(pulse.scan_detuning(
                omega_r, blockade, omega_ratio_b=p['omega_ratio_b'],
                logger=self.logger))

        return experiments.ExperimentResult(
            'tune-cz', self.inputs(omega_r=omega_r, blockade_b=blockade),
            self.seed, None, metrics, 2 * gate.pulse.tau, tables)

    def run_trap_report(self):
        trap = self.machine.trap
        profile = hardware.trap_profile(trap)
        temperatures = np.array([2, 5, 10, 20, 40]) * constants.UK
        sigmas = np.array([5, 10, 20, 40]) * 1e-7
        grid = coherence.coherence_grid(
            temperatures, sigmas, self.machine.coherence.b0,
            self.machine.coherence.eta)

        rows = [(k, profile[k]) for k in sorted(profile)]
        metrics = dict(profile)
        metrics.update(
            f_vib_radial_khz=profile['f_vib_radial'] / constants.KHZ,
            f_vib_axial_khz=profile['f_vib_axial'] / constants.KHZ,
            depth_x_mk=profile['depth_x'] / constants.K_B * 1e3,
            depth_z_mk=profile['depth_z'] / constants.K_B * 1e3,
        )

        return experiments.ExperimentResult(
            'trap-report', self.inputs(trap=trap.as_dict()), self.seed, None,
            metrics, None,
            {'profile': (['quantity', 'value'], rows),
             't2_grid': _dict_table(grid)})

    def run_coherence_report(self):
        inputs = self.machine.coherence
        model = noise.coherence_model(inputs)
        profile = hardware.trap_profile(
            self.machine.trap.replace(t_atom=inputs.t_atom))
        motion = coherence.position_dephasing(
            profile['sigma_x'], profile['sigma_z'], self.machine.trap.w,
            seed=self.seed)
        params = self.machine.noise
        intensity = 1 - noise.intensity_dephasing(
            math.pi, params.sigma_rel_intensity)
        budget = noise.error_budget([
            params.scattering_per_rz_pi, intensity, motion['epsilon_pi']])

        ns = list(range(1, 7))
        t2 = model['t2_star']
        times = [
            (n, coherence.ghz_coherence_time(n, t2, mode, seed=self.seed),
             mode)
            for mode in noise.DEPHASING_MODES for n in ns
        ]

        metrics = dict(model)
        metrics.update(
            motion_f_tau=motion['f_tau'],
            motion_epsilon_pi=motion['epsilon_pi'],
            intensity_epsilon_pi=intensity,
            epsilon_total=budget['epsilon_total'],
            f_tau=budget['f_tau'],
            slope_collective=coherence.coherence_slope(
                ns, t2, 'collective', seed=self.seed),
            slope_independent=coherence.coherence_slope(
                ns, t2, 'independent', seed=self.seed),
        )

        return experiments.ExperimentResult(
            'coherence-report', self.inputs(
                sigma_b=inputs.sigma_b, b0=inputs.b0, t_atom=inputs.t_atom,
                eta=inputs.eta),
            self.seed, None, metrics, None,
            {'ghz_coherence': (['n', 't_coherence', 'mode'], times)})

    def run_rearrange(self):
        o = self.options
        m = self.machine

        if o.targets:
            targets = self.layout(o.targets).sites
        else:
            r0 = m.rows // 2 - 1
            c0 = m.cols // 2 - 1
            targets = [(r0 + i, c0 + j) for i in range(3) for j in range(3)]

        occ = rearrange.random_occupancy(m.rows, m.cols, o.fill, targets,
                                         self.seed)
        plan = rearrange.plan_rearrangement(occ, logger=self.logger)
        final = plan.execute(occ.occupied)

        metrics = {
            'atoms': len(occ.occupied),
            'targets': len(occ.targets),
            'moves': len(plan),
            'total_cost': plan.total_cost,
            'filled': occ.targets <= final,
        }
        rows = [(str(a), str(b)) for a, b in plan]

        return experiments.ExperimentResult(
            'rearrange', self.inputs(fill=o.fill, rows=m.rows, cols=m.cols,
                                     targets=[str(t) for t in sorted(
                                         occ.targets)]),
            self.seed, None, metrics, None,
            {'moves': (['from', 'to'], rows)})

    def run_compile(self):
        o = self.options

        try:
            with open(o.program, 'rt') as f:
                program = compiler.parse_program(f.read())
        except (IOError, OSError) as e:
            raise UsageError('cannot read %s: %s' % (o.program, e))

        circuit = compiler.compile(program, self.layout(o.layout),
                                   optimise=not o.no_optimise,
                                   logger=self.logger)
        text = atomtwin.encode(circuit).getvalue()

        with open(os.path.join(o.out_dir, 'compile.txt'), 'wt') as f:
            f.write(text)

        metrics = dict(circuit.counts())
        metrics['ops'] = len(circuit)

        return experiments.ExperimentResult(
            'compile', self.inputs(program=o.program, layout=o.layout),
            self.seed, None, metrics,
            compiler.estimate_duration(circuit, self.machine.timing))


def write_result(result, out_dir, config_hash):
    """
    Writes the JSON record and the CSV sidecars of C{result}.

    @return: The JSON path.
    """
    stem = os.path.join(out_dir, result.command)
    path = stem + '.json'

    with open(path, 'wt') as f:
        json.dump(result.to_document(config_hash), f, indent=2,
                  sort_keys=True, default=_json_default)
        f.write('\n')

    for name, (header, rows) in sorted(result.tables.items()):
        _write_csv('%s.%s.csv' % (stem, name), header, rows)

    return path


def run_command(argv, stdout=None, stderr=None):
    """
    Parses C{argv} (without the program name), runs the command and writes
    its outputs.

    @return: The exit status.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    try:
        options = build_parser().parse_args(argv)
    except UsageError as e:
        stderr.write('atomtwin: error: %s\n' % (e,))

        return EXIT_USAGE
    except SystemExit as e:
        # --help and --version
        return e.code or 0

    if options.verbose:
        log.setLevel(logging.DEBUG)

    try:
        machine = config.load_config(options.config)

        if not os.path.isdir(options.out_dir):
            os.makedirs(options.out_dir)

        runner = Runner(options, machine, logger=log)
        result = runner.run()
        write_result(result, options.out_dir, machine.hash)
    except UsageError as e:
        stderr.write('atomtwin: error: %s\n' % (e,))

        return EXIT_USAGE
    except (atomtwin.BaseError, IOError, OSError) as e:
        log.debug('%s failed', options.command, exc_info=True)
        stderr.write('atomtwin %s: %s: %s\n' % (
            options.command, e.__class__.__name__, e))

        return EXIT_FAILURE

    stdout.write(result.summary() + '\n')

    return 0


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]

    verbose = '--verbose' in argv

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s %(levelname)-5.5s [%(name)s] %(message)s'
    )

    return run_command(argv)


if __name__ == '__main__':
    sys.exit(main())
