#!/usr/bin/env python
# coding=utf-8

"""
Command-line frontend for the vortex ring computations

Sub-commands:

    equilibrium  rotation frequency and positions of the polygonal ring
    spectrum     per-mode blocks, critical frequencies and stability
    continue     seed and continue a branch of relative periodic solutions
    choreo       scan a branch file for choreographies
    simulate     integrate the vortex equations directly

"""

from __future__ import division, print_function

import argparse
import logging
import os
import sys

import numpy as np
import six

from vortexsphere.applications.run_config import RunConfig, Command, Preset
from vortexsphere.dynamics.dynamics_oracle import SimState, SimulationMode, \
    integrate, ring_sphere_state, normalise_rows
from vortexsphere.equilibrium.ring_equilibrium import ring_positions, \
    ring_omega_forms, gradient_V
from vortexsphere.equilibrium.spectral_analysis import spectrum_report, \
    stability_verdict
from vortexsphere.geometry.sphere_geometry import stereo_lift
from vortexsphere.periodic.choreography import \
    scan_branch_for_choreographies, choreography_trajectory_rows, \
    reconverge_at, CHOREOGRAPHY_CSV_HEADER
from vortexsphere.periodic.continuation import branch_seed, \
    continue_branch, kappa_comparison
from vortexsphere.utils.branch_file import write_branch_file, \
    read_branch_file, write_choreography_report
from vortexsphere.utils.errors import VortexSphereError, UsageError
from vortexsphere.utils.json_reader import write_json, read_json, \
    write_csv, format_value
from vortexsphere.utils.versioning import get_version_string

logger = logging.getLogger(__name__)

NEAR_COLLISION_SEPARATION = 5e-7
LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


def _report(label, *values):
    six.print_(label + ': ' + ' '.join(format_value(value)
                                        for value in values))


def run_equilibrium(cfg):
    """Prints the rotation frequency, the positions and the gradient
    residual of the polygonal ring"""

    params = cfg.ring()
    positions = ring_positions(params).x
    residual = float(np.max(np.abs(gradient_V(positions, params))))
    direct, from_s1 = ring_omega_forms(params.n, params.r)

    _report('n', params.n)
    _report('r', params.r)
    _report('theta', params.theta)
    _report('omega', direct, from_s1)
    for index, (point, lifted) in enumerate(
            zip(positions, stereo_lift(positions)), 1):
        _report('x' + str(index), point[0], point[1], *lifted)
    _report('gradient residual', residual)

    if cfg.out:
        write_json(cfg.out, {"n": params.n, "r": params.r,
                             "theta": params.theta,
                             "omega": [direct, from_s1],
                             "positions": positions.tolist(),
                             "residual": residual})


def run_spectrum(cfg):
    """Prints the per-mode spectral table and the stability verdict"""

    params = cfg.ring()
    rows = spectrum_report(params, cfg.l_max)
    verdict = stability_verdict(params.n, params.theta)

    six.print_('k s_k b11 b22 nu_k resonances')
    for row in rows:
        nu_text = '' if row.nu_crit is None else format_value(row.nu_crit)
        flags = ' '.join('{}:{}'.format(l, j) for l, j in row.resonances)
        six.print_(' '.join([str(row.k), format_value(row.s_k),
                             format_value(row.block[0, 0].real),
                             format_value(row.block[1, 1].real),
                             nu_text, flags]))
    six.print_('verdict: ' + verdict.label)
    if verdict.failing_modes:
        six.print_('failing modes: ' +
                   ' '.join(str(k) for k in verdict.failing_modes))

    if cfg.out:
        write_json(cfg.out, {"n": params.n, "r": params.r,
                             "theta": params.theta,
                             "verdict": verdict.label,
                             "failing_modes": verdict.failing_modes,
                             "modes": [row.to_dict() for row in rows]})


def _continue_mode(cfg, params, k):
    seed, report = branch_seed(k, params, cfg.eps, cfg.p, cfg.l_max,
                               cfg.direction)
    if report.resonant:
        six.print_('Resonant critical frequency; branch is exploratory')
    branch = continue_branch(seed, cfg.steps, cfg.ds, tolerance=cfg.tol,
                             direction=cfg.direction,
                             resonant=report.resonant)
    return branch, report


def default_branch_filename(n, k, direction):
    """Name of the branch file of one mode and side of the kernel"""
    return 'branch_n{}_k{}_{}.json'.format(
        n, k, 'plus' if direction > 0 else 'minus')


def run_continue(cfg):
    """Seeds and continues one branch and writes the branch file. With
    --partner the branch of mode n-k is continued as well and compared
    with the first through the reflection kappa"""

    params = cfg.ring()
    branch, report = _continue_mode(cfg, params, cfg.k)
    out = cfg.out or default_branch_filename(params.n, cfg.k, cfg.direction)

    if cfg.partner:
        partner_k = params.n - cfg.k
        partner = branch
        if partner_k != cfg.k:
            partner = _continue_mode(cfg, params, partner_k)[0]
        if branch.points and partner.points:
            comparison = kappa_comparison(branch, partner)
            branch.kappa = comparison.to_dict()
            _report('kappa image residual', comparison.image_residual)
            if comparison.profile_gap is None:
                six.print_('kappa profile gap: no common frequencies')
            else:
                _report('kappa profile gap', comparison.profile_gap)
        if partner is not branch:
            partner_out = default_branch_filename(params.n, partner_k,
                                                  cfg.direction)
            if cfg.out:
                partner_out = os.path.splitext(cfg.out)[0] + '_partner.json'
            write_branch_file(partner_out, partner)
            six.print_('partner file: ' + partner_out)

    write_branch_file(out, branch)

    _report('nu_k', report.nu_k)
    _report('points', len(branch.points))
    six.print_('termination: ' + branch.termination)
    if branch.points:
        frequencies = branch.frequencies()
        _report('nu range', np.min(frequencies), np.max(frequencies))
        _report('max amplitude', np.max(branch.amplitudes()))
    six.print_('branch file: ' + out)


def run_choreo(cfg):
    """Scans a branch file and writes the choreography report"""

    try:
        branch = read_branch_file(cfg.branch)
    except (IOError, OSError, KeyError, ValueError) as error:
        raise UsageError('Cannot read branch file ' + cfg.branch + ': ' +
                         str(error))
    certs = scan_branch_for_choreographies(branch, cfg.denom_max)

    out = cfg.out or os.path.splitext(cfg.branch)[0] + '_choreo.json'
    write_choreography_report(out, cfg.branch, certs)

    for cert in certs:
        six.print_('point={} amplitude={} ell={} m={} k_tilde={} ({}) nu={} '
                   'alignment={} rotation={} {}'.format(
                       cert.point_index, format_value(cert.amplitude),
                       cert.ell, cert.m, cert.k_tilde, cert.k_tilde_mod_n,
                       format_value(cert.nu_target),
                       format_value(cert.alignment_residual),
                       format_value(cert.rotation_residual),
                       'accepted' if cert.accepted else 'rejected'))
    _report('certificates', len(certs))
    six.print_('report: ' + out)

    if cfg.trajectories:
        for cert in certs:
            if not cert.accepted:
                continue
            point = reconverge_at(branch.points[cert.point_index],
                                  cert.nu_target)
            filename = os.path.join(
                cfg.trajectories, 'choreography_{}_{}_point{}.csv'.format(
                    cert.ell, cert.m, cert.point_index))
            write_csv(filename, CHOREOGRAPHY_CSV_HEADER,
                      choreography_trajectory_rows(point, cert))


def initial_state(cfg):
    """The initial SimState of the simulate command"""

    if cfg.state:
        try:
            state = np.array(read_json(cfg.state), dtype=float)
        except (IOError, OSError, ValueError) as error:
            raise UsageError('Cannot read state file ' + cfg.state + ': ' +
                             str(error))
        width = 3 if cfg.mode == SimulationMode.SPHERE else 2
        if state.ndim != 2 or state.shape[1] != width:
            raise UsageError('State file must hold a list of ' + str(width) +
                             '-vectors for mode ' + cfg.mode)
        if cfg.mode == SimulationMode.SPHERE:
            state = normalise_rows(state)
    else:
        params = cfg.ring()
        positions = ring_positions(params).x
        if cfg.preset == Preset.NEAR_COLLISION:
            gap = positions[0] - positions[-1]
            positions[0] = positions[-1] + \
                NEAR_COLLISION_SEPARATION * gap / np.linalg.norm(gap)
        if cfg.mode == SimulationMode.SPHERE:
            state = ring_sphere_state(params) \
                if cfg.preset == Preset.RING else stereo_lift(positions)
        else:
            state = positions

    if cfg.perturb:
        random = np.random.RandomState(cfg.seed)
        state = state + cfg.perturb * random.standard_normal(state.shape)
        if cfg.mode == SimulationMode.SPHERE:
            state = normalise_rows(state)

    params = cfg.ring() if cfg.mode == SimulationMode.ROTATING_CHART \
        else None
    return SimState(cfg.mode, state, params=params)


def run_simulate(cfg):
    """Integrates the equations and writes the trajectory CSV"""

    trajectory = integrate(initial_state(cfg), cfg.t_end,
                           tolerance=cfg.integrator_tol, dt_out=cfg.dt_out)
    out = cfg.out or 'trajectory.csv'
    write_csv(out, trajectory.header(), trajectory.rows())
    _report('hamiltonian drift', trajectory.hamiltonian_drift())
    _report('moment drift', trajectory.moment_drift())
    six.print_('trajectory: ' + out)


COMMANDS = {
    Command.EQUILIBRIUM: run_equilibrium,
    Command.SPECTRUM: run_spectrum,
    Command.CONTINUE: run_continue,
    Command.CHOREO: run_choreo,
    Command.SIMULATE: run_simulate,
}


def _add_ring_arguments(parser):
    parser.add_argument("--n", type=int, default=None,
                        help="Number of vortices in the ring (at least 3)")
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--r", type=float, default=None,
                       help="Chart radius of the ring")
    group.add_argument("--theta", type=float, default=None,
                       help="Polar angle of the ring on the sphere, "
                            "in (0, pi)")


def _add_common_arguments(parser):
    parser.add_argument("--config", default=None,
                        help="JSON file supplying any of the long options; "
                             "options given on the command line win")
    parser.add_argument("--out", default=None,
                        help="Output file name")
    parser.add_argument("--p", type=int, default=None,
                        help="Fourier truncation order (default 32)")
    parser.add_argument("--tol", type=float, default=None,
                        help="Newton tolerance (default 1e-10)")
    parser.add_argument("-v", "--verbose", action='count', default=0,
                        help="Increase logging output (repeat for debug)")


def create_parser():
    """Argument parser with one sub-parser per command"""

    parser = argparse.ArgumentParser(
        description='Relative equilibria, periodic branches and '
                    'choreographies of vortex rings on the sphere')
    parser.add_argument("--version", action='version',
                        version=get_version_string())
    subparsers = parser.add_subparsers(dest='command')

    equilibrium = subparsers.add_parser(
        Command.EQUILIBRIUM, help="Report the polygonal relative equilibrium")
    spectrum = subparsers.add_parser(
        Command.SPECTRUM, help="Report the isotypic spectrum and stability")
    spectrum.add_argument("--l-max", dest='l_max', type=int, default=None,
                          help="Highest harmonic checked for resonances "
                               "(default 2p)")

    continuation = subparsers.add_parser(
        Command.CONTINUE, help="Continue a branch of periodic solutions")
    continuation.add_argument("--k", type=int, default=None,
                              help="Isotypic mode of the branch, 1..n-1")
    continuation.add_argument("--steps", type=int, default=None,
                              help="Number of branch points (default 50)")
    continuation.add_argument("--ds", type=float, default=None,
                              help="Initial arclength step (default 1e-2)")
    continuation.add_argument("--eps", type=float, default=None,
                              help="Seed amplitude (default 1e-3)")
    continuation.add_argument("--l-max", dest='l_max', type=int,
                              default=None,
                              help="Highest harmonic checked for resonances "
                                   "(default 2p)")
    continuation.add_argument("--direction", type=int, choices=[1, -1],
                              default=None,
                              help="Side of the kernel direction to follow")
    continuation.add_argument("--partner", action='store_true', default=None,
                              help="Also continue mode n-k and compare the "
                                   "two branches through the reflection "
                                   "kappa")

    choreo = subparsers.add_parser(
        Command.CHOREO, help="Certify choreographies along a branch")
    choreo.add_argument("--branch", default=None,
                        help="Branch file written by the continue command")
    choreo.add_argument("--denom-max", dest='denom_max', type=int,
                        default=None,
                        help="Largest ell and m considered (default 12)")
    choreo.add_argument("--trajectories", default=None,
                        help="Folder for CSV samples of accepted "
                             "choreographies")

    simulate = subparsers.add_parser(
        Command.SIMULATE, help="Integrate the vortex equations")
    simulate.add_argument("--mode", choices=SimulationMode.ALL, default=None,
                          help="Formulation of the equations")
    simulate.add_argument("--preset", choices=Preset.ALL, default=None,
                          help="Initial state when no state file is given")
    simulate.add_argument("--state", default=None,
                          help="JSON file with the initial positions")
    simulate.add_argument("--perturb", type=float, default=None,
                          help="Size of a seeded random perturbation")
    simulate.add_argument("--seed", type=int, default=None,
                          help="Random seed of the perturbation")
    simulate.add_argument("--t-end", dest='t_end', type=float, default=None,
                          help="Final time (default 10)")
    simulate.add_argument("--dt-out", dest='dt_out', type=float,
                          default=None,
                          help="Output interval (default 0.1)")
    simulate.add_argument("--integrator-tol", dest='integrator_tol',
                          type=float, default=None,
                          help="Local error tolerance (default 1e-10)")

    for subparser in [equilibrium, spectrum, continuation, choreo, simulate]:
        _add_ring_arguments(subparser)
        _add_common_arguments(subparser)
    return parser


def main(args=None):
    """Runs one command and returns the process exit code"""

    parser = create_parser()
    args = parser.parse_args(args)
    if not args.command:
        parser.print_usage()
        return UsageError.exit_code

    level = LOG_LEVELS[min(args.verbose, len(LOG_LEVELS) - 1)]
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        cfg = RunConfig.from_arguments(args)
        logger.info('Running %s with %s', cfg.command, cfg.to_dict())
        COMMANDS[cfg.command](cfg)
    except VortexSphereError as error:
        six.print_(type(error).__name__ + ': ' + str(error), file=sys.stderr)
        return error.exit_code
    return 0


if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
