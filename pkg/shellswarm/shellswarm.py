#!/usr/bin/env python
"""
Root script to run shellswarm experiments
"""

from pathlib import Path
import logging
import sys

import numpy as np

from shellswarm.log import setup_logger, setup_all_loggers
from shellswarm.core.config import Configuration
from shellswarm.core.measure import DiscreteMeasure
from shellswarm.parser import parse_args
from shellswarm.errors import AcceptanceError, ShellswarmError, DomainError
from shellswarm.util import run_if_not_exists, write_json
from shellswarm.special import shell_radius_closed_form, stability_regime, diameter_bound
from shellswarm.potentials import interaction_energy, force_residual
from shellswarm.radial import RadialMixture, radial_profile, inflection_and_min
from shellswarm.equilibria import (RingConfig, ring_measure, ring_steady_radius, simplex_measure,
                                   shell_radius_rootfind, r_star, euler_lagrange_residual)
from shellswarm.dynamics import evolve, random_cloud, lyapunov_sweep
from shellswarm.transport import wasserstein_p, distance_to_minimizer
from shellswarm.convexity import sign_classify
from shellswarm.acceptance import run_checks


def main(argv=None, **kwargs):
    """
    Power-law swarm equilibria: shells, rings, simplices, their stability
    and the convexity of the interaction energy

    Args:
        argv (list): command line arguments (sys.argv[1:] if None)
    Returns:
        int: exit code
    """

    args = parse_args(argv)

    params = vars(args)

    if kwargs:
        params.update(kwargs)

    Path(params['output']).mkdir(exist_ok=True, parents=True)
    logger = setup_all_loggers(Path(params['output'], 'shellswarm.log'), params['loglvl'])
    action = params.pop('action')

    # measure files not given on this command line are not reused from config.yaml
    for name in ('measure', 'other'):
        params.setdefault(name, None)

    prev_config = Path(params['output'], 'config.yaml')

    steps = {
        'energy': energy,
        'radial-profile': profile,
        'shell-radius': shell_radius,
        'ring': ring,
        'simplex': simplex,
        'flow': flow,
        'distance': distance,
        'convexity': convexity,
        'lyapunov': lyapunov,
        'verify': verify
    }

    try:
        if prev_config.is_file():
            cfg = Configuration.from_yaml(prev_config)
        else:
            cfg = Configuration()

        cfg.init_config(**params)
        cfg.to_yaml()

        steps[action](cfg)
    except ShellswarmError as err:
        logger.error(f'{action} failed ({type(err).__name__}): {err}')
        return err.exit_code

    return 0


def load_measure(cfg, key='measure'):
    if key not in cfg.io:
        cfg.log(f'--{key} is required for this subcommand', 'critical')
        raise DomainError(f'missing --{key}')
    measure = DiscreteMeasure.load(cfg.io[key])
    if measure.dim != cfg.dim:
        cfg.log(f'{cfg.io[key].name} lives in dimension {measure.dim}; using it instead of --dim {cfg.dim}', 'warning')
        cfg.dim = measure.dim
    return measure


def energy(cfg):
    """
    Energy, largest particle speed and Euler-Lagrange residual of a measure file

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    logger = setup_logger('<potentials>', cfg.io['log'], cfg.loglvl)

    measure = load_measure(cfg)
    kernel = cfg.kernel()

    result = dict(params=cfg.kernel_params()._asdict(),
                  n_atoms=len(measure),
                  energy=interaction_energy(kernel, measure),
                  force_residual=force_residual(kernel, measure),
                  center_of_mass=measure.center_of_mass(),
                  second_moments=measure.second_moment_matrix(),
                  support_diameter=measure.support_diameter())

    logger.info(f'E = {result["energy"]:.12g} for {len(measure)} atoms')

    write_json(result, cfg.io['energy'])


@run_if_not_exists(keys=('output',))
def _write_profile(mixture, params, grid, tol, output=None):
    prof = radial_profile(mixture, params, grid, tol=tol)
    prof.to_csv(output)
    return prof


def profile(cfg):
    """
    Radial profile f, f', f'', f''' of a shell mixture on [0, r_max]

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    logger = setup_logger('<radial>', cfg.io['log'], cfg.loglvl)

    mixture = RadialMixture(cfg.radii, cfg.weights, cfg.dim)
    grid = np.linspace(0, cfg.r_max, cfg.grid_size)

    prof = _write_profile(mixture, cfg.kernel_params(), grid, cfg.tol, output=cfg.io['profile'])

    if prof is None:
        return

    (r_inflect, r_min) = inflection_and_min(prof)
    logger.info(f"f'' vanishes at {r_inflect:.10f}, f' at {r_min:.10f}")
    logger.info(f"min f''' on (0, {cfg.r_max}]: {prof.f3[prof.grid > 0].min():.4e}")


def shell_radius(cfg):
    """
    All determinations of the steady shell radius

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    logger = setup_logger('<equilibria>', cfg.io['log'], cfg.loglvl)
    params = cfg.kernel_params()

    result = dict(params=params._asdict(),
                  closed_form=shell_radius_closed_form(params),
                  diameter_bound=diameter_bound(params) if params.beta > 0 else None,
                  stability=stability_regime(params))

    if params.beta > 1:
        result['rootfind'] = shell_radius_rootfind(params)
    if params.beta == 2:
        result['r_star'] = r_star(params)

    logger.info(f'R = {result["closed_form"]:.10f} (closed form)')

    write_json(result, cfg.io['shell_radius'])


def ring(cfg):
    """
    Steady k-ring radius and how far the ring is from minimizing

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    logger = setup_logger('<equilibria>', cfg.io['log'], cfg.loglvl)

    params = cfg.kernel_params()
    radius = ring_steady_radius(cfg.k, params)
    residual = euler_lagrange_residual(cfg.kernel(), ring_measure(RingConfig(cfg.k, radius)))

    logger.info(f'{cfg.k}-ring steady at R = {radius:.12f}, exterior gap {residual["exterior_min_gap"]:.3e}')

    write_json(dict(params=params._asdict(), k=cfg.k, radius=radius,
                    shell_radius=shell_radius_closed_form(params), **residual),
               cfg.io['ring'])


def simplex(cfg):
    """
    Unit simplex: moments and energy

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    logger = setup_logger('<equilibria>', cfg.io['log'], cfg.loglvl)

    n = cfg.dim
    measure = simplex_measure(n)
    moments = measure.second_moment_matrix()
    moment_error = float(np.abs(moments - np.eye(n)/(2*n+2)).max())

    logger.info(f'Second moments of the unit {n}-simplex differ from Id/(2n+2) by {moment_error:.2e}')

    write_json(dict(params=cfg.kernel_params()._asdict(), vertices=measure.points,
                    second_moments=moments, moment_error=moment_error,
                    circumradius=measure.support_radius(),
                    energy=interaction_energy(cfg.kernel(), measure)),
               cfg.io['simplex'])


def flow(cfg):
    """
    Evolve particles until t_end or until they stop

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    logger = setup_logger('<dynamics>', cfg.io['log'], cfg.loglvl)

    if 'measure' in cfg.io:
        start = load_measure(cfg)
    elif cfg.initial == 'ring':
        if cfg.dim != 2:
            raise DomainError('ring initial data needs --dim 2')
        start = ring_measure(RingConfig(cfg.particles, 0.9))
    else:
        start = random_cloud(cfg.particles, cfg.dim, cfg.seed)

    trajectory = evolve(start, cfg.kernel(), cfg.t_end, cfg.dt,
                        residual_tol=cfg.residual_tol, stride=cfg.stride)
    trajectory.to_csv(cfg.io['trajectory'])

    if cfg.snapshots:
        trajectory.write_snapshots(cfg.io['snapshots'])

    final = trajectory.final
    write_json(dict(params=cfg.kernel_params()._asdict(), policy=trajectory.policy,
                    final_time=final.time, final_energy=final.energy,
                    final_residual=final.force_residual,
                    energy_nonincreasing=trajectory.energy_nonincreasing(),
                    center_of_mass_drift=trajectory.center_of_mass_drift(),
                    final_diameter=final.measure.support_diameter(),
                    final_measure=final.measure.to_dict()),
               cfg.io['flow'])

    logger.info(f'Trajectory saved to {cfg.io["trajectory"]}')


def distance(cfg):
    """
    d_p between two measure files, or to the minimizing family

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    logger = setup_logger('<transport>', cfg.io['log'], cfg.loglvl)

    measure = load_measure(cfg)

    if 'other' in cfg.io:
        value = wasserstein_p(measure, load_measure(cfg, 'other'), p=cfg.p)
        target = str(cfg.io['other'])
    else:
        value = distance_to_minimizer(measure, cfg.kernel(), p=cfg.p, seed=cfg.seed)
        target = 'minimizer'

    logger.info(f'd_{cfg.p:g} = {value:.12g}')

    write_json(dict(p=cfg.p, distance=value, target=target), cfg.io['distance'])


def convexity(cfg):
    """
    Sign of F_alpha on random neutral measures

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    setup_logger('<convexity>', cfg.io['log'], cfg.loglvl)

    report = sign_classify(cfg.alpha, cfg.dim, trials=cfg.trials, seed=cfg.seed)
    write_json(report, cfg.io['convexity'])


def lyapunov(cfg):
    """
    Perturb the shell minimizer and follow the distance along the flow

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    logger = setup_logger('<dynamics>', cfg.io['log'], cfg.loglvl)

    (frame, monotone) = lyapunov_sweep(cfg.kernel_params(), cfg.deltas, particles=cfg.particles,
                                       t_end=cfg.t_end, dt=cfg.dt, seed=cfg.seed, stride=cfg.stride)
    frame.to_csv(cfg.io['lyapunov'], index=False, float_format='%.12g')

    write_json(dict(params=cfg.kernel_params()._asdict(), monotone=monotone,
                    within_bound=bool(frame['within_bound'].all())),
               cfg.io['lyapunov_summary'])

    logger.info(f'Envelope monotone in delta: {monotone}')


def verify(cfg):
    """
    Acceptance suite. The report is saved before failing.

    Args:
        cfg (shellswarm.core.config.Configuration)
    Returns:
        None
    """

    setup_logger('<acceptance>', cfg.io['log'], cfg.loglvl)

    report = run_checks(cfg.checks)
    write_json(report, cfg.io['verify'])

    if not report['passed']:
        raise AcceptanceError('acceptance suite failed')


if __name__ == '__main__':
    logging.captureWarnings(True)
    sys.exit(main())
