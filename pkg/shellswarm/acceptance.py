"""
Acceptance suite run by `shellswarm verify`. Each check recomputes a known
property of the equilibria, the radial profiles, the flow or the transport
distances and reports what it measured.
"""

import time
import logging

import numpy as np

from shellswarm.core.kernel import Kernel, KernelParams
from shellswarm.core.measure import DiscreteMeasure, SignedMeasure
from shellswarm.convexity import (NeutralMeasure, f_alpha_form, fourier_side,
                                  random_neutral_measure, sign_classify)
from shellswarm.dynamics import concentric_rings, evolve, lyapunov_sweep, random_cloud
from shellswarm.equilibria import (RingConfig, cross_polytope_measure, euler_lagrange_residual,
                                   local_minimality_check, ring_measure, ring_steady_radius,
                                   shell_proxy, shell_radius_rootfind, simplex_measure)
from shellswarm.errors import AcceptanceError, DomainError
from shellswarm.potentials import interaction_energy
from shellswarm.radial import (RadialMixture, g_alpha, g_capital, radial_profile,
                               shell_terms)
from shellswarm.special import shell_radius_closed_form
from shellswarm.transport import wasserstein_inf, wasserstein_p
from shellswarm.util import make_rng, spawn_rngs


logger = logging.getLogger('<acceptance>')

CHECKS = {}


def check(name):
    def register(func):
        CHECKS[name] = func
        return func
    return register


def reference_neutral_measure():
    """
    1/2 (delta_-1 + delta_1) - 1/2 (delta_-1/2 + delta_1/2)
    """
    return NeutralMeasure([-1, 1, -0.5, 0.5], [0.5, 0.5, -0.5, -0.5], dim=1)


@check('radius-consistency')
def check_radius():
    closed = [abs(shell_radius_closed_form(KernelParams(4, 2, n)) - np.sqrt(n/(2*n+2)))
              for n in range(1, 9)]
    rootfind = [abs(shell_radius_rootfind(KernelParams(a, 2, n)) - shell_radius_closed_form(KernelParams(a, 2, n)))
                for a in (2.5, 3, 3.5, 4) for n in (2, 3)]
    ring_limit = abs(shell_radius_rootfind(KernelParams(3, 2, 2)) - 3*np.pi/16)

    measured = dict(closed_form_error=max(closed), rootfind_error=max(rootfind),
                    error_3_2_2=ring_limit)
    passed = max(closed) < 1e-12 and max(rootfind) < 1e-8 and ring_limit < 1e-8

    return passed, measured


@check('g-integrals')
def check_g_integrals():
    grid = np.arange(1, 10) / 10

    planar = max(max(abs(g_alpha(2, r, 2)), abs(g_capital(2, r, 2))) for r in grid)
    spatial = min(min(g_alpha(a, r, 3), g_capital(a, r, 3)) for a in (2, 3) for r in grid)

    return planar < 1e-9 and spatial > 0, dict(max_planar=planar, min_spatial=spatial)


def _chained_differences(alpha, mixture, radii, h=1e-4):
    """
    Largest relative gap between each derivative and the central difference
    of the previous one
    """
    worst = 0.0
    for r in radii:
        (low, mid, high) = (mixture.terms(alpha, r-h), mixture.terms(alpha, r), mixture.terms(alpha, r+h))
        numeric = (high[:3] - low[:3]) / (2*h)
        worst = max(worst, float(np.max(np.abs(numeric - mid[1:]) / np.maximum(1.0, np.abs(mid[1:])))))
    return worst


@check('third-derivative')
def check_third_derivative(seed=11):
    grid = np.linspace(0.05, 3, 200)
    rng = make_rng(seed)

    min_f3, fd_error, identity_error = np.inf, 0.0, 0.0

    for alpha in (2.5, 3, 3.5):
        for n in (2, 3):
            params = KernelParams(alpha, 2, n)
            weights = rng.dirichlet(np.ones(5))
            mixtures = [RadialMixture.shell(1.0, n),
                        RadialMixture(rng.uniform(0.2, 1.5, 5), weights / weights.sum(), n)]

            for mixture in mixtures:
                profile = radial_profile(mixture, params, grid)
                min_f3 = min(min_f3, float(profile.f3.min()))

            fd_error = max(fd_error, _chained_differences(alpha, mixtures[0], (0.3, 0.6, 1.5, 2.5)))

            for r in (0.25, 0.5, 0.75, 1.5, 2.5):
                f3 = shell_terms(alpha, 1.0, r, n)[3]
                combination = (alpha-1)*g_alpha(alpha, r, n) + (4-alpha)*g_capital(alpha, r, n)
                identity_error = max(identity_error, abs(f3/(alpha-2) - combination))

    measured = dict(min_f3=min_f3, finite_difference_error=fd_error, identity_error=identity_error)
    passed = min_f3 > 0 and fd_error < 1e-5 and identity_error < 1e-8

    return passed, measured


@check('alpha-4-degeneracy')
def check_alpha_4():
    errors = dict(simplex=0.0, cross_polytope=0.0, shell_proxy=0.0)

    for n in (2, 3):
        kernel = Kernel(KernelParams(4, 2, n))
        target = -n / (8*(n+1))
        radius = np.sqrt(n/(2*n+2))
        measures = dict(simplex=simplex_measure(n),
                        cross_polytope=cross_polytope_measure(n, radius),
                        shell_proxy=shell_proxy(radius, n, 1024))
        for (name, measure) in measures.items():
            errors[name] = max(errors[name], abs(interaction_energy(kernel, measure) - target))

    radius = 0.7
    rho = NeutralMeasure.from_signed(SignedMeasure(ring_measure(RingConfig(3, radius)),
                                                   ring_measure(RingConfig(4, radius))))
    degenerate = abs(f_alpha_form(rho, 4))

    passed = (errors['simplex'] < 1e-12 and errors['cross_polytope'] < 1e-12
              and errors['shell_proxy'] < 1e-5 and degenerate < 1e-12)

    return passed, dict(errors, f4_triangle_minus_square=degenerate)


@check('convexity-signs')
def check_signs(trials=200, seed=5):
    reports = [sign_classify(alpha, n, trials=trials, seed=seed)
               for alpha in (0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4) for n in (1, 2, 3)]
    failed = [(r['alpha'], r['n']) for r in reports if not r['consistent']]

    rho = reference_neutral_measure()
    hand = dict(f1=f_alpha_form(rho, 1), f3=f_alpha_form(rho, 3), f4=f_alpha_form(rho, 4))
    hand_ok = (abs(hand['f1'] + 0.5) < 1e-12 and abs(hand['f3'] - 1) < 1e-12
               and abs(hand['f4'] - 3.375) < 1e-12)

    return not failed and hand_ok, dict(hand, inconsistent_cases=failed)


@check('fourier-identity')
def check_fourier(trials=20, seed=3):
    worst = 0.0
    for alpha in (1, 2.5, 3, 3.5):
        for rng in spawn_rngs(seed, trials):
            rho = random_neutral_measure(1, rng)
            direct = f_alpha_form(rho, alpha)
            worst = max(worst, abs(fourier_side(rho, alpha) - direct) / abs(direct))

    return worst < 1e-4, dict(max_relative_error=worst)


@check('ring-steady-states')
def check_rings():
    quartic = KernelParams(4, 2, 2)
    cubic = KernelParams(3, 2, 2)

    radius_error = max(abs(ring_steady_radius(k, quartic) - 1/np.sqrt(3)) for k in range(3, 13))

    radii = {k: ring_steady_radius(k, cubic) for k in (8, 16, 32)}
    gaps = [abs(radii[k] - 3*np.pi/16) for k in (8, 16, 32)]
    converging = gaps[0] > gaps[1] > gaps[2]

    residuals = [euler_lagrange_residual(Kernel(cubic), ring_measure(RingConfig(k, radius)))
                 for (k, radius) in radii.items()]
    grad_max = max(r['grad_max'] for r in residuals)
    exterior_gap = max(r['exterior_min_gap'] for r in residuals)

    quartic_gap = min(euler_lagrange_residual(Kernel(quartic), ring_measure(RingConfig(k, 1/np.sqrt(3))))['exterior_min_gap']
                      for k in (3, 4, 8))

    passed = (radius_error < 1e-10 and converging and grad_max < 1e-10
              and exterior_gap < 0 and quartic_gap >= -1e-12)
    measured = dict(quartic_radius_error=radius_error, cubic_radius_gaps=gaps, grad_max=grad_max,
                    max_exterior_gap_3_2=exterior_gap, min_exterior_gap_4_2=quartic_gap)

    return passed, measured


@check('flow')
def check_flow(clouds=10, seed=17):
    kernel = Kernel(KernelParams(3, 2, 2))
    start = ring_measure(RingConfig(64, 0.9))
    trajectory = evolve(start, kernel, t_end=400, dt0=0.1, residual_tol=1e-8, stride=10)

    final = trajectory.final.measure
    radius = float(np.linalg.norm(final.points - final.center_of_mass(), axis=1).mean())
    radius_error = abs(radius - ring_steady_radius(64, kernel.params))

    merged = evolve(concentric_rings([32, 32], [0.3, 0.9]), kernel, t_end=300, dt0=0.1,
                    residual_tol=1e-8, stride=500).final.measure
    merged_radius = float(np.linalg.norm(merged.points - merged.center_of_mass(), axis=1).mean())
    merged_error = abs(merged_radius - shell_radius_closed_form(kernel.params))

    cloud_kernel = Kernel(KernelParams(3.5, 2, 2))
    diameters = [evolve(random_cloud(200, 2, seed+i), cloud_kernel, t_end=5, dt0=0.05, stride=100).final.measure.support_diameter()
                 for i in range(clouds)]

    measured = dict(radius_error=radius_error, final_residual=trajectory.final.force_residual,
                    energy_nonincreasing=trajectory.energy_nonincreasing(),
                    center_of_mass_drift=trajectory.center_of_mass_drift(),
                    concentric_rings_error=merged_error,
                    max_cloud_diameter=max(diameters))
    passed = (radius_error < 5e-3 and measured['energy_nonincreasing']
              and merged_error < 1e-2
              and measured['center_of_mass_drift'] < 1e-9 and max(diameters) <= np.exp(0.5))

    return passed, measured


@check('one-dimensional-minimizer')
def check_1d_minimizer(seed=23):
    kernel = Kernel(KernelParams(3.5, 2, 1))
    minimizer = DiscreteMeasure([-0.5, 0.5])

    residual = euler_lagrange_residual(kernel, minimizer)
    perturbations = local_minimality_check(kernel, minimizer, trials=20, size=0.05, seed=seed)

    passed = residual['grad_max'] < 1e-12 and residual['exterior_min_gap'] >= 0 and perturbations['all_higher']

    return passed, dict(residual, min_energy_gap=perturbations['min_gap'])


@check('lyapunov')
def check_lyapunov(seed=29):
    (frame, monotone) = lyapunov_sweep(KernelParams(3, 2, 2), (0.01, 0.02, 0.05), particles=64,
                                       t_end=20, dt=0.05, seed=seed)

    return bool(frame['within_bound'].all()), dict(sweep=frame.to_dict(orient='list'), monotone=monotone)


@check('transport')
def check_transport(pairs=64, seed=31):
    worst = 0.0
    for (i, rng) in enumerate(spawn_rngs(seed, pairs)):
        size = 1 + i % 64
        a = DiscreteMeasure(rng.standard_normal(size))
        b = DiscreteMeasure(rng.standard_normal(size))
        for p in (2, 3):
            worst = max(worst, abs(wasserstein_p(a, b, p, method='sort') - wasserstein_p(a, b, p, method='assignment')))

    ring = ring_measure(RingConfig(4, 1.0)).replicated(512)
    bottleneck = wasserstein_inf(ring, shell_proxy(1.0, 2, 2048))
    chord_error = abs(bottleneck - 2*np.sin(np.pi/8))

    return worst < 1e-12 and chord_error < 1e-3, dict(sort_vs_assignment=worst, bottleneck_error=chord_error)


def run_checks(names=None):
    """
    Run the selected checks (all by default) in order

    Args:
        names (list): check names
    Returns:
        dict: passed, checks (name, passed, measured)
    """

    names = list(CHECKS) if not names else names
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise DomainError(f'unknown check(s): {", ".join(unknown)}')

    results = []

    for name in names:
        start = time.perf_counter()
        (passed, measured) = CHECKS[name]()
        elapsed = time.perf_counter() - start

        results.append(dict(name=name, passed=bool(passed), measured=measured))
        logger.log(logging.INFO if passed else logging.ERROR,
                   f'{name:>26}: {"ok" if passed else "FAILED"} ({elapsed:.1f}s)')

    return dict(passed=all(r['passed'] for r in results), checks=results)


def verify(names=None):
    """
    Run the suite and raise AcceptanceError if a check failed

    Returns:
        dict: report of run_checks
    """
    report = run_checks(names)
    if not report['passed']:
        failed = [r['name'] for r in report['checks'] if not r['passed']]
        logger.critical(f'Failed checks: {", ".join(failed)}')
        raise AcceptanceError(f'{len(failed)} acceptance check(s) failed', report)
    return report
