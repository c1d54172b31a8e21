"""
shellswarm parser information and documentation
"""

from pathlib import Path
import argparse
import logging
import os


def get_version():
    """
    Return shellswarm version
    """

    from shellswarm import __version__
    return 'shellswarm v{version}'.format(version=__version__)


class ToPathAction(argparse.Action):
    """
    argparse action to convert string to Path objects
    """

    def __init__(self, option_strings, dest, required=False, **kwargs):

        argparse.Action.__init__(self,
                                 option_strings=option_strings,
                                 dest=dest,
                                 required=required,
                                 **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        if isinstance(values, (list, tuple)):
            values_ok = [Path(val).resolve() for val in values]
        else:
            values_ok = Path(values).resolve()

        setattr(namespace, self.dest, values_ok)


def parse_args(argv=None):
    """
    Command line parser for shellswarm experiments
    """

    parser = argparse.ArgumentParser(
        allow_abbrev=False,
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    parser.add_argument(
        '--version', action='version', version=get_version()
    )

    #========================================================#
    #=========== General arguments of any program ===========#
    #========================================================#

    main_parser = argparse.ArgumentParser(add_help=False)
    main_parser.add_argument(
        '--out', '--output', dest='output', type=str, default='output', action=ToPathAction,
        help='Path to output directory'
    )
    main_parser.add_argument(
        '--seed', type=int, default=0,
        help='Master seed for every random draw of the run'
    )
    main_parser.add_argument(
        '--tol', type=float, default=1e-10,
        help='Absolute quadrature tolerance'
    )
    main_parser.add_argument(
        '--debug', action='store_const', dest='loglvl', const=logging.DEBUG, default=logging.INFO,
        help='Print debugging statements'
    )
    main_parser.add_argument(
        '--quiet', action='store_const', dest='loglvl', const=logging.WARNING,
        help='Less verbose'
    )
    main_parser.add_argument(
        '--silent', action='store_const', dest='loglvl', const=logging.ERROR,
        help='Only error messages'
    )
    main_parser.add_argument(
        '--continue', action='store_true',
        help='Skip steps whose outputs already exist. The output directory needs to be the same.'
    )

    #========================================================#
    #=================== Kernel parameters ==================#
    #========================================================#

    kernel_parser = argparse.ArgumentParser(add_help=False)
    kernel_parser.add_argument(
        '--alpha', type=float, default=3.0,
        help='Attraction exponent of W(x) = |x|^alpha/alpha - |x|^beta/beta'
    )
    kernel_parser.add_argument(
        '--beta', type=float, default=2.0,
        help='Repulsion exponent (-dim < beta < alpha)'
    )
    kernel_parser.add_argument(
        '--dim', type=int, default=2,
        help='Ambient dimension n'
    )

    #========================================================#
    #===================== Measure files ====================#
    #========================================================#

    measure_parser = argparse.ArgumentParser(add_help=False)
    measure_parser.add_argument(
        '--measure', type=str, action=ToPathAction,
        help='Measure file: JSON {"dim": n, "points": [[...], ...], "weights": [...]}'
    )

    #========================================================#
    #====================== Subcommands =====================#
    #========================================================#

    profile_parser = argparse.ArgumentParser(add_help=False)
    profile_parser.add_argument(
        '--radii', type=float, nargs='+', default=[1.0],
        help='Shell radii of the mixture (0 is a point mass at the origin)'
    )
    profile_parser.add_argument(
        '--weights', type=float, nargs='+',
        help='Shell weights (uniform if not set)'
    )
    profile_parser.add_argument(
        '--r-max', type=float, default=3.0,
        help='Largest radius of the grid'
    )
    profile_parser.add_argument(
        '--grid-size', type=int, default=301,
        help='Number of grid radii on [0, r-max]'
    )

    ring_parser = argparse.ArgumentParser(add_help=False)
    ring_parser.add_argument(
        '--k', type=int, default=8,
        help='Number of atoms of the ring'
    )

    flow_parser = argparse.ArgumentParser(add_help=False)
    flow_parser.add_argument(
        '--particles', type=int, default=64,
        help='Number of particles (ignored when --measure is set)'
    )
    flow_parser.add_argument(
        '--dt', type=float, default=0.05,
        help='Time step of the RK4 integrator'
    )
    flow_parser.add_argument(
        '--t-end', type=float, default=20.0,
        help='Final time'
    )
    flow_parser.add_argument(
        '--residual-tol', type=float, default=1e-10,
        help='Stop when the largest particle speed falls below this value'
    )
    flow_parser.add_argument(
        '--stride', type=int, default=10,
        help='Record one state every %(default)s steps'
    )
    flow_parser.add_argument(
        '--initial', type=str, default='ring', choices=['ring', 'cloud'],
        help='Initial particles when --measure is not set: ring of radius 0.9 or uniform cloud in the unit cube'
    )
    flow_parser.add_argument(
        '--snapshots', action='store_true',
        help='Also save every recorded state as a measure file'
    )

    distance_parser = argparse.ArgumentParser(add_help=False)
    distance_parser.add_argument(
        '--other', type=str, action=ToPathAction,
        help='Second measure file. If not set, the distance to the minimizing family is computed'
    )
    distance_parser.add_argument(
        '--p', type=float, default=2.0,
        help='Distance exponent, in [1, inf]'
    )

    trials_parser = argparse.ArgumentParser(add_help=False)
    trials_parser.add_argument(
        '--trials', type=int, default=200,
        help='Number of random neutral measures'
    )

    lyapunov_parser = argparse.ArgumentParser(add_help=False)
    lyapunov_parser.add_argument(
        '--deltas', type=float, nargs='+', default=[0.01, 0.02, 0.05],
        help='Initial d_alpha distances to the shell minimizer'
    )

    verify_parser = argparse.ArgumentParser(add_help=False)
    verify_parser.add_argument(
        '--checks', type=str, nargs='+',
        help='Only run these checks (all by default)'
    )

    subparsers = parser.add_subparsers(title='action', dest='action')

    subparsers.add_parser(
        'energy', parents=[main_parser, kernel_parser, measure_parser],
        help='Interaction energy 1/2 sum_ij w_i w_j W(x_i - x_j) of a measure file',
        description=('E[mu] = 1/2 sum_ij w_i w_j W(x_i - x_j) with W(x) = |x|^alpha/alpha - |x|^beta/beta, '
                     'together with the largest particle speed and the Euler-Lagrange residual of the measure'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'radial-profile', parents=[main_parser, kernel_parser, profile_parser],
        help=("f(r) = (W * mu)(r e1) and f', f'', f''' for a shell mixture (beta=2), "
              'with inflection and minimum radii'),
        description=("f(r) = (W * mu)(r e1) for mu = sum_i w_i sigma_{R_i} and beta = 2, with f', f'' and f''' "
                     "on [0, r_max]. Reports the radius where f'' vanishes and the radius where f is "
                     'minimal (0 when f is increasing)'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'shell-radius', parents=[main_parser, kernel_parser],
        help=('Steady shell radius: Gamma closed form, c_beta/c_alpha force balance '
              'and root of f\'_{sigma_R}(R) = 0, with the closed forms of r*'),
        description=('Radius R of the steady uniform shell: R^(alpha-beta) = c_beta/c_alpha with '
                     'c_alpha = int |e1 - y|^(alpha-2) (1 - y1) dsigma(y), its Gamma closed form '
                     "R = 1/2 [G((b+n-1)/2) G(a/2+n-1) / (G(b/2+n-1) G((a+n-1)/2))]^(1/(a-b)), "
                     "the root of f'_{sigma_R}(R) = 0 for beta = 2, the diameter bound and the stability regime"),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'ring', parents=[main_parser, kernel_parser, ring_parser],
        help='Steady radius of the k-ring and its Euler-Lagrange residuals',
        description=('Radius R_k of the steady ring of k equal masses at R exp(2 pi i m/k): the radial '
                     'force on the atom at R e1, sum_m grad W(R e1 - R exp(2 pi i m/k)) . e1, vanishes. '
                     'Also reports the Euler-Lagrange residuals of the ring and the shell radius'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'simplex', parents=[main_parser, kernel_parser],
        help='Unit simplex: second moments Id/(2n+2) and energy',
        description=('Uniform measure on the vertices of the centered regular unit n-simplex: '
                     'second moment matrix int x x^T dmu = Id/(2n+2), circumradius and energy'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'flow', parents=[main_parser, kernel_parser, measure_parser, flow_parser],
        help='Particle flow dx_i/dt = -sum_j w_j grad W(x_i - x_j) (RK4, energy watchdog)',
        description=('Particle flow dx_i/dt = -sum_j w_j grad W(x_i - x_j), integrated with RK4 until t_end '
                     'or until the largest speed drops below --residual-tol. A step that raises the energy '
                     'is retried with half the time step'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'distance', parents=[main_parser, kernel_parser, measure_parser, distance_parser],
        help='Wasserstein distance d_p between uniform measures of equal size',
        description=('d_p(mu, nu) = (min over permutations s of 1/N sum_i |x_i - y_s(i)|^p)^(1/p) between uniform '
                     'measures of N atoms, and d_inf = min over s of max_i |x_i - y_s(i)| (bottleneck). '
                     'Without --other the distance is taken to the minimizing family, modulo translations'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'convexity', parents=[main_parser, kernel_parser, trials_parser],
        help='Sign of F_alpha(rho) = sum_ij s_i s_j |x_i - x_j|^alpha on random neutral measures',
        description=('F_alpha(rho) = sum_ij s_i s_j |x_i - x_j|^alpha for neutral measures rho = sum_i s_i delta_{x_i}, '
                     'sum_i s_i = 0: sign on random trials compared with the sign predicted from alpha and n'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'lyapunov', parents=[main_parser, kernel_parser, lyapunov_parser, flow_parser],
        help='Sup over the flow of the d_alpha distance to the minimizer, for perturbed shells',
        description=('Shell proxies of N atoms perturbed to d_alpha distance delta and evolved by the flow: '
                     'sup_t d_alpha(mu_t, minimizers) <= 5 delta + 2 sin(pi/(2N)) R, R the shell radius'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )
    subparsers.add_parser(
        'verify', parents=[main_parser, verify_parser],
        help='Run the acceptance suite (exit code 5 on failure)',
        description=('Acceptance suite: radius-consistency, g-integrals, third-derivative, alpha-4-degeneracy, '
                     'convexity-signs, fourier-identity, ring-steady-states, flow, one-dimensional-minimizer, '
                     'lyapunov and transport. The report is saved to verify.json; exit code 5 if a check fails'),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )

    args = parser.parse_args(argv)

    if args.action is None:
        parser.print_usage()
        parser.exit(2, 'shellswarm: error: a subcommand is required\n')

    os.environ['SHELLSWARM_CONTINUE'] = 'Y' if getattr(args, 'continue') else 'N'

    return args
