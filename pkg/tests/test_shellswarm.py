'''
Tests for the command line subcommands
'''

from pathlib import Path
import re

import pytest
import numpy as np
import pandas as pd

from shellswarm import acceptance, errors
from shellswarm.shellswarm import main
from shellswarm.parser import parse_args
from shellswarm.util import read_json

from tests.data import generate_measure_file


def run(tmp_path, *argv):
    return main([argv[0], '--out', str(tmp_path), '--quiet', *argv[1:]])


def test_parser():
    '''
    Test parser
    '''

    args = parse_args(['ring', '--k', '5', '--alpha', '4'])

    assert args.action == 'ring'
    assert (args.k, args.alpha, args.beta) == (5, 4.0, 2.0)

    with pytest.raises(SystemExit) as err:
        parse_args([])
    assert err.value.code == 2


@pytest.mark.parametrize('action,relation', [
    ('energy', 'E[mu] = 1/2 sum_ij w_i w_j W(x_i - x_j)'),
    ('shell-radius', 'R^(alpha-beta) = c_beta/c_alpha'),
    ('ring', 'radial force on the atom at R e1'),
    ('distance', 'd_inf = min over s of max_i |x_i - y_s(i)|'),
    ('lyapunov', '<= 5 delta + 2 sin(pi/(2N)) R'),
    ('verify', 'ring-steady-states, flow, one-dimensional-minimizer'),
])
def test_subcommand_help(action, relation, capsys, monkeypatch):
    '''
    Each subcommand help states the relation it computes
    '''

    monkeypatch.setenv('COLUMNS', '1000')

    with pytest.raises(SystemExit) as err:
        parse_args([action, '--help'])

    assert err.value.code == 0
    assert relation in ' '.join(capsys.readouterr().out.split())


def test_documented_exit_codes():
    '''
    Every exit code of shellswarm.errors is listed in the usage docs
    '''

    codes = {cls.exit_code for cls in vars(errors).values()
             if isinstance(cls, type) and issubclass(cls, errors.ShellswarmError)}
    usage = Path(__file__).parents[1].joinpath('docs', 'source', 'basic-usage.rst').read_text()
    documented = {int(code) for code in re.findall(r'^(\d)    \S', usage, flags=re.MULTILINE)}

    assert codes == set(range(1, 10))
    assert documented == codes | {0}


def test_shell_radius(tmp_path):
    assert run(tmp_path, 'shell-radius', '--alpha', '3', '--dim', '2') == 0

    result = read_json(Path(tmp_path, 'shell-radius.json'))

    assert result['closed_form'] == pytest.approx(3*np.pi/16, abs=1e-12)
    assert result['rootfind'] == pytest.approx(3*np.pi/16, abs=1e-9)
    assert result['r_star']['flagged']
    assert result['stability']['regime'] == 'nonlinearly stable'
    assert Path(tmp_path, 'config.yaml').is_file()


def test_radial_profile(tmp_path):
    code = run(tmp_path, 'radial-profile', '--radii', '0.5', '1', '--weights', '0.4', '0.6',
               '--r-max', '2', '--grid-size', '41')
    frame = pd.read_csv(Path(tmp_path, 'radial-profile.csv'))

    assert code == 0
    assert len(frame) == 41
    assert frame.r.iloc[-1] == pytest.approx(2)


def test_radial_profile_steady_shell(tmp_path):
    '''
    A shell near its steady radius has an inflection and a minimum away from 0
    '''

    code = run(tmp_path, 'radial-profile', '--alpha', '3', '--radii', '0.589',
               '--r-max', '2', '--grid-size', '81')

    assert code == 0
    assert Path(tmp_path, 'radial-profile.csv').is_file()


def test_ring_and_simplex(tmp_path):
    assert run(tmp_path, 'ring', '--k', '6', '--alpha', '4') == 0
    assert run(tmp_path, 'simplex', '--alpha', '6', '--dim', '3') == 0

    ring = read_json(Path(tmp_path, 'ring.json'))
    simplex = read_json(Path(tmp_path, 'simplex.json'))

    assert ring['radius'] == pytest.approx(1/np.sqrt(3), abs=1e-12)
    assert simplex['moment_error'] < 1e-14
    assert len(simplex['vertices']) == 4


def test_energy(tmp_path):
    measure = generate_measure_file(6, 2, filename='cli_energy.json')

    assert run(tmp_path, 'energy', '--measure', str(measure)) == 0

    result = read_json(Path(tmp_path, 'energy.json'))

    assert result['n_atoms'] == 6
    assert np.isfinite(result['energy'])


def test_missing_measure(tmp_path):
    '''
    DomainError maps to exit code 6
    '''

    assert run(tmp_path, 'energy') == 6


def test_flow(tmp_path):
    code = run(tmp_path, 'flow', '--particles', '8', '--t-end', '0.5', '--dt', '0.1',
               '--stride', '1', '--snapshots')
    summary = read_json(Path(tmp_path, 'flow.json'))
    frame = pd.read_csv(Path(tmp_path, 'trajectory.csv'))

    assert code == 0
    assert summary['energy_nonincreasing']
    assert summary['final_time'] == pytest.approx(0.5)
    assert len(frame) == 6
    assert len(list(Path(tmp_path, 'snapshots').glob('state_*.json'))) == 6


def test_distance(tmp_path):
    first = generate_measure_file(8, 2, seed=1, filename='cli_first.json')
    second = generate_measure_file(8, 2, seed=2, filename='cli_second.json')

    assert run(Path(tmp_path, 'pair'), 'distance', '--measure', str(first), '--other', str(second), '--p', '1') == 0
    assert run(Path(tmp_path, 'family'), 'distance', '--measure', str(first)) == 0

    pair = read_json(Path(tmp_path, 'pair', 'distance.json'))
    family = read_json(Path(tmp_path, 'family', 'distance.json'))

    assert pair['distance'] > 0 and pair['p'] == 1
    assert family['target'] == 'minimizer'


def test_runs_do_not_leak(tmp_path):
    '''
    Options of an earlier run in the same directory do not carry over
    '''

    first = generate_measure_file(8, 2, seed=1, filename='cli_leak_first.json')
    second = generate_measure_file(8, 2, seed=2, filename='cli_leak_second.json')

    assert run(tmp_path, 'radial-profile', '--radii', '0.5', '1', '--weights', '0.4', '0.6',
               '--grid-size', '11') == 0
    assert run(tmp_path, 'radial-profile', '--radii', '1', '--grid-size', '11') == 0

    assert run(tmp_path, 'distance', '--measure', str(first), '--other', str(second)) == 0
    assert read_json(Path(tmp_path, 'distance.json'))['target'] == str(Path(second).resolve())

    assert run(tmp_path, 'distance', '--measure', str(first)) == 0
    assert read_json(Path(tmp_path, 'distance.json'))['target'] == 'minimizer'


def test_same_config_same_output(tmp_path):
    '''
    Identical command lines give byte-identical artifacts, whatever ran before
    '''

    argv = ('ring', '--k', '5', '--alpha', '3.5')

    assert run(Path(tmp_path, 'fresh'), *argv) == 0
    assert run(Path(tmp_path, 'reused'), 'ring', '--k', '9', '--alpha', '4') == 0
    assert run(Path(tmp_path, 'reused'), *argv) == 0

    assert (Path(tmp_path, 'fresh', 'ring.json').read_bytes()
            == Path(tmp_path, 'reused', 'ring.json').read_bytes())


def test_measure_format(tmp_path):
    '''
    Measure files other than JSON are a usage error (exit code 2)
    '''

    assert run(tmp_path, 'energy', '--measure', str(Path(tmp_path, 'points.txt'))) == 2


def test_unsupported_distance(tmp_path):
    '''
    No minimizing family is known for beta != 2: exit code 9
    '''

    measure = generate_measure_file(8, 2, filename='cli_unsupported.json')

    assert run(tmp_path, 'distance', '--measure', str(measure), '--beta', '1') == 9


def test_convexity(tmp_path):
    assert run(tmp_path, 'convexity', '--alpha', '3', '--dim', '1', '--trials', '10') == 0

    report = read_json(Path(tmp_path, 'convexity.json'))

    assert report['consistent']
    assert report['verdict'] == 'strictly positive'


def test_lyapunov(tmp_path):
    code = run(tmp_path, 'lyapunov', '--particles', '16', '--t-end', '0.2', '--dt', '0.1',
               '--stride', '1', '--deltas', '0.01', '0.02')
    frame = pd.read_csv(Path(tmp_path, 'lyapunov.csv'))

    assert code == 0
    assert list(frame.delta) == [0.01, 0.02]
    assert 'monotone' in read_json(Path(tmp_path, 'lyapunov.json'))


def test_verify(tmp_path, monkeypatch):
    '''
    Passing checks exit with 0, a failed check with 5; the report is saved in both cases
    '''

    assert run(Path(tmp_path, 'ok'), 'verify', '--checks', 'radius-consistency', 'g-integrals') == 0

    monkeypatch.setitem(acceptance.CHECKS, 'always-fails', lambda: (False, {'reason': 'test'}))
    assert run(Path(tmp_path, 'failed'), 'verify', '--checks', 'always-fails') == 5

    report = read_json(Path(tmp_path, 'failed', 'verify.json'))

    assert read_json(Path(tmp_path, 'ok', 'verify.json'))['passed']
    assert not report['passed']
    assert report['checks'][0]['measured'] == {'reason': 'test'}


def test_continue(tmp_path):
    '''
    With --continue an existing profile is not recomputed
    '''

    assert run(tmp_path, 'radial-profile', '--grid-size', '11') == 0

    output = Path(tmp_path, 'radial-profile.csv')
    output.write_text('kept')

    assert run(tmp_path, 'radial-profile', '--grid-size', '11', '--continue') == 0
    assert output.read_text() == 'kept'


if __name__ == '__main__':
    test_parser()
