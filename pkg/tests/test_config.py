'''
Unittest for Configuration object
'''

from pathlib import Path
import shutil

import pytest

from shellswarm.core.config import Configuration
from shellswarm.core.kernel import Kernel
from shellswarm.errors import UsageError

from tests.data import generate_measure_file


def test_init():
    '''
    Test __init__ method for Configuration object
    '''

    cfg1 = Configuration()

    assert hasattr(cfg1, 'io')
    assert (cfg1.alpha, cfg1.beta, cfg1.dim) == (3.0, 2.0, 2)


def test_init_config():
    '''
    Test init_config method for Configuration object
    '''

    kwargs = {'a': 1, 'measure': '/a/b/c.json', 'output': 'test123abc', 'alpha': 3.5}

    cfg = Configuration()
    cfg.init_config(**kwargs)

    assert cfg.a == kwargs['a']
    assert cfg.io['measure'] == Path(kwargs['measure'])
    assert cfg.io['output'].is_dir()
    assert cfg.io['profile'] == Path('test123abc', 'radial-profile.csv')
    assert isinstance(cfg.kernel(), Kernel)
    assert cfg.kernel_params().alpha == 3.5

    shutil.rmtree(cfg.io['output'])


def test_none_overrides(tmp_path):
    '''
    Unset CLI values replace the ones of a reloaded configuration
    '''

    cfg = Configuration()
    cfg.init_config(output=tmp_path, weights=[0.4, 0.6], measure=generate_measure_file(), other=None)
    cfg.to_yaml()

    cfg = Configuration.from_yaml(Path(tmp_path, 'config.yaml'))

    assert cfg.weights == [0.4, 0.6]
    assert 'measure' in cfg.io

    cfg.init_config(output=tmp_path, weights=None, measure=None)

    assert cfg.weights is None
    assert 'measure' not in cfg.io


def test_measure_extension():
    cfg = Configuration()

    with pytest.raises(UsageError):
        cfg.init_config(output='test_ext', measure='points.csv')

    shutil.rmtree('test_ext', ignore_errors=True)


def test_load_save():
    '''
    Test saving / loading configs
    '''

    kwargs = {'measure': generate_measure_file(),
              'output': Path('output'),
              'alpha': 2.5,
              'radii': [0.5, 1.0]}

    cfg = Configuration()
    cfg.init_config(**kwargs)
    cfg.to_yaml()

    config_file = Path(cfg.io['output'], 'config.yaml')

    cfg_loaded = Configuration.from_yaml(config_file)

    cfg_is_created = config_file.is_file()
    attrs_exist = all(getattr(cfg_loaded, k) == getattr(cfg, k)
                      for k, v in cfg_loaded.__dict__.items()
                      if not isinstance(v, dict))

    shutil.rmtree(cfg.io['output'])

    assert cfg_is_created
    assert attrs_exist
    assert cfg_loaded.io['measure'] == kwargs['measure']


if __name__ == '__main__':
    test_init_config()
    test_load_save()
