"""
Configuration object to handle CLI, loading/resuming runs
"""

from pathlib import Path
import logging
import copy

import yaml

from shellswarm.core.kernel import Kernel, KernelParams
from shellswarm.errors import UsageError
from shellswarm.log import setup_logger

PATH_INPUTS = {'output', 'measure', 'other'}


class Configuration:
    """
    Configuration object to handle command line arguments.
    Together with the subcommand, it fully determines the outputs of a run.
    """

    def __init__(self):
        self.io = {}
        self.alpha = 3.0
        self.beta = 2.0
        self.dim = 2
        self.seed = 0
        self.tol = 1e-10
        self.loglvl = logging.INFO

    def log(self, msg, level):
        """
        Useful wrapper for logging
        """
        try:
            logger = setup_logger('<shellswarm>', self.io['log'], self.loglvl)
        except (KeyError, AttributeError):
            logger = logging.getLogger('<shellswarm>')
        getattr(logger, level)(msg)

    @classmethod
    def from_yaml(cls, filepath):
        """
        Load config from saved file
        """

        config = Configuration()

        with open(str(filepath), 'r') as handle:
            kwargs = yaml.safe_load(handle) or {}

        io = kwargs.pop('io', {})
        # Reset output in case the folder was moved
        io['output'] = Path(filepath).parent
        config.init_config(**io, **kwargs)

        return config

    def init_config(self, **kwargs):
        """
        Make configuration from CLI
        """

        for (name, value) in kwargs.items():
            if name in PATH_INPUTS:
                self.set_input(name, value)
            else:
                setattr(self, name, value)

        Path(self.io['output']).mkdir(exist_ok=True, parents=True)
        self.set_outputs()

    def set_input(self, name, val):
        """
        Check inputs are well formatted before setting them
        """

        if val is None:
            self.io.pop(name, None)
            return

        filepath = Path(val)

        if name in {'measure', 'other'} and filepath.suffix != '.json':
            self.log(f'Measure files are JSON documents, got {filepath.name}', 'critical')
            raise UsageError(f'Unknown measure file extension: {filepath.suffix}')

        self.io[name] = filepath

    def set_outputs(self):
        """
        Define output file path for all subcommands
        """

        output_files = dict(
            log='shellswarm.log',
            energy='energy.json',
            profile='radial-profile.csv',
            shell_radius='shell-radius.json',
            ring='ring.json',
            simplex='simplex.json',
            trajectory='trajectory.csv',
            flow='flow.json',
            snapshots='snapshots',
            distance='distance.json',
            convexity='convexity.json',
            lyapunov='lyapunov.csv',
            lyapunov_summary='lyapunov.json',
            verify='verify.json'
        )

        for (name, filename) in output_files.items():
            output_files[name] = Path(self.io['output'], filename)

        self.io.update(output_files)

    def kernel_params(self):
        return KernelParams(self.alpha, self.beta, self.dim)

    def kernel(self):
        return Kernel(self.kernel_params())

    def to_yaml(self):
        """
        Save configuration to YAML file
        """

        to_save = self.__dict__
        config_file = Path(self.io['output'], 'config.yaml')

        if config_file.is_file() and config_file.stat().st_size > 0:
            complete_conf = copy.deepcopy(Configuration.from_yaml(config_file).__dict__)
            complete_conf.update(copy.deepcopy(to_save))
        else:
            complete_conf = copy.deepcopy(to_save)

        io_to_keep = {k: v for (k, v) in self.io.items() if k in PATH_INPUTS}
        complete_conf['io'] = io_to_keep

        complete_conf = path_to_str(complete_conf)

        with open(config_file, 'w') as handle:
            yaml.safe_dump(complete_conf, handle)


def path_to_str(obj):
    if isinstance(obj, Path):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [path_to_str(x) for x in obj]
    if isinstance(obj, dict):
        return {k: path_to_str(v) for k, v in obj.items()}
    return obj
