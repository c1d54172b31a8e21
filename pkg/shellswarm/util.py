"""
Helpful functions for shellswarm
"""

import os
import json
import logging
from pathlib import Path
from functools import wraps

import numpy as np
import pandas as pd

logger = logging.getLogger('<shellswarm>')

FLOAT_FORMAT = '%.12g'


def run_if_not_exists(keys=('output',)):
    """
    Decorator to skip function if the outputs defined in `keys` already exist.
    This decorator is overriden if the environment variable SHELLSWARM_CONTINUE
    is not 'Y'.

    Args:
        keys (tuple): outputs to verify
    Returns:
        function
    """

    def run_if_not_exists_key(func):

        @wraps(func)
        def wrapper(*args, **kwargs):
            exists = os.getenv('SHELLSWARM_CONTINUE') == 'Y'

            for key in keys:
                if kwargs.get(key) is None:
                    exists = False
                    break
                if isinstance(kwargs[key], dict):
                    exists &= all(Path(output).is_file() for output in kwargs[key].values())
                elif isinstance(kwargs[key], (list, tuple)):
                    exists &= all(Path(output).is_file() for output in kwargs[key])
                else:
                    exists &= Path(kwargs[key]).is_file()

            if exists:
                files = ', '.join(map(str, keys))
                logger.info(f'{func.__name__}: Existing {files} files found. Skipping step')
                return None

            return func(*args, **kwargs)

        return wrapper

    return run_if_not_exists_key


def make_rng(seed):
    """
    Numpy generator from an integer seed, or pass through an existing generator
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_rngs(seed, count):
    """
    `count` independent generators derived deterministically from one master seed
    """
    return [np.random.default_rng(child)
            for child in np.random.SeedSequence(seed).spawn(count)]


def to_builtin(obj):
    """
    Convert numpy containers / scalars and paths to JSON-friendly python objects
    """
    if isinstance(obj, dict):
        return {str(k): to_builtin(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_builtin(x) for x in obj]
    if isinstance(obj, np.ndarray):
        return to_builtin(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, Path):
        return str(obj)
    return obj


def write_json(data, output):
    """
    Save `data` as JSON with sorted keys (byte-stable for identical inputs)

    Args:
        data (dict): result to save
        output (Path): json file
    Returns:
        Path
    """
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    with open(output, 'w') as handle:
        handle.write(json.dumps(to_builtin(data), sort_keys=True, indent=2))
        handle.write('\n')
    return output


def read_json(path):
    """
    Load a JSON file
    """
    with open(str(path), 'r') as handle:
        return json.load(handle)


def write_csv(frame, output):
    """
    Save a dataframe (or dict of columns) as CSV with a fixed float format

    Args:
        frame (pd.DataFrame or dict): table to save
        output (Path): csv file
    Returns:
        Path
    """
    if not isinstance(frame, pd.DataFrame):
        frame = pd.DataFrame(frame)
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(output, index=False, float_format=FLOAT_FORMAT)
    return output
