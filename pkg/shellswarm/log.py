"""
Logging configuration and initialization
"""

from pathlib import Path
import logging
import psutil


LOGGER_NAMES = ('<shellswarm>', '<measures>', '<special>', '<potentials>', '<radial>',
                '<equilibria>', '<dynamics>', '<transport>', '<convexity>', '<acceptance>')


class MemoryTracer(logging.Filter):
    """
    Attach the memory used by the process (and its children) to each record.
    PSS is used on linux, RSS/USS on MacOS
    """

    def filter(self, record):
        process = psutil.Process()
        mem = process.memory_full_info()

        if hasattr(mem, 'pss'):
            mem = mem.pss
        else: # No PSS info for MacOS
            mem = mem.rss

        for child in process.children(recursive=True):
            try:
                mem += child.memory_full_info().pss
            except AttributeError: # No PSS info for MacOS
                mem += child.memory_full_info().uss
            except (psutil.NoSuchProcess, psutil.AccessDenied):
                pass

        record.mem = f'{mem/2**30:>5.1f} GB'

        return True


def setup_logger(name, log_file, level=logging.INFO):
    """
    Setup logging if not set, or return logger if already exists

    Args:
        name (str): name of logger
        log_file (Path): path to save logs
        level (int or str): log level for stderr
    Returns:
        logging.Logger
    """

    logger = logging.getLogger(name)
    if not any(isinstance(flt, MemoryTracer) for flt in logger.filters):
        logger.addFilter(MemoryTracer())

    logger.setLevel(logging.DEBUG)

    log_file = Path(log_file)
    handlers_for_file = [hdl for hdl in logger.handlers
                         if isinstance(hdl, logging.FileHandler)
                         and Path(hdl.baseFilename) == log_file.resolve()]

    if not handlers_for_file:
        if logger.hasHandlers():
            for hdl in list(logger.handlers):
                hdl.close()
            logger.handlers.clear()
        logger.propagate = False

        formatter = logging.Formatter(
            '{asctime} (Mem:{mem}) {name:^15} {levelname}: {message}',
            '%H:%M:%S',
            style="{"
        )

        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(str(log_file))
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

        console_handler = logging.StreamHandler()
        console_handler.setLevel(level if isinstance(level, int) else logging.getLevelName(level))
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    return logger


def setup_all_loggers(log_file, level=logging.INFO):
    """
    Route every module logger of the package to the same file / console

    Args:
        log_file (Path): path to save logs
        level (int or str): log level for stderr
    Returns:
        logging.Logger: the root '<shellswarm>' logger
    """

    for name in LOGGER_NAMES:
        setup_logger(name, log_file, level)

    return logging.getLogger('<shellswarm>')
