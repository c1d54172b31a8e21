"""
Exceptions raised by shellswarm, with the exit code the CLI maps them to
"""


class ShellswarmError(Exception):
    """
    Base class for every error raised by the library
    """
    exit_code = 1


class DomainError(ShellswarmError, ValueError):
    """
    Exponents, dimensions or measures outside the supported window
    """
    exit_code = 6


class PoleError(DomainError):
    """
    Gamma function evaluated at a nonpositive integer
    """


class SingularityError(DomainError):
    """
    Kernel or gradient evaluated where it is not defined (|x|=0)
    """


class QuadratureError(ShellswarmError, RuntimeError):
    """
    Tolerance could not be reached within the node budget
    """
    exit_code = 3


class BracketError(ShellswarmError, RuntimeError):
    """
    No sign change found to bracket a root
    """
    exit_code = 4


class AcceptanceError(ShellswarmError):
    """
    At least one check of the acceptance suite failed
    """
    exit_code = 5


class StructureError(ShellswarmError, RuntimeError):
    """
    Radial profile has more sign changes than allowed
    """
    exit_code = 7


class StepCollapseError(ShellswarmError, RuntimeError):
    """
    Energy watchdog kept halving dt below the floor
    """
    exit_code = 8


class UnsupportedInputError(ShellswarmError, ValueError):
    """
    Transport inputs (or minimizer family) not handled
    """
    exit_code = 9


class UsageError(ShellswarmError, ValueError):
    """
    Command line input argparse cannot reject by itself (e.g. a measure file format)
    """
    exit_code = 2
