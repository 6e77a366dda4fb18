"""
Exception hierarchy shared by the simulation, analysis and CLI layers.

Every class carries the process exit code the CLI maps it to:
  - 2  configuration / precondition violations
  - 3  numeric failures (rank deficiency, non-convergence, GGD inversion)
  - 4  I/O failures
"""


class McvdError(Exception):
    exit_code = 1


class ConfigError(McvdError, ValueError):
    exit_code = 2

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class DomainError(McvdError, ValueError):
    exit_code = 2


class GridMismatchError(DomainError):
    pass


class NumericError(McvdError, ArithmeticError):
    exit_code = 3


class RankDeficiencyError(NumericError):
    pass


class FitError(NumericError):
    def __init__(self, msg, result=None):
        super().__init__(msg)
        self.result = result


class GgdFitError(NumericError):
    pass


class FrameError(McvdError, ValueError):
    exit_code = 2


class UnsupportedCharacterError(FrameError):
    pass


class MissingStartError(FrameError):
    pass


class MissingTerminatorError(FrameError):
    pass


class UnknownCodeError(FrameError):
    pass


class OutputError(McvdError, OSError):
    exit_code = 4
