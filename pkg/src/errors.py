"""
Exceptions raised by the reduction lab. Verification code reports failures instead of raising them.
"""


class ReductionLabError(Exception):
    pass


class InvalidArgumentError(ReductionLabError, ValueError):
    pass


class NumericalConsistencyError(ReductionLabError):
    pass


class UnsupportedDegenerateError(ReductionLabError):
    pass


class MissingProbeError(ReductionLabError):
    pass


class ZeroProbabilityOutcomeError(ReductionLabError):
    def __init__(self, outcome, probability, floor):
        self.outcome = outcome
        self.probability = probability
        self.floor = floor
        super().__init__(f"outcome {outcome} has probability {probability:.3e} <= floor {floor:.1e}, "
                         f"the reduced state is not definite")


class NotCompletelyPositiveError(ReductionLabError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"Choi matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")


class NotAMeasurementError(ReductionLabError):
    """
    The map (or model) is not the operation of an apparatus measuring the given observable.
    """
    def __init__(self, condition, outcome, residual, tolerance):
        self.condition = condition
        self.outcome = outcome
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(f"not a measurement of the observable: {condition} violated at outcome {outcome} "
                         f"(residual {residual:.3e} > tol {tolerance:.1e})")


class ModelFileError(ReductionLabError):
    """
    Parse error in a model, observable or state file.
    """
    def __init__(self, path, field, message, line=None, column=None):
        self.path = path
        self.field = field
        self.line = line
        self.column = column
        location = str(path)
        if line is not None:
            location += f":{line}"
            if column is not None:
                location += f":{column}"
        where = f" (field '{field}')" if field else ""
        super().__init__(f"{location}{where}: {message}")
