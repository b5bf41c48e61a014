class PBWError(Exception):
    """Base class for all package errors."""


class InputError(PBWError, ValueError):
    pass


class AlphabetMismatch(InputError):
    pass


class ValidationError(InputError):
    pass


class CapExceeded(PBWError):
    pass


class OrientationFailure(PBWError):
    pass


class NotSaturated(PBWError):
    pass


class NotGrouplikeBasis(PBWError):
    pass


class NotNilpotent(PBWError):
    pass


class DecompositionFailure(PBWError):
    pass


class ZeroTensorDegree(PBWError):
    pass


class PBWRequired(PBWError):
    pass


class HypothesisViolated(PBWError):
    pass


class Assume2Violated(HypothesisViolated):
    pass


class MissingStructure(PBWError):
    pass


class MethodDisagreement(PBWError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"PBW methods disagree: {report.summary()}")
