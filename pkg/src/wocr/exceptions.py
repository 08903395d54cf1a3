"""Exception types raised across the package."""


class WOCRError(ValueError):
    """Base class for all input/numerical errors raised by wocr."""


class DimensionMismatch(WOCRError):
    pass


class ConstantColumn(WOCRError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"column {column} has zero variance")


class ZeroMatrix(WOCRError):
    pass


class MissingParam(WOCRError):
    pass


class DegenerateDF(WOCRError):
    pass


class NonpositiveSSE(WOCRError):
    pass


class AllInfinite(WOCRError):
    pass


class SingularFit(WOCRError):
    pass


class TooFewRows(UserWarning):
    """Training split smaller than p + 2; full-rank baselines are unreliable."""
