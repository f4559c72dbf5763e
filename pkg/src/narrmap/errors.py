"""Exception hierarchy. The CLI maps each family to an exit code."""


class NarrmapError(Exception):
    pass


class InputError(NarrmapError):
    """Unreadable, empty, or unsegmentable input (exit code 2)."""


class EncodingError(InputError):
    def __init__(self, message: str, offset: int):
        super().__init__(message)
        self.offset = offset


class EmptyInputError(InputError):
    pass


class SegmentationError(InputError):
    pass


class CrossTabError(InputError):
    pass


class ReportError(InputError):
    pass


class NumericalError(NarrmapError):
    """Linear-algebra failure (exit code 3)."""


class MetricError(NarrmapError):
    pass
