"""
Exception hierarchy shared by every layer.

The classes derive from built-in exceptions so that callers may catch either
the specific type or the usual ValueError / RuntimeError / OverflowError.
"""


class InputError(ValueError):
    """Invalid argument: unknown node id, bad parameter, source used as destination."""


class GraphSchemaError(InputError):
    """A graph file does not follow the JSON graph schema or the edge-list format."""

    def __init__(self, message: str, record=None):
        self.record = record
        if record is not None:
            message = f"{message} (offending record: {record!r})"
        super().__init__(message)


class DegenerateInputError(InputError):
    """Point set cannot be triangulated: collinear, duplicated or exactly cocircular points."""


class CapacityError(RuntimeError):
    """Path enumeration stopped because more paths exist than the cap allows."""

    def __init__(self, cap: int, found: int):
        self.cap = cap
        self.found = found
        super().__init__(f"More than {cap} paths in bundle (stopped at path {found})")


class PathCountOverflowError(OverflowError):
    """Path count exceeds the largest count the exported tables can hold."""


class FlowConservationError(RuntimeError):
    """Equilibrium link flows across a level cut do not sum to one."""


class WidthBoundError(RuntimeError):
    """Effective width falls outside [1, number of cut links] by more than rounding error."""
