"""Exception hierarchy shared by the package."""


class GeoAtomsError(Exception):
    pass


class StructureError(GeoAtomsError, ValueError):
    """Malformed rotation / twin / sign data."""


class ConnectivityError(GeoAtomsError, ValueError):
    pass


class WrongSurfaceError(GeoAtomsError, ValueError):
    """A surface-specific criterion was applied to a graph on another surface."""


class DegenerateInputError(GeoAtomsError, ValueError):
    """Two geodesics share a carrier, or a spec is otherwise unusable."""


class GeneralPositionError(DegenerateInputError):
    """Three or more branches meet at one point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NotAdmissibleError(GeoAtomsError, ValueError):
    def __init__(self, reason):
        super().__init__(f"not an admissible pair: {reason}")
        self.reason = reason


class WalkBudgetExceeded(GeoAtomsError, RuntimeError):
    pass
