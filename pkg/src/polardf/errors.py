"""Exception hierarchy shared by the library and the CLI."""


class PolarDFError(Exception):
    """Base class for all errors raised by polardf."""


class DegenerateInputError(PolarDFError, ValueError):
    """Input carries no usable information (zero intensity, both arms silent)."""


class DegeneratePhaseError(PolarDFError, ValueError):
    """Phase of a receiver arm is undefined because its amplitude vanishes.

    Attributes
    ----------
    arm : int
        Index (1 or 2) of the offending arm.
    """

    def __init__(self, arm, message=None):
        self.arm = arm
        super().__init__(message or f"arm {arm} amplitude is zero; its phase is undefined")


class NoSolutionError(PolarDFError, ValueError):
    """No bearing candidate falls inside the arcsin domain."""


class ResolutionConflictError(PolarDFError, ValueError):
    """Multi-base resolution found no candidate inside the selection window.

    Attributes
    ----------
    candidates : list
        Candidate bearing sets (radians) per base, coarse to fine.
    """

    def __init__(self, message, candidates):
        self.candidates = candidates
        super().__init__(message)


class ScenarioError(PolarDFError, ValueError):
    """Invalid scenario configuration; ``field`` names the offending key."""

    def __init__(self, field, constraint):
        self.field = field
        self.constraint = constraint
        super().__init__(f"{field}: {constraint}")
