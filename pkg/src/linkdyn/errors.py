"""Exception hierarchy shared by all linkdyn modules."""


class LinkdynError(Exception):
    """Base class for all errors raised by this package."""


class DiagramSyntaxError(LinkdynError):
    """Malformed line in the diagram DSL."""


class ValidationError(LinkdynError):
    """Structurally invalid diagram (shared dotted vertices, self-loop, ...)."""


class UnknownTypeError(LinkdynError):
    """A solid component matches no entry of the finite/affine catalog."""


class AffineComponentError(LinkdynError):
    """Operation requires finite-type components only."""


class BudgetExceededError(LinkdynError):
    """A configurable work budget (cycle count, rule applications) ran out."""


class UnsupportedEdgeOnCycleError(LinkdynError):
    """Triple/quadruple edge on a cycle in a mode that cannot weigh it."""


class InvalidPathError(LinkdynError):
    """Height trace requested along a sequence that is not a directed path."""


class NotLinkConnectedError(LinkdynError):
    """Decision procedures require the diagram to be connected as a graph."""


class SelfLinkPresentError(LinkdynError):
    """Dotted edge inside one component; handled by the selflink machinery."""


class NotDecidedError(LinkdynError):
    """construct_* called with a negative or missing decision."""


class NonInvertibleDivisorError(LinkdynError):
    """Chosen order shares a factor with an edge multiplicity it must invert."""


class BadPrimeError(LinkdynError):
    """Realization requires a prime p >= 5."""


class TooManyVerticesError(LinkdynError):
    """Realization over (Z/p)^2 only covers diagrams with <= 4 vertices."""


class UnsupportedDiagramError(LinkdynError):
    """5-vertex diagrams other than A4xA1 at p=5, and similar gaps."""


class RangeError(LinkdynError):
    """Arguments outside the defined range of a combinatorial function."""


class NonTerminatingError(LinkdynError):
    """Reduction exceeded its budget; rule set is suspected non-terminating."""


class InvalidDatumError(LinkdynError):
    """Linking datum violates its compatibility conditions."""


class NotAdmissibleError(LinkdynError):
    """Root vector parameter family violates the admissibility condition."""


class ZeroExponentError(LinkdynError):
    """Self-link order constraint degenerates (exponent expression is 0)."""
