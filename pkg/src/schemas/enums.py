from enum import StrEnum, auto


class BlockKind(StrEnum):
    """Kinds of real Jordan blocks."""

    ZERO = auto()
    REAL = auto()
    COMPLEX = auto()


class Construction(StrEnum):
    """Lifted point constructions, one per block kind."""

    CANONICAL = auto()
    HYPERCUBE = auto()
    POLYGON = auto()
    PRODUCT = auto()


class Scheme(StrEnum):
    """Available SDE discretization schemes."""

    EULER = auto()


class EnsembleKind(StrEnum):
    """Origin of a path ensemble."""

    SDE = auto()
    CTMC = auto()
    DTMC = auto()


class ValidationReference(StrEnum):
    """What the validate subcommand compares its paths against."""

    CLOSED_FORM = auto()
    SDE = auto()


class DeltaStrategy(StrEnum):
    """Time step search: stop at the first feasible doubling, or bisect down from it."""

    DOUBLING = auto()
    BISECTION = auto()
