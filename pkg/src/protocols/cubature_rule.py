from typing import Protocol, runtime_checkable

from src.schemas import FloatArray


@runtime_checkable
class CubatureRuleProtocol(Protocol):
    """Markov cubature rule on points of the state space."""

    @property
    def points(self) -> FloatArray: ...

    @property
    def H(self) -> FloatArray: ...  # noqa: N802

    def transition(self, t: float) -> FloatArray:
        """Transition matrix of the chain over [0, t]."""
        ...
