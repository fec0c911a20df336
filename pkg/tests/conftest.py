import pytest

from src.polynomials import Polynomial
from src.schemas import ProcessSpec


def ou_spec(kappa: float = 1.0, theta: float = 0.5, alpha: float = 1.0, a: float = 0.0, A: float = 0.0) -> ProcessSpec:  # noqa: N803
    """b(x) = κ(Θ - x), a(x) = κ(α + ax + Ax²)."""
    x = Polynomial.variable(1, 0)
    drift = kappa * theta - kappa * x
    diffusion = kappa * (alpha + a * x + A * x * x)
    return ProcessSpec(d=1, drift=(drift,), diffusion=((diffusion,),))


def rotation_spec() -> ProcessSpec:
    """Planar drift (-x + 2y, -2x - y) with unit diffusion; G_1 has eigenvalues 0 and -1 ± 2i."""
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    one, zero = Polynomial.constant(2), Polynomial.zero(2)
    return ProcessSpec(d=2, drift=(-x + 2 * y, -2 * x - y), diffusion=((one, zero), (zero, one)))


@pytest.fixture
def ou():
    return ou_spec()


@pytest.fixture
def martingale():
    """𝒢f = -x f' + x² f''."""
    x = Polynomial.variable(1, 0)
    return ProcessSpec(d=1, drift=(-x,), diffusion=((2 * x * x,),))


@pytest.fixture
def rotation():
    return rotation_spec()
