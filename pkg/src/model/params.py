"""Kinetic parameter records and the change to dimensionless variables."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.utils.errors import InvalidParameterError


@dataclass(frozen=True)
class DimensionalParams:
    """Rates of the original (dimensional) Goodwin kinetics.

    Attributes:
        v0, v1, v2: Transcription, translation and catalysis rates.
        k1, k2, k3: Degradation rate constants (1/time).
        Km: Binding-scale concentration.
        p: Hill coefficient.
    """
    v0: float
    v1: float
    v2: float
    k1: float
    k2: float
    k3: float
    Km: float
    p: float

    def __post_init__(self):
        for name in ("v0", "v1", "v2", "k1", "k2", "k3", "Km", "p"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise InvalidParameterError(f"{name} must be strictly positive, got {value}")
        if self.p < 1:
            raise InvalidParameterError(f"Hill coefficient p must be >= 1, got {self.p}")

    @property
    def time_scale(self) -> float:
        """The time scale (Km / (v0 v1 v2))^(1/3)."""
        return float(np.cbrt(self.Km / (self.v0 * self.v1 * self.v2)))


@dataclass(frozen=True)
class GoodwinParams:
    """Dimensionless degradation rates b1, b2, b3 and Hill coefficient p."""
    b1: float
    b2: float
    b3: float
    p: float
    sigma_time: Optional[float] = None

    def __post_init__(self):
        for name in ("b1", "b2", "b3"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise InvalidParameterError(f"{name} must be strictly positive, got {value}")
        if not np.isfinite(self.p) or self.p < 1:
            raise InvalidParameterError(f"Hill coefficient p must be >= 1, got {self.p}")
        if self.sigma_time is not None and not self.sigma_time > 0:
            raise InvalidParameterError(f"sigma_time must be positive, got {self.sigma_time}")

    @classmethod
    def uniform(cls, b: float, p: float) -> "GoodwinParams":
        """Parameters with b1 = b2 = b3 = b."""
        return cls(b, b, b, p)

    @property
    def b(self) -> tuple:
        return (self.b1, self.b2, self.b3)

    @property
    def product(self) -> float:
        """b1 b2 b3."""
        return self.b1 * self.b2 * self.b3

    @property
    def pair_sum(self) -> float:
        """b1 b2 + b1 b3 + b2 b3."""
        return self.b1 * self.b2 + self.b1 * self.b3 + self.b2 * self.b3

    @property
    def total(self) -> float:
        """b1 + b2 + b3."""
        return self.b1 + self.b2 + self.b3

    def as_dict(self) -> dict:
        return {"b1": self.b1, "b2": self.b2, "b3": self.b3, "p": self.p,
                "sigma_time": self.sigma_time}


def nondimensionalize(d: DimensionalParams) -> GoodwinParams:
    """
    Convert dimensional kinetics to the dimensionless form.

    Args:
        d: Dimensional rates (validated on construction).

    Returns:
        GoodwinParams with b_i = k_i * sigma and sigma_time = sigma,
        where sigma = (Km / (v0 v1 v2))^(1/3).
    """
    sigma = d.time_scale
    return GoodwinParams(
        b1=d.k1 * sigma,
        b2=d.k2 * sigma,
        b3=d.k3 * sigma,
        p=d.p,
        sigma_time=sigma,
    )
