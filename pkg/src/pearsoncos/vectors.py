"""Entity vectors, L1/L2 norms and norm-ratio profiles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import PearsonCosError, UndefinedMeasureError

__all__ = [
    "EntityVector",
    "NormProfile",
    "as_coords",
    "l1_norm",
    "l2_norm",
    "norm_ratio",
    "is_constant",
    "profile",
    "pow2_exponent",
]


def as_coords(values: Union["EntityVector", Sequence[float], np.ndarray]) -> np.ndarray:
    """Return a read-only float64 view of ``values``, rejecting negative coordinates."""
    if isinstance(values, EntityVector):
        return values.coords
    arr = np.array(values, dtype=np.float64)
    if arr.ndim != 1:
        raise PearsonCosError(f"expected a 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise PearsonCosError("vector contains non-finite values")
    if np.any(arr < 0):
        idx = int(np.flatnonzero(arr < 0)[0])
        raise PearsonCosError(f"negative coordinate {arr[idx]!r} at position {idx}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class EntityVector:
    """A labeled non-negative vector (one author, journal, term...)."""

    label: str
    coords: np.ndarray = field(repr=False)

    def __post_init__(self):
        coords = as_coords(self.coords)
        if coords.size < 2:
            raise PearsonCosError(f"vector {self.label!r} has length {coords.size}; need n >= 2")
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        return int(self.coords.size)

    def __len__(self) -> int:
        return self.n


@dataclass(frozen=True)
class NormProfile:
    label: str
    l1: float
    l2: float
    ratio_a: float
    n: int


def l1_norm(v) -> float:
    """Sum of the coordinates (the city-block norm)."""
    return math.fsum(as_coords(v))


def pow2_exponent(x: np.ndarray) -> int:
    """Exponent e with ``max(x) * 2**-e`` in [0.5, 1); rescaling by it is exact."""
    top = float(np.max(x)) if x.size else 0.0
    return 0 if top == 0.0 else math.frexp(top)[1]


def l2_norm(v) -> float:
    """Euclidean length of ``v``."""
    x = as_coords(v)
    e = pow2_exponent(x)
    xs = np.ldexp(x, -e)
    return math.ldexp(math.sqrt(math.fsum(xs * xs)), e)


def norm_ratio(v) -> float:
    """Ratio ``l1/l2``, lying in ``[1, sqrt(n)]``.

    For a binary vector with k ones this is sqrt(k).

    Raises:
        UndefinedMeasureError: if ``v`` is the zero vector.
    """
    l2 = l2_norm(v)
    if l2 == 0.0:
        raise UndefinedMeasureError("undefined norm ratio: zero vector")
    return l1_norm(v) / l2


def is_constant(v) -> bool:
    x = as_coords(v)
    return bool(x.size == 0 or np.all(x == x[0]))


def profile(v: EntityVector) -> NormProfile:
    """Norm profile of a nonzero entity vector."""
    l1 = l1_norm(v)
    l2 = l2_norm(v)
    if l2 == 0.0:
        raise UndefinedMeasureError(f"undefined norm ratio: {v.label!r} is the zero vector")
    return NormProfile(label=v.label, l1=l1, l2=l2, ratio_a=l1 / l2, n=v.n)
