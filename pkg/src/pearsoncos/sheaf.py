"""Linear r-versus-cosine law for vectors with fixed L1/L2 norm ratios.

For two non-constant, non-negative vectors of length n with norm ratios a and
b, Pearson's r is an exact affine function of the cosine::

    r = n / (sqrt(n - a^2) * sqrt(n - b^2)) * (cos - a*b/n)

Varying (a, b) over a dataset gives a sheaf of lines; the (cos, r) cloud of
the dataset is the union of one point per line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from .errors import PearsonCosError, UndefinedMeasureError
from .matrix_io import DataMatrix, usable_vectors
from .measures import cosine, pearson
from .vectors import NormProfile, norm_ratio

# slack for cos/r/ratio range checks; values computed from data may sit one
# rounding step outside their mathematical interval
_RANGE_SLACK = 1e-12


@dataclass(frozen=True)
class SheafLine:
    n: int
    a: float
    b: float
    slope: float
    r_at_cos0: float
    cos_at_r0: float


@dataclass(frozen=True)
class Envelope:
    """The two extreme lines of a dataset's sheaf.

    ``min_line`` is built from the two smallest distinct norm-ratio values,
    ``max_line`` from the two largest ratios of distinct entities.
    """

    n: int
    min_line: SheafLine
    max_line: SheafLine
    ab_min: float
    ab_max: float
    min_pair: Tuple[str, str]
    max_pair: Tuple[str, str]


@dataclass(frozen=True)
class CloudPoint:
    pair: Tuple[str, str]
    cos: float
    r: float
    a: float
    b: float


def _check_ratio(value: float, n: int, name: str) -> None:
    if n < 2:
        raise PearsonCosError(f"vector length n must be >= 2, got {n}")
    if not value >= 1.0 - _RANGE_SLACK:
        raise PearsonCosError(f"norm ratio {name}={value!r} is below 1")
    if value * value >= n:
        raise UndefinedMeasureError(
            f"constant-vector ratio: line undefined ({name}={value!r} >= sqrt({n}))"
        )


def line_params(a: float, b: float, n: int) -> SheafLine:
    """Slope and intercepts of the r-vs-cos line for norm ratios ``a``, ``b``."""
    _check_ratio(a, n, "a")
    _check_ratio(b, n, "b")
    denom = math.sqrt(n - a * a) * math.sqrt(n - b * b)
    return SheafLine(
        n=int(n),
        a=float(a),
        b=float(b),
        slope=n / denom,
        r_at_cos0=-a * b / denom,
        cos_at_r0=a * b / n,
    )


def predict_r(line: SheafLine, cos: float) -> float:
    """Value of r on ``line`` at the given cosine.  Not clamped to [-1, 1]."""
    if not -_RANGE_SLACK <= cos <= 1.0 + _RANGE_SLACK:
        raise PearsonCosError(f"cosine {cos!r} outside [0, 1]")
    return line.slope * (cos - line.cos_at_r0)


def invert_cos(line: SheafLine, r: float) -> float:
    """Cosine at which ``line`` reaches the correlation ``r``."""
    if not -1.0 - _RANGE_SLACK <= r <= 1.0 + _RANGE_SLACK:
        raise PearsonCosError(f"correlation {r!r} outside [-1, 1]")
    n, a, b = line.n, line.a, line.b
    return (math.sqrt(n - a * a) * math.sqrt(n - b * b) * r + a * b) / n


def envelope(profiles: Sequence[NormProfile], n: int) -> Envelope:
    """Extreme sheaf lines of a dataset.

    The upper line (largest a*b) takes the two largest ratios from two
    different entities, ties allowed, so that no pair in the data can exceed
    it.  The lower line takes the smallest ratio and the next strictly larger
    ratio value; only when every ratio is equal does it fall back to a
    repeated value.  Equal ratios are ordered by label.
    """
    if len(profiles) < 2:
        raise PearsonCosError(f"need at least 2 profiles, got {len(profiles)}")
    for p in profiles:
        _check_ratio(p.ratio_a, n, f"a[{p.label}]")

    desc = sorted(profiles, key=lambda p: (-p.ratio_a, p.label))
    hi1, hi2 = desc[0], desc[1]

    asc = sorted(profiles, key=lambda p: (p.ratio_a, p.label))
    lo1 = asc[0]
    lo2 = next((p for p in asc[1:] if p.ratio_a > lo1.ratio_a), asc[1])

    min_line = line_params(lo1.ratio_a, lo2.ratio_a, n)
    max_line = line_params(hi1.ratio_a, hi2.ratio_a, n)
    return Envelope(
        n=int(n),
        min_line=min_line,
        max_line=max_line,
        ab_min=lo1.ratio_a * lo2.ratio_a,
        ab_max=hi1.ratio_a * hi2.ratio_a,
        min_pair=tuple(sorted((lo1.label, lo2.label))),
        max_pair=tuple(sorted((hi1.label, hi2.label))),
    )


def cloud(m: DataMatrix, orientation: str = "columns") -> List[CloudPoint]:
    """One (cos, r) point per unordered pair of usable entities, sorted by label pair."""
    vecs, dropped = usable_vectors(m, orientation, need_nonconstant=True)
    if len(vecs) < 2:
        raise PearsonCosError(
            f"need at least 2 usable {orientation}, found {len(vecs)} "
            f"({len(dropped)} excluded)"
        )
    ratios = {v.label: norm_ratio(v) for v in vecs}
    points = []
    for u, v in combinations(vecs, 2):
        if v.label < u.label:
            u, v = v, u
        points.append(
            CloudPoint(
                pair=(u.label, v.label),
                cos=cosine(u, v),
                r=pearson(u, v),
                a=ratios[u.label],
                b=ratios[v.label],
            )
        )
    points.sort(key=lambda p: p.pair)
    return points


def outside_band(points: Sequence[CloudPoint], env: Envelope) -> int:
    """Number of cloud points lying outside the band between the envelope lines.

    Diagnostic only: the envelope is descriptive and does not have to
    contain every point.
    """
    count = 0
    for p in points:
        lo = predict_r(env.max_line, p.cos)
        hi = predict_r(env.min_line, p.cos)
        lo, hi = min(lo, hi), max(lo, hi)
        if not lo - 1e-12 <= p.r <= hi + 1e-12:
            count += 1
    return count


def jaccard_from_cos(cos: float) -> float:
    """Jaccard index implied by a cosine when the two L2 norms are equal."""
    if not 0.0 <= cos <= 1.0:
        raise PearsonCosError(f"cosine {cos!r} outside [0, 1]")
    return cos / (2.0 - cos)


def cos_from_jaccard(j: float) -> float:
    """Inverse of :func:`jaccard_from_cos` (equal-L2-norm regime)."""
    if not 0.0 <= j <= 1.0:
        raise PearsonCosError(f"Jaccard index {j!r} outside [0, 1]")
    return 2.0 * j / (j + 1.0)


def predict_r_from_jaccard(line: SheafLine, j: float) -> float:
    return predict_r(line, cos_from_jaccard(j))


def identity_residual(point: CloudPoint, n: int) -> float:
    """|r - predicted r| for a cloud point on its own line; zero up to rounding."""
    return abs(point.r - predict_r(line_params(point.a, point.b, n), point.cos))
