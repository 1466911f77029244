"""Cosine thresholds above which Pearson correlations cannot be negative.

For a pair with norm ratios a, b the correlation crosses zero exactly at
``cos = a*b/n``.  Taking the largest product over the dataset gives a single
cosine threshold (``upper``) above which no pair has r < 0.  ``lower`` is
the zero-crossing of the sheaf's bottom line, a descriptive companion value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .errors import PearsonCosError
from .matrix_io import DataMatrix, usable_vectors
from .measures import cosine, pearson
from .sheaf import envelope, line_params
from .vectors import NormProfile, profile

# |r| below this is treated as zero when checking the sign guarantee
BOUNDARY_ATOL = 1e-10


@dataclass(frozen=True)
class ThresholdReport:
    n: int
    lower: float
    upper: float
    min_pair: Tuple[str, str]
    max_pair: Tuple[str, str]
    per_pair_mode: bool = False


@dataclass(frozen=True)
class Violation:
    pair: Tuple[str, str]
    cos: float
    r: float


def compute_thresholds(
    profiles: Sequence[NormProfile], n: int, per_pair_mode: bool = False
) -> ThresholdReport:
    """Dataset-level lower/upper cosine thresholds from the extreme norm ratios.

    ``per_pair_mode`` is only recorded on the report; callers that honour it
    prune each pair at its own :func:`pair_threshold` instead of ``upper``.
    """
    env = envelope(profiles, n)
    return ThresholdReport(
        n=env.n,
        lower=env.min_line.cos_at_r0,
        upper=env.max_line.cos_at_r0,
        min_pair=env.min_pair,
        max_pair=env.max_pair,
        per_pair_mode=per_pair_mode,
    )


def pair_threshold(a: float, b: float, n: int) -> float:
    """Cosine at which the correlation of a pair with ratios ``a``, ``b`` is exactly zero."""
    return line_params(a, b, n).cos_at_r0


def matrix_thresholds(
    m: DataMatrix, orientation: str = "columns", per_pair_mode: bool = False
) -> ThresholdReport:
    """:func:`compute_thresholds` over the usable (nonzero, non-constant) entities of ``m``."""
    vecs, _ = usable_vectors(m, orientation, need_nonconstant=True)
    if len(vecs) < 2:
        raise PearsonCosError(f"need at least 2 usable {orientation}, found {len(vecs)}")
    return compute_thresholds(
        [profile(v) for v in vecs], m.vector_length(orientation), per_pair_mode
    )


def verify_guarantee(
    m: DataMatrix,
    orientation: str = "columns",
    threshold: Optional[float] = None,
    atol: float = BOUNDARY_ATOL,
) -> List[Violation]:
    """Pairs whose cosine is above ``threshold`` yet whose correlation is negative.

    ``threshold`` defaults to the dataset's upper threshold, for which the
    list is provably empty.  Correlations within ``atol`` of zero are not
    reported; they sit on the r = 0 boundary up to rounding.
    """
    vecs, _ = usable_vectors(m, orientation, need_nonconstant=True)
    if len(vecs) < 2:
        raise PearsonCosError(f"need at least 2 usable {orientation}, found {len(vecs)}")
    if threshold is None:
        threshold = matrix_thresholds(m, orientation).upper
    out = []
    for u, v in combinations(vecs, 2):
        c = cosine(u, v)
        if c <= threshold:
            continue
        r = pearson(u, v)
        if r < -atol:
            pair = tuple(sorted((u.label, v.label)))
            out.append(Violation(pair=pair, cos=c, r=r))
    out.sort(key=lambda w: w.pair)
    return out
