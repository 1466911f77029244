"""Pairwise similarity and association measures.

All sums are accumulated with :func:`math.fsum`, so results do not depend on
coordinate order (a permuted vector has bit-identical norms) and the two
arguments are canonicalized before evaluation so that ``m(x, y) == m(y, x)``
holds exactly.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Tuple

import numpy as np

from .errors import PearsonCosError, UndefinedMeasureError
from .matrix_io import DataMatrix, format_float, usable_vectors
from .vectors import as_coords, is_constant, pow2_exponent


class SimilarityKind(str, enum.Enum):
    COSINE = "cosine"
    PEARSON = "pearson"
    JACCARD = "jaccard"
    DICE = "dice"
    PSEUDO_COSINE = "pseudocosine"


@dataclass(frozen=True)
class SimilarityMatrix:
    kind: SimilarityKind
    labels: Tuple[str, ...]
    values: np.ndarray = field(repr=False)
    excluded: Tuple[Tuple[str, str], ...] = ()


def _pair(x, y) -> Tuple[np.ndarray, np.ndarray]:
    cx, cy = as_coords(x), as_coords(y)
    if cx.shape != cy.shape:
        raise PearsonCosError(f"length mismatch: {cx.size} vs {cy.size}")
    # canonical argument order keeps every measure exactly symmetric
    if cx.tobytes() > cy.tobytes():
        cx, cy = cy, cx
    # every measure is invariant under a joint rescaling; this one is exact
    # and keeps squared coordinates away from underflow/overflow
    e = pow2_exponent(np.concatenate((cx, cy)))
    return np.ldexp(cx, -e), np.ldexp(cy, -e)


def _require_nonzero(x: np.ndarray, y: np.ndarray, name: str) -> None:
    if not (np.any(x) and np.any(y)):
        raise UndefinedMeasureError(f"{name} undefined for zero vector")


def _dot(x: np.ndarray, y: np.ndarray) -> float:
    return math.fsum(x * y)


def cosine(x, y) -> float:
    """Salton's cosine: inner product over the product of Euclidean norms."""
    x, y = _pair(x, y)
    _require_nonzero(x, y, "cosine")
    return _dot(x, y) / math.sqrt(_dot(x, x) * _dot(y, y))


def pearson(x, y) -> float:
    """Pearson's product-moment correlation.

    Evaluated on mean-centered coordinates, which is algebraically the same as
    the raw-sum formula but avoids its cancellation.

    Raises:
        UndefinedMeasureError: if either vector is constant (zero variance).
    """
    x, y = _pair(x, y)
    if is_constant(x) or is_constant(y):
        raise UndefinedMeasureError("Pearson undefined for constant vector")
    n = x.size
    dx = x - math.fsum(x) / n
    dy = y - math.fsum(y) / n
    return _dot(dx, dy) / math.sqrt(_dot(dx, dx) * _dot(dy, dy))


def jaccard(x, y) -> float:
    x, y = _pair(x, y)
    _require_nonzero(x, y, "Jaccard")
    xy = _dot(x, y)
    return xy / (_dot(x, x) + _dot(y, y) - xy)


def dice(x, y) -> float:
    x, y = _pair(x, y)
    _require_nonzero(x, y, "Dice")
    return 2.0 * _dot(x, y) / (_dot(x, x) + _dot(y, y))


def pseudo_cosine(x, y) -> float:
    """Cosine with the L1 norms in the denominator instead of the L2 norms."""
    x, y = _pair(x, y)
    _require_nonzero(x, y, "pseudo-cosine")
    return _dot(x, y) / (math.fsum(x) * math.fsum(y))


MEASURES: Dict[SimilarityKind, Callable[..., float]] = {
    SimilarityKind.COSINE: cosine,
    SimilarityKind.PEARSON: pearson,
    SimilarityKind.JACCARD: jaccard,
    SimilarityKind.DICE: dice,
    SimilarityKind.PSEUDO_COSINE: pseudo_cosine,
}


def pairwise_matrix(
    m: DataMatrix, kind=SimilarityKind.COSINE, orientation: str = "columns"
) -> SimilarityMatrix:
    """All-pairs similarity table over the usable entities of ``m``.

    Zero vectors (and constant vectors, for Pearson) are left out and listed
    in ``excluded``.  The diagonal is filled by evaluating the measure on the
    vector with itself.
    """
    kind = SimilarityKind(kind)
    func = MEASURES[kind]
    vecs, dropped = usable_vectors(m, orientation, need_nonconstant=kind is SimilarityKind.PEARSON)
    if len(vecs) < 2:
        raise PearsonCosError(
            f"need at least 2 usable {orientation}, found {len(vecs)} "
            f"({len(dropped)} excluded)"
        )
    k = len(vecs)
    values = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            values[i, j] = values[j, i] = func(vecs[i], vecs[j])
    values.setflags(write=False)
    return SimilarityMatrix(
        kind=kind,
        labels=tuple(v.label for v in vecs),
        values=values,
        excluded=tuple(dropped),
    )


def dump_similarity(sim: SimilarityMatrix) -> str:
    """CSV text of a similarity table: header row plus a row-label column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(sim.labels))
    for label, row in zip(sim.labels, sim.values):
        writer.writerow([label] + [format_float(v) for v in row])
    return buf.getvalue()
