"""Labeled data matrices: CSV/TSV parsing, validation and co-citation construction.

File dialect: comma (or tab) separated, ``.`` decimal point, UTF-8, first
line is the column-label header.  When the top-left header cell is empty the
first column holds row labels.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from dataclasses import dataclass, field
from typing import IO, List, Optional, Sequence, Tuple

import numpy as np

from .errors import MatrixFormatError, PearsonCosError
from .vectors import EntityVector, is_constant

log = logging.getLogger(__name__)

ORIENTATIONS = ("rows", "columns")
KIND_HINTS = ("occurrence", "cooccurrence", "unknown")
_DELIMITERS = {"csv": ",", "tsv": "\t"}


@dataclass(frozen=True)
class DataMatrix:
    """Dense non-negative matrix with labeled axes.

    Rows are cases (citing papers) and columns are entities (cited authors)
    for an occurrence matrix; a co-occurrence matrix is square with the same
    labels on both axes.
    """

    col_labels: Tuple[str, ...]
    values: np.ndarray = field(repr=False)
    row_labels: Optional[Tuple[str, ...]] = None
    kind_hint: str = "unknown"

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise MatrixFormatError(f"matrix must be 2-d, got shape {values.shape}")
        if values.size == 0:
            raise MatrixFormatError("empty matrix")
        if not np.all(np.isfinite(values)):
            raise MatrixFormatError("matrix contains non-finite values")
        if np.any(values < 0):
            i, j = (int(k) for k in np.argwhere(values < 0)[0])
            raise MatrixFormatError(
                f"negative value {values[i, j]!r} at row {i + 1}, column {j + 1}"
            )
        col_labels = tuple(str(c) for c in self.col_labels)
        if len(col_labels) != values.shape[1]:
            raise MatrixFormatError(
                f"{len(col_labels)} column labels for {values.shape[1]} columns"
            )
        _check_unique(col_labels, "column")
        row_labels = self.row_labels
        if row_labels is not None:
            row_labels = tuple(str(r) for r in row_labels)
            if len(row_labels) != values.shape[0]:
                raise MatrixFormatError(
                    f"{len(row_labels)} row labels for {values.shape[0]} rows"
                )
            _check_unique(row_labels, "row")
        if self.kind_hint not in KIND_HINTS:
            raise PearsonCosError(f"unknown kind_hint {self.kind_hint!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "col_labels", col_labels)
        object.__setattr__(self, "row_labels", row_labels)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.values.shape

    def labels(self, orientation: str = "columns") -> Tuple[str, ...]:
        _check_orientation(orientation)
        if orientation == "columns":
            return self.col_labels
        if self.row_labels is not None:
            return self.row_labels
        return tuple(f"row{i + 1}" for i in range(self.values.shape[0]))

    def vector_length(self, orientation: str = "columns") -> int:
        """Length n of the entity vectors in the given orientation."""
        _check_orientation(orientation)
        return self.values.shape[0] if orientation == "columns" else self.values.shape[1]

    def vectors(self, orientation: str = "columns") -> List[EntityVector]:
        data = self.values if orientation == "rows" else self.values.T
        return [EntityVector(lab, data[k]) for k, lab in enumerate(self.labels(orientation))]


def _check_unique(labels: Sequence[str], axis: str) -> None:
    seen = set()
    for lab in labels:
        if lab in seen:
            raise MatrixFormatError(f"duplicate {axis} label {lab!r}")
        seen.add(lab)


def _check_orientation(orientation: str) -> None:
    if orientation not in ORIENTATIONS:
        raise PearsonCosError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")


def _open_text(source) -> Tuple[IO[str], bool]:
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8-sig", newline=""), True
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(bytes(source).decode("utf-8-sig"), newline=""), True
    if isinstance(source, io.TextIOBase):
        return source, False
    # binary stream
    return io.TextIOWrapper(source, encoding="utf-8-sig", newline=""), False


def load_matrix(source, format: str = "csv", kind_hint: str = "unknown") -> DataMatrix:
    """Parse a labeled matrix.

    Args:
        source: a path, raw bytes, or a text/binary stream.
        format: ``"csv"`` or ``"tsv"``.
        kind_hint: stored on the result; ``"occurrence"``, ``"cooccurrence"``
            or ``"unknown"``.

    Raises:
        MatrixFormatError: on ragged rows (with line number), non-numeric or
            negative cells (with coordinates), duplicate labels, or an empty
            matrix.
    """
    if format not in _DELIMITERS:
        raise PearsonCosError(f"format must be csv or tsv, got {format!r}")
    stream, owned = _open_text(source)
    try:
        rows = [r for r in csv.reader(stream, delimiter=_DELIMITERS[format])]
    finally:
        if owned:
            stream.close()
    # tolerate trailing blank lines only
    while rows and not any(cell.strip() for cell in rows[-1]):
        rows.pop()
    if not rows:
        raise MatrixFormatError("empty matrix: no header line")
    header = [cell.strip() for cell in rows[0]]
    has_row_labels = header[0] == ""
    col_labels = header[1:] if has_row_labels else header
    if not col_labels:
        raise MatrixFormatError("empty matrix: no column labels")
    width = len(header)
    row_labels: List[str] = []
    data: List[List[float]] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise MatrixFormatError(
                f"line {lineno}: expected {width} fields, found {len(row)}"
            )
        if has_row_labels:
            row_labels.append(row[0].strip())
            cells = row[1:]
        else:
            cells = row
        parsed = []
        for j, cell in enumerate(cells):
            try:
                value = float(cell)
            except ValueError:
                raise MatrixFormatError(
                    f"line {lineno}: non-numeric value {cell!r} in column {col_labels[j]!r}"
                ) from None
            if value < 0:
                rname = row_labels[-1] if has_row_labels else f"row {lineno - 1}"
                raise MatrixFormatError(
                    f"line {lineno}: negative value {cell!r} at row {rname!r}, "
                    f"column {col_labels[j]!r}"
                )
            parsed.append(value)
        data.append(parsed)
    if not data:
        raise MatrixFormatError("empty matrix: header only")
    return DataMatrix(
        col_labels=tuple(col_labels),
        values=np.array(data, dtype=np.float64),
        row_labels=tuple(row_labels) if has_row_labels else None,
        kind_hint=kind_hint,
    )


def format_float(x: float) -> str:
    """Shortest decimal string that round-trips the 64-bit value; integral values lose the ``.0``."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def dump_matrix(m: DataMatrix, format: str = "csv") -> str:
    """Serialize ``m`` in the dialect read by :func:`load_matrix`."""
    if format not in _DELIMITERS:
        raise PearsonCosError(f"format must be csv or tsv, got {format!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=_DELIMITERS[format], lineterminator="\n")
    lead = [""] if m.row_labels is not None else []
    writer.writerow(lead + list(m.col_labels))
    for i, row in enumerate(m.values):
        lead = [m.row_labels[i]] if m.row_labels is not None else []
        writer.writerow(lead + [format_float(v) for v in row])
    return buf.getvalue()


def cocitation(occ: DataMatrix) -> DataMatrix:
    """Symmetric co-citation matrix ``occ.T @ occ`` of a binary occurrence matrix.

    The diagonal holds the number of cases citing each entity.
    """
    v = occ.values
    bad = (v != 0) & (v != 1)
    if np.any(bad):
        i, j = (int(k) for k in np.argwhere(bad)[0])
        raise MatrixFormatError(
            f"occurrence matrix must be binary: value {v[i, j]!r} at row {i + 1}, "
            f"column {occ.col_labels[j]!r}"
        )
    iv = v.astype(np.int64)
    counts = iv.T @ iv
    return DataMatrix(
        col_labels=occ.col_labels,
        values=counts.astype(np.float64),
        row_labels=occ.col_labels,
        kind_hint="cooccurrence",
    )


def usable_entities(
    m: DataMatrix, orientation: str = "columns", need_nonconstant: bool = False
) -> Tuple[List[str], List[Tuple[str, str]]]:
    """Split entities into those usable for similarity work and those dropped.

    Zero vectors are always dropped; constant vectors are dropped when
    ``need_nonconstant`` (Pearson's r has zero variance there).

    Returns:
        ``(kept_labels, [(dropped_label, reason), ...])``
    """
    kept: List[str] = []
    dropped: List[Tuple[str, str]] = []
    for vec in m.vectors(orientation):
        if not np.any(vec.coords):
            dropped.append((vec.label, "zero vector"))
        elif need_nonconstant and is_constant(vec):
            dropped.append((vec.label, "constant vector"))
        else:
            kept.append(vec.label)
    for label, reason in dropped:
        log.warning("dropping %s %r: %s", orientation[:-1], label, reason)
    return kept, dropped


def usable_vectors(
    m: DataMatrix, orientation: str = "columns", need_nonconstant: bool = False
) -> Tuple[List[EntityVector], List[Tuple[str, str]]]:
    """Like :func:`usable_entities` but returns the kept vectors themselves."""
    kept, dropped = usable_entities(m, orientation, need_nonconstant)
    keep = set(kept)
    return [v for v in m.vectors(orientation) if v.label in keep], dropped
