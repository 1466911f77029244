"""Thresholded similarity graphs and their serializations.

Edge-list CSV, Graphviz DOT, Pajek ``.net`` and cloud CSV outputs are
byte-deterministic: floats use the shortest round-trip decimal and all
orderings are fixed.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Sequence, Tuple, Union

from .errors import PearsonCosError
from .matrix_io import DataMatrix, format_float, usable_vectors
from .measures import cosine, pearson
from .plotting import cloud_figure, figure_to_svg
from .sheaf import CloudPoint, Envelope, predict_r
from .thresholds import compute_thresholds, pair_threshold
from .vectors import profile

AUTO_UPPER = "auto-upper"
AUTO_LOWER = "auto-lower"
PER_PAIR = "per-pair"
EDGELIST_HEADER = ("source", "target", "cosine", "pearson", "negative")
CLOUD_HEADER = ("pair", "cos", "r", "a", "b")
ENVELOPE_HEADER = ("line", "cos", "r")
ENVELOPE_GRID = tuple(i / 10 for i in range(11))
PAIR_SEP = "|"


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    cos: float
    r: float

    @property
    def negative(self) -> bool:
        return self.r < 0


@dataclass(frozen=True)
class SimilarityGraph:
    nodes: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()
    threshold: float = 0.0
    threshold_spec: str = ""
    excluded: Tuple[Tuple[str, str], ...] = field(default=(), compare=False)

    def edge_pairs(self):
        return {(e.source, e.target) for e in self.edges}


def parse_threshold_spec(spec: Union[str, float]) -> Union[str, float]:
    """Normalize ``auto-upper``/``auto-lower``/``per-pair`` or a number in [0, 1)."""
    if isinstance(spec, str) and spec in (AUTO_UPPER, AUTO_LOWER, PER_PAIR):
        return spec
    try:
        value = float(spec)
    except (TypeError, ValueError):
        raise PearsonCosError(
            f"threshold must be {AUTO_UPPER}, {AUTO_LOWER}, {PER_PAIR} or a number, got {spec!r}"
        ) from None
    if not 0.0 <= value < 1.0:
        raise PearsonCosError(f"explicit threshold must lie in [0, 1), got {value!r}")
    return value


def build_graph(
    m: DataMatrix, orientation: str = "columns", threshold_spec: Union[str, float] = AUTO_UPPER
) -> SimilarityGraph:
    """Keep every pair whose cosine is strictly above the resolved threshold.

    ``auto-upper`` and ``auto-lower`` resolve to the dataset thresholds;
    ``per-pair`` keeps a pair iff its cosine exceeds that pair's own
    zero-correlation cosine (equivalently r > 0).  Nodes are the usable
    entities in matrix order, isolated ones included.
    """
    spec = parse_threshold_spec(threshold_spec)
    vecs, dropped = usable_vectors(m, orientation, need_nonconstant=True)
    if len(vecs) < 2:
        raise PearsonCosError(
            f"need at least 2 usable {orientation}, found {len(vecs)} "
            f"({len(dropped)} excluded)"
        )
    n = m.vector_length(orientation)
    profiles = {v.label: profile(v) for v in vecs}
    if isinstance(spec, float):
        threshold = spec
    else:
        report = compute_thresholds(list(profiles.values()), n, per_pair_mode=spec == PER_PAIR)
        threshold = report.lower if spec == AUTO_LOWER else report.upper

    edges: List[Edge] = []
    for u, v in combinations(vecs, 2):
        c = cosine(u, v)
        if spec == PER_PAIR:
            cut = pair_threshold(profiles[u.label].ratio_a, profiles[v.label].ratio_a, n)
        else:
            cut = threshold
        if c > cut:
            s, t = sorted((u.label, v.label))
            edges.append(Edge(s, t, c, pearson(u, v)))
    edges.sort(key=lambda e: (e.source, e.target))
    return SimilarityGraph(
        nodes=tuple(v.label for v in vecs),
        edges=tuple(edges),
        threshold=threshold,
        threshold_spec=str(spec),
        excluded=tuple(dropped),
    )


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def emit_edgelist(g: SimilarityGraph) -> bytes:
    rows = [EDGELIST_HEADER]
    for e in sorted(g.edges, key=lambda e: (e.source, e.target)):
        rows.append(
            (e.source, e.target, format_float(e.cos), format_float(e.r), str(e.negative).lower())
        )
    return _csv_text(rows).encode("utf-8")


def read_edgelist(data: bytes) -> List[Edge]:
    """Parse the output of :func:`emit_edgelist` back into edges."""
    reader = csv.reader(io.StringIO(data.decode("utf-8")))
    header = tuple(next(reader))
    if header != EDGELIST_HEADER:
        raise PearsonCosError(f"unexpected edge-list header {header!r}")
    edges = []
    for row in reader:
        edge = Edge(row[0], row[1], float(row[2]), float(row[3]))
        if str(edge.negative).lower() != row[4]:
            raise PearsonCosError(f"inconsistent negative flag in row {row!r}")
        edges.append(edge)
    return edges


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g: SimilarityGraph) -> bytes:
    """Undirected Graphviz graph; negative-correlation edges are dashed."""
    lines = ["graph similarity {", f"  graph [threshold={format_float(g.threshold)}];"]
    for node in g.nodes:
        lines.append(f"  {_dot_id(node)};")
    for e in sorted(g.edges, key=lambda e: (e.source, e.target)):
        attrs = f"weight={format_float(e.cos)}, pearson={format_float(e.r)}"
        if e.negative:
            attrs += ", style=dashed"
        lines.append(f"  {_dot_id(e.source)} -- {_dot_id(e.target)} [{attrs}];")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_pajek(g: SimilarityGraph) -> bytes:
    """Pajek network: 1-based quoted vertices, then ``i j cosine`` edge lines."""
    index = {label: k for k, label in enumerate(g.nodes, start=1)}
    lines = [f"*Vertices {len(g.nodes)}"]
    for label, k in index.items():
        lines.append(f'{k} "{label.replace(chr(34), chr(39))}"')
    lines.append("*Edges")
    arcs = sorted((*sorted((index[e.source], index[e.target])), e.cos) for e in g.edges)
    lines.extend(f"{i} {j} {format_float(w)}" for i, j, w in arcs)
    return ("\n".join(lines) + "\n").encode("utf-8")


def envelope_samples(env: Envelope) -> List[Tuple[str, float, float]]:
    """Both envelope lines evaluated at cos = 0, 0.1, ..., 1."""
    rows = []
    for name, line in (("min", env.min_line), ("max", env.max_line)):
        rows.extend((name, c, predict_r(line, c)) for c in ENVELOPE_GRID)
    return rows


def emit_cloud_csv(points: Sequence[CloudPoint], env: Envelope) -> bytes:
    rows: list = [CLOUD_HEADER]
    for p in sorted(points, key=lambda p: p.pair):
        rows.append(
            (PAIR_SEP.join(p.pair), format_float(p.cos), format_float(p.r),
             format_float(p.a), format_float(p.b))
        )
    rows.append(())
    rows.append(ENVELOPE_HEADER)
    rows.extend((name, format_float(c), format_float(r)) for name, c, r in envelope_samples(env))
    return _csv_text(rows).encode("utf-8")


def emit_cloud(points: Sequence[CloudPoint], env: Envelope) -> Tuple[bytes, bytes]:
    """Cloud CSV (points plus envelope samples) and an SVG scatter plot."""
    return emit_cloud_csv(points, env), figure_to_svg(cloud_figure(points, env))
