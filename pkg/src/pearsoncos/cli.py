"""Command-line interface: ``pearsoncos <subcommand> --input FILE [...]``.

Exit codes: 0 success, 1 data/validation error (or failed verification),
2 usage error.  Data goes to ``--out`` (or stdout), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import __version__
from .errors import PearsonCosError
from .export import (
    AUTO_UPPER,
    build_graph,
    emit_cloud,
    emit_dot,
    emit_edgelist,
    emit_pajek,
    parse_threshold_spec,
)
from .matrix_io import DataMatrix, cocitation, dump_matrix, format_float, load_matrix, usable_vectors
from .measures import SimilarityKind, dump_similarity, pairwise_matrix
from .sheaf import cloud, envelope, identity_residual, outside_band
from .thresholds import BOUNDARY_ATOL, matrix_thresholds, verify_guarantee
from .vectors import profile

log = logging.getLogger("pearsoncos")

IDENTITY_TOL = 1e-10


@dataclass
class RunConfig:
    input: str
    format: str = "csv"
    orientation: str = "columns"
    measure: str = SimilarityKind.COSINE.value
    threshold: str = AUTO_UPPER
    out: Optional[str] = None
    cocite: bool = False
    quiet: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(**{k: getattr(args, k) for k in cls.__dataclass_fields__ if hasattr(args, k)})


def _load(config: RunConfig) -> DataMatrix:
    m = load_matrix(config.input, config.format)
    if config.cocite:
        m = cocitation(m)
    return m


def _write_text(config: RunConfig, text: str) -> None:
    if config.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _out_dir(config: RunConfig) -> str:
    path = config.out or "."
    os.makedirs(path, exist_ok=True)
    return path


def _write_bytes(directory: str, name: str, data: bytes) -> str:
    path = os.path.join(directory, name)
    with open(path, "wb") as fh:
        fh.write(data)
    log.info("wrote %s", path)
    return path


def _rows_to_csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_norms(config: RunConfig) -> int:
    m = _load(config)
    vecs, _ = usable_vectors(m, config.orientation)
    rows: List[tuple] = [("label", "l1", "l2", "ratio")]
    for v in vecs:
        p = profile(v)
        rows.append((p.label, format_float(p.l1), format_float(p.l2), format_float(p.ratio_a)))
    _write_text(config, _rows_to_csv(rows))
    return 0


def cmd_sim(config: RunConfig) -> int:
    sim = pairwise_matrix(_load(config), config.measure, config.orientation)
    _write_text(config, dump_similarity(sim))
    return 0


def cmd_cocite(config: RunConfig) -> int:
    m = load_matrix(config.input, config.format, kind_hint="occurrence")
    _write_text(config, dump_matrix(cocitation(m), config.format))
    return 0


def cmd_threshold(config: RunConfig) -> int:
    report = matrix_thresholds(_load(config), config.orientation)
    rows = [
        ("n", "lower", "upper", "min_pair", "max_pair"),
        (
            report.n,
            format_float(report.lower),
            format_float(report.upper),
            "|".join(report.min_pair),
            "|".join(report.max_pair),
        ),
    ]
    _write_text(config, _rows_to_csv(rows))
    return 0


def _cloud_and_envelope(m: DataMatrix, orientation: str):
    points = cloud(m, orientation)
    vecs, _ = usable_vectors(m, orientation, need_nonconstant=True)
    env = envelope([profile(v) for v in vecs], m.vector_length(orientation))
    return points, env


def cmd_cloud(config: RunConfig) -> int:
    points, env = _cloud_and_envelope(_load(config), config.orientation)
    data, svg = emit_cloud(points, env)
    directory = _out_dir(config)
    _write_bytes(directory, "cloud.csv", data)
    _write_bytes(directory, "cloud.svg", svg)
    log.info(
        "%d points, %d outside the envelope band (ab_min=%s, ab_max=%s)",
        len(points), outside_band(points, env), format_float(env.ab_min), format_float(env.ab_max),
    )
    return 0


def cmd_graph(config: RunConfig) -> int:
    g = build_graph(_load(config), config.orientation, config.threshold)
    directory = _out_dir(config)
    _write_bytes(directory, "edges.csv", emit_edgelist(g))
    _write_bytes(directory, "graph.dot", emit_dot(g))
    _write_bytes(directory, "graph.net", emit_pajek(g))
    negatives = sum(e.negative for e in g.edges)
    log.info(
        "threshold %s = %s: %d nodes, %d edges (%d negative)",
        g.threshold_spec, format_float(g.threshold), len(g.nodes), len(g.edges), negatives,
    )
    return 0


def cmd_verify(config: RunConfig) -> int:
    m = _load(config)
    n = m.vector_length(config.orientation)
    points = cloud(m, config.orientation)
    residual = max(identity_residual(p, n) for p in points)
    report = matrix_thresholds(m, config.orientation)
    violations = verify_guarantee(m, config.orientation, report.upper, atol=BOUNDARY_ATOL)
    ok = residual <= IDENTITY_TOL and not violations
    text = (
        f"pairs={len(points)}\n"
        f"max_identity_residual={residual!r}\n"
        f"upper_threshold={format_float(report.upper)}\n"
        f"violations={len(violations)}\n"
        f"status={'PASS' if ok else 'FAIL'}\n"
    )
    _write_text(config, text)
    for v in violations:
        log.error("violation %s: cos=%r r=%r", "|".join(v.pair), v.cos, v.r)
    return 0 if ok else 1


COMMANDS = {
    "norms": (cmd_norms, "L1/L2 norms and norm ratio per entity"),
    "sim": (cmd_sim, "pairwise similarity matrix"),
    "cocite": (cmd_cocite, "co-citation matrix from a binary occurrence matrix"),
    "threshold": (cmd_threshold, "cosine thresholds for non-negative Pearson correlation"),
    "cloud": (cmd_cloud, "(cos, r) cloud CSV and SVG plot with envelope lines"),
    "graph": (cmd_graph, "thresholded graph as edge list, DOT and Pajek files"),
    "verify": (cmd_verify, "check the r/cos identity and the threshold guarantee"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", required=True, help="matrix file (CSV or TSV)")
    common.add_argument("--format", choices=("csv", "tsv"), default="csv")
    common.add_argument("--orientation", choices=("rows", "columns"), default="columns",
                        help="which axis holds the entity vectors (default: columns)")
    common.add_argument("--out", "-o", default=None,
                        help="output file (default stdout); output directory for cloud/graph")
    common.add_argument("--cocite", action="store_true",
                        help="convert the binary occurrence input to a co-citation matrix first")
    common.add_argument("--quiet", "-q", action="store_true", help="only report errors")

    parser = argparse.ArgumentParser(prog="pearsoncos", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "sim":
            p.add_argument("--measure", choices=[k.value for k in SimilarityKind],
                           default=SimilarityKind.COSINE.value)
        if name == "graph":
            p.add_argument("--threshold", default=AUTO_UPPER,
                           help="auto-upper (default), auto-lower, per-pair, or a cosine in [0, 1)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig.from_args(args)
    logging.basicConfig(
        level=logging.ERROR if config.quiet else logging.INFO,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    if args.command == "graph":
        try:
            parse_threshold_spec(config.threshold)
        except PearsonCosError as exc:
            parser.error(str(exc))
    func = COMMANDS[args.command][0]
    try:
        return func(config)
    except (PearsonCosError, OSError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
