"""Command-line interface: ``qwalk {embed,check,compare,info}``.

Exit codes: 0 success, 1 bad input or usage, 2 I/O failure, 3 dense cap
exceeded, 4 an operator law outside tolerance. Reports and data go to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .baseline import spread_comparison
from .embedding import FORMATS, MODES, embed_all, export
from .graph import Graph, GraphError, degree_histogram, read_edge_list, require_valid
from .walk import DenseCapExceeded, default_dense_cap, qubit_count, walk_operator
from .verify import check_laws

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2
EXIT_CAP = 3
EXIT_TOLERANCE = 4

BACKENDS = ("sparse", "dense")
COMPARE_FORMATS = ("table", "json")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class WalkConfig:
    input: str
    steps: int | None = None
    mode: str = "occupancy"
    backend: str = "sparse"
    format: str | None = None
    output: str | None = None
    source: int | None = None
    dense_cap: int | None = None
    verify: bool = False


def _add_common(p: argparse.ArgumentParser) -> None:
    # defaults are None so a --config file can fill them in
    p.add_argument("--input", metavar="PATH", help="edge list, one 'u v' pair per line")
    p.add_argument("--config", metavar="PATH", help="JSON file of option defaults")
    p.add_argument("--steps", type=int, metavar="T", help="walk length (default: node count)")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--backend", choices=BACKENDS)
    p.add_argument("--format", metavar="F")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--source", type=int, metavar="NODE")
    p.add_argument("--dense-cap", type=int, metavar="ARCS",
                   help="largest arc count for the dense backend (env QWALK_DENSE_CAP)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qwalk", description="Scattering quantum walk node embeddings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    embed = sub.add_parser("embed", help="embed every node and write the matrix")
    _add_common(embed)
    embed.add_argument("--verify", action="store_true", help="run the operator law checks first")
    check = sub.add_parser("check", help="verify operator identities")
    _add_common(check)
    check.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    compare = sub.add_parser("compare", help="quantum vs classical spread from one source")
    _add_common(compare)
    info = sub.add_parser("info", help="graph and walk-space sizes")
    _add_common(info)
    return parser


_CONFIG_KEYS = {"input", "steps", "mode", "backend", "format", "output", "source", "dense_cap", "verify"}


def _resolve(args: argparse.Namespace) -> WalkConfig:
    values = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - _CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(loaded)
    for key in _CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None and val is not False:
            values[key] = val
    if "input" not in values:
        raise UsageError("--input is required")
    cfg = WalkConfig(**values)
    if cfg.steps is not None and cfg.steps < 0:
        raise UsageError("--steps must be nonnegative")
    if cfg.mode not in MODES:
        raise UsageError(f"--mode must be one of {', '.join(MODES)}")
    if cfg.backend not in BACKENDS:
        raise UsageError(f"--backend must be one of {', '.join(BACKENDS)}")
    if cfg.dense_cap is None:
        cfg.dense_cap = default_dense_cap()
    if cfg.dense_cap < 0:
        raise UsageError("--dense-cap must be nonnegative")
    return cfg


def _load(cfg: WalkConfig) -> Graph:
    g = read_edge_list(cfg.input)
    return require_valid(g)


def _emit(text: str, cfg: WalkConfig) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_embed(cfg: WalkConfig) -> int:
    fmt = cfg.format or "csv"
    if fmt not in FORMATS:
        raise UsageError(f"--format for embed must be one of {', '.join(FORMATS)}")
    g = _load(cfg)
    if cfg.verify:
        report = check_laws(g, dense_cap=cfg.dense_cap)
        if not report.ok:
            for line in report.lines():
                print(line, file=sys.stderr)
            return EXIT_TOLERANCE
    t = g.node_count if cfg.steps is None else cfg.steps
    u = walk_operator(g, backend=cfg.backend, dense_cap=cfg.dense_cap)
    m = embed_all(g, t, cfg.mode, u=u)
    summary = (
        f"N={g.node_count} |E|={g.edge_count} arcs={len(u.basis)} t={t} "
        f"mode={cfg.mode} backend={cfg.backend} dim={m.dimension}"
    )
    if cfg.output:
        export(m, fmt, cfg.output)
        print(summary)
    else:
        export(m, fmt, sys.stdout)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_check(cfg: WalkConfig, inject_fault: bool = False) -> int:
    g = _load(cfg)
    report = check_laws(g, dense_cap=cfg.dense_cap, corrupt=inject_fault)
    text = "\n".join(
        [f"N={g.node_count} |E|={g.edge_count} arcs={2 * g.edge_count}"] + report.lines()
    ) + "\n"
    _emit(text, cfg)
    if not report.ok:
        names = ", ".join(law.name for law in report.failures())
        print(f"tolerance violation: {names}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_compare(cfg: WalkConfig) -> int:
    if cfg.source is None:
        raise UsageError("compare requires --source NODE")
    fmt = cfg.format or "table"
    if fmt not in COMPARE_FORMATS:
        raise UsageError(f"--format for compare must be one of {', '.join(COMPARE_FORMATS)}")
    g = _load(cfg)
    if not 0 <= cfg.source < g.node_count:
        raise UsageError(f"--source {cfg.source} out of range for {g.node_count} nodes")
    t = g.node_count if cfg.steps is None else cfg.steps
    u = walk_operator(g, backend=cfg.backend, dense_cap=cfg.dense_cap)
    report = spread_comparison(g, cfg.source, t, u=u)
    _emit(report.to_json() if fmt == "json" else report.to_table(), cfg)
    return EXIT_OK


def cmd_info(cfg: WalkConfig) -> int:
    g = _load(cfg)
    hist = degree_histogram(g)
    lines = [
        f"nodes: {g.node_count}",
        f"edges: {g.edge_count}",
        f"arcs: {2 * g.edge_count}",
        "degree histogram: " + ", ".join(f"{d}:{c}" for d, c in hist.items()),
        f"qubits: {qubit_count(g.node_count)}",
    ]
    _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code
    try:
        cfg = _resolve(args)
        if args.command == "embed":
            return cmd_embed(cfg)
        if args.command == "check":
            return cmd_check(cfg, inject_fault=args.inject_fault)
        if args.command == "compare":
            return cmd_compare(cfg)
        return cmd_info(cfg)
    except DenseCapExceeded as exc:
        print(f"qwalk: {exc}", file=sys.stderr)
        return EXIT_CAP
    except json.JSONDecodeError as exc:
        print(f"qwalk: bad config file: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, GraphError, ValueError, TypeError) as exc:
        print(f"qwalk: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"qwalk: {exc}", file=sys.stderr)
        return EXIT_IO

if __name__ == "__main__":
    sys.exit(main())
