"""Command-line front end.

    liegra enumerate --n 3 --flavor connected-simple --count
    liegra series exp --K 3 -g x:0
    liegra verify --suite group --K 4
    liegra growth --n 20 --b 26430

Exit status: 0 when everything passes, 1 when an identity fails, 2 on a
usage error, 3 when a request exceeds an enumeration cap.  Output is
deterministic: terms are printed in canonical order with exact rationals.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from . import graphs as G
from .algebra import AlgebraError, Generator, Series
from .formats import format_graph
from .growth import growth_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

MAX_CAP_LABELED = 6
MAX_CAP_ISO = 7

SERIES_OPS = {
    # operation: default generator declarations
    "exp": ["x:0"],
    "log": ["x:0"],
    "inverse": ["x:0"],
    "product": ["x:0", "y:0"],
    "product-nc": ["x:0", "y:0"],
    "bch": ["x:0", "y:0"],
    "bowtie": ["x:0", "a:-1", "y:0"],
    "action": ["l:0", "a:-1"],
}

SUITE_NAMES = ["group", "exp-log", "bch", "action", "nc", "operad-axioms", "reductions",
               "basis", "compositions", "growth", "all"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    K: int = 3
    cap_labeled: int = G.DEFAULT_CAP_LABELED
    cap_iso: int = G.DEFAULT_CAP_ISO
    generators: list = field(default_factory=list)
    fmt: str = "text"
    deterministic: bool = True

    def validate(self) -> None:
        if self.K < 1:
            raise UsageError("K must be at least 1")
        if not 1 <= self.cap_labeled <= MAX_CAP_LABELED:
            raise UsageError(f"--cap-labeled must lie in 1..{MAX_CAP_LABELED}")
        if not 1 <= self.cap_iso <= MAX_CAP_ISO:
            raise UsageError(f"--cap-iso must lie in 1..{MAX_CAP_ISO}")
        if self.fmt not in ("json", "text", "csv"):
            raise UsageError(f"unknown format {self.fmt!r}")


def parse_generator(text: str) -> Generator:
    name, sep, deg = text.partition(":")
    if not sep or not name.isidentifier() or name.startswith("__"):
        raise UsageError(f"generator must look like name:degree, got {text!r}")
    try:
        return Generator(name, int(deg))
    except ValueError:
        raise UsageError(f"generator degree must be an integer, got {text!r}") from None


def read_config(path: str) -> dict:
    """key=value lines (``#`` comments allowed) with keys K, cap-labeled,
    cap-iso, format and gen (comma separated)."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_string("[run]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    return dict(parser["run"])


def build_config(args: argparse.Namespace) -> RunConfig:
    base = read_config(args.config) if args.config else {}
    cfg = RunConfig()
    try:
        if "k" in base:
            cfg.K = int(base["k"])
        cfg.cap_labeled = int(os.environ.get("LIEGRA_CAP_LABELED", base.get("cap-labeled", cfg.cap_labeled)))
        cfg.cap_iso = int(os.environ.get("LIEGRA_CAP_ISO", base.get("cap-iso", cfg.cap_iso)))
    except ValueError as exc:
        raise UsageError(f"bad numeric setting: {exc}") from exc
    cfg.fmt = base.get("format", cfg.fmt)
    if base.get("gen"):
        cfg.generators = [parse_generator(t.strip()) for t in base["gen"].split(",") if t.strip()]
    if getattr(args, "K", None) is not None:
        cfg.K = args.K
    if args.cap_labeled is not None:
        cfg.cap_labeled = args.cap_labeled
    if args.cap_iso is not None:
        cfg.cap_iso = args.cap_iso
    if args.format is not None:
        cfg.fmt = args.format
    if getattr(args, "gen", None):
        cfg.generators = [parse_generator(t) for t in args.gen]
    cfg.validate()
    # the library reads its caps from the environment
    os.environ["LIEGRA_CAP_LABELED"] = str(cfg.cap_labeled)
    os.environ["LIEGRA_CAP_ISO"] = str(cfg.cap_iso)
    return cfg


# ---------------------------------------------------------------------------
# rendering


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def render_series(op: str, s: Series, group: bool, fmt: str) -> str:
    if fmt == "json":
        d = s.to_dict()
        d["operation"] = op
        if group:
            d["unit"] = 1
        return _dump_json(d)
    rows = [(f"{c.numerator}/{c.denominator}", format_graph(G.DirectedGraph.from_mask(k[0], k[1]), k[2]))
            for k, c in s.sorted_terms()]
    if fmt == "csv":
        return _csv([["coeff", "graph"], *([["1/1", "unit"]] if group else []), *rows])
    lines = [f"# {op} truncated at weight {s.K}"]
    if group:
        lines.append(f"{'1/1':>10}  unit")
    lines += [f"{c:>10}  {g}" for c, g in rows]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate(args, cfg: RunConfig) -> tuple[str, int]:
    flavor = {"connected-simple": G.CONNECTED, "nc-simple": G.NC, "multi": G.MULTI}[args.flavor]
    if args.iso:
        if flavor == G.MULTI:
            raise UsageError("--iso is available for the simple flavors only")
        items = [(c.graph, c.aut_order) for c in G.enumerate_iso_classes(args.n, flavor, cap=cfg.cap_iso)]
    else:
        items = [(g, None) for g in G.enumerate_labeled(args.n, flavor, cap=cfg.cap_labeled)]
    if args.count:
        if cfg.fmt == "json":
            return _dump_json({"n": args.n, "flavor": args.flavor, "iso": args.iso, "count": len(items)}), EXIT_OK
        return f"{len(items)}\n", EXIT_OK
    if cfg.fmt == "json":
        payload = []
        for g, aut in items:
            d = {"n": g.n, "edges": [list(e) for e in g.edges]}
            if aut is not None:
                d["aut_order"] = aut
            payload.append(d)
        return _dump_json({"n": args.n, "flavor": args.flavor, "iso": args.iso, "graphs": payload}), EXIT_OK
    if cfg.fmt == "csv":
        head = ["graph", "aut_order"] if args.iso else ["graph"]
        return _csv([head, *([format_graph(g)] + ([aut] if args.iso else []) for g, aut in items)]), EXIT_OK
    lines = [format_graph(g) + (f"  aut={aut}" if aut is not None else "") for g, aut in items]
    return "\n".join(lines) + ("\n" if lines else ""), EXIT_OK


def cmd_series(args, cfg: RunConfig) -> tuple[str, int]:
    from . import lie as L

    gens = cfg.generators or [parse_generator(t) for t in SERIES_OPS[args.op]]
    need = len(SERIES_OPS[args.op])
    if len(gens) != need:
        raise UsageError(f"{args.op} takes {need} generator(s), got {len(gens)}")
    s = [Series.generator(g, cfg.K) for g in gens]
    group = True
    if args.op == "exp":
        out = L.exp(s[0]).series
    elif args.op == "log":
        out, group = L.log(L.GroupElement(s[0])), False
    elif args.op == "inverse":
        out = L.gp_inverse(L.GroupElement(s[0])).series
    elif args.op == "product":
        out = L.gp_product(L.GroupElement(s[0]), L.GroupElement(s[1])).series
    elif args.op == "product-nc":
        out = L.gp_product_nc(L.GroupElement(s[0]), L.GroupElement(s[1])).series
    elif args.op == "bch":
        out, group = L.bch(s[0], s[1]), False
    elif args.op == "bowtie":
        out, group = L.bowtie(L.GroupElement(s[0]), s[1], L.GroupElement(s[2])), False
    else:
        out, group = L.gauge_action(s[0], s[1]), False
    return render_series(args.op, out, group, cfg.fmt), EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> tuple[str, int]:
    from .verify import run_suite

    K = args.K
    if K is not None and K < 1:
        raise UsageError("K must be at least 1")
    reports = run_suite(args.suite, K)
    ok = all(r.passed for r in reports)
    if cfg.fmt == "json":
        text = _dump_json({"suite": args.suite, "passed": ok, "reports": [r.to_dict() for r in reports]})
    elif cfg.fmt == "csv":
        text = _csv([["identity", "K", "status", "first_failing_weight", "note"]] + [
            [r.name, "" if r.K is None else r.K, "pass" if r.passed else "fail",
             r.first_failing_weight or "", r.note] for r in reports])
    else:
        lines = [r.line() for r in reports]
        lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} passed")
        text = "\n".join(lines) + "\n"
    return text, EXIT_OK if ok else EXIT_FAIL


def cmd_growth(args, cfg: RunConfig) -> tuple[str, int]:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.b is not None and args.b < 1:
        raise UsageError("--b must be positive")
    exact = min(args.exact_cap if args.exact_cap is not None else cfg.cap_labeled, cfg.cap_labeled)
    rep = growth_report(args.n, b=args.b, exact_cap=exact)
    if cfg.fmt == "json":
        return _dump_json(rep.to_dict()), EXIT_OK
    if cfg.fmt == "csv":
        return rep.to_csv(), EXIT_OK
    return rep.to_text(), EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS, help="write output to FILE instead of stdout")
    common.add_argument("--cap-labeled", type=int, default=argparse.SUPPRESS, help="largest n for labeled enumeration")
    common.add_argument("--cap-iso", type=int, default=argparse.SUPPRESS, help="largest n for isomorphism-class enumeration")
    common.add_argument("--config", metavar="FILE", default=argparse.SUPPRESS, help="key=value defaults (K, cap-labeled, cap-iso, format, gen)")

    p = argparse.ArgumentParser(prog="liegra", description="Lie-graph algebra toolkit", parents=[common])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list or count graphs")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--flavor", choices=["connected-simple", "nc-simple", "multi"], default="connected-simple")
    e.add_argument("--iso", action="store_true", help="isomorphism classes instead of labeled graphs")
    e.add_argument("--count", action="store_true", help="print only the number of graphs")

    s = sub.add_parser("series", parents=[common], help="compute a truncated series")
    s.add_argument("op", choices=list(SERIES_OPS))
    s.add_argument("--K", type=int, default=None, help="truncation weight")
    s.add_argument("-g", "--gen", action="append", metavar="NAME:DEGREE", help="generator declaration (repeatable)")

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("--suite", choices=SUITE_NAMES, default="all")
    v.add_argument("--K", type=int, default=None, help="override the truncation of every check in the suite")

    g = sub.add_parser("growth", parents=[common], help="growth table and verdict")
    g.add_argument("--n", type=int, default=20, help="largest n in the table")
    g.add_argument("--b", type=int, default=None, help="arity-dimension bound in the shuffle-tree estimate")
    g.add_argument("--exact-cap", type=int, default=None, help="largest n with an exact count")
    return p


COMMANDS = {"enumerate": cmd_enumerate, "series": cmd_series, "verify": cmd_verify, "growth": cmd_growth}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    for name in ("format", "out", "cap_labeled", "cap_iso", "config"):
        if not hasattr(args, name):
            setattr(args, name, None)
    saved = {k: os.environ.get(k) for k in ("LIEGRA_CAP_LABELED", "LIEGRA_CAP_ISO")}
    try:
        cfg = build_config(args)
        if args.command == "enumerate" and args.n < 1:
            raise UsageError("--n must be at least 1")
        text, status = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except G.CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (AlgebraError, G.GraphError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        for k, v in saved.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
