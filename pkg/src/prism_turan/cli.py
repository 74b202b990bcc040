"""Command-line entry point: ``prism-turan <subcommand> ...``.

Exit codes: 0 success / free / pass, 1 pattern found / a failed verdict, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .constructions import CONSTRUCTION_NAMES, FIXTURES, build, named_fixture
from .containment import Pattern, contains
from .decomposition import decomposition_family
from .formulas import (
    c3prism_turan,
    main_theorem_value,
    mantel,
    p4_turan,
    p6square_turan,
    path_turan,
)
from .graph import Graph, GraphError, basic_stats, decode_graph6
from .search import FeasibilityError, SearchConfig, auto_seed, default_workers, turan_exact

GRAMMAR = """\
graph arguments:
  prism:k      C_{2k+1} x P_2
  H:n:i        K_{i,n-i} with i/3 triangles on the i-side
  F:n:i:j      K_{i,n-i} with a j-vertex star and (i-j)/3 triangles on the i-side
  P^p:k        p-th power of the path on k vertices
  T:n:r        Turan graph T_r(n)
  K:n C:n P:n  complete graph, cycle, path
  G1 G2 G3 H1 H2   fixtures on P_6^2 (v_i is vertex i-1)
  <graph6>     any graph6 string, or '-' to read one from stdin"""

FORMULAS = ("c3prism", "p6square", "p4", "path", "main", "mantel")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    threads: int
    fmt: str = "text"
    out: str | None = None


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what}: expected an integer, got {text!r}") from None


def parse_graph(text: str, stdin=None) -> Graph:
    """Resolve a graph argument using the grammar in ``GRAMMAR``."""
    if text == "-":
        data = (stdin or sys.stdin).read().strip().splitlines()
        if not data:
            raise UsageError("no graph6 data on stdin")
        text = data[0].strip()
        return _decode(text)
    if text in FIXTURES:
        return named_fixture(text)
    parts = text.split(":")
    head, args = parts[0], parts[1:]
    try:
        if head.startswith("P^") and len(args) == 1:
            return build("path_power", _int(args[0], "k"), _int(head[2:], "p"))
        simple = {"prism": ("prism", 1), "H": ("H", 2), "F": ("F", 3), "T": ("turan", 2),
                  "K": ("complete", 1), "C": ("cycle", 1), "P": ("path", 1)}
        if head in simple and args:
            name, arity = simple[head]
            if len(args) != arity:
                raise UsageError(f"{head} takes {arity} parameter(s), got {len(args)}")
            return build(name, *(_int(a, head) for a in args))
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    return _decode(text)


def _decode(text: str) -> Graph:
    try:
        return decode_graph6(text)
    except (GraphError, ValueError) as exc:
        raise UsageError(f"not a graph name or graph6 string: {text!r} ({exc})") from None


def _atomic_write(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        _atomic_write(cfg.out, text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------- subcommands


def cmd_construct(args, cfg: RunConfig) -> int:
    if args.name in CONSTRUCTION_NAMES:
        try:
            g = build(args.name, *(_int(p, "parameter") for p in args.params))
        except (GraphError, IndexError) as exc:
            raise UsageError(str(exc)) from None
    elif args.params:
        raise UsageError(f"unknown construction {args.name!r}; known: {', '.join(CONSTRUCTION_NAMES)}")
    else:
        g = parse_graph(args.name)
    if cfg.fmt == "graph6":
        _emit(cfg, g.to_graph6())
    elif cfg.fmt == "json":
        stats = basic_stats(g)
        _emit(cfg, _dumps({"graph6": g.to_graph6(), "n": g.n, "edges": g.edge_count,
                           "edge_list": [list(e) for e in g.edges()], **stats}))
    else:
        _emit(cfg, f"n={g.n} e={g.edge_count}\n" + "\n".join(f"{u} {v}" for u, v in g.edges()))
    return 0


def cmd_check(args, cfg: RunConfig) -> int:
    host = parse_graph(args.host)
    pattern = parse_graph(args.pattern)
    emb = contains(host, Pattern.from_graph(pattern, args.pattern))
    record = {
        "host": host.to_graph6(),
        "pattern": pattern.to_graph6(),
        "contains": emb is not None,
    }
    if args.witness and emb is not None:
        record["embedding"] = list(emb)
    if cfg.fmt == "json":
        _emit(cfg, _dumps(record))
    elif cfg.fmt == "graph6":
        _emit(cfg, "contains" if emb is not None else "free")
    else:
        line = "contains" if emb is not None else "free"
        if args.witness and emb is not None:
            line += " " + " ".join(f"{i}->{v}" for i, v in enumerate(emb))
        _emit(cfg, line)
    return 1 if emb is not None else 0


_FORMULA_FNS = {"c3prism": c3prism_turan, "p6square": p6square_turan, "p4": p4_turan,
                "path": path_turan, "main": main_theorem_value}
_FORMULA_ARITY = {"c3prism": (1,), "p6square": (1,), "p4": (1,), "mantel": (1,), "path": (2,), "main": (1, 2)}


def cmd_formula(args, cfg: RunConfig) -> int:
    vals = [_int(a, "formula argument") for a in args.args]
    if len(vals) not in _FORMULA_ARITY[args.name]:
        raise UsageError(f"formula {args.name} takes {_FORMULA_ARITY[args.name]} integer argument(s)")
    if any(v < 0 for v in vals):
        raise UsageError("arguments must be non-negative")
    if args.name == "mantel":
        family = ()
        record = {"value": mantel(vals[0]), "family": [f"turan({vals[0]},2)"], "regime": "exact"}
    else:
        try:
            fv = _FORMULA_FNS[args.name](*vals)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        family = fv.family
        record = fv.to_dict()
    if cfg.fmt == "json":
        _emit(cfg, _dumps(record))
    elif cfg.fmt == "graph6":
        _emit(cfg, "\n".join(s.build().to_graph6() for s in family))
    else:
        text = str(record["value"])
        if args.verbose:
            text += "\n" + "\n".join(record["family"])
            if record.get("exception_note"):
                text += "\nnote: " + record["exception_note"]
        _emit(cfg, text)
    return 0


def cmd_decomp(args, cfg: RunConfig) -> int:
    L = parse_graph(args.graph)
    try:
        res = decomposition_family(L, args.m_max, args.t_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.fmt == "json":
        _emit(cfg, _dumps(res.certificate()))
    else:
        _emit(cfg, "\n".join(res.members))
    return 0


def cmd_search(args, cfg: RunConfig) -> int:
    patterns = [Pattern.from_graph(parse_graph(f), f) for f in args.forbid]
    if args.seed_bound == "auto":
        seed = auto_seed(args.n, patterns)
    elif args.seed_bound == "none":
        seed = None
    else:
        seed = _int(args.seed_bound, "--seed-bound")
    try:
        config = SearchConfig(args.n, patterns, mode="enumerate" if args.enumerate else "max",
                              seed_lower_bound=seed, node_budget=args.budget,
                              parallelism=cfg.threads, allow_large=args.allow_large)
        res = turan_exact(config)
    except (FeasibilityError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    report = dict(res.certificate())
    report["stats"] = res.stats()
    if args.graphs:
        _atomic_write(args.graphs, "".join(s + "\n" for s in res.extremal))
    if cfg.fmt == "json":
        _emit(cfg, _dumps(report))
    elif cfg.fmt == "graph6":
        _emit(cfg, "\n".join(res.extremal))
    else:
        rel = "=" if res.exhaustive else ">="
        lines = [f"ex({args.n}; {', '.join(args.forbid)}) {rel} {res.max_edges}"]
        if not res.exhaustive:
            lines.append("search budget exhausted: value is a lower bound only")
        lines += [f"  {s}" for s in res.extremal]
        _emit(cfg, "\n".join(lines))
    return 0


def _verify_jobs(claim: str, n: int | None, profile: str, workers: int):
    from . import verify as V

    def one_n(fn, default_max):
        return (lambda: fn(n, workers, n_min=n)) if n is not None else (lambda: fn(default_max, workers))

    top = 8 if profile == "quick" else 9
    table = {
        "thm1.2": one_n(V.verify_theorem_1_2, top),
        "thm1.3": one_n(V.verify_theorem_1_3, top),
        "thm4.2": one_n(V.verify_p6square, top),
        "thm5.1": (lambda: [V.verify_theorem_5_1(n, workers)]) if n is not None
        else (lambda: [V.verify_theorem_5_1(m, workers) for m in range(6, top + 1)]),
        "thm1.1": V.verify_main_lower_bound,
        "thm2.2": lambda: V.verify_path_turan(n if n is not None else top, workers=workers),
        "lem3.1": lambda: V.verify_lemma_3_1(2),
        "lem3.2": lambda: V.verify_lemma_3_2(2),
        "sec4": V.verify_section_4_lemmas,
        "lem4.3": lambda: [V.verify_six_vertex_cap()],
        "claim4.4": lambda: [V.verify_attachment_types()],
        "lem4.5": lambda: [V.verify_two_attachments()],
        "lem4.6": lambda: [V.verify_h1_core_cap()],
        "lem4.7": lambda: [V.verify_h2_core_cap()],
        "formulas": V.verify_formula_properties,
    }
    if claim not in table:
        raise UsageError(f"unknown claim {claim!r}; known: all, {', '.join(table)}")
    return table[claim]


VERIFY_CLAIMS = ("all", "thm1.1", "thm1.2", "thm1.3", "thm2.2", "thm4.2", "thm5.1", "lem3.1", "lem3.2",
                 "sec4", "lem4.3", "claim4.4", "lem4.5", "lem4.6", "lem4.7", "formulas")


def cmd_verify(args, cfg: RunConfig) -> int:
    from . import verify as V

    if args.claim == "all":
        if args.n is not None:
            raise UsageError("--n applies to a single claim, not 'all'")
        report = V.run_all(args.profile, args.out, cfg.threads)
        certs = report["certificates"]
    else:
        certs = _verify_jobs(args.claim, args.n, args.profile, cfg.threads)()
        if args.out:
            V.write_bundle(certs, args.out)
    if cfg.fmt == "json":
        print(_dumps([c.to_dict() for c in certs]))
    else:
        for c in certs:
            print(f"{c.claim_id}: {c.verdict}")
            if isinstance(c.observed, dict) and c.observed.get("extremal"):
                for g6 in c.observed["extremal"]:
                    print(f"  {g6}")
            if c.note:
                print(f"  note: {c.note}")
    return 1 if any(c.verdict == "fail" for c in certs) else 0


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n{GRAMMAR}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "graph6"), default="text")
    common.add_argument("--out", help="write the report here (atomically) instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $PRISM_TURAN_THREADS, then available CPUs)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="prism-turan", description="Exact Turan numbers for odd prisms.",
                     epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common], help="build a named graph")
    p.add_argument("name", help="construction name or graph argument")
    p.add_argument("params", nargs="*")

    p = sub.add_parser("check", parents=[common], help="test whether host contains pattern")
    p.add_argument("--host", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--witness", action="store_true", help="print an embedding when found")

    p = sub.add_parser("formula", parents=[common], help="closed-form Turan numbers")
    p.add_argument("name", choices=FORMULAS)
    p.add_argument("args", nargs="+")

    p = sub.add_parser("decomp", parents=[common], help="decomposition family")
    p.add_argument("--graph", required=True)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--t-max", type=int, default=None)

    p = sub.add_parser("search", parents=[common], help="exhaustive Turan-number oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forbid", action="append", required=True)
    p.add_argument("--enumerate", action="store_true", help="list every extremal class")
    p.add_argument("--seed-bound", default="auto", help="auto, none, or an edge count")
    p.add_argument("--budget", type=int, default=None, help="node budget")
    p.add_argument("--allow-large", action="store_true", help="run above the feasibility guard")
    p.add_argument("--graphs", help="also write extremal graph6 lines to this file")

    p = sub.add_parser("verify", parents=[common], help="check claims and write certificates")
    p.add_argument("claim", choices=VERIFY_CLAIMS)
    p.add_argument("--profile", choices=("quick", "full"), default="quick")
    p.add_argument("--n", type=int, default=None, help="restrict to one order")
    return parser


COMMANDS = {
    "construct": cmd_construct,
    "check": cmd_check,
    "formula": cmd_formula,
    "decomp": cmd_decomp,
    "search": cmd_search,
    "verify": cmd_verify,
}


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    threads = args.threads if args.threads is not None else default_workers()
    if threads < 1:
        sys.stderr.write("--threads must be >= 1\n")
        return 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig(args.command, threads, args.format, args.out)
    try:
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n{GRAMMAR}\n")
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
