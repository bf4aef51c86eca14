"""Command-line front end: ``lagrangian <command> MATROID [options]``.

MATROID is a path to a matroid (``ground``/``flat``) or graph file, or the
name of a bundled fixture (``M_A``, ``M_B``, ``M_C``, ``U24``).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import biflats as bf
from .collapse import (
    FreenessViolation,
    apply_sequence,
    loads_sequence,
    theorem1_sequence,
    theorem2_sequence,
)
from .complexes import ComplexError, SimplicialComplex, bergman_complex, join
from .homology import betti_gf2, reduced_euler
from .matroid import Matroid, MatroidError, format_matroid, load, loads
from .shelling import default_budget, is_shellable

KINDS = ("biflats", "conormal", "unmixed", "bergman", "bergman-dual", "join")


@dataclass
class RunConfig:
    input: str
    kind: str = "biflats"
    theorem: int = 1
    verify: bool = False
    budget: int = 0
    output: str | None = None
    deterministic: bool = True


def load_input(source: str) -> Matroid:
    p = Path(source)
    if p.exists():
        return load(source)
    stem = p.stem if p.suffix else source
    data = resources.files("lagrangian") / "data"
    for ext in (".matroid", ".graph"):
        candidate = data / f"{stem}{ext}"
        if candidate.is_file():
            return loads(candidate.read_text(encoding="utf-8"), stem)
    raise FileNotFoundError(f"no such file or bundled fixture: {source}")


def build_complex(m: Matroid, kind: str) -> SimplicialComplex:
    if kind == "biflats":
        return bf.biflats_complex(m)
    if kind == "conormal":
        return bf.conormal_complex(m)
    if kind == "unmixed":
        return bf.unmixed_complex(m)
    if kind == "bergman":
        return bergman_complex(m)
    if kind == "bergman-dual":
        return bergman_complex(m.dual())
    if kind == "join":
        return join(bergman_complex(m, "M:"), bergman_complex(m.dual(), "D:"))
    raise ValueError(f"unknown complex kind {kind!r}")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_info(cfg: RunConfig, args) -> int:
    m = load_input(cfg.input)
    d = m.dual()
    biflats = bf.enumerate_biflats(m)
    mixed = sum(b.mixed for b in biflats)
    lines = [
        f"ground {m.n}",
        f"rank {m.r}",
        f"dual-rank {d.r}",
        f"flats {len(m.flats)}",
        f"dual-flats {len(d.flats)}",
        f"biflats {len(biflats)}",
        f"mixed {mixed}",
        f"uniform {'yes' if bf.is_uniform(m) else 'no'}",
    ]
    _emit("\n".join(lines) + "\n", cfg.output)
    return 0


def cmd_dual(cfg: RunConfig, args) -> int:
    _emit(format_matroid(load_input(cfg.input).dual()), cfg.output)
    return 0


def cmd_biflats(cfg: RunConfig, args) -> int:
    m = load_input(cfg.input)
    show = (lambda b: b.short()) if args.compact else str
    if args.hasse:
        lines = [f"{show(a)} < {show(b)}" for a, b in bf.hasse(m)]
    else:
        lines = [show(b) for b in bf.enumerate_biflats(m)]
    _emit("".join(line + "\n" for line in lines), cfg.output)
    return 0


def cmd_complex(cfg: RunConfig, args) -> int:
    m = load_input(cfg.input)
    _emit(build_complex(m, cfg.kind).dumps(), cfg.output)
    return 0


def cmd_collapse(cfg: RunConfig, args) -> int:
    m = load_input(cfg.input)
    target_kind = "unmixed" if cfg.theorem == 1 else "conormal"
    make = theorem1_sequence if cfg.theorem == 1 else theorem2_sequence
    if cfg.output:
        partial = Path(cfg.output + ".partial")
        with partial.open("w", encoding="utf-8") as stream:
            seq = make(m, stream=stream)
        Path(cfg.output).write_text(seq.dumps(), encoding="utf-8")
        partial.unlink()
        text = Path(cfg.output).read_text(encoding="utf-8")
    else:
        seq = make(m)
        text = seq.dumps()
        sys.stdout.write(text)
    if not cfg.verify:
        return 0
    source = bf.biflats_complex(m)
    replay = loads_sequence(text, source.vertices)
    try:
        result = apply_sequence(source, replay)
    except FreenessViolation as exc:
        print(f"verify: FAILED: {exc}", file=sys.stderr)
        return 1
    if result != build_complex(m, target_kind):
        print(f"verify: FAILED: end state is not the {target_kind} complex", file=sys.stderr)
        return 1
    print(f"verify: OK ({len(replay)} pairs, biflats -> {target_kind})", file=sys.stderr)
    return 0


def cmd_homology(cfg: RunConfig, args) -> int:
    cx = build_complex(load_input(cfg.input), cfg.kind)
    lines = [f"b~{i} = {b}" for i, b in enumerate(betti_gf2(cx))]
    lines.append(f"chi~ = {reduced_euler(cx)}")
    _emit("\n".join(lines) + "\n", cfg.output)
    return 0


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_check(cfg: RunConfig, args) -> int:
    cx = build_complex(load_input(cfg.input), cfg.kind)
    if args.shellable:
        cert = is_shellable(cx, cfg.budget, obstructions=not args.no_obstructions)
        lines = [cert.describe()]
        if cert.witness:
            lines.append(f"# {cert.witness}")
    else:
        lines = [
            f"max-facet-cardinality {cx.max_facet_cardinality()}",
            f"dimension {cx.dimension()}",
            f"pure {_yn(cx.is_pure())}",
            f"flag {_yn(cx.is_flag())}",
        ]
    _emit("\n".join(lines) + "\n", cfg.output)
    return 0


def cmd_report(cfg: RunConfig, args) -> int:
    m = load_input(cfg.input)
    header = f"{'complex':<10} {'max-card':>8} {'pure':>5} {'flag':>5} {'shellable':<16} betti"
    lines = [f"# {m.name or cfg.input}: n={m.n} rank={m.r} dual-rank={m.dual().r}", header]
    for kind in ("conormal", "biflats", "unmixed"):
        cx = build_complex(m, kind)
        shell = "skipped" if args.no_shellable else is_shellable(cx, cfg.budget).describe()
        betti = ",".join(map(str, betti_gf2(cx)))
        lines.append(f"{kind:<10} {cx.max_facet_cardinality():>8} {_yn(cx.is_pure()):>5} "
                     f"{_yn(cx.is_flag()):>5} {shell:<16} ({betti})")
    _emit("\n".join(lines) + "\n", cfg.output)
    return 0


COMMANDS = {
    "info": cmd_info,
    "dual": cmd_dual,
    "biflats": cmd_biflats,
    "complex": cmd_complex,
    "collapse": cmd_collapse,
    "homology": cmd_homology,
    "check": cmd_check,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lagrangian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("input", help="matroid/graph file or bundled fixture name")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        return p

    add("info", "summary of a matroid and its biflats")
    add("dual", "print the dual matroid")
    p = add("biflats", "list biflats")
    p.add_argument("--hasse", action="store_true", help="print cover relations instead")
    p.add_argument("--compact", action="store_true", help="use 12|E style labels")
    for name, help in (("complex", "export a complex"), ("homology", "reduced GF(2) Betti numbers")):
        p = add(name, help)
        p.add_argument("--kind", choices=KINDS, default="biflats")
    p = add("collapse", "synthesize an elementary-collapse sequence")
    p.add_argument("--theorem", type=int, choices=(1, 2), default=1,
                   help="1: onto the unmixed complex, 2: onto the conormal complex")
    p.add_argument("--verify", action="store_true", help="replay the written sequence and check the end state")
    p = add("check", "purity/flagness, or shellability with --shellable")
    p.add_argument("--kind", choices=KINDS, default="biflats")
    p.add_argument("--shellable", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--deterministic", action="store_true",
                   help="accepted for compatibility; the search is always single-threaded")
    p.add_argument("--no-obstructions", action="store_true", help="use the backtracking search alone")
    p = add("report", "property table for the three complexes")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--no-shellable", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    budget = getattr(args, "budget", None)
    cfg = RunConfig(
        input=args.input,
        kind=getattr(args, "kind", "biflats"),
        theorem=getattr(args, "theorem", 1),
        verify=getattr(args, "verify", False),
        budget=default_budget() if budget is None else budget,
        output=args.output,
        deterministic=getattr(args, "deterministic", True),
    )
    try:
        return COMMANDS[args.command](cfg, args)
    except (MatroidError, ComplexError, FileNotFoundError, ValueError) as exc:
        print(f"lagrangian: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
