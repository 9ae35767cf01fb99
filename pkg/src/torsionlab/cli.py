"""``torsionlab`` command line front end.

Exit status: 0 when the computation ran (including a ``fails`` verdict),
1 on usage or parse errors, 2 on an internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import torsion
from .checker import InvariantError, check_module
from .geometry import TwoFormField
from .identities import run_identity_suite
from .parsing import ParseError, Scene, parse_scene
from .polycore import ContextError, UsageError

__all__ = ["MACHINE_SCHEMA", "main", "run"]

MACHINE_SCHEMA = {
    "type": "object",
    "required": ["command", "chart", "results", "report", "seed"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "chart": {
            "type": "object",
            "required": ["dim", "vars"],
            "properties": {
                "dim": {"type": "integer", "minimum": 1},
                "vars": {"type": "array", "items": {"type": "string"}},
            },
        },
        "results": {
            "type": "object",
            "patternProperties": {
                r"^\d+,\d+,\d+$": {"type": "string"},
                r"^I\d+$": {
                    "type": "object",
                    "required": ["name", "passed"],
                    "properties": {"name": {"type": "string"}, "passed": {"type": "boolean"}},
                },
            },
            "additionalProperties": False,
        },
        "report": {"type": ["object", "null"]},
        "seed": {"type": "integer"},
    },
}


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scene", help="scene file")
    common.add_argument("--machine", action="store_true", help="print one JSON document")
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $TORSIONLAB_SEED or 0)")

    def single(p):
        p.add_argument("--operator", default=None, help="operator name (default: first in scene)")

    def pair(p):
        p.add_argument("--operators", required=True, help="two comma-separated operator names")

    def level(p, required=True):
        p.add_argument("--level", type=int, required=required, default=None if required else 1)

    parser = _ArgParser(prog="torsionlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    single(sub.add_parser("nijenhuis", parents=[common], help="Nijenhuis torsion"))
    p = sub.add_parser("gen-torsion", parents=[common], help="generalized torsion of level m")
    single(p)
    level(p)
    p.add_argument("--method", choices=["recursive", "closed"], default="recursive")
    single(sub.add_parser("haantjes", parents=[common], help="Haantjes torsion"))
    p = sub.add_parser("fn-bracket", parents=[common], help="Frolicher-Nijenhuis bracket")
    pair(p)
    p.add_argument("--method", choices=["definition", "components"], default="definition")
    p = sub.add_parser("defect", parents=[common], help="defect of index k")
    level(p)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--operators", required=True)
    p = sub.add_parser("polarize", parents=[common], help="polarization of level m")
    level(p)
    p.add_argument("--operators", required=True)
    p.add_argument("--method", choices=["subset", "lambda", "recurrence"], default="subset")
    p = sub.add_parser("hm-bracket", parents=[common], help="Haantjes bracket of level m")
    level(p)
    pair(p)
    pair(sub.add_parser("h1", parents=[common], help="auxiliary bracket H1(A, B)"))
    pair(sub.add_parser("h2", parents=[common], help="auxiliary bracket H2(A, B)"))
    p = sub.add_parser("check-module", parents=[common], help="Haantjes module / vector space test")
    level(p)
    pair(p)
    p.add_argument("--randomized", type=int, default=None, metavar="TRIALS",
                   help="decide zero tests by random evaluation with TRIALS points")
    p.add_argument("--box", type=int, default=1000, help="sample box [-B, B] for --randomized")
    sub.add_parser("verify-identities", parents=[common], help="run identities I1-I14")
    return parser


def _names(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise UsageError("empty operator list")
    return names


def _two(scene: Scene, text: str):
    names = _names(text)
    if len(names) != 2:
        raise UsageError(f"expected two operators, got {len(names)}")
    return [scene.operator(n) for n in names]


def _one(scene: Scene, name: str | None):
    if name is None:
        if not scene.operators:
            raise UsageError("scene defines no operators")
        name = next(iter(scene.operators))
    return scene.operator(name)


def _form_lines(label: str, W: TwoFormField) -> list[str]:
    nz = W.nonzero()
    if not nz:
        return ["ALL-ZERO"]
    return [f"{label}[{i + 1}][{j + 1}][{k + 1}] = {c}" for (i, j, k), c in nz]


def _form_json(W: TwoFormField) -> dict:
    return {f"{i + 1},{j + 1},{k + 1}": str(c) for (i, j, k), c in W.items()}


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("TORSIONLAB_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"TORSIONLAB_SEED must be an integer, got {env!r}") from None
    return 0


def _compute(args, scene: Scene, seed: int):
    """Return ``(label, form, report, identity_results, ok)``."""
    cmd = args.command
    if cmd == "nijenhuis":
        return "tau", torsion.nijenhuis(_one(scene, args.operator)), None, None, True
    if cmd == "gen-torsion":
        A = _one(scene, args.operator)
        fn = torsion.gen_torsion if args.method == "recursive" else torsion.gen_torsion_closed
        return "tau", fn(A, args.level), None, None, True
    if cmd == "haantjes":
        return "H", torsion.haantjes(_one(scene, args.operator)), None, None, True
    if cmd == "fn-bracket":
        A, B = _two(scene, args.operators)
        fn = torsion.fn_bracket if args.method == "definition" else torsion.fn_bracket_components
        return "FN", fn(A, B), None, None, True
    if cmd == "defect":
        ops = [scene.operator(n) for n in _names(args.operators)]
        if len(ops) != args.index:
            raise UsageError(f"--index {args.index} needs {args.index} operators, got {len(ops)}")
        return "Delta", torsion.defect(args.level, ops), None, None, True
    if cmd == "polarize":
        ops = [scene.operator(n) for n in _names(args.operators)]
        return "P", torsion.polarization(args.level, ops, args.method), None, None, True
    if cmd == "hm-bracket":
        A, B = _two(scene, args.operators)
        return "H", torsion.higher_haantjes(A, B, args.level), None, None, True
    if cmd in ("h1", "h2"):
        A, B = _two(scene, args.operators)
        fn = torsion.h1_bracket if cmd == "h1" else torsion.h2_bracket
        return cmd.upper(), fn(A, B), None, None, True
    if cmd == "check-module":
        A, B = _two(scene, args.operators)
        randomized = (args.randomized, args.box) if args.randomized is not None else None
        report = check_module(A, B, args.level, seed=seed, randomized=randomized)
        return None, None, report, None, True
    if cmd == "verify-identities":
        if not scene.operators:
            raise UsageError("scene defines no operators")
        scalars = [scene.scalars[n] for n in ("f", "g", "h", "k") if n in scene.scalars]
        results = run_identity_suite(list(scene.operators.values()), scalars, seed)
        return None, None, None, results, all(r.passed for r in results)
    raise UsageError(f"unknown command {cmd!r}")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        seed = _resolve_seed(args.seed)
        with open(args.scene, encoding="utf-8") as fh:
            scene = parse_scene(fh.read())
        label, form, report, idents, ok = _compute(args, scene, seed)
    except (ParseError, UsageError, ContextError, OSError) as exc:
        print(f"torsionlab: error: {exc}", file=err)
        return 1
    except InvariantError as exc:
        print(f"torsionlab: invariant violation: {exc}", file=err)
        return 2

    if args.machine:
        doc = {
            "command": args.command,
            "chart": {"dim": scene.chart.dim, "vars": list(scene.chart.coords)},
            "results": {},
            "report": None,
            "seed": seed,
        }
        if form is not None:
            doc["results"] = _form_json(form)
        if report is not None:
            doc["report"] = report.to_dict()
        if idents is not None:
            doc["results"] = {r.id: {"name": r.name, "passed": r.passed} for r in idents}
        json.dump(doc, out, indent=2, sort_keys=False)
        out.write("\n")
    else:
        if form is not None:
            lines = _form_lines(label, form)
        elif report is not None:
            lines = report.lines()
        else:
            lines = [r.line() for r in idents]
            lines.append(f"{sum(r.passed for r in idents)}/{len(idents)} identities passed")
        out.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
