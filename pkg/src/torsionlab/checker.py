"""Haantjes module / vector space verdicts and randomized zero testing.

Every form involved is tensorial, so vanishing is tested on the coordinate
basis pairs ``(d_j, d_k)``, ``j < k``; that is a complete test.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .catalog import random_poly
from .geometry import OperatorField, TwoFormField, op_commutator
from .polycore import MultiPoly, UsageError
from .torsion import TorsionCache, _check_level, _same_chart, gen_torsion, polarization

__all__ = [
    "InvariantError",
    "ModuleReport",
    "SZReport",
    "VERDICTS",
    "Witness",
    "check_module",
    "first_nonzero",
    "is_gen_nijenhuis",
    "sz_verify",
]

VERDICTS = ("haantjes-vector-space", "haantjes-module", "not-applicable", "fails")
BASIS_NOTE = "tested on coordinate basis pairs (d_j, d_k), j < k"


class InvariantError(RuntimeError):
    """A computed result contradicts an identity the engine relies on."""


@dataclass
class Witness:
    check: str
    index: tuple[int, int, int]  # 1-based (i, j, k)
    value: str

    def to_dict(self) -> dict:
        return {"check": self.check, "index": list(self.index), "value": self.value}


def first_nonzero(W: TwoFormField) -> tuple[tuple[int, int, int], MultiPoly] | None:
    """Lexicographically first nonzero component, 0-based key."""
    for key, c in W.items():
        if c:
            return key, c
    return None


def _witness(check: str, W: TwoFormField) -> Witness | None:
    hit = first_nonzero(W)
    if hit is None:
        return None
    (i, j, k), c = hit
    return Witness(check, (i + 1, j + 1, k + 1), str(c))


# -- Schwartz-Zippel ------------------------------------------------------------


@dataclass
class SZReport:
    trials: int
    sample_box: int
    degree_bound: int
    failure_probability_bound: Fraction
    outcome: str  # "all-zero-at-samples" | "nonzero-witness"
    seed: int | None = None
    witness_point: dict[str, Fraction] | None = None
    witness_component: str | None = None
    witness_value: Fraction | None = None

    @property
    def all_zero(self) -> bool:
        return self.outcome == "all-zero-at-samples"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["failure_probability_bound"] = str(self.failure_probability_bound)
        if self.witness_point is not None:
            out["witness_point"] = {k: str(v) for k, v in self.witness_point.items()}
        if self.witness_value is not None:
            out["witness_value"] = str(self.witness_value)
        return out


def _as_components(target) -> tuple[list[tuple[str, MultiPoly]], tuple[str, ...]]:
    if isinstance(target, TwoFormField):
        comps = [(f"{i + 1},{j + 1},{k + 1}", c) for (i, j, k), c in target.items()]
        return comps, target.chart.ctx.names
    if isinstance(target, MultiPoly):
        return [("0", target)], target.ctx.names
    polys = list(target)
    if not polys:
        return [], ()
    return [(str(i), p) for i, p in enumerate(polys)], polys[0].ctx.names


def sz_verify(target, trials: int = 20, box: int = 1000, *, seed: int = 0,
              degree_bound: int | None = None, variables: Sequence[str] | None = None,
              points: Iterable[Sequence] | None = None) -> SZReport:
    """Probabilistic zero test by exact evaluation at random integer points.

    ``target`` is a :class:`TwoFormField`, a polynomial, a sequence of
    polynomials, or a closure ``point -> iterable of rationals`` (then
    ``degree_bound`` and ``variables`` are required).  Points are drawn
    uniformly from ``[-box, box]^n`` unless given explicitly via ``points``.
    A nonzero polynomial of degree ``d`` survives one trial with probability at
    most ``d / (2 box + 1)``.
    """
    if trials < 1:
        raise UsageError("trials must be >= 1")
    if box < 1:
        raise UsageError("sample box must be >= 1")
    if callable(target) and not isinstance(target, (TwoFormField, MultiPoly)):
        if degree_bound is None or variables is None:
            raise UsageError("closure targets need degree_bound and variables")
        names = tuple(variables)
        evaluate: Callable = target
    else:
        comps, names = _as_components(target)
        deg = max((p.degree() for _, p in comps), default=-1)
        degree_bound = max(deg, 0) if degree_bound is None else degree_bound

        def evaluate(point):
            return [(label, p.eval(point)) for label, p in comps]

    per_trial = min(Fraction(1), Fraction(degree_bound, 2 * box + 1))
    rng = random.Random(seed)
    fixed = [tuple(p) for p in points] if points is not None else None
    count = len(fixed) if fixed is not None else trials
    bound = per_trial ** count
    for t in range(count):
        coords = fixed[t] if fixed is not None else [rng.randint(-box, box) for _ in names]
        point = {name: Fraction(v) for name, v in zip(names, coords)}
        for idx, item in enumerate(evaluate(point)):
            label, value = item if isinstance(item, tuple) else (str(idx), item)
            if value:
                return SZReport(count, box, degree_bound, bound, "nonzero-witness", seed,
                                point, label, Fraction(value))
    return SZReport(count, box, degree_bound, bound, "all-zero-at-samples", seed)


# -- module checks --------------------------------------------------------------


def is_gen_nijenhuis(A: OperatorField, m: int) -> bool:
    return gen_torsion(A, m).is_zero()


@dataclass
class ModuleReport:
    level: int
    torsion_A_vanishes: bool
    torsion_B_vanishes: bool
    commutes: bool
    mixed_conditions: list[bool]
    verdict: str
    witness: Witness | None = None
    spot_check: dict | None = None
    randomized: list[dict] | None = None
    seed: int = 0
    basis: str = BASIS_NOTE

    def to_dict(self) -> dict:
        out = asdict(self)
        out["witness"] = self.witness.to_dict() if self.witness else None
        return out

    def lines(self) -> list[str]:
        yes = lambda b: "yes" if b else "no"
        out = [
            f"level: {self.level}",
            f"basis: {self.basis}",
            f"tau^({self.level})_A vanishes: {yes(self.torsion_A_vanishes)}",
            f"tau^({self.level})_B vanishes: {yes(self.torsion_B_vanishes)}",
            f"commutes: {yes(self.commutes)}",
        ]
        for k, ok in enumerate(self.mixed_conditions, start=1):
            out.append(f"mixed k={k}: {'zero' if ok else 'nonzero'}")
        if self.spot_check:
            out.append(f"spot check: {self.spot_check['description']} -> {'zero' if self.spot_check['zero'] else 'NONZERO'}")
        if self.witness:
            w = self.witness
            out.append(f"witness: {w.check}[{w.index[0]}][{w.index[1]}][{w.index[2]}] = {w.value}")
        out.append(f"verdict: {self.verdict}")
        return out


def mixed_polarization(A: OperatorField, B: OperatorField, m: int, k: int,
                       cache: TorsionCache | None = None) -> TwoFormField:
    """``P^(m)(A x (2m-k), B x k)``."""
    return polarization(m, [A] * (2 * m - k) + [B] * k, "subset", cache)


def check_module(A: OperatorField, B: OperatorField, m: int, *, seed: int = 0,
                 randomized: tuple[int, int] | None = None, validate: bool = True) -> ModuleReport:
    """Decide whether ``A`` and ``B`` generate a level-``m`` Haantjes module or vector space.

    Both torsions must vanish and all ``2m - 1`` mixed polarizations must be
    zero; the module verdict additionally needs ``m >= 2`` and ``[A, B] = 0``.
    ``randomized=(trials, box)`` makes every zero decision through
    :func:`sz_verify` instead of exact comparison.  A positive verdict is
    spot-validated by expanding one random combination ``fA + gB``.
    """
    _check_level(m)
    chart = _same_chart([A, B])
    cache = TorsionCache()
    rng = random.Random(seed)
    sz_reports = [] if randomized else None

    def vanishes(label: str, W: TwoFormField) -> bool:
        if randomized is None:
            return W.is_zero()
        trials, box = randomized
        rep = sz_verify(W, trials, box, seed=rng.randrange(2**32))
        d = rep.to_dict()
        d["check"] = label
        sz_reports.append(d)
        return rep.all_zero

    checks: list[tuple[str, TwoFormField]] = [("tau_A", cache(A, m)), ("tau_B", cache(B, m))]
    for k in range(1, 2 * m):
        checks.append((f"P_k{k}", mixed_polarization(A, B, m, k, cache)))
    flags = [vanishes(label, W) for label, W in checks]
    witness = None
    for (label, W), ok in zip(checks, flags):
        if not ok:
            witness = _witness(label, W)
            break
    commutes = op_commutator(A, B).is_zero()
    if all(flags):
        verdict = "haantjes-module" if (m >= 2 and commutes) else "haantjes-vector-space"
    else:
        verdict = "fails"
    report = ModuleReport(m, flags[0], flags[1], commutes, flags[2:], verdict, witness,
                          None, sz_reports, seed)
    if validate and verdict != "fails":
        report.spot_check = _spot_check(A, B, m, verdict, rng, cache)
        if not report.spot_check["zero"]:
            raise InvariantError(f"spot check failed for verdict {verdict}: {report.spot_check['description']}")
    return report


def _spot_check(A, B, m, verdict, rng, cache) -> dict:
    chart = A.chart
    if verdict == "haantjes-module":
        f = random_poly(chart, 1, rng, nonzero=True)
        g = random_poly(chart, 1, rng, nonzero=True)
    else:
        f = chart.const(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
        g = chart.const(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
    W = cache(A * f + B * g, m)
    return {
        "description": f"tau^({m})_(f A + g B) with f = {f}, g = {g}",
        "f": str(f),
        "g": str(g),
        "zero": W.is_zero(),
    }
