"""Seeded generators of operator families for tests, demos and the CLI."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .geometry import Chart, OperatorField
from .polycore import MultiPoly, UsageError

__all__ = [
    "FamilySpec",
    "KINDS",
    "default_chart",
    "make_diagonal",
    "make_random",
    "powers_of",
    "random_poly",
]

KINDS = ("diagonal", "constant", "nilpotent-jordan", "polynomial-random", "powers-of")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    dim: int
    degree: int = 1
    seed: int = 0
    count: int = 3  # family size, only used by "powers-of"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UsageError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.dim < 1:
            raise UsageError("dimension must be >= 1")
        if self.degree < 0:
            raise UsageError("degree bound must be >= 0")


def default_chart(n: int) -> Chart:
    return Chart(tuple(f"x{i}" for i in range(1, n + 1)))


def _coefficient(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 2)))


def random_poly(chart: Chart, degree: int, rng: random.Random, *, nonzero: bool = False) -> MultiPoly:
    """Dense random polynomial in the chart coordinates, total degree <= ``degree``."""
    n = chart.dim
    ctx = chart.ctx
    pad = (0,) * (len(ctx) - n)
    while True:
        terms = {}
        for d in range(degree + 1):
            for combo in combinations_with_replacement(range(n), d):
                exps = [0] * n
                for v in combo:
                    exps[v] += 1
                terms[tuple(exps) + pad] = _coefficient(rng)
        p = MultiPoly(ctx, terms)
        if p or not nonzero:
            return p


def make_diagonal(eigenvalues: Sequence[MultiPoly], chart: Chart | None = None) -> OperatorField:
    if chart is None:
        if not eigenvalues or not isinstance(eigenvalues[0], MultiPoly):
            raise UsageError("pass a chart when eigenvalues are plain numbers")
        chart = Chart(eigenvalues[0].ctx.coords, eigenvalues[0].ctx.params)
    if len(eigenvalues) != chart.dim:
        raise UsageError(f"expected {chart.dim} eigenvalues, got {len(eigenvalues)}")
    return OperatorField.diagonal(chart, list(eigenvalues))


def powers_of(A: OperatorField, count: int) -> list[OperatorField]:
    """``[A, A^2, ..., A^count]``; pairwise commuting by construction."""
    out = [A]
    for _ in range(count - 1):
        out.append(out[-1] @ A)
    return out


def make_random(spec: FamilySpec, chart: Chart | None = None):
    """Deterministic operator for ``spec``.

    Returns a single :class:`OperatorField`, except for ``"powers-of"`` which
    returns the list ``[A, A^2, ..., A^count]`` of powers of a random base.
    """
    chart = chart or default_chart(spec.dim)
    if chart.dim != spec.dim:
        raise UsageError("chart dimension does not match the family spec")
    rng = random.Random(spec.seed)
    n = spec.dim
    zero = chart.zero()
    if spec.kind == "diagonal":
        return make_diagonal([random_poly(chart, spec.degree, rng) for _ in range(n)], chart)
    if spec.kind == "constant":
        return OperatorField(chart, [[chart.const(_coefficient(rng)) for _ in range(n)] for _ in range(n)])
    if spec.kind == "nilpotent-jordan":
        rows = [[zero] * n for _ in range(n)]
        for i in range(n - 1):
            rows[i][i + 1] = random_poly(chart, spec.degree, rng, nonzero=True)
        return OperatorField(chart, rows)
    base = OperatorField(chart, [[random_poly(chart, spec.degree, rng) for _ in range(n)] for _ in range(n)])
    if spec.kind == "polynomial-random":
        return base
    return powers_of(base, spec.count)
