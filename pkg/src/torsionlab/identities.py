"""The identity suite I1-I14, run on concrete operators.

Each identity is evaluated exactly on the given operators, topped up with
seeded random operators and scalars where more inputs are needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from .catalog import make_diagonal, powers_of, random_poly
from .geometry import OperatorField, TwoFormField, op_commutator, t_form
from .polycore import MultiPoly
from .torsion import (
    TorsionCache,
    defect,
    defect_recurrence_check,
    fn_bracket,
    fn_bracket_components,
    gen_torsion,
    gen_torsion_closed,
    h1_bracket,
    h2_bracket,
    higher_haantjes,
    nijenhuis,
    polarization,
)

__all__ = ["IDENTITIES", "IdentityResult", "SuiteInputs", "run_identity_suite"]


@dataclass
class IdentityResult:
    id: str
    name: str
    passed: bool

    def line(self) -> str:
        return f"{self.id:<4} {'PASS' if self.passed else 'FAIL'}  {self.name}"


@dataclass
class SuiteInputs:
    A: OperatorField
    B: OperatorField
    extra: list[OperatorField]  # at least three more operators
    scalars: list[MultiPoly]  # at least four scalar functions f, g, h, k


def prepare_inputs(operators: Sequence[OperatorField], scalars: Sequence[MultiPoly] = (),
                   seed: int = 0) -> SuiteInputs:
    ops = list(operators)
    if not ops:
        raise ValueError("the identity suite needs at least one operator")
    chart = ops[0].chart
    rng = random.Random(seed)
    while len(ops) < 5:
        ops.append(OperatorField(chart, [[random_poly(chart, 1, rng) for _ in range(chart.dim)]
                                         for _ in range(chart.dim)]))
    fs = list(scalars)
    while len(fs) < 4:
        fs.append(random_poly(chart, 1, rng, nonzero=True))
    return SuiteInputs(ops[0], ops[1], ops[2:], fs)


def _i1(s: SuiteInputs) -> bool:
    return all(gen_torsion(X, m) == gen_torsion_closed(X, m) for X in (s.A, s.B) for m in (1, 2, 3))


def _i2(s):
    return all(fn_bracket(X, X) == nijenhuis(X) * 2 for X in (s.A, s.B))


def _i3(s):
    return fn_bracket_components(s.A, s.B) == fn_bracket(s.A, s.B) and \
        fn_bracket_components(s.A, s.A) == fn_bracket(s.A, s.A)


def _i4(s):
    f = s.scalars[0]
    df = s.A.chart.differential(f)
    return fn_bracket(s.A * f, s.B) == fn_bracket(s.A, s.B) * f - t_form(s.B, s.A, df)


def _i5(s):
    A, (f, g) = s.A, s.scalars[:2]
    I = A.chart.identity()
    df = A.chart.differential(f)
    first = nijenhuis(A * f) == nijenhuis(A) * (f * f) - t_form(A, A, df) * f
    second = gen_torsion(A * f + I * g, 2) == gen_torsion(A, 2) * f ** 4
    return first and second


def _i6(s):
    return polarization(1, [s.A, s.B]) == fn_bracket(s.A, s.B)


def _i7(s):
    return all(polarization(m, [s.A] * (2 * m)) == gen_torsion(s.A, m) * factorial(2 * m) for m in (1, 2))


def _i8(s):
    quads = [[s.A, s.B], [s.A, s.B] + s.extra[:2]]
    for m, ops in zip((1, 2), quads):
        ref = polarization(m, ops, "subset")
        if polarization(m, ops, "lambda") != ref or polarization(m, ops, "recurrence") != ref:
            return False
    return True


def _i9(s):
    cache = TorsionCache()
    return defect_recurrence_check(1, [s.A, s.B, s.extra[0]], cache) and \
        defect_recurrence_check(2, [s.A, s.B] + s.extra[:2], cache)


def _i10(s):
    return defect(1, [s.A, s.B, s.extra[0]]).is_zero() and defect(2, [s.A, s.B] + s.extra[:3]).is_zero()


def delta2_expansion_holds(A: OperatorField, B: OperatorField, m: int) -> bool:
    cache = TorsionCache()
    lhs = defect(m, [A, B], cache)
    rhs = TwoFormField.zero(A.chart)
    for k in range(1, 2 * m):
        rhs = rhs + polarization(m, [A] * (2 * m - k) + [B] * k, "subset", cache) * comb(2 * m, k)
    return lhs == rhs * Fraction(1, factorial(2 * m))


def _i11(s):
    return all(delta2_expansion_holds(s.A, s.B, m) for m in (1, 2))


def prop317_holds(A: OperatorField, B: OperatorField) -> bool:
    cache = TorsionCache()
    P = lambda ops: polarization(2, ops, "subset", cache)
    return (P([A, A, B, B]) == (higher_haantjes(A, B, 2) + h1_bracket(A, B)) * 4
            and P([A, A, A, B]) == h2_bracket(A, B) * 6
            and P([A, B, B, B]) == h2_bracket(B, A) * 6)


def _i12(s):
    return prop317_holds(s.A, s.B)


def _i13(s):
    A, B = s.A, s.B
    if not op_commutator(A, B).is_zero():
        A, B = powers_of(s.A, 2)
    I = A.chart.identity()
    f, g, h, k = s.scalars[:4]
    return higher_haantjes(I * f + A * g, I * h + B * k, 2) == higher_haantjes(A, B, 2) * (g * g * k * k)


def _i14(s):
    A, B = s.A, s.B
    if not (A.is_diagonal() and B.is_diagonal()):
        A = make_diagonal([A[i, i] for i in range(A.n)], A.chart)
        B = make_diagonal([B[i, i] for i in range(B.n)], B.chart)
    return higher_haantjes(A, B, 2).is_zero()


IDENTITIES: list[tuple[str, str, Callable[[SuiteInputs], bool]]] = [
    ("I1", "closed vs recursive generalized torsion, m = 1..3", _i1),
    ("I2", "[[A,A]] = 2 tau_A", _i2),
    ("I3", "FN component formula matches the definition", _i3),
    ("I4", "[[fA,B]] = f[[A,B]] - (T(B,A) - T^T(B,A))(df,.,.)", _i4),
    ("I5", "scaling laws of tau_(fA) and tau^(2)_(fA+gI)", _i5),
    ("I6", "P^(1) = FN bracket", _i6),
    ("I7", "P^(m)(A,...,A) = (2m)! tau^(m)_A, m = 1, 2", _i7),
    ("I8", "polarization: subset = lambda = recurrence, m = 1, 2", _i8),
    ("I9", "defect recurrence in the first argument", _i9),
    ("I10", "defect of index 2m+1 vanishes, m = 1, 2", _i10),
    ("I11", "Delta_2 expansion into mixed polarizations, m = 1, 2", _i11),
    ("I12", "P^(2)(AABB), P^(2)(AAAB), P^(2)(ABBB) via H, H1, H2", _i12),
    ("I13", "H^(2)_(fI+gA, hI+kB) = g^2 k^2 H^(2)_(A,B) for commuting A, B", _i13),
    ("I14", "H^(2) vanishes on a diagonal pair", _i14),
]


def run_identity_suite(operators: Sequence[OperatorField], scalars: Sequence[MultiPoly] = (),
                       seed: int = 0, only: Sequence[str] | None = None) -> list[IdentityResult]:
    inputs = prepare_inputs(operators, scalars, seed)
    results = []
    for ident, name, fn in IDENTITIES:
        if only is not None and ident not in only:
            continue
        results.append(IdentityResult(ident, name, bool(fn(inputs))))
    return results
