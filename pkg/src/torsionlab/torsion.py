"""Generalized Nijenhuis torsions, Frolicher-Nijenhuis brackets, defects,
polarizations and Haantjes brackets of polynomial operator fields.

All results are :class:`TwoFormField` values computed on coordinate basis
pairs.  Level ``m`` recursions apply the previous level to transformed
arguments by contracting its components, which is legitimate because every
level ``m >= 1`` torsion is tensorial.

Several quantities have two or three independent computation routes
(``gen_torsion`` / ``gen_torsion_closed``, ``fn_bracket`` /
``fn_bracket_components``, the three ``polarization`` methods); the test
suite checks them against one another.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Sequence

from .geometry import (
    Chart,
    OperatorField,
    TwoFormField,
    VectorField,
    lie_bracket,
    op_apply,
    op_commutator,
)
from .polycore import MultiPoly, UsageError

__all__ = [
    "CommutativityError",
    "defect",
    "defect_recurrence_check",
    "fn_bracket",
    "fn_bracket_components",
    "fn_bracket_functional",
    "gen_torsion",
    "gen_torsion_closed",
    "h1_bracket",
    "h2_bracket",
    "haantjes",
    "higher_haantjes",
    "multilinearity_check",
    "nijenhuis",
    "nijenhuis_functional",
    "pairwise_commute",
    "polarization",
    "TorsionCache",
]

# Normalization of the antisymmetrizer in the local FN component formula.
# The bracket [j k] is the plain difference term(j,k) - term(k,j); matching
# the definitional bracket needs no extra factor.
FN_LOCAL_NORMALIZATION = 1

# Level recurrence of the polarization: each unordered pair {j, k} contributes the
# fully symmetrized integrand (both A_j and A_k in the last group).
POLREC_ORDERED_PAIRS = False


class CommutativityError(UsageError):
    """Operators required to commute pairwise do not."""


def _check_level(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise UsageError(f"level must be an integer >= 1, got {m!r}")


def _same_chart(ops: Sequence[OperatorField]) -> Chart:
    chart = ops[0].chart
    for op in ops[1:]:
        if op.chart != chart:
            raise UsageError("all operators must share one chart")
    return chart


# -- Nijenhuis torsion ----------------------------------------------------------


def nijenhuis_functional(A: OperatorField, X: VectorField, Y: VectorField) -> VectorField:
    """``A^2[X,Y] + [AX,AY] - A([X,AY] + [AX,Y])`` evaluated directly."""
    AX, AY = op_apply(A, X), op_apply(A, Y)
    inner = lie_bracket(X, AY) + lie_bracket(AX, Y)
    return op_apply(A, op_apply(A, lie_bracket(X, Y))) + lie_bracket(AX, AY) - op_apply(A, inner)


def nijenhuis(A: OperatorField) -> TwoFormField:
    chart = A.chart
    return TwoFormField.from_basis(
        chart, lambda j, k: nijenhuis_functional(A, chart.basis_vector(j), chart.basis_vector(k))
    )


# -- generalized torsions -------------------------------------------------------


def _torsion_step(W: TwoFormField, A: OperatorField) -> TwoFormField:
    # A^2 W(X,Y) + W(AX,AY) - A(W(X,AY) + W(AX,Y)), with A^2 W - A(...) = A(A W - ...)
    return W.pullback(A) + (W.left(A) - W.inner_pullback(A)).left(A)


def gen_torsion(A: OperatorField, m: int) -> TwoFormField:
    """Level-``m`` torsion by the defining recursion, starting from ``nijenhuis``."""
    _check_level(m)
    W = nijenhuis(A)
    if m == 1:
        return W
    for _ in range(m - 1):
        W = _torsion_step(W, A)
    return W


def gen_torsion_closed(A: OperatorField, m: int) -> TwoFormField:
    """Level-``m`` torsion from the double binomial sum of Lie brackets.

    ``sum_{p,q} (-1)^(p+q) C(m,p) C(m,q) A^(p+q) [A^(m-p) X, A^(m-q) Y]``,
    using explicit brackets of the fields ``A^r d_j``.
    """
    _check_level(m)
    chart = A.chart
    powers = [OperatorField.identity(chart)]
    for _ in range(2 * m):
        powers.append(powers[-1] @ A)

    def on(j, k):
        acc = VectorField.zero(chart)
        for p in range(m + 1):
            X = powers[m - p].column(j)
            for q in range(m + 1):
                Y = powers[m - q].column(k)
                br = lie_bracket(X, Y)
                if br.is_zero():
                    continue
                c = comb(m, p) * comb(m, q) * (-1) ** (p + q)
                acc = acc + op_apply(powers[p + q], br) * chart.const(c)
        return acc

    return TwoFormField.from_basis(chart, on)


def haantjes(A: OperatorField) -> TwoFormField:
    return gen_torsion(A, 2)


# -- Frolicher-Nijenhuis bracket -----------------------------------------------


def fn_bracket_functional(A: OperatorField, B: OperatorField, X: VectorField, Y: VectorField) -> VectorField:
    AX, AY, BX, BY = op_apply(A, X), op_apply(A, Y), op_apply(B, X), op_apply(B, Y)
    XY = lie_bracket(X, Y)
    out = op_apply(A, op_apply(B, XY)) + op_apply(B, op_apply(A, XY))
    out = out + lie_bracket(AX, BY) + lie_bracket(BX, AY)
    out = out - op_apply(A, lie_bracket(X, BY) + lie_bracket(BX, Y))
    out = out - op_apply(B, lie_bracket(X, AY) + lie_bracket(AX, Y))
    return out


def fn_bracket(A: OperatorField, B: OperatorField) -> TwoFormField:
    _same_chart([A, B])
    chart = A.chart
    return TwoFormField.from_basis(
        chart, lambda j, k: fn_bracket_functional(A, B, chart.basis_vector(j), chart.basis_vector(k))
    )


def fn_bracket_components(A: OperatorField, B: OperatorField) -> TwoFormField:
    """FN bracket from the local index formula.

    ``[[A,B]]^i_{jk} = sum_l ( A^l_[j d_l B^i_k] - A^i_l d_[j B^l_k]
    + B^l_[j d_l A^i_k] - B^i_l d_[j A^l_k] )`` with ``[j k]`` the plain
    difference over the swapped pair.
    """
    _same_chart([A, B])
    chart = A.chart
    n = chart.dim
    a, b = A.entries, B.entries

    def term(i, j, k):
        acc = chart.zero()
        for l in range(n):
            acc = acc + a[l][j] * b[i][k].diff(l) - a[i][l] * b[l][k].diff(j)
            acc = acc + b[l][j] * a[i][k].diff(l) - b[i][l] * a[l][k].diff(j)
        return acc

    comps = {}
    for j, k in combinations(range(n), 2):
        for i in range(n):
            comps[(i, j, k)] = (term(i, j, k) - term(i, k, j)).scale(FN_LOCAL_NORMALIZATION)
    return TwoFormField(chart, comps)


# -- defects and polarizations -------------------------------------------------


class TorsionCache:
    """Write-once memo of ``gen_torsion(op, m)`` keyed by operator value."""

    def __init__(self):
        self._store: dict[tuple[int, OperatorField], TwoFormField] = {}

    def __call__(self, A: OperatorField, m: int) -> TwoFormField:
        key = (m, A)
        W = self._store.get(key)
        if W is None:
            W = gen_torsion(A, m)
            self._store[key] = W
        return W

    def __len__(self) -> int:
        return len(self._store)


def defect(m: int, ops: Sequence[OperatorField], cache: TorsionCache | None = None) -> TwoFormField:
    """Alternating sum over non-empty subsets ``I`` of ``(-1)^(k-|I|) tau^(m)_{sum_I A_i}``."""
    _check_level(m)
    if not ops:
        raise UsageError("defect needs at least one operator")
    chart = _same_chart(ops)
    cache = cache if cache is not None else TorsionCache()
    k = len(ops)
    # subset sums by increasing bitmask, reusing the sum without the top bit
    sums: list[OperatorField | None] = [None] * (1 << k)
    total = TwoFormField.zero(chart)
    for mask in range(1, 1 << k):
        low = mask & -mask
        rest = mask ^ low
        op = ops[low.bit_length() - 1]
        sums[mask] = op if not rest else sums[rest] + op
        W = cache(sums[mask], m)
        sign = -1 if (k - bin(mask).count("1")) % 2 else 1
        total = total + W if sign > 0 else total - W
    return total


def defect_recurrence_check(m: int, ops: Sequence[OperatorField], cache: TorsionCache | None = None) -> bool:
    """Check ``D_{k+1}(A1..) = D_k(A1+A2, A3..) - D_k(A1, A3..) - D_k(A2, A3..)``."""
    if len(ops) < 2:
        raise UsageError("the defect recurrence needs at least two operators")
    cache = cache if cache is not None else TorsionCache()
    lhs = defect(m, ops, cache)
    A1, A2, rest = ops[0], ops[1], list(ops[2:])
    rhs = defect(m, [A1 + A2] + rest, cache) - defect(m, [A1] + rest, cache) - defect(m, [A2] + rest, cache)
    return lhs == rhs


def _bracket_step(W: TwoFormField, A: OperatorField, B: OperatorField) -> TwoFormField:
    # (AB+BA) W + W(AX,BY) + W(BX,AY) - A(W(X,BY) + W(BX,Y)) - B(W(X,AY) + W(AX,Y))
    out = W.polarized_pullback(A, B)
    out = out + (W.left(B) - W.inner_pullback(B)).left(A)
    return out + (W.left(A) - W.inner_pullback(A)).left(B)


def _polarization_subset(m, ops, cache):
    return defect(m, ops, cache)


def _polarization_lambda(m, ops):
    chart = ops[0].chart
    names = chart.fresh_names("lambda", 2 * m)
    ext = chart.with_params(names)
    L = OperatorField.zero(ext)
    for name, op in zip(names, ops):
        L = L + op.to_chart(ext) * ext.var(name)
    W = gen_torsion(L, m)
    mono = {name: 1 for name in names}
    comps = {key: c.coeff(mono).to_context(chart.ctx) for key, c in W.comps.items()}
    return TwoFormField(chart, comps)


def _polarization_recurrence(m, ops):
    chart = ops[0].chart
    memo: dict[tuple[int, ...], TwoFormField] = {}

    def P(idx: tuple[int, ...]) -> TwoFormField:
        if idx in memo:
            return memo[idx]
        level = len(idx) // 2
        if level == 1:
            out = fn_bracket(ops[idx[0]], ops[idx[1]])
        else:
            out = TwoFormField.zero(chart)
            for j, k in combinations(idx, 2):
                rest = tuple(i for i in idx if i != j and i != k)
                sub = P(rest)
                if POLREC_ORDERED_PAIRS:
                    out = out + _bracket_step(sub, ops[j], ops[k]) * 2
                else:
                    out = out + _bracket_step(sub, ops[j], ops[k])
        memo[idx] = out
        return out

    return P(tuple(range(2 * m)))


_METHODS = {
    "subset": "subset",
    "subset-sum": "subset",
    "lambda": "lambda",
    "lambda-extraction": "lambda",
    "recurrence": "recurrence",
}


def polarization(m: int, ops: Sequence[OperatorField], method: str = "subset",
                 cache: TorsionCache | None = None) -> TwoFormField:
    """Polarization of the level-``m`` torsion: the defect of index ``2m``.

    ``method`` selects the route: ``"subset"`` (alternating subset sum),
    ``"lambda"`` (coefficient of ``l1*...*l2m`` in the torsion of
    ``sum l_i A_i``) or ``"recurrence"`` (level recursion seeded by the FN
    bracket).  No ``1/(2m)!`` factor is applied.
    """
    _check_level(m)
    ops = list(ops)
    if len(ops) != 2 * m:
        raise UsageError(f"level {m} polarization takes exactly {2 * m} operators, got {len(ops)}")
    _same_chart(ops)
    try:
        route = _METHODS[method]
    except KeyError:
        raise UsageError(f"unknown polarization method {method!r}") from None
    if route == "subset":
        return _polarization_subset(m, ops, cache if cache is not None else TorsionCache())
    if route == "lambda":
        return _polarization_lambda(m, ops)
    return _polarization_recurrence(m, ops)


def pairwise_commute(ops: Sequence[OperatorField]) -> bool:
    return all(op_commutator(a, b).is_zero() for a, b in combinations(ops, 2))


def multilinearity_check(m: int, ops: Sequence[OperatorField], f, slot: int, *,
                         addend: OperatorField | None = None, check_commuting: bool = True,
                         method: str = "subset") -> bool:
    """Linearity of the polarization in entry ``slot`` under scaling by ``f``.

    True iff ``P(.., f A_s, ..) = f P(.., A_s, ..)`` and
    ``P(.., A_s + C, ..) = P(.., A_s, ..) + P(.., C, ..)`` with ``C = addend``
    (default ``f A_s``).  With a non-constant ``f`` at ``m >= 2`` the operators
    must commute pairwise, otherwise :class:`CommutativityError` is raised
    (pass ``check_commuting=False`` to compute anyway).
    """
    _check_level(m)
    ops = list(ops)
    if len(ops) != 2 * m:
        raise UsageError(f"level {m} polarization takes exactly {2 * m} operators, got {len(ops)}")
    if not 0 <= slot < len(ops):
        raise UsageError(f"slot {slot} out of range")
    chart = _same_chart(ops)
    f = f if isinstance(f, MultiPoly) else chart.const(f)
    if check_commuting and m >= 2 and not f.is_constant() and not pairwise_commute(ops):
        raise CommutativityError("scaling by a function needs pairwise commuting operators")
    cache = TorsionCache()

    def P(slot_op):
        args = ops[:slot] + [slot_op] + ops[slot + 1:]
        return polarization(m, args, method, cache)

    base = P(ops[slot])
    scaled = P(ops[slot] * f)
    if scaled != base * f:
        return False
    C = addend if addend is not None else ops[slot] * f
    return P(ops[slot] + C) == base + P(C)


# -- Haantjes brackets ----------------------------------------------------------


def higher_haantjes(A: OperatorField, B: OperatorField, m: int) -> TwoFormField:
    """Haantjes bracket of level ``m``, seeded by the FN bracket at ``m = 1``."""
    _check_level(m)
    H = fn_bracket(A, B)
    for _ in range(m - 1):
        H = _bracket_step(H, A, B)
    return H


def h1_bracket(A: OperatorField, B: OperatorField) -> TwoFormField:
    """``B``-twisted Haantjes step of ``tau_A`` plus the ``A``-twisted step of ``tau_B``."""
    _same_chart([A, B])
    tA, tB = nijenhuis(A), nijenhuis(B)
    return _torsion_step(tA, B) + _torsion_step(tB, A)


def h2_bracket(A: OperatorField, B: OperatorField) -> TwoFormField:
    """Bracket step of ``tau_A`` along ``(A, B)`` plus the ``A``-step of ``[[A, B]]``."""
    _same_chart([A, B])
    tA = nijenhuis(A)
    return _bracket_step(tA, A, B) + _torsion_step(fn_bracket(A, B), A)
