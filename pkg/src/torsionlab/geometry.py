"""Polynomial tensor fields on a single coordinate chart.

Everything here is a thin immutable wrapper around :class:`MultiPoly`
components.  Vector-valued 2-forms are stored by their components on the
coordinate basis, ``W[i, j, k] = (W(d_j, d_k))^i`` for ``j < k``, which is
enough because every form in this package is tensorial.  Indices are 0-based
internally; the text formats are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .polycore import Context, ContextError, MultiPoly, UsageError

__all__ = [
    "Chart",
    "CovectorField",
    "OperatorField",
    "TwoFormField",
    "VectorField",
    "form_eval",
    "lie_bracket",
    "op_add",
    "op_apply",
    "op_commutator",
    "op_compose",
    "op_scale",
    "pair",
    "t_form",
    "t_tensor",
]


@dataclass(frozen=True)
class Chart:
    """Local coordinates ``coords`` plus optional formal parameters.

    Parameters behave as constants under differentiation; they only exist so
    that parameter-dependent operators can reuse ordinary arithmetic.
    """

    coords: tuple[str, ...]
    params: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        object.__setattr__(self, "params", tuple(self.params))
        if not self.coords:
            raise UsageError("a chart needs at least one coordinate")
        names = self.coords + self.params
        if len(set(names)) != len(names):
            raise ContextError(f"duplicate variable names in {names}")

    @cached_property
    def ctx(self) -> Context:
        return Context(self.coords).extend(self.params)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def base(self) -> Chart:
        return Chart(self.coords) if self.params else self

    def with_params(self, names: Sequence[str]) -> Chart:
        return Chart(self.coords, self.params + tuple(names))

    def fresh_names(self, stem: str, count: int) -> list[str]:
        taken = set(self.ctx.names)
        out = []
        for i in range(1, count + 1):
            name = f"{stem}{i}"
            while name in taken:
                name = "_" + name
            out.append(name)
        return out

    # constructors
    def var(self, name: str | int) -> MultiPoly:
        return self.ctx.var(name)

    def const(self, c) -> MultiPoly:
        return self.ctx.const(c)

    def zero(self) -> MultiPoly:
        return self.ctx.zero()

    def basis_vector(self, j: int) -> VectorField:
        """Coordinate field ``d/dx_j`` (0-based)."""
        one, zero = self.ctx.one(), self.ctx.zero()
        return VectorField(self, [one if i == j else zero for i in range(self.dim)])

    def basis_covector(self, j: int) -> CovectorField:
        one, zero = self.ctx.one(), self.ctx.zero()
        return CovectorField(self, [one if i == j else zero for i in range(self.dim)])

    def identity(self) -> OperatorField:
        return OperatorField.identity(self)

    def differential(self, f: MultiPoly) -> CovectorField:
        """``df`` as the covector of coordinate partials."""
        return CovectorField(self, [f.diff(l) for l in range(self.dim)])


def _check_chart(a, b) -> None:
    if a.chart is not b.chart and a.chart != b.chart:
        raise ContextError(f"chart mismatch: {a.chart} vs {b.chart}")


def _as_poly(chart: Chart, f) -> MultiPoly:
    if isinstance(f, MultiPoly):
        if f.ctx != chart.ctx:
            raise ContextError("scalar does not belong to the chart")
        return f
    return chart.const(f)


class _Components:
    """Shared behaviour of vector and covector fields."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Iterable):
        comps = tuple(_as_poly(chart, c) for c in components)
        if len(comps) != chart.dim:
            raise UsageError(f"expected {chart.dim} components, got {len(comps)}")
        self.chart = chart
        self.components = comps

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, [chart.zero()] * chart.dim)

    def __getitem__(self, i: int) -> MultiPoly:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __add__(self, other):
        _check_chart(self, other)
        return type(self)(self.chart, [a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        _check_chart(self, other)
        return type(self)(self.chart, [a - b for a, b in zip(self, other)])

    def __neg__(self):
        return type(self)(self.chart, [-a for a in self])

    def __mul__(self, f):
        f = _as_poly(self.chart, f)
        return type(self)(self.chart, [f * a for a in self])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self):
        return hash((type(self).__name__, self.components))

    def __repr__(self):
        inner = ", ".join(str(c) for c in self.components)
        return f"{type(self).__name__}([{inner}])"

    def to_chart(self, chart: Chart):
        return type(self)(chart, [c.to_context(chart.ctx) for c in self])


class VectorField(_Components):
    __slots__ = ()

    def derivative(self, f: MultiPoly) -> MultiPoly:
        """Directional derivative ``X(f) = sum_i X^i d_i f``."""
        out = self.chart.zero()
        for i, c in enumerate(self.components):
            if c:
                out = out + c * f.diff(i)
        return out


class CovectorField(_Components):
    __slots__ = ()


class OperatorField:
    """A (1,1)-tensor field; ``entries[i][j]`` is ``A^i_j`` (row = upper index)."""

    __slots__ = ("chart", "entries", "_hash")

    def __init__(self, chart: Chart, entries: Sequence[Sequence]):
        rows = tuple(tuple(_as_poly(chart, e) for e in row) for row in entries)
        n = chart.dim
        if len(rows) != n or any(len(r) != n for r in rows):
            raise UsageError(f"operator must be {n}x{n}")
        self.chart = chart
        self.entries = rows
        self._hash = None

    @classmethod
    def identity(cls, chart: Chart) -> OperatorField:
        one, zero = chart.ctx.one(), chart.zero()
        n = chart.dim
        return cls(chart, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, chart: Chart) -> OperatorField:
        z = chart.zero()
        return cls(chart, [[z] * chart.dim for _ in range(chart.dim)])

    @classmethod
    def diagonal(cls, chart: Chart, values: Sequence) -> OperatorField:
        if len(values) != chart.dim:
            raise UsageError(f"expected {chart.dim} eigenvalues, got {len(values)}")
        z = chart.zero()
        n = chart.dim
        return cls(chart, [[values[i] if i == j else z for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return self.chart.dim

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> VectorField:
        """``A d_j``."""
        return VectorField(self.chart, [row[j] for row in self.entries])

    def __add__(self, other: OperatorField) -> OperatorField:
        _check_chart(self, other)
        return OperatorField(
            self.chart, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: OperatorField) -> OperatorField:
        _check_chart(self, other)
        return OperatorField(
            self.chart, [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> OperatorField:
        return OperatorField(self.chart, [[-a for a in r] for r in self.entries])

    def __mul__(self, f) -> OperatorField:
        f = _as_poly(self.chart, f)
        return OperatorField(self.chart, [[f * a for a in r] for r in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, OperatorField):
            return op_compose(self, other)
        if isinstance(other, VectorField):
            return op_apply(self, other)
        if isinstance(other, TwoFormField):
            return other.left(self)
        return NotImplemented

    def __call__(self, X: VectorField) -> VectorField:
        return op_apply(self, X)

    def power(self, k: int) -> OperatorField:
        if k < 0:
            raise UsageError("operator powers must be natural numbers")
        out = OperatorField.identity(self.chart)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def is_diagonal(self) -> bool:
        return all(e.is_zero() for i, r in enumerate(self.entries) for j, e in enumerate(r) if i != j)

    def to_chart(self, chart: Chart) -> OperatorField:
        return OperatorField(chart, [[e.to_context(chart.ctx) for e in r] for r in self.entries])

    def __eq__(self, other):
        if not isinstance(other, OperatorField):
            return NotImplemented
        return self.chart == other.chart and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self):
        rows = "; ".join(", ".join(str(e) for e in r) for r in self.entries)
        return f"OperatorField([{rows}])"


class TwoFormField:
    """Vector-valued 2-form stored as ``{(i, j, k): W^i_{jk}}`` with ``j < k``."""

    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: dict[tuple[int, int, int], MultiPoly] | None = None):
        n = chart.dim
        zero = chart.zero()
        full = {}
        comps = comps or {}
        for key in comps:
            i, j, k = key
            if not (0 <= i < n and 0 <= j < k < n):
                raise UsageError(f"component key {key} is not of the form (i, j<k)")
        for i in range(n):
            for j, k in combinations(range(n), 2):
                c = comps.get((i, j, k), zero)
                full[(i, j, k)] = _as_poly(chart, c)
        self.chart = chart
        self.comps = full

    @classmethod
    def zero(cls, chart: Chart) -> TwoFormField:
        return cls(chart, {})

    @classmethod
    def from_basis(cls, chart: Chart, fn) -> TwoFormField:
        """Build from ``fn(j, k) -> VectorField`` evaluated on basis pairs ``j < k``."""
        comps = {}
        for j, k in combinations(range(chart.dim), 2):
            v = fn(j, k)
            for i, c in enumerate(v.components):
                comps[(i, j, k)] = c
        return cls(chart, comps)

    @classmethod
    def _trusted(cls, chart: Chart, comps: dict) -> TwoFormField:
        w = cls.__new__(cls)
        w.chart = chart
        w.comps = comps
        return w

    @property
    def n(self) -> int:
        return self.chart.dim

    def component(self, i: int, j: int, k: int) -> MultiPoly:
        """``W^i_{jk}`` for any ``j, k``, using antisymmetry."""
        if j == k:
            return self.chart.zero()
        if j < k:
            return self.comps[(i, j, k)]
        return -self.comps[(i, k, j)]

    def __getitem__(self, key: tuple[int, int, int]) -> MultiPoly:
        return self.component(*key)

    def on_basis(self, j: int, k: int) -> VectorField:
        return VectorField(self.chart, [self.component(i, j, k) for i in range(self.n)])

    def items(self) -> Iterator[tuple[tuple[int, int, int], MultiPoly]]:
        return iter(sorted(self.comps.items()))

    def nonzero(self) -> list[tuple[tuple[int, int, int], MultiPoly]]:
        return [(key, c) for key, c in self.items() if c]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps.values())

    def degree(self) -> int:
        return max((c.degree() for c in self.comps.values()), default=-1)

    def _map(self, fn) -> TwoFormField:
        return TwoFormField._trusted(self.chart, {key: fn(c) for key, c in self.comps.items()})

    def __add__(self, other: TwoFormField) -> TwoFormField:
        _check_chart(self, other)
        return TwoFormField._trusted(self.chart, {key: c + other.comps[key] for key, c in self.comps.items()})

    def __sub__(self, other: TwoFormField) -> TwoFormField:
        _check_chart(self, other)
        return TwoFormField._trusted(self.chart, {key: c - other.comps[key] for key, c in self.comps.items()})

    def __neg__(self) -> TwoFormField:
        return self._map(lambda c: -c)

    def __mul__(self, f) -> TwoFormField:
        if isinstance(f, MultiPoly):
            f = _as_poly(self.chart, f)
            return self._map(lambda c: f * c)
        try:
            f = Fraction(f)
        except TypeError:
            return NotImplemented
        return self._map(lambda c: c.scale(f))

    __rmul__ = __mul__

    def left(self, A: OperatorField) -> TwoFormField:
        """``(A W)(X, Y) = A(W(X, Y))``."""
        _check_chart(self, A)
        n = self.n
        out = {}
        pairs = list(combinations(range(n), 2))
        for j, k in pairs:
            col = [self.comps[(l, j, k)] for l in range(n)]
            for i in range(n):
                acc = self.chart.zero()
                row = A.entries[i]
                for l in range(n):
                    if row[l] and col[l]:
                        acc = acc + row[l] * col[l]
                out[(i, j, k)] = acc
        return TwoFormField._trusted(self.chart, out)

    def _contract(self, coeff) -> TwoFormField:
        # (W o coeff)^i_{jk} = sum_{a<b} W^i_{ab} coeff(a, b, j, k)
        n = self.n
        pairs = list(combinations(range(n), 2))
        zero = self.chart.zero()
        out = {(i, j, k): zero for i in range(n) for j, k in pairs}
        for a, b in pairs:
            col = [self.comps[(i, a, b)] for i in range(n)]
            if not any(col):
                continue
            for j, k in pairs:
                c = coeff(a, b, j, k)
                if not c:
                    continue
                for i in range(n):
                    if col[i]:
                        out[(i, j, k)] = out[(i, j, k)] + col[i] * c
        return TwoFormField._trusted(self.chart, out)

    def pullback(self, A: OperatorField) -> TwoFormField:
        """``(X, Y) -> W(AX, AY)``."""
        _check_chart(self, A)
        E = A.entries
        return self._contract(lambda a, b, j, k: E[a][j] * E[b][k] - E[b][j] * E[a][k])

    def polarized_pullback(self, A: OperatorField, B: OperatorField) -> TwoFormField:
        """``(X, Y) -> W(AX, BY) + W(BX, AY)``; equals ``2 W(AX, AY)`` when ``A = B``."""
        _check_chart(self, A)
        _check_chart(self, B)
        E, F = A.entries, B.entries

        def coeff(a, b, j, k):
            return (E[a][j] * F[b][k] - E[b][j] * F[a][k]) + (F[a][j] * E[b][k] - F[b][j] * E[a][k])

        return self._contract(coeff)

    def inner_pullback(self, A: OperatorField) -> TwoFormField:
        """``(X, Y) -> W(AX, Y) + W(X, AY)``."""
        _check_chart(self, A)
        n = self.n
        E = A.entries
        zero = self.chart.zero()
        out = {}
        for j, k in combinations(range(n), 2):
            for i in range(n):
                acc = zero
                for a in range(n):
                    if E[a][j]:
                        acc = acc + self.component(i, a, k) * E[a][j]
                    if E[a][k]:
                        acc = acc + self.component(i, j, a) * E[a][k]
                out[(i, j, k)] = acc
        return TwoFormField._trusted(self.chart, out)

    def to_chart(self, chart: Chart) -> TwoFormField:
        return TwoFormField._trusted(chart, {key: c.to_context(chart.ctx) for key, c in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, TwoFormField):
            return NotImplemented
        return self.chart == other.chart and self.comps == other.comps

    __hash__ = None

    def __repr__(self):
        nz = self.nonzero()
        if not nz:
            return "TwoFormField(0)"
        inner = ", ".join(f"{i + 1},{j + 1},{k + 1}: {c}" for (i, j, k), c in nz)
        return f"TwoFormField({inner})"


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """``[X, Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i)``."""
    _check_chart(X, Y)
    n = X.chart.dim
    out = []
    for i in range(n):
        acc = X.chart.zero()
        for j in range(n):
            if X[j]:
                d = Y[i].diff(j)
                if d:
                    acc = acc + X[j] * d
            if Y[j]:
                d = X[i].diff(j)
                if d:
                    acc = acc - Y[j] * d
        out.append(acc)
    return VectorField(X.chart, out)


def op_apply(A: OperatorField, X: VectorField) -> VectorField:
    _check_chart(A, X)
    out = []
    for row in A.entries:
        acc = A.chart.zero()
        for a, x in zip(row, X.components):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    return VectorField(A.chart, out)


def op_compose(A: OperatorField, B: OperatorField) -> OperatorField:
    """Matrix product ``AB`` (apply ``B`` first)."""
    _check_chart(A, B)
    n = A.n
    zero = A.chart.zero()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for l in range(n):
                a, b = A.entries[i][l], B.entries[l][j]
                if a and b:
                    acc = acc + a * b
            row.append(acc)
        rows.append(row)
    return OperatorField(A.chart, rows)


def op_add(A: OperatorField, B: OperatorField) -> OperatorField:
    return A + B


def op_scale(f, A: OperatorField) -> OperatorField:
    return A * f


def op_commutator(A: OperatorField, B: OperatorField) -> OperatorField:
    return op_compose(A, B) - op_compose(B, A)


def pair(alpha: CovectorField, X: VectorField) -> MultiPoly:
    _check_chart(alpha, X)
    acc = X.chart.zero()
    for a, x in zip(alpha.components, X.components):
        if a and x:
            acc = acc + a * x
    return acc


def t_tensor(A: OperatorField, B: OperatorField, alpha: CovectorField, X: VectorField,
             Y: VectorField, transpose: bool = False) -> VectorField:
    """``<alpha, X> (AB) Y - <alpha, AX> B Y``; ``transpose`` swaps ``X`` and ``Y``."""
    for other in (B, alpha, X, Y):
        _check_chart(A, other)
    if transpose:
        X, Y = Y, X
    return op_apply(op_compose(A, B), Y) * pair(alpha, X) - op_apply(B, Y) * pair(alpha, op_apply(A, X))


def t_form(A: OperatorField, B: OperatorField, alpha: CovectorField) -> TwoFormField:
    """``(X, Y) -> (T(A,B) - T^T(A,B))(alpha, X, Y)`` as a 2-form."""
    chart = A.chart

    def on(j, k):
        X, Y = chart.basis_vector(j), chart.basis_vector(k)
        return t_tensor(A, B, alpha, X, Y) - t_tensor(A, B, alpha, X, Y, transpose=True)

    return TwoFormField.from_basis(chart, on)


def form_eval(W: TwoFormField, X: VectorField, Y: VectorField) -> VectorField:
    """``(W(X, Y))^i = sum_{j,k} W^i_{jk} X^j Y^k``."""
    _check_chart(W, X)
    _check_chart(W, Y)
    n = W.n
    out = []
    for i in range(n):
        acc = W.chart.zero()
        for j, k in combinations(range(n), 2):
            w = W.comps[(i, j, k)]
            if not w:
                continue
            c = X[j] * Y[k] - X[k] * Y[j]
            if c:
                acc = acc + w * c
        out.append(acc)
    return VectorField(W.chart, out)
