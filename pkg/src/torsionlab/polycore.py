"""Exact sparse multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`.  A polynomial lives in a
:class:`Context`, an ordered namespace of variables, each tagged either as a
chart coordinate (``"coord"``) or as a formal parameter (``"param"``).
Monomials are dense exponent tuples indexed by the context, so the term map
``{exponents: coefficient}`` without zero coefficients is a canonical form and
structural equality is polynomial equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "COORD",
    "PARAM",
    "Context",
    "ContextError",
    "Monomial",
    "MultiPoly",
    "UsageError",
    "coeff_extract",
    "poly_add",
    "poly_diff",
    "poly_eval",
    "poly_mul",
]

COORD = "coord"
PARAM = "param"

Monomial = tuple  # dense exponent vector, one entry per context variable
Scalar = Union[int, Fraction]


class ContextError(ValueError):
    """Operands live in different variable contexts, or a variable is unknown."""


class UsageError(ValueError):
    """An operation was called with arguments outside its domain."""


@dataclass(frozen=True)
class Context:
    """Ordered variable namespace shared by a family of polynomials."""

    names: tuple[str, ...]
    kinds: tuple[str, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        kinds = tuple(self.kinds) if self.kinds else (COORD,) * len(names)
        if len(kinds) != len(names):
            raise ContextError("one kind tag per variable is required")
        if len(set(names)) != len(names):
            raise ContextError(f"duplicate variable names in {names}")
        for kind in kinds:
            if kind not in (COORD, PARAM):
                raise ContextError(f"unknown variable kind {kind!r}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str | int) -> int:
        if isinstance(name, int):
            if not 0 <= name < len(self.names):
                raise ContextError(f"variable index {name} out of range")
            return name
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"unknown variable {name!r}") from None

    @property
    def coords(self) -> tuple[str, ...]:
        return tuple(n for n, k in zip(self.names, self.kinds) if k == COORD)

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(n for n, k in zip(self.names, self.kinds) if k == PARAM)

    def extend(self, params: Sequence[str]) -> Context:
        """Return a context with extra formal parameters appended."""
        return Context(self.names + tuple(params), self.kinds + (PARAM,) * len(params))

    def var(self, name: str | int) -> MultiPoly:
        i = self.index(name)
        exps = [0] * len(self.names)
        exps[i] = 1
        return MultiPoly(self, {tuple(exps): Fraction(1)})

    def const(self, c: Scalar) -> MultiPoly:
        return MultiPoly.constant(self, c)

    def zero(self) -> MultiPoly:
        return MultiPoly(self, {})

    def one(self) -> MultiPoly:
        return MultiPoly.constant(self, 1)

    def monomial(self, exponents: Mapping[str, int] | Sequence[int]) -> Monomial:
        """Build a dense exponent tuple from ``{name: exponent}``."""
        if isinstance(exponents, Mapping):
            exps = [0] * len(self.names)
            for name, e in exponents.items():
                if not isinstance(e, int) or e < 0:
                    raise UsageError(f"exponent of {name!r} must be a natural number")
                exps[self.index(name)] = e
            return tuple(exps)
        exps = tuple(exponents)
        if len(exps) != len(self.names) or any(e < 0 for e in exps):
            raise UsageError(f"bad exponent vector {exps}")
        return exps


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _integral(terms: dict) -> tuple[int, list[tuple[Monomial, int]]]:
    den = lcm(*(c.denominator for c in terms.values()))
    return den, [(e, c.numerator * (den // c.denominator)) for e, c in terms.items()]


def _grlex_key(exps: Monomial):
    # later variables take precedence; see render order in __str__
    return (sum(exps), exps[::-1])


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: Context, terms: Mapping[Monomial, Scalar] | None = None):
        self.ctx = ctx
        clean: dict[Monomial, Fraction] = {}
        if terms:
            n = len(ctx)
            for exps, c in terms.items():
                if len(exps) != n:
                    raise ContextError(f"monomial {exps} does not match context of {n} variables")
                c = _coerce(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx: Context, terms: dict) -> MultiPoly:
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, ctx: Context, c: Scalar) -> MultiPoly:
        c = _coerce(c)
        return cls._raw(ctx, {(0,) * len(ctx): c} if c else {})

    # -- structure -------------------------------------------------------

    def _same_ctx(self, other: MultiPoly) -> None:
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise ContextError(
                f"context mismatch: {self.ctx.names} vs {other.ctx.names}"
            )

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._same_ctx(other)
            return other
        return MultiPoly.constant(self.ctx, _coerce(other))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True))

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names: Iterable[str | int]) -> int:
        idx = [self.ctx.index(n) for n in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.ctx), Fraction(0))

    def variables(self) -> tuple[str, ...]:
        used = [False] * len(self.ctx)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(n for n, u in zip(self.ctx.names, used) if u)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> MultiPoly:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MultiPoly:
        return (-self) + other

    def scale(self, c: Scalar) -> MultiPoly:
        c = _coerce(c)
        if not c:
            return MultiPoly._raw(self.ctx, {})
        if c == 1:
            return self
        return MultiPoly._raw(self.ctx, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._same_ctx(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return MultiPoly._raw(self.ctx, {})
        if len(a) < len(b):
            a, b = b, a
        # integer numerators over a common denominator; one Fraction per output term
        da, ia = _integral(a)
        db, ib = _integral(b)
        out: dict[Monomial, int] = {}
        get = out.get
        for e2, c2 in ib:
            for e1, c1 in ia:
                e = tuple([x + y for x, y in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        den = da * db
        if den == 1:
            return MultiPoly._raw(self.ctx, {e: Fraction(c) for e, c in out.items() if c})
        return MultiPoly._raw(self.ctx, {e: Fraction(c, den) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if not isinstance(k, int) or k < 0:
            raise UsageError("polynomial powers must be natural numbers")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus and evaluation ----------------------------------------

    def diff(self, var: str | int) -> MultiPoly:
        i = self.ctx.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MultiPoly._raw(self.ctx, out)

    def eval(self, point: Mapping[str | int, Scalar]) -> Fraction:
        values = [None] * len(self.ctx)
        for key, v in point.items():
            values[self.ctx.index(key)] = _coerce(v)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    v = values[i]
                    if v is None:
                        raise ContextError(f"no value for variable {self.ctx.names[i]!r}")
                    term *= v**k
            total += term
        return total

    def subs(self, point: Mapping[str | int, Scalar]) -> MultiPoly:
        """Substitute rational values for some variables."""
        values = {self.ctx.index(k): _coerce(v) for k, v in point.items()}
        out: dict[Monomial, Fraction] = {}
        for e, c in self.terms.items():
            exps = list(e)
            for i, v in values.items():
                if exps[i]:
                    c = c * v ** exps[i]
                    exps[i] = 0
            if c:
                key = tuple(exps)
                out[key] = out.get(key, 0) + c
        return MultiPoly(self.ctx, out)

    def coeff(self, monomial: Monomial | Mapping[str, int]) -> MultiPoly:
        return coeff_extract(self, monomial)

    def to_context(self, ctx: Context) -> MultiPoly:
        """Re-express in another context; used variables must exist there."""
        if ctx is self.ctx or ctx == self.ctx:
            return self
        mapping = []
        for name in self.ctx.names:
            mapping.append(ctx._index.get(name))
        out = {}
        n = len(ctx)
        for e, c in self.terms.items():
            exps = [0] * n
            for i, k in enumerate(e):
                if k:
                    j = mapping[i]
                    if j is None:
                        raise ContextError(f"variable {self.ctx.names[i]!r} missing from target context")
                    exps[j] = k
            out[tuple(exps)] = c
        return MultiPoly._raw(ctx, out)

    # -- comparison and printing ----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return (other.ctx is self.ctx or other.ctx == self.ctx) and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == MultiPoly.constant(self.ctx, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.names, frozenset(self.terms.items())))
        return self._hash

    def _monomial_str(self, exps: Monomial) -> str:
        parts = []
        for name, k in zip(self.ctx.names, exps):
            if k == 1:
                parts.append(name)
            elif k:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for idx, (e, c) in enumerate(self):
            mono = self._monomial_str(e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f"{'-' if c < 0 else '+'} {body}")
        return " ".join(out)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def poly_diff(p: MultiPoly, v: str | int) -> MultiPoly:
    return p.diff(v)


def poly_eval(p: MultiPoly, point: Mapping[str | int, Scalar]) -> Fraction:
    return p.eval(point)


def coeff_extract(p: MultiPoly, m: Monomial | Mapping[str, int]) -> MultiPoly:
    """Coefficient of the parameter monomial ``m`` in ``p``.

    ``m`` may only involve formal parameters.  The result keeps the context of
    ``p`` but carries no parameter variables; it is the polynomial in the chart
    coordinates multiplying exactly ``m`` (terms with any other parameter
    exponents are discarded).  Since every input here is at most linear in
    each parameter, the coefficient of ``l1*...*lk`` equals the mixed partial
    derivative with respect to ``l1, ..., lk``.
    """
    ctx = p.ctx
    target = ctx.monomial(m)
    param_idx = [i for i, k in enumerate(ctx.kinds) if k == PARAM]
    for i, k in enumerate(target):
        if k and ctx.kinds[i] != PARAM:
            raise UsageError(f"coefficient extraction over chart variable {ctx.names[i]!r}")
    want = tuple(target[i] for i in param_idx)
    out = {}
    for e, c in p.terms.items():
        if tuple(e[i] for i in param_idx) == want:
            exps = list(e)
            for i in param_idx:
                exps[i] = 0
            out[tuple(exps)] = c
    return MultiPoly._raw(ctx, out)
