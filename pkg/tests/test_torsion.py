import itertools
import random
from fractions import Fraction
from math import comb, factorial

import pytest

import _oracle
from _helpers import random_operator
from torsionlab import TwoFormField, VectorField
from torsionlab.catalog import FamilySpec, default_chart, make_diagonal, make_random, powers_of, random_poly
from torsionlab.geometry import form_eval, t_form
from torsionlab.polycore import UsageError
from torsionlab.torsion import (
    CommutativityError,
    TorsionCache,
    defect,
    defect_recurrence_check,
    fn_bracket,
    fn_bracket_components,
    gen_torsion,
    gen_torsion_closed,
    h1_bracket,
    h2_bracket,
    haantjes,
    higher_haantjes,
    multilinearity_check,
    nijenhuis,
    nijenhuis_functional,
    polarization,
)


def running_example(chart):
    x1, x2 = chart.var("x1"), chart.var("x2")
    return make_diagonal([x2, x1], chart)


# -- oracle agreement -------------------------------------------------------------


@pytest.mark.parametrize("n,seed", [(2, 0), (2, 1), (3, 2)])
def test_nijenhuis_matches_oracle(n, seed):
    chart = default_chart(n)
    A = random_operator(chart, random.Random(seed), degree=2)
    M, syms = _oracle.op_to_matrix(A)
    assert _oracle.same(nijenhuis(A), _oracle.components(_oracle.nijenhuis_fn(M, syms), n))


@pytest.mark.parametrize("n,seed", [(2, 3), (3, 4)])
def test_haantjes_matches_oracle(n, seed):
    chart = default_chart(n)
    A = random_operator(chart, random.Random(seed))
    M, syms = _oracle.op_to_matrix(A)
    assert _oracle.same(haantjes(A), _oracle.components(_oracle.gen_torsion_fn(M, syms, 2), n))


def test_fn_matches_oracle(chart3):
    rng = random.Random(5)
    A, B = random_operator(chart3, rng), random_operator(chart3, rng)
    MA, syms = _oracle.op_to_matrix(A)
    MB, _ = _oracle.op_to_matrix(B)
    assert _oracle.same(fn_bracket(A, B), _oracle.components(_oracle.fn_fn(MA, MB, syms), 3))


# -- nijenhuis / generalized torsion -------------------------------------------------


def test_nijenhuis_examples(chart2):
    rng = random.Random(0)
    I = chart2.identity()
    f = random_poly(chart2, 2, rng)
    assert nijenhuis(make_random(FamilySpec("constant", 2, seed=1))).is_zero()
    assert nijenhuis(I).is_zero() and nijenhuis(I * f).is_zero()
    x1, x2 = chart2.var("x1"), chart2.var("x2")
    tau = nijenhuis(running_example(chart2))
    assert tau.nonzero() == [((0, 0, 1), x2 - x1), ((1, 0, 1), x2 - x1)]


def test_nijenhuis_functional(chart3):
    rng = random.Random(11)
    A = random_operator(chart3, rng)
    tau = nijenhuis(A)
    d = [chart3.basis_vector(i) for i in range(3)]
    assert nijenhuis_functional(A, d[0], d[1]) == tau.on_basis(0, 1)
    X = VectorField(chart3, [random_poly(chart3, 1, rng) for _ in range(3)])
    Y = VectorField(chart3, [random_poly(chart3, 1, rng) for _ in range(3)])
    f, g = random_poly(chart3, 1, rng), random_poly(chart3, 1, rng)
    assert nijenhuis_functional(A, X, X).is_zero()
    assert nijenhuis_functional(A, X * f, Y) == nijenhuis_functional(A, X, Y) * f
    assert nijenhuis_functional(A, X * f, Y * g) == form_eval(tau, X, Y) * (f * g)


def test_gen_torsion_basics(chart2):
    A = running_example(chart2)
    assert gen_torsion(A, 2).is_zero() and gen_torsion_closed(A, 2).is_zero()
    rng = random.Random(3)
    R = random_operator(chart2, rng)
    assert gen_torsion(R, 1) == nijenhuis(R) == gen_torsion_closed(R, 1)
    assert gen_torsion(R, 2) == haantjes(R)
    assert gen_torsion(R, 3) == gen_torsion_closed(R, 3)
    with pytest.raises(UsageError):
        gen_torsion(R, 0)
    with pytest.raises(UsageError):
        gen_torsion_closed(R, 0)


def test_haantjes_diagonal_and_constant():
    rng = random.Random(7)
    for n in (1, 2, 3):
        chart = default_chart(n)
        D = make_diagonal([random_poly(chart, 2, rng) for _ in range(n)], chart)
        assert haantjes(D).is_zero()
    assert haantjes(make_random(FamilySpec("constant", 3, seed=4))).is_zero()


def test_scaling_laws(chart3):
    rng = random.Random(12)
    A = random_operator(chart3, rng)
    f, g = random_poly(chart3, 1, rng, nonzero=True), random_poly(chart3, 1, rng)
    I = chart3.identity()
    df = chart3.differential(f)
    assert nijenhuis(A * f) == nijenhuis(A) * (f * f) - t_form(A, A, df) * f
    assert not haantjes(A).is_zero()
    assert haantjes(A * f + I * g) == haantjes(A) * f**4


# -- Frolicher-Nijenhuis --------------------------------------------------------------


def test_fn_bracket_examples(chart2):
    rng = random.Random(1)
    A, B = random_operator(chart2, rng), random_operator(chart2, rng)
    assert fn_bracket(A, A) == nijenhuis(A) * 2
    assert fn_bracket(A, chart2.identity()).is_zero()
    assert fn_bracket(A, B) == nijenhuis(A + B) - nijenhuis(A) - nijenhuis(B)
    assert fn_bracket(A, B) == fn_bracket(B, A)
    D = running_example(chart2)
    assert fn_bracket_components(D, D) == nijenhuis(D) * 2
    C1 = make_random(FamilySpec("constant", 2, seed=1))
    C2 = make_random(FamilySpec("constant", 2, seed=2))
    assert fn_bracket_components(C1, C2).is_zero()
    assert fn_bracket_components(A, B) == fn_bracket(A, B)


def test_fn_scaling(chart3):
    rng = random.Random(13)
    A, B = random_operator(chart3, rng), random_operator(chart3, rng)
    f = random_poly(chart3, 1, rng, nonzero=True)
    df = chart3.differential(f)
    assert fn_bracket(A * f, B) == fn_bracket(A, B) * f - t_form(B, A, df)


# -- defects and polarization -----------------------------------------------------------


def test_defect_examples(chart2):
    rng = random.Random(2)
    A, B, C = (random_operator(chart2, rng) for _ in range(3))
    assert defect(1, [A, B]) == fn_bracket(A, B)
    assert defect(1, [A]) == nijenhuis(A)
    assert defect(1, [A, B, C]).is_zero()
    assert defect(2, [A]) == haantjes(A)
    with pytest.raises(UsageError):
        defect(1, [])


def test_defect_symmetry(chart3):
    rng = random.Random(14)
    ops = [random_operator(chart3, rng) for _ in range(3)]
    ref = defect(2, ops)
    cache = TorsionCache()
    for perm in itertools.permutations(ops):
        assert defect(2, list(perm), cache) == ref


def test_defect_recurrence(chart2):
    rng = random.Random(4)
    consts = [make_random(FamilySpec("constant", 2, seed=s)) for s in range(3)]
    assert defect_recurrence_check(1, consts)
    assert defect_recurrence_check(1, [running_example(chart2)] + [random_operator(chart2, rng) for _ in range(2)])
    assert defect_recurrence_check(2, [random_operator(chart2, rng) for _ in range(4)])
    with pytest.raises(UsageError):
        defect_recurrence_check(1, consts[:1])


def test_defect_recurrence_level2_dim3(chart3):
    rng = random.Random(15)
    assert defect_recurrence_check(2, [random_operator(chart3, rng) for _ in range(3)])


def test_defect_beyond_2m_dim3(chart3):
    rng = random.Random(16)
    ops = [random_operator(chart3, rng, degree=0) for _ in range(5)]
    assert defect(2, ops).is_zero()


def test_polarization_examples(chart2):
    rng = random.Random(5)
    A, B = random_operator(chart2, rng), random_operator(chart2, rng)
    assert polarization(1, [A, B]) == fn_bracket(A, B)
    assert polarization(2, [A] * 4) == haantjes(A) * 24
    with pytest.raises(UsageError):
        polarization(2, [A, B])
    with pytest.raises(UsageError):
        polarization(1, [A, B], method="bogus")


def test_polarization_diagonal_vanishes(chart3):
    rng = random.Random(17)
    Ds = [make_diagonal([random_poly(chart3, 1, rng) for _ in range(3)], chart3) for _ in range(4)]
    assert polarization(2, Ds).is_zero()


@pytest.mark.parametrize("method", ["lambda", "recurrence"])
def test_polarization_paths_dim3(chart3, method):
    rng = random.Random(18)
    ops = [random_operator(chart3, rng) for _ in range(4)]
    ref = polarization(2, ops, "subset")
    assert not ref.is_zero()
    assert polarization(2, ops, method) == ref


def test_polarization_is_symmetric(chart3):
    rng = random.Random(19)
    ops = [random_operator(chart3, rng) for _ in range(4)]
    cache = TorsionCache()
    ref = polarization(2, ops, cache=cache)
    assert polarization(2, ops[::-1], cache=cache) == ref
    assert polarization(2, [ops[2], ops[0], ops[3], ops[1]], cache=cache) == ref


def test_delta2_expansion(chart3):
    rng = random.Random(20)
    A, B = random_operator(chart3, rng), random_operator(chart3, rng)
    for m in (1, 2):
        cache = TorsionCache()
        rhs = TwoFormField.zero(chart3)
        for k in range(1, 2 * m):
            rhs = rhs + polarization(m, [A] * (2 * m - k) + [B] * k, cache=cache) * comb(2 * m, k)
        assert defect(m, [A, B], cache) == rhs * Fraction(1, factorial(2 * m))


def test_multilinearity_examples(chart2, chart3):
    rng = random.Random(6)
    x1, x2 = chart3.var("x1"), chart3.var("x2")
    Ds = [make_diagonal([random_poly(chart3, 1, rng) for _ in range(3)], chart3) for _ in range(4)]
    assert multilinearity_check(2, Ds, x1 * x2, 0)
    A, B = random_operator(chart2, rng), random_operator(chart2, rng)
    assert multilinearity_check(1, [A, B], Fraction(-3, 2), 0)
    f = chart2.var("x1")
    assert not multilinearity_check(1, [A, B], f, 0)
    R = random_operator(chart3, rng)
    ops = powers_of(R, 3) + [R + chart3.identity()]
    g = random_poly(chart3, 1, rng, nonzero=True)
    assert multilinearity_check(2, ops, g, 3)
    N = [random_operator(chart3, rng) for _ in range(4)]
    with pytest.raises(CommutativityError):
        multilinearity_check(2, N, g, 0)
    with pytest.raises(UsageError):
        multilinearity_check(2, N[:3], g, 0)


# -- Haantjes brackets --------------------------------------------------------------


def test_higher_haantjes(chart3):
    rng = random.Random(21)
    A, B = random_operator(chart3, rng), random_operator(chart3, rng)
    assert higher_haantjes(A, B, 1) == fn_bracket(A, B)
    assert higher_haantjes(A, B, 2) == higher_haantjes(B, A, 2)
    assert higher_haantjes(A, A, 2) == haantjes(A) * 4
    assert h1_bracket(A, A) == haantjes(A) * 2
    assert h2_bracket(A, A) == haantjes(A) * 4
    assert h1_bracket(A, B) == h1_bracket(B, A)
    assert h2_bracket(A, B) != h2_bracket(B, A)
    with pytest.raises(UsageError):
        higher_haantjes(A, B, 0)


def test_haantjes_bracket_diagonal(chart3):
    rng = random.Random(22)
    D1, D2 = (make_diagonal([random_poly(chart3, 1, rng) for _ in range(3)], chart3) for _ in range(2))
    assert higher_haantjes(D1, D2, 2).is_zero()
    assert polarization(2, [D1, D1, D2, D2]) == (higher_haantjes(D1, D2, 2) + h1_bracket(D1, D2)) * 4


def test_two_dim_level2_degeneracy(chart2):
    # every level-2 torsion vanishes identically when n = 2
    rng = random.Random(23)
    for _ in range(3):
        assert haantjes(random_operator(chart2, rng, degree=2)).is_zero()
