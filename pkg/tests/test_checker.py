import random
from fractions import Fraction

import pytest

from _helpers import random_operator
from torsionlab import TwoFormField
from torsionlab.catalog import FamilySpec, default_chart, make_diagonal, make_random, random_poly
from torsionlab.checker import check_module, is_gen_nijenhuis, sz_verify
from torsionlab.polycore import UsageError
from torsionlab.torsion import defect, nijenhuis


def diag_example(chart):
    x1, x2 = chart.var("x1"), chart.var("x2")
    return make_diagonal([x2, x1], chart), make_diagonal([x1 * x2, x1 + x2], chart)


def test_is_gen_nijenhuis(chart2):
    A, _ = diag_example(chart2)
    assert is_gen_nijenhuis(A, 2)
    assert not is_gen_nijenhuis(A, 1)
    f = random_poly(chart2, 2, random.Random(1))
    for m in (1, 2, 3):
        assert is_gen_nijenhuis(chart2.identity() * f, m)


def test_module_running_example(chart2):
    A, B = diag_example(chart2)
    rep = check_module(A, B, 2)
    assert rep.verdict == "haantjes-module"
    assert rep.mixed_conditions == [True, True, True]
    assert rep.spot_check["zero"]
    assert rep.lines()[-1] == "verdict: haantjes-module"


def test_module_m1_never_module(chart2):
    A, B = diag_example(chart2)
    rep = check_module(A, B, 1)
    assert rep.verdict == "fails" and rep.witness.check == "tau_A"
    x1, x2 = chart2.var("x1"), chart2.var("x2")
    c1 = make_diagonal([x1, x1], chart2)
    c2 = make_diagonal([2 * x1, 2 * x1], chart2)
    assert check_module(c1, c2, 1).verdict == "haantjes-vector-space"


def test_module_self_pair(chart3):
    D = make_diagonal([random_poly(chart3, 1, random.Random(2)) for _ in range(3)], chart3)
    rep = check_module(D, D, 2)
    assert rep.verdict == "haantjes-module"


def test_module_fails_on_B(chart3):
    A = make_diagonal([random_poly(chart3, 1, random.Random(3)) for _ in range(3)], chart3)
    B = random_operator(chart3, random.Random(4))
    rep = check_module(A, B, 2)
    assert rep.verdict == "fails"
    assert rep.torsion_A_vanishes and not rep.torsion_B_vanishes
    assert rep.witness.check == "tau_B"


def test_module_symmetry(chart3):
    rng = random.Random(5)
    A, B = random_operator(chart3, rng), random_operator(chart3, rng)
    r1 = check_module(A, B, 2)
    r2 = check_module(B, A, 2)
    assert r1.verdict == r2.verdict
    assert r1.mixed_conditions == r2.mixed_conditions[::-1]


def test_module_randomized(chart2):
    A, B = diag_example(chart2)
    rep = check_module(A, B, 2, randomized=(5, 50), seed=3)
    assert rep.verdict == "haantjes-module"
    assert len(rep.randomized) == 5 and all(r["outcome"] == "all-zero-at-samples" for r in rep.randomized)


def test_sz_zero_form(chart2):
    rep = sz_verify(TwoFormField.zero(chart2), trials=7, box=10)
    assert rep.all_zero and rep.trials == 7 and rep.failure_probability_bound == 0


def test_sz_witness_fixed_point(chart2):
    A, _ = diag_example(chart2)
    rep = sz_verify(nijenhuis(A), trials=1, box=10, points=[(1, 2)])
    assert rep.outcome == "nonzero-witness"
    assert rep.witness_value == 1 and rep.witness_point == {"x1": 1, "x2": 2}
    assert rep.failure_probability_bound == Fraction(1, 21)


def test_sz_defect_level2(chart2):
    rng = random.Random(6)
    ops = [random_operator(chart2, rng) for _ in range(5)]
    W = defect(2, ops)
    assert W.is_zero()
    rep = sz_verify(W, trials=20, box=1000)
    assert rep.all_zero and rep.failure_probability_bound <= Fraction(max(rep.degree_bound, 1), 2001) ** 20


def test_sz_closure_and_errors():
    chart = default_chart(2)
    x1, x2 = chart.var("x1"), chart.var("x2")
    rep = sz_verify(lambda p: [(p["x1"] + p["x2"]) ** 2 - p["x1"] ** 2 - 2 * p["x1"] * p["x2"] - p["x2"] ** 2],
                    trials=10, box=100, degree_bound=2, variables=["x1", "x2"])
    assert rep.all_zero
    assert sz_verify(x1 - x2, trials=5, box=1000).outcome == "nonzero-witness"
    with pytest.raises(UsageError):
        sz_verify(x1, trials=0)
    with pytest.raises(UsageError):
        sz_verify(x1, box=0)
    with pytest.raises(UsageError):
        sz_verify(lambda p: [0])


@pytest.mark.parametrize("seed", range(4))
def test_sz_never_contradicts_exact(seed):
    chart = default_chart(2)
    spec = FamilySpec("diagonal", 2, seed=seed)
    W = nijenhuis(make_random(spec)) * 0
    assert sz_verify(W, trials=3, seed=seed).all_zero


def test_report_serializes(chart2):
    A, B = diag_example(chart2)
    d = check_module(A, B, 1).to_dict()
    assert d["witness"]["index"] == [1, 1, 2] and d["verdict"] == "fails"
