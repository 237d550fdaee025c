import math
import random
from fractions import Fraction

import pytest

from coxfold.coxeter import CoxeterMatrix
from coxfold.cyclo import (
    INF,
    ArithContext,
    ContextMismatch,
    cyclotomic_polynomial,
    euler_phi,
    make_context,
)

from conftest import MATRICES


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for n in range(1, 40):
        poly = cyclotomic_polynomial(n)
        assert len(poly) - 1 == euler_phi(n)
        assert poly[-1] == 1


def test_euler_phi():
    assert [euler_phi(n) for n in (1, 2, 3, 4, 12, 20, 36)] == [1, 1, 2, 2, 4, 8, 12]


def test_context_sizes_from_matrices():
    ctx = make_context(MATRICES["a3"])
    assert (ctx.N, ctx.degree) == (6, 4)
    ctx = make_context(MATRICES["i25"])
    assert (ctx.N, ctx.degree) == (10, 8)
    ctx = make_context(MATRICES["dinf"])
    assert (ctx.N, ctx.degree) == (2, 2)


def test_degree_cap():
    big = CoxeterMatrix.from_labels(2, {(1, 2): 97})
    with pytest.raises(ValueError, match="too large"):
        make_context(big)


def test_two_cos_small_labels():
    ctx = ArithContext(12)
    assert ctx.two_cos_pi_over(2) == ctx.zero
    assert ctx.two_cos_pi_over(3) == ctx.one
    root2 = ctx.two_cos_pi_over(4)
    assert root2 * root2 == ctx.from_rational(2)
    root3 = ctx.two_cos_pi_over(6)
    assert root3 * root3 == ctx.from_rational(3)
    assert ctx.two_cos_pi_over(INF) == ctx.from_rational(2)


def test_two_cos_golden_ratio():
    ctx = ArithContext(10)
    x = ctx.two_cos_pi_over(5)
    # minimal relation x^2 - x - 1 = 0, and x is the positive root
    assert x * x - x == ctx.one
    assert x.sign() > 0
    assert math.isclose(float(x), 2 * math.cos(math.pi / 5), abs_tol=1e-12)


def test_label_must_divide_n():
    ctx = ArithContext(6)
    with pytest.raises(ValueError, match="does not divide"):
        ctx.two_cos_pi_over(5)


def test_ring_ops_and_canonical_equality():
    ctx = ArithContext(10)
    x = ctx.two_cos_pi_over(5)
    assert x + (-x) == ctx.zero
    assert (x - x).is_zero()
    half = x * Fraction(1, 2)
    assert half + half == x
    assert hash(half * 2) == hash(x)
    assert x * 0 == ctx.zero and x * 1 is x


def test_context_mismatch():
    a = ArithContext(6).one
    b = ArithContext(10).one
    with pytest.raises(ContextMismatch):
        a + b
    assert a != b


def test_sign_examples():
    ctx = ArithContext(6)
    assert ctx.zero.sign() == 0
    assert ctx.two_cos_pi_over(3).sign() == 1
    assert (-ctx.two_cos_pi_over(3)).sign() == -1
    # 2cos(pi/5) > 2cos(pi/4): both live in the N=20 field
    wide = ArithContext(20)
    diff = wide.two_cos_pi_over(5) - wide.two_cos_pi_over(4)
    assert diff.sign() == 1
    assert wide.two_cos_pi_over(4) < wide.two_cos_pi_over(5)


def test_sign_escalates_precision_for_tiny_values():
    # a nonzero value around 1e-50 cannot be decided at the starting 64
    # bits; the doubling loop must still land on the correct sign
    import mpmath

    ctx = ArithContext(30)
    x = ctx.two_cos_pi_over(30)
    with mpmath.workdps(60):
        true = 2 * mpmath.cos(mpmath.pi / 30)
        below = Fraction(mpmath.nstr(true - mpmath.mpf(10) ** -50, 55))
        above = Fraction(mpmath.nstr(true + mpmath.mpf(10) ** -50, 55))
    assert (x - below).sign() == 1
    assert (x - above).sign() == -1


def test_sign_zero_iff_canonical_zero():
    ctx = ArithContext(10)
    x = ctx.two_cos_pi_over(5)
    y = x * x - x - 1
    assert y.is_zero() and y.sign() == 0


def _random_value(ctx, rng, atoms):
    v = ctx.from_rational(rng.randint(-3, 3))
    for _ in range(rng.randint(1, 4)):
        a = atoms[rng.randrange(len(atoms))]
        op = rng.randrange(3)
        if op == 0:
            v = v + a
        elif op == 1:
            v = v - a
        else:
            v = v * a
    return v


def test_float_oracle_regression():
    # canonical arithmetic agrees with floating evaluation on 1000 random
    # ring expressions
    ctx = ArithContext(30)  # labels 2,3,5,6,10,15,30 representable
    rng = random.Random(20240917)
    atoms = [ctx.two_cos_pi_over(m) for m in (2, 3, 5, 6, 10, 15)]
    for _ in range(1000):
        v = _random_value(ctx, rng, atoms)
        w = _random_value(ctx, rng, atoms)
        exact = v * w + v - w
        approx = float(v) * float(w) + float(v) - float(w)
        assert math.isclose(float(exact), approx, rel_tol=0, abs_tol=1e-9)


def test_sign_positivity_closure():
    ctx = ArithContext(30)
    rng = random.Random(7)
    atoms = [ctx.two_cos_pi_over(m) for m in (3, 5, 6, 10)]
    positives = []
    for _ in range(200):
        v = _random_value(ctx, rng, atoms)
        s = v.sign()
        assert s in (-1, 0, 1)
        assert (s == 0) == v.is_zero()
        if s > 0:
            positives.append(v)
    for a, b in zip(positives, positives[1:]):
        assert (a * b).sign() > 0
        assert (a + b).sign() > 0


def test_conjugation_invariance_preserved():
    ctx = ArithContext(20)
    rng = random.Random(11)
    atoms = [ctx.two_cos_pi_over(m) for m in (4, 5, 10, 20)]
    for _ in range(100):
        v = _random_value(ctx, rng, atoms)
        w = _random_value(ctx, rng, atoms)
        for out in (v + w, v - w, v * w, -v, v * Fraction(3, 7)):
            assert out.is_real()


def test_zeta_power_not_real():
    ctx = ArithContext(6)
    assert not ctx.zeta_power(1).is_real()
    assert (ctx.zeta_power(1) + ctx.zeta_power(11)).is_real()
