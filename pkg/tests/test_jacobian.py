import random
from collections import Counter
from math import gcd

import pytest
import sympy

from conftest import oracle_curve
from g2torsion import jacobian as J
from g2torsion import poly as P
from g2torsion.errors import InvalidCurveError, PreconditionError, UnsupportedModelError
from g2torsion.finite_field import factor


def affine_sextic_count(p, F):
    """#C(F_p) for y^2 = F(x), deg F = 6, on the smooth model: affine points
    plus two or zero points at infinity as lc(F) is a square or not."""
    total = 0
    for x in range(p):
        v = P.p_eval(F, x, p)
        total += 1 if v == 0 else (2 if pow(v, (p - 1) // 2, p) == 1 else 0)
    return total + (2 if pow(F[-1], (p - 1) // 2, p) == 1 else 0)


def quintic_count(curve):
    p = curve.p
    total = 1
    for x in range(p):
        v = P.p_eval(curve.f, x, p)
        total += 1 if v == 0 else (2 if pow(v, (p - 1) // 2, p) == 1 else 0)
    return total


# -- validate_curve -----------------------------------------------------------

def test_singular_quintic_over_f7_is_rejected():
    # x^5 + x + 1 has the double root 4 over F_7
    x = sympy.symbols("x")
    fl = sympy.factor_list(x ** 5 + x + 1, modulus=7)[1]
    assert any(e > 1 for _, e in fl)
    with pytest.raises(InvalidCurveError):
        J.validate_curve(7, [1, 1, 0, 0, 0, 1])


def test_squarefree_quintic_is_accepted():
    g, _, _ = P.xgcd((1, 1, 0, 0, 0, 1), P.derivative((1, 1, 0, 0, 0, 1), 11), 11)
    assert g == (1,)
    c = J.validate_curve(11, [1, 1, 0, 0, 0, 1])
    assert c.f == (1, 1, 0, 0, 0, 1) and c.transform == (None, 1)


def test_x_to_the_fifth_is_singular():
    with pytest.raises(InvalidCurveError):
        J.validate_curve(7, [0, 0, 0, 0, 0, 1])


def test_sextic_without_rational_root_is_unsupported():
    # (x^2 + 1)(x^4 + 1): -1 is neither a square nor a fourth power mod 7
    f = P.p_mul((1, 0, 1), (1, 0, 0, 0, 1), 7)
    assert not P.roots(f, 7)
    assert P.gcd(f, P.derivative(f, 7), 7) == (1,)
    with pytest.raises(UnsupportedModelError):
        J.validate_curve(7, f)


def test_bad_degree_and_modulus():
    with pytest.raises(InvalidCurveError):
        J.validate_curve(7, [1, 0, 0, 1])
    with pytest.raises(ValueError):
        J.validate_curve(9, [1, 1, 0, 0, 0, 1])
    with pytest.raises(ValueError):
        J.validate_curve(2, [1, 1, 0, 0, 0, 1])


def test_non_monic_quintic_is_scaled():
    c = J.validate_curve(11, [1, 1, 0, 0, 0, 3])
    assert c.f[-1] == 1 and c.original == (1, 1, 0, 0, 0, 3)
    assert quintic_count(c) == quintic_count(J.validate_curve(11, [1, 1, 0, 0, 0, 3]))


@pytest.mark.parametrize("p,f", [
    (11, (10, 0, 0, 0, 0, 0, 1)),
    (13, (0, 1, 1, 5, 2, 11, 11)),
    (19, (11, 14, 14, 11, 18, 17, 15)),
    (23, (16, 16, 20, 19, 18, 13, 10)),
])
def test_sextic_transform_preserves_point_count(p, f):
    F = P.norm(f, p)
    c = J.validate_curve(p, f)
    assert len(c.f) == 6 and c.f[-1] == 1
    assert quintic_count(c) == affine_sextic_count(p, F)


# -- group law ----------------------------------------------------------------

def test_identity_and_inverse(any_curve, rng):
    ctx, grp = any_curve
    for _ in range(30):
        D = rng.choice(grp.elements)
        assert J.add(D, J.IDENTITY, ctx) == D
        assert J.add(J.IDENTITY, D, ctx) == D
        assert J.add(D, J.negate(D, ctx), ctx).is_identity()
    assert J.negate(J.IDENTITY, ctx) == J.IDENTITY


def test_two_torsion_is_its_own_negative(any_curve):
    ctx, grp = any_curve
    for D in grp.elements:
        if not D.v and not D.is_identity():
            assert J.negate(D, ctx) == D
            assert J.add(D, D, ctx).is_identity()


def test_group_axioms_on_random_triples(any_curve):
    ctx, grp = any_curve
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (J.random_element(ctx, rng) for _ in range(3))
        assert J.add(J.add(a, b, ctx), c, ctx) == J.add(a, J.add(b, c, ctx), ctx)
        assert J.add(a, b, ctx) == J.add(b, a, ctx)
        assert J.is_valid_divisor(J.add(a, b, ctx), ctx.curve)


def test_closure_on_small_fields():
    for name in ("p3", "p5"):
        ctx, grp = oracle_curve(name)
        for a in grp.elements:
            for b in grp.elements:
                assert J.add(a, b, ctx) in grp


def test_scalar_mul_matches_repeated_addition(any_curve, rng):
    ctx, grp = any_curve
    for _ in range(5):
        D = rng.choice(grp.elements)
        acc = J.IDENTITY
        for n in range(51):
            assert J.scalar_mul(n, D, ctx) == acc
            acc = J.add(acc, D, ctx)
        assert J.scalar_mul(-3, D, ctx) == J.negate(J.scalar_mul(3, D, ctx), ctx)


def test_lagrange(any_curve, rng):
    ctx, _ = any_curve
    for _ in range(20):
        assert J.scalar_mul(ctx.N, J.random_element(ctx, rng), ctx).is_identity()


# -- orders -----------------------------------------------------------------

@pytest.mark.parametrize("name", ["p7", "p11", "p13", "p13_rank4"])
def test_element_order_matches_oracle(name):
    ctx, grp = oracle_curve(name)
    for D, o in grp.orders().items():
        assert J.element_order(D, ctx) == o


def test_element_order_of_multiples(any_curve, rng):
    ctx, grp = any_curve
    for _ in range(20):
        D = rng.choice(grp.elements)
        o = J.element_order(D, ctx)
        k = rng.randrange(1, 3 * ctx.N)
        assert J.element_order(J.scalar_mul(k, D, ctx), ctx) == o // gcd(k, o)
        assert ctx.N % o == 0
        assert J.scalar_mul(o, D, ctx).is_identity()
        for q, _ in factor(o):
            assert not J.scalar_mul(o // q, D, ctx).is_identity()


def test_element_order_identity(any_curve):
    ctx, _ = any_curve
    assert J.element_order(J.IDENTITY, ctx) == 1


# -- sampling and Sylow projection -------------------------------------------

def test_random_element_is_valid(any_curve, rng):
    ctx, grp = any_curve
    for _ in range(100):
        D = J.random_element(ctx, rng)
        assert J.is_valid_divisor(D, ctx.curve) and D in grp


def test_random_element_is_uniform():
    ctx, grp = oracle_curve("p5")
    rng = random.Random(11)
    draws = 200 * grp.N
    counts = Counter(J.random_element(ctx, rng) for _ in range(draws))
    assert set(counts) == set(grp.elements)
    chi2 = sum((c - 200) ** 2 / 200 for c in counts.values())
    # 25 degrees of freedom; the 0.999 quantile is about 52.6
    assert chi2 < 52.6


def test_random_draws_hit_every_sylow_2_element():
    ctx, grp = oracle_curve("p3")
    rng = random.Random(5)
    hit = {J.project_to_sylow(J.random_element(ctx, rng), 2, ctx) for _ in range(200)}
    sylow = {D for D, o in grp.orders().items() if o & (o - 1) == 0}
    assert hit == sylow


def test_project_to_sylow(any_curve, rng):
    ctx, grp = any_curve
    for ell, e in ctx.factorization:
        for _ in range(10):
            D = rng.choice(grp.elements)
            Q = J.project_to_sylow(D, ell, ctx)
            o = J.element_order(Q, ctx)
            assert ell ** e % o == 0
            if gcd(J.element_order(D, ctx), ell) == 1:
                assert Q.is_identity()


def test_project_to_sylow_matches_oracle():
    ctx, grp = oracle_curve("p13")
    for ell in (2, 3):
        image = {J.project_to_sylow(D, ell, ctx) for D in grp.elements}
        sylow = set()
        for D, o in grp.orders().items():
            while o % ell == 0:
                o //= ell
            if o == 1:
                sylow.add(D)
        assert image == sylow


def test_project_to_sylow_rejects_non_divisor():
    ctx, _ = oracle_curve("p7")
    with pytest.raises(PreconditionError):
        J.project_to_sylow(J.IDENTITY, 5, ctx)


# -- context and representation -----------------------------------------------

def test_context_rejects_wrong_order():
    ctx, _ = oracle_curve("p7")
    with pytest.raises(PreconditionError):
        J.GroupContext.create(ctx.curve, ctx.N + 1)
    with pytest.raises(PreconditionError):
        J.GroupContext.create(ctx.curve, ctx.N, [(2, 5), (5, 1)])
    with pytest.raises(PreconditionError):
        J.GroupContext.create(ctx.curve, 1 << 70)


def test_context_accepts_given_factorization():
    ctx, _ = oracle_curve("p7")
    c2 = J.GroupContext.create(ctx.curve, ctx.N, [(3, 1), (2, 5)])
    assert c2.factorization == ((2, 5), (3, 1))
    assert c2.valuation(2) == 5 and c2.valuation(7) == 0


def test_mumford_string_form():
    assert str(J.IDENTITY) == "(u: 1,0,0; v: 0,0)"
    assert str(J.MumfordDivisor((4, 5, 1), (2, 4))) == "(u: 4,5,1; v: 2,4)"


def test_is_valid_divisor_rejects_junk():
    ctx, grp = oracle_curve("p7")
    assert not J.is_valid_divisor(J.MumfordDivisor((1, 2, 3), ()), ctx.curve)
    assert not J.is_valid_divisor(J.MumfordDivisor((0, 0, 0, 1), ()), ctx.curve)
    valid = set(grp.elements)
    for u0 in range(7):
        for v0 in range(7):
            D = J.MumfordDivisor(P.norm([u0, 1], 7), P.norm([v0], 7))
            assert J.is_valid_divisor(D, ctx.curve) == (D in valid)


def test_debug_invariant_checks(monkeypatch, rng):
    ctx, grp = oracle_curve("p11")
    monkeypatch.setattr(J, "CHECK_INVARIANTS", True)
    for _ in range(50):
        J.add(rng.choice(grp.elements), rng.choice(grp.elements), ctx)
