"""The group of rational points on the Jacobian of a genus-2 curve.

Curves are kept in the imaginary model y^2 = f(x) with f monic of degree 5,
so every class has a unique reduced Mumford representative (u, v): u monic,
deg u <= 2, deg v < deg u and u | v^2 - f.  Addition is Cantor's algorithm.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from . import poly as P
from .errors import InvalidCurveError, PreconditionError, UnsupportedModelError
from .finite_field import check_prime, factor, inv_mod, sqrt_mod

GENUS = 2
CHECK_INVARIANTS = bool(os.environ.get("G2TORSION_DEBUG"))


@dataclass(frozen=True)
class CurveParams:
    """y^2 = f(x) over F_p with f monic quintic and squarefree.

    ``original`` holds the coefficients as supplied; ``transform`` records
    (r, c) for the change of variables z = c / (x - r) (r is None for a
    quintic input) that produced ``f``.
    """

    p: int
    f: tuple
    original: tuple = ()
    transform: tuple = (None, 1)


@dataclass(frozen=True, order=True)
class MumfordDivisor:
    u: tuple = (1,)
    v: tuple = ()

    @property
    def degree(self) -> int:
        return len(self.u) - 1

    def is_identity(self) -> bool:
        return len(self.u) == 1

    def padded(self) -> tuple[list, list]:
        """Coefficients as [u0, u1, u2] and [v0, v1], zero-padded."""
        return list(self.u) + [0] * (3 - len(self.u)), list(self.v) + [0] * (2 - len(self.v))

    def __str__(self):
        u, v = self.padded()
        return f"(u: {u[0]},{u[1]},{u[2]}; v: {v[0]},{v[1]})"


IDENTITY = MumfordDivisor((1,), ())


def _monic_quintic(F: tuple, p: int) -> tuple[tuple, int]:
    # c^4 F(w / c) is monic when c = lc(F)
    c = F[-1]
    cinv = inv_mod(c, p)
    return tuple(F[i] * pow(cinv, i - 4, p) % p if i > 4 else F[i] * pow(c, 4 - i, p) % p
                 for i in range(6)), c


def validate_curve(p: int, f_input) -> CurveParams:
    """Check smoothness and bring y^2 = f(x) into the monic quintic model.

    Sextic inputs need a rational root r of f; x -> r + 1/z moves that
    Weierstrass point to infinity.
    """
    check_prime(p)
    f = P.norm([int(c) for c in f_input], p)
    d = len(f) - 1
    if d not in (5, 6):
        raise InvalidCurveError(f"f must have degree 5 or 6, got {d}")
    if len(P.gcd(f, P.derivative(f, p), p)) != 1:
        raise InvalidCurveError("f has a repeated root; the curve is singular")
    if d == 5:
        g, c = _monic_quintic(f, p)
        return CurveParams(p, g, f, (None, c))
    rts = P.roots(f, p)
    if not rts:
        raise UnsupportedModelError(
            "sextic f has no root in F_p; only models with a rational Weierstrass point are supported")
    r = rts[0]
    shifted = P.taylor_shift(f, r, p)
    F = tuple(reversed(shifted[1:]))
    g, c = _monic_quintic(F, p)
    return CurveParams(p, g, f, (r, c))


def is_valid_divisor(D: MumfordDivisor, curve) -> bool:
    p, f = curve.p, curve.f
    u, v = D.u, D.v
    if not u or u[-1] != 1 or len(u) > GENUS + 1 or len(v) >= len(u):
        return False
    if any(not 0 <= c < p for c in u + v):
        return False
    return not P.p_mod(P.p_sub(P.p_mul(v, v, p), f, p), u, p)


def cantor_steps(D1: MumfordDivisor, D2: MumfordDivisor, p: int, f: tuple):
    """Cantor composition and reduction, keeping the functions involved.

    Returns (D3, d, reductions) with

        D1 + D2 = D3 + div(d(x) * prod (y - a(x)) / b(x))

    over the (a, b) pairs in ``reductions``.
    """
    u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v
    if u1 == u2 and v1 == v2:
        d1, e1, e2 = u1, (1,), ()
    else:
        d1, e1, e2 = P.xgcd(u1, u2, p)
    if len(d1) == 1:
        d, s1, s2, s3 = (1,), e1, e2, ()
    else:
        d, c1, s3 = P.xgcd(d1, P.p_add(v1, v2, p), p)
        s1, s2 = P.p_mul(c1, e1, p), P.p_mul(c1, e2, p)
    u = P.p_mul(u1, u2, p)
    num = P.p_add(P.p_mul(P.p_mul(s1, u1, p), v2, p), P.p_mul(P.p_mul(s2, u2, p), v1, p), p)
    if s3:
        num = P.p_add(num, P.p_mul(s3, P.p_add(P.p_mul(v1, v2, p), f, p), p), p)
    if len(d) > 1:
        u = P.p_exact_div(u, P.p_mul(d, d, p), p)
        num = P.p_exact_div(num, d, p)
    v = P.p_mod(num, u, p)
    reductions = []
    while len(u) > GENUS + 1:
        un = P.monic(P.p_exact_div(P.p_sub(f, P.p_mul(v, v, p), p), u, p), p)
        reductions.append((v, un))
        v = P.p_mod(P.p_neg(v, p), un, p)
        u = un
    D3 = MumfordDivisor(u, v)
    if CHECK_INVARIANTS and not is_valid_divisor(D3, CurveParams(p, f)):
        raise AssertionError(f"Cantor produced an invalid divisor {D3}")
    return D3, d, reductions


def add(D1: MumfordDivisor, D2: MumfordDivisor, ctx) -> MumfordDivisor:
    if D1.is_identity():
        return D2
    if D2.is_identity():
        return D1
    return cantor_steps(D1, D2, ctx.p, ctx.f)[0]


def negate(D: MumfordDivisor, ctx) -> MumfordDivisor:
    return MumfordDivisor(D.u, P.p_neg(D.v, ctx.p))


def sub(D1: MumfordDivisor, D2: MumfordDivisor, ctx) -> MumfordDivisor:
    return add(D1, negate(D2, ctx), ctx)


def scalar_mul(n: int, D: MumfordDivisor, ctx) -> MumfordDivisor:
    if n < 0:
        n, D = -n, negate(D, ctx)
    if n == 0 or D.is_identity():
        return IDENTITY
    R = D
    for bit in bin(n)[3:]:
        R = add(R, R, ctx)
        if bit == "1":
            R = add(R, D, ctx)
    return R


def element_order(D: MumfordDivisor, ctx, multiple: int | None = None, factorization=None) -> int:
    """Exact order of D, shrinking a known multiple prime by prime.

    ``multiple`` defaults to the group order N with its stored factorization.
    """
    if multiple is None:
        multiple, factorization = ctx.N, ctx.factorization
    elif factorization is None:
        factorization = factor(multiple)
    order = multiple
    for q, e in factorization:
        # strip q from the order, then put back the smallest power still needed
        base = order
        for _ in range(e):
            base //= q
        R = scalar_mul(base, D, ctx)
        k = 0
        while not R.is_identity():
            R = scalar_mul(q, R, ctx)
            k += 1
            if k > e:
                raise PreconditionError(f"{multiple} does not annihilate {D}")
        order = base * q ** k
    return order


def _root_pair(a: int, b: int, ya: int, yb: int, p: int) -> MumfordDivisor:
    u = P.p_mul((-a % p, 1), (-b % p, 1), p)
    slope = (yb - ya) * inv_mod(b - a, p) % p
    v = P.norm([ya - slope * a, slope], p)
    return MumfordDivisor(u, v)


def _sqrt_mod_quadratic(w: tuple, u: tuple, p: int) -> tuple | None:
    """Square root of w in F_p[x]/(u) for irreducible monic quadratic u.

    With m = s^(p+1) = +-sqrt(N(w)) and t = s + s^p = sqrt(Tr(w) + 2m), the
    root is s = (w + m)/t.  When t = 0 for the right m, w is rescaled by c^2
    for some c = x + k and the root divided by c afterwards.
    """
    if not w:
        return ()
    norm_w = P.resultant(u, w, p)
    if sqrt_mod(norm_w, p) is None:
        return None
    for k in range(p):
        c = (k, 1)
        wc = P.p_mod(P.p_mul(w, P.p_mul(c, c, p), p), u, p)
        s = _sqrt_trace_norm(wc, u, p)
        if s is not None:
            _, cinv, _ = P.xgcd(c, u, p)
            return P.p_mod(P.p_mul(s, cinv, p), u, p)
    return None


def _sqrt_trace_norm(w: tuple, u: tuple, p: int) -> tuple | None:
    w0 = w[0] if w else 0
    w1 = w[1] if len(w) > 1 else 0
    m = sqrt_mod(P.resultant(u, w, p), p)
    trace = (2 * w0 - w1 * u[1]) % p
    for mm in (m, -m % p):
        T = (trace + 2 * mm) % p
        t = sqrt_mod(T, p) if T else None
        if t is None:
            continue
        tinv = inv_mod(t, p)
        s = P.norm([(w0 + mm) * tinv, w1 * tinv], p)
        if not P.p_mod(P.p_sub(P.p_mul(s, s, p), w, p), u, p):
            return s
    return None


def divisors_over(u: tuple, curve) -> list[MumfordDivisor]:
    """All reduced divisors with first coordinate ``u`` (monic, deg <= 2)."""
    p, f = curve.p, curve.f
    if len(u) == 1:
        return [IDENTITY]
    if len(u) == 2:
        a = -u[0] % p
        y = sqrt_mod(P.p_eval(f, a, p), p)
        if y is None:
            return []
        return sorted({MumfordDivisor(u, P.norm([y], p)), MumfordDivisor(u, P.norm([-y], p))})
    u0, u1 = u[0] if u else 0, u[1]
    disc = (u1 * u1 - 4 * u0) % p
    half = inv_mod(2, p)
    if disc == 0:
        a = -u1 * half % p
        fa = P.p_eval(f, a, p)
        y = sqrt_mod(fa, p)
        if y is None or y == 0:
            return []
        out = []
        for ya in (y, -y % p):
            slope = P.p_eval(P.derivative(f, p), a, p) * inv_mod(2 * ya, p) % p
            out.append(MumfordDivisor(u, P.norm([ya - slope * a, slope], p)))
        return sorted(out)
    sd = sqrt_mod(disc, p)
    if sd is not None:
        a, b = (-u1 + sd) * half % p, (-u1 - sd) * half % p
        ya, yb = sqrt_mod(P.p_eval(f, a, p), p), sqrt_mod(P.p_eval(f, b, p), p)
        if ya is None or yb is None:
            return []
        return sorted({_root_pair(a, b, s * ya, t * yb, p) for s in (1, -1) for t in (1, -1)})
    s = _sqrt_mod_quadratic(P.p_mod(f, u, p), u, p)
    if s is None:
        return []
    return sorted({MumfordDivisor(u, s), MumfordDivisor(u, P.p_neg(s, p))})


def random_element(ctx, rng: random.Random) -> MumfordDivisor:
    """Uniformly distributed element of Jac(C)(F_p).

    Draw u uniformly among the 1 + p + p^2 monic polynomials of degree <= 2,
    keep it with probability (#valid v)/4, then pick one of the valid v.
    Every reduced divisor is reached with probability proportional to 1.
    """
    p = ctx.p
    total = 1 + p + p * p
    while True:
        k = rng.randrange(total)
        if k == 0:
            u = (1,)
        elif k <= p:
            u = ((k - 1) % p, 1)
        else:
            k -= p + 1
            u = (k % p, k // p, 1)
        cands = divisors_over(u, ctx)
        if cands and rng.randrange(4) < len(cands):
            return cands[rng.randrange(len(cands))]


@dataclass(frozen=True)
class GroupContext:
    """A curve together with N = #Jac(C)(F_p) and the factorization of N."""

    curve: CurveParams
    N: int
    factorization: tuple = field(default=())

    @property
    def p(self) -> int:
        return self.curve.p

    @property
    def f(self) -> tuple:
        return self.curve.f

    @classmethod
    def create(cls, curve: CurveParams, N: int, factorization=None,
               rng: random.Random | None = None, checks: int = 4) -> GroupContext:
        """Build a context, validating N against ``checks`` random elements."""
        if N <= 0:
            raise PreconditionError("group order must be positive")
        if factorization is None:
            if N >= 1 << 64:
                raise PreconditionError("factorization of N is required when N >= 2^64")
            factorization = factor(N)
        factorization = tuple(sorted((int(q), int(e)) for q, e in factorization))
        prod = 1
        for q, e in factorization:
            if e <= 0:
                raise PreconditionError(f"bad exponent {e} for prime {q}")
            prod *= q ** e
        if prod != N:
            raise PreconditionError("factorization does not multiply out to N")
        for q, _ in factorization:
            if q < 2 or factor(q) != [(q, 1)]:
                raise PreconditionError(f"{q} in the factorization of N is not prime")
        ctx = cls(curve, N, factorization)
        rng = rng or random.Random(0)
        for _ in range(checks):
            D = random_element(ctx, rng)
            if not scalar_mul(N, D, ctx).is_identity():
                raise PreconditionError(
                    f"N = {N} does not annihilate {D}; N is not the group order")
        return ctx

    def valuation(self, ell: int) -> int:
        for q, e in self.factorization:
            if q == ell:
                return e
        return 0


def project_to_sylow(D: MumfordDivisor, ell: int, ctx: GroupContext) -> MumfordDivisor:
    e = ctx.valuation(ell)
    if e == 0:
        raise PreconditionError(f"{ell} does not divide N = {ctx.N}")
    return scalar_mul(ctx.N // ell ** e, D, ctx)
