"""The tame Tate pairing on Jac(C)(F_p) for lambda | p - 1.

Miller's algorithm builds f with div(f) = lambda * g out of the functions
Cantor's algorithm produces at each step.  Those functions have the shape
d(x) * (y - a(x)) / b(x), so their value at an effective divisor (u, v)
is a product of resultants res(u, .) and never leaves F_p, even when the
points of the divisor live in F_p^2.

The second argument h is replaced by E = (h + R) - R for a random R, which
moves the evaluation divisor off the point at infinity.  Any zero
resultant means E met the support of a Miller function; R is then redrawn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import poly as P
from .dlp import discrete_log
from .errors import NotInSubgroupError, PreconditionError, SupportCollisionError
from .finite_field import FieldElement, inv_mod
from .jacobian import MumfordDivisor, add, cantor_steps, random_element, scalar_mul

MAX_RESAMPLES = 32
# draws where deg(h + R) != deg R are not collisions, but still bounded
MAX_DRAWS = 16 * MAX_RESAMPLES


@dataclass(frozen=True)
class PairingValue:
    value: FieldElement
    lam: int

    def __post_init__(self):
        if self.value ** self.lam != 1:
            raise ValueError(f"{self.value} is not a {self.lam}-th root of unity")

    def is_one(self) -> bool:
        return self.value.value == 1


@dataclass
class MillerAccumulator:
    """Running Miller value as a fraction num/den in F_p."""

    current: MumfordDivisor
    num: int = 1
    den: int = 1


def _eval_step(d, reductions, A: MumfordDivisor, p: int):
    """(num, den) of d * prod(y - a)/b at the effective divisor A."""
    num = P.resultant(A.u, d, p) if len(d) > 1 else 1
    den = 1
    for a, b in reductions:
        num = num * P.resultant(A.u, P.p_sub(A.v, a, p), p) % p
        den = den * P.resultant(A.u, b, p) % p
    return num, den


def miller(g: MumfordDivisor, lam: int, A: MumfordDivisor, B: MumfordDivisor, ctx) -> int | None:
    """f_{lam,g}(A - B) with div f = lam*g, or None on a support collision."""
    p, f = ctx.p, ctx.f
    acc = MillerAccumulator(g)

    def absorb(d, reductions):
        na, da = _eval_step(d, reductions, A, p)
        nb, db = _eval_step(d, reductions, B, p)
        if not (na and da and nb and db):
            return False
        acc.num = acc.num * na * db % p
        acc.den = acc.den * da * nb % p
        return True

    for bit in bin(lam)[3:]:
        acc.num = acc.num * acc.num % p
        acc.den = acc.den * acc.den % p
        acc.current, d, reds = cantor_steps(acc.current, acc.current, p, f)
        if not absorb(d, reds):
            return None
        if bit == "1":
            acc.current, d, reds = cantor_steps(acc.current, g, p, f)
            if not absorb(d, reds):
                return None
    if not acc.current.is_identity():
        raise PreconditionError(f"{lam} * g is not the identity")
    return acc.num * inv_mod(acc.den, p) % p


def _check(g, lam, ctx):
    p = ctx.p
    if lam <= 0 or (p - 1) % lam:
        raise PreconditionError(f"lambda = {lam} does not divide p - 1 = {p - 1}")
    if ctx.N % lam:
        raise PreconditionError(f"lambda = {lam} does not divide N = {ctx.N}")
    if not scalar_mul(lam, g, ctx).is_identity():
        raise PreconditionError(f"g is not killed by lambda = {lam}")


def raw_tate(g: MumfordDivisor, h: MumfordDivisor, lam: int, ctx, rng: random.Random) -> FieldElement:
    """A representative of e_lam(g, h) in F_p^* / (F_p^*)^lam."""
    _check(g, lam, ctx)
    p = ctx.p
    if g.is_identity() or lam == 1:
        return FieldElement(1, p)
    collisions = draws = 0
    while collisions < MAX_RESAMPLES:
        draws += 1
        if draws > MAX_DRAWS:
            break
        R = random_element(ctx, rng)
        A = add(h, R, ctx)
        # A - R only avoids infinity when both parts have the same degree
        if R.degree == 0 or A.degree != R.degree:
            continue
        val = miller(g, lam, A, R, ctx)
        if val is not None:
            return FieldElement(val, p)
        collisions += 1
    raise SupportCollisionError(
        f"no usable evaluation divisor after {collisions} collisions in {draws} draws")


def tame_tate(g: MumfordDivisor, h: MumfordDivisor, lam: int, ctx, rng: random.Random) -> PairingValue:
    """tau_lam(g, h) = e_lam(g, h)^((p - 1)/lam), a lam-th root of unity."""
    raw = raw_tate(g, h, lam, ctx, rng)
    return PairingValue(raw ** ((ctx.p - 1) // lam), lam)


def pairing_dlog_exponent(val: PairingValue, zeta: FieldElement) -> int:
    """alpha in [0, lam) with zeta^alpha = val."""
    try:
        return discrete_log(zeta.value, val.value.value, val.lam, zeta.p)
    except NotInSubgroupError as exc:
        raise NotInSubgroupError(
            f"pairing value {val.value} is not a power of zeta = {zeta}; "
            "tau must land in mu_lambda") from exc
