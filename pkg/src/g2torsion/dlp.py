"""Discrete logarithms in cyclic subgroups of F_p^* of smooth order.

Pohlig-Hellman over the prime-power parts of the order, one base-q digit
at a time, with a linear scan for small q and baby-step giant-step above
``BSGS_THRESHOLD``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import NotInSubgroupError, PreconditionError
from .finite_field import FieldElement, factor, inv_mod

BSGS_THRESHOLD = 64


@dataclass(frozen=True)
class DlogInstance:
    base: FieldElement
    target: FieldElement
    order: int
    factorization: tuple = ()

    def solve(self) -> int:
        return pohlig_hellman(self)


def _log_prime_order(g: int, h: int, q: int, p: int) -> int:
    """x in [0, q) with g^x = h, where g has prime order q."""
    if q < BSGS_THRESHOLD:
        acc = 1
        for x in range(q):
            if acc == h:
                return x
            acc = acc * g % p
        raise NotInSubgroupError(f"{h} is not a power of {g} mod {p}")
    m = isqrt(q - 1) + 1
    baby = {}
    acc = 1
    for j in range(m):
        baby.setdefault(acc, j)
        acc = acc * g % p
    giant = inv_mod(acc, p)  # g^-m
    y = h
    for i in range(m):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % q
        y = y * giant % p
    raise NotInSubgroupError(f"{h} is not a power of {g} mod {p}")


def _log_prime_power(g: int, h: int, q: int, e: int, p: int) -> int:
    gamma = pow(g, q ** (e - 1), p)
    ginv = inv_mod(g, p)
    x = 0
    for k in range(e):
        hk = pow(h * pow(ginv, x, p) % p, q ** (e - 1 - k), p)
        x += _log_prime_order(gamma, hk, q, p) * q ** k
    return x


def discrete_log(base: int, target: int, order: int, p: int, factorization=None) -> int:
    """alpha in [0, order) with base^alpha = target mod p.

    ``base`` must have multiplicative order exactly ``order``.
    """
    base %= p
    target %= p
    if order <= 0 or pow(base, order, p) != 1:
        raise PreconditionError(f"{base} does not have order dividing {order}")
    if pow(target, order, p) != 1:
        raise NotInSubgroupError(f"{target} is not in the subgroup of order {order}")
    if factorization is None:
        factorization = factor(order) if order > 1 else []
    x, modulus = 0, 1
    for q, e in factorization:
        qe = q ** e
        cof = order // qe
        xq = _log_prime_power(pow(base, cof, p), pow(target, cof, p), q, e, p)
        # CRT: x = x mod modulus, x = xq mod qe
        t = (xq - x) * inv_mod(modulus, qe) % qe
        x += modulus * t
        modulus *= qe
    if pow(base, x, p) != target:
        raise NotInSubgroupError(f"{target} is not a power of {base} mod {p}")
    return x


def pohlig_hellman(inst: DlogInstance) -> int:
    p = inst.base.p
    return discrete_log(inst.base.value, inst.target.value, inst.order, p,
                        inst.factorization or None)
