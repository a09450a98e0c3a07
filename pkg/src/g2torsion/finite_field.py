"""Prime field arithmetic.

Elements are stored as canonical residues in ``[0, p)``.  ``FieldElement`` is
the public value type; the hot paths in the polynomial and Jacobian code work
on bare ints and call the module-level helpers directly.
"""

from __future__ import annotations

import random

from sympy import factorint, isprime
from sympy.ntheory.residue_ntheory import sqrt_mod as _sympy_sqrt_mod

from .errors import ModulusMismatchError, PreconditionError


def check_prime(p: int) -> None:
    if p <= 2 or not isprime(p):
        raise PreconditionError(f"p = {p} is not an odd prime")


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of zero in F_p")
    return pow(a, -1, p)


def is_square(a: int, p: int) -> bool:
    a %= p
    return a == 0 or pow(a, (p - 1) // 2, p) == 1


def sqrt_mod(a: int, p: int) -> int | None:
    """Smallest square root of ``a`` modulo ``p``, or None for non-residues."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    return _sympy_sqrt_mod(a, p)


def factor(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as a sorted list of (prime, exponent)."""
    return sorted(factorint(n).items())


class FieldElement:
    """Element of F_p for an odd prime p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ModulusMismatchError(f"F_{self.p} vs F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value + b, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value - b, self.p)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(b - self.value, self.p)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * b, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.value * inv_mod(b, self.p), self.p)

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(pow(self.value, e, self.p), self.p)

    def inverse(self) -> FieldElement:
        return FieldElement(inv_mod(self.value, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FieldElement({self.value}, {self.p})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        raise PreconditionError("exponent must be non-negative")
    return a ** e


def order_mod(a: int, p: int, multiple: int, factorization=None) -> int:
    """Multiplicative order of ``a`` mod p, given ``a**multiple == 1``."""
    a %= p
    if pow(a, multiple, p) != 1:
        raise PreconditionError(f"{a}^{multiple} != 1 mod {p}")
    if factorization is None:
        factorization = factor(multiple)
    order = multiple
    for q, _ in factorization:
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def element_order_in_field(a: FieldElement, multiple: int | None = None, factorization=None) -> int:
    """Exact multiplicative order of ``a``; ``multiple`` defaults to p - 1."""
    if multiple is None:
        multiple = a.p - 1
    return order_mod(a.value, a.p, multiple, factorization)


def primitive_root_of_unity(p: int, lam: int, rng: random.Random | None = None) -> FieldElement:
    """A field element of multiplicative order exactly ``lam``.

    Raises a random x to (p - 1)/lam and retries until the order is full.
    Deterministic for a seeded ``rng``.
    """
    if lam <= 0 or (p - 1) % lam:
        raise PreconditionError(f"lambda = {lam} does not divide p - 1 = {p - 1}")
    if lam == 1:
        return FieldElement(1, p)
    if lam == 2:
        return FieldElement(p - 1, p)
    rng = rng or random.Random(0)
    cofactor = (p - 1) // lam
    primes = [q for q, _ in factor(lam)]
    while True:
        z = pow(rng.randrange(1, p), cofactor, p)
        if all(pow(z, lam // q, p) != 1 for q in primes):
            return FieldElement(z, p)
