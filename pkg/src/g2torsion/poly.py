"""Univariate polynomials over F_p.

A polynomial is a tuple of int coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  The module-level functions
take the modulus explicitly and are what the Cantor and Miller code call.
``Poly`` wraps a coefficient tuple and a modulus for the public API.
"""

from __future__ import annotations

import random

from .errors import ModulusMismatchError
from .finite_field import FieldElement, inv_mod


def norm(a, p: int) -> tuple:
    """Reduce coefficients mod p and strip trailing zeros."""
    c = [x % p for x in a]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _trim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def deg(a: tuple) -> int:
    return len(a) - 1


def p_add(a: tuple, b: tuple, p: int) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    return _trim(c)


def p_sub(a: tuple, b: tuple, p: int) -> tuple:
    n = max(len(a), len(b))
    c = list(a) + [0] * (n - len(a))
    for i, x in enumerate(b):
        c[i] = (c[i] - x) % p
    return _trim(c)


def p_neg(a: tuple, p: int) -> tuple:
    return tuple((-x) % p for x in a)


def p_scale(a: tuple, k: int, p: int) -> tuple:
    k %= p
    if not k:
        return ()
    return tuple(x * k % p for x in a)


def p_mul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    return _trim([x % p for x in c])


def p_divmod(a: tuple, b: tuple, p: int) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), a
    r = list(a)
    inv = inv_mod(b[-1], p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = r[i + db] * inv % p
        q[i] = c
        if c:
            for j in range(db + 1):
                r[i + j] = (r[i + j] - c * b[j]) % p
    return _trim(q), _trim(r[:db])


def p_mod(a: tuple, b: tuple, p: int) -> tuple:
    return p_divmod(a, b, p)[1]


def p_exact_div(a: tuple, b: tuple, p: int) -> tuple:
    q, r = p_divmod(a, b, p)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def monic(a: tuple, p: int) -> tuple:
    if not a or a[-1] == 1:
        return a
    return p_scale(a, inv_mod(a[-1], p), p)


def p_eval(a: tuple, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def derivative(a: tuple, p: int) -> tuple:
    return _trim([i * a[i] % p for i in range(1, len(a))])


def xgcd(a: tuple, b: tuple, p: int) -> tuple[tuple, tuple, tuple]:
    """Monic g = gcd(a, b) with Bezout cofactors: g = s*a + t*b."""
    if not a and not b:
        raise ZeroDivisionError("xgcd of two zero polynomials")
    r0, r1 = a, b
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = p_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(s0, p_mul(q, s1, p), p)
        t0, t1 = t1, p_sub(t0, p_mul(q, t1, p), p)
    k = inv_mod(r0[-1], p)
    return p_scale(r0, k, p), p_scale(s0, k, p), p_scale(t0, k, p)


def gcd(a: tuple, b: tuple, p: int) -> tuple:
    while b:
        a, b = b, p_mod(a, b, p)
    return monic(a, p)


def resultant(a: tuple, b: tuple, p: int) -> int:
    """res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a.

    Euclidean scheme: res(a, b) = (-1)^(da*db) lc(b)^(da - dr) res(b, r)
    with r = a mod b.
    """
    if not a or not b:
        # zero against a nonzero constant is the empty product
        return 1 if len(a) == 1 or len(b) == 1 else 0
    acc = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return acc * pow(b[0], da, p) % p
        if da == 0:
            return acc * pow(a[0], db, p) % p
        r = p_mod(a, b, p)
        if not r:
            return 0
        dr = len(r) - 1
        if da * db % 2:
            acc = -acc
        acc = acc * pow(b[-1], da - dr, p) % p
        a, b = b, r


class Poly:
    """Immutable polynomial over F_p with operator overloading."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p: int):
        self.p = p
        self.coeffs = norm((int(c) for c in coeffs), p)

    @classmethod
    def _raw(cls, coeffs: tuple, p: int) -> Poly:
        obj = cls.__new__(cls)
        obj.coeffs = coeffs
        obj.p = p
        return obj

    def _other(self, other) -> tuple:
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ModulusMismatchError(f"F_{self.p}[x] vs F_{other.p}[x]")
            return other.coeffs
        if isinstance(other, (int, FieldElement)):
            return norm((int(other),), self.p)
        return NotImplemented

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Poly._raw(p_add(self.coeffs, b, self.p), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Poly._raw(p_sub(self.coeffs, b, self.p), self.p)

    def __neg__(self):
        return Poly._raw(p_neg(self.coeffs, self.p), self.p)

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Poly._raw(p_mul(self.coeffs, b, self.p), self.p)

    __rmul__ = __mul__

    def __divmod__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        q, r = p_divmod(self.coeffs, b, self.p)
        return Poly._raw(q, self.p), Poly._raw(r, self.p)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x) -> FieldElement:
        return FieldElement(p_eval(self.coeffs, int(x), self.p), self.p)

    def monic(self) -> Poly:
        return Poly._raw(monic(self.coeffs, self.p), self.p)

    def derivative(self) -> Poly:
        return Poly._raw(derivative(self.coeffs, self.p), self.p)

    def xgcd(self, other: Poly) -> tuple[Poly, Poly, Poly]:
        g, s, t = xgcd(self.coeffs, self._other(other), self.p)
        return Poly._raw(g, self.p), Poly._raw(s, self.p), Poly._raw(t, self.p)

    def resultant(self, other: Poly) -> FieldElement:
        return FieldElement(resultant(self.coeffs, self._other(other), self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == norm((other,), self.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)}, {self.p})"


def powmod(a: tuple, e: int, m: tuple, p: int) -> tuple:
    """a**e mod m by square-and-multiply."""
    result = (1,)
    base = p_mod(a, m, p)
    while e:
        if e & 1:
            result = p_mod(p_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = p_mod(p_mul(base, base, p), m, p)
    return result


def roots(a: tuple, p: int, rng=None) -> list[int]:
    """Distinct roots of ``a`` in F_p, sorted.

    Cantor-Zassenhaus: isolate the split part gcd(a, x^p - x), then split it
    with random gcd(g, (x + d)^((p-1)/2) - 1).
    """
    rng = rng or random.Random(0)
    a = monic(a, p)
    if len(a) <= 1:
        return []
    xp = powmod((0, 1), p, a, p)
    g = gcd(a, p_sub(xp, (0, 1), p), p)
    found = []
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            found.append((-h[0]) % p)
            continue
        while True:
            d = rng.randrange(p)
            w = p_sub(powmod((d, 1), (p - 1) // 2, h, p), (1,), p)
            s = gcd(h, w, p)
            if 1 < len(s) < len(h):
                stack.append(s)
                stack.append(p_exact_div(h, s, p))
                break
    return sorted(found)


def taylor_shift(a: tuple, r: int, p: int) -> tuple:
    """Coefficients of a(x + r)."""
    c = list(a)
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] = (c[j] + r * c[j + 1]) % p
    return _trim(c)
