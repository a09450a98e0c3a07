"""Brute-force ground truth for tiny primes.

Nothing here uses Cantor's algorithm to decide what is true.  The element
list comes from an exhaustive search over Mumford pairs, the group order is
cross-checked against point counts over F_p and F_p^2, and a claimed sum
D1 + D2 = D3 is confirmed by finding a function a(x) + b(x)*y with divisor
D1 + D2 - D3 through linear algebra on points over F_p^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd

from . import jacobian as J
from . import poly as P
from .errors import G2TorsionError, OracleRefusal
from .finite_field import factor, inv_mod

P_CAP = 64


class Fp2:
    """a + b*s with s^2 = delta, a fixed non-residue mod p."""

    __slots__ = ("a", "b", "p", "delta")

    def __init__(self, a, b, p, delta):
        self.a, self.b, self.p, self.delta = a % p, b % p, p, delta

    def _mk(self, a, b):
        return Fp2(a, b, self.p, self.delta)

    def _lift(self, o):
        return o if isinstance(o, Fp2) else self._mk(o, 0)

    def __add__(self, o):
        o = self._lift(o)
        return self._mk(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._lift(o)
        return self._mk(self.a - o.a, self.b - o.b)

    def __neg__(self):
        return self._mk(-self.a, -self.b)

    def __mul__(self, o):
        o = self._lift(o)
        return self._mk(self.a * o.a + self.delta * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inv(self):
        n = (self.a * self.a - self.delta * self.b * self.b) % self.p
        ni = inv_mod(n, self.p)
        return self._mk(self.a * ni, -self.b * ni)

    def __truediv__(self, o):
        return self * self._lift(o).inv()

    def __pow__(self, e):
        r, b = self._mk(1, 0), self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def key(self):
        return (self.a, self.b)

    def __eq__(self, o):
        o = self._lift(o)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))


def _nonresidue(p: int) -> int:
    return next(d for d in range(2, p) if pow(d, (p - 1) // 2, p) == p - 1)


class _Field2:
    def __init__(self, p):
        self.p = p
        self.delta = _nonresidue(p)

    def __call__(self, a, b=0):
        return Fp2(a, b, self.p, self.delta)

    def sqrt_of_base(self, c: int) -> Fp2:
        """A square root in F_p^2 of c in F_p (always exists)."""
        p = self.p
        c %= p
        for y in range(p):
            if y * y % p == c:
                return self(y)
        cd = c * inv_mod(self.delta, p) % p
        for y in range(p):
            if y * y % p == cd:
                return self(0, y)
        raise AssertionError("unreachable")

    def evaluate(self, coeffs, x: Fp2) -> Fp2:
        acc = self(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc


@dataclass
class EnumeratedGroup:
    curve: J.CurveParams
    elements: list
    index: dict = field(default_factory=dict)
    _orders: dict | None = None

    def __post_init__(self):
        self.index = {D: i for i, D in enumerate(self.elements)}

    @property
    def N(self) -> int:
        return len(self.elements)

    def __contains__(self, D):
        return D in self.index

    def add(self, D1, D2):
        return J.add(D1, D2, self.curve)

    def orders(self) -> dict:
        """Order of every element by repeated addition (memoized along orbits)."""
        if self._orders is None:
            orders = {}
            for D in self.elements:
                if D in orders:
                    continue
                multiples = [J.IDENTITY, D]
                while not multiples[-1].is_identity():
                    multiples.append(self.add(multiples[-1], D))
                n = len(multiples) - 1
                for k in range(1, n + 1):
                    orders.setdefault(multiples[k], n // gcd(k, n))
            self._orders = orders
        return self._orders


def _check_cap(p: int) -> None:
    if p > P_CAP:
        raise OracleRefusal(f"p = {p} exceeds the enumeration cap {P_CAP}")


def enumerate_jacobian(curve: J.CurveParams) -> EnumeratedGroup:
    """Every reduced divisor, found by direct search over (u, v)."""
    p, f = curve.p, curve.f
    _check_cap(p)
    squares = {}
    for y in range(p):
        squares.setdefault(y * y % p, []).append(y)
    elements = [J.IDENTITY]
    for a in range(p):
        fa = P.p_eval(f, a, p)
        for y in sorted(set(squares.get(fa, []))):
            elements.append(J.MumfordDivisor(((-a) % p, 1), P.norm([y], p)))
    for u1 in range(p):
        for u0 in range(p):
            u = (u0, u1, 1)
            r = P.p_mod(f, u, p)
            r0 = r[0] if r else 0
            r1 = r[1] if len(r) > 1 else 0
            for d1 in range(p):
                for d0 in range(p):
                    if ((d0 * d0 - d1 * d1 * u0 - r0) % p == 0
                            and (2 * d0 * d1 - d1 * d1 * u1 - r1) % p == 0):
                        elements.append(J.MumfordDivisor(u, P.norm([d0, d1], p)))
    return EnumeratedGroup(curve, elements)


def count_points(curve: J.CurveParams, extension: int) -> int:
    """#C(F_q) for q = p or p^2 on the quintic model (one point at infinity)."""
    p, f = curve.p, curve.f
    if extension == 1:
        total = 1
        for x in range(p):
            fx = P.p_eval(f, x, p)
            total += 1 if fx == 0 else (2 if pow(fx, (p - 1) // 2, p) == 1 else 0)
        return total
    if extension != 2:
        raise ValueError("only degree 1 and 2 extensions are supported")
    K = _Field2(p)
    half = (p * p - 1) // 2
    total = 1
    for a in range(p):
        for b in range(p):
            fx = K.evaluate(f, K(a, b))
            if fx.is_zero():
                total += 1
            elif (fx ** half) == 1:
                total += 2
    return total


def zeta_group_order(curve: J.CurveParams) -> int:
    """#Jac(C)(F_p) = L(1) from #C(F_p) and #C(F_p^2).

    L(T) = 1 + a1 T + a2 T^2 + p a1 T^3 + p^2 T^4 with
    a1 = M1 - p - 1 and a2 = (M2 - p^2 - 1 + a1^2) / 2.
    """
    p = curve.p
    _check_cap(p)
    m1, m2 = count_points(curve, 1), count_points(curve, 2)
    a1 = m1 - p - 1
    a2 = (m2 - p * p - 1 + a1 * a1) // 2
    return 1 + a1 + a2 + p * a1 + p * p


# -- principal divisor test ------------------------------------------------

def _points(D: J.MumfordDivisor, K: _Field2) -> list:
    """Points of the effective part of D over F_p^2, with repetition."""
    p = K.p
    u, v = D.u, D.v
    if len(u) == 1:
        return []
    if len(u) == 2:
        xs = [K(-u[0])]
    else:
        u0, u1 = u[0] if u else 0, u[1]
        disc = (u1 * u1 - 4 * u0) % p
        sd = K.sqrt_of_base(disc)
        h = inv_mod(2, p)
        xs = [(sd - u1) * h, (-sd - u1) * h]
    return [(x.key(), K.evaluate(v, x).key()) for x in xs]


def _shift(coeffs, x0: Fp2, K: _Field2, upto: int) -> list:
    """Coefficients of c(x0 + t) as a polynomial in t, truncated to t^upto."""
    out = []
    for j in range(upto):
        acc = K(0)
        for i in range(j, len(coeffs)):
            acc = acc + (x0 ** (i - j)) * (comb(i, j) * coeffs[i])
        out.append(acc)
    return out


def _y_series(f, x0: Fp2, y0: Fp2, K: _Field2, upto: int) -> list:
    F = _shift(f, x0, K, upto)
    c = [y0]
    two_y0_inv = (y0 * 2).inv()
    for k in range(1, upto):
        s = F[k]
        for i in range(1, k):
            s = s - c[i] * c[k - i]
        c.append(s * two_y0_inv)
    return c


def _has_kernel(rows: list, ncols: int, K: _Field2) -> bool:
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inv()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                c = rows[r][col]
                rows[r] = [x - c * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank < ncols


def is_principal(points: dict, curve: J.CurveParams) -> bool:
    """Whether Z - n*inf is principal, Z = sum of ``points`` (point -> mult).

    Searches L(n*inf) = {a(x) + b(x) y : 2 deg a <= n, 2 deg b + 5 <= n}
    for a nonzero function vanishing on Z with the given multiplicities.
    """
    p, f = curve.p, curve.f
    K = _Field2(p)
    n = sum(points.values())
    na = n // 2 + 1
    nb = (n - 5) // 2 + 1 if n >= 5 else 0
    rows = []
    for (xk, yk), m in points.items():
        x0, y0 = K(*xk), K(*yk)
        if y0.is_zero():
            # local parameter y; ord(a(x)) = 2 ord_x0(a), ord(b y) = 2 ord_x0(b) + 1
            ka, kb = (m + 1) // 2, m // 2
            for j in range(ka):
                rows.append([_binom_term(i, j, x0, K) for i in range(na)] + [K(0)] * nb)
            for j in range(kb):
                rows.append([K(0)] * na + [_binom_term(i, j, x0, K) for i in range(nb)])
        else:
            ys = _y_series(f, x0, y0, K, m)
            for j in range(m):
                row = [_binom_term(i, j, x0, K) for i in range(na)]
                for i in range(nb):
                    acc = K(0)
                    for l in range(j + 1):
                        acc = acc + _binom_term(i, l, x0, K) * ys[j - l]
                    row.append(acc)
                rows.append(row)
    return _has_kernel(rows, na + nb, K)


def _binom_term(i: int, j: int, x0: Fp2, K: _Field2) -> Fp2:
    # coefficient of t^j in (x0 + t)^i
    if j > i:
        return K(0)
    return (x0 ** (i - j)) * comb(i, j)


def is_sum(D1, D2, D3, curve: J.CurveParams) -> bool:
    """True iff D1 + D2 = D3 in Jac(C), decided without Cantor's algorithm.

    -D3 is linearly equivalent to the hyperelliptic conjugate of its points,
    so D1 + D2 - D3 ~ (pts(D1) + pts(D2) + conj pts(D3)) - n*inf.
    """
    K = _Field2(curve.p)
    pts = {}
    for pt in _points(D1, K) + _points(D2, K):
        pts[pt] = pts.get(pt, 0) + 1
    for (x, (ya, yb)) in _points(D3, K):
        pt = (x, ((-ya) % curve.p, (-yb) % curve.p))
        pts[pt] = pts.get(pt, 0) + 1
    return is_principal(pts, curve)


# -- group structure ---------------------------------------------------------

def group_structure(g: EnumeratedGroup) -> tuple:
    """Invariant factors (n1, ..., nr), n_i | n_(i+1), padded to length 4.

    For each prime l the counts |G[l^k]| = l^(r_k) fix the partition of the
    l-part: r_k - r_(k-1) cyclic factors have order at least l^k.
    """
    orders = g.orders()
    N = g.N
    per_prime = []
    for ell, e in factor(N):
        ranks = [0]
        for k in range(1, e + 1):
            cnt = sum(1 for o in orders.values() if (ell ** k) % o == 0)
            r = 0
            while ell ** r < cnt:
                r += 1
            if ell ** r != cnt:
                raise G2TorsionError(f"|G[{ell}^{k}]| = {cnt} is not a power of {ell}")
            ranks.append(r)
        # number of factors with exponent >= k is ranks[k] - ranks[k-1]
        exps = [ranks[k] - ranks[k - 1] for k in range(1, e + 1)]
        # factor i (0-based, largest first) has exponent #{k : at_least_k > i}
        width = exps[0] if exps else 0
        factor_exps = [sum(1 for a in exps if a > i) for i in range(width)]
        per_prime.append((ell, factor_exps))
    rank = max([len(fe) for _, fe in per_prime], default=0)
    width = max(rank, 4)
    invariants = [1] * width
    for ell, fe in per_prime:
        for i, k in enumerate(fe):
            invariants[width - 1 - i] *= ell ** k
    return tuple(invariants)


def subgroup_span(elements, g: EnumeratedGroup) -> int:
    """Size of the subgroup generated by ``elements``.

    Grows H one generator D at a time: H + <D> is the union of the cosets
    H + kD up to the first multiple of D that lands in H.
    """
    H = {J.IDENTITY}
    for D in elements:
        if D not in g:
            raise G2TorsionError(f"{D} is not an element of the enumerated group")
        if D in H:
            continue
        layer = list(H)
        span = set(H)
        step = D
        while step not in H:
            layer = [g.add(X, D) for X in layer]
            span.update(layer)
            step = g.add(step, D)
        H = span
    return len(H)


def m_value(N: int, p: int) -> int:
    """Largest divisor of N whose prime factors all divide p - 1."""
    m = 1
    for ell, e in factor(N):
        if (p - 1) % ell == 0:
            m *= ell ** e
    return m


def m_torsion(g: EnumeratedGroup) -> list:
    m = m_value(g.N, g.curve.p)
    return [D for D, o in g.orders().items() if m % o == 0]


def sylow_subgroup(g: EnumeratedGroup, ell: int) -> list:
    out = []
    for D, o in g.orders().items():
        while o % ell == 0:
            o //= ell
        if o == 1:
            out.append(D)
    return out


def curve_file_text(curve: J.CurveParams, g: EnumeratedGroup) -> str:
    """Curve description with an enumeration-verified N."""
    from .curvefile import format_curve_file

    return format_curve_file(curve.p, curve.original or curve.f, g.N, factor(g.N))
