"""Generators of the Sylow subgroups and of the m-torsion of Jac(C)(F_p).

``diagonalize_sylow`` picks four random elements of the Sylow-l subgroup and
four random probes, then clears the tame Tate pairing matrix level by level
(k = 4, 3, 2, 1): probes are combined so that row k vanishes off the
diagonal, candidates so that column k does.  Once the matrix is diagonal
mod l with units on the live diagonal, the candidates generate a direct
sum.  ``sylow_generators`` repeats this until the orders multiply to the
Sylow order, and ``m_torsion_generators`` adds the per-prime answers.
"""

from __future__ import annotations

import logging
import random
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from . import jacobian as J
from .dlp import discrete_log
from .errors import GiveUpError, PreconditionError
from .finite_field import FieldElement, inv_mod, primitive_root_of_unity
from .tate_pairing import tame_tate

log = logging.getLogger(__name__)

MAX_ELEMENT_RESTARTS = 64
MAX_PROBE_RESTARTS = 64
MAX_SYLOW_ATTEMPTS = 256
RANK = 4


class Stats:
    """Call counts and wall time per primitive class."""

    KINDS = ("orders", "scalar_muls", "pairings", "dlogs")

    def __init__(self):
        self.calls = {k: 0 for k in self.KINDS}
        self.seconds = {k: 0.0 for k in self.KINDS}

    @contextmanager
    def timed(self, kind):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.calls[kind] += 1
            self.seconds[kind] += time.perf_counter() - t0


class _Ops:
    """The group primitives used by the algorithms, instrumented."""

    def __init__(self, ctx, rng, stats):
        self.ctx, self.rng, self.stats = ctx, rng, stats or Stats()

    def mul(self, n, D):
        with self.stats.timed("scalar_muls"):
            return J.scalar_mul(n, D, self.ctx)

    def order(self, D, multiple, factorization):
        with self.stats.timed("orders"):
            return J.element_order(D, self.ctx, multiple, factorization)

    def pair(self, g, h, lam):
        with self.stats.timed("pairings"):
            return tame_tate(g, h, lam, self.ctx, self.rng)

    def dlog(self, value, zeta, lam, ell):
        with self.stats.timed("dlogs"):
            fac = [(ell, _valuation(lam, ell))] if lam > 1 else []
            return discrete_log(zeta.value, value.value.value, lam, self.ctx.p, fac)


def _valuation(n: int, ell: int) -> int:
    k = 0
    while n % ell == 0:
        n //= ell
        k += 1
    return k


def sylow_order(ell: int, ctx) -> int:
    e = ctx.valuation(ell)
    if e == 0:
        raise PreconditionError(f"{ell} does not divide N = {ctx.N}")
    return ell ** e


def compute_lambda(lam_nu: int, p: int, ell: int | None = None) -> tuple[int, int]:
    """Minimal lambda0 with lambda = lam_nu / lambda0 dividing p - 1.

    ``lam_nu`` is a positive power of a prime l with l | p - 1; the answer is
    lambda = l^min(a, v_l(p - 1)).
    """
    if ell is None:
        ell = next(q for q in range(2, lam_nu + 1) if lam_nu % q == 0)
    if lam_nu < ell or ell ** _valuation(lam_nu, ell) != lam_nu:
        raise PreconditionError(f"{lam_nu} is not a positive power of {ell}")
    if (p - 1) % ell:
        raise PreconditionError(f"{ell} does not divide p - 1")
    lam = ell ** min(_valuation(lam_nu, ell), _valuation(p - 1, ell))
    return lam_nu // lam, lam


@dataclass
class DiagonalizationState:
    """Working data of one diagonalization run (indices 0..3)."""

    ell: int
    gamma: list
    h: list
    orders: list = field(default_factory=lambda: [1] * RANK)
    live: list = field(default_factory=list)
    nu: int | None = None
    lambda0: int = 1
    lam: int = 1
    g: list = field(default_factory=lambda: [None] * RANK)
    zeta: FieldElement | None = None
    alpha: list = field(default_factory=lambda: [[None] * RANK for _ in range(RANK)])
    restarts: dict = field(default_factory=lambda: {"elements": 0, "probes": 0, "uncertified": 0})

    @property
    def candidates(self) -> list:
        return list(self.gamma)


@dataclass
class Certificate:
    ok: bool
    ell: int
    lam: int
    live: list
    alpha: list
    zeta: int | None
    offending: tuple | None = None
    strict: bool = False

    def as_dict(self) -> dict:
        return {"ok": self.ok, "strict": self.strict, "ell": self.ell, "lambda": self.lam,
                "live": self.live, "alpha": self.alpha, "zeta": self.zeta,
                "offending": self.offending}


def _check_prime_ell(ell, ctx):
    if ctx.N % ell or (ctx.p - 1) % ell:
        raise PreconditionError(f"{ell} does not divide gcd(N, p - 1)")


def _run_levels(st: DiagonalizationState, ops: _Ops, n_ell: int) -> str:
    """Steps 4-6 for fixed probes: 'done', 'new_probes' or 'new_elements'."""
    ell, p = st.ell, ops.ctx.p
    fac = [(ell, _valuation(n_ell, ell))]
    gamma, h, orders = st.gamma, st.h, st.orders
    st.alpha = [[None] * RANK for _ in range(RANK)]
    for kp in range(RANK):
        k = RANK - 1 - kp
        live = [i for i in range(RANK) if not gamma[i].is_identity()]
        if not live:
            return "new_elements"
        for i in range(k + 1):
            orders[i] = ops.order(gamma[i], n_ell, fac)
        perm = sorted(range(k + 1), key=lambda i: orders[i])
        gamma[:k + 1] = [gamma[i] for i in perm]
        orders[:k + 1] = [orders[i] for i in perm]
        st.live = list(range(RANK - len(live), RANK))
        st.nu = st.live[0]
        if gamma[k].is_identity():
            return "done"
        st.lambda0, st.lam = compute_lambda(orders[st.nu], p, ell)
        lam = st.lam
        active = [i for i in st.live if i <= k]
        st.g = [None] * RANK
        for i in active:
            st.g[i] = ops.mul(orders[i] // lam, gamma[i])
        taus = [ops.pair(st.g[k], h[j], lam) for j in range(k + 1)]
        if all((t.value ** (lam // ell)) == 1 for t in taus):
            return "new_probes"
        st.zeta = primitive_root_of_unity(p, lam, ops.rng)
        row = [ops.dlog(t, st.zeta, lam, ell) for t in taus]
        piv = next(j for j in range(k + 1) if row[j] % ell)
        h[piv], h[k] = h[k], h[piv]
        row[piv], row[k] = row[k], row[piv]
        col = {i: ops.dlog(ops.pair(st.g[i], h[k], lam), st.zeta, lam, ell)
               for i in active if i != k}
        for j in range(k):
            st.alpha[k][j] = row[j]
        st.alpha[k][k] = row[k]
        for i, a in col.items():
            st.alpha[i][k] = a
        akk_inv = inv_mod(row[k], lam) if lam > 1 else 0
        for j in range(k):
            beta = akk_inv * row[j] % lam
            if beta:
                h[j] = J.sub(h[j], ops.mul(beta, h[k]), ops.ctx)
        for i, a in col.items():
            beta = akk_inv * a % lam
            if beta:
                gamma[i] = J.sub(gamma[i], ops.mul(beta * (orders[k] // orders[i]), gamma[k]), ops.ctx)
    return "done"


def diagonalize_sylow(ell: int, ctx, rng: random.Random, stats: Stats | None = None,
                      certify: bool = True) -> DiagonalizationState:
    """Independent elements of the Sylow-l subgroup by pairing diagonalization.

    The returned state's ``gamma`` satisfy <gamma_i> = direct sum of the
    <gamma_i>.  With ``certify`` the final state is re-checked by
    ``verify_direct_sum`` and a failing state sends the run back to a fresh
    choice of elements.
    """
    _check_prime_ell(ell, ctx)
    ops = _Ops(ctx, rng, stats)
    n_ell = sylow_order(ell, ctx)
    cof = ctx.N // n_ell
    counts = {"elements": 0, "probes": 0, "uncertified": 0}
    while counts["elements"] <= MAX_ELEMENT_RESTARTS:
        gamma = [ops.mul(cof, J.random_element(ctx, rng)) for _ in range(RANK)]
        if all(x.is_identity() for x in gamma):
            counts["elements"] += 1
            continue
        probes = 0
        while True:
            st = DiagonalizationState(ell, gamma, [J.random_element(ctx, rng) for _ in range(RANK)])
            outcome = _run_levels(st, ops, n_ell)
            if outcome != "new_probes":
                break
            probes += 1
            counts["probes"] += 1
            if probes > MAX_PROBE_RESTARTS:
                raise GiveUpError(f"probe budget exhausted for l = {ell}",
                                  {"ell": ell, **counts, "gamma": [str(x) for x in gamma]})
            gamma = st.gamma
        if outcome == "new_elements":
            counts["elements"] += 1
            continue
        st.restarts = dict(counts)
        if certify and not verify_direct_sum(st, ctx, rng, stats).ok:
            log.debug("uncertified diagonalization for l = %d, restarting", ell)
            counts["uncertified"] += 1
            counts["elements"] += 1
            continue
        return st
    raise GiveUpError(f"element budget exhausted for l = {ell}", {"ell": ell, **counts})


def verify_direct_sum(state: DiagonalizationState, ctx, rng: random.Random | None = None,
                      stats: Stats | None = None) -> Certificate:
    """Recompute the pairing matrix of the live candidates from scratch.

    The candidates form a direct sum exactly when their order-l layers are
    independent, and pairing that layer reduces every exponent mod l.  So
    the check passes when the live orders are sorted, the live off-diagonal
    exponents vanish mod l and the diagonal ones are units mod l.  Whether
    the off-diagonals also vanish mod lambda is reported as ``strict``.
    """
    ell, p = state.ell, ctx.p
    rng = rng or random.Random(0)
    ops = _Ops(ctx, rng, stats)
    n_ell = sylow_order(ell, ctx)
    fac = [(ell, _valuation(n_ell, ell))]
    gamma = state.gamma
    orders = [ops.order(x, n_ell, fac) for x in gamma]
    live = [i for i in range(RANK) if orders[i] > 1]
    if not live:
        return Certificate(True, ell, 1, [], [], None, strict=True)
    if orders != sorted(orders):
        return Certificate(False, ell, 1, live, [], None, ("unsorted", orders))
    _, lam = compute_lambda(orders[live[0]], p, ell)
    zeta = primitive_root_of_unity(p, lam, rng)
    g = {i: ops.mul(orders[i] // lam, gamma[i]) for i in live}
    alpha = [[None] * RANK for _ in range(RANK)]
    offending = None
    strict = True
    for i in live:
        for j in live:
            a = ops.dlog(ops.pair(g[i], state.h[j], lam), zeta, lam, ell)
            alpha[i][j] = a
            if i != j and a % lam:
                strict = False
            bad = (a % ell == 0) if i == j else (a % ell != 0)
            if bad and offending is None:
                offending = (i, j, a)
    return Certificate(offending is None, ell, lam, live, alpha, zeta.value, offending,
                       strict and offending is None)


@dataclass
class SylowComponent:
    ell: int
    sylow_order: int
    generators: list
    orders: list
    state: DiagonalizationState
    certificate: Certificate
    attempts: int


@dataclass
class StructureResult:
    generators: list
    orders: list
    m: int
    components: list

    @property
    def target_order(self) -> int:
        return self.m


def sylow_generators(ell: int, ctx, rng: random.Random, stats: Stats | None = None) -> StructureResult:
    """Generators of the full Sylow-l subgroup: retry until orders multiply to N_l."""
    _check_prime_ell(ell, ctx)
    n_ell = sylow_order(ell, ctx)
    for attempt in range(1, MAX_SYLOW_ATTEMPTS + 1):
        st = diagonalize_sylow(ell, ctx, rng, stats)
        fac = [(ell, _valuation(n_ell, ell))]
        orders = [J.element_order(x, ctx, n_ell, fac) for x in st.gamma]
        prod = 1
        for o in orders:
            prod *= o
        if prod == n_ell:
            cert = verify_direct_sum(st, ctx, rng, stats)
            comp = SylowComponent(ell, n_ell, list(st.gamma), orders, st, cert, attempt)
            return StructureResult(list(st.gamma), orders, n_ell, [comp])
        log.debug("l = %d attempt %d spans %d of %d", ell, attempt, prod, n_ell)
    raise GiveUpError(f"no full generating set for the Sylow-{ell} subgroup after "
                      f"{MAX_SYLOW_ATTEMPTS} attempts", {"ell": ell, "attempts": MAX_SYLOW_ATTEMPTS})


def qualifying_primes(ctx) -> list:
    """Primes dividing both N and p - 1."""
    return [q for q, _ in ctx.factorization if (ctx.p - 1) % q == 0]


def m_torsion_generators(ctx, primes=None, rng: random.Random | None = None,
                         stats: Stats | None = None) -> StructureResult:
    """gamma_1..gamma_4 with Gamma[m] the direct sum of the <gamma_i>.

    Per-prime generators are sorted by order and summed coordinatewise, so
    orders multiply across primes and n_i | n_(i+1) holds.
    """
    rng = rng or random.Random(0)
    if primes is None:
        primes = qualifying_primes(ctx)
    for ell in primes:
        _check_prime_ell(ell, ctx)
    generators = [J.IDENTITY] * RANK
    orders = [1] * RANK
    m = 1
    components = []
    for ell in primes:
        res = sylow_generators(ell, ctx, rng, stats)
        comp = res.components[0]
        components.append(comp)
        m *= comp.sylow_order
        for i in range(RANK):
            generators[i] = J.add(generators[i], comp.generators[i], ctx)
            orders[i] *= comp.orders[i]
    return StructureResult(generators, orders, m, components)


def sylow_component(D, ell: int, ctx):
    """The l-primary part of D: e * D with e = 1 mod N_l and e = 0 mod N / N_l."""
    n_ell = sylow_order(ell, ctx)
    cof = ctx.N // n_ell
    e = cof * inv_mod(cof % n_ell, n_ell) % ctx.N if n_ell > 1 else 0
    return J.scalar_mul(e, D, ctx)
