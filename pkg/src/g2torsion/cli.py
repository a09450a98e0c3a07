"""Command line front end.

    g2torsion generators CURVE [--seed S] [--primes 2,3] [--json] [--wall-times]
    g2torsion pair CURVE G H --lambda L [--zeta Z]
    g2torsion verify CURVE GENERATORS.json

Divisors are read and printed on the monic quintic model the curve file is
brought to (see ``validate_curve``).  Exit codes: 0 success, 1 bad input
(file, N, divisor or pairing precondition), 2 retry budget exhausted, 3
verification failure.  ``G2TORSION_LOG`` sets the log level (e.g. DEBUG).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

from . import jacobian as J
from . import oracle as O
from . import structure as S
from .curvefile import CurveFileError, format_divisor, parse_curve_file, parse_divisor
from .errors import G2TorsionError, GiveUpError
from .finite_field import element_order_in_field, FieldElement
from .tate_pairing import pairing_dlog_exponent, tame_tate

DEFAULT_SEED = 1
EXIT_OK, EXIT_INPUT, EXIT_GIVE_UP, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("g2torsion")


class InputError(Exception):
    """Bad command line input; maps to exit code 1."""


def load_context(path: str, seed: int = 0) -> J.GroupContext:
    """Parse, validate and Lagrange-check a curve file."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        cf = parse_curve_file(text)
    except CurveFileError as exc:
        raise InputError(f"{path}: {exc}") from None
    try:
        curve = J.validate_curve(cf.p, cf.f)
        return J.GroupContext.create(curve, cf.N, cf.factors, rng=random.Random(seed))
    except G2TorsionError as exc:
        raise InputError(f"{path}: {exc}") from None


def _divisor_json(D, order=None) -> dict:
    out = {"u": list(D.u), "v": list(D.v)}
    if order is not None:
        out["order"] = order
    return out


def _divisor_from_json(obj, ctx) -> J.MumfordDivisor:
    try:
        D = J.MumfordDivisor(tuple(int(c) % ctx.p for c in obj["u"]),
                             tuple(int(c) % ctx.p for c in obj["v"]))
    except (KeyError, TypeError, ValueError):
        raise InputError(f"bad divisor entry {obj!r}") from None
    if not J.is_valid_divisor(D, ctx.curve):
        raise InputError(f"{format_divisor(D)} is not a divisor on the curve")
    return D


def _curve_json(ctx) -> dict:
    r, c = ctx.curve.transform
    return {"p": ctx.p, "f_input": list(ctx.curve.original), "f_model": list(ctx.f),
            "transform": {"root": r, "scale": c}, "N": ctx.N,
            "N_factors": [list(qe) for qe in ctx.factorization]}


def _parse_seed(text: str) -> int:
    if text == "random":
        return random.SystemRandom().randrange(1 << 63)
    try:
        return int(text)
    except ValueError:
        raise InputError(f"--seed expects an integer or 'random', got {text!r}") from None


def _parse_primes(text: str | None, ctx) -> list | None:
    if text is None:
        return None
    try:
        primes = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise InputError(f"--primes expects a comma separated list, got {text!r}") from None
    allowed = S.qualifying_primes(ctx)
    for q in primes:
        if q not in allowed:
            raise InputError(f"{q} does not divide gcd(N, p - 1); choose from {allowed}")
    return primes


def build_report(ctx, seed: int, primes=None, wall_times: bool = False) -> dict:
    stats = S.Stats()
    rng = random.Random(seed)
    if primes is None:
        primes = S.qualifying_primes(ctx)
    res = S.m_torsion_generators(ctx, primes, rng, stats)
    certificate = []
    for comp in res.components:
        st = comp.state
        certificate.append({
            "ell": comp.ell,
            "sylow_order": comp.sylow_order,
            "attempts": comp.attempts,
            "restarts": st.restarts,
            "generators": [_divisor_json(g, o) for g, o in zip(comp.generators, comp.orders)],
            "probes": [_divisor_json(h) for h in st.h],
            **comp.certificate.as_dict(),
        })
    timings = {"calls": dict(stats.calls)}
    if wall_times:
        timings["seconds"] = {k: round(v, 6) for k, v in stats.seconds.items()}
    return {
        "curve": _curve_json(ctx),
        "m": res.m,
        "primes": list(primes),
        "generators": [_divisor_json(g, o) for g, o in zip(res.generators, res.orders)],
        "certificate": certificate,
        "seed": seed,
        "timings": timings,
    }


def _print_report(report: dict, out) -> None:
    c = report["curve"]
    print(f"curve: p = {c['p']}, f = {','.join(map(str, c['f_model']))} (monic quintic model)", file=out)
    print(f"N = {c['N']}", file=out)
    print(f"m = {report['m']}", file=out)
    for i, g in enumerate(report["generators"], 1):
        D = J.MumfordDivisor(tuple(g["u"]), tuple(g["v"]))
        print(f"gamma_{i} = {D}  order {g['order']}", file=out)
    for cert in report["certificate"]:
        status = "certified" if cert["ok"] else "NOT certified"
        print(f"l = {cert['ell']}: Sylow order {cert['sylow_order']}, lambda = {cert['lambda']}, "
              f"{status}", file=out)
    print(f"seed = {report['seed']}", file=out)


def cmd_generators(args, out=None) -> int:
    out = out or sys.stdout
    seed = _parse_seed(args.seed)
    ctx = load_context(args.curve)
    primes = _parse_primes(args.primes, ctx)
    try:
        report = build_report(ctx, seed, primes, args.wall_times)
    except GiveUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("retry counts: " + json.dumps(exc.diagnostics, sort_keys=True, default=str),
              file=sys.stderr)
        return EXIT_GIVE_UP
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
    else:
        _print_report(report, out)
    return EXIT_OK


def cmd_pair(args, out=None) -> int:
    out = out or sys.stdout
    ctx = load_context(args.curve)
    try:
        g = parse_divisor(args.g, ctx.p)
        h = parse_divisor(args.h, ctx.p)
    except CurveFileError as exc:
        raise InputError(str(exc)) from None
    for name, D in (("g", g), ("h", h)):
        if not J.is_valid_divisor(D, ctx.curve):
            raise InputError(f"{name} = {D} is not a divisor on the curve")
    try:
        val = tame_tate(g, h, args.lam, ctx, random.Random(args.seed))
    except G2TorsionError as exc:
        raise InputError(str(exc)) from None
    print(f"tau = {val.value.value}", file=out)
    if args.zeta is not None:
        zeta = FieldElement(args.zeta, ctx.p)
        if args.zeta % ctx.p == 0 or element_order_in_field(zeta) != args.lam:
            raise InputError(f"zeta = {args.zeta} does not have order {args.lam}")
        print(f"log_zeta(tau) = {pairing_dlog_exponent(val, zeta)}", file=out)
    return EXIT_OK


def _load_report(path: str) -> dict:
    try:
        with open(path) as fh:
            report = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    for key in ("curve", "m", "generators", "certificate"):
        if key not in report:
            raise InputError(f"{path}: missing key {key!r}")
    return report


def verify_report(ctx, report: dict) -> list:
    """Re-check a generators report from scratch; returns a list of failures."""
    if report["curve"].get("p") != ctx.p or report["curve"].get("N") != ctx.N:
        raise InputError("generators file was produced for a different curve")
    gens = [_divisor_from_json(g, ctx) for g in report["generators"]]
    if len(gens) != S.RANK:
        raise InputError(f"expected {S.RANK} generators, got {len(gens)}")
    failures = []
    m = 1
    for cert in report["certificate"]:
        ell = int(cert["ell"])
        if ell not in S.qualifying_primes(ctx):
            failures.append(f"l = {ell} does not divide gcd(N, p - 1)")
            continue
        n_ell = S.sylow_order(ell, ctx)
        m *= n_ell
        probes = [_divisor_from_json(h, ctx) for h in cert["probes"]]
        comps = [S.sylow_component(g, ell, ctx) for g in gens]
        state = S.DiagonalizationState(ell, comps, probes)
        result = S.verify_direct_sum(state, ctx, random.Random(0))
        if not result.ok:
            failures.append(f"l = {ell}: pairing certificate fails at entry {result.offending}")
        orders = [J.element_order(x, ctx, n_ell, [(ell, ctx.valuation(ell))]) for x in comps]
        prod = 1
        for o in orders:
            prod *= o
        if prod != n_ell:
            failures.append(f"l = {ell}: orders {orders} multiply to {prod}, Sylow order is {n_ell}")
    if m != report["m"]:
        failures.append(f"reported m = {report['m']} but the certified primes give {m}")
    missing = set(S.qualifying_primes(ctx)) - {int(c["ell"]) for c in report["certificate"]}
    if missing and report.get("primes") is None:
        failures.append(f"no certificate for primes {sorted(missing)}")
    for i, (g, entry) in enumerate(zip(gens, report["generators"]), 1):
        if J.element_order(g, ctx) != entry.get("order"):
            failures.append(f"gamma_{i}: recorded order {entry.get('order')} is wrong")
    if ctx.p <= O.P_CAP and not failures:
        grp = O.enumerate_jacobian(ctx.curve)
        if grp.N != ctx.N:
            failures.append(f"enumeration gives N = {grp.N}, file says {ctx.N}")
        else:
            target = sum(1 for o in grp.orders().values() if m % o == 0)
            span = O.subgroup_span(gens, grp)
            if span != target:
                failures.append(f"oracle: span has {span} elements, Gamma[{m}] has {target}")
    return failures


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    ctx = load_context(args.curve)
    report = _load_report(args.generators)
    failures = verify_report(ctx, report)
    if failures:
        for msg in failures:
            print(f"FAIL: {msg}", file=out)
        return EXIT_VERIFY
    checks = "pairing certificate, oracle span" if ctx.p <= O.P_CAP else "pairing certificate"
    print(f"verified: direct sum of order {report['m']} ({checks})", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="g2torsion", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    gp = sub.add_parser("generators", help="generators of the m-torsion")
    gp.add_argument("curve", help="curve file")
    gp.add_argument("--seed", default=str(DEFAULT_SEED),
                    help=f"integer seed or 'random' (default {DEFAULT_SEED})")
    gp.add_argument("--primes", help="comma separated subset of the primes dividing gcd(N, p-1)")
    gp.add_argument("--json", action="store_true", help="print the full JSON report")
    gp.add_argument("--wall-times", action="store_true",
                    help="add wall clock seconds to the report (breaks byte-identical output)")
    gp.set_defaults(func=cmd_generators)

    pp = sub.add_parser("pair", help="evaluate the tame Tate pairing")
    pp.add_argument("curve")
    pp.add_argument("g", help="divisor literal u=c0,c1,c2;v=d0,d1 killed by lambda")
    pp.add_argument("h", help="divisor literal")
    pp.add_argument("--lambda", dest="lam", type=int, required=True)
    pp.add_argument("--zeta", type=int, help="primitive lambda-th root of unity; prints the log")
    pp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    pp.set_defaults(func=cmd_pair)

    vp = sub.add_parser("verify", help="re-check a generators JSON report")
    vp.add_argument("curve")
    vp.add_argument("generators", help="JSON written by 'generators --json'")
    vp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    level = os.environ.get("G2TORSION_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
