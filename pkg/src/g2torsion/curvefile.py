"""Text formats: curve description files and divisor literals.

Curve file, one ``key = value`` per line, ``#`` starts a comment::

    p = 1000003
    f = 1,0,0,0,0,1          # lowest degree first, 6 or 7 entries
    N = 1000006000004        # #Jac(C)(F_p)
    N_factors = 2^2,3,...    # optional when N < 2^64

Divisor literal: ``u=c0,c1,c2;v=d0,d1`` with u monic and its leading 1
written out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import G2TorsionError
from .poly import norm


class CurveFileError(G2TorsionError, ValueError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


@dataclass(frozen=True)
class CurveFile:
    p: int
    f: tuple
    N: int
    factors: tuple | None


def _int(text: str, line: int, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise CurveFileError(f"{what}: expected a decimal integer, got {text.strip()!r}", line) from None


def parse_factors(text: str, line=None) -> tuple:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            raise CurveFileError("empty entry in N_factors", line)
        q, _, e = item.partition("^")
        out.append((_int(q, line, "N_factors prime"), _int(e, line, "N_factors exponent") if e else 1))
    return tuple(out)


def parse_curve_file(text: str) -> CurveFile:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, val = body.partition("=")
        key = key.strip()
        if not sep:
            raise CurveFileError(f"expected 'key = value', got {body!r}", lineno)
        if key not in ("p", "f", "N", "N_factors"):
            raise CurveFileError(f"unknown key {key!r}", lineno)
        if key in values:
            raise CurveFileError(f"duplicate key {key!r}", lineno)
        values[key] = (val, lineno)
    for key in ("p", "f", "N"):
        if key not in values:
            raise CurveFileError(f"missing required key {key!r}")
    p = _int(*values["p"], "p")
    ftext, fline = values["f"]
    f = tuple(_int(c, fline, "f coefficient") for c in ftext.split(","))
    if len(f) not in (6, 7):
        raise CurveFileError(f"f needs 6 or 7 coefficients, got {len(f)}", fline)
    N = _int(*values["N"], "N")
    factors = parse_factors(*values["N_factors"]) if "N_factors" in values else None
    if factors is None and N >= 1 << 64:
        raise CurveFileError("N_factors is required when N >= 2^64", values["N"][1])
    return CurveFile(p, f, N, factors)


def format_curve_file(p: int, f, N: int, factors=None) -> str:
    lines = [f"p = {p}", "f = " + ",".join(str(c) for c in f), f"N = {N}"]
    if factors:
        lines.append("N_factors = " + ",".join(f"{q}^{e}" if e > 1 else str(q) for q, e in factors))
    return "\n".join(lines) + "\n"


def parse_divisor(text: str, p: int):
    """Parse ``u=c0,c1,c2;v=d0,d1`` into a MumfordDivisor (not validated)."""
    from .jacobian import MumfordDivisor

    parts = {}
    for piece in text.replace(" ", "").split(";"):
        key, sep, val = piece.partition("=")
        if not sep or key not in ("u", "v"):
            raise CurveFileError(f"bad divisor literal {text!r}")
        try:
            parts[key] = [int(c) for c in val.split(",")] if val else []
        except ValueError:
            raise CurveFileError(f"bad coefficient in divisor literal {text!r}") from None
    if "u" not in parts:
        raise CurveFileError(f"divisor literal {text!r} lacks u")
    return MumfordDivisor(norm(parts["u"], p), norm(parts.get("v", []), p))


def format_divisor(D) -> str:
    return "u=" + ",".join(map(str, D.u)) + ";v=" + ",".join(map(str, D.v))
