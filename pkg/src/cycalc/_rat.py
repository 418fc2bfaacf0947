"""Exact rational scalars.

gmpy2.mpq is used when available (it is an order of magnitude faster than
fractions.Fraction in the hot series loops); otherwise we fall back to the
stdlib.  Both store a reduced fraction with positive denominator, so every
invariant the rest of the package relies on holds for either backend.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as rat, mpz as _int  # type: ignore

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as rat  # type: ignore

    _int = int
    _HAVE_GMPY2 = False

RAT_ZERO = rat(0)
RAT_ONE = rat(1)


def rat_num(x) -> int:
    return int(x.numerator)


def rat_den(x) -> int:
    return int(x.denominator)


def is_integer(x) -> bool:
    return x.denominator == 1


def rat_from_str(s: str):
    """Parse "p/q" or "p" into an exact rational."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return rat(int(p), int(q))
    return rat(int(s))


def rat_to_str(x) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)
