"""Sparse multivariate polynomials over exact rationals.

A polynomial in n variables is a dict {exponent tuple: rational}; zero
coefficients are never stored.  These are the shared work-horse for
cohomology rings, Euler/Chern class lifts and the series engines.  All
routines are pure; truncation arguments cut by total degree and, when
given, by per-variable exponent caps (both define monomial ideals, so
truncated arithmetic is exact on the retained coefficients).
"""

from __future__ import annotations

from ._rat import RAT_ONE, RAT_ZERO, rat


def mp_zero():
    return {}


def mp_const(n, value):
    v = value if isinstance(value, type(RAT_ZERO)) else rat(value)
    if v == 0:
        return {}
    return {(0,) * n: v}


def mp_gen(n, i, coeff=1):
    e = [0] * n
    e[i] = 1
    return {tuple(e): rat(coeff)}


def mp_linear(coeffs, const=0):
    """Linear form sum(coeffs[i] * x_i) + const."""
    n = len(coeffs)
    out = {}
    for i, a in enumerate(coeffs):
        if a != 0:
            e = [0] * n
            e[i] = 1
            out[tuple(e)] = rat(a)
    c = rat(const)
    if c != 0:
        out[(0,) * n] = c
    return out


def mp_add(p, q):
    out = dict(p)
    for e, v in q.items():
        w = out.get(e, RAT_ZERO) + v
        if w == 0:
            out.pop(e, None)
        else:
            out[e] = w
    return out


def mp_add_inplace(p, q, scale=None):
    for e, v in q.items():
        if scale is not None:
            v = v * scale
        w = p.get(e, RAT_ZERO) + v
        if w == 0:
            p.pop(e, None)
        else:
            p[e] = w


def mp_scale(p, s):
    if s == 0:
        return {}
    return {e: v * s for e, v in p.items()}


def mp_neg(p):
    return {e: -v for e, v in p.items()}


def _keep(e, max_deg, caps):
    if max_deg is not None and sum(e) > max_deg:
        return False
    if caps is not None:
        for a, c in zip(e, caps):
            if a > c:
                return False
    return True


def mp_truncate(p, max_deg=None, caps=None):
    return {e: v for e, v in p.items() if _keep(e, max_deg, caps)}


def mp_mul(p, q, max_deg=None, caps=None):
    if not p or not q:
        return {}
    if len(p) > len(q):
        p, q = q, p
    out = {}
    for e1, v1 in p.items():
        for e2, v2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if not _keep(e, max_deg, caps):
                continue
            w = out.get(e, RAT_ZERO) + v1 * v2
            if w == 0:
                out.pop(e, None)
            else:
                out[e] = w
    return out


def mp_pow(p, k, max_deg=None, caps=None):
    n_zero = mp_const(len(next(iter(p))) if p else 0, 1)
    out = n_zero
    for _ in range(k):
        out = mp_mul(out, p, max_deg=max_deg, caps=caps)
    return out


def mp_eval(p, values):
    acc = RAT_ZERO
    for e, v in p.items():
        term = v
        for a, x in zip(e, values):
            if a:
                term = term * x**a
        acc += term
    return acc


def mp_subst(p, images, nout, max_deg=None, caps=None):
    """Substitute variable i by the polynomial images[i] (in nout variables)."""
    # Cache powers of each image as they are needed.
    pows = [{0: mp_const(nout, 1)} for _ in images]
    out = {}
    for e, v in p.items():
        term = mp_const(nout, v)
        for i, a in enumerate(e):
            if a == 0:
                continue
            cache = pows[i]
            if a not in cache:
                top = max(cache)
                cur = cache[top]
                for k in range(top + 1, a + 1):
                    cur = mp_mul(cur, images[i], max_deg=max_deg, caps=caps)
                    cache[k] = cur
            term = mp_mul(term, cache[a], max_deg=max_deg, caps=caps)
            if not term:
                break
        mp_add_inplace(out, term)
    return out


def mp_homogeneous_part(p, d):
    return {e: v for e, v in p.items() if sum(e) == d}


def mp_degree(p):
    return max((sum(e) for e in p), default=-1)


def mp_coeff(p, e):
    return p.get(tuple(e), RAT_ZERO)


def mp_inverse_series(p, max_deg, caps=None):
    """Inverse of p with nonzero constant term, truncated by total degree."""
    n = len(next(iter(p)))
    c0 = p.get((0,) * n, RAT_ZERO)
    if c0 == 0:
        raise ValueError("series inverse needs a unit constant term")
    rest = {e: v for e, v in p.items() if sum(e) > 0}
    inv_c0 = 1 / c0
    out = mp_const(n, inv_c0)
    term = mp_const(n, inv_c0)
    for _ in range(max_deg):
        term = mp_scale(mp_mul(term, rest, max_deg=max_deg, caps=caps), -inv_c0)
        if not term:
            break
        mp_add_inplace(out, term)
    return out


def mp_to_strkeys(p):
    return {",".join(map(str, e)): str(v) for e, v in sorted(p.items())}
