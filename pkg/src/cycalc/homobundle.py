"""Homogeneous bundle data on Grassmannians and the built-in target catalog.

A target is G(k,n) together with a direct sum of summands Sigma^lam applied
to the dual tautological bundle S* or the quotient bundle Q, twisted by
O(t).  Weight enumeration goes through semistandard tableaux.  Chern data
for Q-carriers is produced with formal Chern roots of Q and rewritten in
terms of c_j(Q) = h_j(H_1..H_k), so mixed S*/Q sums still get exact Euler
classes and topological invariants even though only pure sums feed the
series pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import combinations_with_replacement
from math import factorial

from . import mpoly as mp
from ._rat import RAT_ONE, RAT_ZERO, rat
from .cohomring import integrate_grassmann, schur_poly, ssyt_contents

CARRIER_S = "S*"
CARRIER_Q = "Q"
CARRIER_O = "O"


class CatalogError(KeyError):
    pass


@dataclass(frozen=True)
class BundleSummand:
    carrier: str  # "S*", "Q" or "O"
    lam: tuple = ()
    twist: int = 0

    def __post_init__(self):
        if self.carrier not in (CARRIER_S, CARRIER_Q, CARRIER_O):
            raise ValueError("unknown carrier %r" % (self.carrier,))
        lam = tuple(self.lam)
        if any(a < 0 for a in lam) or any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
            raise ValueError("partition parts must be weakly decreasing and nonnegative")
        if self.carrier == CARRIER_O and lam:
            raise ValueError("O(t) summands carry no partition")
        object.__setattr__(self, "lam", lam)

    def to_json(self):
        return {"carrier": self.carrier, "lambda": list(self.lam), "twist": self.twist}

    @staticmethod
    def from_json(obj):
        return BundleSummand(obj["carrier"], tuple(obj.get("lambda", ())), int(obj.get("twist", 0)))


@dataclass(frozen=True)
class TargetSpec:
    k: int
    n: int
    summands: tuple
    label: str = ""
    invariants: tuple = None  # (H^3, c2.H, c3) when known
    kuchle: str = ""
    database: str = ""
    pipeline: str = "abelianization"
    alias_of: str = ""
    note: str = ""

    @property
    def dim(self):
        return self.k * (self.n - self.k)

    def rank(self):
        return sum(summand_rank(s, self.k, self.n) for s in self.summands)

    def carriers(self):
        return {s.carrier for s in self.summands}

    def is_pure(self):
        """True when the abelian/nonabelian route applies directly:
        no Q-carriers among the Schur summands."""
        return CARRIER_Q not in self.carriers()

    def to_json(self):
        out = {
            "grassmann": [self.k, self.n],
            "summands": [s.to_json() for s in self.summands],
            "label": self.label,
        }
        return out

    @staticmethod
    def from_json(obj):
        k, n = obj["grassmann"]
        summands = tuple(BundleSummand.from_json(s) for s in obj["summands"])
        return TargetSpec(k, n, summands, label=obj.get("label", ""))


def summand_rank(s: BundleSummand, k: int, n: int) -> int:
    if s.carrier == CARRIER_O:
        return 1
    m = k if s.carrier == CARRIER_S else n - k
    if len(s.lam) > m:
        raise ValueError("partition longer than the carrier rank")
    return len(ssyt_contents(s.lam, m))


def schur_weights(lam, k):
    """Weight multiset of Sigma^lam applied to a k-dimensional space.

    Weights are content vectors of semistandard tableaux of shape lam with
    entries in 1..k; the multiset size equals dim Sigma^lam.
    """
    if len(tuple(x for x in lam if x > 0)) > k:
        raise ValueError("partition longer than k")
    return ssyt_contents(lam, k)


def hook_content_dimension(lam, k):
    """dim Sigma^lam(C^k) by the hook content formula (test oracle)."""
    lam = tuple(x for x in lam if x > 0)
    num = 1
    den = 1
    for r, row in enumerate(lam):
        for c in range(row):
            num *= k + c - r
            arm = row - c - 1
            leg = sum(1 for rr in range(r + 1, len(lam)) if lam[rr] > c) if r + 1 <= len(lam) else 0
            den *= arm + leg + 1
    return num // den


def dualize(spec: TargetSpec) -> TargetSpec:
    """Carry a pure-Q (plus line bundle) spec across G(k,n) ~ G(n-k,n).

    Sigma^lam Q becomes Sigma^lam S* on G(n-k,n); O(t) is unchanged.  Mixed
    S*/Q sums have no such reduction and are rejected.
    """
    carriers = spec.carriers() - {CARRIER_O}
    if carriers == {CARRIER_S}:
        new = tuple(
            replace(s, carrier=CARRIER_Q) if s.carrier == CARRIER_S else s for s in spec.summands
        )
    elif carriers <= {CARRIER_Q}:
        new = tuple(
            replace(s, carrier=CARRIER_S) if s.carrier == CARRIER_Q else s for s in spec.summands
        )
    else:
        raise ValueError(
            "not dualizable; use qconn or P_Delta pipeline for mixed S*/Q bundles"
        )
    return replace(spec, k=spec.n - spec.k, summands=new)


# ---------------------------------------------------------------------------
# line classes and Chern data on the abelianization (P^(n-1))^k
# ---------------------------------------------------------------------------


def line_classes(spec: TargetSpec):
    """All line-bundle first Chern classes of the torus restriction.

    Only defined for pure specs (S*/O carriers); each weight mu with twist
    t contributes the class sum((mu_i + t) H_i).  Returned as integer
    vectors of length k.
    """
    if not spec.is_pure():
        raise ValueError("line_classes needs a pure (S*/O) spec; dualize first")
    out = []
    for s in spec.summands:
        if s.carrier == CARRIER_O:
            out.append(tuple([s.twist] * spec.k))
        else:
            for mu in schur_weights(s.lam, spec.k):
                out.append(tuple(m + s.twist for m in mu))
    return out


def euler_lift(spec: TargetSpec):
    """Euler class lift: the product of all line classes, as an mpoly dict.

    For pure specs this is the product over torus weights; Q-carriers go
    through formal Chern roots reduced to c_j(Q) = h_j(H).
    """
    k = spec.k
    out = mp.mp_const(k, 1)
    cap = spec.k * (spec.n - 1)
    for s in spec.summands:
        out = mp.mp_mul(out, _summand_chern_poly(s, spec.k, spec.n, top_only=True), max_deg=cap)
    return out


def total_chern_lift(spec: TargetSpec, max_deg):
    """Lift of the total Chern class c(E), truncated by total degree."""
    out = mp.mp_const(spec.k, 1)
    for s in spec.summands:
        out = mp.mp_mul(out, _summand_chern_poly(s, spec.k, spec.n, top_only=False, max_deg=max_deg), max_deg=max_deg)
    return out


def _summand_chern_poly(s, k, n, top_only, max_deg=None):
    if s.carrier == CARRIER_O:
        cls = mp.mp_linear([s.twist] * k)
        return cls if top_only else mp.mp_add(mp.mp_const(k, 1), cls)
    if s.carrier == CARRIER_S:
        out = mp.mp_const(k, 1)
        for mu in schur_weights(s.lam, k):
            cls = mp.mp_linear([m + s.twist for m in mu])
            factor = cls if top_only else mp.mp_add(mp.mp_const(k, 1), cls)
            out = mp.mp_mul(out, factor, max_deg=max_deg)
        return out
    return _q_carrier_chern(s, k, n, top_only, max_deg)


def _q_carrier_chern(s, k, n, top_only, max_deg=None):
    """Chern data of Sigma^lam(Q)(t) via formal roots of Q.

    Work in variables (y_1..y_m, H_1..H_k) with m = n-k formal roots; the
    product over tableau weights is symmetric in y, so it rewrites as a
    polynomial in the elementary symmetric functions e_j(y), which are then
    replaced by the lifts c_j(Q) = h_j(H).
    """
    m = n - k
    nv = m + k
    twist_form = [0] * nv
    for i in range(k):
        twist_form[m + i] = s.twist
    out = mp.mp_const(nv, 1)
    deg_cap = None if max_deg is None else max_deg
    for mu in schur_weights(s.lam, m):
        form = list(twist_form)
        for j, a in enumerate(mu):
            form[j] = a
        cls = mp.mp_linear(form)
        factor = cls if top_only else mp.mp_add(mp.mp_const(nv, 1), cls)
        out = mp.mp_mul(out, factor, max_deg=None if top_only else deg_cap)
    reduced = _symmetric_reduce(out, m, k)
    images = [_complete_homogeneous(j, k) for j in range(1, m + 1)]
    gens = [mp.mp_gen(k, i) for i in range(k)]
    poly = mp.mp_subst(reduced, images + gens, k, max_deg=max_deg)
    return poly


def _complete_homogeneous(j, k):
    """h_j(H_1..H_k) as an mpoly dict (the lift of c_j(Q))."""
    out = {}
    for combo in combinations_with_replacement(range(k), j):
        e = [0] * k
        for i in combo:
            e[i] += 1
        key = tuple(e)
        out[key] = out.get(key, RAT_ZERO) + RAT_ONE
    return out


def _symmetric_reduce(poly, m, k):
    """Rewrite a poly symmetric in the first m variables via e_1..e_m.

    Output lives in variables (e_1..e_m, H_1..H_k).  Standard leading-term
    elimination: the lex-leading y-exponent (a_1 >= ... >= a_m) of a
    symmetric polynomial is killed by prod e_j^(a_j - a_j+1).
    """
    elementary = [_elementary_poly(j, m, k) for j in range(m + 1)]
    out = {}
    work = dict(poly)
    while work:
        lead = max(work)
        y_part = lead[:m]
        if any(y_part[i] < y_part[i + 1] for i in range(m - 1)):
            raise AssertionError("polynomial not symmetric in the formal roots")
        coeff = work[lead]
        expo = [0] * (m + k)
        for j in range(m):
            nxt = y_part[j + 1] if j + 1 < m else 0
            expo[j] = y_part[j] - nxt
        for i in range(k):
            expo[m + i] = lead[m + i]
        key = tuple(expo)
        out[key] = out.get(key, RAT_ZERO) + coeff
        # subtract coeff * prod e_j(y)^expo_j * H-monomial from work
        sub = mp.mp_const(m + k, coeff)
        for j in range(m):
            for _ in range(expo[j]):
                sub = mp.mp_mul(sub, elementary[j + 1])
        hshift = tuple([0] * m + list(lead[m:]))
        shifted = {tuple(a + b for a, b in zip(e, hshift)): v for e, v in sub.items()}
        mp.mp_add_inplace(work, mp.mp_neg(shifted))
    return {e: v for e, v in out.items() if v != 0}


def _elementary_poly(j, m, k):
    out = {}
    from itertools import combinations

    for combo in combinations(range(m), j):
        e = [0] * (m + k)
        for i in combo:
            e[i] = 1
        out[tuple(e)] = RAT_ONE
    return out


# ---------------------------------------------------------------------------
# Calabi-Yau check and topological invariants
# ---------------------------------------------------------------------------


def c1_lift(spec: TargetSpec):
    """First Chern class of E as a lift (must equal n * sigma_1 for CY)."""
    c = total_chern_lift(spec, max_deg=1)
    return mp.mp_homogeneous_part(c, 1)


def cy_check(spec: TargetSpec):
    """Assert rank E = dim - 3 and c1(E) = c1(TX); raise otherwise."""
    if spec.rank() != spec.dim - 3:
        raise ValueError(
            "%s: rank %d != dim-3 = %d" % (spec.label or "spec", spec.rank(), spec.dim - 3)
        )
    want = mp.mp_linear([spec.n] * spec.k)
    have = c1_lift(spec)
    if have != want:
        raise ValueError("%s: c1(E) != c1(TX)" % (spec.label or "spec"))


def tangent_chern_lift(spec: TargetSpec, max_deg):
    """Lift of c(TX) for X = G(k,n): prod (1+H_i)^n / prod_{i!=j} (1+H_i-H_j)."""
    k = spec.k
    num = mp.mp_const(k, 1)
    for i in range(k):
        line = mp.mp_add(mp.mp_const(k, 1), mp.mp_gen(k, i))
        for _ in range(spec.n):
            num = mp.mp_mul(num, line, max_deg=max_deg)
    den = mp.mp_const(k, 1)
    for i in range(k):
        for j in range(k):
            if i != j:
                form = [0] * k
                form[i], form[j] = 1, -1
                den = mp.mp_mul(den, mp.mp_add(mp.mp_const(k, 1), mp.mp_linear(form)), max_deg=max_deg)
    return mp.mp_mul(num, mp.mp_inverse_series(den, max_deg), max_deg=max_deg)


def topological_invariants(spec: TargetSpec):
    """(H^3, c2.H, c3) of the zero-locus threefold, as exact integers."""
    cy_check(spec)
    k, n = spec.k, spec.n
    cap = 3
    ctx = tangent_chern_lift(spec, cap)
    ce = total_chern_lift(spec, cap)
    cty = mp.mp_mul(ctx, mp.mp_inverse_series(ce, cap), max_deg=cap)
    c2 = mp.mp_homogeneous_part(cty, 2)
    c3 = mp.mp_homogeneous_part(cty, 3)
    e = euler_lift(spec)
    h = mp.mp_linear([1] * k)
    h2 = mp.mp_mul(h, h)
    h3 = mp.mp_mul(h2, h)

    def integral(f):
        val = integrate_grassmann(mp.mp_mul(f, e), k, n)
        if val.denominator != 1:
            raise AssertionError("non-integral invariant %s" % val)
        return int(val)

    deg = integral(h3)
    c2h = integral(mp.mp_mul(c2, h))
    c3i = integral(c3)
    return deg, c2h, c3i


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def _s(carrier, lam=(), twist=0):
    return BundleSummand(carrier, tuple(lam), twist)


def _rows():
    O, S, Q = CARRIER_O, CARRIER_S, CARRIER_Q
    # label, k, n, summands, (H^3, c2.H, c3), Kuchle tag, database id
    yield "no1", 2, 4, (_s(O, twist=4),), (8, 56, -176), "", "6"
    yield "no2", 2, 5, (_s(O, twist=1), _s(O, twist=2), _s(O, twist=2)), (20, 68, -120), "(b2)", "25"
    yield "no3", 2, 5, (_s(O, twist=1), _s(O, twist=1), _s(O, twist=3)), (15, 66, -150), "(b1)", "24"
    yield "no4", 2, 5, (_s(S, (1,), 1), _s(O, twist=2)), (24, 72, -116), "", "29"
    yield "no5", 2, 5, (_s(Q, (1, 1), 1),), (25, 70, -100), "", "101"
    yield "no6", 2, 6, tuple([_s(O, twist=1)] * 4 + [_s(O, twist=2)]), (28, 76, -116), "(b6)", "26"
    yield "no7", 2, 6, (_s(S, (1,), 1), _s(O, twist=1), _s(O, twist=1), _s(O, twist=1)), (33, 78, -102), "(b5), I", "198"
    yield "no10", 2, 6, (_s(Q, (1,), 1), _s(O, twist=1)), (42, 84, -98), "(b3), II", "27"
    yield "no12", 2, 7, tuple([_s(O, twist=1)] * 7), (42, 84, -98), "(b7), III", "27"
    yield "no13", 2, 7, (_s(S, (2,)),) + tuple([_s(O, twist=1)] * 4), (56, 92, -92), "(b8), V", "212"
    yield "no15", 2, 7, (_s(Q, (1, 1, 1, 1)), _s(O, twist=1), _s(O, twist=2)), (36, 84, -120), "(b10)", "185"
    yield "no16", 2, 7, (_s(S, (1,), 1), _s(Q, (1, 1, 1, 1))), (42, 84, -98), "", "27"
    yield "no17", 2, 8, (_s(Q, (1, 1, 1, 1, 1)), _s(O, twist=1), _s(O, twist=1), _s(O, twist=1)), (57, 90, -84), "(b11), VI", "186"
    yield "no18", 2, 8, (_s(S, (2,)), _s(Q, (1, 1, 1, 1, 1))), (72, 96, -72), "", "unknown"
    yield "no19", 3, 6, tuple([_s(O, twist=1)] * 6), (42, 84, -96), "(c1), IV", "28"
    yield "no20", 3, 6, (_s(S, (1, 1)), _s(O, twist=1), _s(O, twist=1), _s(O, twist=2)), (32, 80, -116), "(c2)", "42"
    yield "no21", 3, 6, (_s(S, (1,), 1), _s(S, (1, 1))), (42, 84, -96), "", "28"
    yield "no22", 3, 7, (_s(S, (2,)), _s(O, twist=1), _s(O, twist=1), _s(O, twist=1)), (128, 128, -128), "(c4)", "3"
    yield "no23", 3, 7, (_s(S, (1, 1)), _s(S, (1, 1)), _s(O, twist=1), _s(O, twist=1), _s(O, twist=1)), (61, 94, -86), "(c6), VII", "124"
    yield "no24", 3, 7, (_s(Q, (1, 1, 1)), _s(Q, (1, 1, 1)), _s(O, twist=1)), (72, 96, -74), "(c3), IX", "unknown"
    yield "no25", 3, 7, (_s(S, (1, 1)), _s(Q, (1, 1, 1)), _s(O, twist=1), _s(O, twist=1)), (66, 96, -84), "(c5), VIII", "unknown"
    yield "no28", 3, 8, tuple([_s(S, (1, 1))] * 4), (92, 104, -64), "", "unknown"


def _build_catalog():
    # Pipeline routing: pure S*/O specs run the Grassmannian abelianization
    # directly; pure Q(+O) specs are dualized first.  no15/no17 are zero
    # loci inside the determinantal-nets-of-conics sixfold, where the toric
    # quotient backend is far cheaper than the dualized k=5/k=6 runs, so
    # they default to "pdelta".  no25 carries a genuinely mixed bundle and
    # runs the quantum-connection route; no16/no18 are mixed as well, no16
    # aliases no12 (equal I-series), no18 is the conjectural pdelta target.
    pipelines = {
        "no15": "pdelta",
        "no16": "abelianization",
        "no17": "pdelta",
        "no18": "pdelta",
        "no25": "qconn",
    }
    notes = {
        "no10": "I-series equals no12",
        "no16": "deformation equivalent to no12; computed as alias",
        "no18": "conjectural: assumes the nonabelian correspondence for nets of conics",
    }
    aliases = {"no16": "no12", "no10": "no12"}
    rows = []
    for label, k, n, summands, inv, kuchle, db in _rows():
        spec = TargetSpec(
            k,
            n,
            summands,
            label=label,
            invariants=inv,
            kuchle=kuchle,
            database=db,
            pipeline=pipelines.get(label, "abelianization"),
            alias_of=aliases.get(label, ""),
            note=notes.get(label, ""),
        )
        cy_check(spec)
        rows.append(spec)
    return tuple(rows)


_CATALOG = None


def catalog():
    """The 22 built-in targets, numbering gaps preserved."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return _CATALOG


def lookup(label: str) -> TargetSpec:
    for spec in catalog():
        if spec.label == label:
            return spec
    raise CatalogError("no catalog entry %r" % label)
