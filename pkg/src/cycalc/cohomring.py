"""Truncated graded commutative rings and Grassmannian integration.

Rings are presented by degree-one generators and homogeneous relations and
truncated above a chosen degree.  Quotient arithmetic works by per-degree
row reduction of the relation span against the monomial basis (graded
lexicographic in the declared generator order), which is deterministic and
needs no Groebner machinery.

`integrate_grassmann` evaluates intersection numbers on G(k,n) through
Martin's formula: a Weyl-invariant lift in the hyperplane classes of the
associated (P^(n-1))^k is multiplied by the full root product and the
coefficient of the top monomial is read off, divided by k!.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import factorial

from . import mpoly as mp
from ._rat import RAT_ONE, RAT_ZERO, rat, rat_from_str, rat_to_str
from .ratqa import rref


@dataclass(frozen=True)
class RingPresentation:
    """Generators (all of cohomological degree one), relations, truncation."""

    generators: tuple
    relations: tuple  # mpoly dicts, each homogeneous
    max_degree: int

    def __post_init__(self):
        for r in self.relations:
            degs = {sum(e) for e in r}
            if len(degs) > 1:
                raise ValueError("inhomogeneous relation in presentation")
            if degs == {0}:
                raise ValueError("inconsistent presentation: nonzero constant relation")
        if self.max_degree < 0:
            raise ValueError("max_degree must be nonnegative")

    def to_json(self):
        return {
            "generators": list(self.generators),
            "relations": [mp.mp_to_strkeys(r) for r in self.relations],
            "max_degree": self.max_degree,
        }


def _monomials(n, d):
    """All exponent tuples of total degree d, graded-lex descending."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


class Ring:
    """A truncated quotient ring with fixed per-degree reduction data."""

    def __init__(self, presentation: RingPresentation):
        self.presentation = presentation
        self.ngens = len(presentation.generators)
        self.max_degree = presentation.max_degree
        self.monomials = [_monomials(self.ngens, d) for d in range(self.max_degree + 1)]
        self.mono_index = [
            {e: i for i, e in enumerate(level)} for level in self.monomials
        ]
        # Per-degree echelonized relation span.  Row r has pivot column
        # self._pivots[d][r]; reduction subtracts pivot rows.
        self._rows = []
        self._pivots = []
        self.dimensions = []
        self._build()

    def _build(self):
        pres = self.presentation
        for d in range(self.max_degree + 1):
            span = []
            for rel in pres.relations:
                rdeg = mp.mp_degree(rel)
                if rdeg > d:
                    continue
                for mono in self.monomials[d - rdeg]:
                    prod = {}
                    for e, v in rel.items():
                        prod[tuple(a + b for a, b in zip(e, mono))] = v
                    span.append(self._to_vec(prod, d))
            if span:
                pivots = rref(span)
                rows = span[: len(pivots)]
            else:
                pivots, rows = [], []
            self._rows.append(rows)
            self._pivots.append(pivots)
            self.dimensions.append(len(self.monomials[d]) - len(pivots))

    def _to_vec(self, poly, d):
        vec = [RAT_ZERO] * len(self.monomials[d])
        idx = self.mono_index[d]
        for e, v in poly.items():
            vec[idx[e]] += v
        return vec

    def reduce(self, poly):
        """Canonical representative of an mpoly modulo relations/truncation."""
        out = {}
        by_deg = {}
        for e, v in poly.items():
            d = sum(e)
            if d > self.max_degree:
                continue
            by_deg.setdefault(d, {})[e] = v
        for d, part in by_deg.items():
            vec = self._to_vec(part, d)
            for row, pc in zip(self._rows[d], self._pivots[d]):
                f = vec[pc]
                if f != 0:
                    vec = [a - f * b for a, b in zip(vec, row)]
            for i, v in enumerate(vec):
                if v != 0:
                    out[self.monomials[d][i]] = v
        return out

    def element(self, poly):
        return RingElement(self, self.reduce(poly))

    def generator(self, i):
        return self.element(mp.mp_gen(self.ngens, i))

    def one(self):
        return self.element(mp.mp_const(self.ngens, 1))

    def zero(self):
        return RingElement(self, {})

    def schur(self, lam, gens=None):
        """Schur polynomial s_lam in the chosen generators, as an element."""
        if gens is None:
            gens = tuple(range(self.ngens))
        return self.element(schur_poly(lam, self.ngens, gens))


class RingElement:
    """Reduced, truncated element of a `Ring` (a value; never mutated)."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring, poly):
        self.ring = ring
        self.poly = poly

    def __eq__(self, other):
        return isinstance(other, RingElement) and self.ring is other.ring and self.poly == other.poly

    def __add__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.reduce(mp.mp_add(self.poly, other.poly)))

    def __sub__(self, other):
        self._check(other)
        return RingElement(self.ring, self.ring.reduce(mp.mp_add(self.poly, mp.mp_neg(other.poly))))

    def __neg__(self):
        return RingElement(self.ring, mp.mp_neg(self.poly))

    def __mul__(self, other):
        if isinstance(other, RingElement):
            self._check(other)
            prod = mp.mp_mul(self.poly, other.poly, max_deg=self.ring.max_degree)
            return RingElement(self.ring, self.ring.reduce(prod))
        return RingElement(self.ring, mp.mp_scale(self.poly, rat(other)))

    __rmul__ = __mul__

    def _check(self, other):
        if self.ring is not other.ring:
            raise ValueError("elements of different rings")

    def is_zero(self):
        return not self.poly

    def degrees(self):
        return sorted({sum(e) for e in self.poly})

    def homogeneous_part(self, d):
        return RingElement(self.ring, mp.mp_homogeneous_part(self.poly, d))

    def to_json(self):
        by_deg = {}
        for e, v in sorted(self.poly.items()):
            by_deg.setdefault(sum(e), []).append([list(e), rat_to_str(v)])
        return {str(d): terms for d, terms in sorted(by_deg.items())}

    def __repr__(self):
        return "RingElement(%s)" % json.dumps(self.to_json())


class WeightedElement:
    """Ring element with an integer homogeneity weight.

    Represents a quantity whose degree-m cohomology component carries the
    formal factor z^(w-m).  Multiplication adds weights; the bookkeeping is
    asserted on every product so mismatches fail fast.
    """

    __slots__ = ("element", "weight")

    def __init__(self, element: RingElement, weight: int):
        self.element = element
        self.weight = weight

    def __mul__(self, other):
        if isinstance(other, WeightedElement):
            prod = self.element * other.element
            w = self.weight + other.weight
            assert isinstance(w, int)
            return WeightedElement(prod, w)
        return WeightedElement(self.element * other, self.weight)

    __rmul__ = __mul__

    def __add__(self, other):
        if self.element.is_zero():
            return other
        if other.element.is_zero():
            return self
        if self.weight != other.weight:
            raise ValueError("weight mismatch in sum: %d vs %d" % (self.weight, other.weight))
        return WeightedElement(self.element + other.element, self.weight)

    def is_zero(self):
        return self.element.is_zero()

    def __repr__(self):
        return "WeightedElement(w=%d, %r)" % (self.weight, self.element)


def make_ring(presentation: RingPresentation) -> Ring:
    """Build the truncated quotient ring with per-degree reduced bases."""
    return Ring(presentation)


# ---------------------------------------------------------------------------
# Schur polynomials via semistandard tableaux
# ---------------------------------------------------------------------------


def ssyt_contents(lam, k):
    """Content vectors of all SSYT of shape lam with entries in 1..k.

    Content = (#1s, ..., #ks); the multiset of contents is the weight
    multiset of the Schur functor applied to a k-dimensional space.
    """
    lam = tuple(x for x in lam if x > 0)
    if not lam:
        return [tuple([0] * k)]
    # Fill cells row by row; entry must weakly increase along rows and
    # strictly increase down columns.
    cells = [(r, c) for r, row_len in enumerate(lam) for c in range(row_len)]
    results = []
    fill = {}

    def backtrack(pos):
        if pos == len(cells):
            content = [0] * k
            for v in fill.values():
                content[v - 1] += 1
            results.append(tuple(content))
            return
        r, c = cells[pos]
        lo = 1
        if c > 0:
            lo = max(lo, fill[(r, c - 1)])
        if r > 0:
            lo = max(lo, fill[(r - 1, c)] + 1)
        for v in range(lo, k + 1):
            fill[(r, c)] = v
            backtrack(pos + 1)
        fill.pop((r, c), None)

    backtrack(0)
    return results


def schur_poly(lam, nvars, gens):
    """Schur polynomial s_lam in the variables gens, as an mpoly dict."""
    k = len(gens)
    out = {}
    for content in ssyt_contents(lam, k):
        e = [0] * nvars
        for i, a in zip(gens, content):
            e[i] = a
        key = tuple(e)
        out[key] = out.get(key, RAT_ZERO) + RAT_ONE
    return {e: v for e, v in out.items() if v != 0}


# ---------------------------------------------------------------------------
# Martin integration on G(k,n)
# ---------------------------------------------------------------------------


def root_product_poly(k):
    """prod_{i != j} (H_i - H_j) as an mpoly dict in k variables."""
    out = mp.mp_const(k, 1)
    for i in range(k):
        for j in range(k):
            if i != j:
                form = [0] * k
                form[i] = 1
                form[j] = -1
                out = mp.mp_mul(out, mp.mp_linear(form))
    return out


def integrate_grassmann(f, k, n):
    """Exact integral over G(k,n) of a class given by a Weyl-invariant lift.

    `f` is an mpoly dict in the k hyperplane classes.  Must be homogeneous;
    classes of degree other than dim G(k,n) integrate to zero.
    """
    if f and len({sum(e) for e in f}) != 1:
        raise ValueError("integrate_grassmann requires a pure-degree class")
    if not f:
        return RAT_ZERO
    deg = mp.mp_degree(f)
    if deg != k * (n - k):
        return RAT_ZERO
    top = tuple([n - 1] * k)
    prod = mp.mp_mul(f, root_product_poly(k), caps=[n - 1] * k)
    return prod.get(top, RAT_ZERO) / factorial(k)
