"""Determinantal-nets-of-conics backend for the twisted I-series.

The sixfold N of determinantal nets of conics is the GIT quotient of 3x2
matrices of linear forms on P^2 by GL(3) x GL(2) / C*.  Its abelian
quotient P_Delta is a smooth projective toric fourteenfold whose Cox data
is reproduced here from the torus weights: eighteen coordinates in six
blocks z_ij (three apiece), class group of rank four, and nine primitive
collections (a vanishing row, or two vanishing blocks in one column).

The module provides three things:

* exact integration on P_Delta (hence on N via the Weyl-normalized root
  product) by Atiyah-Bott localization at the 486 torus fixed points;
* enumeration of the effective-curve cone in the H_ij intersection
  coordinates;
* the twisted I-series engines for targets that are zero loci of line
  bundle sums on N, with the anti-invariant numerator divided by omega
  against the lifted cohomology basis of N.

Everything runs in the four generators left after eliminating H_11 and
H_21 with the linear relations of the class lattice.
"""

from __future__ import annotations

from itertools import combinations
from math import comb, factorial

from . import mpoly as mp
from ._rat import RAT_ONE, RAT_ZERO, rat
from .cohomring import Ring, RingPresentation, make_ring
from .ratqa import EchelonSolver

# Block order used everywhere for 6-vectors: (11, 12, 21, 22, 31, 32).
BLOCKS = ((1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2))
_IDX = {b: i for i, b in enumerate(BLOCKS)}

# Substitution eliminating H_11 and H_21:
#   H_11 = H_12 + H_31 - H_32,  H_21 = H_22 + H_31 - H_32,
# leaving the generators (H_12, H_22, H_31, H_32).
_SUBST = {
    (1, 1): (1, 0, 1, -1),
    (2, 1): (0, 1, 1, -1),
    (1, 2): (1, 0, 0, 0),
    (2, 2): (0, 1, 0, 0),
    (3, 1): (0, 0, 1, 0),
    (3, 2): (0, 0, 0, 1),
}

GENERATORS = ("H12", "H22", "H31", "H32")

# Positive roots of GL(3) x GL(2) as 6-vectors over the blocks.
ROOT_VECTORS = (
    (1, 0, -1, 0, 0, 0),  # H11 - H21
    (1, 0, 0, 0, -1, 0),  # H11 - H31
    (0, 0, 1, 0, -1, 0),  # H21 - H31
    (-1, 1, 0, 0, 0, 0),  # H12 - H11
)

WEYL_ORDER = 12  # |S_3 x S_2|

# Line classes (6-vectors) of the three bundles that cut Table rows out of N.
BUNDLE_VECTORS = {
    "no15": ((1, 0, 0, 1, 1, 0), (0, 1, 1, 0, 0, 1), (2, 2, 2, 2, 2, 2)),
    "no17": ((1, 1, 1, 1, 1, 1),) * 3,
    "no18": ((2, 0, 0, 2, 2, 0), (1, 1, 1, 1, 1, 1), (0, 2, 2, 0, 0, 2)),
}


def vec6_to_form(v):
    """6-vector over the blocks -> linear form in the four generators."""
    form = [0, 0, 0, 0]
    for coeff, block in zip(v, BLOCKS):
        if coeff:
            for a, s in enumerate(_SUBST[block]):
                form[a] += coeff * s
    return tuple(form)


def block_form(block):
    return _SUBST[block]


# ---------------------------------------------------------------------------
# cone of effective curves
# ---------------------------------------------------------------------------


def cone_contains(d):
    d11, d12, d21, d22, d31, d32 = d
    if -d11 + d12 + d21 - d22 != 0 or -d11 + d12 + d31 - d32 != 0:
        return False
    return (
        d11 + d22 >= 0
        and d21 + d32 >= 0
        and d31 + d12 >= 0
        and d11 + d22 + d31 >= 0
        and d12 + d21 + d32 >= 0
    )


def enumerate_cone(total):
    """All curve classes with total intersection degree sum(d_ij) = total.

    Parametrized by a = d12+d31 >= 0, b = d22+d31 >= 0 with a+b <= total
    and a+b-total <= d31 <= a+b; the linear relations fix the rest.
    """
    if total < 0:
        return []
    out = []
    for a in range(total + 1):
        for b in range(total + 1 - a):
            for d31 in range(a + b - total, a + b + 1):
                d12 = a - d31
                d22 = b - d31
                s = a + b - d31
                d32 = 2 * s + d31 - total
                d11 = a - d32
                d21 = b - d32
                d = (d11, d12, d21, d22, d31, d32)
                assert cone_contains(d) and sum(d) == total
                out.append(d)
    return out


def epsilon(d):
    return sum(sum(r * x for r, x in zip(root, d)) for root in ROOT_VECTORS)


# ---------------------------------------------------------------------------
# localization on a GIT toric quotient
# ---------------------------------------------------------------------------


def _integer_kernel(a):
    """Saturated integer kernel basis of an integer matrix (rows x cols).

    Column-reduces [A; I] with unimodular operations; the identity block
    columns over zeroed A-columns span ker(A) exactly.
    """
    rows = len(a)
    cols = len(a[0])
    work = [row[:] for row in a]
    carry = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def colop(j, k, f):
        for i in range(rows):
            work[i][j] += f * work[i][k]
        for i in range(cols):
            carry[i][j] += f * carry[i][k]

    def colswap(j, k):
        for i in range(rows):
            work[i][j], work[i][k] = work[i][k], work[i][j]
        for i in range(cols):
            carry[i][j], carry[i][k] = carry[i][k], carry[i][j]

    pivot_col = 0
    for r in range(rows):
        j = pivot_col
        while True:
            nonzero = [jj for jj in range(pivot_col, cols) if work[r][jj] != 0]
            if not nonzero:
                break
            jmin = min(nonzero, key=lambda jj: abs(work[r][jj]))
            if jmin != pivot_col:
                colswap(pivot_col, jmin)
            done = True
            for jj in range(pivot_col + 1, cols):
                if work[r][jj] != 0:
                    colop(jj, pivot_col, -(work[r][jj] // work[r][pivot_col]))
                    if work[r][jj] != 0:
                        done = False
            if done:
                break
        if work[r][pivot_col] != 0:
            pivot_col += 1
    kernel = []
    for j in range(pivot_col, cols):
        if all(work[i][j] == 0 for i in range(rows)):
            kernel.append([carry[i][j] for i in range(cols)])
    return kernel


class ToricLocalization:
    """Exact integration on a smooth projective GIT toric quotient.

    Input: integer weight matrix (torus rank x #coordinates) and a generic
    linearization character.  Fixed points are the coordinate subsets whose
    weights form a basis with the character interior to their cone; the
    Gale-dual rays give the tangent and divisor weights.  Integrals of
    top-degree polynomials in the coordinate divisor classes are rational
    evaluations summed over the fixed points.
    """

    def __init__(self, weights, chi):
        self.rank = len(weights)
        self.ncoords = len(weights[0])
        self.dim = self.ncoords - self.rank
        kernel = _integer_kernel(weights)
        if len(kernel) != self.dim:
            raise AssertionError("weight matrix is not surjective")
        self.rays = [tuple(kernel[i][c] for i in range(self.dim)) for c in range(self.ncoords)]
        self.fixed = []
        for bset in combinations(range(self.ncoords), self.rank):
            cols = [[weights[i][c] for c in bset] for i in range(self.rank)]
            try:
                x = _solve_rational(cols, chi)
            except ValueError:
                continue
            if all(v > 0 for v in x):
                det = _int_det([[weights[i][c] for c in bset] for i in range(self.rank)])
                if abs(det) != 1:
                    raise AssertionError("non-smooth quotient: |det| = %d" % abs(det))
                self.fixed.append(bset)
            elif any(v == 0 for v in x):
                raise AssertionError("linearization character lies on a wall")
        self._duals = []
        for bset in self.fixed:
            free = [c for c in range(self.ncoords) if c not in bset]
            mat = [[self.rays[c][i] for c in free] for i in range(self.dim)]
            inv = _invert_rational(mat)
            # dual basis row for coordinate free[r] is row r of inv
            self._duals.append({c: inv[r] for r, c in enumerate(free)})
        # Deterministic generic evaluation point: powers of a base larger
        # than twice any dual-basis entry, so no integer weight vanishes.
        bound = 2
        for duals in self._duals:
            for row in duals.values():
                for v in row:
                    bound = max(bound, 2 * abs(int(v.numerator)) + 1)
        base = rat(bound)
        self.xi = [base**i for i in range(self.dim)]
        self._points = []
        for duals in self._duals:
            restr = []
            for c in range(self.ncoords):
                if c in duals:
                    restr.append(sum(duals[c][i] * self.xi[i] for i in range(self.dim)))
                else:
                    restr.append(RAT_ZERO)
            euler = RAT_ONE
            for c in duals:
                w = sum(duals[c][i] * self.xi[i] for i in range(self.dim))
                if w == 0:
                    raise AssertionError("evaluation point on a localization wall")
                euler *= w
            self._points.append((restr, euler))

    def integrate(self, poly, class_vectors):
        """Integral of a homogeneous top-degree polynomial.

        `poly` is an mpoly dict in len(class_vectors) variables; each class
        is an integer vector of coordinate-divisor multiplicities.  Classes
        restrict at a point through a fixed coordinate representative, so
        different vectors with the same cohomology class are fine.
        """
        degs = {sum(e) for e in poly}
        if not poly:
            return RAT_ZERO
        if degs != {self.dim}:
            raise ValueError("localization integrand must be pure top degree")
        total = RAT_ZERO
        for restr, euler in self._points:
            values = [
                sum(v * restr[c] for c, v in enumerate(vec) if v) for vec in class_vectors
            ]
            total += mp.mp_eval(poly, values) / euler
        return total


def _first_primes(n):
    out = []
    cand = 2
    while len(out) < n:
        if all(cand % p for p in out):
            out.append(rat(cand))
        cand += 1
    return out


def _solve_rational(cols, rhs):
    n = len(cols)
    m = len(cols[0])
    aug = [[rat(cols[i][j]) for j in range(m)] + [rat(rhs[i])] for i in range(n)]
    from .ratqa import rref

    pivots = rref(aug)
    if pivots and pivots[-1] == m:
        raise ValueError("inconsistent")
    if len(pivots) != m:
        raise ValueError("singular")
    x = [RAT_ZERO] * m
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][m]
    return x


def _invert_rational(mat):
    n = len(mat)
    aug = [[rat(mat[i][j]) for j in range(n)] + [RAT_ONE if i == j else RAT_ZERO for j in range(n)] for i in range(n)]
    from .ratqa import rref

    pivots = rref(aug)
    if len(pivots) != n:
        raise ValueError("singular matrix")
    return [row[n:] for row in aug]


def _int_det(mat):
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _pdelta_weights():
    """Weight matrix (rank 4) and linearization for the 18 Cox coordinates.

    Basis of the character lattice: u_i = e_i - f_1 (i = 1..3), u_4 = f_2 - f_1.
    Coordinate z_ij^a has weight e_i - f_j, column order = BLOCKS x (3 copies).
    """
    cols = []
    for (i, j) in BLOCKS:
        w = [0, 0, 0, 0]
        w[i - 1] = 1
        if j == 2:
            w[3] -= 1
        cols.extend([tuple(w)] * 3)
    weights = [[c[r] for c in cols] for r in range(4)]
    chi = (2, 2, 2, -3)
    return weights, chi


_LOCALIZATION = None


def pdelta_localization() -> ToricLocalization:
    global _LOCALIZATION
    if _LOCALIZATION is None:
        loc = ToricLocalization(*_pdelta_weights())
        if len(loc.fixed) != 486:
            raise AssertionError("expected 486 fixed points, found %d" % len(loc.fixed))
        _LOCALIZATION = loc
    return _LOCALIZATION


def _class_vectors_18():
    """Coordinate-divisor representative (z_ij^0) for each block class."""
    out = []
    for b in range(6):
        vec = [0] * 18
        vec[3 * b] = 1
        out.append(tuple(vec))
    return out


def integrate_pdelta(poly6):
    """Exact integral over P_Delta of a degree-14 polynomial in the H_ij."""
    return pdelta_localization().integrate(poly6, _class_vectors_18())


def integrate_n(poly6):
    """Integral over the nets-of-conics sixfold via Martin's formula.

    The lift is multiplied by the full root product (omega squared up to
    sign; here the positive-root count is even) and divided by the Weyl
    group order.
    """
    omega6 = mp.mp_const(6, 1)
    for v in ROOT_VECTORS:
        omega6 = mp.mp_mul(omega6, mp.mp_linear(v))
    integrand = mp.mp_mul(poly6, mp.mp_mul(omega6, omega6))
    return integrate_pdelta(integrand) / WEYL_ORDER


# ---------------------------------------------------------------------------
# cohomology ring of P_Delta (four generators, Stanley-Reisner sextics)
# ---------------------------------------------------------------------------


def _sr_relations(max_deg):
    """The nine Stanley-Reisner sextics in the four generators."""
    pairs = [
        ((1, 1), (1, 2)),
        ((2, 1), (2, 2)),
        ((3, 1), (3, 2)),
        ((1, 1), (2, 1)),
        ((1, 1), (3, 1)),
        ((2, 1), (3, 1)),
        ((1, 2), (2, 2)),
        ((1, 2), (3, 2)),
        ((2, 2), (3, 2)),
    ]
    rels = []
    for b1, b2 in pairs:
        f1 = mp.mp_linear(block_form(b1))
        f2 = mp.mp_linear(block_form(b2))
        rel = mp.mp_const(4, 1)
        for _ in range(3):
            rel = mp.mp_mul(rel, f1)
        for _ in range(3):
            rel = mp.mp_mul(rel, f2)
        rels.append(rel)
    return tuple(rels)


def pdelta_ring(max_degree=7) -> Ring:
    return make_ring(RingPresentation(GENERATORS, _sr_relations(max_degree), max_degree))


def pdelta_toric_data(label, max_degree=7):
    """Generic-backend data for a nets-of-conics target (slow path/tests)."""
    from .abelianization import ToricData

    ring = pdelta_ring(max_degree)
    divisors = []
    for b, block in enumerate(BLOCKS):
        pair = tuple(1 if i == b else 0 for i in range(6))
        divisors.append((mp.mp_linear(block_form(block)), 3, pair))
    bundles = [(mp.mp_linear(vec6_to_form(v)), v) for v in BUNDLE_VECTORS[label]]
    roots = [(mp.mp_linear(vec6_to_form(v)), v) for v in ROOT_VECTORS]
    return ToricData(
        ring=ring,
        degree_dim=6,
        divisors=divisors,
        bundles=bundles,
        roots=roots,
        h_vector=(1, 1, 1, 1, 1, 1),
        enumerator=enumerate_cone,
        cone_contains=cone_contains,
    )


def lift_basis_polys():
    """Weyl-invariant lifts of the degree <= 3 cohomology basis of N.

    Degrees 0..3: 1; q1; q1^2, q2, p2; q1^3, q1*q2, q1*p2 where q_i are the
    Chern classes of the rank-two bundle defining the polarization and p_2
    is the second Chern class of the rank-three partner.  Returned as
    (name, degree, mpoly in the four generators).
    """
    q1_6 = mp.mp_linear((1, 1, 1, 1, 1, 1))
    f1 = mp.mp_linear((1, 0, 0, 1, 1, 0))  # H11+H22+H31
    f2 = mp.mp_linear((0, 1, 1, 0, 0, 1))  # H12+H21+H32
    q2_6 = mp.mp_mul(f1, f2)
    e1 = mp.mp_linear((1, 0, 0, 1, 0, 0))  # H11+H22
    e2 = mp.mp_linear((0, 0, 1, 0, 0, 1))  # H21+H32
    e3 = mp.mp_linear((0, 1, 0, 0, 1, 0))  # H31+H12
    p2_6 = mp.mp_add(mp.mp_add(mp.mp_mul(e1, e2), mp.mp_mul(e1, e3)), mp.mp_mul(e2, e3))

    def sub(p):
        images = [mp.mp_linear(block_form(b)) for b in BLOCKS]
        return mp.mp_subst(p, images, 4)

    q1 = sub(q1_6)
    q2 = sub(q2_6)
    p2 = sub(p2_6)
    q1q1 = mp.mp_mul(q1, q1)
    out = [
        ("1", 0, mp.mp_const(4, 1)),
        ("q1", 1, q1),
        ("q1^2", 2, q1q1),
        ("q2", 2, q2),
        ("p2", 2, p2),
        ("q1^3", 3, mp.mp_mul(q1q1, q1)),
        ("q1*q2", 3, mp.mp_mul(q1, q2)),
        ("q1*p2", 3, mp.mp_mul(q1, p2)),
    ]
    return out


def _lift_6var():
    """Same lift basis kept in the six block classes (for N-integrals)."""
    q1 = mp.mp_linear((1, 1, 1, 1, 1, 1))
    q2 = mp.mp_mul(mp.mp_linear((1, 0, 0, 1, 1, 0)), mp.mp_linear((0, 1, 1, 0, 0, 1)))
    e1 = mp.mp_linear((1, 0, 0, 1, 0, 0))
    e2 = mp.mp_linear((0, 0, 1, 0, 0, 1))
    e3 = mp.mp_linear((0, 1, 0, 0, 1, 0))
    p2 = mp.mp_add(mp.mp_add(mp.mp_mul(e1, e2), mp.mp_mul(e1, e3)), mp.mp_mul(e2, e3))
    q1q1 = mp.mp_mul(q1, q1)
    return {
        "1": mp.mp_const(6, 1),
        "q1": q1,
        "q1^2": q1q1,
        "q2": q2,
        "p2": p2,
        "q1^3": mp.mp_mul(q1q1, q1),
        "q1*q2": mp.mp_mul(q1, q2),
        "q1*p2": mp.mp_mul(q1, p2),
    }


# ---------------------------------------------------------------------------
# fast series engine
# ---------------------------------------------------------------------------


class _PDeltaEngine:
    """Per-degree assembly of the anti-invariant numerator on P_Delta.

    Elements are mpoly dicts in the four generators truncated by total
    degree.  Divisor factors are cached per (block, exponent); products of
    the three bundle Pochhammer towers are cached per degree key, which
    only depends on the slice degree and one free parameter.
    """

    def __init__(self, label, max_deg):
        self.max_deg = max_deg
        self.bundle_vecs = BUNDLE_VECTORS[label]
        self.bundle_forms = [vec6_to_form(v) for v in self.bundle_vecs]
        self.block_forms = [block_form(b) for b in BLOCKS]
        self.root_forms = [vec6_to_form(v) for v in ROOT_VECTORS]
        self._tcache = [{0: mp.mp_const(4, 1)} for _ in range(6)]
        self._bundle_cache = {}
        self._bundle_single = [dict() for _ in self.bundle_vecs]

    def _divisor_factor(self, b, e):
        cache = self._tcache[b]
        if e in cache:
            return cache[e]
        form = self.block_forms[b]
        if e > 0:
            start = max(k for k in cache if 0 <= k <= e)
            cur = cache[start]
            for m in range(start + 1, e + 1):
                lin = mp.mp_linear(form, m)
                inv = mp.mp_inverse_series(lin, self.max_deg)
                inv3 = mp.mp_mul(mp.mp_mul(inv, inv, max_deg=self.max_deg), inv, max_deg=self.max_deg)
                cur = mp.mp_mul(cur, inv3, max_deg=self.max_deg)
                cache[m] = cur
            return cache[e]
        start = min(k for k in cache if k >= e)
        cur = cache[start]
        for m in range(start, e, -1):
            lin = mp.mp_linear(form, m)
            lin3 = mp.mp_mul(mp.mp_mul(lin, lin), lin)
            cur = mp.mp_mul(cur, lin3, max_deg=self.max_deg)
            cache[m - 1] = cur
        return cache[e]

    def _bundle_tower(self, bi, e):
        cache = self._bundle_single[bi]
        if e in cache:
            return cache[e]
        if e < 0:
            raise AssertionError("bundle degree went negative on the cone")
        top = max(cache) if cache else 0
        cur = cache.get(top, mp.mp_const(4, 1))
        for m in range(top + 1, e + 1):
            cur = mp.mp_mul(cur, mp.mp_linear(self.bundle_forms[bi], m), max_deg=self.max_deg)
            cache[m] = cur
        cache.setdefault(0, mp.mp_const(4, 1))
        return cache[e]

    def _bundle_product(self, degs):
        key = tuple(degs)
        got = self._bundle_cache.get(key)
        if got is None:
            got = mp.mp_const(4, 1)
            for bi, e in enumerate(degs):
                got = mp.mp_mul(got, self._bundle_tower(bi, e), max_deg=self.max_deg)
            self._bundle_cache[key] = got
        return got

    def numerator_slice(self, total):
        """Sum over the degree-`total` cone slice of sign * roots * I_d."""
        acc = {}
        for d in enumerate_cone(total):
            negv = 3 * sum(1 for x in d if x < 0)
            if negv > self.max_deg:
                continue
            bdegs = [sum(v * x for v, x in zip(vec, d)) for vec in self.bundle_vecs]
            term = self._bundle_product(bdegs)
            for b in range(6):
                if d[b]:
                    term = mp.mp_mul(term, self._divisor_factor(b, d[b]), max_deg=self.max_deg)
            for form, rvec in zip(self.root_forms, ROOT_VECTORS):
                shift = sum(v * x for v, x in zip(rvec, d))
                term = mp.mp_mul(term, mp.mp_linear(form, shift), max_deg=self.max_deg)
            sign = -1 if epsilon(d) % 2 else 1
            mp.mp_add_inplace(acc, term, scale=rat(sign))
        return acc


def _scalar_readout(max_deg, lifts, ring=None):
    """EchelonSolver per degree for numerator = sum c_i lift_i * omega."""
    omega = mp.mp_const(4, 1)
    for v in ROOT_VECTORS:
        omega = mp.mp_mul(omega, mp.mp_linear(vec6_to_form(v)))
    solvers = {}
    for s in sorted({deg for _, deg, _ in lifts}):
        idx = [i for i, (_, deg, _) in enumerate(lifts) if deg == s]
        cols = []
        for i in idx:
            prod = mp.mp_mul(lifts[i][2], omega, max_deg=max_deg)
            if ring is not None:
                prod = ring.reduce(prod)
            part = mp.mp_homogeneous_part(prod, s + 4)
            cols.append(part)
        if ring is not None:
            monos = ring.monomials[s + 4]
        else:
            from .cohomring import _monomials

            monos = _monomials(4, s + 4)
        columns = [[col.get(e, RAT_ZERO) for e in monos] for col in cols]
        solvers[s] = (idx, monos, EchelonSolver(columns, len(monos)))
    return solvers


def _series_tables(label, order, max_deg, lifts, ring=None):
    eng = _PDeltaEngine(label, max_deg)
    solvers = _scalar_readout(max_deg, lifts, ring)
    names = [name for name, _, _ in lifts]
    tables = {name: [] for name in names}
    for h in range(order + 1):
        num = eng.numerator_slice(h)
        if ring is not None:
            num = ring.reduce(num)
        got = {name: RAT_ZERO for name in names}
        for s, (idx, monos, solver) in solvers.items():
            part = mp.mp_homogeneous_part(num, s + 4)
            rhs = [part.get(e, RAT_ZERO) for e in monos]
            try:
                sol = solver.solve(rhs)
            except ValueError as exc:
                raise ValueError("not omega-divisible at degree %d: %s" % (h, exc)) from None
            for i, v in zip(idx, sol):
                got[names[i]] = v
        for name in names:
            tables[name].append(got[name])
    return tables


def i0_series_pdelta(spec, order):
    """Holomorphic-solution coefficients through the nets-of-conics route."""
    label = spec.label
    if label not in BUNDLE_VECTORS:
        raise ValueError("no nets-of-conics bundle data for %r" % label)
    lifts = [lift for lift in lift_basis_polys() if lift[1] == 0]
    tables = _series_tables(label, order, 4, lifts, ring=None)
    return tables["1"]


def i_series_pdelta(spec, order):
    """All four scalar series through the nets-of-conics route."""
    from .abelianization import IScalarSeries

    label = spec.label
    if label not in BUNDLE_VECTORS:
        raise ValueError("no nets-of-conics bundle data for %r" % label)
    lifts = lift_basis_polys()
    ring = pdelta_ring(7)
    tables = _series_tables(label, order, 7, lifts, ring=ring)

    # Pairing projection of degree-2,3 classes onto powers of the
    # polarization, normalized by the threefold degree.
    lift6 = _lift_6var()
    e_lift = mp.mp_const(6, 1)
    for v in BUNDLE_VECTORS[label]:
        e_lift = mp.mp_mul(e_lift, mp.mp_linear(v))
    q1 = lift6["q1"]

    def tw_int(f):
        return integrate_n(mp.mp_mul(f, e_lift))

    deg = tw_int(lift6["q1^3"])
    if spec.invariants and deg != spec.invariants[0]:
        raise AssertionError("degree cross-check failed: %s vs %s" % (deg, spec.invariants[0]))
    pi = {}
    for name in ("q1^2", "q2", "p2"):
        pi[name] = tw_int(mp.mp_mul(lift6[name], q1)) / deg
    for name in ("q1^3", "q1*q2", "q1*p2"):
        pi[name] = tw_int(lift6[name]) / deg
    n = order + 1
    i2 = [sum((tables[nm][h] * pi[nm] for nm in ("q1^2", "q2", "p2")), RAT_ZERO) for h in range(n)]
    i3 = [
        sum((tables[nm][h] * pi[nm] for nm in ("q1^3", "q1*q2", "q1*p2")), RAT_ZERO)
        for h in range(n)
    ]
    return IScalarSeries(label, order, tables["1"], tables["q1"], i2, i3)
