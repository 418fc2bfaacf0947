"""Exact rational linear algebra and univariate polynomial kernels.

Everything here is exact: scalars are reduced rationals (`_rat.rat`),
polynomials are coefficient lists without trailing zeros, and elimination
uses deterministic pivoting (first nonzero in row-major order) so repeated
runs produce identical output.
"""

from __future__ import annotations

from ._rat import RAT_ONE, RAT_ZERO, rat, rat_to_str


# ---------------------------------------------------------------------------
# dense rational matrices (lists of lists of rat)
# ---------------------------------------------------------------------------


def mat_copy(m):
    return [row[:] for row in m]


def rref(m):
    """Reduce `m` in place to reduced row echelon form.

    Returns the list of pivot column indices.  Pivot choice is the first
    row with a nonzero entry in the leftmost open column.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                mr = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], mr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def nullspace(m):
    """Basis of the right kernel of a rational matrix.

    Returns a list of vectors v with m·v = 0, one per free column, in
    column order.  Empty list for a full-rank (square or tall) matrix.
    """
    rows = len(m)
    if rows == 0:
        return []
    cols = len(m[0])
    work = mat_copy(m)
    pivots = rref(work)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [RAT_ZERO] * cols
        v[free] = RAT_ONE
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][free]
        basis.append(v)
    return basis


def mat_mul_vec(m, v):
    return [sum((a * b for a, b in zip(row, v)), RAT_ZERO) for row in m]


def solve_unique(m, rhs):
    """Solve m·x = rhs for the unique solution of a full-column-rank system.

    The system may be overdetermined; raises ValueError when inconsistent
    or when the solution is not unique.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [m[i][:] + [rhs[i]] for i in range(rows)]
    pivots = rref(aug)
    if pivots and pivots[-1] == cols:
        raise ValueError("inconsistent linear system")
    if len(pivots) != cols:
        raise ValueError("underdetermined linear system")
    x = [RAT_ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][cols]
    return x


class EchelonSolver:
    """Reusable solver for repeated consistent solves against fixed columns.

    Precomputes the RREF of the column matrix once; `solve` then reduces a
    right-hand side and checks consistency of every residual row exactly.
    """

    def __init__(self, columns, length):
        self.ncols = len(columns)
        self.length = length
        aug = [[col[i] for col in columns] for i in range(length)]
        self.work = aug
        # Row-reduce [A | I] so solves are a single matrix application.
        ident = [[RAT_ONE if i == j else RAT_ZERO for j in range(length)] for i in range(length)]
        big = [aug[i][:] + ident[i] for i in range(length)]
        pivots = rref(big)
        pivots = [p for p in pivots if p < self.ncols]
        if len(pivots) != self.ncols:
            raise ValueError("columns are linearly dependent")
        self.transform = [row[self.ncols:] for row in big]
        self.reduced = [row[: self.ncols] for row in big]
        self.rank = self.ncols

    def solve(self, rhs):
        y = mat_mul_vec(self.transform, rhs)
        x = y[: self.ncols]
        for r in range(self.ncols, self.length):
            if y[r] != 0:
                raise ValueError("inconsistent linear system")
        return x


# ---------------------------------------------------------------------------
# univariate polynomials over the rationals
# ---------------------------------------------------------------------------


class QPoly:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficient list `c` carries no trailing zeros; the zero polynomial is
    the empty list.  Instances are treated as immutable values.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [x if isinstance(x, type(RAT_ZERO)) else rat(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = c

    @staticmethod
    def const(x):
        return QPoly([rat(x)])

    @staticmethod
    def x():
        return QPoly([0, 1])

    def is_zero(self):
        return not self.c

    def degree(self):
        return len(self.c) - 1 if self.c else -1

    def lead(self):
        if not self.c:
            return RAT_ZERO
        return self.c[-1]

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.c == other.c

    def __hash__(self):
        return hash(tuple(self.c))

    def __add__(self, other):
        a, b = self.c, other.c
        n = max(len(a), len(b))
        return QPoly([(a[i] if i < len(a) else RAT_ZERO) + (b[i] if i < len(b) else RAT_ZERO) for i in range(n)])

    def __sub__(self, other):
        a, b = self.c, other.c
        n = max(len(a), len(b))
        return QPoly([(a[i] if i < len(a) else RAT_ZERO) - (b[i] if i < len(b) else RAT_ZERO) for i in range(n)])

    def __neg__(self):
        return QPoly([-x for x in self.c])

    def __mul__(self, other):
        if isinstance(other, QPoly):
            a, b = self.c, other.c
            if not a or not b:
                return QPoly()
            out = [RAT_ZERO] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return QPoly(out)
        return QPoly([x * other for x in self.c])

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by q^k."""
        if not self.c:
            return self
        return QPoly([RAT_ZERO] * k + self.c)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.c[:]
        q = [RAT_ZERO] * max(0, len(rem) - len(other.c) + 1)
        d = len(other.c) - 1
        lead = other.c[-1]
        while len(rem) - 1 >= d and rem:
            if rem[-1] == 0:
                rem.pop()
                continue
            k = len(rem) - 1 - d
            f = rem[-1] / lead
            q[k] = f
            for i, oc in enumerate(other.c):
                rem[k + i] -= f * oc
            rem.pop()
        return QPoly(q), QPoly(rem)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def eval(self, x):
        acc = RAT_ZERO
        for coeff in reversed(self.c):
            acc = acc * x + coeff
        return acc

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else RAT_ZERO

    def content_and_primitive(self):
        """(content, primitive part): integer-primitive with positive lead."""
        if not self.c:
            return RAT_ZERO, self
        from math import gcd

        num = 0
        den = 1
        for x in self.c:
            num = gcd(num, abs(int(x.numerator)))
            den = den * int(x.denominator) // gcd(den, int(x.denominator))
        cont = rat(num, den)
        if self.c[-1] < 0:
            cont = -cont
        return cont, QPoly([x / cont for x in self.c])

    def __repr__(self):
        if not self.c:
            return "QPoly(0)"
        terms = []
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            terms.append("%s*q^%d" % (rat_to_str(x), i))
        return "QPoly(%s)" % " + ".join(terms)


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic-free gcd: primitive with positive leading coefficient."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    _, prim = a.content_and_primitive()
    return prim


def poly_gcd_many(polys) -> QPoly:
    g = QPoly()
    for p in polys:
        g = poly_gcd(g, p) if not g.is_zero() else p
        if g.degree() == 0:
            break
    if g.is_zero():
        return g
    _, prim = g.content_and_primitive()
    return prim


# ---------------------------------------------------------------------------
# polynomial matrices: fraction-free determinant and almost-square kernels
# ---------------------------------------------------------------------------


def ffdet(m):
    """Exact determinant of a square QPoly matrix (Bareiss elimination).

    Fraction-free: every intermediate division is exact, which keeps the
    entries as polynomials instead of rational functions.
    """
    n = len(m)
    if n == 0:
        return QPoly.const(1)
    for row in m:
        if len(row) != n:
            raise ValueError("ffdet requires a square matrix")
    a = [row[:] for row in m]
    sign = 1
    prev = QPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            pivot = None
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    pivot = i
                    break
            if pivot is None:
                return QPoly()
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
            a[i][k] = QPoly()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def polymatrix_kernel(c):
    """Kernel vector of a QPoly matrix with one more column than rows.

    Returns (f_0, ..., f_cols-1) with f_i = (-1)^(i+1) det(C_i), where C_i
    deletes column i, divided by the gcd of all components.  Satisfies
    c·f = 0 identically.
    """
    rows = len(c)
    cols = len(c[0]) if rows else 0
    if cols != rows + 1:
        raise ValueError("polymatrix_kernel requires cols == rows + 1")
    f = []
    for i in range(cols):
        minor = [[row[j] for j in range(cols) if j != i] for row in c]
        d = ffdet(minor)
        f.append(d if i % 2 == 1 else -d)
    g = poly_gcd_many([p for p in f if not p.is_zero()])
    if g.is_zero():
        raise ValueError("degenerate elimination: all maximal minors vanish")
    if g.degree() > 0 or g.lead() != 1:
        f = [p.exact_div(g) for p in f]
    return f
