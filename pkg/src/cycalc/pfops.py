"""The noncommutative theta-operator algebra over Q[q].

Operators are finite sums a_ij q^j theta^i with theta = q d/dq, subject to
theta q = q theta + q.  The grid is stored theta-major (one q-polynomial
per theta power); a q-major view (one theta-polynomial per q power) is
provided because hypergeometric modifications and the printed golden
operators group terms that way.

Right division runs over the rational-function field in q and returns the
quotient and remainder together with an explicit cleared denominator.
"""

from __future__ import annotations

import json
from math import comb

from ._rat import RAT_ONE, RAT_ZERO, rat, rat_from_str, rat_to_str
from .ratqa import QPoly, nullspace, poly_gcd, poly_gcd_many


class OreOperator:
    """Element of Q[q]<theta>, stored as theta-coefficients in Q[q]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, QPoly) else QPoly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return OreOperator([])

    @staticmethod
    def one():
        return OreOperator([QPoly.const(1)])

    @staticmethod
    def theta(power=1):
        return OreOperator([QPoly()] * power + [QPoly.const(1)])

    @staticmethod
    def from_grid(grid):
        """grid[i][j] = coefficient of q^j theta^i."""
        return OreOperator([QPoly(row) for row in grid])

    @staticmethod
    def from_q_major(qmajor):
        """qmajor[j][i] = coefficient of theta^i in Q_j(theta)."""
        order = max((len(col) for col in qmajor), default=0)
        grid = [[RAT_ZERO] * len(qmajor) for _ in range(order)]
        for j, col in enumerate(qmajor):
            for i, v in enumerate(col):
                grid[i][j] = rat(v)
        return OreOperator.from_grid(grid)

    @staticmethod
    def theta_poly(coeffs):
        """Polynomial in theta with constant rational coefficients."""
        return OreOperator([QPoly([c]) for c in coeffs])

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def order(self):
        return len(self.coeffs) - 1

    def q_degree(self):
        return max((c.degree() for c in self.coeffs), default=-1)

    def coeff(self, i, j):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i].coeff(j)
        return RAT_ZERO

    def q_major(self):
        """List over q-powers of theta-coefficient lists."""
        d = self.q_degree()
        out = []
        for j in range(d + 1):
            col = [self.coeffs[i].coeff(j) for i in range(len(self.coeffs))]
            while col and col[-1] == 0:
                col.pop()
            out.append(col)
        return out

    def __eq__(self, other):
        return isinstance(other, OreOperator) and self.coeffs == other.coeffs

    # -- linear structure --------------------------------------------------

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else QPoly()
            b = other.coeffs[i] if i < len(other.coeffs) else QPoly()
            out.append(a + b)
        return OreOperator(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return OreOperator([-c for c in self.coeffs])

    def scale(self, factor):
        """Left multiplication by a function or scalar (coefficientwise)."""
        if isinstance(factor, QPoly):
            return OreOperator([c * factor for c in self.coeffs])
        return OreOperator([c * rat(factor) for c in self.coeffs])

    # -- composition and action ---------------------------------------------

    def __mul__(self, other):
        """Operator composition self o other under theta q = q theta + q."""
        if not isinstance(other, OreOperator):
            return self.scale(other)
        out = {}
        for i, ai in enumerate(self.coeffs):
            if ai.is_zero():
                continue
            for j, bj in enumerate(other.coeffs):
                if bj.is_zero():
                    continue
                for c, bc in enumerate(bj.c):
                    if bc == 0:
                        continue
                    # theta^i o q^c = q^c (theta + c)^i
                    for l in range(i + 1):
                        w = rat(comb(i, l)) * rat(c) ** (i - l) * bc
                        if w == 0:
                            continue
                        key = l + j
                        poly = ai.shift(c) * w
                        out[key] = out.get(key, QPoly()) + poly
        order = max(out, default=-1)
        return OreOperator([out.get(i, QPoly()) for i in range(order + 1)])

    def apply(self, series):
        """Exact action on a q-series given by its coefficient list.

        theta acts on q^m by m q^m, multiplication by q^j shifts; the output
        has the same length (entry m uses only series[0..m]).
        """
        out = []
        for m in range(len(series)):
            acc = RAT_ZERO
            for i, ai in enumerate(self.coeffs):
                for j, aij in enumerate(ai.c):
                    if aij == 0 or j > m:
                        continue
                    acc += aij * rat(m - j) ** i * series[m - j]
            out.append(acc)
        return out

    # -- normal form ---------------------------------------------------------

    def normalize(self):
        """Integer coefficients, content one, and a pinned sign.

        The sign makes the leading theta-coefficient of the first nonzero
        q-power positive (so a fourth-order operator starts +c theta^4).
        """
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            for x in c.c:
                d = int(x.denominator)
                g = _gcd(den, d)
                den = den // g * d
        scaled = [c * rat(den) for c in self.coeffs]
        from math import gcd

        content = 0
        for c in scaled:
            for x in c.c:
                content = gcd(content, abs(int(x.numerator)))
        if content == 0:
            return OreOperator([])
        out = [c * rat(1, content) for c in scaled]
        sign = 0
        qd = max(c.degree() for c in out)
        for j in range(qd + 1):
            col = [out[i].coeff(j) for i in range(len(out))]
            lead = next((v for v in reversed(col) if v != 0), None)
            if lead is not None:
                sign = 1 if lead > 0 else -1
                break
        if sign < 0:
            out = [-c for c in out]
        return OreOperator(out)

    # -- io -------------------------------------------------------------------

    def to_json(self):
        qd = self.q_degree()
        return {
            "var": "q",
            "theta_order": self.order(),
            "coeffs": [
                [rat_to_str(self.coeffs[i].coeff(j)) for j in range(qd + 1)]
                for i in range(len(self.coeffs))
            ],
        }

    @staticmethod
    def from_json(obj):
        return OreOperator.from_grid([[rat_from_str(x) for x in row] for row in obj["coeffs"]])

    def pretty(self):
        """q-major human form, one line per q power."""
        lines = []
        for j, col in enumerate(self.q_major()):
            if not col:
                continue
            terms = []
            for i in range(len(col) - 1, -1, -1):
                v = col[i]
                if v == 0:
                    continue
                mono = "theta^%d" % i if i else "1"
                cs = rat_to_str(v)
                if cs == "1" and i:
                    terms.append("+ %s" % mono)
                elif cs == "-1" and i:
                    terms.append("- %s" % mono)
                elif v > 0:
                    terms.append("+ %s*%s" % (cs, mono) if i else "+ %s" % cs)
                else:
                    terms.append("- %s*%s" % (cs.lstrip("-"), mono) if i else "- %s" % cs.lstrip("-"))
            body = " ".join(terms).lstrip("+ ")
            lines.append("q^%d: %s" % (j, body))
        return "\n".join(lines)

    def __repr__(self):
        return "OreOperator(order=%d, qdeg=%d)" % (self.order(), self.q_degree())


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


# ---------------------------------------------------------------------------
# rational-function coefficients (for right division)
# ---------------------------------------------------------------------------


class RatFun:
    """Quotient of two QPoly, normalized with primitive positive-lead denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = QPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = QPoly(), QPoly.const(1)
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0 or g.lead() != 1:
                num, den = num.exact_div(g), den.exact_div(g)
            cont, prim = den.content_and_primitive()
            den = prim
            num = num * rat(1, 1) * _inv_rat(cont)
        self.num, self.den = num, den

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return RatFun(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return RatFun(self.num * other.num, self.den * other.den)
        return RatFun(self.num * other, self.den)

    def __truediv__(self, other):
        return RatFun(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        return self.num == other.num and self.den == other.den


def _inv_rat(x):
    return rat(int(x.denominator), int(x.numerator))


class RationalOreOperator:
    """An Ore operator with a cleared common denominator in q.

    Represents (1/denominator) * numerator with the scalar function acting
    by left multiplication.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: OreOperator, denominator: QPoly):
        self.numerator = numerator
        self.denominator = denominator

    def is_zero(self):
        return self.numerator.is_zero()

    def as_polynomial(self):
        if self.denominator.degree() != 0:
            raise ValueError("operator has a nontrivial denominator")
        return self.numerator.scale(rat(1, 1) * _inv_rat(self.denominator.c[0]))


def _ratfun_grid(op: OreOperator):
    return [RatFun(c) for c in op.coeffs]


def _compose_term_ratfun(c: RatFun, k: int, s: OreOperator):
    """(c(q) theta^k) o s, as a dict theta-power -> RatFun."""
    out = {}
    for j, bj in enumerate(s.coeffs):
        for cpow, bc in enumerate(bj.c):
            if bc == 0:
                continue
            for l in range(k + 1):
                w = rat(comb(k, l)) * rat(cpow) ** (k - l) * bc
                if w == 0:
                    continue
                key = l + j
                term = c * RatFun(QPoly.const(w).shift(cpow))
                out[key] = out.get(key, RatFun(QPoly())) + term
    return out


def ore_right_divide(p: OreOperator, s: OreOperator):
    """Right-divide p by s: p = quotient o s + remainder, ord(rem) < ord(s).

    Requires ord(s) >= 1 and a nonzero leading theta-coefficient.  The
    quotient and remainder come back as RationalOreOperator with explicit
    cleared denominators.
    """
    if s.order() < 1:
        raise ValueError("divisor must have order >= 1")
    lead_s = s.coeffs[-1]
    if lead_s.is_zero():
        raise ValueError("divisor leading coefficient is zero")
    rem = {i: RatFun(c) for i, c in enumerate(p.coeffs)}
    quo = {}

    def ord_of(table):
        live = [i for i, v in table.items() if not v.is_zero()]
        return max(live, default=-1)

    while True:
        op_ord = ord_of(rem)
        if op_ord < s.order():
            break
        k = op_ord - s.order()
        c = rem[op_ord] / RatFun(lead_s)
        quo[k] = quo.get(k, RatFun(QPoly())) + c
        for key, term in _compose_term_ratfun(c, k, s).items():
            rem[key] = rem.get(key, RatFun(QPoly())) - term
        if not rem.get(op_ord, RatFun(QPoly())).is_zero():
            raise AssertionError("division failed to lower the order")
    return _clear(quo), _clear(rem)


def _clear(table):
    order = max((i for i, v in table.items() if not v.is_zero()), default=-1)
    dens = [table[i].den for i in range(order + 1) if i in table and not table[i].is_zero()]
    lcm = QPoly.const(1)
    for d in dens:
        g = poly_gcd(lcm, d)
        lcm = lcm.exact_div(g) * d
    coeffs = []
    for i in range(order + 1):
        v = table.get(i)
        if v is None or v.is_zero():
            coeffs.append(QPoly())
        else:
            coeffs.append(v.num * lcm.exact_div(v.den))
    return RationalOreOperator(OreOperator(coeffs), lcm)


# ---------------------------------------------------------------------------
# hypergeometric modification of the q-major form
# ---------------------------------------------------------------------------


def bvs_transform(qop: OreOperator, line_degrees):
    """Insert prod_i prod_{m=1..j} (d_i theta + m) into each q^j block.

    Takes the quantum differential operator of the twisted ambient theory
    and produces an annihilator of the hypergeometric modification by the
    line bundles O(d_1), ..., O(d_r).
    """
    out = []
    for j, col in enumerate(qop.q_major()):
        theta_poly = list(col)
        for d in line_degrees:
            for m in range(1, j + 1):
                theta_poly = _theta_mul_linear(theta_poly, d, m)
        out.append(theta_poly)
    return OreOperator.from_q_major(out)


def _theta_mul_linear(coeffs, a, b):
    """Multiply a theta-polynomial by (a*theta + b)."""
    out = [RAT_ZERO] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        out[i + 1] += rat(a) * c
        out[i] += rat(b) * c
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# annihilator search
# ---------------------------------------------------------------------------


class UnderdeterminedError(ValueError):
    pass


def annihilator_search_at(series, order, q_degree, guard=12):
    """Kernel test at fixed theta-order and q-degree.

    Returns None (trivial kernel), an operator (one-dimensional kernel,
    normalized and annihilating every supplied coefficient), or raises
    UnderdeterminedError when the kernel has dimension above one.
    """
    unknowns = (order + 1) * (q_degree + 1)
    if len(series) < unknowns + guard:
        raise ValueError(
            "need at least %d series coefficients for q-degree %d" % (unknowns + guard, q_degree)
        )
    rows = []
    for m in range(len(series)):
        row = []
        for i in range(order + 1):
            for j in range(q_degree + 1):
                row.append(rat(m - j) ** i * series[m - j] if j <= m else RAT_ZERO)
        rows.append(row)
    kernel = nullspace(rows)
    if not kernel:
        return None
    if len(kernel) > 1:
        raise UnderdeterminedError("underdetermined; increase series length")
    v = kernel[0]
    grid = [[v[i * (q_degree + 1) + j] for j in range(q_degree + 1)] for i in range(order + 1)]
    op = OreOperator.from_grid(grid).normalize()
    residual = op.apply(list(series))
    if any(x != 0 for x in residual):
        raise AssertionError("annihilator fails on the guard band")
    return op


def annihilator_search(series, order, max_q_degree=12, guard=12):
    """Minimal-q-degree annihilator of fixed theta-order for a q-series.

    Scans the q-degree upward and returns the first operator whose kernel
    is one-dimensional; None when the cap is reached without success.
    """
    for q_degree in range(1, max_q_degree + 1):
        if len(series) < (order + 1) * (q_degree + 1) + guard:
            break
        op = annihilator_search_at(series, order, q_degree, guard)
        if op is not None:
            return op
    return None


def find_annihilator(series_provider, order, max_q_degree=12, guard=12):
    """Annihilator search with lazily extended series.

    `series_provider(length)` must return at least `length` coefficients
    (a prefix-stable list).  Returns (operator, q_degree) or (None, None).
    """
    for q_degree in range(1, max_q_degree + 1):
        need = (order + 1) * (q_degree + 1) + guard
        series = series_provider(need)
        op = annihilator_search_at(series[:need], order, q_degree, guard)
        if op is not None:
            return op, q_degree
    return None, None
