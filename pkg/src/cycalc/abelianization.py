"""Twisted toric I-series and the abelian/nonabelian correspondence.

The scalar series I_0..I_3 of a twisted small I-function are produced in
three steps: per-degree toric coefficients on the abelian quotient, the
root-factor numerator with its sign twist, and division by the Weyl
anti-invariant class omega followed by projection to the rank-one quotient
in each degree up to three.

Two backends share this interface: products of projective spaces for
Grassmannian targets (this module) and the determinantal-nets-of-conics
quotient (`pdelta`).  A generic, ring-based path implements the documented
operations one degree at a time; `i_series` itself runs a flat-vector
engine over a per-variable-capped monomial window, which computes the same
coefficients (the two are cross-checked in the tests) at a small fraction
of the cost.  Everything is exact; z is never stored, only the integer
homogeneity weight of each term.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import mpoly as mp
from ._rat import RAT_ONE, RAT_ZERO, rat, rat_to_str
from .cohomring import (
    Ring,
    RingElement,
    RingPresentation,
    WeightedElement,
    integrate_grassmann,
    make_ring,
    schur_poly,
)
from .homobundle import TargetSpec, euler_lift, line_classes, lookup
from .ratqa import EchelonSolver

ENUMERATION_CAP = 2_000_000


class PipelineError(ValueError):
    """Raised when a target cannot run on the requested pipeline."""


@dataclass
class ToricData:
    """Abelian-quotient data driving the twisted I-series.

    Degree vectors are integer tuples of length `degree_dim`; every class
    carries its pairing vector so <class, d> is a plain dot product.
    `divisors` are (linear class, multiplicity, pairing); `bundles` and
    `roots` are (linear class, pairing).  `enumerator(total)` lists the
    cone points of total degree `total`.
    """

    ring: Ring
    degree_dim: int
    divisors: list
    bundles: list
    roots: list
    h_vector: tuple
    enumerator: object
    cone_contains: object

    def h(self, d):
        return sum(a * b for a, b in zip(self.h_vector, d))

    def epsilon(self, d):
        return sum(_dot(pair, d) for _, pair in self.roots)

    def omega(self) -> RingElement:
        out = self.ring.one()
        for cls, _ in self.roots:
            out = out * self.ring.element(cls)
        return out


def _dot(v, d):
    return sum(a * b for a, b in zip(v, d))


# ---------------------------------------------------------------------------
# generic (ring-based) operations
# ---------------------------------------------------------------------------


def grassmann_toric_data(spec: TargetSpec, max_degree=None) -> ToricData:
    """(P^(n-1))^k data for a pure S*/O spec."""
    if not spec.is_pure():
        raise PipelineError(
            "%s: mixed S*/Q bundle; dualize or use the qconn/pdelta pipeline" % (spec.label or "spec")
        )
    k, n = spec.k, spec.n
    nroots = k * (k - 1) // 2
    if max_degree is None:
        max_degree = nroots + 3
    relations = []
    for i in range(k):
        e = [0] * k
        e[i] = n
        relations.append({tuple(e): RAT_ONE})
    ring = make_ring(RingPresentation(tuple("H%d" % (i + 1) for i in range(k)), tuple(relations), max_degree))
    unit = lambda i: tuple(1 if j == i else 0 for j in range(k))
    divisors = [(mp.mp_gen(k, i), n, unit(i)) for i in range(k)]
    bundles = [(mp.mp_linear(mu), tuple(mu)) for mu in line_classes(spec)]
    roots = []
    for i, j in combinations(range(k), 2):
        form = [0] * k
        form[i], form[j] = 1, -1
        roots.append((mp.mp_linear(form), tuple(form)))

    def enumerator(total):
        if total < 0:
            return []
        if comb(total + k - 1, k - 1) > ENUMERATION_CAP:
            raise ValueError("degree enumeration safety bound exceeded")
        return list(_compositions(total, k))

    return ToricData(
        ring=ring,
        degree_dim=k,
        divisors=divisors,
        bundles=bundles,
        roots=roots,
        h_vector=tuple([1] * k),
        enumerator=enumerator,
        cone_contains=lambda d: all(x >= 0 for x in d),
    )


def _compositions(total, k):
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, k - 1):
            yield (first,) + rest


def enumerate_degrees(td: ToricData, total: int):
    """Cone points with h(d) = total (finite; guarded against blowup)."""
    if total < 0:
        raise ValueError("total degree must be nonnegative")
    points = td.enumerator(total)
    if len(points) > ENUMERATION_CAP:
        raise ValueError("degree enumeration safety bound exceeded")
    return points


def toric_coeff(td: ToricData, d) -> WeightedElement:
    """The degree-d coefficient of the twisted toric I-function.

    Bundle classes of pairing e contribute prod_{m=1..e}(L + m z) upstairs;
    a divisor of pairing e >= 0 contributes the same product downstairs,
    and e < 0 flips it upstairs as prod_{m=e+1..0}(D + m z).  z is set to 1
    and tracked through the weight.
    """
    if not td.cone_contains(d):
        raise ValueError("degree vector outside the cone: %r" % (d,))
    ring = td.ring
    max_deg = ring.max_degree
    n = ring.ngens
    num = mp.mp_const(n, 1)
    weight = 0

    def ranged_product(acc, cls, lo, hi):
        for m in range(lo, hi + 1):
            acc = mp.mp_mul(acc, mp.mp_add(cls, mp.mp_const(n, m)), max_deg=max_deg)
        return acc

    denom_factors = []
    for cls, pair in td.bundles:
        e = _dot(pair, d)
        if e >= 0:
            num = ranged_product(num, cls, 1, e)
            weight += e
        else:
            denom_factors.append((cls, e + 1, 0))
            weight += e
    for cls, mult, pair in td.divisors:
        e = _dot(pair, d)
        if e >= 0:
            for _ in range(mult):
                denom_factors.append((cls, 1, e))
            weight -= mult * e
        else:
            for _ in range(mult):
                num = ranged_product(num, cls, e + 1, 0)
            weight -= mult * e
    for cls, lo, hi in denom_factors:
        for m in range(lo, hi + 1):
            if m == 0:
                raise ValueError("divisor factor with zero shift in the denominator")
            inv = mp.mp_inverse_series(mp.mp_add(cls, mp.mp_const(n, m)), max_deg)
            num = mp.mp_mul(num, inv, max_deg=max_deg)
    return WeightedElement(ring.element(num), weight)


def abelianized_numerator(td: ToricData, total: int) -> WeightedElement:
    """Sum over the degree-`total` cone slice of sign * root factors * I_d."""
    ring = td.ring
    n = ring.ngens
    acc = WeightedElement(ring.zero(), 0)
    for d in enumerate_degrees(td, total):
        coeff = toric_coeff(td, d)
        factors = ring.one()
        for cls, pair in td.roots:
            factors = factors * ring.element(mp.mp_add(cls, mp.mp_const(n, _dot(pair, d))))
        sign = -1 if td.epsilon(d) % 2 else 1
        term = WeightedElement(factors, len(td.roots)) * coeff
        acc = acc + (sign * term)
    return acc


def omega_divide(td: ToricData, a: WeightedElement, lifts):
    """Coefficients c with a = sum c_i * lifts[i] * omega, solved per degree.

    The lifts must be homogeneous ring elements; inconsistency raises
    ValueError("not omega-divisible").
    """
    ring = td.ring
    omega = td.omega()
    cols = []
    degrees = []
    for lift in lifts:
        prod = lift * omega
        degs = prod.degrees()
        if len(degs) != 1:
            raise ValueError("lift basis elements must be homogeneous")
        degrees.append(degs[0])
        cols.append(prod)
    out = [RAT_ZERO] * len(lifts)
    for deg in sorted(set(degrees)):
        idx = [i for i, dg in enumerate(degrees) if dg == deg]
        basis_monos = ring.monomials[deg]
        columns = []
        for i in idx:
            part = mp.mp_homogeneous_part(cols[i].poly, deg)
            columns.append([part.get(e, RAT_ZERO) for e in basis_monos])
        rhs_part = mp.mp_homogeneous_part(a.element.poly, deg)
        rhs = [rhs_part.get(e, RAT_ZERO) for e in basis_monos]
        try:
            solver = EchelonSolver(columns, len(basis_monos))
            sol = solver.solve(rhs)
        except ValueError as exc:
            raise ValueError("not omega-divisible: %s" % exc) from None
        for i, v in zip(idx, sol):
            out[i] = v
    # Degrees of a not covered by any lift must vanish below the window.
    covered = set(degrees)
    for deg in a.element.degrees():
        if deg not in covered and deg <= max(degrees, default=-1):
            raise ValueError("not omega-divisible: stray component in degree %d" % deg)
    return out


# ---------------------------------------------------------------------------
# scalar series container
# ---------------------------------------------------------------------------


@dataclass
class IScalarSeries:
    """The four scalar series of a small I-function, exact rationals.

    I1(t) = I0(t) t + sum I1red[d] q^d, and likewise for I2, I3 through the
    exp(tH/z) prefactor; only the reduced q-series are stored.
    """

    target: str
    order: int
    I0: list
    I1red: list
    I2red: list
    I3red: list

    def __post_init__(self):
        if self.I0[0] != 1:
            raise AssertionError("I0 must start at 1")
        if self.I1red[0] != 0:
            raise AssertionError("I1red must start at 0")

    def to_json(self):
        return {
            "target": self.target,
            "order": self.order,
            "I0": [rat_to_str(x) for x in self.I0],
            "I1red": [rat_to_str(x) for x in self.I1red],
            "I2red": [rat_to_str(x) for x in self.I2red],
            "I3red": [rat_to_str(x) for x in self.I3red],
        }


def mirror_map(series: IScalarSeries):
    """Coefficients of tau - t = (sum I1red q^d) / I0 as a q-series."""
    i0, i1 = series.I0, series.I1red
    out = []
    for m in range(len(i1)):
        acc = i1[m]
        for j in range(m):
            acc -= out[j] * i0[m - j]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# fast Grassmannian engine
# ---------------------------------------------------------------------------


def _box_partitions(k, n, max_size):
    """Partitions of size <= max_size inside the k x (n-k) box."""
    out = []

    def rec(prefix, remaining, bound):
        out.append(tuple(prefix))
        if len(prefix) == k or remaining == 0:
            return
        for part in range(min(bound, remaining), 0, -1):
            rec(prefix + [part], remaining - part, part)

    rec([], max_size, n - k)
    seen = []
    for lam in out:
        if lam not in seen:
            seen.append(lam)
    return seen


class _CappedEngine:
    """Flat-vector arithmetic on monomials below per-variable caps.

    The caps form a monomial ideal, so products of the retained
    coefficients are exact; only coefficients that can never reach an
    extraction monomial are dropped.
    """

    def __init__(self, caps):
        self.caps = tuple(caps)
        self.k = len(caps)
        monos = [()]
        for c in caps:
            monos = [e + (a,) for e in monos for a in range(c + 1)]
        monos.sort(key=lambda e: (sum(e), e))
        self.monomials = monos
        self.index = {e: i for i, e in enumerate(monos)}
        self.size = len(monos)
        # predecessor index along each axis (-1 when exponent is 0)
        self.down = []
        for axis in range(self.k):
            col = []
            for e in monos:
                if e[axis] == 0:
                    col.append(-1)
                else:
                    prev = list(e)
                    prev[axis] -= 1
                    col.append(self.index[tuple(prev)])
            self.down.append(col)

    def const_one(self):
        vec = [RAT_ZERO] * self.size
        vec[self.index[(0,) * self.k]] = RAT_ONE
        return vec

    def mul_linear(self, vec, form, const):
        """vec * (sum form[i] H_i + const), truncated to the caps."""
        c = rat(const)
        out = [x * c for x in vec] if c != 0 else [RAT_ZERO] * self.size
        for axis, a in enumerate(form):
            if a == 0:
                continue
            av = rat(a)
            down = self.down[axis]
            for m in range(self.size):
                j = down[m]
                if j >= 0:
                    x = vec[j]
                    if x != 0:
                        out[m] += av * x
        return out

    def mul_axis_series(self, vec, axis, coeffs):
        """vec * sum_j coeffs[j] H_axis^j, truncated to the caps."""
        out = [RAT_ZERO] * self.size
        down = self.down[axis]
        for m in range(self.size):
            src = m
            for j in range(len(coeffs)):
                if src < 0:
                    break
                x = vec[src]
                if x != 0:
                    cj = coeffs[j]
                    if cj != 0:
                        out[m] += cj * x
                src = down[src]
        return out


def _inverse_shift_series(shift, power, length):
    """Coefficients of (x + shift)^(-power) as a series in x, length terms."""
    inv = rat(1, shift)
    out = []
    binom = RAT_ONE
    for j in range(length):
        out.append(binom * inv ** (power + j) * ((-1) ** j))
        binom = binom * (power + j) / (j + 1)
    return out


def _grassmann_coefficients(spec: TargetSpec, order: int, lambdas):
    """c_lambda(h) for h <= order: the Schur-basis coordinates of the
    omega-divided numerator, for each partition in `lambdas`.

    Extraction uses the bialternant form: s_lam * omega is the alternating
    orbit sum of H^(lam+delta), whose strictly decreasing exponent is
    unique in its orbit, so c_lam is the plain coefficient of H^(lam+delta)
    in the numerator.
    """
    k, n = spec.k, spec.n
    classes = line_classes(spec)
    assert [sum(c[i] for c in classes) for i in range(k)] == [n] * k, "not Calabi-Yau"
    delta = tuple(range(k - 1, -1, -1))
    targets = []
    for lam in lambdas:
        e = tuple((lam[i] if i < len(lam) else 0) + delta[i] for i in range(k))
        if any(a > n - 1 for a in e):
            raise ValueError("lift partition %r escapes the box" % (lam,))
        targets.append(e)
    caps = tuple(min(n - 1, max(t[i] for t in targets)) for i in range(k))
    eng = _CappedEngine(caps)
    target_idx = [eng.index[t] for t in targets]

    inv_cache = [[None] * (order + 1) for _ in range(k)]

    pairs = list(combinations(range(k), 2))
    results = [[RAT_ZERO] * (order + 1) for _ in lambdas]

    prev_layer = {(0,) * k: eng.const_one()}
    for h in range(order + 1):
        if h == 0:
            layer = prev_layer
        else:
            layer = {}
            for d in _compositions(h, k):
                i0 = next(i for i, x in enumerate(d) if x > 0)
                parent = list(d)
                parent[i0] -= 1
                vec = prev_layer[tuple(parent)]
                di = d[i0]
                if inv_cache[i0][di] is None:
                    inv_cache[i0][di] = _inverse_shift_series(di, n, caps[i0] + 1)
                vec = eng.mul_axis_series(vec, i0, inv_cache[i0][di])
                for cls in classes:
                    mu = cls[i0]
                    if mu == 0:
                        continue
                    new_deg = _dot(cls, d)
                    for m in range(new_deg - mu + 1, new_deg + 1):
                        vec = eng.mul_linear(vec, cls, m)
                layer[d] = vec
        for d, vec in layer.items():
            w = vec
            for i, j in pairs:
                form = [0] * k
                form[i], form[j] = 1, -1
                w = eng.mul_linear(w, form, d[i] - d[j])
            eps = sum(d[i] - d[j] for i, j in pairs)
            sign = -1 if eps % 2 else 1
            for li, ti in enumerate(target_idx):
                v = w[ti]
                if v != 0:
                    results[li][h] += v if sign == 1 else -v
        prev_layer = layer
    return results


def _projection_scalars(spec: TargetSpec, lambdas_by_degree):
    """Pairing-based projection of degree-2 and 3 classes onto H^s.

    pi_s(lam) = int s_lam H^(3-s) e(E) / int H^3 e(E); the denominator is
    the degree of the threefold and must be nonzero.
    """
    k, n = spec.k, spec.n
    e = euler_lift(spec)
    h = mp.mp_linear([1] * k)

    def tw_int(f):
        return integrate_grassmann(mp.mp_mul(f, e), k, n)

    deg = tw_int(mp.mp_mul(mp.mp_mul(h, h), h))
    if deg == 0:
        raise ValueError("degenerate target: int H^3 e(E) = 0")
    out = {}
    for s, lams in lambdas_by_degree.items():
        for lam in lams:
            f = schur_poly(lam, k, tuple(range(k)))
            for _ in range(3 - s):
                f = mp.mp_mul(f, h)
            out[lam] = tw_int(f) / deg
    return out, deg


def i_series_grassmann(spec: TargetSpec, order: int) -> IScalarSeries:
    """All four scalar series for a pure (possibly dualized) target."""
    if not spec.is_pure():
        from .homobundle import dualize

        spec = dualize(spec)
    k, n = spec.k, spec.n
    lambdas = [lam for lam in _box_partitions(k, n, 3)]
    lambdas.sort(key=lambda l: (sum(l), l))
    by_degree = {}
    for lam in lambdas:
        by_degree.setdefault(sum(lam), []).append(lam)
    coeffs = _grassmann_coefficients(spec, order, lambdas)
    table = dict(zip(lambdas, coeffs))
    pi, _deg = _projection_scalars(spec, {s: by_degree.get(s, []) for s in (2, 3)})
    i0 = table[()]
    i1 = table.get((1,), [RAT_ZERO] * (order + 1))
    i2 = [RAT_ZERO] * (order + 1)
    i3 = [RAT_ZERO] * (order + 1)
    for lam in by_degree.get(2, []):
        for hdeg in range(order + 1):
            i2[hdeg] += table[lam][hdeg] * pi[lam]
    for lam in by_degree.get(3, []):
        for hdeg in range(order + 1):
            i3[hdeg] += table[lam][hdeg] * pi[lam]
    return IScalarSeries(spec.label, order, i0, i1, i2, i3)


def i0_series_grassmann(spec: TargetSpec, order: int):
    """Holomorphic-solution coefficients only (the operator-search input)."""
    if not spec.is_pure():
        from .homobundle import dualize

        spec = dualize(spec)
    return _grassmann_coefficients(spec, order, [()])[0]


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def resolve_backend(spec: TargetSpec) -> str:
    if spec.pipeline == "pdelta":
        return "pdelta"
    if spec.pipeline == "qconn":
        return "qconn"
    if spec.is_pure() or spec.carriers() - {"O"} <= {"Q"}:
        return "abelianization"
    raise PipelineError(
        "%s: mixed S*/Q bundle; no abelianization route (use qconn or pdelta)" % spec.label
    )


def i_series(spec: TargetSpec, order: int) -> IScalarSeries:
    """Scalar I-series of a catalog target through its natural backend."""
    backend = resolve_backend(spec)
    if backend == "abelianization":
        return i_series_grassmann(spec, order)
    if backend == "pdelta":
        from . import pdelta

        return pdelta.i_series_pdelta(spec, order)
    from . import qconn

    return qconn.i_series_qconn(spec, order)


def i0_series(spec: TargetSpec, order: int):
    backend = resolve_backend(spec)
    if backend == "abelianization":
        return i0_series_grassmann(spec, order)
    if backend == "pdelta":
        from . import pdelta

        return pdelta.i0_series_pdelta(spec, order)
    from . import qconn

    return qconn.i0_series_qconn(spec, order)
