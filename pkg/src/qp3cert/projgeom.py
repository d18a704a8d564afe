"""Commutative projective geometry on the weight coordinates (E, F, K, K'):
lines and their perps, the pencil of quadrics through the two conics, its
rulings, secant tests by exact intersection length, the cones attached to
conic points, and the collinearity-invariance lemma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .cpoly import CPoly, monomials
from .exactfield import ParameterContext, RF_ONE, RF_ZERO, RationalFunction, rf
from .linalg import det, nullspace, rank, rref
from .ptscheme import SchemeComponent, point_scheme_S, projectively_equal

VARS = ("E", "F", "K", "K'")
INFINITY = "inf"


@dataclass
class ProjLine:
    """A line in P^3 recorded by its perp: the 2-dimensional space of linear
    forms vanishing on it (rows = coefficient vectors, reduced echelon)."""
    perp: list

    def __post_init__(self):
        rows, piv = rref(self.perp, 4)
        if len(piv) != 2:
            raise ValueError("perp of a line must have rank 2")
        self.perp = rows

    def perp_forms(self) -> List[CPoly]:
        return [CPoly.linear_form(VARS, row) for row in self.perp]

    def spanning_points(self) -> list:
        """Two projective points spanning the line."""
        pts = nullspace(self.perp, 4)
        assert len(pts) == 2
        return pts

    def contains(self, coords: Sequence[RationalFunction]) -> bool:
        return all(not sum((c * x for c, x in zip(row, coords)), RF_ZERO)
                   for row in self.perp)

    def parametrize(self, w: RationalFunction, t: RationalFunction) -> list:
        p, q = self.spanning_points()
        return [w * a + t * b for a, b in zip(p, q)]

    def pluecker(self) -> list:
        """Pluecker coordinates p01, p02, p03, p12, p13, p23 from two points."""
        p, q = self.spanning_points()
        out = []
        for i in range(4):
            for j in range(i + 1, 4):
                out.append(p[i] * q[j] - p[j] * q[i])
        return out

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return self.perp == other.perp


def pluecker_relation(pl: Sequence[RationalFunction]) -> RationalFunction:
    p01, p02, p03, p12, p13, p23 = pl
    return p01 * p23 - p02 * p13 + p03 * p12


def line_through(p: Sequence[RationalFunction], q: Sequence[RationalFunction]) -> ProjLine:
    """The line spanned by two distinct projective points."""
    if projectively_equal(p, q):
        raise ValueError("coincident points do not span a line")
    perp = nullspace([list(p), list(q)], 4)
    return ProjLine(perp)


def line_from_forms(forms: Sequence[Sequence[RationalFunction]]) -> ProjLine:
    return ProjLine([list(f) for f in forms])


# ---------------------------------------------------------------------------
# quadrics
# ---------------------------------------------------------------------------

@dataclass
class Quadric:
    gram: list  # symmetric 4x4 over the field

    def poly(self) -> CPoly:
        out = CPoly.zero(VARS)
        for i in range(4):
            for j in range(4):
                if self.gram[i][j]:
                    e = [0, 0, 0, 0]
                    e[i] += 1
                    e[j] += 1
                    out = out + CPoly(VARS, {tuple(e): self.gram[i][j]})
        return out

    def value(self, coords) -> RationalFunction:
        v = RF_ZERO
        for i in range(4):
            for j in range(4):
                if self.gram[i][j]:
                    v = v + self.gram[i][j] * coords[i] * coords[j]
        return v

    def contains_line(self, line: ProjLine, ctx: ParameterContext) -> bool:
        w = ctx.transcendental("w_q")
        t = ctx.transcendental("t_q")
        return not self.value(line.parametrize(w, t))

    def singular_locus(self) -> list:
        return nullspace(self.gram, 4)


def quadric_from_poly(p: CPoly) -> Quadric:
    gram = [[RF_ZERO] * 4 for _ in range(4)]
    half = rf(1, 0) / rf(2)
    for e, c in p.terms.items():
        idx = [k for k in range(4) for _ in range(e[k])]
        if len(idx) != 2:
            raise ValueError("not a quadratic form")
        i, j = idx
        if i == j:
            gram[i][i] = gram[i][i] + c
        else:
            gram[i][j] = gram[i][j] + c * half
            gram[j][i] = gram[j][i] + c * half
    return Quadric(gram)


def pencil_poly(lam, ctx: ParameterContext) -> CPoly:
    """kappa^-2 EF + K^2 - (lam + lam^-1) K K' + K'^2; at 0/infinity: K K'."""
    kp = ctx.kappa
    if lam == INFINITY or (isinstance(lam, RationalFunction) and lam.is_zero()):
        return CPoly(VARS, {(0, 0, 1, 1): RF_ONE})
    c = lam + lam.inv()
    return CPoly(VARS, {
        (1, 1, 0, 0): (kp * kp).inv(),
        (0, 0, 2, 0): RF_ONE,
        (0, 0, 1, 1): -c,
        (0, 0, 0, 2): RF_ONE,
    })


def pencil_quadric(lam, ctx: ParameterContext) -> Quadric:
    return quadric_from_poly(pencil_poly(lam, ctx))


def pencil_singulars(ctx: ParameterContext) -> dict:
    """Exact singular set of the pencil: {0, 1, -1, inf}.

    det(gram) is cleared by lam^2 to a degree-4 polynomial in lam; exact
    division by (lam-1)^2 (lam+1)^2 must leave a nonzero lam-constant.
    """
    lam = ctx.transcendental("lam_sing")
    qd = pencil_quadric(lam, ctx)
    d = det(qd.gram)
    # clear lam denominators
    cleared = d * (lam * lam)
    quot = cleared / ((lam - RF_ONE) ** 2 * (lam + RF_ONE) ** 2)
    is_const_in_lam = not _depends_on(quot, "lam_sing")
    vertex_plus = pencil_quadric(rf(1), ctx).singular_locus()
    vertex_minus = pencil_quadric(rf(-1), ctx).singular_locus()
    ok_vertices = (len(vertex_plus) == 1 and len(vertex_minus) == 1
                   and projectively_equal(vertex_plus[0], [rf(0), rf(0), rf(1), rf(1)])
                   and projectively_equal(vertex_minus[0], [rf(0), rf(0), rf(1), rf(-1)]))
    return {
        "passed": is_const_in_lam and bool(quot) and ok_vertices,
        "singular_set": ["0", "1", "-1", "inf"],
        "det_quotient_constant": is_const_in_lam,
        "vertices_at_(0,0,1,pm1)": ok_vertices,
    }


def _depends_on(x: RationalFunction, var: str) -> bool:
    return x.num.degree_in(var) > 0 or x.den.degree_in(var) > 0


# ---------------------------------------------------------------------------
# rulings
# ---------------------------------------------------------------------------

def ruling_forms(lam: RationalFunction, s, family: int, ctx: ParameterContext):
    """Coefficient rows of the two linear forms cutting the ruling line.

    Family 1:  kappa^-1 E - s (K - lam K')    = s kappa^-1 F + (K - lam^-1 K') = 0
    Family 2:  kappa^-1 E - s (K - lam^-1 K') = s kappa^-1 F + (K - lam K')    = 0

    s = "inf" gives the limit line {K - lam K' = F = 0} (family 1) or
    {K - lam^-1 K' = F = 0} (family 2); the first form degenerates.
    """
    ki = ctx.kappa.inv()
    one, zero = RF_ONE, RF_ZERO
    a, b = (lam, lam.inv()) if family == 1 else (lam.inv(), lam)
    if s == INFINITY:
        return [[zero, zero, one, -a], [zero, one, zero, zero]]
    return [
        [ki, zero, -s, s * a],
        [zero, s * ki, one, -b],
    ]


def ruling_line(lam: RationalFunction, s, family: int, ctx: ParameterContext) -> ProjLine:
    return line_from_forms(ruling_forms(lam, s, family, ctx))


def ruling_line_on_quadric(lam: RationalFunction, s, family: int,
                           ctx: ParameterContext) -> bool:
    line = ruling_line(lam, s, family, ctx)
    return pencil_quadric(lam, ctx).contains_line(line, ctx)


def ruling_family_of(line: ProjLine, lam: RationalFunction,
                     ctx: ParameterContext) -> Optional[int]:
    """Which ruling family of Q(lam) a line belongs to.

    Two distinct lines of the same ruling are disjoint while lines of
    opposite rulings always meet, so the family is identified by which
    generic ruling line the given one intersects.  Returns None if the line
    is not on Q(lam), 0 if it meets generic lines of both families (the
    cone case lam = +-1, where the rulings coincide).
    """
    if not pencil_quadric(lam, ctx).contains_line(line, ctx):
        return None
    s = ctx.transcendental("s_fam")
    meets = []
    for family in (1, 2):
        other = ruling_line(lam, s, family, ctx)
        meets.append(rank(line.perp + other.perp, 4) <= 3)
    if meets[1] and not meets[0]:
        return 1
    if meets[0] and not meets[1]:
        return 2
    return 0


# ---------------------------------------------------------------------------
# intersection lengths and the secant test
# ---------------------------------------------------------------------------

def intersection_length(line: ProjLine, curve_ideal: Sequence[CPoly],
                        ctx: ParameterContext, max_degree: int = 12,
                        window: int = 3) -> Optional[int]:
    """Length of the scheme-theoretic intersection of the line with the zero
    locus of curve_ideal: the stabilized Hilbert function of the quotient by
    (perp u curve_ideal).

    The two linear forms of perp are eliminated by restricting everything to
    the line's parametrization, leaving binary forms in the line's own
    homogeneous coordinates (w, t); the Hilbert function is then computed
    degree by degree.  Returns None (non-stabilizing) if no window of
    `window` equal values appears by max_degree.
    """
    w = ctx.transcendental("w_len")
    t = ctx.transcendental("t_len")
    param = line.parametrize(w, t)
    restricted = []
    for g in curve_ideal:
        restricted.append((g.evaluate(param), g.total_degree()))
    dims = []
    for d in range(0, max_degree + 1):
        rows = []
        ncols = d + 1  # monomials w^d, w^(d-1) t, ..., t^d
        for val, gdeg in restricted:
            if gdeg > d or not val:
                continue
            coeffs = _binary_form_coeffs(val, gdeg)
            for shift in range(d - gdeg + 1):
                row = [RF_ZERO] * ncols
                for k, c in enumerate(coeffs):
                    row[shift + k] = c
                rows.append(row)
        dims.append(ncols - (rank(rows, ncols) if rows else 0))
        if len(dims) >= window and len(set(dims[-window:])) == 1:
            return dims[-1]
    return None


def _binary_form_coeffs(val: RationalFunction, deg: int) -> list:
    """Coefficients of a homogeneous value in (w, t) on w^(deg-k) t^k."""
    num, den = val.num, val.den
    if den.degree_in("w_len") or den.degree_in("t_len"):
        raise ValueError("restriction is not polynomial in the line coordinates")
    return [RationalFunction(_extract_coeff(num, "w_len", deg - k, "t_len", k), den)
            for k in range(deg + 1)]


def _extract_coeff(num, wvar, wdeg, tvar, tdeg):
    from .exactfield import MultiPoly
    vs = num.variables
    if wvar in vs:
        wi = vs.index(wvar)
    else:
        wi = None
    if tvar in vs:
        ti = vs.index(tvar)
    else:
        ti = None
    keep = tuple(v for k, v in enumerate(vs) if k not in (wi, ti))
    terms = {}
    for e, c in num.terms.items():
        if (e[wi] if wi is not None else 0) != wdeg:
            continue
        if (e[ti] if ti is not None else 0) != tdeg:
            continue
        ke = tuple(x for k, x in enumerate(e) if k not in (wi, ti))
        terms[ke] = c
    return MultiPoly(keep, terms)


def union_conics_ideal(ctx: ParameterContext, mu: Optional[RationalFunction] = None) -> List[CPoly]:
    """Ideal (K K', g_mu) cutting out the union of the two conics."""
    if mu is None:
        mu = ctx.rat(2)
    return [CPoly(VARS, {(0, 0, 1, 1): RF_ONE}), pencil_poly(mu, ctx)]


def secant_test(line: ProjLine, ctx: ParameterContext) -> bool:
    """True iff the line meets the union of the two conics with length 2."""
    return intersection_length(line, union_conics_ideal(ctx), ctx) == 2


# ---------------------------------------------------------------------------
# the cone attached to a conic point
# ---------------------------------------------------------------------------

def cone_at_conic_point(coords: Sequence[RationalFunction], ctx: ParameterContext) -> Quadric:
    """xi1 F K + xi2 E K + xi3 (-EF + kappa^2 K^2 - kappa^2 K'^2), the cone
    with vertex at the conic point (xi1, xi2, xi3, 0), xi3 != 0."""
    xi1, xi2, xi3, xi4 = coords
    if xi4:
        raise ValueError("vertex must lie on the chart K' = 0")
    if not xi3:
        raise ValueError("cone is undefined when the K-coordinate vanishes")
    kp2 = ctx.kappa * ctx.kappa
    p = CPoly(VARS, {
        (0, 1, 1, 0): xi1,
        (1, 0, 1, 0): xi2,
        (1, 1, 0, 0): -xi3,
        (0, 0, 2, 0): xi3 * kp2,
        (0, 0, 0, 2): -xi3 * kp2,
    })
    return quadric_from_poly(p)


def cone_report(ctx: ParameterContext) -> dict:
    """Gradient vanishes at the vertex; the other conic lies on the cone."""
    t = ctx.transcendental("t_cone")
    kp = ctx.kappa
    vertex = [kp * t * t, -kp, t, RF_ZERO]
    qd = cone_at_conic_point(vertex, ctx)
    p = qd.poly()
    grad_zero = all(not p.derivative(v).evaluate(vertex) for v in VARS)
    s = ctx.transcendental("s_cone")
    other_conic = [kp * s * s, -kp, RF_ZERO, s]
    contains_other = not p.evaluate(other_conic)
    vertex_value = not p.evaluate(vertex)
    return {
        "passed": grad_zero and contains_other and vertex_value,
        "gradient_vanishes_at_vertex": grad_zero,
        "other_conic_on_cone": contains_other,
    }


# ---------------------------------------------------------------------------
# base locus / pencil completeness
# ---------------------------------------------------------------------------

def base_locus_report(ctx: ParameterContext) -> dict:
    """Degree-2 part of (Q(l1), Q(l2)) equals span{KK', kappa^-2 EF + K^2 + K'^2}
    for two generic pencil members, and the space of quadrics through both
    conics is exactly 2-dimensional."""
    l1, l2 = ctx.rat(2), ctx.rat(5)
    g1 = pencil_poly(l1, ctx)
    g2 = pencil_poly(l2, ctx)
    target = [
        CPoly(VARS, {(0, 0, 1, 1): RF_ONE}),
        CPoly(VARS, {(1, 1, 0, 0): (ctx.kappa ** 2).inv(), (0, 0, 2, 0): RF_ONE,
                     (0, 0, 0, 2): RF_ONE}),
    ]
    basis = monomials(VARS, 2)
    def rows(polys):
        return [[p.terms.get(e, RF_ZERO) for e in basis] for p in polys]
    same = rref(rows([g1, g2]), len(basis)) == rref(rows(target), len(basis))

    # quadrics through both conics: condition matrix from the coefficients of
    # each t-power of Q(point(t)) along both parametrizations
    t = ctx.transcendental("t_bl")
    kp = ctx.kappa
    cond_rows = []
    for pt in ([kp * t * t, -kp, t, RF_ZERO], [kp * t * t, -kp, RF_ZERO, t]):
        values = []
        for e in basis:
            mono = CPoly(VARS, {e: RF_ONE})
            values.append(mono.evaluate(pt))
        # each value is a polynomial in t of degree <= 4
        for power in range(5):
            row = [_coeff_in_t(vv, "t_bl", power) for vv in values]
            if any(row):
                cond_rows.append(row)
    dim = len(basis) - rank(cond_rows, len(basis))
    return {
        "passed": same and dim == 2,
        "base_locus_degree2_matches": same,
        "quadrics_through_both_conics_dim": dim,
    }


def _coeff_in_t(x: RationalFunction, var: str, power: int) -> RationalFunction:
    if x.den.degree_in(var):
        raise ValueError("value not polynomial in t")
    num = _extract_single(x.num, var, power)
    return RationalFunction(num, x.den)


def _extract_single(num, var, power):
    from .exactfield import MultiPoly
    vs = num.variables
    if var not in vs:
        return num if power == 0 else MultiPoly(vs, {})
    vi = vs.index(var)
    keep = tuple(v for k, v in enumerate(vs) if k != vi)
    terms = {}
    for e, c in num.terms.items():
        if e[vi] == power:
            terms[tuple(x for k, x in enumerate(e) if k != vi)] = c
    return MultiPoly(keep, terms)


# ---------------------------------------------------------------------------
# collinearity invariance on the conic + line plane
# ---------------------------------------------------------------------------

def collinearity_invariance(ctx: ParameterContext, sigma_scale=None) -> dict:
    """On the plane K' = 0: for p, p' generic on the conic and p'' the point
    where their chord meets the line K = 0, the triple (sigma p, sigma^-1 p',
    p'') is again collinear.  `sigma_scale` = (a, b) tests the diagonal
    automorphism (a xi1, b xi2, xi3) instead; non-inverse pairs must fail."""
    kp = ctx.kappa
    q = ctx.q
    t1 = ctx.transcendental("t_c1")
    t2 = ctx.transcendental("t_c2")
    p = [kp * t1 * t1, -kp, t1]
    p2 = [kp * t2 * t2, -kp, t2]
    # chord meets {K = 0} at xi3' p - xi3 p'
    p3 = [p2[2] * a - p[2] * b for a, b in zip(p, p2)]
    a, b = (q, q.inv()) if sigma_scale is None else sigma_scale
    sp = [a * p[0], b * p[1], p[2]]
    sp2 = [a.inv() * p2[0], b.inv() * p2[1], p2[2]]
    d = det([sp, sp2, p3])
    return {"passed": not d, "determinant_zero": not d}
