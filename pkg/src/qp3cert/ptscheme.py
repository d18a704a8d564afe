"""Multilinearization machinery: successor matrices, point-scheme membership,
recovery of the grading-shift automorphism, and the component catalogs for the
four algebras whose point schemes the suite certifies.

Orientation convention: for a point p realized by the first module step, the
kernel of the successor matrix consists of the admissible second-step
coordinate vectors, i.e. the kernel at p is spanned by sigma^-1(p).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from .cpoly import CPoly
from .exactfield import ParameterContext, RF_ONE, RF_ZERO, RationalFunction, rf
from .linalg import nullspace, rank
from .ncalg import QuadraticPresentation


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple
    basis_tag: str = "EFKK'"

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("projective point needs a nonzero coordinate vector")

    def __iter__(self):
        return iter(self.coords)

    def projectively_equal(self, other: "ProjPoint") -> bool:
        return projectively_equal(self.coords, other.coords)


def projectively_equal(a: Sequence[RationalFunction], b: Sequence[RationalFunction]) -> bool:
    if len(a) != len(b):
        return False
    for i in range(len(a)):
        for j in range(len(a)):
            if a[i] * b[j] != a[j] * b[i]:
                return False
    return True


@dataclass
class SchemeComponent:
    """A rationally parametrized component of a point scheme.

    `parametrize(t)` yields coordinates; for 0-dimensional components the
    parameter is ignored.  `sigma` / `sigma_inv` act coordinatewise.
    """
    name: str
    dim: int
    variables: tuple
    defining_ideal: List[CPoly]
    parametrization: Callable[[RationalFunction], list]
    sigma: Callable[[list], list]
    sigma_inv: Callable[[list], list]

    def parametrize(self, t: RationalFunction) -> list:
        return self.parametrization(t)

    def generic_point(self, ctx: ParameterContext, var: str = "t") -> list:
        return self.parametrization(ctx.transcendental(var))

    def contains(self, coords: Sequence[RationalFunction]) -> bool:
        return all(not g.evaluate(list(coords)) for g in self.defining_ideal)

    def check_parametrization(self, ctx: ParameterContext) -> bool:
        p = self.generic_point(ctx, "t_check")
        return all(not g.evaluate(p) for g in self.defining_ideal)

    def sigma_orbit_inv(self, coords: Sequence[RationalFunction], steps: int) -> List[list]:
        """[p, sigma^-1 p, ..., sigma^-steps p]."""
        out = [list(coords)]
        for _ in range(steps):
            out.append(self.sigma_inv(out[-1]))
        return out


# ---------------------------------------------------------------------------
# successor matrices
# ---------------------------------------------------------------------------

def successor_matrix(pres: QuadraticPresentation, coords: Sequence[RationalFunction]):
    """Rows indexed by relations, columns by generators: entry (r, i) is
    sum_j c^(r)_(i,j) p_j for the relation sum c_(i,j) g_i g_j.

    A vector xi is in the kernel iff (xi as step-2, p as step-1) kills every
    relation, so ker = span{sigma^-1(p)} on the point scheme.
    """
    if not any(coords):
        raise ValueError("successor matrix needs a nonzero point")
    rows = []
    for r in pres.relations:
        row = [RF_ZERO] * pres.ngens
        for (i, j), c in r.coeff_pairs().items():
            row[i] = row[i] + c * coords[j]
        rows.append(row)
    return rows


def successor_kernel(pres: QuadraticPresentation, coords: Sequence[RationalFunction]):
    return nullspace(successor_matrix(pres, coords), pres.ngens)


def on_point_scheme(pres: QuadraticPresentation, coords: Sequence[RationalFunction],
                    depth: int = 3) -> bool:
    """True iff the successor kernel stays nonzero through `depth` iterations."""
    cur = list(coords)
    for _ in range(depth):
        ker = successor_kernel(pres, cur)
        if not ker:
            return False
        cur = ker[0]
        if not any(cur):
            return False
    return True


# ---------------------------------------------------------------------------
# component verification
# ---------------------------------------------------------------------------

@dataclass
class ComponentReport:
    component: str
    passed: bool
    kernel_dim: int
    detail: dict = field(default_factory=dict)


def verify_component(pres: QuadraticPresentation, comp: SchemeComponent,
                     ctx: ParameterContext) -> ComponentReport:
    """Generic point of the component has a 1-dimensional successor kernel."""
    if not comp.check_parametrization(ctx):
        return ComponentReport(comp.name, False, -1,
                               {"error": "parametrization violates defining ideal"})
    p = comp.generic_point(ctx)
    ker = successor_kernel(pres, p)
    return ComponentReport(comp.name, len(ker) == 1, len(ker))


def verify_sigma(pres: QuadraticPresentation, comp: SchemeComponent,
                 ctx: ParameterContext,
                 claimed_sigma_inv: Optional[Callable[[list], list]] = None) -> ComponentReport:
    """The successor kernel at the generic point equals span{sigma^-1(p)}."""
    p = comp.generic_point(ctx)
    ker = successor_kernel(pres, p)
    if len(ker) != 1:
        return ComponentReport(comp.name, False, len(ker),
                               {"error": "ambiguous successor at generic point"})
    inv = claimed_sigma_inv or comp.sigma_inv
    expected = inv(p)
    ok = projectively_equal(ker[0], expected)
    rep = ComponentReport(comp.name, ok, 1)
    if ok:
        # cross-check: sigma(sigma_inv(p)) == p projectively
        back = comp.sigma(expected) if claimed_sigma_inv is None else None
        if back is not None:
            rep.detail["sigma_roundtrip"] = projectively_equal(back, p)
            rep.passed = rep.passed and rep.detail["sigma_roundtrip"]
    return rep


# ---------------------------------------------------------------------------
# component catalogs
# ---------------------------------------------------------------------------

EFKK_VARS = ("E", "F", "K", "K'")


def _cp(vars, expr_terms):
    return CPoly(vars, expr_terms)


def _conic_poly(vars, ctx, which: str) -> CPoly:
    """EF + kappa^2 * (K or K')^2 in the given 4 (or 3) variable names."""
    kp2 = ctx.kappa * ctx.kappa
    n = len(vars)
    eE = tuple(1 if v == "E" else 0 for v in vars)
    eF = tuple(1 if v == "F" else 0 for v in vars)
    ef = tuple(x + y for x, y in zip(eE, eF))
    sq = tuple(2 if v == which else 0 for v in vars)
    return CPoly(vars, {ef: RF_ONE, sq: kp2})


def _linear_poly(vars, name) -> CPoly:
    return CPoly(vars, {tuple(1 if v == name else 0 for v in vars): RF_ONE})


def _diag_map(scalars):
    def apply(coords):
        return [s * c for s, c in zip(scalars, coords)]
    return apply


def point_scheme_S(ctx: ParameterContext) -> List[SchemeComponent]:
    """Components of the point scheme of the weight-form algebra: two plane
    conics meeting at two points, the line through those points, and the two
    cone vertices."""
    q = ctx.q
    kp = ctx.kappa
    v = EFKK_VARS
    one = RF_ONE
    zero = RF_ZERO

    conicC = _conic_poly(v, ctx, "K")
    conicCp = _conic_poly(v, ctx, "K'")
    K = _linear_poly(v, "K")
    Kp = _linear_poly(v, "K'")

    comps = [
        SchemeComponent(
            "C", 1, v, [conicC, Kp],
            lambda t: [kp * t * t, -kp, t, zero],
            _diag_map([q, q.inv(), one, one]),
            _diag_map([q.inv(), q, one, one]),
        ),
        SchemeComponent(
            "C'", 1, v, [conicCp, K],
            lambda t: [kp * t * t, -kp, zero, t],
            _diag_map([q.inv(), q, one, one]),
            _diag_map([q, q.inv(), one, one]),
        ),
        SchemeComponent(
            "L", 1, v, [K, Kp],
            lambda t: [t, one, zero, zero],
            lambda c: list(c),
            lambda c: list(c),
        ),
        SchemeComponent(
            "pt(0,0,1,1)", 0, v,
            [_linear_poly(v, "E"), _linear_poly(v, "F"),
             CPoly(v, {(0, 0, 1, 0): one, (0, 0, 0, 1): rf(-1)})],
            lambda t: [zero, zero, one, one],
            lambda c: list(c), lambda c: list(c),
        ),
        SchemeComponent(
            "pt(0,0,1,-1)", 0, v,
            [_linear_poly(v, "E"), _linear_poly(v, "F"),
             CPoly(v, {(0, 0, 1, 0): one, (0, 0, 0, 1): one})],
            lambda t: [zero, zero, one, -one],
            lambda c: list(c), lambda c: list(c),
        ),
    ]
    return comps


def point_scheme_D(ctx: ParameterContext) -> List[SchemeComponent]:
    """Same support as the weight-form scheme, with the twisted automorphism."""
    q = ctx.q
    one = RF_ONE
    comps = point_scheme_S(ctx)
    out = []
    for c in comps:
        if c.name == "C":
            c = SchemeComponent(c.name, c.dim, c.variables, c.defining_ideal,
                                c.parametrization,
                                _diag_map([q * q, (q * q).inv(), one, one]),
                                _diag_map([(q * q).inv(), q * q, one, one]))
        elif c.name == "C'":
            c = SchemeComponent(c.name, c.dim, c.variables, c.defining_ideal,
                                c.parametrization,
                                lambda x: list(x), lambda x: list(x))
        elif c.name == "L":
            c = SchemeComponent(c.name, c.dim, c.variables, c.defining_ideal,
                                c.parametrization,
                                _diag_map([q, q.inv(), one, one]),
                                _diag_map([q.inv(), q, one, one]))
        out.append(c)
    return out


def point_scheme_A(ctx: ParameterContext) -> List[SchemeComponent]:
    """Plane scheme of the 3-generator quotient on the chart K' = 0:
    the line K = 0 plus a smooth conic."""
    q = ctx.q
    kp = ctx.kappa
    v = ("E", "F", "K")
    one, zero = RF_ONE, RF_ZERO
    conic = _conic_poly(v, ctx, "K")
    return [
        SchemeComponent(
            "A-conic", 1, v, [conic],
            lambda t: [kp * t * t, -kp, t],
            _diag_map([q * q, (q * q).inv(), one]),
            _diag_map([(q * q).inv(), q * q, one]),
        ),
        SchemeComponent(
            "A-line", 1, v, [_linear_poly(v, "K")],
            lambda t: [t, one, zero],
            _diag_map([q, q.inv(), one]),
            _diag_map([q.inv(), q, one]),
        ),
    ]


def point_scheme_Aprime(ctx: ParameterContext) -> List[SchemeComponent]:
    """Plane scheme of the 3-generator quotient on the chart K = 0.

    The automorphism is the identity on the conic; on the line K' = 0 the
    successor computation gives (q xi1, q^-1 xi2, 0) (the printed statement
    transposes the two coordinates; certificates record the computed form).
    """
    q = ctx.q
    kp = ctx.kappa
    v = ("E", "F", "K'")
    one, zero = RF_ONE, RF_ZERO
    conic = _conic_poly(v, ctx, "K'")
    return [
        SchemeComponent(
            "A'-conic", 1, v, [conic],
            lambda t: [kp * t * t, -kp, t],
            lambda c: list(c), lambda c: list(c),
        ),
        SchemeComponent(
            "A'-line", 1, v, [_linear_poly(v, "K'")],
            lambda t: [t, one, zero],
            _diag_map([q, q.inv(), one]),
            _diag_map([q.inv(), q, one]),
        ),
    ]


def phi_on_points(ctx: ParameterContext):
    """Coordinate action of the twisting automorphism on projective points:
    (xi1, xi2, xi3, xi4) -> (q xi1, q^-1 xi2, xi3, xi4)."""
    q = ctx.q
    return _diag_map([q, q.inv(), RF_ONE, RF_ONE])


def locate(scheme: List[SchemeComponent], coords: Sequence[RationalFunction]) -> Optional[SchemeComponent]:
    for comp in scheme:
        if comp.contains(coords):
            return comp
    return None


# ---------------------------------------------------------------------------
# equation systems for the twisted algebra's point scheme
# ---------------------------------------------------------------------------

def pd_equation_systems(ctx: ParameterContext) -> dict:
    """The two chart systems cutting out the twisted algebra's point scheme,
    plus the identities tying them to the 3x3 multilinearization matrix.

    Returns a report dict; 'passed' is True iff every identity holds.
    """
    from .linalg import det as _det
    from .catalog import make
    from .ncalg import NCPoly

    v = EFKK_VARS
    q, kp = ctx.q, ctx.kappa
    one = RF_ONE

    def cp(terms):
        return CPoly(v, terms)

    E = _linear_poly(v, "E")
    F = _linear_poly(v, "F")
    K = _linear_poly(v, "K")
    Kp = _linear_poly(v, "K'")

    # noncommutative g-vector of the central extension, abelianized
    ncE, ncF, ncK, ncKp = (NCPoly.gen(i) for i in range(4))
    g_nc = [
        (ncK * ncF).scale(-(q ** 3)) + (ncF * ncK).scale(q),
        (ncK * ncE).scale(q ** -3) - (ncE * ncK).scale(q.inv()),
        (ncE * ncF).scale(q) - (ncF * ncE).scale(q.inv())
        + (ncK * ncK).scale(kp) - (ncKp * ncKp).scale(kp),
    ]
    g_comm = [CPoly(v, {e: c for e, c in p.abelianized_terms(4).items()}) for p in g_nc]

    # displayed commutative forms
    g_displayed = [
        (F * K).scale(q - q ** 3),
        (E * K).scale(q ** -3 - q.inv()),
        (E * F).scale(-kp.inv()) + (K * K).scale(kp) - (Kp * Kp).scale(kp),
    ]
    g_scaled = [
        (F * K).scale(kp.inv() * q * q),
        (E * K).scale(kp.inv() * q ** -2),
        ((E * F).scale(-one) + (K * K - Kp * Kp).scale(kp * kp)).scale(kp.inv()),
    ]
    check_a = all(g_comm[i] == g_displayed[i] == g_scaled[i] for i in range(3))

    # 3x3 matrix M with f = M x over the quotient chart
    M = [
        [CPoly.zero(v), K.scale(-(q ** 3)), F.scale(q)],
        [K.scale(q ** -3), CPoly.zero(v), E.scale(-q.inv())],
        [F.scale(-q.inv()), E.scale(q), K.scale(kp)],
    ]
    detM = _det_cpoly(M)
    det_expected = (K * K).scale(kp) + (E * F).scale(kp.inv())
    det_expected = det_expected * K
    check_det = detM == det_expected

    # h_i = x_i det(M) + K'^2 det(M with column i replaced by alpha)
    alpha = [CPoly.zero(v), CPoly.zero(v), CPoly.const(v, -kp)]
    xs = [E, F, K]
    hs = []
    for i in range(3):
        cols = [[M[r][c] for r in range(3)] for c in range(3)]
        cols[i] = alpha
        rep = [[cols[c][r] for c in range(3)] for r in range(3)]
        hs.append(xs[i] * detM + (Kp * Kp) * _det_cpoly(rep))
    h_displayed = [
        (E * K) * ((K * K).scale(kp) + (E * F).scale(kp.inv())) - (Kp * Kp * E * K).scale(kp * q * q),
        (F * K) * ((K * K).scale(kp) + (E * F).scale(kp.inv())) - (Kp * Kp * F * K).scale(kp * q ** -2),
        (K * K) * ((K * K).scale(kp) + (E * F).scale(kp.inv())) - (Kp * Kp * K * K).scale(kp),
    ]
    check_h = all(hs[i] == h_displayed[i] for i in range(3))

    # each component annihilates the system of an appropriate chart
    comps = point_scheme_S(ctx)
    by_name = {c.name: c for c in comps}
    kp_g = [Kp * g for g in g_comm]
    results = {}

    def vanishes(polys, pt):
        return all(not p.evaluate(pt) for p in polys)

    t = ctx.transcendental("t_pd")
    results["C' kills g-system"] = vanishes(g_comm, by_name["C'"].parametrize(t))
    results["pt(0,0,1,1) kills g-system"] = vanishes(g_comm, by_name["pt(0,0,1,1)"].parametrize(t))
    results["pt(0,0,1,-1) kills g-system"] = vanishes(g_comm, by_name["pt(0,0,1,-1)"].parametrize(t))
    pC = by_name["C"].parametrize(t)
    results["C kills K'-cleared system + h"] = vanishes(kp_g + hs, pC)
    pL = by_name["L"].parametrize(t)
    results["L kills K'-cleared system + h"] = vanishes(kp_g + hs, pL)

    passed = check_a and check_det and check_h and all(results.values())
    return {
        "passed": passed,
        "commutative g-vector matches displays": check_a,
        "det(M) = (kappa K^2 + kappa^-1 EF) K": check_det,
        "h_i = x_i det(M) + K'^2 det(replaced)": check_h,
        **results,
    }


def _det_cpoly(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


# ---------------------------------------------------------------------------
# minor vanishing evidence
# ---------------------------------------------------------------------------

def minors_containment(pres: QuadraticPresentation, scheme: List[SchemeComponent],
                       ctx: ParameterContext, rng, off_samples: int = 20) -> dict:
    """All 4x4 minors of the 6x4 successor matrix vanish identically on each
    component; at sampled points off the union some minor is nonzero."""
    from itertools import combinations
    from .linalg import det as _det

    report = {"components": {}, "off_scheme_nonzero": 0, "passed": True}
    for comp in scheme:
        p = comp.generic_point(ctx, "t_minor")
        m = successor_matrix(pres, p)
        ok = True
        for rows in combinations(range(len(m)), 4):
            sub = [m[r] for r in rows]
            if _det(sub):
                ok = False
                break
        report["components"][comp.name] = ok
        report["passed"] = report["passed"] and ok
    found = 0
    tries = 0
    while found < off_samples and tries < 20 * off_samples:
        tries += 1
        coords = [ctx.rat(rng.randint(-9, 9)) for _ in range(pres.ngens)]
        if not any(coords):
            continue
        if any(comp.contains(coords) for comp in scheme):
            continue
        m = successor_matrix(pres, coords)
        nonzero = False
        for rows in combinations(range(len(m)), 4):
            if _det([m[r] for r in rows]):
                nonzero = True
                break
        if not nonzero:
            report["passed"] = False
            report["bad_point"] = [repr(c) for c in coords]
            return report
        found += 1
    report["off_scheme_nonzero"] = found
    report["passed"] = report["passed"] and found >= off_samples
    return report
