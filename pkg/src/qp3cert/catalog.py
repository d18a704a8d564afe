"""Constructors for every algebra, distinguished element, and map the
certification suite works with, parametrized by the deformation context.

Generator conventions:
  * the 4-generator family in x-coordinates: x0, x1, x2, x3;
  * the same family in weight coordinates: E, F, K, K' (indices 0..3);
  * its central-extension twist D and the 3-generator quotients A = D/(K')
    on the chart K' = 0 and A' = D/(K) on the chart K = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .exactfield import ParameterContext, RF_I, RF_ONE, RF_ZERO, RationalFunction, rf
from .ncalg import AlgebraMap, NCPoly, QuadraticPresentation

INFINITY = "inf"
LambdaValue = Union[RationalFunction, str]  # field element, "0" handled as rf(0), or "inf"

EFKK_NAMES = ("E", "F", "K", "K'")
X_NAMES = ("x0", "x1", "x2", "x3")


@dataclass
class CatalogEntry:
    name: str
    presentation: Optional[QuadraticPresentation]
    claim_id: str
    data: dict = field(default_factory=dict)


def _gens(n: int):
    return [NCPoly.gen(i) for i in range(n)]


def _com(a, b):
    return a * b - b * a


def _ant(a, b):
    return a * b + b * a


def make(name: str, ctx: ParameterContext,
         sklyanin_params: Optional[Sequence[RationalFunction]] = None) -> CatalogEntry:
    """Build a catalog algebra: S_x, S_EFKK, D, A, A', Sklyanin, Uq."""
    if name == "S_x":
        return CatalogEntry("S_x", _make_S_x(ctx), "S.presentation.x-coordinates")
    if name == "S_EFKK":
        return CatalogEntry("S_EFKK", _make_S_efkk(ctx), "S.presentation.weight-coordinates")
    if name == "D":
        return CatalogEntry("D", _make_D(ctx), "D.presentation")
    if name == "A":
        return CatalogEntry("A", _make_A(ctx), "A.presentation")
    if name == "A'":
        return CatalogEntry("A'", _make_Aprime(ctx), "Aprime.presentation")
    if name == "Sklyanin":
        if sklyanin_params is None:
            raise ValueError("Sklyanin entry needs (alpha, beta, gamma)")
        pres, flags = _make_sklyanin(ctx, *sklyanin_params)
        return CatalogEntry("Sklyanin", pres, "sklyanin.presentation", data=flags)
    if name == "Uq":
        # handled by the PBW rewriting system, not a quadratic presentation
        from .uq import UqAlgebra
        return CatalogEntry("Uq", None, "uq.presentation", data={"algebra": UqAlgebra(ctx)})
    raise ValueError(f"unknown catalog name {name!r}")


def _make_S_x(ctx: ParameterContext) -> QuadraticPresentation:
    x0, x1, x2, x3 = _gens(4)
    b2 = ctx.b * ctx.b
    rels = [
        _com(x0, x1),
        _ant(x0, x1) - _com(x2, x3),
        _com(x0, x2) - _ant(x1, x3).scale(b2),
        _ant(x0, x2) - _com(x3, x1),
        _com(x0, x3) + _ant(x1, x2).scale(b2),
        _ant(x0, x3) - _com(x1, x2),
    ]
    return QuadraticPresentation(X_NAMES, rels, ctx, label="S_x")


def _make_S_efkk(ctx: ParameterContext) -> QuadraticPresentation:
    E, F, K, Kp = _gens(4)
    q, kp = ctx.q, ctx.kappa
    rels = [
        K * E - E.scale(q) * K,
        K * F - F.scale(q.inv()) * K,
        K * Kp - Kp * K,
        Kp * E - E.scale(q.inv()) * Kp,
        Kp * F - F.scale(q) * Kp,
        E * F - F * E + (K * K - Kp * Kp).scale(kp),
    ]
    return QuadraticPresentation(EFKK_NAMES, rels, ctx, label="S")


def _make_D(ctx: ParameterContext) -> QuadraticPresentation:
    E, F, K, Kp = _gens(4)
    q, kp = ctx.q, ctx.kappa
    rels = [
        _com(Kp, E),
        _com(Kp, F),
        _com(Kp, K),
        K * E - E.scale(q * q) * K,
        K * F - F.scale((q * q).inv()) * K,
        (E * F).scale(q) - (F * E).scale(q.inv()) + (K * K - Kp * Kp).scale(kp),
    ]
    return QuadraticPresentation(EFKK_NAMES, rels, ctx, label="D")


def _make_A(ctx: ParameterContext) -> QuadraticPresentation:
    E, F, K = _gens(3)
    q, kp = ctx.q, ctx.kappa
    rels = [
        K * E - E.scale(q * q) * K,
        K * F - F.scale((q * q).inv()) * K,
        (E * F).scale(q) - (F * E).scale(q.inv()) + (K * K).scale(kp),
    ]
    return QuadraticPresentation(("E", "F", "K"), rels, ctx, label="A")


def _make_Aprime(ctx: ParameterContext) -> QuadraticPresentation:
    E, F, Kp = _gens(3)
    q, kp = ctx.q, ctx.kappa
    rels = [
        _com(E, Kp),
        _com(F, Kp),
        (E * F).scale(q) - (F * E).scale(q.inv()) - (Kp * Kp).scale(kp),
    ]
    return QuadraticPresentation(("E", "F", "K'"), rels, ctx, label="A'")


def _make_sklyanin(ctx: ParameterContext, alpha: RationalFunction,
                   beta: RationalFunction, gamma: RationalFunction):
    constraint = alpha + beta + gamma + alpha * beta * gamma
    if constraint:
        raise ValueError("Sklyanin parameters must satisfy a+b+c+abc = 0")
    special = {rf(0), rf(1), rf(-1)}
    degenerate = any(p == s for p in (alpha, beta, gamma) for s in special)
    if degenerate and not (alpha == rf(0) and gamma == -beta
                           and all(beta != s for s in special)):
        # only the (0, beta, -beta) degenerate family is a valid catalog entry
        raise ValueError("degenerate Sklyanin parameters outside the (0, b, -b) family")
    x0, x1, x2, x3 = _gens(4)
    rels = [
        _com(x0, x1) - _ant(x2, x3).scale(alpha),
        _ant(x0, x1) - _com(x2, x3),
        _com(x0, x2) - _ant(x1, x3).scale(beta),
        _ant(x0, x2) - _com(x3, x1),
        _com(x0, x3) - _ant(x1, x2).scale(gamma),
        _ant(x0, x3) - _com(x1, x2),
    ]
    pres = QuadraticPresentation(X_NAMES, rels, ctx, label="Sklyanin")
    return pres, {"degenerate": degenerate, "params": (alpha, beta, gamma)}


# ---------------------------------------------------------------------------
# the coordinate change between the x-form and the weight form
# ---------------------------------------------------------------------------

def coord_change_matrix(ctx: ParameterContext):
    """Rows give (E, F, K, K') as linear combinations of (x0, x1, x2, x3)."""
    i = RF_I
    b = ctx.b
    half_i = i / rf(2)
    one = RF_ONE
    return [
        [RF_ZERO, RF_ZERO, half_i * (one - i * b), half_i * (one - i * b) * i],
        [RF_ZERO, RF_ZERO, half_i * (one + i * b), -half_i * (one + i * b) * i],
        [one, b, RF_ZERO, RF_ZERO],
        [one, -b, RF_ZERO, RF_ZERO],
    ]


def x_to_efkk_map(sx: QuadraticPresentation, s: QuadraticPresentation) -> AlgebraMap:
    """Map from the weight-coordinate presentation into the x-form: each of
    E, F, K, K' is sent to its defining linear combination of the x's."""
    m = coord_change_matrix(sx.ctx)
    images = [NCPoly.linear(row) for row in m]
    return AlgebraMap(s, sx, images, label="weight->x")


def efkk_to_x_map(s: QuadraticPresentation, sx: QuadraticPresentation) -> AlgebraMap:
    """Inverse direction: x generators expressed in E, F, K, K'."""
    from .linalg import inverse
    m = coord_change_matrix(s.ctx)
    minv = inverse(m)
    assert minv is not None
    # (E;F;K;K') = m (x0;..;x3), so x_j = row j of m^-1 applied to (E,F,K,K')
    images = [NCPoly.linear(minv[j]) for j in range(4)]
    return AlgebraMap(sx, s, images, label="x->weight")


# ---------------------------------------------------------------------------
# the central pencil in degree 2
# ---------------------------------------------------------------------------

@dataclass
class CentralFamily:
    """The degree-2 central element attached to a point of the projective line."""
    lam: LambdaValue
    element: NCPoly


def omega(lam: LambdaValue, ctx: ParameterContext,
          pres: Optional[QuadraticPresentation] = None) -> CentralFamily:
    """Central degree-2 element: KK' at 0 and infinity, otherwise

        EF + kappa^2 (q^-1 K^2 + q K'^2) - kappa^2 (q lam + q^-1 lam^-1) KK'.
    """
    E, F, K, Kp = _gens(4)
    if lam == INFINITY or (isinstance(lam, RationalFunction) and lam.is_zero()):
        return CentralFamily(lam, K * Kp)
    if not isinstance(lam, RationalFunction):
        raise ValueError("lambda must be a field element or 'inf'")
    q, kp = ctx.q, ctx.kappa
    kp2 = kp * kp
    elem = (E * F
            + (K * K).scale(kp2 * q.inv())
            + (Kp * Kp).scale(kp2 * q)
            - (K * Kp).scale(kp2 * (q * lam + q.inv() * lam.inv())))
    return CentralFamily(lam, elem)


def omega_second_form(lam: RationalFunction, ctx: ParameterContext) -> NCPoly:
    """EF + kappa^2 (q^-1 K - q lam K')(K - lam^-1 K')."""
    E, F, K, Kp = _gens(4)
    q, kp = ctx.q, ctx.kappa
    left = K.scale(q.inv()) - Kp.scale(q * lam)
    right = K - Kp.scale(lam.inv())
    return E * F + (left * right).scale(kp * kp)


def omega_third_form(lam: RationalFunction, ctx: ParameterContext) -> NCPoly:
    """FE + kappa^2 (q K - q^-1 lam^-1 K')(K - lam K')."""
    E, F, K, Kp = _gens(4)
    q, kp = ctx.q, ctx.kappa
    left = K.scale(q) - Kp.scale(q.inv() * lam.inv())
    right = K - Kp.scale(lam)
    return F * E + (left * right).scale(kp * kp)


def casimir_shift(lam: RationalFunction, ctx: ParameterContext) -> RationalFunction:
    """(q lam + q^-1 lam^-1) / (q - q^-1)^2, the scalar tying the central
    pencil to the Casimir element."""
    q = ctx.q
    return (q * lam + q.inv() * lam.inv()) * (ctx.kappa * ctx.kappa)


# ---------------------------------------------------------------------------
# distinguished automorphisms / endomorphisms of the weight-form algebra
# ---------------------------------------------------------------------------

def twist_diagonal(ctx: ParameterContext):
    """The diagonal (q^-1, q, 1, 1) on (E, F, K, K') whose twist produces D."""
    return [ctx.q.inv(), ctx.q, RF_ONE, RF_ONE]


def theta_map(s: QuadraticPresentation) -> AlgebraMap:
    """K -> -K, fixing E, F, K'."""
    E, F, K, Kp = _gens(4)
    return AlgebraMap(s, s, [E, F, K.scale(rf(-1)), Kp], label="theta")


def scaling_map(s: QuadraticPresentation, eps: RationalFunction) -> AlgebraMap:
    """The degree-scaling automorphism a |-> eps^deg(a) * a."""
    return AlgebraMap(s, s, [NCPoly.gen(g).scale(eps) for g in range(s.ngens)],
                      label="scale")
