"""The quantized enveloping algebra of sl2 as a rewriting system with PBW
normal form f^a k^b e^c (a, c >= 0, b in Z), plus Verma truncations, the
Casimir element, the finite-dimensional simples, and the degree-0
localization dictionary that ties the weight-form algebra to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .exactfield import ParameterContext, RF_ONE, RF_ZERO, RationalFunction, rf
from .linalg import identity, mat_mul, mat_vec, nullspace, rref, solve
from .ncalg import NCPoly

# PBW monomial: (a, b, c) <-> f^a k^b e^c
Mono = Tuple[int, int, int]


class UqElement:
    """Element in PBW coordinates {(a, b, c): coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Mono, RationalFunction]):
        object.__setattr__(self, "terms", {m: c for m, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("UqElement is immutable")

    def __add__(self, other):
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return UqElement(t)

    def __neg__(self):
        return UqElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: RationalFunction):
        if not c:
            return UqElement({})
        return UqElement({m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, UqElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        def mono(m):
            a, b, c = m
            parts = []
            if a:
                parts.append(f"f^{a}" if a > 1 else "f")
            if b:
                parts.append(f"k^{b}" if b != 1 else "k")
            if c:
                parts.append(f"e^{c}" if c > 1 else "e")
            return "*".join(parts) or "1"
        return " + ".join(f"({c})*{mono(m)}" for m, c in sorted(self.terms.items()))


class UqAlgebra:
    """Multiplication engine for the PBW normal form.

    Straightening rules: k e = q^2 e k, k f = q^-2 f k, k k^-1 = 1 and
    e f = f e + (k - k^-1)/(q - q^-1).
    """

    def __init__(self, ctx: ParameterContext):
        self.ctx = ctx
        self.q = ctx.q
        self._ef_cache: Dict[Tuple[int, int], UqElement] = {}

    # -- constructors -----------------------------------------------------
    def zero(self) -> UqElement:
        return UqElement({})

    def one(self) -> UqElement:
        return UqElement({(0, 0, 0): RF_ONE})

    def monomial(self, a: int, b: int, c: int, coeff: RationalFunction = RF_ONE) -> UqElement:
        return UqElement({(a, b, c): coeff})

    @property
    def e(self):
        return self.monomial(0, 0, 1)

    @property
    def f(self):
        return self.monomial(1, 0, 0)

    @property
    def k(self):
        return self.monomial(0, 1, 0)

    @property
    def k_inv(self):
        return self.monomial(0, -1, 0)

    # -- multiplication ----------------------------------------------------
    def mul(self, x: UqElement, y: UqElement) -> UqElement:
        out: Dict[Mono, RationalFunction] = {}
        for ma, ca in x.terms.items():
            for mb, cb in y.terms.items():
                prod = self._mul_mono(ma, mb)
                c = ca * cb
                for m, v in prod.terms.items():
                    s = out.get(m)
                    s = v * c if s is None else s + v * c
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
        return UqElement(out)

    def _mul_mono(self, ma: Mono, mb: Mono) -> UqElement:
        # (f^a k^b e^c)(f^a2 k^b2 e^c2): straighten e^c f^a2, then cross the
        # surviving k-powers:  k^b f^fa = q^(-2 b fa) f^fa k^b  and
        # e^ec k^b2 = q^(-2 ec b2) k^b2 e^ec.
        a, b, c = ma
        a2, b2, c2 = mb
        ef = self._ef(c, a2)  # e^c f^a2 in normal form
        out: Dict[Mono, RationalFunction] = {}
        for (fa, kb, ec), v in ef.terms.items():
            coeff = v * self.q ** (-2 * b * fa - 2 * ec * b2)
            m = (a + fa, kb + b + b2, ec + c2)
            s = out.get(m)
            s = coeff if s is None else s + coeff
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return UqElement(out)

    def _ef(self, c: int, a: int) -> UqElement:
        """Normal form of e^c f^a."""
        if c == 0 or a == 0:
            return self.monomial(a, 0, c)
        key = (c, a)
        if key in self._ef_cache:
            return self._ef_cache[key]
        # e^c f^a = e^(c-1) (e f) f^(a-1)
        #         = e^(c-1) f (e f^(a-1)) + e^(c-1) (k - k^-1)/(q - q^-1) f^(a-1)
        kappa_inv = (self.q - self.q.inv()).inv()
        inner = self._ef(1, a - 1)                      # e f^(a-1)
        t1 = self.mul(self.monomial(1, 0, 0), inner)    # f e f^(a-1)
        t1 = self.mul(self.monomial(0, 0, c - 1), t1)   # e^(c-1) f e f^(a-1)
        h = (self.monomial(0, 1, 0, kappa_inv)
             + self.monomial(0, -1, 0, -kappa_inv))     # (k - k^-1)/(q-q^-1)
        t2 = self.mul(h, self.monomial(a - 1, 0, 0))
        t2 = self.mul(self.monomial(0, 0, c - 1), t2)
        out = t1 + t2
        self._ef_cache[key] = out
        return out

    def normal_form(self, word: Sequence[str]) -> UqElement:
        """Normal form of a word in the letters e, f, k, K (K = k^-1)."""
        gens = {"e": self.e, "f": self.f, "k": self.k, "K": self.k_inv}
        out = self.one()
        for ch in word:
            out = self.mul(out, gens[ch])
        return out

    def commutator(self, x: UqElement, y: UqElement) -> UqElement:
        return self.mul(x, y) - self.mul(y, x)

    # -- Casimir -----------------------------------------------------------
    def casimir(self) -> UqElement:
        """ef + (q^-1 k + q k^-1)/(q - q^-1)^2 in normal form."""
        q = self.q
        kp2 = ((q - q.inv()) ** 2).inv()
        return (self.mul(self.e, self.f).scale(RF_ONE)
                + self.monomial(0, 1, 0, q.inv() * kp2)
                + self.monomial(0, -1, 0, q * kp2))

    def casimir_second_form(self) -> UqElement:
        q = self.q
        kp2 = ((q - q.inv()) ** 2).inv()
        return (self.mul(self.f, self.e)
                + self.monomial(0, 1, 0, q * kp2)
                + self.monomial(0, -1, 0, q.inv() * kp2))

    def casimir_scalar(self, lam: RationalFunction) -> RationalFunction:
        q = self.q
        return (q * lam + q.inv() * lam.inv()) / (q - q.inv()) ** 2


# ---------------------------------------------------------------------------
# Verma truncations and finite-dimensional simples
# ---------------------------------------------------------------------------

class VermaTruncation:
    """Window m_0 .. m_depth of the highest-weight module with k m_0 = lam m_0.

    Action matrices are derived from the rewriting system itself: x * f^i m_0
    is normal_form(x f^i) evaluated with e |-> 0 on the right, k |-> lam.
    The f-action loses the top basis vector (truncation edge).
    """

    def __init__(self, alg: UqAlgebra, lam: RationalFunction, depth: int):
        self.alg = alg
        self.lam = lam
        self.depth = depth
        self.dim = depth + 1
        self.e_mat = self._action(alg.e)
        self.f_mat = self._action(alg.f)
        self.k_mat = self._action(alg.k)
        self.k_inv_mat = self._action(alg.k_inv)

    def _eval_on_generator(self, x: UqElement):
        """Coordinates of x m_0 on m_0..m_depth (None if it escapes)."""
        out = [RF_ZERO] * self.dim
        for (a, b, c), v in x.terms.items():
            if c:
                continue  # e m_0 = 0
            if a > self.depth:
                return None
            out[a] = out[a] + v * (self.lam ** b)
        return out

    def _action(self, x: UqElement):
        mat = [[RF_ZERO] * self.dim for _ in range(self.dim)]
        ok_cols = self.dim
        for i in range(self.dim):
            xi = self.alg.mul(x, self.alg.monomial(i, 0, 0))
            col = self._eval_on_generator(xi)
            if col is None:
                ok_cols = min(ok_cols, i)
                continue
            for r in range(self.dim):
                mat[r][i] = col[r]
        # columns >= ok_cols may be unreliable for f (truncation edge)
        self._last_reliable = ok_cols - 1
        return mat

    def k_eigenvalues(self):
        return [self.lam * self.alg.q ** (-2 * i) for i in range(self.dim)]

    def relation_defects(self):
        """Matrix norms (nonzero entries) of the defining relations evaluated
        on the window, away from the truncation edge."""
        alg = self.alg
        q = alg.q
        ke = mat_mul(self.k_mat, self.e_mat)
        ek = mat_mul(self.e_mat, self.k_mat)
        kf = mat_mul(self.k_mat, self.f_mat)
        fk = mat_mul(self.f_mat, self.k_mat)
        ef = mat_mul(self.e_mat, self.f_mat)
        fe = mat_mul(self.f_mat, self.e_mat)
        kki = mat_mul(self.k_mat, self.k_inv_mat)
        kappa_inv = (q - q.inv()).inv()
        rel1 = _mat_sub(ke, _mat_scale(ek, q * q))
        rel2 = _mat_sub(kf, _mat_scale(fk, (q * q).inv()))
        rel3 = _mat_sub(_mat_sub(ef, fe),
                        _mat_scale(_mat_sub(self.k_mat, self.k_inv_mat), kappa_inv))
        rel4 = _mat_sub(kki, identity(self.dim))
        # ignore the last column/row (edge effects of the truncated f)
        cut = self.dim - 1
        def defect(m):
            return sum(1 for r in range(cut) for c in range(cut) if m[r][c])
        return [defect(m) for m in (rel1, rel2, rel3, rel4)]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_scale(a, c):
    return [[x * c for x in r] for r in a]


@dataclass
class SimpleRep:
    """The (n+1)-dimensional simple module with k m_i = sign q^(n-2i) m_i."""
    n: int
    sign: int
    ctx: ParameterContext

    def __post_init__(self):
        q = self.ctx.q
        n = self.n
        d = n + 1
        sgn = rf(self.sign)
        self.dim = d
        self.k_mat = [[q ** (n - 2 * i) * sgn if i == j else RF_ZERO
                       for j in range(d)] for i in range(d)]
        self.k_inv_mat = [[(q ** (n - 2 * i) * sgn).inv() if i == j else RF_ZERO
                           for j in range(d)] for i in range(d)]
        self.f_mat = [[RF_ONE if i == j + 1 else RF_ZERO for j in range(d)] for i in range(d)]
        e = [[RF_ZERO] * d for _ in range(d)]
        for i in range(1, d):
            e[i - 1][i] = sgn * self.ctx.quantum_integer(i) * self.ctx.quantum_integer(n + 1 - i)
        self.e_mat = e

    def relation_defects(self):
        q = self.ctx.q
        kappa_inv = (q - q.inv()).inv()
        rel1 = _mat_sub(mat_mul(self.k_mat, self.e_mat),
                        _mat_scale(mat_mul(self.e_mat, self.k_mat), q * q))
        rel2 = _mat_sub(mat_mul(self.k_mat, self.f_mat),
                        _mat_scale(mat_mul(self.f_mat, self.k_mat), (q * q).inv()))
        rel3 = _mat_sub(_mat_sub(mat_mul(self.e_mat, self.f_mat),
                                 mat_mul(self.f_mat, self.e_mat)),
                        _mat_scale(_mat_sub(self.k_mat, self.k_inv_mat), kappa_inv))
        return [sum(1 for r in m for x in r if x) for m in (rel1, rel2, rel3)]


# ---------------------------------------------------------------------------
# BGG certificate
# ---------------------------------------------------------------------------

def bgg_report(n: int, sign: int, ctx: ParameterContext, depth: Optional[int] = None) -> dict:
    """In the Verma of highest weight sign*q^n: f^(n+1) m_0 is singular, the
    submodule it generates is the Verma of weight sign*q^(-n-2) (as a
    truncation), and the quotient is the (n+1)-dimensional simple."""
    alg = UqAlgebra(ctx)
    q = ctx.q
    lam = q ** n * rf(sign)
    depth = depth if depth is not None else n + 4
    M = VermaTruncation(alg, lam, depth)
    ok_rel = all(d == 0 for d in M.relation_defects())

    # e kills f^(n+1) m_0
    w = alg.mul(alg.e, alg.monomial(n + 1, 0, 0))
    vec = M._eval_on_generator(w)
    singular = vec is not None and not any(vec)

    # submodule generated by f^(n+1) m_0 is spanned by m_(n+1), ..., m_depth
    # with the weight of the new generator equal to sign*q^(-n-2)
    lam2 = q ** (-n - 2) * rf(sign)
    sub_weight_ok = (M.k_eigenvalues()[n + 1] == lam2)

    # compare the submodule window with the Verma of weight lam2: the map
    # m'_i -> m_(n+1+i) must intertwine e, f, k away from the edge
    M2 = VermaTruncation(alg, lam2, depth - (n + 1))
    inter_ok = True
    for i in range(M2.dim - 1):
        for (mat2, mat) in ((M2.k_mat, M.k_mat), (M2.f_mat, M.f_mat), (M2.e_mat, M.e_mat)):
            col_small = [mat2[r][i] for r in range(M2.dim)]
            col_big = [mat[n + 1 + r][n + 1 + i] if n + 1 + r < M.dim else RF_ZERO
                       for r in range(M2.dim)]
            # e maps m_(n+1+i) partially into the quotient part: only rows in
            # the submodule window are compared, and e's row below the window
            # must vanish (singularity of the generator handles i = 0)
            if col_small != col_big:
                inter_ok = False
    # e must not leak out of the submodule: row n of column n+1 is zero
    no_leak = not M.e_mat[n][n + 1]

    # quotient on m_0..m_n matches the simple rep up to diagonal rescaling
    L = SimpleRep(n, sign, ctx)
    quo_k = [[M.k_mat[r][c] for c in range(n + 1)] for r in range(n + 1)]
    quo_f = [[M.f_mat[r][c] for c in range(n + 1)] for r in range(n + 1)]
    quo_e = [[M.e_mat[r][c] for c in range(n + 1)] for r in range(n + 1)]
    iso = _diagonal_intertwiner((quo_e, quo_f, quo_k), (L.e_mat, L.f_mat, L.k_mat), n + 1)

    passed = ok_rel and singular and sub_weight_ok and inter_ok and no_leak and iso
    return {
        "passed": passed,
        "relations_vanish_on_window": ok_rel,
        "singular_vector": singular,
        "sub_highest_weight": sub_weight_ok,
        "sub_is_shifted_verma": inter_ok and no_leak,
        "quotient_is_simple_rep": iso,
    }


def _diagonal_intertwiner(mats_a, mats_b, dim) -> bool:
    """Is there a diagonal change of basis taking the first action triple to
    the second?  (Both triples act on weight bases ordered the same way.)"""
    # solve for d_i: d A = B d entrywise for each action matrix
    # unknowns d_0..d_(dim-1); conditions: d_r A[r][c] = B[r][c] d_c
    rows = []
    for A, B in zip(mats_a, mats_b):
        for r in range(dim):
            for c in range(dim):
                if A[r][c] or B[r][c]:
                    row = [RF_ZERO] * dim
                    row[r] = row[r] + A[r][c]
                    row[c] = row[c] - B[r][c]
                    if r == c:
                        if A[r][c] != B[r][c]:
                            return False
                        continue
                    rows.append(row)
    basis = nullspace(rows, dim)
    for v in basis:
        if all(v):
            return True
    if len(basis) > 1:
        combo = [RF_ZERO] * dim
        for v in basis:
            combo = [a + b for a, b in zip(combo, v)]
        if all(combo):
            return True
    return False


# ---------------------------------------------------------------------------
# localized weight-form algebra and the dictionary to Uq
# ---------------------------------------------------------------------------

class SLocalized:
    """The weight-form algebra with K, K' inverted, in the PBW-like normal
    form F^a E^b K^c K'^d (a, b >= 0; c, d in Z).

    Straightening: E F = F E - kappa (K^2 - K'^2), K E = q E K,
    K' E = q^-1 E K', K F = q^-1 F K, K' F = q F K', K K' central pair.
    """

    def __init__(self, ctx: ParameterContext):
        self.ctx = ctx
        self.q = ctx.q
        self.kappa = ctx.kappa
        self._ef_cache: dict = {}

    def zero(self):
        return {}

    def monomial(self, a, b, c, d, coeff=RF_ONE):
        return {(a, b, c, d): coeff} if coeff else {}

    def add(self, x, y):
        out = dict(x)
        for m, c in y.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return out

    def scale(self, x, c):
        if not c:
            return {}
        return {m: v * c for m, v in x.items()}

    def mul(self, x, y):
        out = {}
        for ma, ca in x.items():
            for mb, cb in y.items():
                prod = self._mul_mono(ma, mb)
                for m, v in prod.items():
                    c = ca * cb * v
                    s = out.get(m)
                    s = c if s is None else s + c
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
        return out

    def _mul_mono(self, ma, mb):
        # (F^a E^b K^c K'^d)(F^a2 E^b2 K^c2 K'^d2): the K-powers of the left
        # factor cross F^a2 E^b2 wholesale; after straightening E^b F^a2, the
        # K-powers produced inside must still cross the trailing E^b2.
        a, b, c, d = ma
        a2, b2, c2, d2 = mb
        scale = self.q ** (-c * a2 + c * b2 + d * a2 - d * b2)
        out = {}
        for (fa, eb, kc, kd), v in self._EF(b, a2).items():
            coeff = v * scale * self.q ** ((kc - kd) * b2)
            m = (a + fa, eb + b2, kc + c + c2, kd + d + d2)
            s = out.get(m)
            s = coeff if s is None else s + coeff
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return out

    def _EF(self, b, a):
        """Normal form of E^b F^a (cached)."""
        if b == 0 or a == 0:
            return {(a, b, 0, 0): RF_ONE}
        key = (b, a)
        if key in self._ef_cache:
            return self._ef_cache[key]
        # E F = F E - kappa K^2 + kappa K'^2
        ef = {(1, 1, 0, 0): RF_ONE, (0, 0, 2, 0): -self.kappa, (0, 0, 0, 2): self.kappa}
        if b == 1 and a == 1:
            out = ef
        elif b == 1:
            # E F^a = (E F) F^(a-1)
            out = self.mul(ef, {(a - 1, 0, 0, 0): RF_ONE})
        else:
            # E^b F^a = E^(b-1) (E F^a)
            out = self.mul({(0, b - 1, 0, 0): RF_ONE}, self._EF(1, a))
        self._ef_cache[key] = out
        return out

    def from_ncpoly(self, p: NCPoly):
        """Image of a free-algebra element in generators E, F, K, K'."""
        gens = [self.monomial(0, 1, 0, 0), self.monomial(1, 0, 0, 0),
                self.monomial(0, 0, 1, 0), self.monomial(0, 0, 0, 1)]
        out = {}
        for w, c in p.terms.items():
            term = self.monomial(0, 0, 0, 0)
            for g in w:
                term = self.mul(term, gens[g])
            out = self.add(out, self.scale(term, c))
        return out

    def dictionary_images(self):
        """Images of e, f, k, k^-1 under the degree-0 localization dictionary:
        e = q^-1/2 E K^-1, f = q^-1/2 F K'^-1, k = K K'^-1."""
        inv_sqrt = self.ctx.sqrt_q.inv()
        return {
            "e": self.monomial(0, 1, -1, 0, inv_sqrt),
            "f": self.monomial(1, 0, 0, -1, inv_sqrt),
            "k": self.monomial(0, 0, 1, -1),
            "K": self.monomial(0, 0, -1, 1),
        }

    def image_of_uq(self, x: UqElement):
        imgs = self.dictionary_images()
        out = {}
        for (a, b, c), v in x.terms.items():
            term = self.monomial(0, 0, 0, 0)
            for _ in range(a):
                term = self.mul(term, imgs["f"])
            kk = imgs["k"] if b >= 0 else imgs["K"]
            for _ in range(abs(b)):
                term = self.mul(term, kk)
            for _ in range(c):
                term = self.mul(term, imgs["e"])
            out = self.add(out, self.scale(term, v))
        return out


def dictionary_relations_report(ctx: ParameterContext) -> dict:
    """The dictionary images satisfy every defining relation of the quantized
    enveloping algebra inside the localized weight-form algebra."""
    loc = SLocalized(ctx)
    alg = UqAlgebra(ctx)
    img = loc.image_of_uq
    q = ctx.q
    kappa_inv = (q - q.inv()).inv()

    def comm(a, b):
        return loc.add(loc.mul(a, b), loc.scale(loc.mul(b, a), rf(-1)))

    e, f = img(alg.e), img(alg.f)
    k, ki = img(alg.k), img(alg.k_inv)
    rels = {
        "ke = q^2 ek": loc.add(loc.mul(k, e), loc.scale(loc.mul(e, k), -q * q)),
        "kf = q^-2 fk": loc.add(loc.mul(k, f), loc.scale(loc.mul(f, k), -(q * q).inv())),
        "k k^-1 = 1": loc.add(loc.mul(k, ki), loc.monomial(0, 0, 0, 0, rf(-1))),
        "[e,f] = (k-k^-1)/(q-q^-1)": loc.add(
            comm(e, f),
            loc.add(loc.scale(k, -kappa_inv), loc.scale(ki, kappa_inv))),
    }
    out = {name: not val for name, val in rels.items()}
    out["passed"] = all(out.values())
    return out


def casimir_reports(ctx: ParameterContext, lams) -> dict:
    """Casimir facts: the two displayed forms agree, it is central, and it
    acts on the Verma of weight lam by (q lam + q^-1 lam^-1)/(q - q^-1)^2."""
    alg = UqAlgebra(ctx)
    C = alg.casimir()
    forms_equal = C == alg.casimir_second_form()
    central = all(not alg.commutator(C, g) for g in (alg.e, alg.f, alg.k))
    scalars_ok = True
    for lam in lams:
        M = VermaTruncation(alg, lam, 4)
        s = alg.casimir_scalar(lam)
        # C acts by s on every window vector away from the edge
        cm = _element_action(M, C)
        for i in range(M.dim - 1):
            for r in range(M.dim - 1):
                want = s if r == i else RF_ZERO
                if cm[r][i] != want:
                    scalars_ok = False
    return {"passed": forms_equal and central and scalars_ok,
            "two_forms_equal": forms_equal,
            "central": central,
            "verma_scalar_matches": scalars_ok}


def _element_action(M: VermaTruncation, x: UqElement):
    """Matrix of an element on the Verma window (column i = x . m_i)."""
    mat = [[RF_ZERO] * M.dim for _ in range(M.dim)]
    for i in range(M.dim):
        xi = M.alg.mul(x, M.alg.monomial(i, 0, 0))
        col = M._eval_on_generator(xi)
        if col is None:
            continue
        for r in range(M.dim):
            mat[r][i] = col[r]
    return mat


def casimir_matches_omega_report(lam: RationalFunction, ctx: ParameterContext) -> dict:
    """Under the localization dictionary, Omega(lam) (K K')^-1 equals
    C - (q lam + q^-1 lam^-1)/(q - q^-1)^2."""
    from .catalog import omega
    loc = SLocalized(ctx)
    alg = UqAlgebra(ctx)
    om = omega(lam, ctx).element
    lhs = loc.mul(loc.from_ncpoly(om), loc.monomial(0, 0, -1, -1))
    scalar = alg.casimir_scalar(lam)
    rhs = loc.add(loc.image_of_uq(alg.casimir()),
                  loc.monomial(0, 0, 0, 0, -scalar))
    diff = loc.add(lhs, loc.scale(rhs, rf(-1)))
    return {"passed": not diff, "lambda": repr(lam)}
