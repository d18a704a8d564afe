"""Truncated graded left modules over the catalog algebras: cyclic quotients,
point/line/fat-point constructors, hom spaces, kernels, twists, degree-0
localization windows, and the incidence / resolution / annihilation reports.

A truncated module stores per-degree dimensions and one action matrix per
generator and degree (M_n -> M_(n+1)).  Quotient modules additionally carry a
representative word per basis vector, which is what canonical maps between
quotients of the same algebra are built from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exactfield import ParameterContext, RF_ONE, RF_ZERO, RationalFunction, rf
from .linalg import identity, inverse, mat_mul, mat_vec, nullspace, rank, rref, solve
from .ncalg import NCPoly, QuadraticPresentation

Word = Tuple[int, ...]


class TruncatedGradedModule:
    """Graded module known through degree `cutoff`."""

    def __init__(self, pres: QuadraticPresentation, cutoff: int, dims: List[int],
                 actions: List[List[list]], label: str = "",
                 reps: Optional[List[List[Word]]] = None, validate: bool = True):
        self.pres = pres
        self.cutoff = cutoff
        self.dims = list(dims)
        self.actions = actions          # actions[g][n]: matrix M_n -> M_(n+1)
        self.label = label or "<module>"
        self.reps = reps
        if validate:
            defect = self.relation_defect()
            if defect:
                raise ValueError(f"{self.label}: defining relations do not vanish "
                                 f"(first failure at degree {defect})")

    def act(self, g: int, n: int):
        return self.actions[g][n]

    def relation_defect(self) -> Optional[int]:
        """First degree where some defining relation fails to vanish."""
        for n in range(self.cutoff - 1):
            if self.dims[n] == 0:
                continue
            for r in self.pres.relations:
                total = None
                for (i, j), c in r.coeff_pairs().items():
                    m = mat_mul(self.actions[i][n + 1], self.actions[j][n])
                    m = [[x * c for x in row] for row in m]
                    total = m if total is None else [
                        [a + b for a, b in zip(ra, rb)] for ra, rb in zip(total, m)]
                if total and any(any(row) for row in total):
                    return n
        return None

    def act_by_linear(self, form: NCPoly, n: int):
        """Matrix of a degree-1 element M_n -> M_(n+1)."""
        out = [[RF_ZERO] * self.dims[n] for _ in range(self.dims[n + 1])]
        for w, c in form.terms.items():
            g = w[0]
            m = self.actions[g][n]
            for r in range(self.dims[n + 1]):
                for s in range(self.dims[n]):
                    if m[r][s]:
                        out[r][s] = out[r][s] + c * m[r][s]
        return out

    def act_word_on_vector(self, w: Word, vec, degree: int):
        """Apply a word (leftmost letter acts last) to a degree-`degree` vector."""
        for g in reversed(w):
            vec = mat_vec(self.actions[g][degree], vec)
            degree += 1
        return vec

    def class_of_word(self, w: Word):
        """Class of w . (cyclic generator) in degree len(w) (cyclic modules)."""
        if self.dims[0] != 1:
            raise ValueError("class_of_word requires a cyclic module")
        return self.act_word_on_vector(w, [RF_ONE], 0)

    def element_action(self, p: NCPoly, n: int):
        """Matrix of a homogeneous element M_n -> M_(n+deg)."""
        d = p.degree()
        if d is None:
            raise ValueError("homogeneous element required")
        out = None
        for w, c in p.terms.items():
            m = identity(self.dims[n])
            deg = n
            for g in reversed(w):
                m = mat_mul(self.actions[g][deg], m)
                deg += 1
            m = [[x * c for x in row] for row in m]
            out = m if out is None else [[a + b for a, b in zip(ra, rb)]
                                         for ra, rb in zip(out, m)]
        return out if out is not None else []


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def quotient_module(pres: QuadraticPresentation, gens: Sequence[NCPoly],
                    cutoff: int, label: str = "") -> TruncatedGradedModule:
    """S/(S . gens) through `cutoff`: degree n+1 is V (x) M_n modulo relation
    images and the degree-(n+1) generators."""
    ng = pres.ngens
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("left-ideal generators must be homogeneous")
    dims = [1]
    reps: List[List[Word]] = [[()]]
    actions: List[List[list]] = [[] for _ in range(ng)]
    # partial module for class_of_word during construction
    for n in range(cutoff):
        dim_n = dims[n]
        ncols = ng * dim_n
        rows = []
        if n >= 1:
            dim_prev = dims[n - 1]
            for r in pres.relations:
                pairs = r.coeff_pairs()
                for m in range(dim_prev):
                    row = [RF_ZERO] * ncols
                    for (i, j), c in pairs.items():
                        col_vec = [actions[j][n - 1][k][m] for k in range(dim_n)]
                        for k in range(dim_n):
                            if col_vec[k]:
                                row[i * dim_n + k] = row[i * dim_n + k] + c * col_vec[k]
                    rows.append(row)
        for g in gens:
            if g.degree() == n + 1:
                row = [RF_ZERO] * ncols
                for w, c in g.terms.items():
                    head, tail = w[0], w[1:]
                    cls = _partial_class(tail, actions, dims, n)
                    for k in range(dim_n):
                        if cls[k]:
                            row[head * dim_n + k] = row[head * dim_n + k] + c * cls[k]
                rows.append(row)
        rrows, pivots = rref(rows, ncols) if rows else ([], [])
        pivset = set(pivots)
        new_index = {}
        new_reps = []
        for col in range(ncols):
            if col not in pivset:
                new_index[col] = len(new_reps)
                g, m = divmod(col, dim_n)
                new_reps.append((g,) + reps[n][m])
        dim_next = len(new_reps)
        # expansions of pivot columns on the new basis
        expans = {}
        for prow, pc in zip(rrows, pivots):
            expans[pc] = {new_index[c]: -prow[c] for c in range(ncols)
                          if c not in pivset and prow[c]}
        for g in range(ng):
            mat = [[RF_ZERO] * dim_n for _ in range(dim_next)]
            for m in range(dim_n):
                col = g * dim_n + m
                if col in pivset:
                    for k, v in expans[col].items():
                        mat[k][m] = v
                else:
                    mat[new_index[col]][m] = RF_ONE
            actions[g].append(mat)
        dims.append(dim_next)
        reps.append(new_reps)
    return TruncatedGradedModule(pres, cutoff, dims, actions,
                                 label=label or f"{pres.label}/({len(gens)} gens)",
                                 reps=reps)


def _partial_class(w: Word, actions, dims, n: int):
    """Class of a length-n word during incremental construction."""
    vec = [RF_ONE]
    deg = 0
    for g in reversed(w):
        vec = mat_vec(actions[g][deg], vec)
        deg += 1
    assert deg == n
    return vec


def point_perp_forms(coords: Sequence[RationalFunction]) -> List[NCPoly]:
    """The 3-dimensional space of linear forms vanishing at a point."""
    basis = nullspace([list(coords)], len(coords))
    return [NCPoly.linear(v) for v in basis]


def line_module(pres: QuadraticPresentation, forms: Sequence[Sequence[RationalFunction]],
                cutoff: int, label: str = "") -> TruncatedGradedModule:
    return quotient_module(pres, [NCPoly.linear(list(f)) for f in forms],
                           cutoff, label=label or "line module")


def point_module_from_orbit(pres: QuadraticPresentation, orbit: List[list],
                            cutoff: int, label: str = "") -> TruncatedGradedModule:
    """1-dimensional components; generator g acts on degree n by the g-th
    coordinate of the n-th inverse-automorphism iterate of the point."""
    if len(orbit) < cutoff + 1:
        raise ValueError("orbit too short for the cutoff")
    dims = [1] * (cutoff + 1)
    actions = [[] for _ in range(pres.ngens)]
    for g in range(pres.ngens):
        for n in range(cutoff):
            actions[g].append([[orbit[n][g]]])
    return TruncatedGradedModule(pres, cutoff, dims, actions,
                                 label=label or "point module")


def point_module(pres: QuadraticPresentation, scheme, coords, cutoff: int,
                 label: str = "") -> TruncatedGradedModule:
    """Point module via the inverse-automorphism orbit of a scheme point."""
    from .ptscheme import locate
    comp = locate(scheme, coords)
    if comp is None:
        raise ValueError("point does not lie on the point scheme")
    orbit = comp.sigma_orbit_inv(coords, cutoff)
    return point_module_from_orbit(pres, orbit, cutoff,
                                   label=label or f"point module on {comp.name}")


# ---------------------------------------------------------------------------
# finite-dimensional modules
# ---------------------------------------------------------------------------

class FiniteModule:
    """Finite-dimensional module: one square matrix per generator."""

    def __init__(self, pres: QuadraticPresentation, mats: List[list], label: str = "",
                 validate: bool = True):
        self.pres = pres
        self.mats = mats
        self.dim = len(mats[0]) if mats else 0
        self.label = label or "<finite module>"
        if validate and self.relation_defect():
            raise ValueError(f"{self.label}: relations do not vanish")

    def relation_defect(self) -> int:
        bad = 0
        for r in self.pres.relations:
            total = None
            for (i, j), c in r.coeff_pairs().items():
                m = mat_mul(self.mats[i], self.mats[j])
                m = [[x * c for x in row] for row in m]
                total = m if total is None else [[a + b for a, b in zip(ra, rb)]
                                                 for ra, rb in zip(total, m)]
            if total and any(any(row) for row in total):
                bad += 1
        return bad

    def act_linear(self, form: NCPoly):
        out = [[RF_ZERO] * self.dim for _ in range(self.dim)]
        for w, c in form.terms.items():
            m = self.mats[w[0]]
            for r in range(self.dim):
                for s in range(self.dim):
                    if m[r][s]:
                        out[r][s] = out[r][s] + c * m[r][s]
        return out

    def submodule_span(self, seeds: List[list]) -> int:
        """Dimension of the submodule generated by the seed vectors."""
        from .linalg import SparseRREF
        red = SparseRREF(RF_ONE)
        frontier = []
        for v in seeds:
            row = {i: x for i, x in enumerate(v) if x}
            if red.add_row(row):
                frontier.append(v)
        while frontier:
            nxt = []
            for v in frontier:
                for m in self.mats:
                    w = mat_vec(m, v)
                    row = {i: x for i, x in enumerate(w) if x}
                    if row and red.add_row(row):
                        nxt.append(w)
            frontier = nxt
        return red.rank

    def direct_sum(self, other: "FiniteModule") -> "FiniteModule":
        mats = []
        for a, b in zip(self.mats, other.mats):
            n, m = len(a), len(b)
            big = [[RF_ZERO] * (n + m) for _ in range(n + m)]
            for r in range(n):
                for c in range(n):
                    big[r][c] = a[r][c]
            for r in range(m):
                for c in range(m):
                    big[n + r][n + c] = b[r][c]
            mats.append(big)
        return FiniteModule(self.pres, mats, label=f"{self.label} (+) {other.label}")


def V_module(n: int, sign: int, ctx: ParameterContext,
             pres: QuadraticPresentation) -> FiniteModule:
    """The (n+1)-dimensional simple module with

        K v_i = sqrt(sign) q^(n/2-i) v_i,   K' v_i = sign sqrt(sign) q^(i-n/2) v_i,
        F v_i = [n-i] v_(i+1),              E v_i = sign [i] v_(i-1).
    """
    d = n + 1
    root = ctx.sqrt_sign(sign)
    sgn = rf(sign)
    kmat = [[root * ctx.q_half_power(n - 2 * i) if i == j else RF_ZERO
             for j in range(d)] for i in range(d)]
    kpmat = [[sgn * root * ctx.q_half_power(2 * i - n) if i == j else RF_ZERO
              for j in range(d)] for i in range(d)]
    fmat = [[ctx.quantum_integer(n - j) if i == j + 1 else RF_ZERO
             for j in range(d)] for i in range(d)]
    emat = [[sgn * ctx.quantum_integer(j) if i == j - 1 else RF_ZERO
             for j in range(d)] for i in range(d)]
    return FiniteModule(pres, [emat, fmat, kmat, kpmat],
                        label=f"V({n},{'+' if sign > 0 else '-'})")


def is_simple(V: FiniteModule, rng=None) -> Tuple[bool, bool]:
    """(simple?, flagged?): K-eigenvector sweep when the K-action is diagonal
    with distinct eigenvalues, otherwise a random cyclic-vector fallback."""
    kmat = V.mats[2]
    diag = all(not kmat[r][c] for r in range(V.dim) for c in range(V.dim) if r != c)
    eigs = [kmat[i][i] for i in range(V.dim)]
    distinct = len(set(eigs)) == V.dim
    if diag and distinct:
        for i in range(V.dim):
            seed = [RF_ONE if j == i else RF_ZERO for j in range(V.dim)]
            if V.submodule_span([seed]) != V.dim:
                return False, False
        return True, False
    # fallback: sampled vectors must generate everything for simplicity
    # evidence; a proper invariant subspace shows up as a smaller span
    import random
    rng = rng or random.Random(0)
    any_small = False
    for i in range(V.dim):
        seed = [RF_ONE if j == i else RF_ZERO for j in range(V.dim)]
        if V.submodule_span([seed]) != V.dim:
            any_small = True
    for _ in range(3):
        seed = [rf(rng.randint(1, 7)) for _ in range(V.dim)]
        if V.submodule_span([seed]) != V.dim:
            any_small = True
    return (not any_small), True


def fat_point(n: int, sign: int, cutoff: int, ctx: ParameterContext,
              pres: QuadraticPresentation) -> TruncatedGradedModule:
    """V(n, sign) (x) C[z]: constant dimensions, every degree acting by the
    finite module's matrices (the z-shift is the grading bookkeeping)."""
    V = V_module(n, sign, ctx, pres)
    dims = [V.dim] * (cutoff + 1)
    actions = [[V.mats[g] for _ in range(cutoff)] for g in range(pres.ngens)]
    return TruncatedGradedModule(pres, cutoff, dims, actions,
                                 label=f"F({n},{'+' if sign > 0 else '-'})")


# ---------------------------------------------------------------------------
# hom spaces, kernels, canonical maps
# ---------------------------------------------------------------------------

@dataclass
class GradedHomWitness:
    source: TruncatedGradedModule
    target: TruncatedGradedModule
    shift: int
    matrices: List[list]   # matrices[n]: source_n -> target_(n+shift)

    def is_degreewise_iso(self) -> bool:
        for n, m in enumerate(self.matrices):
            dn = self.source.dims[n]
            dm = self.target.dims[n + self.shift] if 0 <= n + self.shift <= self.target.cutoff else 0
            if dn != dm:
                return False
            if dn and inverse(m) is None:
                return False
        return True

    def is_injective_degreewise(self) -> bool:
        for n, m in enumerate(self.matrices):
            if self.source.dims[n] and nullspace(m, self.source.dims[n]):
                return False
        return True

    def is_zero(self) -> bool:
        return all(not any(any(row) for row in m) for m in self.matrices)


def hom_space(M: TruncatedGradedModule, N: TruncatedGradedModule,
              shift: int = 0) -> List[GradedHomWitness]:
    """Basis of degree-preserving maps M -> N(shift) commuting with every
    generator action through the common window."""
    lo = max(0, -shift)
    hi = min(M.cutoff, N.cutoff - shift)
    if hi < lo:
        return []
    degs = list(range(lo, hi + 1))
    offsets = {}
    total = 0
    for n in degs:
        offsets[n] = total
        total += M.dims[n] * N.dims[n + shift]
    if total == 0:
        return []
    rows = []
    for n in degs[:-1]:
        dn, dn1 = M.dims[n], M.dims[n + 1]
        en, en1 = N.dims[n + shift], N.dims[n + 1 + shift]
        if dn == 0:
            continue
        for g in range(M.pres.ngens):
            a = M.actions[g][n]
            b = N.actions[g][n + shift]
            # phi_(n+1) a - b phi_n = 0 : rows indexed by (r, c) in e(n+1) x dn
            for r_ in range(en1):
                for c_ in range(dn):
                    row = [RF_ZERO] * total
                    if dn1:
                        for t in range(dn1):
                            if a[t][c_]:
                                row[offsets[n + 1] + r_ * dn1 + t] = row[offsets[n + 1] + r_ * dn1 + t] + a[t][c_]
                    for t in range(en):
                        if b[r_][t]:
                            idx = offsets[n] + t * dn + c_
                            row[idx] = row[idx] - b[r_][t]
                    if any(row):
                        rows.append(row)
    basis = nullspace(rows, total) if rows else [
        [RF_ONE if i == j else RF_ZERO for i in range(total)] for j in range(total)]
    out = []
    for v in basis:
        mats = []
        for n in range(0, hi + 1):
            if n < lo:
                mats.append([[RF_ZERO] * M.dims[n] for _ in range(0)])
                continue
            dn = M.dims[n]
            en = N.dims[n + shift]
            m = [[RF_ZERO] * dn for _ in range(en)]
            for r_ in range(en):
                for c_ in range(dn):
                    m[r_][c_] = v[offsets[n] + r_ * dn + c_]
            mats.append(m)
        out.append(GradedHomWitness(M, N, shift, mats))
    return out


def find_degreewise_iso(M: TruncatedGradedModule, N: TruncatedGradedModule,
                        shift: int = 0, seed: int = 0) -> Optional[GradedHomWitness]:
    """A degreewise invertible hom, searched over the hom-space basis and
    seeded random combinations."""
    basis = hom_space(M, N, shift)
    for w in basis:
        if w.is_degreewise_iso():
            return w
    if len(basis) > 1:
        import random
        rng = random.Random(seed)
        for _ in range(8):
            coeffs = [rf(rng.randint(1, 9)) for _ in basis]
            mats = []
            for n in range(len(basis[0].matrices)):
                rows = len(basis[0].matrices[n])
                cols = len(basis[0].matrices[n][0]) if rows else 0
                m = [[RF_ZERO] * cols for _ in range(rows)]
                for c, w in zip(coeffs, basis):
                    bm = w.matrices[n]
                    for r_ in range(rows):
                        for c_ in range(cols):
                            if bm[r_][c_]:
                                m[r_][c_] = m[r_][c_] + c * bm[r_][c_]
                mats.append(m)
            w = GradedHomWitness(M, N, shift, mats)
            if w.is_degreewise_iso():
                return w
    return None


def canonical_quotient_map(M: TruncatedGradedModule, N: TruncatedGradedModule):
    """Degreewise matrices of the map sending class(w) in M to class(w) in N,
    for quotient-constructed modules of the same presentation.  Returns
    (matrices, commutes) where `commutes` certifies S-linearity."""
    if M.reps is None:
        raise ValueError("source must carry representative words")
    cut = min(M.cutoff, N.cutoff)
    mats = []
    for n in range(cut + 1):
        cols = []
        for w in M.reps[n]:
            cols.append(N.class_of_word(w))
        m = [[cols[j][r] for j in range(M.dims[n])] for r in range(N.dims[n])]
        mats.append(m)
    commutes = True
    for n in range(cut):
        for g in range(M.pres.ngens):
            lhs = mat_mul(mats[n + 1], M.actions[g][n])
            rhs = mat_mul(N.actions[g][n], mats[n])
            if lhs != rhs:
                commutes = False
    return mats, commutes


def kernel_module(M: TruncatedGradedModule, map_mats: List[list],
                  label: str = "kernel") -> TruncatedGradedModule:
    """The degreewise kernel of an S-linear map out of M, as a module."""
    cut = min(M.cutoff, len(map_mats) - 1)
    bases = []
    for n in range(cut + 1):
        if M.dims[n] == 0:
            bases.append([])
            continue
        bases.append(nullspace(map_mats[n], M.dims[n]))
    dims = [len(b) for b in bases]
    actions = [[] for _ in range(M.pres.ngens)]
    for n in range(cut):
        # matrix of each generator in the kernel bases
        cols_next = [list(v) for v in bases[n + 1]]
        bigmat = [[cols_next[j][r] for j in range(dims[n + 1])] for r in range(M.dims[n + 1])]
        for g in range(M.pres.ngens):
            mat = [[RF_ZERO] * dims[n] for _ in range(dims[n + 1])]
            for j, v in enumerate(bases[n]):
                w = mat_vec(M.actions[g][n], v)
                if dims[n + 1] == 0:
                    if any(w):
                        raise ValueError("kernel is not a submodule")
                    continue
                x = solve(bigmat, w)
                if x is None:
                    raise ValueError("kernel is not a submodule")
                for r in range(dims[n + 1]):
                    mat[r][j] = x[r]
            actions[g].append(mat)
    return TruncatedGradedModule(M.pres, cut, dims, actions, label=label)


def twist_module(M, amap) -> "TruncatedGradedModule | FiniteModule":
    """Pullback along an algebra endomorphism: new action a.m = amap(a).m."""
    coeffs = amap.coefficient_matrix()  # images[g] = sum_j coeffs[j][g] gen_j
    if isinstance(M, FiniteModule):
        mats = []
        for g in range(M.pres.ngens):
            m = [[RF_ZERO] * M.dim for _ in range(M.dim)]
            for j in range(M.pres.ngens):
                c = coeffs[j][g]
                if c:
                    src = M.mats[j]
                    for r in range(M.dim):
                        for s in range(M.dim):
                            if src[r][s]:
                                m[r][s] = m[r][s] + c * src[r][s]
            mats.append(m)
        return FiniteModule(M.pres, mats, label=f"twist({M.label})")
    actions = [[] for _ in range(M.pres.ngens)]
    for g in range(M.pres.ngens):
        for n in range(M.cutoff):
            m = [[RF_ZERO] * M.dims[n] for _ in range(M.dims[n + 1])]
            for j in range(M.pres.ngens):
                c = coeffs[j][g]
                if c:
                    src = M.actions[j][n]
                    for r in range(M.dims[n + 1]):
                        for s in range(M.dims[n]):
                            if src[r][s]:
                                m[r][s] = m[r][s] + c * src[r][s]
            actions[g].append(m)
    return TruncatedGradedModule(M.pres, M.cutoff, M.dims, actions,
                                 label=f"twist({M.label})")


def finite_intertwiner(A: FiniteModule, mats_b: List[list], dim_b: int,
                       gens: Sequence[int]) -> List[list]:
    """Basis of linear maps phi with phi a_g = b_g phi for the listed
    generator indices (A's matrices vs a raw matrix list)."""
    dim_a = A.dim
    total = dim_b * dim_a
    rows = []
    for gi, g in enumerate(gens):
        a = A.mats[g]
        b = mats_b[gi]
        for r in range(dim_b):
            for c in range(dim_a):
                row = [RF_ZERO] * total
                for t in range(dim_a):
                    if a[t][c]:
                        row[r * dim_a + t] = row[r * dim_a + t] + a[t][c]
                for t in range(dim_b):
                    if b[r][t]:
                        row[t * dim_a + c] = row[t * dim_a + c] - b[r][t]
                if any(row):
                    rows.append(row)
    if rows:
        basis = nullspace(rows, total)
    else:
        basis = [[RF_ONE if i == j else RF_ZERO for i in range(total)] for j in range(total)]
    out = []
    for v in basis:
        out.append([[v[r * dim_a + c] for c in range(dim_a)] for r in range(dim_b)])
    return out
