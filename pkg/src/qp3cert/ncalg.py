"""Free-algebra and quadratic-presentation engine.

Graded components of quadratic quotients are computed degree by degree with
dense/sparse linear algebra on word spaces (no Groebner completion): the
degree-n component is the quotient of basis(n-1) (x) generators by the images
of basis(n-2) (x) relations.  Complement bases are deterministic: words are
kept in lexicographic order and pivots always take the earliest column.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .exactfield import G_ONE, GaussianRational, ParameterContext, RF_ONE, RF_ZERO, RationalFunction
from .linalg import SparseRREF, nullspace, rref, solve

Word = Tuple[int, ...]


class NCPoly:
    """Noncommutative polynomial: {word (tuple of generator indices): scalar}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Word, RationalFunction]):
        object.__setattr__(self, "terms", {w: c for w, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("NCPoly is immutable")

    @staticmethod
    def zero() -> "NCPoly":
        return NCPoly({})

    @staticmethod
    def word(w: Sequence[int], c: RationalFunction = RF_ONE) -> "NCPoly":
        return NCPoly({tuple(w): c})

    @staticmethod
    def gen(i: int) -> "NCPoly":
        return NCPoly({(i,): RF_ONE})

    @staticmethod
    def linear(coeffs: Sequence[RationalFunction]) -> "NCPoly":
        return NCPoly({(i,): c for i, c in enumerate(coeffs) if c})

    def __add__(self, other: "NCPoly") -> "NCPoly":
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            if s is None:
                t[w] = c
            else:
                s = s + c
                if s:
                    t[w] = s
                else:
                    del t[w]
        return NCPoly(t)

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        t: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                c = ca * cb
                s = t.get(w)
                if s is None:
                    t[w] = c
                else:
                    s = s + c
                    if s:
                        t[w] = s
                    else:
                        del t[w]
        return NCPoly(t)

    def scale(self, c: RationalFunction) -> "NCPoly":
        if not c:
            return NCPoly({})
        return NCPoly({w: v * c for w, v in self.terms.items()})

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> Optional[int]:
        """Common degree of all words, or None if inhomogeneous/zero."""
        degs = {len(w) for w in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def is_homogeneous(self, d: Optional[int] = None) -> bool:
        degs = {len(w) for w in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs.pop() == d

    def coeff_pairs(self):
        """Degree-2 coefficients as {(i, j): c} for words g_i g_j."""
        out = {}
        for w, c in self.terms.items():
            if len(w) != 2:
                raise ValueError("not a degree-2 element")
            out[(w[0], w[1])] = c
        return out

    def abelianized_terms(self, ngens: int):
        """Commutative image: {sorted exponent tuple: scalar}."""
        out: dict = {}
        for w, c in self.terms.items():
            e = [0] * ngens
            for g in w:
                e[g] += 1
            k = tuple(e)
            s = out.get(k)
            out[k] = c if s is None else s + c
        return {k: v for k, v in out.items() if v}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            parts.append(f"({self.terms[w]})*{''.join(str(g) for g in w) or '1'}")
        return " + ".join(parts)


def word_str(w: Word, names: Sequence[str]) -> str:
    return "*".join(names[g] for g in w) if w else "1"


@dataclass
class GradedBasis:
    """Degree-n complement basis data for a presentation."""
    degree: int
    representative_words: List[Word]
    _pres: "QuadraticPresentation"

    @property
    def ideal_subspace(self):
        """Row-space matrix of the degree-n ideal component (word coordinates)."""
        return self._pres.ideal_component(self.degree)


class _Level:
    __slots__ = ("words", "index", "rm")

    def __init__(self, words, index, rm):
        self.words = words     # sorted list of basis words
        self.index = index     # word -> position
        self.rm = rm           # rm[g][j] = sparse expansion of words_{n-1}[j]*g


class MembershipCertificate:
    """Witness that p lies in the two-sided ideal: coefficients expressing p
    as sum of terms (left word) * relation * (right word)."""

    def __init__(self, pres: "QuadraticPresentation", p: NCPoly, degree: int):
        self._pres = pres
        self.element = p
        self.degree = degree
        self._terms = None

    @property
    def terms(self):
        """List of (left word, relation index, right word, coefficient)."""
        if self._terms is None:
            self._terms = self._pres._membership_coefficients(self.element, self.degree)
        return self._terms

    def expand(self) -> NCPoly:
        out = NCPoly.zero()
        for left, ridx, right, c in self.terms:
            out = out + (NCPoly.word(left) * self._pres.relations[ridx]
                         * NCPoly.word(right)).scale(c)
        return out

    def verify(self) -> bool:
        return self.expand() == self.element


class QuadraticPresentation:
    """Ordered generators plus an independent space of degree-2 relations."""

    def __init__(self, generator_names: Sequence[str], relations: Sequence[NCPoly],
                 ctx: ParameterContext, label: str = ""):
        self.generator_names = tuple(generator_names)
        self.ngens = len(self.generator_names)
        self.relations = list(relations)
        self.ctx = ctx
        self.label = label or "<presentation>"
        for r in self.relations:
            if not r.is_homogeneous(2):
                raise ValueError(f"{self.label}: relation not homogeneous of degree 2: {r}")
            for w in r.terms:
                if any(g >= self.ngens or g < 0 for g in w):
                    raise ValueError(f"{self.label}: generator index out of range")
        rows = [self._rel_row(r) for r in self.relations]
        if len(rref(rows, self.ngens ** 2)[1]) != len(self.relations):
            raise ValueError(f"{self.label}: relations are linearly dependent")
        self._levels: Dict[int, _Level] = {}
        # raw scalars: plain Gaussian rationals when every coefficient is
        # constant (fast path), RationalFunction otherwise
        self._constant = all(c.is_constant() for r in self.relations for c in r.terms.values())
        self._one = G_ONE if self._constant else RF_ONE
        self._rel_pairs = []
        for r in self.relations:
            pairs = []
            for (i, j), c in r.coeff_pairs().items():
                pairs.append((i, j, self._lower(c)))
            self._rel_pairs.append(pairs)

    # -- scalar lowering -------------------------------------------------
    def _lower(self, c: RationalFunction):
        return c.constant_value() if self._constant else c

    def _lift(self, c) -> RationalFunction:
        return RationalFunction.const(c) if self._constant else c

    def _rel_row(self, r: NCPoly):
        row = [RF_ZERO] * (self.ngens ** 2)
        for (i, j), c in r.coeff_pairs().items():
            row[i * self.ngens + j] = c
        return row

    def gen_index(self, name: str) -> int:
        return self.generator_names.index(name)

    def gen(self, name: str) -> NCPoly:
        return NCPoly.gen(self.gen_index(name))

    # -- graded machinery --------------------------------------------------
    def level(self, n: int) -> _Level:
        if n in self._levels:
            return self._levels[n]
        if n == 0:
            lv = _Level([()], {(): 0}, None)
        elif n == 1:
            words = [(g,) for g in range(self.ngens)]
            rm = [[{g: self._one}] for g in range(self.ngens)]
            lv = _Level(words, {w: k for k, w in enumerate(words)}, rm)
        else:
            lv = self._build_level(n)
        self._levels[n] = lv
        return lv

    def _build_level(self, n: int) -> _Level:
        prev = self.level(n - 1)
        prev2 = self.level(n - 2)
        ng = self.ngens
        red = SparseRREF(self._one)
        for j2 in range(len(prev2.words)):
            for pairs in self._rel_pairs:
                row: dict = {}
                for (i, j, c) in pairs:
                    for k, v in prev.rm[i][j2].items():
                        col = k * ng + j
                        s = row.get(col)
                        s = c * v if s is None else s + c * v
                        if s:
                            row[col] = s
                        else:
                            row.pop(col, None)
                red.add_row(row)
        red.finalize()
        pivset = set(red.pivots)
        words = []
        newidx = {}
        for j in range(len(prev.words)):
            for g in range(ng):
                col = j * ng + g
                if col not in pivset:
                    newidx[col] = len(words)
                    words.append(prev.words[j] + (g,))
        rm = [[None] * len(prev.words) for _ in range(ng)]
        for j in range(len(prev.words)):
            for g in range(ng):
                col = j * ng + g
                if col in pivset:
                    rm[g][j] = {newidx[c]: v for c, v in red.expansion(col).items()}
                else:
                    rm[g][j] = {newidx[col]: self._one}
        return _Level(words, {w: k for k, w in enumerate(words)}, rm)

    def graded_dim(self, n: int) -> int:
        """Dimension of the degree-n component of the quotient algebra."""
        if n < 0:
            return 0
        return len(self.level(n).words)

    def graded_basis(self, n: int) -> GradedBasis:
        return GradedBasis(n, list(self.level(n).words), self)

    def append_letter(self, vec: dict, degree: int, g: int) -> dict:
        """Right-multiply a degree-`degree` class vector by generator g."""
        rm = self.level(degree + 1).rm[g]
        out: dict = {}
        for j, v in vec.items():
            for k, w in rm[j].items():
                s = out.get(k)
                s = v * w if s is None else s + v * w
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def reduce_word(self, w: Word) -> dict:
        """Class of a word in the degree-len(w) complement basis (sparse)."""
        vec = {0: self._one}
        for d, g in enumerate(w):
            vec = self.append_letter(vec, d, g)
        return vec

    def class_of(self, p: NCPoly) -> dict:
        """Class of a homogeneous element in the complement basis (sparse)."""
        d = p.degree()
        if d is None:
            raise ValueError("class_of requires a homogeneous element")
        out: dict = {}
        for w, c in p.terms.items():
            cl = self._lower(c)
            for k, v in self.reduce_word(w).items():
                s = out.get(k)
                s = cl * v if s is None else s + cl * v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    # -- ideal membership ---------------------------------------------------
    def ideal_component(self, n: int):
        """Rows (word coordinates, dim ngens^n) spanning the degree-n ideal."""
        if n < 2:
            return []
        rows = rref([self._rel_row(r) for r in self.relations], self.ngens ** 2)[0]
        size = self.ngens ** 2
        for m in range(3, n + 1):
            size *= self.ngens
            new = []
            for row in rows:  # previous degree * V
                for g in range(self.ngens):
                    nr = [RF_ZERO] * size
                    for idx, c in enumerate(row):
                        if c:
                            nr[idx * self.ngens + g] = c
                    new.append(nr)
            base = self.ngens ** (m - 2)
            for u in range(base):  # V^(m-2) * R
                for r in self.relations:
                    nr = [RF_ZERO] * size
                    for (i, j), c in r.coeff_pairs().items():
                        nr[(u * self.ngens + i) * self.ngens + j] = c
                    new.append(nr)
            rows = rref(new, size)[0]
        return rows

    def is_in_ideal(self, p: NCPoly) -> Optional[MembershipCertificate]:
        """Membership certificate if p lies in the two-sided ideal, else None."""
        d = p.degree()
        if d is None:
            raise ValueError("ideal membership requires a homogeneous element")
        if d < 2:
            return MembershipCertificate(self, p, d) if p.is_zero() else None
        if any(self.class_of(p).values()):
            return None
        return MembershipCertificate(self, p, d)

    def _membership_coefficients(self, p: NCPoly, d: int):
        if p.is_zero():
            return []
        ng = self.ngens
        cols = []
        labels = []
        nwords = ng ** d
        for k in range(d - 1):
            for u in _all_words(ng, k):
                for ridx, r in enumerate(self.relations):
                    for v in _all_words(ng, d - 2 - k):
                        col = {}
                        for (i, j), c in r.coeff_pairs().items():
                            w = u + (i, j) + v
                            col[_word_rank(w, ng)] = c
                        cols.append(col)
                        labels.append((u, ridx, v))
        mat = [[RF_ZERO] * len(cols) for _ in range(nwords)]
        for cidx, col in enumerate(cols):
            for ridx, c in col.items():
                mat[ridx][cidx] = c
        rhs = [RF_ZERO] * nwords
        for w, c in p.terms.items():
            rhs[_word_rank(w, ng)] = c
        x = solve(mat, rhs)
        if x is None:
            raise ArithmeticError("membership coefficients inconsistent with reduction")
        return [(labels[k][0], labels[k][1], labels[k][2], xc)
                for k, xc in enumerate(x) if xc]

    def is_central(self, p: NCPoly) -> bool:
        """True iff [p, g] lies in the ideal for every generator g."""
        d = p.degree()
        if d is None:
            raise ValueError("centrality requires a homogeneous element")
        for g in range(self.ngens):
            comm = p.commutator(NCPoly.gen(g))
            if comm and any(self.class_of(comm).values()):
                return False
        return True

    def relation_space_rref(self):
        return rref([self._rel_row(r) for r in self.relations], self.ngens ** 2)

    def same_relation_space(self, other: "QuadraticPresentation") -> bool:
        if self.ngens != other.ngens:
            return False
        a, pa = self.relation_space_rref()
        b, pb = other.relation_space_rref()
        return pa == pb and a == b


def _all_words(ngens: int, length: int):
    if length == 0:
        return [()]
    out = [()]
    for _ in range(length):
        out = [w + (g,) for w in out for g in range(ngens)]
    return out


def _word_rank(w: Word, ngens: int) -> int:
    r = 0
    for g in w:
        r = r * ngens + g
    return r


class AlgebraMap:
    """Degree-preserving algebra map determined by degree-<=1 generator images."""

    def __init__(self, source: QuadraticPresentation, target: QuadraticPresentation,
                 images: Sequence[NCPoly], label: str = ""):
        if len(images) != source.ngens:
            raise ValueError("one image per source generator required")
        for im in images:
            if im and not im.is_homogeneous(1):
                raise ValueError("generator images must be linear (degree 1)")
        self.source = source
        self.target = target
        self.images = list(images)
        self.label = label or "<map>"

    def apply(self, p: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for w, c in p.terms.items():
            term = NCPoly.word((), RF_ONE)
            for g in w:
                term = term * self.images[g]
            out = out + term.scale(c)
        return out

    def coefficient_matrix(self):
        """images[g] = sum_j m[j][g] * target_gen_j."""
        m = [[RF_ZERO] * self.source.ngens for _ in range(self.target.ngens)]
        for g, im in enumerate(self.images):
            for w, c in im.terms.items():
                m[w[0]][g] = c
        return m

    def is_invertible_on_generators(self) -> bool:
        if self.source.ngens != self.target.ngens:
            return False
        return len(rref(self.coefficient_matrix())[1]) == self.source.ngens

    def compose(self, inner: "AlgebraMap") -> "AlgebraMap":
        """self o inner."""
        return AlgebraMap(inner.source, self.target,
                          [self.apply(im) for im in inner.images])


def check_homomorphism(amap: AlgebraMap) -> bool:
    """True iff every source relation maps into the target ideal."""
    if len(amap.images) != amap.source.ngens:
        raise ValueError("generator count mismatch")
    for r in amap.source.relations:
        image = amap.apply(r)
        if image and amap.target.is_in_ideal(image) is None:
            return False
    return True


def zhang_twist(pres: QuadraticPresentation, diag: Sequence[RationalFunction],
                label: str = "") -> QuadraticPresentation:
    """Presentation of the twist by the diagonal automorphism g -> diag_g * g.

    The twisted relation space is {(phi^-1 (x) id) r : r in R}.
    """
    if len(diag) != pres.ngens:
        raise ValueError("one scalar per generator required")
    if any(not d for d in diag):
        raise ValueError("twisting scalars must be nonzero")
    phi = AlgebraMap(pres, pres, [NCPoly.gen(g).scale(diag[g]) for g in range(pres.ngens)])
    if not check_homomorphism(phi):
        raise ValueError("diagonal map does not preserve the ideal")
    inv = [d.inv() for d in diag]
    new_rels = []
    for r in pres.relations:
        terms = {}
        for (i, j), c in r.coeff_pairs().items():
            terms[(i, j)] = terms.get((i, j), RF_ZERO) + c * inv[i]
        new_rels.append(NCPoly({(i, j): c for (i, j), c in terms.items() if c}))
    return QuadraticPresentation(pres.generator_names, new_rels, pres.ctx,
                                 label=label or f"twist({pres.label})")


def standard_form_check(pres: QuadraticPresentation, m_matrix, q_matrix) -> bool:
    """Check f = M x and x^T M = (Q f)^T as identities in the free algebra.

    `m_matrix` is a 3x3 array of degree-1 NCPoly, `q_matrix` a 3x3 scalar
    matrix; the relation list of `pres` is the ordered column f.
    """
    n = pres.ngens
    if len(pres.relations) != n:
        raise ValueError("standard form needs as many relations as generators")
    x = [NCPoly.gen(i) for i in range(n)]
    for i in range(n):
        fi = NCPoly.zero()
        for j in range(n):
            fi = fi + m_matrix[i][j] * x[j]
        if fi != pres.relations[i]:
            return False
    for j in range(n):
        lhs = NCPoly.zero()
        for i in range(n):
            lhs = lhs + x[i] * m_matrix[i][j]
        rhs = NCPoly.zero()
        for k in range(n):
            rhs = rhs + pres.relations[k].scale(q_matrix[j][k])
        if lhs != rhs:
            return False
    return True
