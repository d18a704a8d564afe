"""Commutative polynomials in named geometry coordinates with scalars in the
exact rational-function field.

These carry the defining ideals of point-scheme components, quadrics, and the
degeneration-family curves.  Scalar coefficients are RationalFunction values,
so symbolic parameters (u, t, alpha, beta, ...) flow through unchanged.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .exactfield import G_ONE, GaussianRational, RF_ONE, RF_ZERO, RationalFunction


class CPoly:
    """Sparse commutative polynomial: {exponent tuple: RationalFunction}."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, RationalFunction]):
        vs = tuple(variables)
        object.__setattr__(self, "variables", vs)
        clean = {}
        for e, c in terms.items():
            if len(e) != len(vs):
                raise ValueError("exponent length mismatch")
            if c:
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("CPoly is immutable")

    @staticmethod
    def zero(variables) -> "CPoly":
        return CPoly(variables, {})

    @staticmethod
    def const(variables, c: RationalFunction) -> "CPoly":
        return CPoly(variables, {(0,) * len(variables): c})

    @staticmethod
    def var(variables, name: str) -> "CPoly":
        vs = tuple(variables)
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return CPoly(vs, {tuple(e): RF_ONE})

    @staticmethod
    def linear_form(variables, coeffs: Sequence[RationalFunction]) -> "CPoly":
        vs = tuple(variables)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * len(vs)
                e[k] = 1
                terms[tuple(e)] = c
        return CPoly(vs, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __add__(self, other: "CPoly") -> "CPoly":
        assert self.variables == other.variables
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return CPoly(self.variables, t)

    def __neg__(self) -> "CPoly":
        return CPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "CPoly") -> "CPoly":
        return self + (-other)

    def __mul__(self, other: "CPoly") -> "CPoly":
        assert self.variables == other.variables
        t: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                s = t.get(e)
                if s is None:
                    t[e] = c
                else:
                    s = s + c
                    if s:
                        t[e] = s
                    else:
                        del t[e]
        return CPoly(self.variables, t)

    def scale(self, c: RationalFunction) -> "CPoly":
        if not c:
            return CPoly.zero(self.variables)
        return CPoly(self.variables, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def coefficient(self, exponent: tuple) -> RationalFunction:
        return self.terms.get(tuple(exponent), RF_ZERO)

    def evaluate(self, point: Sequence[RationalFunction]) -> RationalFunction:
        """Value at a coordinate vector (scalars stay in the field)."""
        out = RF_ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                for _ in range(k):
                    t = t * x
            out = out + t
        return out

    def substitute_linear(self, images: Sequence["CPoly"]) -> "CPoly":
        """Substitute a polynomial for each variable (coordinate change)."""
        vs = images[0].variables if images else self.variables
        out = CPoly.zero(vs)
        for e, c in self.terms.items():
            t = CPoly.const(vs, c)
            for img, k in zip(images, e):
                for _ in range(k):
                    t = t * img
            out = out + t
        return out

    def derivative(self, name: str) -> "CPoly":
        i = self.variables.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * RationalFunction.const(GaussianRational(e[i]))
        return CPoly(self.variables, t)

    def coeff_vector(self, degree: int) -> list:
        """Coefficients on the degree-d monomial basis (sorted order)."""
        monos = monomials(self.variables, degree)
        return [self.terms.get(e, RF_ZERO) for e in monos]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), e)):
            c = self.terms[e]
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.variables, e) if k)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


def monomials(variables, degree: int):
    """Sorted exponent tuples of total degree `degree`."""
    n = len(variables)
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return out


def ideal_component_matrix(gens: Sequence[CPoly], degree: int):
    """Rows spanning the degree-`degree` part of the ideal (gens), on the
    sorted monomial basis."""
    if not gens:
        return [], []
    vs = gens[0].variables
    basis = monomials(vs, degree)
    index = {e: k for k, e in enumerate(basis)}
    rows = []
    for g in gens:
        d = g.total_degree()
        if d > degree or g.is_zero():
            continue
        for m in monomials(vs, degree - d):
            row = [RF_ZERO] * len(basis)
            for e, c in g.terms.items():
                row[index[tuple(x + y for x, y in zip(e, m))]] = c
            rows.append(row)
    return rows, basis


def reduce_modulo(f: CPoly, gens: Sequence[CPoly], order_key=None):
    """Multivariate division: f = sum q_i g_i + r, no term of r divisible by
    any leading monomial.  Returns (r, [q_i]).

    Exact over the scalar field.  When the leading monomials of `gens` are
    pairwise coprime the pair is a Groebner basis, so r == 0 is equivalent to
    ideal membership.
    """
    vs = f.variables
    if order_key is None:
        order_key = lambda e: (sum(e), e)

    def leading(p: CPoly):
        e = max(p.terms, key=order_key)
        return e, p.terms[e]

    leads = [leading(g) for g in gens]
    quotients = [CPoly.zero(vs) for _ in gens]
    r = CPoly.zero(vs)
    work = f
    while work.terms:
        e, c = leading(work)
        hit = None
        for k, (le, lc) in enumerate(leads):
            if all(x >= y for x, y in zip(e, le)):
                hit = (k, le, lc)
                break
        if hit is None:
            mono = CPoly(vs, {e: c})
            r = r + mono
            work = work - mono
        else:
            k, le, lc = hit
            q = CPoly(vs, {tuple(x - y for x, y in zip(e, le)): c / lc})
            quotients[k] = quotients[k] + q
            work = work - q * gens[k]
    return r, quotients


def pairwise_coprime_leads(gens: Sequence[CPoly], order_key=None) -> bool:
    if order_key is None:
        order_key = lambda e: (sum(e), e)
    leads = [max(g.terms, key=order_key) for g in gens]
    for a, b in combinations_with_replacement(range(len(leads)), 2):
        if a == b:
            continue
        if any(x and y for x, y in zip(leads[a], leads[b])):
            return False
    return True
