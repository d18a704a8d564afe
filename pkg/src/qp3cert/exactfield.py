"""Exact scalar arithmetic: Gaussian rationals, sparse multivariate polynomials
over them, and the rational-function field towers Q(i)(u)(t, ...) that every
other module computes over.

All values are immutable and all operations are exact.  The deformation
parameter enters through ``ParameterContext``: the tower is based on u with
q := u^2, so square roots of q (and of -q, via i*u) exist in the field itself.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence, Union

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is the normal backend
    from fractions import Fraction as _Q

_Q0 = _Q(0)
_Q1 = _Q(1)

RatLike = Union[int, str, "_Q"]


class GaussianRational:
    """An element a + b*i of Q(i), both parts arbitrary-precision rationals.

    Stored in lowest terms with positive denominators (the backend rational
    type guarantees this).
    """

    __slots__ = ("re", "im")

    def __init__(self, re: RatLike = 0, im: RatLike = 0):
        object.__setattr__(self, "re", _Q(re))
        object.__setattr__(self, "im", _Q(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational(a * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    def inv(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        return self * other.inv()

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_rational(self) -> bool:
        return not self.im

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i" if self.im != 1 else "i"
        sign = "+" if self.im > 0 else "-"
        im = abs(self.im)
        istr = "i" if im == 1 else f"{im}*i"
        return f"{self.re}{sign}{istr}"


G_ZERO = GaussianRational(0)
G_ONE = GaussianRational(1)
G_I = GaussianRational(0, 1)


def gauss(re: RatLike = 0, im: RatLike = 0) -> GaussianRational:
    return GaussianRational(re, im)


class MultiPoly:
    """Sparse multivariate polynomial over Q(i).

    ``variables`` is a sorted tuple of names; ``terms`` maps exponent tuples
    (one entry per variable) to nonzero GaussianRational coefficients.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, GaussianRational]):
        vs = tuple(variables)
        object.__setattr__(self, "variables", vs)
        clean = {e: c for e, c in terms.items() if c}
        for e in clean:
            if len(e) != len(vs):
                raise ValueError("exponent vector length mismatch")
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(c: GaussianRational, variables: Sequence[str] = ()) -> "MultiPoly":
        vs = tuple(variables)
        if not c:
            return MultiPoly(vs, {})
        return MultiPoly(vs, {(0,) * len(vs): c})

    @staticmethod
    def var(name: str) -> "MultiPoly":
        return MultiPoly((name,), {(1,): G_ONE})

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.terms:
            return G_ZERO
        ((e, c),) = self.terms.items()
        if any(e):
            raise ValueError("not a constant")
        return c

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, var: str) -> int:
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=0)

    def leading(self) -> tuple:
        """Leading (exponent, coeff) under graded-lex on the variable tuple."""
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    # -- variable alignment -------------------------------------------
    def with_variables(self, vs: tuple) -> "MultiPoly":
        if vs == self.variables:
            return self
        pos = [vs.index(v) for v in self.variables]
        nt = {}
        for e, c in self.terms.items():
            ne = [0] * len(vs)
            for i, x in enumerate(e):
                ne[pos[i]] = x
            nt[tuple(ne)] = c
        return MultiPoly(vs, nt)

    @staticmethod
    def _aligned(a: "MultiPoly", b: "MultiPoly"):
        if a.variables == b.variables:
            return a, b
        vs = tuple(sorted(set(a.variables) | set(b.variables)))
        return a.with_variables(vs), b.with_variables(vs)

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        a, b = MultiPoly._aligned(self, other)
        t = dict(a.terms)
        for e, c in b.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s:
                    t[e] = s
                else:
                    del t[e]
        return MultiPoly(a.variables, t)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        a, b = MultiPoly._aligned(self, other)
        if not a.terms or not b.terms:
            return MultiPoly(a.variables, {})
        t: dict = {}
        bitems = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bitems:
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
        return MultiPoly(a.variables, t)

    def scale(self, c: GaussianRational) -> "MultiPoly":
        if not c:
            return MultiPoly(self.variables, {})
        return MultiPoly(self.variables, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = MultiPoly._aligned(self, other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def substitute(self, assignment: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Substitute polynomials for (some) variables."""
        keep = [v for v in self.variables if v not in assignment]
        out = MultiPoly.const(G_ZERO, tuple(keep))
        for e, c in self.terms.items():
            term = MultiPoly.const(c, tuple(keep))
            resid = [0] * len(keep)
            for i, v in enumerate(self.variables):
                if v in assignment:
                    if e[i]:
                        p = assignment[v]
                        for _ in range(e[i]):
                            term = term * p
                else:
                    resid[keep.index(v)] = e[i]
            if any(resid):
                term = term * MultiPoly(tuple(keep), {tuple(resid): G_ONE})
            out = out + term
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), e)):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.variables, e)
                if k
            )
            if mono:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"({c})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# polynomial gcd (recursive primitive PRS; univariate case is plain Euclid
# over the field Q(i))
# ---------------------------------------------------------------------------

def _poly_divmod_uni(a: MultiPoly, b: MultiPoly):
    """Division with remainder for univariate polys over Q(i) (same 1-var tuple)."""
    (v,) = a.variables
    q: dict = {}
    rem = dict(a.terms)
    db = b.degree_in(v)
    lb = b.terms[(db,)]
    lb_inv = lb.inv()
    while rem:
        da = max(e[0] for e in rem)
        if da < db:
            break
        c = rem[(da,)] * lb_inv
        q[(da - db,)] = c
        for e, bc in b.terms.items():
            k = (e[0] + da - db,)
            s = rem.get(k, G_ZERO) - bc * c
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return MultiPoly(a.variables, q), MultiPoly(a.variables, rem)


def _gcd_uni(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    while not b.is_zero():
        _, r = _poly_divmod_uni(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    _, lc = a.leading()
    return a.scale(lc.inv())


def _split_main(p: MultiPoly):
    """View p as univariate in its first variable with MultiPoly coefficients."""
    v = p.variables[0]
    rest = p.variables[1:]
    coeffs: dict = {}
    for e, c in p.terms.items():
        coeffs.setdefault(e[0], {})[e[1:]] = c
    return {d: MultiPoly(rest, t) for d, t in coeffs.items()}, v, rest


def _join_main(coeffs: Mapping[int, MultiPoly], v: str, rest: tuple) -> MultiPoly:
    terms = {}
    for d, p in coeffs.items():
        for e, c in p.terms.items():
            terms[(d,) + e] = c
    return MultiPoly((v,) + rest, terms)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Gcd of multivariate polynomials over Q(i), monic in the leading coeff.

    Univariate inputs use Euclid; more variables use a primitive PRS recursing
    on the lowest live variable.  Inputs are aligned first.
    """
    a, b = MultiPoly._aligned(a, b)
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(G_ONE, a.variables)
    live = tuple(v for v in a.variables if a.degree_in(v) or b.degree_in(v))
    if len(live) == 1:
        g = _gcd_uni(_project_uni(a, live[0]), _project_uni(b, live[0]))
        return g.with_variables(a.variables)
    ambient = a.variables
    a_s = _strip_vars(a).with_variables(live)
    b_s = _strip_vars(b).with_variables(live)
    return _gcd_multi(a_s, b_s).with_variables(ambient)


def _monic(p: MultiPoly) -> MultiPoly:
    if p.is_zero():
        return p
    _, lc = p.leading()
    return p.scale(lc.inv())


def _project_uni(p: MultiPoly, v: str) -> MultiPoly:
    i = p.variables.index(v)
    return MultiPoly((v,), {(e[i],): c for e, c in p.terms.items()})


def _content_and_primitive(p: MultiPoly):
    coeffs, v, rest = _split_main(p)
    vals = list(coeffs.values())
    cont = vals[0]
    for q in vals[1:]:
        cont = poly_gcd(cont, q)
        if cont.is_constant() and not cont.is_zero():
            cont = MultiPoly.const(G_ONE, rest)
            break
    if cont.is_constant():
        return cont, p
    prim = {d: _exact_div(c, cont) for d, c in coeffs.items()}
    return cont, _join_main(prim, v, rest)


def _gcd_multi(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    va = _split_main(a)[1]
    if a.degree_in(va) == 0 or b.degree_in(va) == 0:
        # main variable absent in one: gcd divides its content
        flat_a = a if a.degree_in(va) == 0 else _content_and_primitive(a)[0].with_variables(a.variables)
        flat_b = b if b.degree_in(va) == 0 else _content_and_primitive(b)[0].with_variables(b.variables)
        return poly_gcd(flat_a, flat_b)
    ca, pa = _content_and_primitive(a)
    cb, pb = _content_and_primitive(b)
    cont = poly_gcd(ca.with_variables(a.variables), cb.with_variables(a.variables))
    g = _prs(pa, pb)
    _, gp = _content_and_primitive(g)
    return _monic(cont * gp)


def _prs(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Primitive polynomial remainder sequence in the first variable."""
    v = a.variables[0]
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, v)
        if r.is_zero():
            return b
        if r.degree_in(v) == 0:
            return MultiPoly.const(G_ONE, a.variables)
        _, r = _content_and_primitive(r)
        a, b = b, r


def _pseudo_rem(a: MultiPoly, b: MultiPoly, v: str) -> MultiPoly:
    ca, _, rest = _split_main(a)
    cb, _, _ = _split_main(b)
    db = max(cb)
    lb = cb[db]
    rem = dict(ca)
    while rem:
        da = max(rem)
        if da < db:
            break
        lead = rem[da]
        # rem := lb*rem - lead*b*x^(da-db)
        new: dict = {}
        for d, c in rem.items():
            new[d] = c * lb
        for d, c in cb.items():
            k = d + da - db
            s = new.get(k, MultiPoly.const(G_ZERO, rest)) - c * lead
            new[k] = s
        rem = {d: c for d, c in new.items() if not c.is_zero()}
    return _join_main(rem, v, rest)


def _exact_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact division a/b (raises if not exact)."""
    a, b = MultiPoly._aligned(a, b)
    if b.is_constant():
        return a.scale(b.constant_value().inv())
    q = MultiPoly.const(G_ZERO, a.variables)
    rem = a
    eb, cb = b.leading()
    while not rem.is_zero():
        ea, ca = rem.leading()
        de = tuple(x - y for x, y in zip(ea, eb))
        if any(d < 0 for d in de):
            raise ArithmeticError("inexact polynomial division")
        t = MultiPoly(a.variables, {de: ca / cb})
        q = q + t
        rem = rem - t * b
    return q


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Element of the exact fraction field of MultiPoly.

    Canonical form: gcd removed, denominator's leading coefficient (under the
    fixed graded-lex order) normalized to 1, so equal fractions compare equal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, _canonical: bool = False):
        num, den = MultiPoly._aligned(num, den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _canonical:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RationalFunction is immutable")

    # -- constructors --------------------------------------------------
    @staticmethod
    def const(c: GaussianRational) -> "RationalFunction":
        return RationalFunction(MultiPoly.const(c), MultiPoly.const(G_ONE), _canonical=True)

    @staticmethod
    def from_poly(p: MultiPoly) -> "RationalFunction":
        return RationalFunction(p, MultiPoly.const(G_ONE, p.variables), _canonical=True)

    @staticmethod
    def var(name: str) -> "RationalFunction":
        return RationalFunction.from_poly(MultiPoly.var(name))

    # -- queries --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> GaussianRational:
        return self.num.constant_value() / self.den.constant_value()

    # -- field operations ------------------------------------------------
    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction(self.num - other.num, self.den)
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def inv(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inv() ** (-n)
        out = RationalFunction.const(G_ONE)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = RationalFunction.const(GaussianRational(other))
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a, c = MultiPoly._aligned(self.num, other.num)
        b, d = MultiPoly._aligned(self.den, other.den)
        return (a * d) == (c * b)

    def __hash__(self):
        n, d = _strip_vars(self.num), _strip_vars(self.den)
        return hash((n, d))

    def substitute(self, assignment: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        """Substitute field values for variables (evaluation/specialization)."""
        num = _poly_subst_rf(self.num, assignment)
        den = _poly_subst_rf(self.den, assignment)
        return num / den

    def __repr__(self):
        if self.den.is_constant() and self.den.constant_value() == G_ONE:
            return repr(self.num)
        return f"({self.num})/({self.den})"


def _poly_subst_rf(p: MultiPoly, assignment: Mapping[str, "RationalFunction"]) -> "RationalFunction":
    keep = tuple(v for v in p.variables if v not in assignment)
    out = RF_ZERO
    powers = {v: {} for v in p.variables if v in assignment}
    for e, c in p.terms.items():
        term = RationalFunction.const(c)
        resid = [0] * len(keep)
        for i, v in enumerate(p.variables):
            if v in assignment:
                if e[i]:
                    cache = powers[v]
                    if e[i] not in cache:
                        cache[e[i]] = assignment[v] ** e[i]
                    term = term * cache[e[i]]
            elif e[i]:
                resid[keep.index(v)] = e[i]
        if any(resid):
            term = term * RationalFunction.from_poly(MultiPoly(keep, {tuple(resid): G_ONE}))
        out = out + term
    return out


def _strip_vars(p: MultiPoly) -> MultiPoly:
    live = tuple(v for v in p.variables if p.degree_in(v))
    if live == p.variables:
        return p
    idx = [p.variables.index(v) for v in live]
    return MultiPoly(live, {tuple(e[i] for i in idx): c for e, c in p.terms.items()})


def _reduce(num: MultiPoly, den: MultiPoly):
    if num.is_zero():
        return MultiPoly.const(G_ZERO, num.variables), MultiPoly.const(G_ONE, num.variables)
    if den.is_constant():
        c = den.constant_value()
        return num.scale(c.inv()), MultiPoly.const(G_ONE, num.variables)
    if num.is_constant():
        _, lc = den.leading()
        return num.scale(lc.inv()), den.scale(lc.inv())
    g = poly_gcd(num, den)
    if not (g.is_constant()):
        num = _exact_div(num, g.with_variables(num.variables))
        den = _exact_div(den, g.with_variables(den.variables))
    _, lc = den.leading()
    if lc != G_ONE:
        num = num.scale(lc.inv())
        den = den.scale(lc.inv())
    return num, den


# convenience scalar constructors ------------------------------------------

def rf(re: RatLike = 0, im: RatLike = 0) -> RationalFunction:
    return RationalFunction.const(GaussianRational(re, im))


RF_ZERO = rf(0)
RF_ONE = rf(1)
RF_I = rf(0, 1)


class ParameterContext:
    """The deformation-parameter tower.

    In symbolic mode u is a free transcendental; in specialized mode it is a
    fixed nonzero rational with |u| != 1 (so q = u^2 is a positive rational
    different from 1, hence not a root of unity).  Derived values:

        q = u^2,  b = i(q-1)/(q+1),  kappa = 1/(q^-1 - q),  sqrt(q) := u.
    """

    def __init__(self, mode: str = "specialized", u: RatLike = 2):
        if mode not in ("symbolic", "specialized"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        if mode == "symbolic":
            self.u = RationalFunction.var("u")
            self.u_value = None
        else:
            uv = GaussianRational(u)
            if not uv.is_rational():
                raise ValueError("specialized u must be rational")
            if uv.re == 0 or abs(uv.re) == 1:
                raise ValueError("specialized u must have |u| not in {0, 1}: "
                                 "q = u^2 would be 0 or a root of unity")
            self.u = RationalFunction.const(uv)
            self.u_value = uv
        self.q = self.u * self.u
        one = RF_ONE
        self.b = RF_I * (self.q - one) / (self.q + one)
        self.kappa = (self.q.inv() - self.q).inv()
        self._check_invariants()

    def _check_invariants(self):
        i = RF_I
        one = RF_ONE
        assert (one - i * self.b) / (one + i * self.b) == self.q
        lhs = self.q - self.q.inv()
        rhs = rf(-4) * i * self.b / (one + self.b * self.b)
        assert lhs == rhs

    # scalar constructors ------------------------------------------------
    def rat(self, re: RatLike, im: RatLike = 0) -> RationalFunction:
        return RationalFunction.const(GaussianRational(re, im))

    @property
    def i(self) -> RationalFunction:
        return RF_I

    @property
    def sqrt_q(self) -> RationalFunction:
        return self.u

    def sqrt_sign(self, sign: int) -> RationalFunction:
        """sqrt(+1) := 1, sqrt(-1) := i (the fixed convention)."""
        return RF_ONE if sign > 0 else RF_I

    def sqrt_sign_q(self, sign: int) -> RationalFunction:
        """sqrt(+q) := u, sqrt(-q) := i*u (the fixed convention)."""
        return self.u if sign > 0 else RF_I * self.u

    def q_half_power(self, k: int) -> RationalFunction:
        """q^(k/2) = u^k for integer k."""
        return self.u ** k

    def transcendental(self, name: str) -> RationalFunction:
        if name == "u":
            raise ValueError("'u' is reserved for the deformation parameter")
        return RationalFunction.var(name)

    def quantum_integer(self, m: int) -> RationalFunction:
        """[m] = (q^m - q^-m)/(q - q^-1)."""
        q = self.q
        return (q ** m - q ** (-m)) / (q - q.inv())

    def describe(self) -> dict:
        return {
            "mode": self.mode,
            "u": repr(self.u_value) if self.u_value is not None else "u",
            "q": repr(self.q),
            "b": repr(self.b),
        }


def field_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Named-op entry point: add | mul | inv (inv ignores b)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")
