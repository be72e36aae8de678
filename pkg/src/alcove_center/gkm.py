"""Fixed-point models of torus-equivariant cohomology of partial affine flags.

Cohomology classes are polynomials on the Cartan subalgebra (variables are the
fundamental-weight linear forms) with a passive equivariant parameter h; the
affine Weyl group acts on linear forms by w plus a translation-dependent
multiple of h.  Pushforwards divide alternating fiber sums by the Euler form,
the product of the stabilizer walls.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charring import InvariantPoly, fundamental_point_values
from .errors import IdealTooComplex, InsufficientTruncation, NonExactDivision, NotInvariant
from .linkage import BlockLabel
from .root_datum import RootDatum, Weight
from .weyl import AffineElement, FiniteWeylElement, ParabolicType, length, min_coset_reps


class PolyOnCartan:
    """Polynomial in the fundamental-weight coordinates y_1..y_r and h.

    Keys are exponent tuples (n_1, .., n_r, n_h); coefficients are Fractions.
    """

    __slots__ = ("rank", "c")

    def __init__(self, rank: int, coeffs=None):
        self.rank = rank
        self.c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v:
                    self.c[tuple(k)] = v

    @classmethod
    def zero(cls, rank):
        return cls(rank)

    @classmethod
    def const(cls, rank, v):
        return cls(rank, {(0,) * (rank + 1): Fraction(v)})

    @classmethod
    def linear_form(cls, d: RootDatum, lam, h_coeff=0) -> "PolyOnCartan":
        coeffs = {}
        for i, a in enumerate(lam):
            if a:
                key = tuple(int(j == i) for j in range(d.rank)) + (0,)
                coeffs[key] = Fraction(a)
        if h_coeff:
            coeffs[(0,) * d.rank + (1,)] = Fraction(h_coeff)
        return cls(d.rank, coeffs)

    @classmethod
    def monomial(cls, rank, exps, coeff=1):
        return cls(rank, {tuple(exps): Fraction(coeff)})

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        r = PolyOnCartan(self.rank)
        r.c = out
        return r

    def __neg__(self):
        r = PolyOnCartan(self.rank)
        r.c = {k: -v for k, v in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                w = out.get(k, 0) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        r = PolyOnCartan(self.rank)
        r.c = out
        return r

    __rmul__ = __mul__

    def scale(self, v):
        v = Fraction(v)
        r = PolyOnCartan(self.rank)
        if v:
            r.c = {k: c * v for k, c in self.c.items()}
        return r

    def __pow__(self, n):
        out = PolyOnCartan.const(self.rank, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, PolyOnCartan) and self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def total_degree(self):
        return max((sum(k) for k in self.c), default=-1)

    def substitute(self, images) -> "PolyOnCartan":
        """Ring map sending y_i to images[i] and h to images[rank]."""
        power_cache = [{0: PolyOnCartan.const(self.rank, 1)} for _ in images]

        def pw(i, n):
            cache = power_cache[i]
            if n not in cache:
                cache[n] = pw(i, n - 1) * images[i]
            return cache[n]

        out = PolyOnCartan.zero(self.rank)
        for k, v in self.c.items():
            term = PolyOnCartan.const(self.rank, v)
            for i, n in enumerate(k):
                if n:
                    term = term * pw(i, n)
            out = out + term
        return out

    def divide_by_linear(self, form: "PolyOnCartan") -> "PolyOnCartan":
        """Exact division by a linear form; NonExactDivision if a remainder is left."""
        terms = sorted(form.c.items())
        assert all(sum(k) == 1 for k, _ in terms)
        pivot_key, pivot_coeff = max(terms)
        pivot = pivot_key.index(1)
        rem = dict(self.c)
        out = {}
        while rem:
            k = max(rem, key=lambda kk: kk[pivot])
            if k[pivot] == 0:
                raise NonExactDivision("linear form does not divide the polynomial")
            q = rem[k] / pivot_coeff
            qk = tuple(a - int(i == pivot) for i, a in enumerate(k))
            out[qk] = out.get(qk, 0) + q
            for fk, fv in form.c.items():
                kk = tuple(a + b for a, b in zip(qk, fk))
                w = rem.get(kk, 0) - q * fv
                if w:
                    rem[kk] = w
                else:
                    rem.pop(kk, None)
        r = PolyOnCartan(self.rank)
        r.c = {k: v for k, v in out.items() if v}
        return r

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"{v}*y^{k}" for k, v in sorted(self.c.items()))


def finite_action(d: RootDatum, w: FiniteWeylElement, f: PolyOnCartan) -> PolyOnCartan:
    images = [PolyOnCartan.linear_form(d, w.act(d.fundamental_weight(i))) for i in range(d.rank)]
    images.append(PolyOnCartan.monomial(d.rank, (0,) * d.rank + (1,)))
    return f.substitute(images)


def affine_action(d: RootDatum, x: AffineElement, f: PolyOnCartan) -> PolyOnCartan:
    """x = w tau_mu sends a weight form lam to w(lam) + (lam, mu) h; h is fixed."""
    images = []
    for i in range(d.rank):
        fw = d.fundamental_weight(i)
        images.append(PolyOnCartan.linear_form(d, x.w.act(fw), d.pairing(fw, x.t)))
    images.append(PolyOnCartan.monomial(d.rank, (0,) * d.rank + (1,)))
    return f.substitute(images)


def lambda_omega(d: RootDatum, block: BlockLabel) -> PolyOnCartan:
    """Product of the positive roots whose reflections stabilize the block."""
    out = PolyOnCartan.const(d.rank, 1)
    for alpha in block.wall_roots:
        out = out * PolyOnCartan.linear_form(d, alpha)
    return out


def pi_star_poly(d: RootDatum, block: BlockLabel, f: PolyOnCartan) -> PolyOnCartan:
    """The finite-fiber pushforward: alternate over the stabilizer, divide by the Euler form."""
    total = PolyOnCartan.zero(d.rank)
    for w in block.stabilizer:
        total = total + finite_action(d, w, f).scale((-1) ** w.length(d))
    for alpha in block.wall_roots:
        total = total.divide_by_linear(PolyOnCartan.linear_form(d, alpha))
    return total


@dataclass
class FixedPointFamily:
    """Rational-function values on an explicit finite set of fixed points."""

    entries: dict  # AffineElement.key() -> (AffineElement, numerator, denominator)
    bound: int

    def value(self, x: AffineElement):
        key = x.key()
        if key not in self.entries:
            raise InsufficientTruncation(f"family not defined at {x}")
        return self.entries[key][1], self.entries[key][2]

    def points(self):
        return [rec[0] for rec in sorted(self.entries.values(), key=lambda r: r[0].key())]


def restrict_invariant(d: RootDatum, block: BlockLabel, g: PolyOnCartan, f: PolyOnCartan, reps) -> FixedPointFamily:
    """The localization image of g tensor f: the family x -> g * x(f)."""
    for w in block.stabilizer:
        if finite_action(d, w, f) != f:
            raise NotInvariant("f is not invariant under the block stabilizer")
    one = PolyOnCartan.const(d.rank, 1)
    entries = {}
    bound = 0
    for x in reps:
        entries[x.key()] = (x, g * affine_action(d, x, f), one)
        bound = max(bound, length(x, d))
    return FixedPointFamily(entries, bound)


def _stabilizer_affine(d: RootDatum, block: BlockLabel, tag, scale):
    zero = (0,) * d.rank
    return [AffineElement(w, zero, tag, scale) for w in block.stabilizer]


def pi_star_fixed(d: RootDatum, block: BlockLabel, fam: FixedPointFamily, out_reps) -> FixedPointFamily:
    """Fixed-point pushforward: at y, alternate f over y W_omega and divide by y(Euler form)."""
    lam_om = lambda_omega(d, block)
    entries = {}
    bound = 0
    for y in out_reps:
        stab = _stabilizer_affine(d, block, y.tag, y.scale)
        num = PolyOnCartan.zero(d.rank)
        den = None
        for x in stab:
            fx_num, fx_den = fam.value(y * x)
            sign = (-1) ** x.w.length(d)
            if den is None:
                num, den = fx_num.scale(sign), fx_den
            else:
                num = num * fx_den + fx_num.scale(sign) * den
                den = den * fx_den
        euler = affine_action(d, y, lam_om)
        entries[y.key()] = (y, num, den * euler)
        bound = max(bound, length(y, d))
    return FixedPointFamily(entries, bound)


def _rational_equal(a, b) -> bool:
    return a[0] * b[1] == b[0] * a[1]


def check_pushforward_square(d: RootDatum, l: int, block: BlockLabel, degree_bound: int, truncation: int):
    """Verify restrict(pushforward) = pushforward(restrict) on all small monomials.

    Returns a report: a list of (monomial exponents, ok) plus the overall flag.
    """
    assert 0 not in block.parahoric_type, "block must have a finite parahoric type"
    out_reps = min_coset_reps(d, ParabolicType(block.parahoric_type), truncation, l)
    stab_aff = None
    domain = []
    for y in out_reps:
        stab_aff = _stabilizer_affine(d, block, y.tag, y.scale)
        domain.extend(y * x for x in stab_aff)
    monomials = _monomials_up_to(d.rank + 1, degree_bound)
    cases = []
    overall = True
    one = PolyOnCartan.const(d.rank, 1)
    for exps in monomials:
        f = PolyOnCartan.monomial(d.rank, exps)
        # down: push forward on polynomials, then restrict to the coset points
        lhs_family = restrict_invariant(d, block, one, pi_star_poly(d, block, f), out_reps)
        # across: restrict over the full fiber, then push forward pointwise
        pushed = pi_star_fixed(d, block, _plain_family(d, f, domain), out_reps)
        ok = all(_rational_equal(lhs_family.value(y), pushed.value(y)) for y in out_reps)
        cases.append((exps, ok))
        overall = overall and ok
    return {"cases": cases, "pass": overall}


def _plain_family(d: RootDatum, f: PolyOnCartan, domain) -> FixedPointFamily:
    one = PolyOnCartan.const(d.rank, 1)
    entries = {x.key(): (x, affine_action(d, x, f), one) for x in domain}
    return FixedPointFamily(entries, max((length(x, d) for x in domain), default=0))


def _monomials_up_to(nvars, bound):
    out = [()]
    for _ in range(nvars):
        out = [m + (k,) for m in out for k in range(bound + 1 - sum(m))]
    return sorted(out, key=lambda m: (sum(m), m))


@dataclass
class NormalConeElement:
    """sum_k h^{-k} g_k with g_k required to lie in the k-th power of a point ideal."""

    terms: dict           # k -> InvariantPoly (k = 0 allowed, unconstrained)
    point: Weight         # the ideal is the maximal ideal at zeta^{2(point+rho)}
    l: int


def nc_membership(d: RootDatum, elt: NormalConeElement, degree_cap: int = 60) -> bool:
    """Whether every g_k lies in m_point^k, by translated-degree counting."""
    values = fundamental_point_values(d, elt.l, elt.point)
    for k, g in elt.terms.items():
        if k <= 0 or not g:
            continue
        if g.total_degree() > degree_cap:
            raise IdealTooComplex(f"degree {g.total_degree()} exceeds cap {degree_cap}")
        shifted = g.shift(values)
        degs = [sum(e) for e, v in shifted.coeffs.items() if v]
        if degs and min(degs) < k:
            return False
    return True


def poincare_gr_exponents(d: RootDatum, truncation: int):
    """prod_i 1/(1 - t^{2 m_i}) truncated; coefficient of t^{2k} for k <= truncation."""
    top = 2 * truncation
    out = {0: 1}
    for m in d.exponents:
        acc = {}
        for deg, c in out.items():
            t = deg
            while t <= top:
                acc[t] = acc.get(t, 0) + c
                t += 2 * m
        out = acc
    return out
