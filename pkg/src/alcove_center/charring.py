"""The exact character ring of the torus.

A TorusChar is a finitely supported sum of symbols K_lam over the weight
lattice, with coefficients either Laurent polynomials in q_e (generic mode)
or elements of Q(zeta_l) (specialized mode).  The Weyl group permutes the
K_lam; twist automorphisms scale them by powers of q; evaluation sends K_lam
to q (or zeta) raised to a pairing exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NonExactDivision, NotDominant, NotInvariant
from .root_datum import RootDatum, Weight, dominance_leq, wadd, wneg
from .scalars import CycScalar, QLaurent
from .weyl import FiniteWeylElement, generate_finite_weyl

GENERIC = "generic"
ZETA = "zeta"


def _zero_coeff(mode, l):
    return QLaurent() if mode == GENERIC else CycScalar.zero(l)


def _one_coeff(mode, l):
    return QLaurent.const(1) if mode == GENERIC else CycScalar.const(l, 1)


def _coerce_coeff(v, mode, l):
    if isinstance(v, (int, Fraction)):
        return QLaurent.const(v) if mode == GENERIC else CycScalar.const(l, v)
    return v


class TorusChar:
    __slots__ = ("c", "mode", "l")

    def __init__(self, coeffs=None, mode=GENERIC, l=None):
        assert mode in (GENERIC, ZETA)
        assert (l is not None) == (mode == ZETA)
        self.mode = mode
        self.l = l
        self.c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _coerce_coeff(v, mode, l)
                if v:
                    self.c[tuple(k)] = v

    @classmethod
    def zero(cls, mode=GENERIC, l=None):
        return cls({}, mode, l)

    @classmethod
    def basis(cls, lam, mode=GENERIC, l=None):
        return cls({tuple(lam): 1}, mode, l)

    @classmethod
    def one(cls, rank, mode=GENERIC, l=None):
        return cls({(0,) * rank: 1}, mode, l)

    def _like(self, coeffs):
        out = TorusChar.zero(self.mode, self.l)
        out.c = coeffs
        return out

    def _check(self, other):
        assert isinstance(other, TorusChar) and other.mode == self.mode and other.l == self.l

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        self._check(other)
        out = dict(self.c)
        for k, v in other.c.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return self._like(out)

    def __neg__(self):
        return self._like({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TorusChar):
            return self.scale(other)
        self._check(other)
        a, b = (self.c, other.c) if len(self.c) <= len(other.c) else (other.c, self.c)
        out = {}
        for k1, v1 in a.items():
            for k2, v2 in b.items():
                k = wadd(k1, k2)
                w = out.get(k)
                w = v1 * v2 if w is None else w + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return self._like(out)

    __rmul__ = __mul__

    def scale(self, v):
        v = _coerce_coeff(v, self.mode, self.l)
        if not v:
            return TorusChar.zero(self.mode, self.l)
        return self._like({k: c * v for k, c in self.c.items()})

    def w_act(self, w: FiniteWeylElement) -> "TorusChar":
        return self._like({w.act(k): v for k, v in self.c.items()})

    def coeff(self, lam):
        return self.c.get(tuple(lam), _zero_coeff(self.mode, self.l))

    def support(self):
        return sorted(self.c)

    def __eq__(self, other):
        return (
            isinstance(other, TorusChar)
            and other.mode == self.mode
            and other.l == self.l
            and self.c == other.c
        )

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"({v})*K{k}" for k, v in sorted(self.c.items()))


def w_orbit(d: RootDatum, lam):
    return sorted({w.act(tuple(lam)) for w in generate_finite_weyl(d)})


def orbit_sum(d: RootDatum, lam, mode=GENERIC, l=None) -> TorusChar:
    return TorusChar({mu: 1 for mu in w_orbit(d, lam)}, mode, l)


def is_w_invariant(d: RootDatum, f: TorusChar) -> bool:
    return all(f.w_act(FiniteWeylElement.simple_reflection(d, i)) == f for i in range(d.rank))


def _grlex_key(k):
    return (sum(k), k)


def exact_divide(f: TorusChar, g: TorusChar) -> TorusChar:
    """Exact quotient f/g by graded-lex elimination; NonExactDivision on failure."""
    f._check(g)
    if not g:
        raise ZeroDivisionError("division by the zero character")
    if not f:
        return TorusChar.zero(f.mode, f.l)
    top = max(g.c, key=_grlex_key)
    lead = g.c[top]
    rank = len(top)
    spans = []
    for i in range(rank):
        fi = [k[i] for k in f.c]
        gi = [k[i] for k in g.c]
        spans.append((max(fi) - min(fi)) + (max(gi) - min(gi)) + 1)
    cap = 1
    for s in spans:
        cap *= s
    cap = min(cap + 16, 4_000_000)
    rem = dict(f.c)
    out = {}
    while rem:
        k = max(rem, key=_grlex_key)
        q = rem[k] / lead
        kk0 = wsub_t(k, top)
        out[kk0] = q
        for k2, v2 in g.c.items():
            kk = wadd(kk0, k2)
            w = rem.get(kk)
            w = -(q * v2) if w is None else w - q * v2
            if w:
                rem[kk] = w
            else:
                rem.pop(kk, None)
        cap -= 1
        if cap < 0:
            raise NonExactDivision("character division does not terminate; dividend not a multiple")
    h = TorusChar.zero(f.mode, f.l)
    h.c = out
    return h


def wsub_t(a, b):
    return tuple(x - y for x, y in zip(a, b))


def weyl_denominator(d: RootDatum, mode=GENERIC, l=None) -> TorusChar:
    """K_rho * prod over positive roots of (1 - K_{-alpha})."""
    out = TorusChar.basis(d.rho, mode, l)
    for alpha in d.positive_roots:
        factor = TorusChar({(0,) * d.rank: 1, wneg(alpha): -1}, mode, l)
        out = out * factor
    return out


def alternating_weyl_sum(d: RootDatum, lam, mode=GENERIC, l=None) -> TorusChar:
    """sum over W of (-1)^{l(w)} K_{w(lam)}."""
    out = {}
    for w in generate_finite_weyl(d):
        k = w.act(tuple(lam))
        out[k] = out.get(k, 0) + (-1) ** w.length(d)
    return TorusChar(out, mode, l)


@lru_cache(maxsize=None)
def _weyl_character_cached(d: RootDatum, lam) -> TorusChar:
    num = alternating_weyl_sum(d, wadd(lam, d.rho))
    den = alternating_weyl_sum(d, d.rho)
    return exact_divide(num, den)


def weyl_character(d: RootDatum, lam) -> TorusChar:
    """ch V(lam) by the alternating-sum formula with exact division."""
    lam = tuple(lam)
    if not d.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    return _weyl_character_cached(d, lam)


def weight_multiplicities(d: RootDatum, lam) -> dict:
    ch = weyl_character(d, lam)
    out = {}
    for k, v in ch.c.items():
        n = v.as_const()
        assert n is not None and n.denominator == 1 and n > 0
        out[k] = int(n)
    return out


def weight_multiset(d: RootDatum, lam):
    """Weights of V(lam) with multiplicity, as a sorted list with repeats."""
    out = []
    for k, n in weight_multiplicities(d, lam).items():
        out.extend([k] * n)
    return sorted(out)


def dominant_in_orbit(d: RootDatum, lam) -> Weight:
    mu = tuple(lam)
    for _ in range(10000):
        i = next((i for i in range(d.rank) if mu[i] < 0), None)
        if i is None:
            return mu
        mu = FiniteWeylElement.simple_reflection(d, i).act(mu)
    raise RuntimeError("dominance walk failed")


def tau_twist(d: RootDatum, nu, f: TorusChar, power: int = 2) -> TorusChar:
    """The twist K_lam -> q^{power (nu, lam)} K_lam; a ring automorphism."""
    e = d.pi1_order
    out = {}
    if f.mode == GENERIC:
        for k, v in f.c.items():
            exp = power * e * d.pairing(nu, k)
            assert exp.denominator == 1
            out[k] = v * QLaurent.q_power(int(exp))
    else:
        l = f.l
        for k, v in f.c.items():
            exp = power * e * d.pairing(nu, k)
            assert exp.denominator == 1
            out[k] = v * CycScalar.zeta_power(l, int(exp) % l)
    g = TorusChar.zero(f.mode, f.l)
    g.c = out
    return g


def evaluate_at(d: RootDatum, f: TorusChar, mu, shift: int = 2):
    """Evaluate K_lam -> q^{shift (lam, mu + rho)}; a ring homomorphism to scalars."""
    e = d.pi1_order
    point = wadd(tuple(mu), d.rho)
    if f.mode == GENERIC:
        out = QLaurent()
        for k, v in f.c.items():
            exp = shift * e * d.pairing(k, point)
            assert exp.denominator == 1
            out = out + v * QLaurent.q_power(int(exp))
        return out
    out = CycScalar.zero(f.l)
    for k, v in f.c.items():
        exp = shift * e * d.pairing(k, point)
        assert exp.denominator == 1
        out = out + v * CycScalar.zeta_power(f.l, int(exp) % f.l)
    return out


def quantum_dimension(d: RootDatum, lam) -> QLaurent:
    """L(q^{2(lam+rho)}) / L(q^{2 rho}); zero exactly when lam + rho is singular."""
    L = weyl_denominator(d)
    num = evaluate_at(d, L, lam, 2)
    den = evaluate_at(d, L, (0,) * d.rank, 2)
    if not num:
        return QLaurent()
    return num / den


def factorize_denominator(d: RootDatum, block, mode=GENERIC, l=None):
    """Split L = L_omega * L'_omega along the stabilizer walls of a block label."""
    walls = set(block.wall_roots)
    l_om = TorusChar.basis(d.rho, mode, l)
    l_rest = TorusChar.one(d.rank, mode, l)
    for alpha in d.positive_roots:
        factor = TorusChar({(0,) * d.rank: 1, wneg(alpha): -1}, mode, l)
        if alpha in walls:
            l_om = l_om * factor
        else:
            l_rest = l_rest * factor
    return l_om, l_rest


def specialize(f: TorusChar, l: int) -> TorusChar:
    """Coefficientwise q_e -> zeta_e; terms with vanishing image are dropped."""
    assert f.mode == GENERIC
    out = TorusChar.zero(ZETA, l)
    out.c = {}
    for k, v in f.c.items():
        s = v.specialize(l)
        if s:
            out.c[k] = s
    return out


@dataclass
class InvariantPoly:
    """Polynomial in the fundamental characters e_i = ch V(pi_i)."""

    coeffs: dict  # exponent tuple -> coefficient in the active ring
    mode: str = GENERIC
    l: int = None

    def expand(self, d: RootDatum) -> TorusChar:
        out = TorusChar.zero(self.mode, self.l)
        for exps, v in self.coeffs.items():
            term = TorusChar.one(d.rank, self.mode, self.l)
            for i, n in enumerate(exps):
                if n:
                    term = term * _fundamental_char_power(d, i, n, self.mode, self.l)
            out = out + term.scale(v)
        return out

    def evaluate(self, values, one=None):
        """Evaluate at given values of the e_i (any ring with + and *).

        `one` supplies the ring identity so purely constant terms land in the
        value ring rather than the coefficient ring.
        """
        total = None
        for exps, v in sorted(self.coeffs.items()):
            term = one * v if one is not None else v
            for i, n in enumerate(exps):
                for _ in range(n):
                    term = term * values[i]
            total = term if total is None else total + term
        return total

    def _coerce(self, other) -> "InvariantPoly":
        if isinstance(other, InvariantPoly):
            return other
        rank = len(next(iter(self.coeffs)))
        return InvariantPoly({(0,) * rank: _coerce_coeff(other, self.mode, self.l)}, self.mode, self.l)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return InvariantPoly(out, self.mode, self.l)

    __radd__ = __add__

    def __neg__(self):
        return InvariantPoly({k: -v for k, v in self.coeffs.items()}, self.mode, self.l)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, InvariantPoly):
            v0 = _coerce_coeff(other, self.mode, self.l)
            return InvariantPoly({k: v * v0 for k, v in self.coeffs.items() if v * v0}, self.mode, self.l)
        out = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                k = tuple(x + y for x, y in zip(e1, e2))
                w = out.get(k)
                w = v1 * v2 if w is None else w + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return InvariantPoly(out, self.mode, self.l)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        rank = len(next(iter(self.coeffs)))
        out = InvariantPoly({(0,) * rank: _one_coeff(self.mode, self.l)}, self.mode, self.l)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, point_values) -> "InvariantPoly":
        """Rewrite in coordinates centered at a point: e_i -> e_i + c_i."""
        coeffs = dict(self.coeffs)
        nvars = len(point_values)
        for i in range(nvars):
            ci = point_values[i]
            out = {}
            for exps, v in coeffs.items():
                n = exps[i]
                # (u + c)^n expansion in variable i
                for j in range(n + 1):
                    binom = _binomial(n, j)
                    coeff = v * binom
                    for _ in range(n - j):
                        coeff = coeff * ci
                    key = exps[:i] + (j,) + exps[i + 1:]
                    w = out.get(key)
                    w = coeff if w is None else w + coeff
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
            coeffs = out
        return InvariantPoly(coeffs, self.mode, self.l)

    def min_total_degree(self):
        if not self.coeffs:
            return None
        return min(sum(e) for e in self.coeffs)

    def total_degree(self):
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)


def _binomial(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


@lru_cache(maxsize=None)
def _fundamental_char_generic(d: RootDatum, i: int) -> TorusChar:
    return weyl_character(d, d.fundamental_weight(i))


_FUND_POWER_CACHE = {}


def _fundamental_char_power(d: RootDatum, i: int, n: int, mode, l) -> TorusChar:
    key = (d.series_type, d.rank, i, n, mode, l)
    if key not in _FUND_POWER_CACHE:
        base = _fundamental_char_generic(d, i)
        if mode == ZETA:
            base = specialize(base, l)
        if n == 1:
            out = base
        else:
            out = _fundamental_char_power(d, i, n - 1, mode, l) * base
        _FUND_POWER_CACHE[key] = out
    return _FUND_POWER_CACHE[key]


def fundamental_char(d: RootDatum, i: int, mode=GENERIC, l=None) -> TorusChar:
    return _fundamental_char_power(d, i, 1, mode, l)


def fundamental_point_values(d: RootDatum, l: int, mu):
    """The tuple (e_1, .., e_r) evaluated at the point zeta^{2(mu+rho)}."""
    return [evaluate_at(d, fundamental_char(d, i, ZETA, l), mu, 2) for i in range(d.rank)]


def freudenthal_multiplicities(d: RootDatum, lam) -> dict:
    """Weight multiplicities of V(lam) by the Freudenthal recursion.

    Kept independent of the production path (alternating sum + exact
    division) so the two can cross-check each other:
    m(mu) [(lam+rho)^2 - (mu+rho)^2] = 2 sum_{alpha>0, k>0} m(mu+k alpha) (mu+k alpha, alpha).
    """
    from .weyl import longest_element

    lam = tuple(lam)
    if not d.is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    w0lam = longest_element(d).act(lam)

    def in_hull(mu):
        up = d.root_coords(wsub_t(lam, mu))
        dn = d.root_coords(wsub_t(mu, w0lam))
        return all(c.denominator == 1 and c >= 0 for c in up) and all(
            c.denominator == 1 and c >= 0 for c in dn
        )

    mult = {lam: 1}
    level = [lam]
    simple = [d.simple_root(i) for i in range(d.rank)]
    seen = {lam}
    lam_r = wadd(lam, d.rho)
    norm_top = d.pairing(lam_r, lam_r)
    while level:
        nxt = []
        for mu in level:
            for a in simple:
                cand = wsub_t(mu, a)
                if cand not in seen and in_hull(cand):
                    seen.add(cand)
                    nxt.append(cand)
        nxt.sort()
        for mu in nxt:
            num = Fraction(0)
            for alpha in d.positive_roots:
                k = 1
                while True:
                    up = wadd(mu, tuple(k * x for x in alpha))
                    if not in_hull(up):
                        break
                    m = mult.get(up, 0)
                    if m:
                        num += m * d.pairing(up, alpha)
                    k += 1
            if num:
                mu_r = wadd(mu, d.rho)
                val = 2 * num / (norm_top - d.pairing(mu_r, mu_r))
                assert val.denominator == 1 and val > 0
                mult[mu] = int(val)
        level = nxt
    return mult


def to_fundamental_basis(d: RootDatum, f: TorusChar) -> InvariantPoly:
    """Write a W-invariant character as a polynomial in the e_i.

    Repeatedly subtracts c * prod e_i^{n_i} matching the dominance-maximal
    dominant support term; terminates because each step strictly lowers the
    dominant support in the dominance order.
    """
    if not is_w_invariant(d, f):
        raise NotInvariant("character is not W-invariant")
    work = TorusChar.zero(f.mode, f.l)
    work.c = dict(f.c)
    out = {}
    for _ in range(200000):
        if not work.c:
            return InvariantPoly(out, f.mode, f.l)
        dominants = [k for k in work.c if d.is_dominant(k)]
        if not dominants:
            raise NotInvariant("support has no dominant member; invariance was broken")
        maximal = [k for k in dominants if not any(m != k and dominance_leq(d, k, m) for m in dominants)]
        lead = max(maximal, key=_grlex_key)
        coeff = work.c[lead]
        term = TorusChar.one(d.rank, f.mode, f.l)
        for i, n in enumerate(lead):
            if n:
                term = term * _fundamental_char_power(d, i, n, f.mode, f.l)
        work = work - term.scale(coeff)
        key = tuple(lead)
        out[key] = coeff if key not in out else out[key] + coeff
    raise NonExactDivision("fundamental-basis conversion did not terminate")
