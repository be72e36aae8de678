"""The Harish-Chandra center and its trace operators.

Central elements are W-invariant torus characters, equivalently polynomials
in the fundamental characters e_i = ch V(pi_i); central characters evaluate
them at the points zeta^{2(lam+rho)} of T/W.  The trace of tensoring by a
module V acts on the center by f -> (sum over weights nu of V of
tau^2_nu(f*L)) / L; evaluating that at a singular point is done by exact
localization along a one-parameter curve through the point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charring import (
    GENERIC,
    ZETA,
    InvariantPoly,
    TorusChar,
    dominant_in_orbit,
    evaluate_at,
    exact_divide,
    factorize_denominator,
    fundamental_char,
    fundamental_point_values,
    is_w_invariant,
    quantum_dimension,
    specialize,
    tau_twist,
    to_fundamental_basis,
    weight_multiplicities,
    weyl_denominator,
)
from .errors import NonExactDivision, NotInvariant, PointsNotSeparated
from .linkage import BlockLabel, make_block_label, point_signature
from .root_datum import RootDatum, Weight, pair2e, wadd, wneg
from .scalars import CycScalar

# ---------------------------------------------------------------------------
# central elements and central characters


@dataclass
class CentralElement:
    """A W-invariant character of the torus, with a cached e_i-polynomial form."""

    char: TorusChar = None
    poly: InvariantPoly = None

    def __post_init__(self):
        assert self.char is not None or self.poly is not None

    @property
    def mode(self):
        return self.char.mode if self.char is not None else self.poly.mode

    @property
    def l(self):
        return self.char.l if self.char is not None else self.poly.l

    def as_char(self, d: RootDatum) -> TorusChar:
        if self.char is None:
            self.char = self.poly.expand(d)
        return self.char

    def as_poly(self, d: RootDatum) -> InvariantPoly:
        if self.poly is None:
            self.poly = to_fundamental_basis(d, self.char)
        return self.poly


@dataclass
class CentralFunction:
    """A scalar-valued function on an explicit finite set of weights."""

    values: dict


def central_character(d: RootDatum, l: int, f, lam) -> CycScalar:
    """The scalar by which f acts on the Verma of highest weight lam."""
    char = f.as_char(d) if isinstance(f, CentralElement) else f
    assert char.mode == ZETA and char.l == l
    return evaluate_at(d, char, lam, 2)


def central_function_from_invariant(d: RootDatum, l: int, f, domain) -> CentralFunction:
    return CentralFunction({tuple(mu): central_character(d, l, f, mu) for mu in domain})


# ---------------------------------------------------------------------------
# the trace operator and its quantum-trace oracle


def bernstein_trace_weights(d: RootDatum, weights: dict, f: TorusChar) -> TorusChar:
    """The trace operator for an arbitrary W-stable weight multiset."""
    if not is_w_invariant(d, f):
        raise NotInvariant("trace input must be W-invariant")
    L = weyl_denominator(d, f.mode, f.l)
    fl = f * L
    num = TorusChar.zero(f.mode, f.l)
    for nu, m in sorted(weights.items()):
        num = num + tau_twist(d, nu, fl, 2).scale(m)
    return exact_divide(num, L)


def bernstein_trace(d: RootDatum, v_highest, f: TorusChar) -> TorusChar:
    """f -> (sum_{nu in P(V)} tau^2_nu(f*L)) / L for V the Weyl module V(v_highest)."""
    return bernstein_trace_weights(d, weight_multiplicities(d, v_highest), f)


def quantum_trace_oracle(d: RootDatum, mu, v_highest, f: TorusChar):
    """sum_nu chi_{mu+nu}(q^{2 rho}) f(q^{2(mu+nu+rho)}), the tensor-identity form."""
    assert f.mode == GENERIC
    total = None
    for nu, m in sorted(weight_multiplicities(d, v_highest).items()):
        shift_pt = wadd(tuple(mu), nu)
        term = quantum_dimension(d, shift_pt) * evaluate_at(d, f, shift_pt, 2) * m
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# truncated exact power series along a curve through an evaluation point


class TruncSeries:
    """Power series in s over Q(zeta_l), carried to an explicit precision."""

    __slots__ = ("l", "co", "prec")

    def __init__(self, l, co, prec):
        self.l = l
        self.prec = prec
        self.co = list(co[:prec])
        while len(self.co) < prec:
            self.co.append(CycScalar.zero(l))

    @classmethod
    def const(cls, l, value, prec):
        co = [CycScalar.zero(l)] * prec
        if prec > 0:
            co = [value if isinstance(value, CycScalar) else CycScalar.const(l, value)] + co[1:]
        return cls(l, co, prec)

    def order(self):
        for i, c in enumerate(self.co):
            if c:
                return i
        return self.prec

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.const(self.l, other, self.prec)
        p = min(self.prec, other.prec)
        return TruncSeries(self.l, [a + b for a, b in zip(self.co[:p], other.co[:p])], p)

    def __neg__(self):
        return TruncSeries(self.l, [-a for a in self.co], self.prec)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.const(self.l, other, self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return TruncSeries.const(self.l, other, self.prec) - self

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries(self.l, [a * other for a in self.co], self.prec)
        p = min(self.prec + other.order(), other.prec + self.order())
        p = min(p, self.prec + other.prec)
        out = [CycScalar.zero(self.l) for _ in range(p)]
        for i, a in enumerate(self.co):
            if a and i < p:
                for j, b in enumerate(other.co):
                    if i + j >= p:
                        break
                    if b:
                        out[i + j] = out[i + j] + a * b
        return TruncSeries(self.l, out, p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = TruncSeries.const(self.l, 1, self.prec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divide(self, other: "TruncSeries") -> "TruncSeries":
        """Exact series division; the divisor's order must not exceed ours."""
        k = other.order()
        if k >= other.prec:
            raise ZeroDivisionError("series division by zero-to-precision")
        if self.order() < k:
            raise NonExactDivision("series quotient would have a pole")
        p = min(self.prec, other.prec) - k
        a = self.co[k:k + p]
        b = other.co[k:k + p]
        inv0 = b[0].inverse()
        out = []
        for i in range(p):
            acc = a[i] if i < len(a) else CycScalar.zero(self.l)
            for j in range(i):
                acc = acc - out[j] * b[i - j]
            out.append(acc * inv0)
        return TruncSeries(self.l, out, p)

    def constant_term(self) -> CycScalar:
        assert self.prec >= 1
        return self.co[0]

    def __repr__(self):
        return f"Series({self.co[:self.prec]}, prec={self.prec})"


_BINOM_CACHE = {}


def _binom_row(m: int, prec: int):
    """Binomial coefficients C(m, k) for k < prec, m any integer."""
    key = (m, prec)
    if key not in _BINOM_CACHE:
        row = [Fraction(1)]
        for k in range(1, prec):
            row.append(row[-1] * Fraction(m - k + 1, k))
        _BINOM_CACHE[key] = row
    return _BINOM_CACHE[key]


class CurvePoint:
    """The ring map K_lam -> zeta^{2(lam, mu+rho)} (1+s)^{2e(lam, rho)}.

    Evaluation at s = 0 is the point zeta^{2(mu+rho)} on T; the exponent
    2e(lam, rho) is nonzero on every root, so the curve leaves every wall at
    first order.
    """

    def __init__(self, d: RootDatum, l: int, mu, prec: int):
        self.d = d
        self.l = l
        self.mu = tuple(mu)
        self.prec = prec
        self._shifted = wadd(self.mu, d.rho)
        self._cache = {}

    def weight_series(self, lam) -> TruncSeries:
        lam = tuple(lam)
        if lam not in self._cache:
            d, l = self.d, self.l
            z = CycScalar.zeta_power(l, pair2e(d, lam, self._shifted) % l)
            m = pair2e(d, lam, d.rho)
            row = _binom_row(m, self.prec)
            self._cache[lam] = TruncSeries(l, [z * c for c in row], self.prec)
        return self._cache[lam]

    def char_series(self, f: TorusChar) -> TruncSeries:
        assert f.mode == ZETA and f.l == self.l
        total = TruncSeries.const(self.l, 0, self.prec)
        for lam, c in sorted(f.c.items()):
            total = total + self.weight_series(lam) * c
        return total


# ---------------------------------------------------------------------------
# block idempotents by congruence interpolation


@dataclass(frozen=True)
class IdempotentSpec:
    target: Weight
    others: tuple
    n: int = 1


class BlockIdempotent:
    """p = 1 - (1 - prod_j h_j^n)^n with h_j a normalized separating coordinate.

    Kept in factored form; h_j = (e_{i_j} - e_{i_j}(other_j)) scaled to be 1
    at the target, so p is 1 mod m_target^n and 0 mod m_other^n.
    """

    def __init__(self, d: RootDatum, l: int, spec: IdempotentSpec):
        self.d = d
        self.l = l
        self.spec = spec
        target_vals = point_values(d, l, spec.target)
        factors = []
        for other in spec.others:
            other_vals = point_values(d, l, other)
            i = next((i for i in range(d.rank) if target_vals[i] != other_vals[i]), None)
            if i is None:
                raise PointsNotSeparated(f"{spec.target} and {other} coincide on T/W")
            scale = (target_vals[i] - other_vals[i]).inverse()
            factors.append((i, other_vals[i], scale))
        self.factors = tuple(factors)

    def eval_values(self, values, one):
        """Evaluate at given values of the e_i; `one` is the ring identity."""
        p0 = one
        for i, c, scale in self.factors:
            h = (values[i] - c) * scale
            p0 = p0 * h**self.spec.n
        return one - (one - p0) ** self.spec.n

    def eval_series(self, point: CurvePoint) -> TruncSeries:
        values = [point.char_series(_e_char(self.d, self.l, i)) for i in range(self.d.rank)]
        return self.eval_values(values, TruncSeries.const(self.l, 1, point.prec))

    def to_invariant_poly(self) -> InvariantPoly:
        one = InvariantPoly({(0,) * self.d.rank: CycScalar.const(self.l, 1)}, ZETA, self.l)
        vals = []
        for i in range(self.d.rank):
            exps = tuple(int(j == i) for j in range(self.d.rank))
            vals.append(InvariantPoly({exps: CycScalar.const(self.l, 1)}, ZETA, self.l))
        return self.eval_values(vals, one)

    def as_central_element(self) -> CentralElement:
        return CentralElement(poly=self.to_invariant_poly())


def _e_char(d: RootDatum, l: int, i: int) -> TorusChar:
    return fundamental_char(d, i, ZETA, l)


def point_values(d: RootDatum, l: int, mu):
    """The tuple (e_1, .., e_r) evaluated at zeta^{2(mu+rho)}."""
    return fundamental_point_values(d, l, mu)


def build_block_idempotent(d: RootDatum, l: int, spec: IdempotentSpec) -> BlockIdempotent:
    return BlockIdempotent(d, l, spec)


def membership_order(d: RootDatum, l: int, f, mu, cap: int) -> int:
    """Largest n <= cap with f - f(pt) in m_pt^n at pt = W(zeta^{2(mu+rho)})."""
    if isinstance(f, BlockIdempotent):
        poly = f.to_invariant_poly()
    elif isinstance(f, CentralElement):
        poly = f.as_poly(d)
    elif isinstance(f, TorusChar):
        poly = to_fundamental_basis(d, f)
    else:
        poly = f
    shifted = poly.shift(point_values(d, l, mu))
    degs = [sum(e) for e, v in shifted.coeffs.items() if v]
    if not degs:
        return cap
    return min(min(degs), cap)


# ---------------------------------------------------------------------------
# the translation-functor trace scalar (the |W_{l,omega}| identity)


def _distinct_classes(d: RootDatum, l: int, weights, exclude):
    """One representative per extended block among `weights`, skipping `exclude`'s class."""
    skip = point_signature(d, l, exclude)
    seen = {skip}
    reps = []
    for w in sorted(set(weights)):
        sig = point_signature(d, l, w)
        if sig not in seen:
            seen.add(sig)
            reps.append(w)
    return reps


@dataclass
class TraceReport:
    omega: Weight
    value: Fraction
    expected: int
    stable: bool
    n_used: int

    @property
    def passed(self) -> bool:
        return self.stable and self.value == self.expected


class TraceContext:
    """Shared curve data for one trace-scalar computation."""

    def __init__(self, d: RootDatum, l: int, prec: int):
        self.d = d
        self.l = l
        self.prec = prec
        self.L = specialize(weyl_denominator(d), l)
        self._points = {}
        self._idem = {}

    def at(self, mu) -> dict:
        mu = tuple(mu)
        if mu not in self._points:
            pt = CurvePoint(self.d, self.l, mu, self.prec)
            self._points[mu] = {"pt": pt, "L": pt.char_series(self.L), "e": None}
        return self._points[mu]

    def e_values(self, mu):
        rec = self.at(mu)
        if rec["e"] is None:
            pt = rec["pt"]
            rec["e"] = [pt.char_series(_e_char(self.d, self.l, i)) for i in range(self.d.rank)]
        return rec["e"]

    def idem_series(self, p: BlockIdempotent, mu) -> TruncSeries:
        key = (id(p), tuple(mu))
        if key not in self._idem:
            one = TruncSeries.const(self.l, 1, self.prec)
            self._idem[key] = p.eval_values(self.e_values(mu), one)
        return self._idem[key]


def _trace_scalar_once(d: RootDatum, l: int, block: BlockLabel, n: int) -> CycScalar:
    omega = block.omega
    v_dom = dominant_in_orbit(d, wneg(omega))
    pv = weight_multiplicities(d, v_dom)

    shifted_up = [wadd(omega, nu) for nu in pv]
    zero = (0,) * d.rank
    p0 = build_block_idempotent(
        d, l, IdempotentSpec(zero, tuple(_distinct_classes(d, l, shifted_up, zero)), n)
    )
    dual_shifts = []
    for nu in pv:
        for w in block.stabilizer:
            dual_shifts.append(wadd(omega, wneg(wadd(nu, w.act(omega)))))
    p_om = build_block_idempotent(
        d, l, IdempotentSpec(tuple(omega), tuple(_distinct_classes(d, l, dual_shifts, omega)), n)
    )

    ctx = TraceContext(d, l, 2 * len(d.positive_roots) + 1)

    def dual_trace_series(mu):
        # tr_{V*}(p_omega) along the curve at mu: P(V*) = -P(V)
        num = None
        for nu, m in sorted(pv.items()):
            point = wadd(mu, wneg(nu))
            term = ctx.idem_series(p_om, point) * ctx.at(point)["L"] * m
            num = term if num is None else num + term
        return num.divide(ctx.at(mu)["L"])

    num = None
    for nu, m in sorted(pv.items()):
        point = wadd(omega, nu)
        term = ctx.idem_series(p0, point) * dual_trace_series(point) * ctx.at(point)["L"] * m
        num = term if num is None else num + term
    quotient = num.divide(ctx.at(omega)["L"])
    return quotient.constant_term()


def translation_trace_scalar(d: RootDatum, l: int, block, n: int = 3, n_cap: int = 6) -> TraceReport:
    """tr_V(p_[0] tr_{V*}(p_[omega])) at zeta^{2(omega+rho)}, with stabilization.

    For n past a finite threshold the value is exactly |W_{l,omega}|; the
    report records the value, the expected order and whether it was stable
    under n -> n+1.
    """
    if not isinstance(block, BlockLabel):
        block = make_block_label(d, l, tuple(block))
    value = _trace_scalar_once(d, l, block, n)
    stable = False
    used = n
    while used < n_cap:
        nxt = _trace_scalar_once(d, l, block, used + 1)
        if nxt == value:
            stable = True
            break
        value = nxt
        used += 1
    rat = value.as_rational()
    return TraceReport(
        omega=block.omega,
        value=rat if rat is not None else value,
        expected=block.order,
        stable=stable,
        n_used=used,
    )


def orbit_twist_quotient_value(d: RootDatum, l: int, block: BlockLabel, nu, p, f: TorusChar) -> CycScalar:
    """Value at zeta^{2(omega+rho)} of (sum_{x in W_omega} tau^2_{x nu}(p f L_omega)) / L_omega.

    This is the inner alcove-orbit quotient; with p vanishing to high order
    at the class of omega + nu (not conjugate to omega) it must be zero.
    """
    assert f.mode == ZETA and f.l == l
    l_om, _ = factorize_denominator(d, block, ZETA, l)
    prec = 2 * len(d.positive_roots) + 1
    ctx = TraceContext(d, l, prec)
    num = None
    one = TruncSeries.const(l, 1, prec)
    for x in block.stabilizer:
        point = wadd(block.omega, x.act(tuple(nu)))
        pt = ctx.at(point)["pt"]
        if isinstance(p, BlockIdempotent):
            pser = p.eval_values(ctx.e_values(point), one)
        else:
            pser = p.evaluate(ctx.e_values(point), one)
        term = pser * pt.char_series(f) * pt.char_series(l_om)
        num = term if num is None else num + term
    pt0 = CurvePoint(d, l, block.omega, prec)
    return num.divide(pt0.char_series(l_om)).constant_term()
