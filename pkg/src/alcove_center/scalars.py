"""Exact coefficient rings: Laurent polynomials in q_e and the field Q(zeta_l).

Both are tiny hand-rolled rings over Fraction; everything the character layer
needs is +, -, *, exact division, and a zero test, so the two classes share
that duck-typed surface.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import NonExactDivision


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational scalar, got {type(x).__name__}")


class QLaurent:
    """Sparse Laurent polynomial sum c_k q_e^k with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    self.c[k] = _as_fraction(v)

    @classmethod
    def const(cls, v) -> "QLaurent":
        return cls({0: _as_fraction(v)})

    @classmethod
    def q_power(cls, k: int, coeff=1) -> "QLaurent":
        return cls({k: _as_fraction(coeff)})

    def __bool__(self):
        return bool(self.c)

    def _coerce(self, other):
        if isinstance(other, QLaurent):
            return other
        return QLaurent.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.c)
        for k, v in other.c.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        r = QLaurent()
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = QLaurent()
        r.c = {k: -v for k, v in self.c.items()}
        return r

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                w = out.get(k, 0) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        r = QLaurent()
        r.c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int):
        assert n >= 0
        r = QLaurent.const(1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __truediv__(self, other):
        """Exact division; raises NonExactDivision on a nonzero remainder."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if len(other.c) == 1:
            (k2, v2), = other.c.items()
            r = QLaurent()
            r.c = {k - k2: v / v2 for k, v in self.c.items()}
            return r
        rem = dict(self.c)
        top = max(other.c)
        lead = other.c[top]
        out = {}
        cap = (max(self.c) - min(self.c)) + (max(other.c) - min(other.c)) + 8
        while rem:
            k = max(rem)
            q = rem[k] / lead
            out[k - top] = q
            for k2, v2 in other.c.items():
                kk = k - top + k2
                w = rem.get(kk, 0) - q * v2
                if w:
                    rem[kk] = w
                else:
                    rem.pop(kk, None)
            cap -= 1
            if cap < 0:
                raise NonExactDivision("Laurent division does not terminate")
        r = QLaurent()
        r.c = out
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QLaurent.const(other)
        return isinstance(other, QLaurent) and self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def at_one(self) -> Fraction:
        """Evaluate at q_e = 1."""
        return sum(self.c.values(), Fraction(0))

    def as_const(self):
        """The constant value if this is a constant, else None."""
        if not self.c:
            return Fraction(0)
        if set(self.c) == {0}:
            return self.c[0]
        return None

    def bar(self) -> "QLaurent":
        """The involution q_e -> q_e^{-1}."""
        r = QLaurent()
        r.c = {-k: v for k, v in self.c.items()}
        return r

    def specialize(self, l: int) -> "CycScalar":
        """Image under q_e -> zeta_e, a fixed primitive l-th root of unity."""
        out = CycScalar.zero(l)
        for k, v in self.c.items():
            out = out + CycScalar.zeta_power(l, k) * v
        return out

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"{v}*qe^{k}" if k else f"{v}" for k, v in sorted(self.c.items()))


_CYC_POLY_CACHE = {}


def cyclotomic_polynomial(l: int):
    """Integer coefficient list (low to high) of the l-th cyclotomic polynomial."""
    # x^l - 1 = prod_{d | l} Phi_d; divide out the proper divisors recursively.
    if l not in _CYC_POLY_CACHE:
        poly = [Fraction(-1)] + [Fraction(0)] * (l - 1) + [Fraction(1)]
        for dd in range(1, l):
            if l % dd == 0:
                phi_d = cyclotomic_polynomial(dd) if dd > 1 else [-1, 1]
                poly = _poly_divide_exact(poly, [Fraction(x) for x in phi_d])
        _CYC_POLY_CACHE[l] = [int(x) for x in poly]
    return list(_CYC_POLY_CACHE[l])


def _poly_divide_exact(num, den):
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1] / den[-1]
        out[k] = q
        for i, dv in enumerate(den):
            num[k + i] -= q * dv
    assert all(x == 0 for x in num[: len(den) - 1])
    return out


_CYC_CACHE = {}


def _cyc_data(l: int):
    """(phi, integer reduction rows) for Q[x]/Phi_l: row k expresses x^(phi+k)."""
    if l not in _CYC_CACHE:
        phi_poly = cyclotomic_polynomial(l)
        phi = len(phi_poly) - 1
        rows = []
        # x^phi = -sum_{i<phi} phi_poly[i] x^i  (monic, so rows stay integral)
        base = [-c for c in phi_poly[:phi]]
        rows.append(tuple(base))
        # enough rows for both products (degree 2*phi - 2) and zeta powers (< l)
        for _ in range(max(phi - 1, l - phi)):
            prev = rows[-1]
            shifted = [0] + list(prev[:-1])
            top = prev[-1]
            if top:
                shifted = [s + top * b for s, b in zip(shifted, base)]
            rows.append(tuple(shifted))
        _CYC_CACHE[l] = (phi, tuple(rows))
    return _CYC_CACHE[l]


def _gcd_many(nums, den):
    g = den
    for x in nums:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


class CycScalar:
    """Element of Q(zeta_l), reduced modulo the l-th cyclotomic polynomial.

    Stored as an integer coefficient vector over a single positive denominator,
    normalized on construction; this keeps gcd work to one pass per operation.
    """

    __slots__ = ("l", "num", "den")

    def __init__(self, l: int, coeffs, den: int = None):
        phi, _ = _cyc_data(l)
        self.l = l
        if den is None:
            fracs = [_as_fraction(x) for x in coeffs]
            assert len(fracs) == phi
            d = 1
            for f in fracs:
                d = d * f.denominator // gcd(d, f.denominator)
            self.num = tuple(int(f * d) for f in fracs)
            self.den = d
        else:
            if den < 0:
                den = -den
                coeffs = [-x for x in coeffs]
            g = _gcd_many(coeffs, den)
            if g > 1:
                coeffs = [x // g for x in coeffs]
                den //= g
            self.num = tuple(coeffs)
            self.den = den

    @property
    def v(self):
        return tuple(Fraction(n, self.den) for n in self.num)

    @classmethod
    def zero(cls, l: int) -> "CycScalar":
        phi, _ = _cyc_data(l)
        return cls(l, (0,) * phi, 1)

    @classmethod
    def const(cls, l: int, value) -> "CycScalar":
        phi, _ = _cyc_data(l)
        f = _as_fraction(value)
        return cls(l, (f.numerator,) + (0,) * (phi - 1), f.denominator)

    @classmethod
    def zeta_power(cls, l: int, k: int) -> "CycScalar":
        phi, rows = _cyc_data(l)
        k %= l
        if k < phi:
            return cls(l, tuple(int(i == k) for i in range(phi)), 1)
        return cls(l, rows[k - phi], 1)

    def __bool__(self):
        return any(self.num)

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            assert other.l == self.l
            return other
        return CycScalar.const(self.l, other)

    def __add__(self, other):
        other = self._coerce(other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            return CycScalar(self.l, [a + b for a, b in zip(self.num, other.num)], d1)
        g = gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        return CycScalar(self.l, [a * m1 + b * m2 for a, b in zip(self.num, other.num)], d1 * m1)

    __radd__ = __add__

    def __neg__(self):
        out = CycScalar.__new__(CycScalar)
        out.l = self.l
        out.num = tuple(-a for a in self.num)
        out.den = self.den
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycScalar(self.l, [a * other for a in self.num], self.den)
        if isinstance(other, Fraction):
            return CycScalar(self.l, [a * other.numerator for a in self.num], self.den * other.denominator)
        other = self._coerce(other)
        phi, rows = _cyc_data(self.l)
        conv = [0] * (2 * phi - 1)
        for i, a in enumerate(self.num):
            if a:
                for j, b in enumerate(other.num):
                    if b:
                        conv[i + j] += a * b
        out = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = rows[k - phi]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return CycScalar(self.l, out, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        assert n >= 0
        r = CycScalar.const(self.l, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def inverse(self) -> "CycScalar":
        """Field inverse via the extended Euclidean algorithm in Q[x]."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(self.l)]
        a = list(self.v)
        b = phi_poly
        # Bezout: find u with u*a = 1 mod Phi_l
        r0, r1 = b, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _deg(r1) > 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if _deg(r1) < 0:
            raise ZeroDivisionError("not invertible (zeta data corrupted)")
        c = r1[0]
        inv = [x / c for x in s1]
        phi = len(self.num)
        inv = (inv + [Fraction(0)] * phi)[:phi]
        out = CycScalar(self.l, tuple(inv))
        assert (out * self).is_one()
        return out

    def __truediv__(self, other):
        if isinstance(other, int):
            return CycScalar(self.l, self.num, self.den * other)
        if isinstance(other, Fraction):
            return CycScalar(self.l, [a * other.denominator for a in self.num], self.den * other.numerator)
        return self * self._coerce(other).inverse()

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def as_rational(self):
        """The value as a Fraction when it lies in Q, else None."""
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycScalar.const(self.l, other)
        return (
            isinstance(other, CycScalar)
            and other.l == self.l
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.l, self.num, self.den))

    def __repr__(self):
        if not self:
            return "0"
        return " + ".join(f"{a}*z^{i}" if i else f"{a}" for i, a in enumerate(self.v) if a)


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return list(p)


def _deg(p):
    p = _trim(p)
    if len(p) == 1 and p[0] == 0:
        return -1
    return len(p) - 1


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while _deg(r) >= _deg(b):
        shift = _deg(r) - _deg(b)
        c = r[_deg(r)] / b[_deg(b)]
        q[shift] += c
        for i, bv in enumerate(b):
            r[i + shift] -= c * bv
        r = _trim(r)
        if _deg(r) < 0:
            break
    return _trim(q), _trim(r)
