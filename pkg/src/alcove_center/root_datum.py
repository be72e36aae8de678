"""Simply-connected root data and exact weight arithmetic.

Weights are plain tuples of integers in the fundamental-weight basis, so
``<coroot_i, lam> == lam[i]``.  All pairings are Fractions; nothing here is
ever floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InvalidType, NotACoroot

Weight = tuple  # integer tuples in fundamental-weight coordinates


def wadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def wsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def wneg(a):
    return tuple(-x for x in a)


def wscale(k, a):
    return tuple(k * x for x in a)


def zero_weight(rank: int) -> Weight:
    return (0,) * rank


def _cartan_matrix(series: str, rank: int):
    """Cartan matrix a[i][j] = <coroot_i, alpha_j> in Bourbaki numbering."""
    n = rank
    ok = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 3,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }.get(series, False)
    if not ok:
        raise InvalidType(f"unsupported Dynkin type {series}{rank}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if series in ("A", "B", "C"):
        for i in range(n - 1):
            link(i, i + 1)
        if series == "B" and n >= 2:
            link(n - 2, n - 1, -1, -2)  # alpha_n short
        if series == "C" and n >= 2:
            link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif series == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif series == "E":
        # Bourbaki: node 2 hangs off node 4 (1-indexed), chain 1-3-4-5-6-...
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for i, j in zip(chain, chain[1:]):
            link(i, j)
        link(1, 3)
    elif series == "F":
        link(0, 1)
        link(1, 2, -1, -2)  # alpha_3, alpha_4 short
        link(2, 3)
    elif series == "G":
        link(0, 1, -3, -1)  # alpha_1 short
    return tuple(tuple(row) for row in a)


def _symmetrizers(series: str, rank: int):
    """Relatively prime d_i with (d_i a_ij) symmetric positive definite."""
    n = rank
    if series in ("A", "D", "E"):
        return (1,) * n
    if series == "B":
        return (2,) * (n - 1) + (1,)
    if series == "C":
        return (1,) * (n - 1) + (2,)
    if series == "F":
        return (2, 2, 1, 1)
    if series == "G":
        return (1, 3)
    raise InvalidType(series)


_EXPONENTS = {
    "A": lambda n: tuple(range(1, n + 1)),
    "B": lambda n: tuple(range(1, 2 * n, 2)),
    "C": lambda n: tuple(range(1, 2 * n, 2)),
    "D": lambda n: tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1])),
    "E": lambda n: {
        6: (1, 4, 5, 7, 8, 11),
        7: (1, 5, 7, 9, 11, 13, 17),
        8: (1, 7, 11, 13, 17, 19, 23, 29),
    }[n],
    "F": lambda n: (1, 5, 7, 11),
    "G": lambda n: (1, 5),
}


def _invert(mat):
    """Exact inverse of a small integer matrix, as Fractions."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _det(mat):
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


@dataclass(frozen=True)
class RootDatum:
    series_type: str
    rank: int
    cartan: tuple
    symmetrizers: tuple
    positive_roots: tuple        # fundamental-weight coordinates
    positive_roots_rb: tuple     # root-basis coordinates, parallel order
    pos_coroots: tuple           # ith entry: integer vector c with <coroot,lam> = sum c_j lam_j
    rho: Weight
    coxeter_number: int
    pi1_order: int
    exponents: tuple
    theta_short: Weight          # dominant short root (its coroot is the highest coroot)
    _gram: tuple                 # (pi_i, pi_j) as Fractions

    def pairing(self, lam, mu) -> Fraction:
        g = self._gram
        return sum(Fraction(li) * sum(g[i][j] * mu[j] for j in range(self.rank)) for i, li in enumerate(lam) if li)

    def coroot_pairing_root(self, alpha, lam) -> Fraction:
        """<alpha_check, lam> = 2(alpha, lam)/(alpha, alpha)."""
        return 2 * self.pairing(alpha, lam) / self.pairing(alpha, alpha)

    def root_coords(self, lam):
        """Coordinates of lam in the simple-root basis (Fractions)."""
        inv = _invert(self.cartan)
        return tuple(sum(inv[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank))

    def in_root_lattice(self, lam) -> bool:
        return all(c.denominator == 1 for c in self.root_coords(lam))

    def is_dominant(self, lam) -> bool:
        return all(x >= 0 for x in lam)

    def simple_root(self, i) -> Weight:
        return tuple(self.cartan[k][i] for k in range(self.rank))

    def fundamental_weight(self, i) -> Weight:
        return tuple(int(i == k) for k in range(self.rank))

    def describe(self) -> dict:
        return {
            "type": self.series_type,
            "rank": self.rank,
            "positive_roots": len(self.positive_roots),
            "coxeter_number": self.coxeter_number,
            "pi1_order": self.pi1_order,
            "exponents": list(self.exponents),
        }


def _reflection_closure(cartan, rank):
    """All roots in root-basis coordinates, by closing simple roots under s_i."""
    simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(rank):
                pair = sum(cartan[i][j] * c[j] for j in range(rank))
                img = tuple(x - pair * int(k == i) for k, x in enumerate(c))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def build_root_datum(series: str, rank: int) -> RootDatum:
    """Construct the simply-connected root datum of an irreducible type."""
    cartan = _cartan_matrix(series, rank)
    d = _symmetrizers(series, rank)
    roots_rb = _reflection_closure(cartan, rank)
    pos_rb = sorted(c for c in roots_rb if all(x >= 0 for x in c))
    # fundamental coordinates: alpha_j has coordinates (a_kj)_k
    pos_fc = tuple(tuple(sum(cartan[k][j] * c[j] for j in range(rank)) for k in range(rank)) for c in pos_rb)

    inv = _invert(cartan)
    gram = tuple(tuple(inv[j][i] * d[j] for j in range(rank)) for i in range(rank))

    def pair(lam, mu):
        return sum(Fraction(li) * sum(gram[i][j] * mu[j] for j in range(rank)) for i, li in enumerate(lam) if li)

    coroots = []
    for alpha in pos_fc:
        norm = pair(alpha, alpha)
        cr = [2 * pair(alpha, tuple(int(j == k) for j in range(rank))) / norm for k in range(rank)]
        assert all(c.denominator == 1 for c in cr)
        coroots.append(tuple(int(c) for c in cr))

    norms = [pair(a, a) for a in pos_fc]
    short_norm = min(norms)
    theta_short = [a for a, nm in zip(pos_fc, norms) if nm == short_norm and all(x >= 0 for x in a)]
    assert len(theta_short) == 1

    nroots = len(pos_fc)
    assert 2 * nroots % rank == 0
    h = 2 * nroots // rank
    e = abs(int(_det(cartan)))
    exps = _EXPONENTS[series](rank)
    assert sum(exps) == nroots

    rho = (1,) * rank
    two_rho = tuple(sum(a[k] for a in pos_fc) for k in range(rank))
    assert two_rho == wscale(2, rho)

    return RootDatum(
        series_type=series,
        rank=rank,
        cartan=cartan,
        symmetrizers=d,
        positive_roots=pos_fc,
        positive_roots_rb=tuple(pos_rb),
        pos_coroots=tuple(coroots),
        rho=rho,
        coxeter_number=h,
        pi1_order=e,
        exponents=exps,
        theta_short=theta_short[0],
        _gram=gram,
    )


def parse_type(label: str) -> RootDatum:
    """Build a datum from a label like "A2" or "B2"."""
    label = label.strip()
    if len(label) < 2 or not label[1:].isdigit():
        raise InvalidType(f"cannot parse type label {label!r}")
    return build_root_datum(label[0].upper(), int(label[1:]))


_PAIR2E_CACHE = {}


def pair2e(d: RootDatum, lam, mu) -> int:
    """2 * e * (lam, mu), always an integer; the hot-path form of the pairing."""
    key = (d.series_type, d.rank)
    mat = _PAIR2E_CACHE.get(key)
    if mat is None:
        g = d._gram
        e = d.pi1_order
        mat = tuple(
            tuple(int(2 * e * g[i][j]) for j in range(d.rank)) for i in range(d.rank)
        )
        assert all(2 * e * g[i][j] == mat[i][j] for i in range(d.rank) for j in range(d.rank))
        _PAIR2E_CACHE[key] = mat
    total = 0
    for i, a in enumerate(lam):
        if a:
            row = mat[i]
            total += a * sum(row[j] * mu[j] for j in range(len(mu)) if mu[j])
    return total


def pairing(d: RootDatum, lam, mu) -> Fraction:
    """The W-invariant form with (alpha_i, alpha_j) = d_i a_ij; values in (1/e)Z."""
    return d.pairing(lam, mu)


def coroot_pairing(d: RootDatum, alpha, lam) -> int:
    """Canonical pairing <alpha_check, lam> for a coroot given by index or root."""
    if isinstance(alpha, int):
        if not 0 <= alpha < d.rank:
            raise NotACoroot(f"simple coroot index {alpha} out of range")
        return lam[alpha]
    alpha = tuple(alpha)
    if alpha not in d.positive_roots and wneg(alpha) not in d.positive_roots:
        raise NotACoroot(f"{alpha} is not a root")
    val = d.coroot_pairing_root(alpha, lam)
    assert val.denominator == 1
    return int(val)


def dominance_leq(d: RootDatum, lam, mu) -> bool:
    """lam <= mu iff mu - lam is a nonnegative integer sum of simple roots."""
    coords = d.root_coords(wsub(lam, mu))
    return all(c.denominator == 1 and c <= 0 for c in coords)


def l_restricted_decompose(d: RootDatum, lam, l: int):
    """Unique lam = lam0 + l*lam1 with 0 <= <lam0, coroot_i> < l."""
    lam0 = tuple(x % l for x in lam)
    lam1 = tuple((x - r) // l for x, r in zip(lam, lam0))
    return lam0, lam1


def validate_l(d: RootDatum, l: int) -> bool:
    """Admissible orders: odd, >= h, prime to e (and to 3 in type G2)."""
    if l < d.coxeter_number or l % 2 == 0:
        return False
    if gcd(l, d.pi1_order) != 1:
        return False
    if d.series_type == "G" and l % 3 == 0:
        return False
    return True
