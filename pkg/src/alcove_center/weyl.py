"""Finite, affine, extended and l-scaled affine Weyl groups.

Affine elements are stored as (finite part, translation) pairs w * tau_mu
acting on weights by lam -> w(lam + mu); lengths come from the closed
hyperplane-crossing formula, so no word reduction is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfiniteParabolic, RankTooLarge
from .root_datum import RootDatum, Weight, wadd, wneg, wscale, wsub, zero_weight

_GENERATE_RANK_CAP = 6
_PARABOLIC_SIZE_CAP = 1 << 20


class FiniteWeylElement:
    """An element of W as an integer matrix on fundamental-weight coordinates."""

    __slots__ = ("matrix", "_len")

    def __init__(self, matrix, length=None):
        self.matrix = matrix
        self._len = length

    @classmethod
    def identity(cls, rank: int) -> "FiniteWeylElement":
        return cls(tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)), 0)

    @classmethod
    def simple_reflection(cls, d: RootDatum, i: int) -> "FiniteWeylElement":
        alpha = d.simple_root(i)
        mat = tuple(
            tuple(int(j == k) - alpha[k] * int(j == i) for j in range(d.rank))
            for k in range(d.rank)
        )
        return cls(mat, 1)

    def act(self, lam) -> Weight:
        return tuple(sum(row[j] * lam[j] for j in range(len(lam)) if lam[j]) for row in self.matrix)

    def __mul__(self, other) -> "FiniteWeylElement":
        m1, m2 = self.matrix, other.matrix
        n = len(m1)
        return FiniteWeylElement(
            tuple(tuple(sum(m1[i][k] * m2[k][j] for k in range(n)) for j in range(n)) for i in range(n))
        )

    def inverse(self) -> "FiniteWeylElement":
        n = len(self.matrix)
        # the matrix is an integral orthogonal-like permutation of roots; invert by transpose in the root pairing
        # cheapest exact route: Gaussian elimination stays integral for these matrices
        mat = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(self.matrix)]
        for col in range(n):
            piv = next(r for r in range(col, n) if mat[r][col] != 0)
            mat[col], mat[piv] = mat[piv], mat[col]
            if mat[col][col] == -1:
                mat[col] = [-x for x in mat[col]]
            assert mat[col][col] == 1 or all(mat[col][c] % mat[col][col] == 0 for c in range(2 * n))
            if mat[col][col] != 1:
                mat[col] = [x // mat[col][col] for x in mat[col]]
            for r in range(n):
                if r != col and mat[r][col] != 0:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
        return FiniteWeylElement(tuple(tuple(row[n:]) for row in mat), self._len)

    def length(self, d: RootDatum) -> int:
        if self._len is None:
            neg = {wneg(a) for a in d.positive_roots}
            self._len = sum(1 for a in d.positive_roots if self.act(a) in neg)
        return self._len

    def is_identity(self) -> bool:
        n = len(self.matrix)
        return self.matrix == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    def __eq__(self, other):
        return isinstance(other, FiniteWeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"W{self.matrix}"


def generate_finite_weyl(d: RootDatum):
    """Enumerate W by closure of the simple reflections; identity comes first."""
    if d.rank > _GENERATE_RANK_CAP:
        raise RankTooLarge(f"rank {d.rank} exceeds the enumeration cap {_GENERATE_RANK_CAP}")
    gens = [FiniteWeylElement.simple_reflection(d, i) for i in range(d.rank)]
    e = FiniteWeylElement.identity(d.rank)
    seen = {e.matrix: e}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                ws = w * s
                if ws.matrix not in seen:
                    seen[ws.matrix] = ws
                    nxt.append(ws)
        frontier = nxt
    els = sorted(seen.values(), key=lambda w: (w.length(d), w.matrix))
    return els


def longest_element(d: RootDatum) -> FiniteWeylElement:
    return generate_finite_weyl(d)[-1]


@dataclass(frozen=True)
class AffineElement:
    """w * tau_mu with mu recorded in the tagged lattice (Q, Lambda, lQ or lLambda)."""

    w: FiniteWeylElement
    t: Weight
    tag: str = "Q"
    scale: int = 1

    def act(self, lam) -> Weight:
        return self.w.act(wadd(lam, self.t))

    def dot(self, lam, d: RootDatum) -> Weight:
        return wsub(self.w.act(wadd(wadd(lam, d.rho), self.t)), d.rho)

    def __mul__(self, other) -> "AffineElement":
        assert self.tag == other.tag and self.scale == other.scale
        return AffineElement(self.w * other.w, wadd(other.w.inverse().act(self.t), other.t), self.tag, self.scale)

    def inverse(self) -> "AffineElement":
        return AffineElement(self.w.inverse(), wneg(self.w.act(self.t)), self.tag, self.scale)

    def is_identity(self) -> bool:
        return self.w.is_identity() and not any(self.t)

    def key(self):
        return (self.w.matrix, self.t)

    def __repr__(self):
        return f"Aff(w={self.w.matrix}, tau={self.t}, {self.tag})"


def identity_affine(d: RootDatum, tag="Q", scale=1) -> AffineElement:
    return AffineElement(FiniteWeylElement.identity(d.rank), zero_weight(d.rank), tag, scale)


def affine_simple_reflections(d: RootDatum, l: int = 1):
    """The affine simple reflections s_0..s_rank for W scaled-semidirect l*Q.

    Index 0 reflects through the wall <lam, theta_check> = l*scale, where
    theta is the dominant short root (its coroot is the highest coroot).
    """
    tag = "lQ" if l > 1 else "Q"
    refs = {}
    for i in range(d.rank):
        refs[i + 1] = AffineElement(FiniteWeylElement.simple_reflection(d, i), zero_weight(d.rank), tag, l)
    theta = d.theta_short
    s_theta = _reflection_in_root(d, theta)
    refs[0] = AffineElement(s_theta, wscale(-l, theta), tag, l)
    return refs


def _reflection_in_root(d: RootDatum, alpha) -> FiniteWeylElement:
    n = d.rank
    cols = []
    for k in range(n):
        ek = tuple(int(j == k) for j in range(n))
        pair = d.coroot_pairing_root(alpha, ek)
        assert pair.denominator == 1
        cols.append(wsub(ek, wscale(int(pair), alpha)))
    mat = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return FiniteWeylElement(mat)


def reflection_element(d: RootDatum, alpha, n_l: int, l: int = 1) -> AffineElement:
    """The affine reflection through the wall <., alpha_check> = n_l * l."""
    tag = "lQ" if l > 1 else "Q"
    return AffineElement(_reflection_in_root(d, alpha), wscale(-n_l * l, alpha), tag, l)


def act_on_weight(x, lam) -> Weight:
    """Action of a finite or affine element on a weight."""
    if isinstance(x, FiniteWeylElement):
        return x.act(lam)
    return x.act(lam)


def dot_action(x, lam, d: RootDatum) -> Weight:
    """Shifted action x . lam = x(lam + rho) - rho."""
    if isinstance(x, FiniteWeylElement):
        return wsub(x.act(wadd(lam, d.rho)), d.rho)
    return x.dot(lam, d)


def length(x, d: RootDatum) -> int:
    """Affine length by counting hyperplanes crossed, one root at a time."""
    if isinstance(x, FiniteWeylElement):
        return x.length(d)
    mu = tuple(c // x.scale for c in x.t)
    assert wscale(x.scale, mu) == x.t, "translation not in the tagged lattice"
    total = 0
    wmu = x.w.act(mu)
    winv = x.w.inverse()
    neg = {wneg(a) for a in d.positive_roots}
    for alpha, coroot in zip(d.positive_roots, d.pos_coroots):
        m = sum(c * v for c, v in zip(coroot, wmu))
        beta_negative = winv.act(alpha) in neg
        if not beta_negative:
            total += abs(m)
        else:
            total += m - 1 if m >= 1 else abs(m) + 1
    return total


@dataclass(frozen=True)
class ParabolicType:
    """A subset J of the affine simple reflections (0 = affine node)."""

    indices: frozenset

    def __init__(self, indices):
        object.__setattr__(self, "indices", frozenset(indices))

    def subgroup(self, d: RootDatum, l: int = 1):
        """Enumerate W_J; raises InfiniteParabolic when J is the full affine set."""
        refs = affine_simple_reflections(d, l)
        if self.indices >= set(refs):
            raise InfiniteParabolic("J covers every affine node")
        gens = [refs[j] for j in sorted(self.indices)]
        e = identity_affine(d, gens[0].tag if gens else "Q", l if l > 1 else 1)
        if not gens:
            return [e]
        seen = {e.key(): e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    xs = x * s
                    if xs.key() not in seen:
                        if len(seen) >= _PARABOLIC_SIZE_CAP:
                            raise InfiniteParabolic("parabolic closure exceeded the size cap")
                        seen[xs.key()] = xs
                        nxt.append(xs)
            frontier = nxt
        return sorted(seen.values(), key=lambda x: (length(x, d), x.key()))


def enumerate_affine(d: RootDatum, length_bound: int, l: int = 1):
    """All elements of the (l-scaled) affine Weyl group of length <= bound."""
    refs = affine_simple_reflections(d, l)
    e = identity_affine(d, refs[0].tag, l)
    out = {e.key(): (e, 0)}
    frontier = [(e, 0)]
    while frontier:
        nxt = []
        for x, lx in frontier:
            if lx == length_bound:
                continue
            for s in refs.values():
                xs = x * s
                if xs.key() in out:
                    continue
                lxs = length(xs, d)
                if lxs == lx + 1:
                    out[xs.key()] = (xs, lxs)
                    nxt.append((xs, lxs))
        frontier = nxt
    return [x for x, _ in sorted(out.values(), key=lambda p: (p[1], p[0].key()))]


def min_coset_reps(d: RootDatum, J: ParabolicType, length_bound: int, l: int = 1):
    """Minimal-length representatives of W_af / W_J up to the length bound."""
    refs = affine_simple_reflections(d, l)
    if J.indices >= set(refs):
        raise InfiniteParabolic("J covers every affine node")
    js = [refs[j] for j in sorted(J.indices)]
    reps = []
    for x in enumerate_affine(d, length_bound, l):
        lx = length(x, d)
        if all(length(x * s, d) > lx for s in js):
            reps.append(x)
    return reps


def reduced_word(d: RootDatum, x: AffineElement):
    """A reduced word for x in the affine simple reflections (0 = affine node).

    Greedy descent from the right; only defined on the plain affine group
    (tags Q and lQ), where length-zero means the identity.
    """
    refs = affine_simple_reflections(d, x.scale if x.scale > 1 else 1)
    word = []
    cur = x
    lx = length(cur, d)
    while lx > 0:
        for j, s in sorted(refs.items()):
            if length(cur * s, d) == lx - 1:
                word.append(j)
                cur = cur * s
                lx -= 1
                break
        else:
            raise RuntimeError("no descent found; element not in the affine group?")
    assert cur.is_identity(), "length-zero residue: element lies outside W_af"
    return list(reversed(word))


def affine_element_json(d: RootDatum, x: AffineElement) -> dict:
    """The CLI serialization {"w": word, "tau": coords, "lattice": tag}."""
    return {"w": reduced_word(d, x), "tau": list(x.t), "lattice": x.tag}


def poincare_series(d: RootDatum, J: ParabolicType, truncation: int, l: int = 1):
    """Graded cell counts of W^J_af: coefficient of t^(2k) counts length-k reps."""
    counts = {}
    for x in min_coset_reps(d, J, truncation, l):
        k = length(x, d)
        counts[2 * k] = counts.get(2 * k, 0) + 1
    return counts


def finite_poincare(d: RootDatum):
    counts = {}
    for w in generate_finite_weyl(d):
        k = w.length(d)
        counts[2 * k] = counts.get(2 * k, 0) + 1
    return counts
