"""Blocks of category O at a root of unity: the alcove box, stabilizers,
linkage classes and translation-functor Verma combinatorics.

A block is labelled by the unique weight omega in its dot-orbit with
0 <= <omega + rho, alpha_check> <= l for every positive root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .root_datum import RootDatum, Weight, pair2e, wadd, wsub
from .weyl import (
    AffineElement,
    FiniteWeylElement,
    dot_action,
    generate_finite_weyl,
    length,
    reflection_element,
)


def _coroot_values(d: RootDatum, lam):
    """<alpha_check, lam> for every positive root, in d.positive_roots order."""
    return [sum(c * v for c, v in zip(coroot, lam)) for coroot in d.pos_coroots]


def in_alcove_box(d: RootDatum, l: int, omega) -> bool:
    return all(0 <= m <= l for m in _coroot_values(d, wadd(omega, d.rho)))


def in_open_box(d: RootDatum, l: int, omega) -> bool:
    """The strict upper-wall variant (parahoric type inside the finite nodes)."""
    return all(0 <= m < l for m in _coroot_values(d, wadd(omega, d.rho)))


@dataclass(frozen=True)
class BlockLabel:
    omega: Weight
    stabilizer: tuple          # the finite reflections image of the dot-stabilizer
    parahoric_type: frozenset  # J as indices into the l-affine simple reflections
    wall_roots: tuple          # positive roots alpha with s_alpha in the stabilizer

    @property
    def order(self) -> int:
        return len(self.stabilizer)

    def is_regular(self) -> bool:
        return len(self.stabilizer) == 1


def make_block_label(d: RootDatum, l: int, omega) -> BlockLabel:
    assert in_alcove_box(d, l, omega), f"{omega} is not an alcove-box representative"
    shifted = wadd(omega, d.rho)
    stab = []
    for w in generate_finite_weyl(d):
        if all(c % l == 0 for c in wsub(w.act(shifted), shifted)):
            stab.append(w)
    walls = []
    for alpha, m in zip(d.positive_roots, _coroot_values(d, shifted)):
        if m % l == 0:
            walls.append(alpha)
    j = frozenset(
        {i + 1 for i in range(d.rank) if shifted[i] == 0}
        | ({0} if sum(c * v for c, v in zip(_theta_coroot(d), shifted)) == l else set())
    )
    return BlockLabel(tuple(omega), tuple(stab), j, tuple(walls))


def _theta_coroot(d: RootDatum):
    idx = d.positive_roots.index(d.theta_short)
    return d.pos_coroots[idx]


@lru_cache(maxsize=None)
def _enumerate_blocks_cached(d: RootDatum, l: int):
    labels = []
    for coords in itertools.product(range(-1, l), repeat=d.rank):
        if in_alcove_box(d, l, coords):
            labels.append(make_block_label(d, l, coords))
    labels.sort(key=lambda b: b.omega)
    return tuple(labels)


def enumerate_blocks(d: RootDatum, l: int):
    """All of Xi_sc for (d, l), sorted by the box representative."""
    return list(_enumerate_blocks_cached(d, l))


def lift_stabilizer(d: RootDatum, l: int, block: BlockLabel):
    """The dot-stabilizer inside W semidirect lQ, one element per finite image."""
    shifted = wadd(block.omega, d.rho)
    out = []
    for w in block.stabilizer:
        t = wsub(w.inverse().act(shifted), shifted)
        assert all(c % l == 0 for c in t)
        out.append(AffineElement(w, t, "lQ", l))
    for z in out:
        assert dot_action(z, block.omega, d) == block.omega
    return out


def block_of(d: RootDatum, lam, l: int):
    """The box representative omega and a minimal x with x . omega = lam.

    Walks lam into the box by reflecting through whichever wall is violated;
    each step strictly decreases the number of separating affine walls.
    """
    theta_cr = _theta_coroot(d)
    mu = tuple(lam)
    y = None
    for _ in range(100000):
        shifted = wadd(mu, d.rho)
        step = None
        for i in range(d.rank):
            if shifted[i] < 0:
                step = reflection_element(d, d.simple_root(i), 0, l)
                break
        if step is None and sum(c * v for c, v in zip(theta_cr, shifted)) > l:
            step = reflection_element(d, d.theta_short, 1, l)
        if step is None:
            break
        mu = dot_action(step, mu, d)
        y = step if y is None else y * step
    else:
        raise RuntimeError("alcove reduction walk failed to terminate")
    block = make_block_label(d, l, mu)
    if y is None:
        y = AffineElement(FiniteWeylElement.identity(d.rank), (0,) * d.rank, "lQ", l)
    best = min(
        (y * z for z in lift_stabilizer(d, l, block)),
        key=lambda x: (length(x, d), x.key()),
    )
    assert dot_action(best, block.omega, d) == lam
    return block, best


def same_block(d: RootDatum, lam, mu, l: int) -> bool:
    """Linkage: lam and mu generate the same block of category O."""
    if not d.in_root_lattice(wsub(lam, mu)):
        return False
    return block_of(d, lam, l)[0].omega == block_of(d, mu, l)[0].omega


def point_signature(d: RootDatum, l: int, mu):
    """Canonical form of the T/W point zeta^{2(mu+rho)}: the set of exponent
    vectors (2e(pi_i, w(mu+rho)) mod l)_i over the W-orbit."""
    shifted = wadd(tuple(mu), d.rho)
    fw = [d.fundamental_weight(i) for i in range(d.rank)]
    sig = set()
    for w in generate_finite_weyl(d):
        v = w.act(shifted)
        sig.add(tuple(pair2e(d, f, v) % l for f in fw))
    return frozenset(sig)


def ext_block_eq(d: RootDatum, l: int, lam, mu) -> bool:
    """Equality of classes in Xi: the points zeta^{2(.+rho)} agree on T/W."""
    return point_signature(d, l, lam) == point_signature(d, l, mu)


def linkage_raises(d: RootDatum, mu, l: int, box_bound: int):
    """One-step raising: all s . mu > mu for affine reflections s, inside a box."""
    out = set()
    shifted = wadd(mu, d.rho)
    for alpha, coroot in zip(d.positive_roots, d.pos_coroots):
        m = sum(c * v for c, v in zip(coroot, shifted))
        n = m // l + (1 if m % l else 0)  # smallest n with n*l >= m
        while True:
            if n * l != m:
                nu = dot_action(reflection_element(d, alpha, n, l), mu, d)
                if any(abs(c) > box_bound for c in nu):
                    break
                out.add(nu)
            n += 1
    return sorted(out)


def translation_verma_factors(d: RootDatum, l: int, b1: BlockLabel, b2: BlockLabel, x: AffineElement):
    """Highest weights of the Verma factors of the translated Verma at x . omega1.

    These are x*y . omega2 with y over coset representatives of the omega1
    stabilizer modulo its intersection with the omega2 stabilizer.
    """
    stab1 = lift_stabilizer(d, l, b1)
    values = {dot_action(y, b2.omega, d) for y in stab1}
    inter = sum(1 for y in stab1 if dot_action(y, b2.omega, d) == b2.omega)
    assert len(values) * inter == len(stab1)
    return sorted(dot_action(x, v, d) for v in values)


def jantzen_block_criterion(d: RootDatum, l: int, block: BlockLabel, nu) -> bool:
    """Whether [omega + nu] = [0]: exactly when nu lies in the stabilizer orbit of -omega."""
    neg_omega = tuple(-c for c in block.omega)
    return any(w.act(neg_omega) == tuple(nu) for w in block.stabilizer)
