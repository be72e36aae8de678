"""Block enumeration, reduction walks and translation combinatorics."""

import itertools
import random

import pytest

from alcove_center.linkage import (
    block_of,
    enumerate_blocks,
    ext_block_eq,
    in_alcove_box,
    jantzen_block_criterion,
    lift_stabilizer,
    linkage_raises,
    make_block_label,
    same_block,
    translation_verma_factors,
)
from alcove_center.root_datum import parse_type, wadd, wneg, wscale
from alcove_center.weyl import dot_action, enumerate_affine, generate_finite_weyl, identity_affine, length


def test_enumerate_blocks_a1():
    d = parse_type("A1")
    blocks = enumerate_blocks(d, 3)
    assert [b.omega for b in blocks] == [(-1,), (0,), (1,), (2,)]
    assert [b.order for b in blocks] == [2, 1, 1, 2]
    assert blocks[0].parahoric_type == frozenset({1})
    assert blocks[-1].parahoric_type == frozenset({0})
    assert blocks[1].parahoric_type == frozenset()


@pytest.mark.parametrize("label,l", [("A1", 3), ("A2", 5), ("B2", 5)])
def test_minus_rho_block(label, l):
    d = parse_type(label)
    blocks = {b.omega: b for b in enumerate_blocks(d, l)}
    minus_rho = wneg(d.rho)
    assert minus_rho in blocks
    assert blocks[minus_rho].order == len(generate_finite_weyl(d))


def test_xi_sc_count_a2():
    # golden count: lattice points of the closed fundamental 5-alcove of A2
    d = parse_type("A2")
    assert len(enumerate_blocks(d, 5)) == 21
    # independent scan over a large box
    count = 0
    for coords in itertools.product(range(-3, 8), repeat=2):
        if in_alcove_box(d, 5, coords):
            count += 1
    assert count == 21


def test_stabilizer_orders_a2():
    # 3 alcove vertices, 12 wall points, 6 interior points
    d = parse_type("A2")
    orders = sorted(b.order for b in enumerate_blocks(d, 5))
    assert orders.count(6) == 3
    assert orders.count(2) == 12
    assert orders.count(1) == 6


def test_block_of_fixed_points():
    d = parse_type("A1")
    for b in enumerate_blocks(d, 3):
        found, x = block_of(d, b.omega, 3)
        assert found.omega == b.omega
        assert x.is_identity()


def test_block_of_examples_a1():
    d = parse_type("A1")
    alpha = d.positive_roots[0]
    lam = wadd((2,), wscale(3, alpha))
    b, x = block_of(d, lam, 3)
    assert b.omega == (2,)
    assert dot_action(x, (2,), d) == lam

    b, x = block_of(d, (-2,), 3)
    assert b.omega == (0,)
    assert dot_action(x, (0,), d) == (-2,)
    assert length(x, d) == 1  # the reflection through the 0-wall


@pytest.mark.parametrize("label,l", [("A1", 3), ("A2", 5)])
def test_partition_property(label, l):
    d = parse_type(label)
    box = range(-6, 7)
    weights = [(x,) for x in box] if d.rank == 1 else [(x, y) for x in box for y in box]
    reps = {b.omega for b in enumerate_blocks(d, l)}
    for lam in weights:
        b, x = block_of(d, lam, l)
        assert b.omega in reps
        assert dot_action(x, b.omega, d) == lam


def test_minimality_of_block_of_witness():
    d = parse_type("A1")
    for lam in [(-5,), (4,), (7,), (-2,)]:
        b, x = block_of(d, lam, 3)
        lx = length(x, d)
        for z in lift_stabilizer(d, 3, b):
            assert length(x * z, d) >= lx


def test_same_block_a1():
    d = parse_type("A1")
    assert same_block(d, (4,), (4,), 3)
    assert same_block(d, (0,), (-2,), 3)
    assert not same_block(d, (0,), (1,), 3)


def test_stabilizer_matches_affine_bruteforce():
    for label, l in [("A1", 3), ("A2", 5)]:
        d = parse_type(label)
        for b in enumerate_blocks(d, l):
            lifts = lift_stabilizer(d, l, b)
            cap = max(length(z, d) for z in lifts)
            fixers = [x for x in enumerate_affine(d, cap, l) if dot_action(x, b.omega, d) == b.omega]
            assert sorted(x.key() for x in fixers) == sorted(z.key() for z in lifts)
            assert len({z.w.matrix for z in lifts}) == b.order


def test_linkage_raises_a1():
    d = parse_type("A1")
    up = linkage_raises(d, (-2,), 3, 8)
    assert (0,) in up
    # -rho is fixed by the finite reflections, but the shifted-wall reflections
    # still raise it: s_{alpha,3} . (-rho) = 5*pi, s_{alpha,6} . (-rho) = 11*pi
    assert linkage_raises(d, (-1,), 3, 12) == [(5,), (11,)]
    assert linkage_raises(d, (2,), 3, 4) == []       # nothing above inside the box
    for nu in up:
        assert same_block(d, nu, (-2,), 3)
    for nu in linkage_raises(d, (-1,), 3, 12):
        assert same_block(d, nu, (-1,), 3)


def test_linkage_raises_reach_block_top():
    # transitive closure of raising inside a box stays in one block
    d = parse_type("A2")
    start = (-3, 1)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for mu in frontier:
            for nu in linkage_raises(d, mu, 5, 8):
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    b0 = block_of(d, start, 5)[0].omega
    for nu in seen:
        assert block_of(d, nu, 5)[0].omega == b0


def test_translation_verma_factors_examples():
    d = parse_type("A1")
    blocks = {b.omega: b for b in enumerate_blocks(d, 3)}
    e = identity_affine(d, "lQ", 3)
    # regular to regular: singleton
    assert translation_verma_factors(d, 3, blocks[(0,)], blocks[(1,)], e) == [(1,)]
    # from the Steinberg point to the principal block: a full Weyl orbit
    assert translation_verma_factors(d, 3, blocks[(-1,)], blocks[(0,)], e) == [(-2,), (0,)]
    # and back down: one factor
    assert translation_verma_factors(d, 3, blocks[(0,)], blocks[(-1,)], e) == [(-1,)]


def test_translation_verma_factor_counts():
    d = parse_type("A2")
    blocks = enumerate_blocks(d, 5)
    rng = random.Random(7)
    e = identity_affine(d, "lQ", 5)
    for _ in range(25):
        b1, b2 = rng.choice(blocks), rng.choice(blocks)
        lifts1 = {z.w.matrix for z in lift_stabilizer(d, 5, b1)}
        lifts2 = {z.w.matrix for z in lift_stabilizer(d, 5, b2)}
        # the coset count divides |W_{l,omega1}|
        factors = translation_verma_factors(d, 5, b1, b2, e)
        assert len(factors) * len(lifts1 & lifts2) == len(lifts1)
        for lam in factors:
            assert same_block(d, lam, b2.omega, 5)


def test_jantzen_examples_a1():
    d = parse_type("A1")
    b = make_block_label(d, 3, (2,))
    assert jantzen_block_criterion(d, 3, b, (-2,))   # nu = -omega
    assert jantzen_block_criterion(d, 3, b, (2,))    # the wall reflection flips -omega
    assert not jantzen_block_criterion(d, 3, b, (0,))


def test_ext_block_eq_is_orbit_equality():
    # [lam] = [mu] iff mu lies in the extended dot-orbit of lam; brute force over
    # the l-affine orbit shifted by l*Lambda representatives of pi_1
    d = parse_type("A1")
    l = 3
    rng = random.Random(11)
    for _ in range(40):
        lam = (rng.randint(-9, 9),)
        mu = (rng.randint(-9, 9),)
        brute = any(
            same_block(d, lam, wadd(mu, wscale(l, (k,))), l) for k in range(d.pi1_order)
        )
        assert ext_block_eq(d, l, lam, mu) == brute


def test_block_of_b2_random():
    d = parse_type("B2")
    rng = random.Random(17)
    reps = {b.omega for b in enumerate_blocks(d, 5)}
    for _ in range(40):
        lam = (rng.randint(-8, 8), rng.randint(-8, 8))
        b, x = block_of(d, lam, 5)
        assert b.omega in reps
        assert dot_action(x, b.omega, d) == lam
