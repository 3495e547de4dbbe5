"""Law-level checks of the segment calculus on enumerations and random data.

The full-scale battery pinned by the acceptance suite lives in
test_acceptance.py; these run the same identities at quick-iteration size.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cutforge.lexgroup import GroupSignature, elem, zero
from cutforge import segcalc as sc

ZZ = GroupSignature.parse("Z,Z")
QZ = GroupSignature.parse("Q,Z")
QQ = GroupSignature.parse("Q,Q")

ZZ_SEGS = list(sc.iter_segments(ZZ, 2))
QZ_SEGS = list(sc.iter_segments(QZ, 2))


def random_segment(sig: GroupSignature, rng: random.Random, bound: int = 5) -> sc.FinalSegment:
    level = rng.randint(1, sig.n)
    flavor = sc.GT if sig.factors[level - 1] == "Q" and rng.random() < 0.5 else sc.GEQ
    coords = []
    for kind in sig.factors[:level]:
        if kind == "Z":
            coords.append(Fraction(rng.randint(-bound, bound)))
        else:
            q = rng.randint(1, 6)
            coords.append(Fraction(rng.randint(-bound * q, bound * q), q))
    coords += [Fraction(0)] * (sig.n - level)
    return sc.seg(sig, level, flavor, elem(sig, coords))


def random_pairs(sig, count, seed):
    rng = random.Random(seed)
    return [(random_segment(sig, rng), random_segment(sig, rng)) for _ in range(count)]


@pytest.mark.parametrize("sig", [ZZ, QZ])
def test_add_commutative_associative(sig):
    segs = list(sc.iter_segments(sig, 1))
    for a, b in itertools.product(segs, repeat=2):
        assert sc.add(a, b) == sc.add(b, a)
    for a, b, c in itertools.islice(itertools.product(segs, repeat=3), 4000):
        assert sc.add(sc.add(a, b), c) == sc.add(a, sc.add(b, c))


def test_monoid_laws_random_mixed():
    rng = random.Random(11)
    for _ in range(2000):
        sig = rng.choice([ZZ, QZ, QQ])
        a, b, c = (random_segment(sig, rng) for _ in range(3))
        assert sc.add(a, b) == sc.add(b, a)
        assert sc.add(sc.add(a, b), c) == sc.add(a, sc.add(b, c))
        assert sc.add(sc.zero_minus(sig), a) == a


def test_nonprincipal_absorption():
    for sig, segs in ((ZZ, ZZ_SEGS), (QZ, QZ_SEGS)):
        zp = sc.zero_plus(sig)
        for s in segs:
            if not sc.is_principal(s):
                assert sc.add(zp, s) == s


def test_zero_plus_canonical_forms():
    assert sc.zero_plus(ZZ) == sc.seg(ZZ, 2, sc.GEQ, elem(ZZ, [0, 1]))
    zq = GroupSignature.parse("Z,Q")
    assert sc.zero_plus(zq).flavor == sc.GT and sc.zero_plus(zq).anchor == zero(zq)


def test_shift_equality_on_windows():
    pts = [elem(ZZ, [a, b]) for a in range(-4, 5) for b in range(-4, 5)]
    for s in ZZ_SEGS:
        for alpha in (elem(ZZ, [1, -2]), elem(ZZ, [0, 3])):
            shifted = sc.add(sc.principal_seg(alpha), s)
            for g in pts:
                assert sc.member(shifted, g) == sc.member(s, g - alpha)


def test_invariance_group_laws():
    for s1, s2 in itertools.product(QZ_SEGS, repeat=2):
        assert sc.inv_group(sc.add(s1, s2)).level == min(s1.level, s2.level)
    for s in QZ_SEGS:
        assert sc.inv_group(sc.delta(s)) == sc.inv_group(s)
        assert sc.inv_group(sc.neg_complement(s)) == sc.inv_group(s)


def test_delta_involution_is_closure():
    for s in ZZ_SEGS + QZ_SEGS:
        assert sc.delta(sc.delta(s)) == sc.hat(s)
    rng = random.Random(5)
    for _ in range(2000):
        s = random_segment(QQ, rng)
        assert sc.delta(sc.delta(s)) == sc.hat(s)


def test_difference_of_complement_identity():
    # the elementwise set S - S^c equals the strict invariance segment
    for s in QZ_SEGS:
        assert sc.add(s, sc.neg_complement(s)) == sc.inv_group_plus(s)


def test_exchange_law():
    for s1, s2 in itertools.product(QZ_SEGS, repeat=2):
        assert sc.add(s1, sc.msub(s2, s1)) == sc.add(sc.msub(s1, s1), s2)


def test_double_subtraction_law():
    for sig, segs in ((ZZ, ZZ_SEGS), (QZ, QZ_SEGS)):
        z = sc.zero_minus(sig)
        for s1 in segs:
            assert sc.msub(z, sc.msub(z, s1)) == sc.hat(s1)
            for s2 in segs[:12]:
                assert sc.msub(s2, sc.msub(z, s1)) == sc.add(s2, sc.hat(s1))


def test_ms_inclusion_law():
    for s1, s2 in itertools.product(QZ_SEGS, repeat=2):
        assert sc.subset(sc.add(s1, sc.ms(s2, s1)), s2)
        if not sc.is_principal(s1):
            reached = sc.add(s1, sc.cdiff(s2, s1))
            assert reached == sc.add(sc.inv_group_plus(s1), s2)
            assert sc.subset(reached, s2)


def test_solver_trichotomy_and_soundness():
    for s1, s2 in itertools.product(ZZ_SEGS, repeat=2):
        out = sc.solve(s1, s2)
        expected_no = s2.level > s1.level or (
            s1.level == s2.level and s1.flavor == sc.GT and s2.flavor == sc.GEQ
        )
        assert (out.kind == "no_solution") == expected_no
        if out.solvable:
            assert sc.add(s1, out.best) == s2
        else:
            assert sc.add(s1, out.t_max) == out.s2_prime
            assert sc.subset(out.s2_prime, s2) and out.s2_prime != s2
            assert sc.ms(s2, s1) == sc.ms(out.s2_prime, s1)


def test_solver_maximality_over_enumeration():
    for s1, s2 in itertools.product(ZZ_SEGS, repeat=2):
        out = sc.solve(s1, s2)
        if not out.solvable:
            for t in ZZ_SEGS:
                assert sc.add(s1, t) != s2
            continue
        best = out.best
        for t in ZZ_SEGS:
            if sc.add(s1, t) == s2:
                assert sc.subset(t, best)
                if out.kind == "unique":
                    assert t == best


def test_ms_pointwise_consistency():
    pts = [elem(ZZ, [a, b]) for a in range(-3, 4) for b in range(-3, 4)]
    box = [elem(ZZ, [a, b]) for a in range(-8, 9) for b in range(-8, 9)]
    for s1, s2 in itertools.islice(itertools.product(ZZ_SEGS, repeat=2), 120):
        t = sc.ms(s2, s1)
        for alpha in pts:
            claimed = sc.member(t, alpha)
            actual = all(sc.member(s2, alpha + s) for s in box if sc.member(s1, s))
            assert claimed == actual


def test_quotient_laws():
    for s in QZ_SEGS:
        pushed = sc.push_quotient(s, 1)
        if s.level > 1:
            assert sc.is_principal(pushed)
        else:
            assert sc.inv_group(pushed).level == s.level
        assert sc.pull_quotient(QZ, pushed) == sc.add(s, sc.convex_minus(QZ, 1))


def test_strict_invariance_addition_detects_flavor():
    for s in QZ_SEGS + ZZ_SEGS:
        changed = sc.add(s, sc.inv_group_plus(s)) != s
        assert changed == (s.flavor == sc.GEQ)


def test_threshold_key_order_matches_windowed_inclusion():
    pts = [elem(ZZ, [a, b]) for a in range(-8, 9) for b in range(-8, 9)]
    for s, t in itertools.product(ZZ_SEGS, repeat=2):
        claimed = sc.subset(s, t)
        windowed = all(sc.member(t, p) for p in pts if sc.member(s, p))
        assert claimed == windowed


@st.composite
def qq_segments(draw):
    level = draw(st.integers(min_value=1, max_value=2))
    flavor = draw(st.sampled_from([sc.GEQ, sc.GT]))
    coords = [
        draw(st.fractions(min_value=Fraction(-5), max_value=Fraction(5), max_denominator=6))
        for _ in range(level)
    ] + [Fraction(0)] * (2 - level)
    return sc.seg(QQ, level, flavor, elem(QQ, coords))


@given(qq_segments(), qq_segments())
@settings(max_examples=300)
def test_hypothesis_exchange_and_inv_laws(s1, s2):
    assert sc.add(s1, sc.msub(s2, s1)) == sc.add(sc.msub(s1, s1), s2)
    assert sc.inv_group(sc.add(s1, s2)).level == min(s1.level, s2.level)


@given(qq_segments())
@settings(max_examples=300)
def test_hypothesis_delta_involution(s):
    assert sc.delta(sc.delta(s)) == sc.hat(s)
    assert sc.inv_group(sc.delta(s)) == sc.inv_group(s)
