from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from cutforge.errors import (
    DegenerateQuotient,
    FieldMismatch,
    LevelOutOfRange,
    NotAnOverringIdeal,
    NotAProperSubideal,
    NotASubideal,
    PreconditionViolated,
)
from cutforge.lexgroup import GroupSignature, elem
from cutforge import idealcalc as ic, segcalc as sc

Z = ic.ValuedField(GroupSignature.parse("Z"))
Q = ic.ValuedField(GroupSignature.parse("Q"))
ZZ = ic.ValuedField(GroupSignature.parse("Z,Z"))
QQ = ic.ValuedField(GroupSignature.parse("Q,Q"))


def ideal(field, level, flavor, coords):
    sig = field.value_group
    return ic.Ideal(field, sc.seg(sig, level, flavor, elem(sig, coords)))


def val(field, coords):
    return elem(field.value_group, coords)


class TestBijection:
    def test_ring_and_round_trip(self):
        s = sc.zero_minus(Z.value_group)
        assert ic.segment_of(ic.ideal_from_segment(Z, s)) == s
        assert ic.ideal_from_segment(Z, s) == ic.valuation_ring(Z)

    def test_round_trip_enumerated(self):
        for i in ic.enumerate_ideals(QQ, 2):
            assert ic.ideal_from_segment(QQ, ic.segment_of(i)) == i

    def test_inclusion_transfers(self):
        for i in ic.enumerate_ideals(ZZ, 1):
            for j in ic.enumerate_ideals(ZZ, 1):
                assert ic.subideal(i, j) == sc.subset(i.segment, j.segment)

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            ic.mul(ic.valuation_ring(Z), ic.valuation_ring(Q))


class TestPrincipalAndMul:
    def test_principal_zero_is_ring(self):
        assert ic.principal_ideal(Z, val(Z, [0])) == ic.valuation_ring(Z)

    def test_principal_one_is_maximal_in_z(self):
        assert ic.principal_ideal(Z, val(Z, [1])) == ic.maximal_ideal(Z)

    def test_principal_multiplicativity(self):
        a, b = val(ZZ, [1, -2]), val(ZZ, [0, 3])
        assert ic.mul(
            ic.principal_ideal(ZZ, a), ic.principal_ideal(ZZ, b)
        ) == ic.principal_ideal(ZZ, a + b)

    def test_maximal_ideal_powers(self):
        mv = ic.maximal_ideal(Z)
        assert ic.mul(mv, mv).segment == sc.seg(Z.value_group, 1, "geq", val(Z, [2]))
        mv_q = ic.maximal_ideal(Q)
        assert ic.mul(mv_q, mv_q) == mv_q  # idempotent in the dense rank-one case

    def test_mul_mixed_levels(self):
        got = ic.mul(ideal(ZZ, 1, "geq", [0, 0]), ideal(ZZ, 2, "geq", [1, 5]))
        assert got == ideal(ZZ, 1, "geq", [1, 0])


class TestColon:
    def test_examples(self):
        assert ic.colon(ic.maximal_ideal(Z), ic.valuation_ring(Z)) == ic.maximal_ideal(Z)
        i = ideal(ZZ, 1, "geq", [0, 0])
        assert ic.colon(i, i) == ideal(ZZ, 1, "geq", [0, 0])
        assert ic.colon(i, i) == ic.inv_ring(i).as_ideal()
        assert ic.colon(ic.valuation_ring(Q), ic.maximal_ideal(Q)) == ic.valuation_ring(Q)

    def test_largest_property(self):
        ideals = ic.enumerate_ideals(ZZ, 1)
        for i1, i2 in itertools.product(ideals, repeat=2):
            q = ic.colon(i2, i1)
            assert ic.subideal(ic.mul(i1, q), i2)
            for j in ideals:
                if ic.subideal(q, j) and not ic.ideal_eq(q, j):
                    assert not ic.subideal(ic.mul(i1, j), i2)


class TestInvarianceRing:
    def test_examples(self):
        i = ideal(ZZ, 1, "geq", [0, 0])
        assert ic.inv_ring(i).level == 1
        assert ic.max_ideal(i) == ideal(ZZ, 1, "geq", [1, 0])
        assert ic.units_group(i).level == 1

    def test_principal_gets_valuation_ring(self):
        p = ic.principal_ideal(ZZ, val(ZZ, [2, -1]))
        assert ic.inv_ring(p).level == 2
        assert ic.max_ideal(p) == ic.maximal_ideal(ZZ)

    def test_overring_fixed_points(self):
        for level in (1, 2):
            o = ic.overring(ZZ, level)
            assert ic.inv_ring(o.as_ideal()) == o
            assert ic.inv_ring(o.max_ideal()) == o

    def test_overring_value_sets(self):
        o = ic.overring(QQ, 1)
        assert o.ring_segment == sc.convex_minus(QQ.value_group, 1)
        assert o.max_ideal_segment == sc.convex_plus(QQ.value_group, 1)
        assert sc.subset(o.max_ideal_segment, o.ring_segment)

    def test_anti_ordering(self):
        assert ic.overring(ZZ, 1).contains(ic.overring(ZZ, 2))
        assert not ic.overring(ZZ, 2).contains(ic.overring(ZZ, 1))
        with pytest.raises(LevelOutOfRange):
            ic.overring(ZZ, 0)


class TestExtensionAndClosure:
    def test_extend_examples(self):
        p = ic.principal_ideal(ZZ, val(ZZ, [0, 3]))
        assert ic.extend(p, ic.overring(ZZ, 1)) == ideal(ZZ, 1, "geq", [0, 0])
        i = ideal(ZZ, 1, "geq", [0, 0])
        assert ic.extend(i, ic.overring(ZZ, 2)) == i
        assert ic.is_overring_ideal(i, ic.overring(ZZ, 1))

    def test_is_principal_over(self):
        assert ic.is_principal_over(ideal(ZZ, 1, "geq", [1, 0]), ic.overring(ZZ, 1))
        assert not ic.is_principal_over(ideal(QQ, 1, "gt", [0, 0]), ic.overring(QQ, 1))
        p = ic.principal_ideal(QQ, val(QQ, ["1/2", 0]))
        assert ic.is_principal_over(p, ic.overring(QQ, 2))

    def test_closure_over(self):
        j = ideal(QQ, 1, "gt", [2, 0])
        got = ic.closure_over(j, ic.overring(QQ, 1))
        assert got == ideal(QQ, 1, "geq", [2, 0])
        closed = ideal(QQ, 1, "geq", [2, 0])
        assert ic.closure_over(closed, ic.overring(QQ, 1)) == closed
        with pytest.raises(NotAnOverringIdeal):
            ic.closure_over(ic.principal_ideal(QQ, val(QQ, [1, 1])), ic.overring(QQ, 1))

    def test_closure_is_double_colon(self):
        for level in (1, 2):
            o = ic.overring(QQ, level)
            o_ideal = o.as_ideal()
            for j in ic.enumerate_ideals(QQ, 1):
                if not ic.is_overring_ideal(j, o):
                    continue
                assert ic.closure_over(j, o) == ic.colon(o_ideal, ic.colon(o_ideal, j))

    def test_deep_closure(self):
        j = ideal(QQ, 1, "gt", [0, 0])
        assert ic.deep_closure(j) == ideal(QQ, 1, "geq", [0, 0])
        assert ic.deep_closure(j) == ic.colon(ic.mul(j, j), j)
        geq = ideal(QQ, 2, "geq", [1, "1/2"])
        assert ic.deep_closure(geq) == geq


class TestSolveIdeal:
    def test_unique(self):
        out = ic.solve_ideal(
            ic.principal_ideal(Z, val(Z, [1])), ic.principal_ideal(Z, val(Z, [5]))
        )
        assert out.kind == "unique"
        assert out.solution == ic.principal_ideal(Z, val(Z, [4]))

    def test_no_solution_mirrors_segments(self):
        out = ic.solve_ideal(
            ideal(ZZ, 1, "geq", [0, 0]), ic.principal_ideal(ZZ, val(ZZ, [0, 0]))
        )
        assert out.kind == "no_solution"
        assert out.i2_prime == ideal(ZZ, 1, "geq", [1, 0])
        assert out.j_max == ideal(ZZ, 1, "geq", [1, 0])
        # the shrunken target is a translate of the maximal ideal of I1
        assert out.i2_prime == ic.mul(
            ic.principal_ideal(ZZ, val(ZZ, [0, 0])), ic.max_ideal(ideal(ZZ, 1, "geq", [0, 0]))
        )

    def test_largest(self):
        i = ideal(QQ, 1, "gt", [0, 0])
        out = ic.solve_ideal(i, i)
        assert out.kind == "largest"
        assert out.solution == ideal(QQ, 1, "geq", [0, 0])


class TestAnnihilators:
    def test_ann_basic(self):
        assert ic.annihilator(ic.valuation_ring(Z), ic.maximal_ideal(Z)) == ic.maximal_ideal(Z)
        assert ic.annihilator(ic.valuation_ring(Q), ic.maximal_ideal(Q)) == ic.maximal_ideal(Q)
        i = ideal(QQ, 1, "gt", [0, 0])
        assert ic.annihilator(i, ic.mul(i, i)) == ic.deep_closure(i)

    def test_ann_zero_quotient_convention(self):
        i = ideal(ZZ, 1, "geq", [0, 0])
        assert ic.annihilator(i, i) == ic.inv_ring(i).as_ideal()

    def test_ann_requires_inclusion(self):
        with pytest.raises(NotASubideal):
            ic.annihilator(ic.maximal_ideal(Z), ic.valuation_ring(Z))

    def test_ann_is_maximal_ideal(self):
        assert ic.ann_is_maximal_ideal(ic.valuation_ring(Z), ic.maximal_ideal(Z))
        one = ic.principal_ideal(Q, val(Q, [1]))
        assert not ic.ann_is_maximal_ideal(ic.maximal_ideal(Q), one)
        assert not ic.ann_is_maximal_ideal(
            ideal(ZZ, 1, "geq", [0, 0]), ideal(ZZ, 1, "geq", [1, 0])
        )
        with pytest.raises(NotAProperSubideal):
            ic.ann_is_maximal_ideal(ic.valuation_ring(Z), ic.valuation_ring(Z))

    def test_ann_matches_colon_predicate(self):
        for i1 in ic.enumerate_ideals(QQ, 1):
            for i2 in ic.enumerate_ideals(QQ, 1):
                if not (ic.subideal(i2, i1) and not ic.ideal_eq(i2, i1)):
                    continue
                assert ic.ann_is_maximal_ideal(i1, i2) == ic.ideal_eq(
                    ic.annihilator(i1, i2), ic.maximal_ideal(QQ)
                )


class TestPowerQuotients:
    def test_z_maximal_ideal_case(self):
        res = ic.ann_power_quotient(ic.maximal_ideal(Z), val(Z, [0]), 2)
        assert res.annihilator == ic.maximal_ideal(Z)
        assert not res.properly_contains_j
        assert res.m_times_ann_inside_j

    def test_q_dense_case_grows(self):
        res = ic.ann_power_quotient(ic.maximal_ideal(Q), val(Q, [0]), 2)
        assert res.annihilator == ic.valuation_ring(Q)
        assert res.properly_contains_j

    def test_deeply_closed_geq_case(self):
        res = ic.ann_power_quotient(ideal(QQ, 1, "geq", [1, 0]), val(QQ, [1, 0]), 2)
        assert res.annihilator == ideal(QQ, 1, "geq", [2, 0])
        assert not res.properly_contains_j

    def test_agreement_with_generic_colon(self):
        for field in (Z, Q, ZZ, QQ):
            integral = [i for i in ic.enumerate_ideals(field, 1) if i.is_integral]
            shifts = [v for v in ic._anchor_elements(field.value_group, 1, (1,))]
            o_v = ic.valuation_ring(field)
            for i in integral:
                for b in shifts:
                    for n in (1, 2):
                        try:
                            res = ic.ann_power_quotient(i, b, n)
                        except PreconditionViolated:
                            continue
                        generic = ic.annihilator(
                            i, ic.mul(ic.principal_ideal(field, b), ic.power(i, n))
                        )
                        assert ic.ideal_eq(res.annihilator, generic)

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            ic.ann_power_quotient(ic.maximal_ideal(Z), val(Z, [0]), 1)  # b not in M_v
        with pytest.raises(PreconditionViolated):
            ic.ann_power_quotient(ic.valuation_ring(Z), val(Z, [1]), 2)  # I = O_v
        with pytest.raises(PreconditionViolated):
            ic.ann_power_quotient(ic.maximal_ideal(Z), val(Z, [-1]), 2)  # b outside O_v


class TestBallPowers:
    def test_discrete_case_predicate(self):
        res = ic.ann_ball_power(val(Z, [0]), ic.overring(Z, 1), 2)
        assert res.annihilator == ic.maximal_ideal(Z)
        assert res.equals_maximal_ideal

    def test_dense_unit_branch(self):
        res = ic.ann_ball_power(val(Q, [1]), ic.overring(Q, 1), 2)
        assert res.annihilator.segment == sc.seg(Q.value_group, 1, "geq", val(Q, [1]))
        assert not res.equals_maximal_ideal

    def test_degenerate(self):
        with pytest.raises(DegenerateQuotient):
            ic.ann_ball_power(val(Q, [0]), ic.overring(Q, 1), 2)
        # degeneracy matches (aM)^n = aM exactly
        am = ic.maximal_ideal(Q)
        assert ic.power(am, 2) == am

    def test_agreement_with_generic_colon(self):
        for field in (Z, Q, ZZ, QQ):
            sig = field.value_group
            nonneg = [
                v for v in ic._anchor_elements(sig, 1, (1,))
                if all(c >= 0 for c in v.coords[:1]) and v >= elem(sig, [0] * sig.n)
            ]
            for a in nonneg:
                for level in range(1, sig.n + 1):
                    o = ic.overring(field, level)
                    am = ic.mul(ic.principal_ideal(field, a), o.max_ideal())
                    for n in (2, 3):
                        try:
                            res = ic.ann_ball_power(a, o, n)
                        except DegenerateQuotient:
                            assert ic.ideal_eq(ic.power(am, n), am)
                            continue
                        assert not ic.ideal_eq(ic.power(am, n), am)
                        generic = ic.annihilator(am, ic.power(am, n))
                        assert ic.ideal_eq(res.annihilator, generic)
                        assert res.equals_maximal_ideal == ic.ideal_eq(
                            res.annihilator, ic.maximal_ideal(field)
                        )


class TestMPropertySuite:
    def test_all_fields_pass(self):
        for name in ("Z", "Q", "Z,Z", "Q,Z"):
            field = ic.ValuedField(GroupSignature.parse(name))
            report = ic.verify_m_properties(field, 2)
            assert report.passed, "\n".join(report.summary_lines())
            assert len(report.checks) == 14

    def test_spot_values(self):
        # M(I J) for I of level 1 and a principal J stays at level 1
        i = ideal(ZZ, 1, "geq", [0, 0])
        j = ic.principal_ideal(ZZ, val(ZZ, [0, 3]))
        assert ic.max_ideal(ic.mul(i, j)) == ic.max_ideal(i)
        # prime ideals are their own maximal ideals
        p = ic.overring(ZZ, 1).max_ideal()
        assert ic.max_ideal(p) == p


class TestIdealSuite:
    def test_runs_clean_on_small_fields(self):
        for name in ("Z", "Q,Z"):
            field = ic.ValuedField(GroupSignature.parse(name))
            checks = ic.run_ideal_suite(field, 2)
            for c in checks:
                assert c.passed, (c.name, c.failures[:3])
