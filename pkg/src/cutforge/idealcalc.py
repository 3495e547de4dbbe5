"""Fractional ideals over a valuation ring, via the value-segment bijection.

Field elements never materialize: an ideal is stored as the final segment of
values it realizes, products become segment sums, and colon ideals become the
largest-solution operator on segments.  Every statement proved for segments
transfers verbatim; the element-level claims are only exercised through the
bijection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Sequence

from . import segcalc
from .errors import (
    DegenerateQuotient,
    FieldMismatch,
    LevelOutOfRange,
    NotAnOverringIdeal,
    NotAProperSubideal,
    NotASubideal,
    PreconditionViolated,
    SignatureMismatch,
)
from .lexgroup import ConvexSubgroup, GroupElement, GroupSignature, zero
from .segcalc import FinalSegment, seg


@dataclass(frozen=True)
class ValuedField:
    """A valued field carried only by its value group."""

    value_group: GroupSignature

    def __str__(self) -> str:
        return f"K(v: {self.value_group})"


@dataclass(frozen=True)
class Ideal:
    """A nonzero fractional ideal, represented by its value segment."""

    field: ValuedField
    segment: FinalSegment

    def __post_init__(self) -> None:
        if self.segment.sig != self.field.value_group:
            raise SignatureMismatch("segment not over the field's value group")

    @property
    def is_integral(self) -> bool:
        return segcalc.subset(self.segment, segcalc.zero_minus(self.segment.sig))

    def __str__(self) -> str:
        return f"ideal({self.segment})"


@dataclass(frozen=True)
class Overring(object):
    """The overring O(H_j) of the valuation ring, for a standard convex subgroup.

    Level n is the valuation ring itself; smaller levels are strictly larger
    rings, anti-ordered against their defining subgroups.
    """

    field: ValuedField
    level: int

    def __post_init__(self) -> None:
        n = self.field.value_group.n
        if not 1 <= self.level <= n:
            raise LevelOutOfRange(f"overring level {self.level} not in [1, {n}]")

    @property
    def subgroup(self) -> ConvexSubgroup:
        return ConvexSubgroup(self.field.value_group, self.level)

    @property
    def ring_segment(self) -> FinalSegment:
        """Value set of the ring: the smallest segment containing H_level."""
        return segcalc.convex_minus(self.field.value_group, self.level)

    @property
    def max_ideal_segment(self) -> FinalSegment:
        """Value set of the maximal ideal: everything above H_level."""
        return segcalc.convex_plus(self.field.value_group, self.level)

    def as_ideal(self) -> Ideal:
        return Ideal(self.field, self.ring_segment)

    def max_ideal(self) -> Ideal:
        return Ideal(self.field, self.max_ideal_segment)

    def contains(self, other: "Overring") -> bool:
        _require_same_field(self, other)
        return self.level <= other.level

    def __str__(self) -> str:
        return f"O({self.level})"


def _require_same_field(a, b) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def ideal_from_segment(field: ValuedField, s: FinalSegment) -> Ideal:
    return Ideal(field, s)


def segment_of(i: Ideal) -> FinalSegment:
    return i.segment


def principal_ideal(field: ValuedField, gamma: GroupElement) -> Ideal:
    """a * O_v for any a of value gamma."""
    return Ideal(field, segcalc.principal_seg(gamma))


def valuation_ring(field: ValuedField) -> Ideal:
    """O_v itself, viewed as an ideal."""
    return Ideal(field, segcalc.zero_minus(field.value_group))


def maximal_ideal(field: ValuedField) -> Ideal:
    """M_v, the maximal ideal of O_v."""
    return Ideal(field, segcalc.zero_plus(field.value_group))


def mul(i: Ideal, j: Ideal) -> Ideal:
    _require_same_field(i, j)
    return Ideal(i.field, segcalc.add(i.segment, j.segment))


def power(i: Ideal, k: int) -> Ideal:
    return Ideal(i.field, segcalc.n_times(i.segment, k))


def scale(i: Ideal, gamma: GroupElement) -> Ideal:
    """a * I for any a of value gamma."""
    return mul(principal_ideal(i.field, gamma), i)


def colon(i2: Ideal, i1: Ideal) -> Ideal:
    """I2 : I1, the largest J with I1 * J inside I2."""
    _require_same_field(i2, i1)
    return Ideal(i2.field, segcalc.ms(i2.segment, i1.segment))


def subideal(i: Ideal, j: Ideal) -> bool:
    """i subseteq j, through the order-preserving bijection."""
    _require_same_field(i, j)
    return segcalc.subset(i.segment, j.segment)


def ideal_eq(i: Ideal, j: Ideal) -> bool:
    _require_same_field(i, j)
    return i.segment == j.segment


def inv_ring(i: Ideal) -> Overring:
    """O(I), the largest valuation ring over which I is an ideal."""
    return Overring(i.field, i.segment.level)


def max_ideal(i: Ideal) -> Ideal:
    """M(I), the maximal ideal of O(I)."""
    return inv_ring(i).max_ideal()


def units_group(i: Ideal) -> ConvexSubgroup:
    """H(I), the value group of the units of O(I)."""
    return ConvexSubgroup(i.field.value_group, i.segment.level)


def overring(field: ValuedField, level: int) -> Overring:
    return Overring(field, level)


def extend(i: Ideal, o: Overring) -> Ideal:
    """I * O, the extension of I to the overring."""
    _require_same_field(i, o)
    return Ideal(i.field, segcalc.add(i.segment, o.ring_segment))


def is_overring_ideal(i: Ideal, o: Overring) -> bool:
    """True when I already is an O-ideal, i.e. extension does not grow it."""
    return extend(i, o) == i


def is_principal_over(i: Ideal, o: Overring) -> bool:
    """Principality of I as an O-ideal, read off in the quotient value group."""
    _require_same_field(i, o)
    extended = extend(i, o).segment
    if o.level == i.field.value_group.n:
        return segcalc.is_principal(extended)
    return segcalc.is_principal(segcalc.push_quotient(extended, o.level))


def closure_over(j: Ideal, o: Overring) -> Ideal:
    """The closure of J as an O-ideal: a*O when wJ acquires an infimum, else J."""
    _require_same_field(j, o)
    if not is_overring_ideal(j, o):
        raise NotAnOverringIdeal(f"{j} is not an O({o.level})-ideal")
    s = j.segment
    if s.level == o.level:
        return Ideal(j.field, seg(s.sig, o.level, segcalc.GEQ, s.anchor))
    return j


def deep_closure(j: Ideal) -> Ideal:
    """Closure of J as an O(J)-ideal; equals J^2 : J."""
    return Ideal(j.field, segcalc.dhat(j.segment))


@dataclass(frozen=True)
class SolveIdealOutcome:
    """Result of solving I1 * J = I2, mirroring the segment solver.

    In the no-solution case `i2_prime` is the largest O(I1)-ideal contained in
    I2 (a translate of M(I1)), and `j_max` the largest J with
    I1 * j_max = i2_prime; the colon I2 : I1 equals i2_prime : I1.
    """

    kind: str
    solution: Ideal | None = None
    i2_prime: Ideal | None = None
    j_max: Ideal | None = None

    @property
    def solvable(self) -> bool:
        return self.kind != "no_solution"

    @property
    def best(self) -> Ideal:
        out = self.solution if self.solvable else self.j_max
        assert out is not None
        return out


def solve_ideal(i1: Ideal, i2: Ideal) -> SolveIdealOutcome:
    """Solve I1 * J = I2 through the value bijection."""
    _require_same_field(i1, i2)
    out = segcalc.solve(i1.segment, i2.segment)
    wrap = lambda s: Ideal(i1.field, s) if s is not None else None
    if out.kind == "no_solution":
        return SolveIdealOutcome(
            "no_solution", i2_prime=wrap(out.s2_prime), j_max=wrap(out.t_max)
        )
    return SolveIdealOutcome(out.kind, solution=wrap(out.solution))


def annihilator(i1: Ideal, i2: Ideal) -> Ideal:
    """ann(I1 / I2) = I2 : I1, for I2 subseteq I1.

    Equal arguments are allowed: the quotient is zero and the annihilator is
    I1 : I1 = O(I1) viewed as an ideal.
    """
    _require_same_field(i1, i2)
    if not subideal(i2, i1):
        raise NotASubideal("annihilator requires I2 subseteq I1")
    return colon(i2, i1)


def ann_is_maximal_ideal(i1: Ideal, i2: Ideal) -> bool:
    """Whether ann(I1 / I2) = M_v: iff I1 is principal and I2 = I1 * M_v."""
    _require_same_field(i1, i2)
    if not (subideal(i2, i1) and not ideal_eq(i2, i1)):
        raise NotAProperSubideal("test requires I2 strictly inside I1")
    return segcalc.is_principal(i1.segment) and ideal_eq(
        i2, mul(i1, maximal_ideal(i1.field))
    )


@dataclass(frozen=True)
class AnnPowerResult:
    """Annihilator of I / (b * I^n) together with the shape flags."""

    annihilator: Ideal
    j: Ideal
    properly_contains_j: bool
    m_times_ann_inside_j: bool


def ann_power_quotient(i: Ideal, b_val: GroupElement, n: int) -> AnnPowerResult:
    """ann(I / (b I^n)) for integral I and b of value b_val >= 0.

    With J = b * I^(n-1), the answer is the closure of J * O(IJ) as an
    O(IJ)-ideal: for n >= 2 the invariance rings of I and J agree and this is
    just the deep closure of J.  The flag records whether the result grew past
    J (the case where the quotient value set acquires an infimum).
    """
    field = i.field
    if b_val.sig != field.value_group:
        raise SignatureMismatch("b value not in the value group")
    if n < 1:
        raise PreconditionViolated(f"power {n} < 1")
    o_v = valuation_ring(field)
    if n == 1:
        if not b_val > zero(field.value_group):
            raise PreconditionViolated("n = 1 requires b in the maximal ideal")
        if not subideal(i, o_v):
            raise PreconditionViolated("I must be integral")
        j = principal_ideal(field, b_val)
    else:
        if b_val < zero(field.value_group):
            raise PreconditionViolated("b must lie in the valuation ring")
        if not (subideal(i, o_v) and not ideal_eq(i, o_v)):
            raise PreconditionViolated("n > 1 requires I strictly inside O_v")
        j = mul(principal_ideal(field, b_val), power(i, n - 1))
    o = inv_ring(mul(i, j))
    j_ext = extend(j, o)
    if is_principal_over(i, o):
        ann = j_ext
    else:
        ann = deep_closure(j_ext)
    grows = subideal(j, ann) and not ideal_eq(j, ann)
    bounded = subideal(mul(max_ideal(j), ann), j)
    return AnnPowerResult(ann, j, grows, bounded)


@dataclass(frozen=True)
class BallPowerResult:
    """Annihilator of aM / (aM)^n and the 'equals M_v' predicate."""

    annihilator: Ideal
    equals_maximal_ideal: bool


def ann_ball_power(a_val: GroupElement, o: Overring, n: int) -> BallPowerResult:
    """ann(aM / (aM)^n) for the maximal ideal M of the overring and va = a_val >= 0.

    Undefined when (aM)^n = aM, i.e. when a is a unit of O and M is a
    nonprincipal O-ideal; that case raises DegenerateQuotient.
    """
    field = o.field
    sig = field.value_group
    if a_val.sig != sig:
        raise SignatureMismatch("a value not in the value group")
    if n < 2:
        raise PreconditionViolated(f"power {n} < 2")
    if a_val < zero(sig):
        raise PreconditionViolated("a must lie in the valuation ring")
    m_principal = sig.factors[o.level - 1] == "Z"
    a_in_m = any(c != 0 for c in a_val.coords[: o.level])
    if not a_in_m and not m_principal:
        raise DegenerateQuotient("(aM)^n = aM: the quotient is zero")
    a_ideal = principal_ideal(field, a_val)
    if m_principal:
        ann = power(mul(a_ideal, o.max_ideal()), n - 1)
    else:
        ann = power(mul(a_ideal, o.as_ideal()), n - 1)
    equals_mv = (
        n == 2
        and a_val.is_zero
        and o.level == sig.n
        and m_principal
    )
    return BallPowerResult(ann, equals_mv)


# -- the fourteen-property verification harness --------------------------------


@dataclass
class PropertyCheck:
    """Outcome of one verified statement over an enumeration."""

    name: str
    description: str
    instances: int = 0
    failures: list[str] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.instances += 1
        if not ok and len(self.failures) < 5:
            self.failures.append(detail())


@dataclass
class MPropertyReport:
    """Aggregated report of the maximal-ideal property suite."""

    field: ValuedField
    anchor_bound: int
    checks: list[PropertyCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            lines.append(f"[{status}] {c.name}: {c.description} ({c.instances} instances)")
            for f in c.failures:
                lines.append(f"    counterexample: {f}")
        return lines


def enumerate_ideals(
    field: ValuedField, bound: int, denominators: Sequence[int] = (1, 2)
) -> list[Ideal]:
    """Every canonical ideal with anchor coordinates bounded by `bound`."""
    return [
        Ideal(field, s)
        for s in segcalc.iter_segments(field.value_group, bound, denominators)
    ]


def _anchor_elements(
    sig: GroupSignature, bound: int, denominators: Sequence[int]
) -> list[GroupElement]:
    values = segcalc.anchor_values(bound, denominators)
    integers = [v for v in values if v.denominator == 1]
    axes = [values if f == "Q" else integers for f in sig.factors]
    return [GroupElement(sig, tuple(c)) for c in itertools.product(*axes)]


def verify_m_properties(
    field: ValuedField,
    anchor_bound: int = 2,
    denominators: Sequence[int] = (1, 2),
) -> MPropertyReport:
    """Check the fourteen maximal-ideal laws over every bounded canonical ideal.

    Properties quantifying over field elements range over all bounded anchor
    values; witnesses demanded by existential statements are produced
    explicitly rather than searched for.
    """
    sig = field.value_group
    ideals = enumerate_ideals(field, anchor_bound, denominators)
    shifts = _anchor_elements(sig, anchor_bound, denominators)
    primes = [Overring(field, j).max_ideal() for j in range(1, sig.n + 1)]
    o_v = valuation_ring(field)
    m_v = maximal_ideal(field)

    checks = {
        1: PropertyCheck("m1", "M(I) = M_v for principal I"),
        2: PropertyCheck("m2", "M(aI) = M(I)"),
        3: PropertyCheck("m3", "O(I) inside I iff M(I) does not contain I"),
        4: PropertyCheck("m4", "M(P) = P for prime P"),
        5: PropertyCheck("m5", "primes P, Q with aP = Q force P = Q"),
        6: PropertyCheck("m6", "M(O_v : I) = M(I)"),
        7: PropertyCheck("m7", "I : M(I) = I unless M(I) is a translate of I"),
        8: PropertyCheck("m8", "I M(I) proper in I iff I principal over O(I)"),
        9: PropertyCheck("m9", "M(I) proper in M(J) makes IJ a translate of I"),
        10: PropertyCheck("m10", "M(I) = M(J) and J M(J) proper in J make IJ a translate of I"),
        11: PropertyCheck("m11", "M(I) is the union of the proper integral translates of I"),
        12: PropertyCheck("m12", "I (O_v : I) is M(I) for nonprincipal I, else O_v"),
        13: PropertyCheck("m13", "M(IJ) = min(M(I), M(J))"),
        14: PropertyCheck("m14", "M(I^n) = M(I)"),
    }

    for i in ideals:
        mi = max_ideal(i)
        if segcalc.is_principal(i.segment):
            checks[1].record(
                ideal_eq(mi, m_v), lambda i=i, mi=mi: f"I={i}, M(I)={mi}"
            )
        oi_as_ideal = inv_ring(i).as_ideal()
        checks[3].record(
            subideal(oi_as_ideal, i) == (not subideal(i, mi)),
            lambda i=i: f"I={i}",
        )
        checks[6].record(
            ideal_eq(max_ideal(colon(o_v, i)), mi),
            lambda i=i: f"I={i}",
        )
        translate_exists = i.segment.flavor == mi.segment.flavor
        quo = colon(i, mi)
        if translate_exists:
            ok7 = subideal(i, quo) and not ideal_eq(i, quo)
        else:
            ok7 = ideal_eq(quo, i)
        checks[7].record(ok7, lambda i=i, quo=quo: f"I={i}, I:M(I)={quo}")
        shrinks = not ideal_eq(mul(i, mi), i)
        checks[8].record(
            shrinks == is_principal_over(i, inv_ring(i)),
            lambda i=i: f"I={i}",
        )
        if segcalc.is_principal(i.segment):
            checks[12].record(
                ideal_eq(mul(i, colon(o_v, i)), o_v), lambda i=i: f"I={i}"
            )
        else:
            checks[12].record(
                ideal_eq(mul(i, colon(o_v, i)), mi), lambda i=i: f"I={i}"
            )
        union = segcalc.add(segcalc.neg_complement(i.segment), i.segment)
        checks[11].record(
            union == mi.segment,
            lambda i=i, union=union: f"I={i}, union={union}",
        )
        for n in (1, 2, 3):
            checks[14].record(
                ideal_eq(max_ideal(power(i, n)), mi),
                lambda i=i, n=n: f"I={i}, n={n}",
            )
        for a in shifts:
            checks[2].record(
                ideal_eq(max_ideal(scale(i, a)), mi),
                lambda i=i, a=a: f"I={i}, a value {a}",
            )
            shifted = scale(i, a)
            if subideal(shifted, o_v) and not ideal_eq(shifted, o_v):
                checks[11].record(
                    subideal(shifted, mi),
                    lambda i=i, a=a: f"aI={scale(i, a)} not inside M(I)={mi}",
                )

    for p in primes:
        checks[4].record(ideal_eq(max_ideal(p), p), lambda p=p: f"P={p}")
        for q in primes:
            for a in shifts:
                if ideal_eq(scale(p, a), q):
                    checks[5].record(
                        ideal_eq(p, q), lambda p=p, q=q, a=a: f"P={p}, Q={q}, a={a}"
                    )

    for i in ideals:
        mi = max_ideal(i)
        for j in ideals:
            mj = max_ideal(j)
            ij = mul(i, j)
            smaller = mi if subideal(mi, mj) else mj
            checks[13].record(
                ideal_eq(max_ideal(ij), smaller),
                lambda i=i, j=j: f"I={i}, J={j}",
            )
            if subideal(mi, mj) and not ideal_eq(mi, mj):
                checks[9].record(
                    ideal_eq(ij, scale(i, j.segment.anchor)),
                    lambda i=i, j=j: f"I={i}, J={j}",
                )
            if ideal_eq(mi, mj) and not ideal_eq(mul(j, mj), j):
                checks[10].record(
                    ideal_eq(ij, scale(i, j.segment.anchor)),
                    lambda i=i, j=j: f"I={i}, J={j}",
                )

    return MPropertyReport(field, anchor_bound, [checks[k] for k in sorted(checks)])


# -- ideal-layer identity suite --------------------------------------------------


def _solve_ideal_check(i1: Ideal, i2: Ideal, check: PropertyCheck) -> None:
    """Trichotomy, exactness, no-solution postconditions for one ideal pair."""
    out = solve_ideal(i1, i2)
    s1, s2 = i1.segment, i2.segment
    solvable = s1.level >= s2.level and not (
        s1.level == s2.level and s1.flavor == segcalc.GT and s2.flavor == segcalc.GEQ
    )
    expected = (
        "unique"
        if segcalc.is_principal(s1)
        else ("largest" if solvable else "no_solution")
    )
    if out.kind != expected:
        check.record(False, lambda: f"label {out.kind} for I1={i1}, I2={i2}")
        return
    if out.solvable:
        check.record(
            ideal_eq(mul(i1, out.best), i2), lambda: f"product off for I1={i1}, I2={i2}"
        )
        return
    assert out.i2_prime is not None and out.j_max is not None
    ok = (
        ideal_eq(mul(i1, out.j_max), out.i2_prime)
        and subideal(out.i2_prime, i2)
        and not ideal_eq(out.i2_prime, i2)
        and ideal_eq(colon(i2, i1), colon(out.i2_prime, i1))
    )
    # i2' is a translate of M(I1): a value shift of the original target anchor
    shifted = scale(max_ideal(i1), _truncate(s2.anchor, s1.level))
    ok = ok and ideal_eq(out.i2_prime, shifted)
    check.record(ok, lambda: f"no-solution payload off for I1={i1}, I2={i2}")


def _truncate(gamma: GroupElement, level: int) -> GroupElement:
    coords = tuple(gamma.coords[:level]) + (0,) * (gamma.sig.n - level)
    return GroupElement(gamma.sig, tuple(map(_as_fraction, coords)))


def _as_fraction(x):
    from fractions import Fraction

    return x if isinstance(x, Fraction) else Fraction(x)


def run_ideal_suite(
    field: ValuedField,
    anchor_bound: int = 2,
    denominators: Sequence[int] = (1, 2),
    maximality_cap: int = 400,
    seed: int = 0,
) -> list[PropertyCheck]:
    """Identity checks tying the ideal layer to the segment layer.

    Covers the bijection homomorphism, colon maximality, invariance-ring laws,
    the overring pairing, closure and deep-closure colon identities, the ideal
    solver postconditions, and the annihilator formulas with their
    maximal-ideal predicates.
    """
    import random as _random

    sig = field.value_group
    ideals = enumerate_ideals(field, anchor_bound, denominators)
    shifts = _anchor_elements(sig, anchor_bound, denominators)
    o_v = valuation_ring(field)
    m_v = maximal_ideal(field)

    product_hom = PropertyCheck("product-hom", "v(IJ) = vI + vJ")
    colon_max = PropertyCheck("colon-max", "I2:I1 is the largest J with I1 J inside I2")
    inv_laws = PropertyCheck("inv-ring-laws", "O(IJ), O(I^n), O(aI) reductions")
    galois = PropertyCheck("overring-pairing", "H <-> O(H) inverse maps and value sets")
    ring_fixed = PropertyCheck("ring-ideals", "O(O) = O(M(O)) = O")
    unit_colon = PropertyCheck("unit-colon", "v(I2 (O_v : I1)) = vI2 (-) vI1")
    solver = PropertyCheck("solve-ideal", "trichotomy and postconditions")
    closure_cc = PropertyCheck("closure-colon", "O:(O:J) equals the O-closure of J")
    deep_cc = PropertyCheck("deep-closure-colon", "J^2 : J equals the deep closure")
    ann_formula = PropertyCheck("ann-product", "IJ : I via extension and deep closure")
    ann_contains = PropertyCheck("ann-contains", "ann(I/IJ) contains J")
    ann_power = PropertyCheck("ann-power", "power-quotient formula vs generic colon")
    ann_ball = PropertyCheck("ann-ball", "ball-power formula, predicate, degeneracy")
    ann_max = PropertyCheck("ann-max-pred", "ann = M_v predicate matches the colon")

    rng = _random.Random(seed)
    pairs = [(a, b) for a in ideals for b in ideals]
    max_pairs = pairs
    if len(pairs) > maximality_cap:
        max_pairs = rng.sample(pairs, maximality_cap)

    for i, j in pairs:
        ij = mul(i, j)
        product_hom.record(
            ij.segment == segcalc.add(i.segment, j.segment),
            lambda i=i, j=j: f"I={i}, J={j}",
        )
        inv_laws.record(
            inv_ring(ij).level == min(inv_ring(i).level, inv_ring(j).level),
            lambda i=i, j=j: f"O(IJ) off for I={i}, J={j}",
        )
        q = colon(j, i)
        colon_max.record(
            subideal(mul(i, q), j), lambda i=i, j=j: f"colon not a solution: I={i}, J={j}"
        )
        _solve_ideal_check(i, j, solver)
        o_ij = inv_ring(ij)
        j1 = extend(j, o_ij)
        expect_ann = j1 if is_principal_over(i, o_ij) else deep_closure(j1)
        got_ann = colon(ij, i)
        ann_formula.record(
            ideal_eq(got_ann, expect_ann), lambda i=i, j=j: f"I={i}, J={j}"
        )
        ann_contains.record(
            subideal(j, got_ann), lambda i=i, j=j: f"I={i}, J={j}"
        )
        unit_colon.record(
            mul(j, colon(o_v, i)).segment == segcalc.msub(j.segment, i.segment),
            lambda i=i, j=j: f"I={i}, J={j}",
        )

    for i1, j_prime in max_pairs:
        q = colon(j_prime, i1)
        for cand in ideals:
            if subideal(q, cand) and not ideal_eq(q, cand):
                colon_max.record(
                    not subideal(mul(i1, cand), j_prime),
                    lambda i1=i1, j_prime=j_prime, cand=cand: (
                        f"larger solution {cand} for I1={i1}, I2={j_prime}"
                    ),
                )

    for i in ideals:
        for n in (2, 3):
            inv_laws.record(
                inv_ring(power(i, n)).level == inv_ring(i).level,
                lambda i=i, n=n: f"O(I^{n}) off for I={i}",
            )
        for a in shifts:
            inv_laws.record(
                inv_ring(scale(i, a)).level == inv_ring(i).level,
                lambda i=i, a=a: f"O(aI) off for I={i}, a={a}",
            )
        deep_cc.record(
            ideal_eq(deep_closure(i), colon(mul(i, i), i)), lambda i=i: f"J={i}"
        )
        for level in range(1, sig.n + 1):
            o = overring(field, level)
            if not is_overring_ideal(i, o):
                continue
            o_ideal = o.as_ideal()
            closure_cc.record(
                ideal_eq(closure_over(i, o), colon(o_ideal, colon(o_ideal, i))),
                lambda i=i, level=level: f"J={i}, O({level})",
            )

    for level in range(1, sig.n + 1):
        o = overring(field, level)
        galois.record(
            o.subgroup.level == level
            and segcalc.inv_group(o.ring_segment).level == level
            and segcalc.inv_group(o.max_ideal_segment).level == level
            and segcalc.subset(o.max_ideal_segment, o.ring_segment)
            and segcalc.member(o.ring_segment, zero(sig))
            and not segcalc.member(o.max_ideal_segment, zero(sig)),
            lambda level=level: f"level {level}",
        )
        ring_fixed.record(
            inv_ring(o.as_ideal()).level == level
            and inv_ring(o.max_ideal()).level == level,
            lambda level=level: f"level {level}",
        )

    integral = [i for i in ideals if i.is_integral]
    nonneg = [a for a in shifts if a >= zero(sig)]
    positive = [a for a in nonneg if a > zero(sig)]
    for i in integral:
        proper = not ideal_eq(i, o_v)
        for n in (1, 2, 3):
            b_values = positive if n == 1 else nonneg
            if n > 1 and not proper:
                continue
            for b in b_values:
                res = ann_power_quotient(i, b, n)
                generic = annihilator(i, mul(principal_ideal(field, b), power(i, n)))
                # the annihilator is M_v exactly when I is principal and J = M_v
                mv_pred = segcalc.is_principal(i.segment) and ideal_eq(res.j, m_v)
                ann_power.record(
                    ideal_eq(res.annihilator, generic)
                    and ideal_eq(res.annihilator, m_v) == mv_pred,
                    lambda i=i, b=b, n=n: f"I={i}, vb={b}, n={n}",
                )

    for a in nonneg:
        for level in range(1, sig.n + 1):
            o = overring(field, level)
            m_nonprincipal = sig.factors[level - 1] == "Q"
            a_unit_for_o = all(c == 0 for c in a.coords[:level])
            for n in (2, 3):
                degenerate = a_unit_for_o and m_nonprincipal
                am = mul(principal_ideal(field, a), o.max_ideal())
                try:
                    res = ann_ball_power(a, o, n)
                except DegenerateQuotient:
                    ann_ball.record(
                        degenerate and ideal_eq(power(am, n), am),
                        lambda a=a, level=level, n=n: f"va={a}, O({level}), n={n}",
                    )
                    continue
                generic = annihilator(am, power(am, n))
                ann_ball.record(
                    not degenerate
                    and ideal_eq(res.annihilator, generic)
                    and res.equals_maximal_ideal == ideal_eq(res.annihilator, m_v),
                    lambda a=a, level=level, n=n: f"va={a}, O({level}), n={n}",
                )

    for i1, i2 in max_pairs:
        if not (subideal(i2, i1) and not ideal_eq(i2, i1)):
            continue
        ann_max.record(
            ann_is_maximal_ideal(i1, i2) == ideal_eq(annihilator(i1, i2), m_v),
            lambda i1=i1, i2=i2: f"I1={i1}, I2={i2}",
        )

    return [
        product_hom, colon_max, inv_laws, galois, ring_fixed, unit_colon, solver,
        closure_cc, deep_cc, ann_formula, ann_contains, ann_power, ann_ball, ann_max,
    ]
