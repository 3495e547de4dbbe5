"""Canonical final segments of a lexicographic group and their arithmetic.

Every representable final segment is a triple (level j, flavor, anchor g):

    flavor 'geq'  ->  { x : first j coordinates of x  >=lex  those of g }
    flavor 'gt'   ->  { x : first j coordinates of x  >lex   those of g }

Normal form: the anchor is zero beyond position j, and flavor 'gt' is rewritten
to 'geq' with a bumped anchor whenever factor j is Z (the quotient by H_j is
then discretely ordered, so the two sets coincide).  Two normalized triples
denote the same set exactly when they are equal, which makes set equality,
inclusion and the solver purely symbolic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import BadMultiplicity, LevelOutOfRange, SignatureMismatch
from .lexgroup import (
    GroupElement,
    GroupSignature,
    ConvexSubgroup,
    RationalLike,
    elem,
    zero,
)

GEQ = "geq"
GT = "gt"

# Sentinel ranks for threshold keys: -inf < any rational < +inf.
_NEG_INF = (-1, Fraction(0))
_POS_INF = (1, Fraction(0))


@dataclass(frozen=True)
class FinalSegment:
    """A normalized element-definable final segment."""

    sig: GroupSignature
    level: int
    flavor: str
    anchor: GroupElement

    def __post_init__(self) -> None:
        n = self.sig.n
        if not 1 <= self.level <= n:
            raise LevelOutOfRange(f"segment level {self.level} not in [1, {n}]")
        if self.flavor not in (GEQ, GT):
            raise ValueError(f"unknown flavor {self.flavor!r}")
        if self.anchor.sig != self.sig:
            raise SignatureMismatch("anchor signature differs from segment signature")
        if any(c != 0 for c in self.anchor.coords[self.level:]):
            raise ValueError("anchor not tail-zeroed; use seg() to normalize")
        if self.flavor == GT and self.sig.factors[self.level - 1] == "Z":
            raise ValueError("flavor 'gt' at a Z level; use seg() to normalize")

    def __contains__(self, g: GroupElement) -> bool:
        return member(self, g)

    def __str__(self) -> str:
        op = ">=" if self.flavor == GEQ else ">"
        return f"seg({self.level}, {op}, {self.anchor})"


def seg(
    sig: GroupSignature,
    level: int,
    flavor: str,
    anchor: GroupElement | Iterable[RationalLike],
) -> FinalSegment:
    """Normalizing constructor: tail-zero the anchor, then resolve 'gt' at Z levels."""
    if not 1 <= level <= sig.n:
        raise LevelOutOfRange(f"segment level {level} not in [1, {sig.n}]")
    if flavor not in (GEQ, GT):
        raise ValueError(f"unknown flavor {flavor!r}")
    g = anchor if isinstance(anchor, GroupElement) else elem(sig, anchor)
    if g.sig != sig:
        raise SignatureMismatch("anchor signature differs from segment signature")
    coords = list(g.coords[:level]) + [Fraction(0)] * (sig.n - level)
    if flavor == GT and sig.factors[level - 1] == "Z":
        coords[level - 1] += 1
        flavor = GEQ
    return FinalSegment(sig, level, flavor, GroupElement(sig, tuple(coords)))


def principal_seg(gamma: GroupElement) -> FinalSegment:
    """The principal segment { x : x >= gamma }, the embedded copy of gamma."""
    return seg(gamma.sig, gamma.sig.n, GEQ, gamma)


def zero_minus(sig: GroupSignature) -> FinalSegment:
    """The neutral element { x : x >= 0 } of segment addition."""
    return principal_seg(zero(sig))


def zero_plus(sig: GroupSignature) -> FinalSegment:
    """{ x : x > 0 }, normalized."""
    return seg(sig, sig.n, GT, zero(sig))


def convex_minus(sig: GroupSignature, j: int) -> FinalSegment:
    """The smallest final segment containing H_j."""
    return seg(sig, j, GEQ, zero(sig))


def convex_plus(sig: GroupSignature, j: int) -> FinalSegment:
    """{ x : x > H_j }, normalized."""
    return seg(sig, j, GT, zero(sig))


def _require_same_sig(a: FinalSegment, b: FinalSegment) -> None:
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")


def member(s: FinalSegment, g: GroupElement) -> bool:
    """Exact membership test by prefix comparison."""
    if g.sig != s.sig:
        raise SignatureMismatch("element signature differs from segment signature")
    c = _cmp_prefix(g, s.anchor, s.level)
    return c >= 0 if s.flavor == GEQ else c > 0


def _cmp_prefix(a: GroupElement, b: GroupElement, j: int) -> int:
    for x, y in zip(a.coords[:j], b.coords[:j]):
        if x < y:
            return -1
        if x > y:
            return 1
    return 0


def threshold_key(s: FinalSegment) -> tuple:
    """Sentinel-padded comparison key; key(S) >= key(T)  iff  S subseteq T.

    Positions up to the level carry the anchor, the remaining positions and a
    final flavor slot carry -inf for 'geq' and +inf for 'gt'.  Equal keys mean
    equal sets.
    """
    pad = _NEG_INF if s.flavor == GEQ else _POS_INF
    entries = [(0, c) for c in s.anchor.coords[: s.level]]
    entries.extend([pad] * (s.sig.n - s.level + 1))
    return tuple(entries)


def subset(s: FinalSegment, t: FinalSegment) -> bool:
    """s subseteq t, decided on threshold keys."""
    _require_same_sig(s, t)
    return threshold_key(s) >= threshold_key(t)


def seg_eq(s: FinalSegment, t: FinalSegment) -> bool:
    _require_same_sig(s, t)
    return s == t


def compare(s: FinalSegment, t: FinalSegment) -> int:
    """Position in the inclusion chain: -1 if s is strictly smaller, 0, or 1."""
    _require_same_sig(s, t)
    ks, kt = threshold_key(s), threshold_key(t)
    if ks == kt:
        return 0
    return -1 if ks > kt else 1


def add(s1: FinalSegment, s2: FinalSegment) -> FinalSegment:
    """Elementwise sum.  Level is min(j1, j2); flavor comes from the arguments
    at that level ('geq' only if all of them are 'geq')."""
    _require_same_sig(s1, s2)
    j = min(s1.level, s2.level)
    flavor = GEQ
    for s in (s1, s2):
        if s.level == j and s.flavor == GT:
            flavor = GT
    return seg(s1.sig, j, flavor, s1.anchor + s2.anchor)


def n_times(s: FinalSegment, k: int) -> FinalSegment:
    """k-fold sum of s with itself."""
    if k < 1:
        raise BadMultiplicity(f"multiplicity {k} < 1")
    return seg(s.sig, s.level, s.flavor, s.anchor.scale(k))


def shift(s: FinalSegment, gamma: GroupElement) -> FinalSegment:
    """The translate gamma + s (equals principal_seg(gamma) + s)."""
    return add(principal_seg(gamma), s)


def inv_group(s: FinalSegment) -> ConvexSubgroup:
    """The invariance group { g : s + g = s }, always H_level."""
    return ConvexSubgroup(s.sig, s.level)


def inv_group_plus(s: FinalSegment) -> FinalSegment:
    """{ x : x > inv_group(s) } as a normalized segment."""
    return convex_plus(s.sig, s.level)


def inv_group_minus(s: FinalSegment) -> FinalSegment:
    """The smallest segment containing inv_group(s)."""
    return convex_minus(s.sig, s.level)


def is_principal(s: FinalSegment) -> bool:
    return s.level == s.sig.n and s.flavor == GEQ


def infimum(s: FinalSegment) -> GroupElement | None:
    """The infimum in the group, which exists exactly when the level is n."""
    return s.anchor if s.level == s.sig.n else None


def is_closed(s: FinalSegment) -> bool:
    """Closed in the order topology: principal, or without an infimum."""
    return not (s.level == s.sig.n and s.flavor == GT)


def delta(s: FinalSegment) -> FinalSegment:
    """Delta(s) = { x : x >= -s }, the modified complement."""
    if is_principal(s):
        return seg(s.sig, s.level, GEQ, -s.anchor)
    return seg(s.sig, s.level, _flip(s.flavor), -s.anchor)


def neg_complement(s: FinalSegment) -> FinalSegment:
    """-s^c = { x : -x not in s }."""
    return seg(s.sig, s.level, _flip(s.flavor), -s.anchor)


def _flip(flavor: str) -> str:
    return GT if flavor == GEQ else GEQ


def msub(s2: FinalSegment, s1: FinalSegment) -> FinalSegment:
    """Modified subtraction s2 (-) s1 = s2 + Delta(s1)."""
    _require_same_sig(s2, s1)
    return add(s2, delta(s1))


def cdiff(s2: FinalSegment, s1: FinalSegment) -> FinalSegment:
    """Classical cut difference s2 - s1^c = s2 + (-s1^c)."""
    _require_same_sig(s2, s1)
    return add(s2, neg_complement(s1))


def hat(s: FinalSegment) -> FinalSegment:
    """Topological closure: adjoin the infimum when it exists outside s."""
    if s.level == s.sig.n and s.flavor == GT:
        return seg(s.sig, s.level, GEQ, s.anchor)
    return s


def dhat(s: FinalSegment) -> FinalSegment:
    """Deep closure: close s / inv_group(s) in the quotient and pull back."""
    if s.flavor == GT:
        return seg(s.sig, s.level, GEQ, s.anchor)
    return s


def push_quotient(s: FinalSegment, k: int) -> FinalSegment:
    """Image of s in the quotient by H_k, over the prefix signature.

    For level <= k the triple survives unchanged; deeper segments collapse to
    the principal segment of the projected anchor.
    """
    n = s.sig.n
    if not 1 <= k <= n - 1:
        raise LevelOutOfRange(f"quotient level {k} not in [1, {n - 1}]")
    return _push(s, k)


def _push(s: FinalSegment, k: int) -> FinalSegment:
    if k == s.sig.n:
        return s
    prefix = s.sig.prefix(k)
    projected = GroupElement(prefix, s.anchor.coords[:k])
    if s.level <= k:
        return seg(prefix, s.level, s.flavor, projected)
    return seg(prefix, k, GEQ, projected)


def pull_quotient(sig: GroupSignature, s_bar: FinalSegment) -> FinalSegment:
    """Preimage in the full group of a segment over a prefix signature."""
    k = s_bar.sig.n
    if not 1 <= k <= sig.n - 1 or sig.prefix(k) != s_bar.sig:
        raise LevelOutOfRange(
            f"{s_bar.sig} is not a proper prefix of {sig}"
        )
    padded = tuple(s_bar.anchor.coords) + (Fraction(0),) * (sig.n - k)
    return seg(sig, s_bar.level, s_bar.flavor, GroupElement(sig, padded))


@dataclass(frozen=True)
class SolveOutcome:
    """Result of solving s1 + T = s2 over the canonical class.

    kind 'unique'      -- s1 is principal; `solution` is the only T.
    kind 'largest'     -- solvable; `solution` is the largest T.
    kind 'no_solution' -- unsolvable; `s2_prime` is the shrunken target and
                          `t_max` the largest T with s1 + t_max = s2_prime,
                          which is also the largest T with s1 + T inside s2.
    """

    kind: str
    solution: FinalSegment | None = None
    s2_prime: FinalSegment | None = None
    t_max: FinalSegment | None = None

    @property
    def solvable(self) -> bool:
        return self.kind != "no_solution"

    @property
    def best(self) -> FinalSegment:
        """The unique/largest solution, or t_max when there is none."""
        out = self.solution if self.solvable else self.t_max
        assert out is not None
        return out


def solve(s1: FinalSegment, s2: FinalSegment) -> SolveOutcome:
    """Solve s1 + T = s2, labeling uniqueness and handling unsolvable targets.

    Solvability depends only on the levels and flavors: with j1, j2 the levels
    and f1, f2 the flavors, a solution exists iff j1 >= j2 and not
    (j1 == j2 and f1 == 'gt' and f2 == 'geq').  When there is no solution, the
    target is shrunk to s2' = (anchor2 + H_j1)^+, which keeps the colon set:
    every T with s1 + T inside s2 satisfies s1 + T inside s2'.
    """
    _require_same_sig(s1, s2)
    sig = s1.sig
    if is_principal(s1):
        return SolveOutcome("unique", solution=add(s2, principal_seg(-s1.anchor)))
    j1, f1 = s1.level, s1.flavor
    j2, f2 = s2.level, s2.flavor
    if j1 >= j2 and not (j1 == j2 and f1 == GT and f2 == GEQ):
        if j1 > j2 or f1 == GEQ:
            t = seg(sig, j2, f2, s2.anchor - s1.anchor)
        else:  # j1 == j2, both flavors 'gt': deep-close the difference
            t = seg(sig, j2, GEQ, s2.anchor - s1.anchor)
        return SolveOutcome("largest", solution=t)
    s2_prime = seg(sig, j1, GT, s2.anchor)
    inner = solve(s1, s2_prime)
    assert inner.kind == "largest"
    return SolveOutcome("no_solution", s2_prime=s2_prime, t_max=inner.solution)


def ms(s2: FinalSegment, s1: FinalSegment) -> FinalSegment:
    """s2 (-.) s1: the largest T with s1 + T inside s2 (the colon of segments)."""
    return solve(s1, s2).best


@dataclass(frozen=True)
class CutView:
    """A segment paired with the complementary initial segment of its cut."""

    upper: FinalSegment

    @property
    def sig(self) -> GroupSignature:
        return self.upper.sig

    def lower_member(self, g: GroupElement) -> bool:
        return not member(self.upper, g)

    def lower_description(self) -> str:
        op = "<" if self.upper.flavor == GEQ else "<="
        return f"{{ x : pi_{self.upper.level}(x) {op} {self.upper.anchor} }}"

    def inv_group(self) -> ConvexSubgroup:
        """Shared invariance group of both cut sets."""
        return inv_group(self.upper)


def cut_view(s: FinalSegment) -> CutView:
    return CutView(upper=s)


def anchor_values(bound: int, denominators: Sequence[int]) -> list[Fraction]:
    """All rationals p/q with |p/q| <= bound and q among the given denominators."""
    vals = {
        Fraction(p, q)
        for q in denominators
        for p in range(-bound * q, bound * q + 1)
    }
    return sorted(vals)


def iter_segments(
    sig: GroupSignature,
    bound: int,
    denominators: Sequence[int] = (1,),
) -> Iterator[FinalSegment]:
    """Every canonical segment whose anchor coordinates lie in [-bound, bound].

    Z coordinates range over integers; Q coordinates additionally range over
    the fractions allowed by `denominators`.  For all-Z signatures this is the
    complete list of final segments with anchors in the box, since every final
    segment of a Z-lex product is element-definable.
    """
    rationals = anchor_values(bound, denominators)
    integers = [v for v in rationals if v.denominator == 1]
    for level in range(1, sig.n + 1):
        flavors = (GEQ, GT) if sig.factors[level - 1] == "Q" else (GEQ,)
        axis_values = [
            rationals if sig.factors[i] == "Q" else integers for i in range(level)
        ]
        for flavor in flavors:
            for prefix in itertools.product(*axis_values):
                coords = tuple(prefix) + (Fraction(0),) * (sig.n - level)
                yield FinalSegment(sig, level, flavor, GroupElement(sig, coords))
