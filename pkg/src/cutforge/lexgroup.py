"""Exact arithmetic and order for lexicographic products of Z and Q factors.

A signature fixes a product A1 x ... x An with each factor the integers or the
rationals, ordered lexicographically with the first coordinate most
significant.  Elements carry exact rational coordinates; there is no floating
point anywhere in this package.  The standard convex subgroups
H_j = {g : g1 = ... = gj = 0} are the only convex subgroups of such a product,
so they are represented by their level j alone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    ArityMismatch,
    LevelOutOfRange,
    NonIntegerInIntFactor,
    SignatureMismatch,
)

RationalLike = Union[Fraction, int, str]

_SIG_POWER = re.compile(r"^([ZQ])\^(\d+)$")


def to_fraction(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class GroupSignature:
    """A lexicographic product, one factor kind ('Z' or 'Q') per coordinate."""

    factors: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.factors) < 1:
            raise ArityMismatch("a signature needs at least one factor")
        for f in self.factors:
            if f not in ("Z", "Q"):
                raise ArityMismatch(f"unknown factor kind {f!r}")

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def is_discrete(self) -> bool:
        """Discretely ordered iff the last (least significant) factor is Z."""
        return self.factors[-1] == "Z"

    @property
    def is_all_int(self) -> bool:
        return all(f == "Z" for f in self.factors)

    def prefix(self, k: int) -> "GroupSignature":
        """The quotient-by-H_k signature A1 x ... x Ak."""
        if not 1 <= k <= self.n:
            raise LevelOutOfRange(f"prefix length {k} not in [1, {self.n}]")
        return GroupSignature(self.factors[:k])

    @classmethod
    def parse(cls, text: str) -> "GroupSignature":
        """Parse 'Z,Q,Z', '(Z,Q,Z)' or 'Z^3'."""
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1].strip()
        m = _SIG_POWER.match(s)
        if m:
            kind, power = m.group(1), int(m.group(2))
            if power < 1:
                raise ArityMismatch("signature power must be >= 1")
            return cls((kind,) * power)
        parts = [p.strip() for p in s.split(",")]
        if any(p not in ("Z", "Q") for p in parts):
            raise ArityMismatch(f"cannot parse signature {text!r}")
        return cls(tuple(parts))

    def __str__(self) -> str:
        return ",".join(self.factors)


@dataclass(frozen=True)
class GroupElement:
    """An element of a lexicographic product, with exact coordinates."""

    sig: GroupSignature
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.sig.n:
            raise ArityMismatch(
                f"{len(self.coords)} coordinates for a rank-{self.sig.n} signature"
            )
        for kind, c in zip(self.sig.factors, self.coords):
            if kind == "Z" and c.denominator != 1:
                raise NonIntegerInIntFactor(f"coordinate {c} in a Z factor")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        _require_same_sig(self.sig, other.sig)
        return GroupElement(self.sig, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.sig, tuple(-a for a in self.coords))

    def __lt__(self, other: "GroupElement") -> bool:
        return cmp_lex(self, other) < 0

    def __le__(self, other: "GroupElement") -> bool:
        return cmp_lex(self, other) <= 0

    def __gt__(self, other: "GroupElement") -> bool:
        return cmp_lex(self, other) > 0

    def __ge__(self, other: "GroupElement") -> bool:
        return cmp_lex(self, other) >= 0

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def scale(self, k: int) -> "GroupElement":
        return GroupElement(self.sig, tuple(k * c for c in self.coords))

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coords) + "]"


def _require_same_sig(a: GroupSignature, b: GroupSignature) -> None:
    if a != b:
        raise SignatureMismatch(f"{a} vs {b}")


def elem(sig: GroupSignature, coords: Iterable[RationalLike]) -> GroupElement:
    """Build a validated element from any exact-rational coordinate list."""
    return GroupElement(sig, tuple(to_fraction(c) for c in coords))


def zero(sig: GroupSignature) -> GroupElement:
    return GroupElement(sig, (Fraction(0),) * sig.n)


def unit_vector(sig: GroupSignature, j: int) -> GroupElement:
    """The element with 1 at position j (1-based) and 0 elsewhere."""
    if not 1 <= j <= sig.n:
        raise LevelOutOfRange(f"position {j} not in [1, {sig.n}]")
    coords = [Fraction(0)] * sig.n
    coords[j - 1] = Fraction(1)
    return GroupElement(sig, tuple(coords))


def add_elem(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def neg_elem(a: GroupElement) -> GroupElement:
    return -a


def cmp_lex(a: GroupElement, b: GroupElement) -> int:
    """-1, 0, or 1; the first differing coordinate decides."""
    _require_same_sig(a.sig, b.sig)
    for x, y in zip(a.coords, b.coords):
        if x < y:
            return -1
        if x > y:
            return 1
    return 0


def is_discrete(sig: GroupSignature) -> bool:
    return sig.is_discrete


def smallest_positive(sig: GroupSignature) -> GroupElement | None:
    """(0,...,0,1) when the order is discrete, None when it is dense."""
    if not sig.is_discrete:
        return None
    return unit_vector(sig, sig.n)


def project(g: GroupElement, j: int) -> GroupElement:
    """The image of g in the quotient by H_j, realized as the first j coordinates.

    j = 0 is allowed and yields the empty vector of the trivial group.
    """
    if not 0 <= j <= g.sig.n:
        raise LevelOutOfRange(f"level {j} not in [0, {g.sig.n}]")
    if j == g.sig.n:
        return g
    if j == 0:
        return GroupElement(_TRIVIAL, ())
    return GroupElement(g.sig.prefix(j), g.coords[:j])


class _TrivialSignature(GroupSignature):
    """Rank-zero signature backing project(g, 0); not constructible elsewhere."""

    def __post_init__(self) -> None:  # empty factor tuple is allowed here only
        pass


_TRIVIAL = _TrivialSignature(())


@dataclass(frozen=True)
class ConvexSubgroup:
    """The standard convex subgroup H_j = {g : g1 = ... = gj = 0}.

    Level 0 is the whole group, level n the trivial subgroup, and
    H_j subseteq H_k holds exactly when j >= k.
    """

    sig: GroupSignature
    level: int

    def __post_init__(self) -> None:
        if not 0 <= self.level <= self.sig.n:
            raise LevelOutOfRange(f"level {self.level} not in [0, {self.sig.n}]")

    def contains(self, g: GroupElement) -> bool:
        _require_same_sig(self.sig, g.sig)
        return all(c == 0 for c in g.coords[: self.level])

    def contains_subgroup(self, other: "ConvexSubgroup") -> bool:
        _require_same_sig(self.sig, other.sig)
        return other.level >= self.level

    def __str__(self) -> str:
        return f"H({self.level})"


def convex_subgroup(sig: GroupSignature, level: int) -> ConvexSubgroup:
    return ConvexSubgroup(sig, level)


def iter_box(sig: GroupSignature, radius: int) -> Iterator[GroupElement]:
    """All integer-grid points of the box [-radius, radius]^n.

    Exhausts the group window only for all-Z signatures; for Q factors it is a
    sub-grid and the oracle uses rational sampling instead.
    """
    def rec(i: int, acc: list[Fraction]) -> Iterator[GroupElement]:
        if i == sig.n:
            yield GroupElement(sig, tuple(acc))
            return
        for v in range(-radius, radius + 1):
            acc.append(Fraction(v))
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def parse_element(sig: GroupSignature, text: str) -> GroupElement:
    """Parse the element text form '[1, -5/2, 3]'."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ArityMismatch(f"cannot parse element {text!r}")
    body = s[1:-1].strip()
    parts: Sequence[str] = [p.strip() for p in body.split(",")] if body else []
    return elem(sig, parts)
