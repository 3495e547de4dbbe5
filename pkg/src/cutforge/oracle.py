"""Definitional brute-force verification of segment operations on finite windows.

Every check recomputes an operation straight from its set-theoretic definition,
with quantifiers searched over a bounded window, and compares the outcome
pointwise against the symbolic engine.  The oracle side never calls the
symbolic arithmetic: it only evaluates membership of canonical triples, which
is a single lexicographic comparison.

Two modes:

* exhaustive -- all-Z signatures; the window is the full integer box
  [-radius, radius]^n and quantifier searches are genuinely exhaustive
  (vectorized as boolean convolutions).  Every final segment of a Z-lex
  product is canonical, so a pass is a complete model check at window scale.
* randomized -- signatures with a Q factor; test points are seeded rational
  samples (denominator-bounded) and quantifier searches run over structured
  near-boundary candidates plus random members.  Witness probes use strictly
  finer rational steps than any test point or anchor can produce, so a failed
  search reflects the set, not the sampling.

Existential witnesses range over the full box while asserted test points stay
inside the margin box; this shields box-edge artifacts of the truncated
quantifiers, and monotonicity of pass results under window growth is itself
checked in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import PointOutsideMargin
from .lexgroup import GroupElement, GroupSignature, iter_box, unit_vector, zero
from . import segcalc
from .segcalc import GEQ, GT, FinalSegment, member, iter_segments


@dataclass(frozen=True)
class WindowSpec:
    """Window and sampling parameters for oracle runs."""

    radius: int
    margin_factor: Fraction = Fraction(1, 2)
    sample_count: int = 2000
    seed: int = 0
    denominator_bound: int = 6

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise ValueError("radius must be >= 1")
        if not 0 < self.margin_factor <= 1:
            raise ValueError("margin factor must lie in (0, 1]")

    @property
    def margin_radius(self) -> int:
        return int(self.radius * self.margin_factor)


@dataclass
class Disagreement:
    """One point where oracle and symbolic result differ."""

    inputs: str
    point: str
    expected: str
    got: str

    def __str__(self) -> str:
        return f"{self.inputs} at {self.point}: expected {self.expected}, got {self.got}"


@dataclass
class AgreementReport:
    """Outcome of one operation's agreement run."""

    operation: str
    mode: str
    instance_count: int = 0
    point_count: int = 0
    failures: list[Disagreement] = dataclass_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "AgreementReport") -> "AgreementReport":
        assert self.operation == other.operation and self.mode == other.mode
        return AgreementReport(
            self.operation,
            self.mode,
            self.instance_count + other.instance_count,
            self.point_count + other.point_count,
            self.failures + other.failures,
        )

    def record(self, inputs: str, point: object, expected: object, got: object) -> None:
        if len(self.failures) < 10:
            self.failures.append(
                Disagreement(inputs, str(point), str(expected), str(got))
            )

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL({len(self.failures)})"
        return (
            f"[{status}] {self.operation} ({self.mode}): "
            f"{self.instance_count} instances, {self.point_count} points"
        )


def mode_for(sig: GroupSignature) -> str:
    return "exhaustive" if sig.is_all_int else "randomized"


def _in_margin(g: GroupElement, w: WindowSpec) -> bool:
    mm = w.margin_radius
    return all(abs(c) <= mm for c in g.coords)


def iter_margin_points(sig: GroupSignature, w: WindowSpec) -> Iterator[GroupElement]:
    yield from iter_box(sig, w.margin_radius)


# -- single-point definitional oracles -------------------------------------------


def oracle_sum_member(
    s1: FinalSegment, s2: FinalSegment, g: GroupElement, w: WindowSpec
) -> bool:
    """Whether g = s + t with s in s1, t in s2 and the witness s in the box."""
    if not _in_margin(g, w):
        raise PointOutsideMargin(f"{g} outside margin radius {w.margin_radius}")
    for s in iter_box(g.sig, w.radius):
        if member(s1, s) and member(s2, g - s):
            return True
    return False


def oracle_inv_shift(s: FinalSegment, gamma: GroupElement, w: WindowSpec) -> bool:
    """Whether s + gamma = s holds at every margin point."""
    for g in iter_margin_points(s.sig, w):
        if member(s, g) != member(s, g - gamma):
            return False
    return True


def oracle_ms_member(
    s1: FinalSegment, s2: FinalSegment, alpha: GroupElement, w: WindowSpec
) -> bool:
    """Whether alpha + s1 lands inside s2, for every box point of s1."""
    if not _in_margin(alpha, w):
        raise PointOutsideMargin(f"{alpha} outside margin radius {w.margin_radius}")
    for s in iter_box(alpha.sig, w.radius):
        if member(s1, s) and not member(s2, alpha + s):
            return False
    return True


def oracle_delta_member(s: FinalSegment, x: GroupElement, w: WindowSpec) -> bool:
    """Whether x >= -t for every box point t of s."""
    if not _in_margin(x, w):
        raise PointOutsideMargin(f"{x} outside margin radius {w.margin_radius}")
    for t in iter_box(x.sig, w.radius):
        if member(s, t) and x + t < zero(x.sig):
            return False
    return True


# -- exhaustive engine (all-Z windows, vectorized) --------------------------------


def _int_anchor(s: FinalSegment) -> list[int]:
    out = []
    for c in s.anchor.coords[: s.level]:
        assert c.denominator == 1, "exhaustive mode requires integer anchors"
        out.append(int(c))
    return out


def _axis(lo: int, size: int, axis: int, n: int) -> np.ndarray:
    return np.arange(lo, lo + size, dtype=np.int64).reshape(
        (1,) * axis + (-1,) + (1,) * (n - 1 - axis)
    )


def _member_mask(s: FinalSegment, lo: int, size: int) -> np.ndarray:
    """Boolean membership grid over the integer cube starting at lo (per axis)."""
    n = s.sig.n
    anchor = _int_anchor(s)
    shape = (size,) * n
    res = np.zeros(shape, dtype=bool)
    eq = np.ones(shape, dtype=bool)
    for a in range(s.level):
        ga = _axis(lo, size, a, n)
        res |= eq & (ga > anchor[a])
        eq &= ga == anchor[a]
    if s.flavor == GEQ:
        res |= eq
    return res


def _negative_mask(sig: GroupSignature, lo: int, size: int) -> np.ndarray:
    """{ y : y < 0 } over the cube."""
    return ~_member_mask(segcalc.zero_minus(sig), lo, size)


def _crop(mask: np.ndarray, lo: int, target_lo: int, target_size: int) -> np.ndarray:
    start = target_lo - lo
    idx = tuple(slice(start, start + target_size) for _ in range(mask.ndim))
    return mask[idx]


def _flat_offsets(radius: int, size: int, n: int) -> np.ndarray:
    """Integer points of the cube [-radius, radius]^n in row-major raveling
    order, as a (count, n) coordinate matrix."""
    axes = [np.arange(-radius, radius + 1)] * n
    grid = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grid], axis=1)


def _reflect(mask: np.ndarray) -> np.ndarray:
    return mask[(slice(None, None, -1),) * mask.ndim]


class _ExhaustiveEngine:
    """Shared membership grids and gather tables for one signature and window.

    The binary quantifier searches run as one float32 matrix product per
    operation: counts of witnesses are exact small integers, so thresholding
    at one half recovers the boolean quantifier.
    """

    def __init__(
        self, sig: GroupSignature, segments: Sequence[FinalSegment], w: WindowSpec
    ):
        assert sig.is_all_int
        self.sig = sig
        self.w = w
        self.segments = list(segments)
        self.n = sig.n
        m = w.radius
        self.m = m
        self.mm = w.margin_radius
        # membership of x - s for margin x and box s stays within m + mm
        self.big_r = m + self.mm
        self.box_size = 2 * m + 1
        self.big_size = 2 * self.big_r + 1
        self.margin_size = 2 * self.mm + 1
        self.box = [_member_mask(s, -m, self.box_size) for s in self.segments]
        self.big = [_member_mask(s, -self.big_r, self.big_size) for s in self.segments]
        self._margin_cache: dict[FinalSegment, np.ndarray] = {}
        self._delta_box: list[np.ndarray] | None = None
        self.box_pts = _flat_offsets(m, self.box_size, self.n)
        self.margin_pts = _flat_offsets(self.mm, self.margin_size, self.n)
        diff = self.margin_pts[:, None, :] - self.box_pts[None, :, :]
        self._idx_diff = self._ravel(diff + self.big_r, self.big_size)
        summed = self.margin_pts[:, None, :] + self.box_pts[None, :, :]
        self._idx_sum = self._ravel(summed + self.big_r, self.big_size)

    @staticmethod
    def _ravel(coords: np.ndarray, size: int) -> np.ndarray:
        n = coords.shape[-1]
        flat = np.zeros(coords.shape[:-1], dtype=np.int64)
        for a in range(n):
            flat = flat * size + coords[..., a]
        return flat

    def pair_table(self, lefts: Sequence[np.ndarray], mode: str) -> np.ndarray:
        """Quantifier table over all ordered pairs, computed by witness counting.

        mode 'exists_diff': t[i1, i2, x] iff some box point s with lefts[i1][s]
        has x - s inside segment i2 (membership exact, witness bounded).
        mode 'forall_sum': t[i1, i2, x] iff every box point s of lefts[i1]
        keeps x + s inside segment i2.
        """
        count = len(self.segments)
        l_flat = np.stack([m.ravel() for m in lefts]).astype(np.float32)
        points = len(self.margin_pts)
        cells = l_flat.shape[1]
        idx = self._idx_diff if mode == "exists_diff" else self._idx_sum
        out = np.empty((count, count, points), dtype=bool)
        big_flat = np.stack([b.ravel() for b in self.big])
        if mode == "forall_sum":
            big_flat = ~big_flat
        chunk = max(1, (1 << 25) // max(1, cells * points))
        for start in range(0, count, chunk):
            gathered = big_flat[start : start + chunk][:, idx].astype(np.float32)
            counts = l_flat @ gathered.reshape(-1, cells).T
            hits = counts.reshape(count, gathered.shape[0], points) > 0.5
            out[:, start : start + chunk, :] = ~hits if mode == "forall_sum" else hits
        return out

    def delta_box(self) -> list[np.ndarray]:
        """Oracle masks of Delta on the box: x passes iff no box point t of the
        segment has x + t < 0."""
        if self._delta_box is None:
            neg = _negative_mask(self.sig, -2 * self.m, 4 * self.m + 1)
            summed = self.box_pts[:, None, :] + self.box_pts[None, :, :]
            idx = self._ravel(summed + 2 * self.m, 4 * self.m + 1)
            neg_at = neg.ravel()[idx].astype(np.float32)  # (x, t)
            stack = np.stack([b.ravel() for b in self.box]).astype(np.float32)
            fails = stack @ neg_at.T > 0.5  # (segment, x)
            shape = (self.box_size,) * self.n
            self._delta_box = [(~row).reshape(shape) for row in fails]
        return self._delta_box

    def interior(self) -> np.ndarray:
        """Box cells whose truncated-quantifier values are rim-safe: a violating
        witness never needs coordinates beyond |x| + 1 or the anchor, so only
        the outermost shell of the box is unreliable."""
        mask = np.zeros((self.box_size,) * self.n, dtype=bool)
        mask[(slice(1, -1),) * self.n] = True
        return mask

    def margin_mask(self, s: FinalSegment) -> np.ndarray:
        cached = self._margin_cache.get(s)
        if cached is None:
            cached = _member_mask(s, -self.mm, self.margin_size)
            self._margin_cache[s] = cached
        return cached

    def crop_margin(self, mask: np.ndarray, lo: int) -> np.ndarray:
        return _crop(mask, lo, -self.mm, self.margin_size)

    def window_slice(self, i: int, shift: Sequence[int]) -> np.ndarray:
        """Margin-sized window of the big mask, displaced by -shift (membership
        of x - shift for x in the margin box)."""
        start = [(-self.mm - s) + self.big_r for s in shift]
        idx = tuple(slice(st, st + self.margin_size) for st in start)
        return self.big[i][idx]


def _compare_masks(
    report: AgreementReport,
    inputs: str,
    oracle_mask: np.ndarray,
    expected_mask: np.ndarray,
    lo: int,
) -> None:
    report.point_count += int(oracle_mask.size)
    if bool(np.array_equal(oracle_mask, expected_mask)):
        return
    for raw in np.argwhere(oracle_mask != expected_mask)[:3]:
        point = [int(v) + lo for v in raw]
        report.record(
            inputs, point, bool(expected_mask[tuple(raw)]), bool(oracle_mask[tuple(raw)])
        )


# -- randomized engine (signatures with Q factors) ---------------------------------
#
# Step tiers: structured test points use the coarsest rational steps, oracle
# probes (the outer quantifier of a two-stage check) a finer tier, and witness
# candidates (inner quantifiers) the finest.  Every boundary gap a coarser
# tier can produce strictly exceeds the next tier's smallest step, so a failed
# search reflects the set and not the sampling.  Tail depths tier the same
# way (witness tails reach 4*radius, probe tails 2*radius) and all asserted
# test points are clamped into the margin box, which the deep tails dominate.


def _rng_for(w: WindowSpec, index: int) -> random.Random:
    return random.Random(w.seed * 1_000_003 + index)


def _point_steps(w: WindowSpec) -> list[Fraction]:
    db = w.denominator_bound
    return [Fraction(1), Fraction(1, 2), Fraction(1, db), Fraction(1, 2 * db * db)]


def _probe_steps(w: WindowSpec) -> list[Fraction]:
    db = w.denominator_bound
    return _point_steps(w) + [Fraction(1, 8 * db**3)]


def _witness_steps(w: WindowSpec) -> list[Fraction]:
    db = w.denominator_bound
    return _probe_steps(w) + [Fraction(1, 104 * db**4)]


_TIER_STEPS = {"point": _point_steps, "probe": _probe_steps, "witness": _witness_steps}


def sample_point(
    sig: GroupSignature, rng: random.Random, w: WindowSpec, margin: bool = True
) -> GroupElement:
    radius = w.margin_radius if margin else w.radius
    coords = []
    for kind in sig.factors:
        if kind == "Z":
            coords.append(Fraction(rng.randint(-radius, radius)))
        else:
            q = rng.randint(1, w.denominator_bound)
            coords.append(Fraction(rng.randint(-radius * q, radius * q), q))
    return GroupElement(sig, tuple(coords))


def _step_at(sig: GroupSignature, j: int, step: Fraction) -> GroupElement:
    coords = [Fraction(0)] * sig.n
    coords[j - 1] = step if sig.factors[j - 1] == "Q" else Fraction(max(1, int(step)))
    return GroupElement(sig, tuple(coords))


def _clamp_margin(g: GroupElement, w: WindowSpec) -> GroupElement:
    """Pull a point into the margin box, preserving exactness."""
    mm = Fraction(w.margin_radius)
    coords = []
    for kind, c in zip(g.sig.factors, g.coords):
        c = min(max(c, -mm), mm)
        if kind == "Z":
            c = Fraction(int(c))
        coords.append(c)
    return GroupElement(g.sig, tuple(coords))


class _RandomContext:
    """Cached candidate sets for one randomized agreement run."""

    def __init__(self, w: WindowSpec):
        self.w = w
        self._near: dict[tuple[FinalSegment, str], list[GroupElement]] = {}
        self._rand: dict[FinalSegment, list[GroupElement]] = {}
        self._ids: dict[FinalSegment, int] = {}

    def seg_id(self, s: FinalSegment) -> int:
        """Stable per-run identifier (hash() of str fields varies across runs)."""
        return self._ids.setdefault(s, len(self._ids))

    def near_inf(self, s: FinalSegment, tier: str) -> list[GroupElement]:
        """Members of s approaching its lower edge, at the tier's granularity.

        Witness-tier tails reach twice as deep as probe-tier ones, so an inner
        quantifier can always undercut the tails an outer stage produced.
        """
        key = (s, tier)
        cached = self._near.get(key)
        if cached is not None:
            return cached
        sig, j = s.sig, s.level
        deep = (4 if tier == "witness" else 2) * self.w.radius
        out: list[GroupElement] = []

        def emit(prefix: Sequence[Fraction]) -> None:
            for tail_value in (0, -deep):
                tail = (Fraction(tail_value),) * (sig.n - j)
                g = GroupElement(sig, tuple(prefix) + tail)
                if member(s, g):
                    out.append(g)

        base = s.anchor.coords[:j]
        emit(base)
        for step in _TIER_STEPS[tier](self.w):
            bump = step if sig.factors[j - 1] == "Q" else Fraction(1)
            emit(base[:-1] + (base[-1] + bump,))
        self._near[key] = out
        return out

    def random_members(self, s: FinalSegment, index: int, k: int = 8) -> list[GroupElement]:
        cached = self._rand.get(s)
        if cached is not None:
            return cached
        rng = _rng_for(self.w, index * 7919 + 13)
        out = []
        for _ in range(4 * k):
            g = sample_point(s.sig, rng, self.w, margin=False)
            if member(s, g):
                out.append(g)
                if len(out) >= k:
                    break
        self._rand[s] = out
        return out

    def witnesses(self, s: FinalSegment, index: int, tier: str) -> list[GroupElement]:
        return self.near_inf(s, tier) + self.random_members(s, index)

    def test_points(
        self,
        sig: GroupSignature,
        rng: random.Random,
        count: int,
        around: Iterable[GroupElement] = (),
    ) -> list[GroupElement]:
        """Margin samples plus straddles of boundary-relevant points, clamped."""
        pts = [sample_point(sig, rng, self.w, margin=True) for _ in range(count)]
        small = _point_steps(self.w)[-1]
        for g in around:
            pts.append(g)
            for j in range(1, sig.n + 1):
                pts.append(g + _step_at(sig, j, small))
                pts.append(g - _step_at(sig, j, small))
        return [_clamp_margin(p, self.w) for p in pts]


def _holds_delta(s: FinalSegment, x: GroupElement, cands: Sequence[GroupElement]) -> bool:
    z = zero(x.sig)
    return all(x + c >= z for c in cands)


def _is_window_infimum(
    x: GroupElement,
    cands: Sequence[GroupElement],
    w: WindowSpec,
    level: int | None = None,
) -> bool:
    """Whether x acts as the (coset-)infimum of the candidate member set:
    a lower bound that no probe-step raise keeps a lower bound."""
    sig = x.sig
    upto = sig.n if level is None else level
    proj = lambda g: g.coords[:upto]

    def is_lb(y: GroupElement) -> bool:
        return all(proj(y) <= proj(c) for c in cands)

    if not is_lb(x):
        return False
    for a in range(1, upto + 1):
        for step in _probe_steps(w):
            if is_lb(x + _step_at(sig, a, step)):
                return False
    return True


# -- agreement checks ---------------------------------------------------------------

UNARY_OPS = ("delta", "neg_complement", "hat", "dhat", "inv_group", "push", "pull")
BINARY_OPS = ("add", "msub", "cdiff", "ms", "solve")
ALL_OPS = BINARY_OPS + UNARY_OPS


def default_instances(
    op_id: str,
    sig: GroupSignature,
    anchor_bound: int,
    denominators: Sequence[int] = (1,),
) -> list:
    segs = list(iter_segments(sig, anchor_bound, denominators))
    if op_id in BINARY_OPS:
        return [(a, b) for a in segs for b in segs]
    return segs


def check_agreement(op_id: str, instances: Sequence, w: WindowSpec) -> AgreementReport:
    """Recompute op_id definitionally on each instance and compare memberships.

    Mode is chosen from the signature; identical seeds yield identical reports.
    """
    if not instances:
        raise ValueError("no instances supplied")
    first = instances[0]
    sig = (first[0] if isinstance(first, tuple) else first).sig
    if mode_for(sig) == "exhaustive":
        return _check_exhaustive(op_id, sig, instances, w)
    return _check_randomized(op_id, sig, instances, w)


def _segments_of(instances: Sequence) -> list[FinalSegment]:
    seen: dict[FinalSegment, None] = {}
    for inst in instances:
        for s in inst if isinstance(inst, tuple) else (inst,):
            seen.setdefault(s, None)
    return list(seen)


def _check_exhaustive(
    op_id: str, sig: GroupSignature, instances: Sequence, w: WindowSpec
) -> AgreementReport:
    report = AgreementReport(op_id, "exhaustive")
    segs = _segments_of(instances)
    engine = _ExhaustiveEngine(sig, segs, w)
    index = {s: i for i, s in enumerate(segs)}
    mm = engine.mm
    if op_id in ("add", "msub", "cdiff", "ms"):
        _exhaustive_pairs(op_id, engine, index, instances, report)
    elif op_id == "solve":
        for s1, s2 in instances:
            report.instance_count += 1
            _check_solve_instance(s1, s2, report)
    elif op_id == "delta":
        deltas = engine.delta_box()
        for s in segs:
            report.instance_count += 1
            got = engine.crop_margin(deltas[index[s]], -engine.m)
            _compare_masks(report, f"delta({s})", got, engine.margin_mask(segcalc.delta(s)), -mm)
    elif op_id == "neg_complement":
        for s in segs:
            report.instance_count += 1
            got = ~_reflect(engine.margin_mask(s))
            _compare_masks(
                report, f"neg_complement({s})", got,
                engine.margin_mask(segcalc.neg_complement(s)), -mm,
            )
    elif op_id == "hat":
        for s in segs:
            report.instance_count += 1
            got = _exhaustive_hat_mask(engine, index[s])
            _compare_masks(report, f"hat({s})", got, engine.margin_mask(segcalc.hat(s)), -mm)
    elif op_id == "dhat":
        for s in segs:
            report.instance_count += 1
            got = _exhaustive_dhat_mask(engine, index[s])
            _compare_masks(report, f"dhat({s})", got, engine.margin_mask(segcalc.dhat(s)), -mm)
    elif op_id == "inv_group":
        for s in segs:
            report.instance_count += 1
            _exhaustive_inv_check(engine, s, index[s], report)
    elif op_id == "push":
        for s in segs:
            for k in range(1, sig.n):
                report.instance_count += 1
                image = engine.box[index[s]].any(axis=tuple(range(k, sig.n)))
                got = _crop(image, -engine.m, -mm, engine.margin_size)
                pushed = segcalc.push_quotient(s, k)
                _compare_masks(
                    report, f"push({s}, {k})", got,
                    _member_mask(pushed, -mm, engine.margin_size), -mm,
                )
    elif op_id == "pull":
        for s in segs:
            for k in range(s.level, sig.n):
                report.instance_count += 1
                prefix = sig.prefix(k)
                s_pref = segcalc.seg(
                    prefix, s.level, s.flavor, GroupElement(prefix, s.anchor.coords[:k])
                )
                pulled = segcalc.pull_quotient(sig, s_pref)
                pref_mask = _member_mask(s_pref, -mm, engine.margin_size)
                got = np.broadcast_to(
                    pref_mask.reshape(pref_mask.shape + (1,) * (sig.n - k)),
                    (engine.margin_size,) * sig.n,
                )
                _compare_masks(
                    report, f"pull({s_pref})", got, engine.margin_mask(pulled), -mm
                )
    else:
        raise ValueError(f"unknown operation {op_id!r}")
    return report


def _exhaustive_pairs(
    op_id: str,
    engine: _ExhaustiveEngine,
    index: dict[FinalSegment, int],
    instances: Sequence,
    report: AgreementReport,
) -> None:
    if op_id == "add":
        lefts = engine.box
        mode = "exists_diff"
        symbolic = segcalc.add
    elif op_id == "msub":
        interior = engine.interior()
        lefts = [d & interior for d in engine.delta_box()]
        mode = "exists_diff"
        symbolic = lambda s1, s2: segcalc.msub(s2, s1)
    elif op_id == "cdiff":
        lefts = [~_reflect(b) for b in engine.box]
        mode = "exists_diff"
        symbolic = lambda s1, s2: segcalc.cdiff(s2, s1)
    else:  # ms
        lefts = engine.box
        mode = "forall_sum"
        symbolic = lambda s1, s2: segcalc.ms(s2, s1)
    table = engine.pair_table(lefts, mode)
    for s1, s2 in instances:
        report.instance_count += 1
        got = table[index[s1], index[s2]]
        expected = engine.margin_mask(symbolic(s1, s2)).ravel()
        report.point_count += int(got.size)
        if not bool(np.array_equal(got, expected)):
            for k in np.flatnonzero(got != expected)[:3]:
                point = [int(v) for v in engine.margin_pts[k]]
                report.record(
                    f"{op_id}[s1={s1}, s2={s2}]", point,
                    bool(expected[k]), bool(got[k]),
                )


def _exhaustive_hat_mask(engine: _ExhaustiveEngine, i: int) -> np.ndarray:
    """Members on the margin, plus the window infimum when it lies inside it.

    The order is total, so the greatest lower bound of the windowed member set
    is its lexicographic minimum; box-edge minima fall outside the margin and
    are cropped away.
    """
    margin = engine.crop_margin(engine.box[i], -engine.m).copy()
    pts = np.argwhere(engine.box[i]) - engine.m
    if pts.size:
        lexmin = pts[np.lexsort(pts.T[::-1])[0]]
        if all(abs(int(v)) <= engine.mm for v in lexmin):
            margin[tuple(int(v) + engine.mm for v in lexmin)] = True
    return margin


def _exhaustive_dhat_mask(engine: _ExhaustiveEngine, i: int) -> np.ndarray:
    """Members on the margin, plus the full coset of the quotient-window infimum."""
    level = _exhaustive_level(engine, i)
    margin = engine.crop_margin(engine.box[i], -engine.m).copy()
    pts = np.argwhere(engine.box[i]) - engine.m
    if pts.size and level > 0:
        prefixes = pts[:, :level]
        lexmin = prefixes[np.lexsort(prefixes.T[::-1])[0]]
        if all(abs(int(v)) <= engine.mm for v in lexmin):
            grid = np.indices((engine.margin_size,) * engine.n) - engine.mm
            match = np.ones((engine.margin_size,) * engine.n, dtype=bool)
            for a in range(level):
                match &= grid[a] == int(lexmin[a])
            margin |= match
    return margin


def _exhaustive_level(engine: _ExhaustiveEngine, i: int) -> int:
    """Largest coordinate whose unit shift moves the segment on the window."""
    ref = engine.window_slice(i, [0] * engine.n)
    for k in range(engine.n, 0, -1):
        shift = [0] * engine.n
        shift[k - 1] = 1
        if not np.array_equal(engine.window_slice(i, shift), ref):
            return k
    return 0


def _exhaustive_inv_check(
    engine: _ExhaustiveEngine, s: FinalSegment, i: int, report: AgreementReport
) -> None:
    """Full box sweep: window shift-invariance against H_level membership.

    The window starting at index t along each axis holds membership of x - gamma
    for margin points x, with gamma = m - t, so one sliding-window comparison
    covers every shift in the box at once.
    """
    n, m = engine.n, engine.m
    ref = engine.window_slice(i, [0] * n)
    windows = np.lib.stride_tricks.sliding_window_view(
        engine.big[i], (engine.margin_size,) * n
    )
    invariant = (windows == ref).all(axis=tuple(range(n, 2 * n)))
    expected = np.ones((2 * m + 1,) * n, dtype=bool)
    for a in range(s.level):
        t_axis = _axis(0, 2 * m + 1, a, n)
        expected &= t_axis == m
    report.point_count += int(invariant.size)
    for raw in np.argwhere(invariant != expected)[:3]:
        gamma = [m - int(t) for t in raw]
        report.record(
            f"inv_group({s})", gamma,
            bool(expected[tuple(raw)]), bool(invariant[tuple(raw)]),
        )


def _check_solve_instance(
    s1: FinalSegment, s2: FinalSegment, report: AgreementReport
) -> None:
    """Trichotomy label, exactness, and no-solution postconditions for one pair."""
    out = segcalc.solve(s1, s2)
    inputs = f"solve({s1}, {s2})"
    solvable = s1.level >= s2.level and not (
        s1.level == s2.level and s1.flavor == GT and s2.flavor == GEQ
    )
    expected_kind = (
        "unique"
        if segcalc.is_principal(s1)
        else ("largest" if solvable else "no_solution")
    )
    report.point_count += 1
    if out.kind != expected_kind:
        report.record(inputs, "label", expected_kind, out.kind)
        return
    if out.solvable:
        reached = segcalc.add(s1, out.best)
        if reached != s2:
            report.record(inputs, "s1 + T", str(s2), str(reached))
    else:
        assert out.s2_prime is not None and out.t_max is not None
        reached = segcalc.add(s1, out.t_max)
        if reached != out.s2_prime:
            report.record(inputs, "s1 + t_max", str(out.s2_prime), str(reached))
        if not (segcalc.subset(out.s2_prime, s2) and out.s2_prime != s2):
            report.record(inputs, "s2_prime strictly inside s2", True, False)
        if segcalc.ms(s2, s1) != segcalc.ms(out.s2_prime, s1):
            report.record(inputs, "colon invariance", True, False)


def _check_randomized(
    op_id: str, sig: GroupSignature, instances: Sequence, w: WindowSpec
) -> AgreementReport:
    report = AgreementReport(op_id, "randomized")
    ctx = _RandomContext(w)
    per_instance = max(4, w.sample_count // max(1, len(instances)))
    for idx, inst in enumerate(instances):
        rng = _rng_for(w, idx)
        report.instance_count += 1
        if op_id == "solve":
            _check_solve_instance(inst[0], inst[1], report)
        elif op_id in ("add", "msub", "cdiff", "ms"):
            _randomized_binary(op_id, inst[0], inst[1], ctx, rng, per_instance, report)
        else:
            _randomized_unary(op_id, inst, ctx, rng, per_instance, report)
        if len(report.failures) >= 10:
            break
    return report


def _randomized_binary(
    op_id: str,
    s1: FinalSegment,
    s2: FinalSegment,
    ctx: _RandomContext,
    rng: random.Random,
    count: int,
    report: AgreementReport,
) -> None:
    sig = s1.sig
    inputs = f"{op_id}[s1={s1}, s2={s2}]"
    wit1 = ctx.witnesses(s1, ctx.seg_id(s1), "witness")
    wit2 = ctx.witnesses(s2, ctx.seg_id(s2), "witness")
    low1, low2 = ctx.near_inf(s1, "point")[:3], ctx.near_inf(s2, "point")[:3]
    if op_id == "ms":
        around = [b - a for a in low1 for b in low2]
    else:
        around = [a + b for a in low1 for b in low2]
    pts = ctx.test_points(sig, rng, count, around)
    if op_id == "add":
        result = segcalc.add(s1, s2)
        oracle = lambda x: any(member(s2, x - c) for c in wit1) or any(
            member(s1, x - c) for c in wit2
        )
    elif op_id == "msub":
        # outer existential at probe tier, inner universal at witness tier
        probe2 = ctx.witnesses(s2, ctx.seg_id(s2), "probe")
        result = segcalc.msub(s2, s1)
        oracle = lambda x: any(_holds_delta(s1, x - c2, wit1) for c2 in probe2)
    elif op_id == "cdiff":
        result = segcalc.cdiff(s2, s1)
        oracle = lambda x: any(not member(s1, -(x - c2)) for c2 in wit2)
    else:  # ms
        result = segcalc.ms(s2, s1)
        oracle = lambda x: all(member(s2, x + c) for c in wit1)
    for x in pts:
        report.point_count += 1
        got = oracle(x)
        expected = member(result, x)
        if expected != got:
            report.record(inputs, x, expected, got)
            if len(report.failures) >= 10:
                return


def _randomized_unary(
    op_id: str,
    s: FinalSegment,
    ctx: _RandomContext,
    rng: random.Random,
    count: int,
    report: AgreementReport,
) -> None:
    sig = s.sig
    w = ctx.w
    inputs = f"{op_id}({s})"
    cands = ctx.witnesses(s, ctx.seg_id(s), "witness")
    low = ctx.near_inf(s, "point")[:3]
    around = [-c for c in low] + low + [s.anchor, -s.anchor]
    pts = ctx.test_points(sig, rng, count, around)
    if op_id == "delta":
        result = segcalc.delta(s)
        for x in pts:
            report.point_count += 1
            got = _holds_delta(s, x, cands)
            if member(result, x) != got:
                report.record(inputs, x, member(result, x), got)
    elif op_id == "neg_complement":
        result = segcalc.neg_complement(s)
        for x in pts:
            report.point_count += 1
            got = not member(s, -x)
            if member(result, x) != got:
                report.record(inputs, x, member(result, x), got)
    elif op_id == "hat":
        result = segcalc.hat(s)
        for x in pts:
            report.point_count += 1
            got = member(s, x) or _is_window_infimum(x, cands, w)
            if member(result, x) != got:
                report.record(inputs, x, member(result, x), got)
    elif op_id == "dhat":
        result = segcalc.dhat(s)
        level = _randomized_level(s, cands, pts)
        for x in pts:
            report.point_count += 1
            got = member(s, x) or _is_window_infimum(x, cands, w, level)
            if member(result, x) != got:
                report.record(inputs, x, member(result, x), got)
    elif op_id == "inv_group":
        level = s.level
        gammas = [sample_point(sig, rng, w) for _ in range(max(4, count // 4))]
        for j in range(1, sig.n + 1):
            gammas.append(_step_at(sig, j, Fraction(1)))
            gammas.append(_step_at(sig, j, _witness_steps(w)[-1]))
        for gamma in gammas:
            report.point_count += 1
            tests = pts + [c + gamma for c in cands[:4]] + [s.anchor + gamma]
            invariant = all(member(s, x) == member(s, x - gamma) for x in tests)
            expected = all(c == 0 for c in gamma.coords[:level])
            if invariant != expected:
                report.record(inputs, gamma, expected, invariant)
    elif op_id == "push":
        deep = 2 * w.radius
        for k in range(1, sig.n):
            pushed = segcalc.push_quotient(s, k)
            for x in pts:
                report.point_count += 1
                xb = GroupElement(sig.prefix(k), x.coords[:k])
                got = any(
                    member(s, GroupElement(sig, tuple(xb.coords) + tail))
                    for tail in _push_tails(s, k, deep, w)
                )
                expected = member(pushed, xb)
                if expected != got:
                    report.record(f"push({s}, {k})", xb, expected, got)
    elif op_id == "pull":
        for k in range(s.level, sig.n):
            prefix = sig.prefix(k)
            s_pref = segcalc.seg(
                prefix, s.level, s.flavor, GroupElement(prefix, s.anchor.coords[:k])
            )
            pulled = segcalc.pull_quotient(sig, s_pref)
            for x in pts:
                report.point_count += 1
                got = member(s_pref, GroupElement(prefix, x.coords[:k]))
                expected = member(pulled, x)
                if expected != got:
                    report.record(f"pull({s_pref})", x, expected, got)
    else:
        raise ValueError(f"unknown operation {op_id!r}")


def _push_tails(
    s: FinalSegment, k: int, deep: int, w: WindowSpec
) -> list[tuple[Fraction, ...]]:
    """Candidate tail completions witnessing membership of a projected point."""
    sig = s.sig
    n = sig.n

    def fix(coords: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(int(c)) if sig.factors[k + i] == "Z" else c
            for i, c in enumerate(coords)
        )

    anchor_tail = list(s.anchor.coords[k:])
    variants = [
        fix(anchor_tail),
        fix([Fraction(0)] * (n - k)),
        fix([Fraction(deep)] * (n - k)),
        fix([Fraction(-deep)] * (n - k)),
    ]
    if s.level > k:
        idx = s.level - k - 1
        for step in _witness_steps(w):
            bump = step if sig.factors[s.level - 1] == "Q" else Fraction(1)
            coords = list(anchor_tail)
            coords[idx] += bump
            for rest in range(idx + 1, n - k):
                coords[rest] = Fraction(-deep)
            variants.append(fix(coords))
    return variants


def _randomized_level(
    s: FinalSegment, cands: Sequence[GroupElement], pts: Sequence[GroupElement]
) -> int:
    tests = list(pts[:24]) + list(cands[:6]) + [s.anchor]
    for k in range(s.sig.n, 0, -1):
        e = unit_vector(s.sig, k)
        if any(member(s, x) != member(s, x - e) for x in tests):
            return k
    return 0


# -- suite runner --------------------------------------------------------------------


def run_seg_suite(
    sig: GroupSignature,
    anchor_bound: int,
    w: WindowSpec,
    ops: Sequence[str] | None = None,
    denominators: Sequence[int] = (1,),
) -> list[AgreementReport]:
    """Agreement reports for every core operation over the bounded enumeration.

    Exhaustive mode covers every ordered pair.  Randomized mode keeps the
    diagonal pairs and a seeded sample of the rest, bounded by the sample
    budget, so dense-signature runs stay within the configured work.
    """
    chosen = list(ops) if ops is not None else list(ALL_OPS)
    randomized = mode_for(sig) == "randomized"
    cap = max(200, w.sample_count // 4)
    reports = []
    for op in chosen:
        if op in ("push", "pull") and sig.n == 1:
            continue
        instances = default_instances(op, sig, anchor_bound, denominators)
        if randomized and op in BINARY_OPS and op != "solve" and len(instances) > cap:
            segs = list(iter_segments(sig, anchor_bound, denominators))
            keep = [(s, s) for s in segs]
            rng = random.Random(w.seed * 31 + 5)
            keep += rng.sample(instances, cap)
            instances = keep
        reports.append(check_agreement(op, instances, w))
    return reports
