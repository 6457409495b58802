#!/usr/bin/env python3
"""
Cantor-type sets realising prescribed exponents

Given exponents (v, v̂), a truncation order N and a target x₀, a schedule of
stages k = 1, 2, … fixes where the digits of a point x copy the expansion of
x₀. The layout of stage k is

    free block  ·  0^N 1 0^N  ·  ε₁…ε_{p_k}  ·  0^N 1 0^N  ·  t_k × (free block of p_k, 0^N 1 0^N)

where the second marker ends at h_k and the last repeat ends at q_k. Every
free block is a word of Σ_{β_N}, chosen independently. The measure μ spreads
mass uniformly over the free blocks, so masses are exact rationals built from
admissible-word counts under β_N.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from admissibility import FollowerAutomaton, automaton, cylinder, is_admissible
from beta_core import BetaParam, DigitStream, expand, solve_beta_n
from config import DEFAULT_SEED, FREE_FILL_POLICIES
from errors import (
    CapExceeded,
    DepthTooSmall,
    DomainError,
    EmptyRegime,
    InconsistentPrefix,
    VerificationFailed,
)
from models import CantorSpecFile, DigitWord, MeasureNode, ScheduleEntry, Segment, SegmentKind
from numerics import Enclosure, parse_number

logger = logging.getLogger(__name__)

Rational = Union[Fraction, int, str]


def exponent_pair(v: Rational, vhat: Rational) -> tuple[Fraction, Fraction]:
    """(v, v̂) as exact fractions; EmptyRegime when v < v̂/(1−v̂)."""
    v, vhat = Fraction(v), Fraction(vhat)
    if v <= 0:
        raise DomainError(f"v must be positive, got {v}")
    if not 0 < vhat < 1:
        raise DomainError(f"v̂ must lie in (0, 1), got {vhat}")
    if v * (1 - vhat) < vhat:
        raise EmptyRegime(f"no points have exponents v={v}, v̂={vhat}: v < v̂/(1−v̂)")
    return v, vhat


# -- schedule ------------------------------------------------------------------


def _base_pairs(v: Fraction, vhat: Fraction, k_limit: int) -> Iterator[tuple[int, int, int]]:
    """(n′_k, m′_k, n′_{k+1}) with n′_k = ⌊(v/v̂)^k⌋ and m′_k = ⌊(1+v)n′_k⌋."""
    ratio = v / vhat
    power = ratio
    n = math.floor(power)
    for _ in range(k_limit):
        power *= ratio
        n_next = math.floor(power)
        yield n, math.floor((1 + v) * n), n_next
        n = n_next


def build_schedule(v: Rational, vhat: Rational, k_max: int, N: int = 0) -> list[ScheduleEntry]:
    """Stages 1..k_max of the construction with offsets for truncation order N.

    A base pair with m′_k ≥ n′_{k+1} is repaired to m = n′_{k+1} − 1 when that
    still exceeds n, and dropped otherwise. Pairs that would overlap the
    previous stage or shrink its gap m − n are thinned out.
    """
    v, vhat = exponent_pair(v, vhat)
    if k_max < 2:
        raise DomainError("k_max must be at least 2")
    if N < 0:
        raise DomainError("N must be non-negative")
    kept: list[tuple[int, int]] = []
    for n, m, n_next in _base_pairs(v, vhat, 10000 + 100 * k_max):
        if m <= n:
            continue
        if m >= n_next:
            if n_next - 1 > n:
                logger.debug("repairing (n′, m′) = (%d, %d) to m = %d", n, m, n_next - 1)
                m = n_next - 1
            else:
                logger.debug("dropping (n′, m′) = (%d, %d): m′ ≥ n′_next = %d", n, m, n_next)
                continue
        if kept:
            prev_n, prev_m = kept[-1]
            if n <= prev_m or m - n < prev_m - prev_n:
                logger.debug("thinning (n′, m′) = (%d, %d) after (%d, %d)", n, m, prev_n, prev_m)
                continue
        kept.append((n, m))
        if len(kept) > k_max:
            break
    else:
        raise CapExceeded(f"could not find {k_max + 1} usable stages for v={v}, v̂={vhat}")

    entries: list[ScheduleEntry] = []
    shift = 0
    for k, ((n, m), (n_next, _)) in enumerate(zip(kept, kept[1:]), start=1):
        gap = m - n
        t = (n_next - m - 1) // gap
        l = n + 4 * (k - 1) * N + shift
        h = m + 4 * k * N + shift
        entries.append(ScheduleEntry(k=k, n=n, m=m, t=t, l=l, h=h, p=gap - 1, q=h + t * gap + 2 * N * t))
        shift += 2 * N * t
    logger.info("schedule for v=%s, v̂=%s: %s", v, vhat, [(e.n, e.m, e.t) for e in entries])
    return entries


# -- the construction ----------------------------------------------------------


def _expansion_producer(bp: BetaParam, x: Enclosure) -> Iterator[int]:
    done, n = 0, 64
    while True:
        word = expand(bp, x, n)
        yield from word.digits[done:]
        done, n = n, 2 * n


@dataclass
class CantorSpec:
    """The data of one construction: exponents, β, β_N, x₀ and the schedule"""
    v: Fraction
    vhat: Fraction
    N: int
    bp: BetaParam
    beta_N: Enclosure
    bp_N: BetaParam
    x0: Enclosure
    x0_digits: DigitStream
    schedule: list[ScheduleEntry]
    free_fill: str = "random"
    seed: int = DEFAULT_SEED
    _segments: list[Segment] = field(default_factory=list, repr=False)

    @classmethod
    def build(
        cls,
        v: Rational,
        vhat: Rational,
        N: int,
        bp: BetaParam,
        x0: Enclosure,
        k_max: int = 8,
        free_fill: str = "random",
        seed: int = DEFAULT_SEED,
    ) -> "CantorSpec":
        v, vhat = exponent_pair(v, vhat)
        if N < 1:
            raise DomainError("N must be at least 1")
        if x0.hi < 0 or x0.lo > 1:
            raise DomainError("x₀ must lie in [0, 1]")
        _fill_word(free_fill)
        beta_N = solve_beta_n(bp.eps_star.take(N), N)
        return cls(
            v=v,
            vhat=vhat,
            N=N,
            bp=bp,
            beta_N=beta_N,
            bp_N=BetaParam(beta_N),
            x0=x0,
            x0_digits=DigitStream(_expansion_producer(bp, x0)),
            schedule=build_schedule(v, vhat, k_max, N),
            free_fill=free_fill,
            seed=seed,
        )

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "CantorSpec":
        data = CantorSpecFile.model_validate(json.loads(Path(path).read_text(encoding="utf-8")))
        return cls.from_record(data)

    @classmethod
    def from_record(cls, data: CantorSpecFile) -> "CantorSpec":
        bp = BetaParam.from_literal(data.beta)
        x0 = parse_number(data.x0, base=bp.beta)
        return cls.build(data.v, data.vhat, data.N, bp, x0, data.k_max, data.free_fill, data.seed)

    @property
    def marker(self) -> tuple[int, ...]:
        return (0,) * self.N + (1,) + (0,) * self.N

    def extend_to(self, depth: int) -> None:
        """Grow the schedule until stage l_k lies beyond depth."""
        while self.schedule[-1].l <= depth:
            self.schedule = build_schedule(self.v, self.vhat, 2 * len(self.schedule), self.N)
            self._segments = []

    def entry(self, k: int) -> ScheduleEntry:
        while len(self.schedule) < k:
            self.schedule = build_schedule(self.v, self.vhat, 2 * len(self.schedule), self.N)
            self._segments = []
        return self.schedule[k - 1]

    def segments(self, depth: int) -> list[Segment]:
        """Blocks covering positions 1..depth; the last one may run past depth."""
        self.extend_to(depth)
        if not self._segments or self._segments[-1].end < depth:
            self._segments = list(_layout(self.schedule, self.N, depth))
        out = []
        for seg in self._segments:
            if seg.start > depth:
                break
            out.append(seg)
        return out

    def determined(self, seg: Segment) -> tuple[int, ...]:
        if seg.kind is SegmentKind.MARKER:
            return self.marker
        if seg.kind is SegmentKind.COPY:
            return self.x0_digits.take(seg.length)
        raise DomainError("free blocks have no determined digits")

    def guard_pattern(self) -> tuple[int, ...]:
        return self.x0_digits.take(self.N + 1)


def _layout(schedule: Sequence[ScheduleEntry], N: int, depth: int) -> Iterator[Segment]:
    pos = 1
    width = 2 * N + 1
    for e in schedule:
        if pos > depth:
            return
        if e.l > pos:
            yield Segment(pos, e.l - pos, SegmentKind.FREE, e.k)
        yield Segment(e.l, width, SegmentKind.MARKER, e.k)
        if e.p:
            yield Segment(e.l + width, e.p, SegmentKind.COPY, e.k)
        yield Segment(e.h - width + 1, width, SegmentKind.MARKER, e.k)
        pos = e.h + 1
        for _ in range(e.t):
            if e.p:
                yield Segment(pos, e.p, SegmentKind.FREE, e.k)
            yield Segment(pos + e.p, width, SegmentKind.MARKER, e.k)
            pos += e.p + width
        pos = e.q + 1


class _PatternGuard:
    """Tracks the longest tail of the word read so far that starts a fixed pattern"""

    def __init__(self, pattern: Sequence[int]):
        self.pattern = tuple(pattern)
        self.fail = [0] * len(self.pattern)
        j = 0
        for i in range(1, len(self.pattern)):
            while j and self.pattern[i] != self.pattern[j]:
                j = self.fail[j - 1]
            if self.pattern[i] == self.pattern[j]:
                j += 1
            self.fail[i] = j
        self.matched = 0
        self.misses = 0

    def _advance(self, d: int) -> int:
        j = self.matched
        while j and self.pattern[j] != d:
            j = self.fail[j - 1]
        return j + 1 if self.pattern[j] == d else j

    def completes(self, d: int) -> bool:
        return bool(self.pattern) and self._advance(d) == len(self.pattern)

    def feed(self, d: int) -> None:
        if not self.pattern:
            return
        j = self._advance(d)
        self.matched = self.fail[j - 1] if j == len(self.pattern) else j


def _fill_word(policy: str) -> Optional[tuple[int, ...]]:
    if policy in ("random", "zeros"):
        return None
    name, _, digits = policy.partition(":")
    if name != "word" or not digits:
        raise DomainError(f"unknown free-fill policy {policy!r}; use one of {FREE_FILL_POLICIES}")
    try:
        word = tuple(int(t) for t in digits.replace(",", " ").split())
    except ValueError as e:
        raise DomainError(f"bad fill word {digits!r}: {str(e)}")
    if not word or any(d < 0 for d in word):
        raise DomainError(f"bad fill word {digits!r}")
    return word


def _fill_block(
    aut: FollowerAutomaton,
    length: int,
    policy: str,
    rng: np.random.Generator,
    guard: _PatternGuard,
    word: Optional[tuple[int, ...]],
) -> list[int]:
    """A word of Σ^length_{β_N} that avoids completing the guard pattern where it can."""
    state = 0
    out: list[int] = []
    for j in range(length):
        allowed = range(aut.eps[state] + 1)
        safe = [d for d in allowed if not guard.completes(d)]
        if not safe:
            safe = list(allowed)
            guard.misses += 1
        if policy == "random":
            d = safe[int(rng.integers(len(safe)))]
        elif word is None:
            d = safe[0]
        else:
            want = min(word[j % len(word)], aut.eps[state])
            d = want if want in safe else min(safe, key=lambda c: abs(c - want))
        state = aut.step(state, d)
        guard.feed(d)
        out.append(d)
    return out


def construct_point(spec: CantorSpec, depth: int) -> DigitWord:
    """The first `depth` digits of a point of the constructed set.

    The same spec and seed give the same word, and a shallower construction
    is a prefix of a deeper one.
    """
    if depth < spec.entry(2).l:
        raise DepthTooSmall(f"depth {depth} does not reach l₂ = {spec.entry(2).l}")
    rng = np.random.default_rng(spec.seed)
    aut = automaton(spec.bp_N)
    guard = _PatternGuard(spec.guard_pattern())
    word = _fill_word(spec.free_fill)
    digits: list[int] = []
    for seg in spec.segments(depth):
        if seg.kind is SegmentKind.FREE:
            block = _fill_block(aut, seg.length, spec.free_fill, rng, guard, word)
        else:
            block = list(spec.determined(seg))
            for d in block:
                guard.feed(d)
        digits.extend(block)
    if guard.misses:
        logger.info("fill guard could not avoid the x₀ prefix at %d free positions", guard.misses)
    digits = digits[:depth]
    if not is_admissible(spec.bp, digits):
        raise VerificationFailed(f"constructed word of depth {depth} is not admissible for {spec.bp.literal}")
    return DigitWord(tuple(digits), spec.bp)


def construct_point_safe(spec: CantorSpec, depth: int) -> tuple[Optional[DigitWord], Optional[str]]:
    try:
        return construct_point(spec, depth), None
    except Exception as e:
        logger.error("construction failed: %s", str(e))
        return None, f"{type(e).__name__}: {str(e)}"


def free_blocks(spec: CantorSpec, word: Sequence[int]) -> list[tuple[Segment, tuple[int, ...]]]:
    """The free blocks of word, each cut to the part inside the word."""
    digits = tuple(word)
    return [
        (seg, digits[seg.start - 1 : seg.end])
        for seg in spec.segments(len(digits))
        if seg.kind is SegmentKind.FREE
    ]


# -- the measure ---------------------------------------------------------------


def mu_mass(spec: CantorSpec, n: int, word_prefix: Sequence[int]) -> Fraction:
    """μ(I_n(w)) for the first n digits of w.

    A completed free block of length L carries 1/♯Σ^L_{β_N}. A free block cut
    after j digits carries the share of its continuations, g_{L−j}(state)/♯Σ^L.
    """
    digits = tuple(word_prefix)
    if n < 0 or len(digits) < n:
        raise DomainError(f"need at least n={n} digits, got {len(digits)}")
    digits = digits[:n]
    if n == 0:
        return Fraction(1)
    aut = automaton(spec.bp_N)
    mass = Fraction(1)
    for seg in spec.segments(n):
        part = digits[seg.start - 1 : seg.end]
        if seg.kind is SegmentKind.FREE:
            state = aut.run(part)
            if state is None:
                return Fraction(0)
            mass *= Fraction(aut.count_from_state(state, seg.length - len(part)), aut.count_words(seg.length))
            continue
        expected = spec.determined(seg)[: len(part)]
        if part != expected:
            bad = next(i for i, (a, b) in enumerate(zip(part, expected)) if a != b)
            raise InconsistentPrefix(
                f"digit {part[bad]} at position {seg.start + bad} differs from the {seg.kind.value} digit {expected[bad]}"
            )
    return mass


def measure_children(spec: CantorSpec, word: Sequence[int]) -> list[MeasureNode]:
    """One-digit extensions of word with positive μ-mass."""
    digits = tuple(word)
    n = len(digits) + 1
    seg = next(s for s in spec.segments(n) if s.start <= n <= s.end)
    if seg.kind is SegmentKind.FREE:
        candidates = range(spec.bp.alphabet_top + 1)
    else:
        candidates = (spec.determined(seg)[n - seg.start],)
    children = []
    for d in candidates:
        child = digits + (d,)
        mass = mu_mass(spec, n, child)
        if mass > 0:
            children.append(MeasureNode(DigitWord(child, spec.bp), mass))
    return children


def mu_at_h(spec: CantorSpec, k: int) -> Fraction:
    """μ(I_{h_k}) = (1/♯Σ^{n₁−1})·Π_{i<k} (♯Σ^{p_i})^{−t_i}·(♯Σ^{l_{i+1}−q_i−1})^{−1}, all under β_N."""
    if k < 1:
        raise DomainError("k must be at least 1")
    aut = automaton(spec.bp_N)
    denominator = aut.count_words(spec.entry(1).n - 1)
    for i in range(1, k):
        e, nxt = spec.entry(i), spec.entry(i + 1)
        denominator *= aut.count_words(e.p) ** e.t * aut.count_words(nxt.l - e.q - 1)
    return Fraction(1, denominator)


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def local_dimension_series(spec: CantorSpec, k_max: int) -> list[tuple[int, float]]:
    """(k, log μ(I_{h_k}) / log |I_{h_k}|) for k = 1..k_max, with |I_{h_k}| = β^{−h_k}."""
    if k_max < 3:
        raise DomainError("k_max must be at least 3")
    series = []
    for k in range(1, k_max + 1):
        h = spec.entry(k).h
        series.append((k, _log_fraction(mu_at_h(spec, k)) / (-h * spec.bp.log_beta)))
    return series


def local_dimension_at(spec: CantorSpec, word: Sequence[int]) -> float:
    """log μ(I_n(w)) / log |I_n(w)| at n = len(w), with the exact cylinder length under β."""
    digits = tuple(word)
    if not digits:
        raise DomainError("local dimension needs a nonempty word")
    mass = mu_mass(spec, len(digits), digits)
    if mass == 0:
        raise DomainError("the word lies outside the support of μ")
    length = cylinder(spec.bp, digits).length.exact
    return _log_fraction(mass) / length.log_abs()
