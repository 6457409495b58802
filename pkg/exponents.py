#!/usr/bin/env python3
"""
Approximation exponents of β-orbits

For x, x₀ ∈ [0, 1] and D(n) = −log_β|T^n x − x₀|:

  v_N = max_{n ≤ N} D(n)/n              (asymptotic exponent surrogate)
  v̂_N = max_{n ≤ N} D(n) / N            (uniform exponent surrogate)

A finite horizon cannot see limits. The tails are taken over the last `window`
fraction of the horizon, reaching back to just before the last new best
approximation r (the last strict increase of max D), so it holds v̂_{r−1}, the low
point of v̂ before the jump, and D(r)/r. The lim sup uses max D(n)/n and the lim inf
uses min v̂_N. An exact hit T^n x = x₀ makes both infinite.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from beta_core import BetaParam, expand, iter_orbit
from config import TAIL_LOOKBACK, TAIL_WINDOW
from errors import DomainError
from models import DigitWord, ExponentEstimate, RunRecord
from numerics import Enclosure, FieldElement, refine

logger = logging.getLogger(__name__)

INF = math.inf

Bounds = tuple[FieldElement, FieldElement]


def _target_bounds(bp: BetaParam, x0: Enclosure, horizon: int) -> Bounds:
    """x₀ as exact field element or as rational bounds narrower than β^{-horizon}."""
    if x0.hi < 0 or x0.lo > 1:
        raise DomainError(f"x₀ must lie in [0, 1], got [{float(x0.lo)}, {float(x0.hi)}]")
    exact = bp.lift(x0)
    if exact is not None:
        return exact, exact
    tight = refine(x0, bp.width_for(horizon))
    return bp.field.from_rational(tight.lo), bp.field.from_rational(tight.hi)


def _start_bounds(bp: BetaParam, x: Enclosure, horizon: int) -> Bounds:
    exact = bp.lift(x)
    if exact is not None:
        return exact, exact
    tight = refine(x, bp.width_for(horizon))
    return bp.field.from_rational(tight.lo), bp.field.from_rational(tight.hi)


def _max(a: FieldElement, b: FieldElement) -> FieldElement:
    return a if a >= b else b


def _distance(point: Bounds, target: Bounds) -> tuple[Optional[FieldElement], FieldElement]:
    """Lower and upper bounds of |p − t|; lower is None when it may be 0."""
    lo, hi = point
    t_lo, t_hi = target
    if lo is hi and t_lo is t_hi:
        d = lo - t_lo
        d = -d if d.sign() < 0 else d
        return d, d
    upper = _max(hi - t_lo, t_hi - lo)
    gap = _max(lo - t_hi, t_lo - hi)
    lower = gap if gap.sign() > 0 else None
    return lower, upper


def _log_distance(bp: BetaParam, point: Bounds, target: Bounds) -> float:
    """D = −log_β of an upper bound of the distance; ∞ for an exact hit."""
    _, upper = _distance(point, target)
    if upper.is_zero():
        return INF
    return -upper.log_abs() / bp.log_beta


def orbit_distance(bp: BetaParam, x: Enclosure, x0: Enclosure, n: int) -> Enclosure:
    """|T^n x − x₀| as a certified enclosure; n = 0 measures x itself."""
    if n < 0:
        raise DomainError("n must be non-negative")
    target = _target_bounds(bp, x0, n)
    point = _start_bounds(bp, x, n)
    for _, lo, hi in iter_orbit(bp, x, n):
        point = (lo, hi)
    lower, upper = _distance(point, target)
    if lower is upper:
        return upper.enclosure()
    return Enclosure(lower.bounds()[0] if lower is not None else Fraction(0), upper.bounds()[1])


def _tail_start(horizon: int, window: Fraction, record: Optional[int], lookback: Fraction) -> int:
    span = max(1, math.floor(horizon * window))
    start = horizon - span + 1
    if record is not None and record > horizon * lookback:
        start = min(start, max(1, record - 1))
    return start


def estimate_exponents(
    bp: BetaParam,
    x: Enclosure,
    x0: Enclosure,
    horizon: int,
    window: Union[Fraction, str] = TAIL_WINDOW,
    start: int = 1,
    with_runs: bool = True,
    lookback: Union[Fraction, str] = TAIL_LOOKBACK,
) -> ExponentEstimate:
    """Finite-horizon estimates of the asymptotic and uniform exponents of (x, x₀).

    `start` = 1 takes n over [1, N]; 0 takes n over [0, N]. For a point built
    by the construction, expand it beyond the horizon: D(n) cannot exceed the
    number of digits known after n.
    """
    window = Fraction(window)
    lookback = Fraction(lookback)
    if horizon < 10:
        raise DomainError("horizon must be at least 10")
    if not 0 < window <= 1:
        raise DomainError("window must lie in (0, 1]")
    if start not in (0, 1):
        raise DomainError("start must be 0 or 1")
    if not 0 <= lookback <= 1:
        raise DomainError("lookback must lie in [0, 1]")
    target = _target_bounds(bp, x0, horizon)
    best = -INF
    if start == 0:
        best = _log_distance(bp, _start_bounds(bp, x, horizon), target)
    dist_log: list[float] = []
    v_seq: list[float] = []
    vhat_seq: list[float] = []
    digits: list[int] = []
    best_ratio = -INF
    record: Optional[int] = None
    first_hit: Optional[int] = 0 if best == INF else None
    if first_hit is None:
        for n, (d, lo, hi) in enumerate(iter_orbit(bp, x, horizon), start=1):
            digits.append(d)
            D = _log_distance(bp, (lo, hi), target)
            dist_log.append(D)
            if D == INF:
                first_hit = n
                logger.info("exact orbit hit T^%d x = x₀; exponents are infinite", n)
                break
            if D > best:
                best, record = D, n
            best_ratio = max(best_ratio, D / n)
            v_seq.append(best_ratio)
            vhat_seq.append(max(best, 0.0) / n)
    if first_hit is not None:
        filled = len(v_seq)
        v_seq.extend([INF] * (horizon - filled))
        vhat_seq.extend([INF] * (horizon - filled))
        v_tail = vhat_tail = INF
        lo_n = None
    else:
        lo_n = _tail_start(horizon, window, record, lookback)
        v_tail = max(D / n for n, D in enumerate(dist_log[lo_n - 1 :], start=lo_n))
        vhat_tail = min(vhat_seq[lo_n - 1 :])
    runs: list[RunRecord] = []
    if with_runs and digits:
        x0_digits = expand(bp, x0, len(digits))
        runs = run_decomposition(bp, DigitWord(tuple(digits)), x0_digits)
        if first_hit is not None:
            runs.append(RunRecord(first_hit, len(digits) + 1, open_ended=True))
    return ExponentEstimate(
        horizon=horizon,
        start=start,
        window=window,
        dist_log=dist_log,
        v_seq=v_seq,
        vhat_seq=vhat_seq,
        v_tail=v_tail,
        vhat_tail=vhat_tail,
        runs=runs,
        first_exact_hit=first_hit,
        tail_from=lo_n,
    )


def estimate_exponents_safe(bp, x, x0, horizon, **kwargs) -> tuple[Optional[ExponentEstimate], Optional[str]]:
    try:
        return estimate_exponents(bp, x, x0, horizon, **kwargs), None
    except Exception as e:
        logger.error("exponent estimation failed: %s", str(e))
        return None, f"{type(e).__name__}: {str(e)}"


# -- runs ----------------------------------------------------------------------


def _z_array(s: Sequence[int]) -> list[int]:
    n = len(s)
    z = [0] * n
    left = right = 0
    for i in range(1, n):
        if i < right:
            z[i] = min(right - i, z[i - left])
        while i + z[i] < n and s[z[i]] == s[i + z[i]]:
            z[i] += 1
        if i + z[i] > right:
            left, right = i, i + z[i]
    if n:
        z[0] = n
    return z


def match_lengths(x_digits: Sequence[int], x0_digits: Sequence[int]) -> list[int]:
    """L[k] = length of the common prefix of σ^k(x) and x₀'s digits, k = 0..len(x)."""
    a, e = tuple(x_digits), tuple(x0_digits)
    z = _z_array(e + (-1,) + a)
    offset = len(e) + 1
    return [min(z[offset + k], len(e)) if offset + k < len(z) else 0 for k in range(len(a) + 1)]


def run_decomposition(
    bp: BetaParam,
    x_digits: Union[DigitWord, Sequence[int]],
    x0_digits: Union[DigitWord, Sequence[int]],
) -> list[RunRecord]:
    """Maximal runs (n_k, m_k) where x's digits after n_k follow x₀'s expansion.

    A candidate at n' ≥ 1 needs a positive digit a_{n'} and L ≥ 1 matching
    digits after it; m' = n' + L + 1 is the first disagreeing position.
    Overlapping candidates form a cluster that keeps its longest match. Runs
    are then kept by i_{k+1} = min{i > i_k : m'_i − n'_i > m_k − n_k}, so
    gaps increase.
    """
    a = tuple(x_digits)
    e = tuple(x0_digits)
    if not a or not e:
        return []
    L = match_lengths(a, e)
    candidates: list[RunRecord] = []
    cluster: Optional[RunRecord] = None
    for n in range(1, len(a)):
        if L[n] < 1 or a[n - 1] == 0:
            continue
        open_ended = n + L[n] >= len(a) or L[n] >= len(e)
        cand = RunRecord(n, n + L[n] + 1, open_ended)
        if cluster is None or n >= cluster.m_k:
            if cluster is not None:
                candidates.append(cluster)
            cluster = cand
        elif cand.gap > cluster.gap:
            cluster = cand
    if cluster is not None:
        candidates.append(cluster)
    runs: list[RunRecord] = []
    for cand in candidates:
        if not runs or cand.gap > runs[-1].gap:
            if runs and cand.n_k < runs[-1].m_k:
                continue
            runs.append(cand)
    return runs
