#!/usr/bin/env python3
"""
Hausdorff dimension formulas for sets of prescribed approximation exponents

For the set of x with V_β(x, x₀) = v and V̂_β(x, x₀) = v̂:

    dim = (v − v̂ − v·v̂) / ((1 + v)(v − v̂))      when v ≥ v̂/(1 − v̂)

and the set is empty below that line. Maximising over v gives the dimension
((1 − v̂)/(1 + v̂))² of {V̂ = v̂}. The same values hold in parameter space for
the orbit of 1. Finite-depth constructions are compared against these through
covering counts.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from scipy.optimize import minimize_scalar

from admissibility import automaton, count_words, is_self_admissible
from beta_core import BetaParam, eps_star_prefix, expand_one, is_simple_parry_within, solve_beta_n
from cantor import CantorSpec
from config import ENUMERATION_CAP, TAIL_WINDOW, V_CAP_SPAN
from errors import CapExceeded, DomainError, EmptyRegime, NotSelfAdmissible, VerificationFailed
from exponents import estimate_exponents
from models import DigitWord, DimResult, ExponentEstimate, Regime, SegmentKind
from numerics import Enclosure

logger = logging.getLogger(__name__)

Number = Union[Fraction, int, float, str]


def _fraction(x: Number) -> Fraction:
    try:
        return Fraction(x)
    except (ValueError, TypeError) as e:
        raise DomainError(f"not a number: {x!r} ({str(e)})")


def dim_formula(v: Number, vhat: Number) -> DimResult:
    v, vhat = _fraction(v), _fraction(vhat)
    if v <= 0 or not 0 < vhat < 1:
        raise DomainError(f"need v > 0 and 0 < v̂ < 1, got v={v}, v̂={vhat}")
    if v * (1 - vhat) < vhat:
        return DimResult(Regime.EMPTY)
    value = (v - vhat - v * vhat) / ((1 + v) * (v - vhat))
    if not 0 <= value <= 1:
        raise VerificationFailed(f"dimension {value} outside [0, 1] for v={v}, v̂={vhat}")
    return DimResult(Regime.BOUNDARY if value == 0 else Regime.INTERIOR, value)


def dim_hat_formula(vhat: Number) -> Fraction:
    vhat = _fraction(vhat)
    if not 0 <= vhat <= 1:
        raise DomainError(f"v̂ must lie in [0, 1], got {vhat}")
    return ((1 - vhat) / (1 + vhat)) ** 2


def dim_formula_max_over_v(vhat: Number) -> tuple[float, float]:
    """(v*, max_v dim_formula(v, v̂)) by bounded scalar search; v* = 2v̂/(1−v̂)."""
    vhat = _fraction(vhat)
    if not 0 < vhat < 1:
        raise DomainError(f"v̂ must lie in (0, 1), got {vhat}")
    lo = float(vhat / (1 - vhat))
    hi = lo + V_CAP_SPAN * (1 + lo)
    h = float(vhat)

    def objective(v: float) -> float:
        return -(v - h - v * h) / ((1 + v) * (v - h))

    try:
        found = minimize_scalar(objective, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10 * (1 + lo)})
    except Exception as e:
        raise VerificationFailed(f"maximisation over v failed for v̂={vhat}: {str(e)}")
    v_star = float(found.x)
    analytic = float(2 * vhat / (1 - vhat))
    if abs(v_star - analytic) > 1e-3 * (1 + analytic):
        logger.warning("numerical v* = %.8g differs from 2v̂/(1−v̂) = %.8g", v_star, analytic)
    return v_star, -float(found.fun)


def asymptotic_dimension(v: Number) -> Fraction:
    """1/(1+v), the dimension with only the asymptotic exponent fixed."""
    v = _fraction(v)
    if v <= 0:
        raise DomainError("v must be positive")
    return 1 / (1 + v)


def critical_exponent(v: Number, vhat: Number, eps_prime: Number = 0) -> Fraction:
    """s₀ = ((1+ε′)/(1−ε′))·dim_formula(v, v̂), the convergence threshold of the covering series."""
    eps_prime = _fraction(eps_prime)
    if not 0 <= eps_prime < 1:
        raise DomainError("ε′ must lie in [0, 1)")
    result = dim_formula(v, vhat)
    if result.is_empty:
        raise EmptyRegime(f"no covering exponent for the empty set at v={v}, v̂={vhat}")
    return (1 + eps_prime) / (1 - eps_prime) * result.value


def lower_bound_target(spec: CantorSpec) -> float:
    """dim_formula(v, v̂)·log_β β_N, the limit of the local-dimension series."""
    return float(dim_formula(spec.v, spec.vhat).value) * spec.bp_N.log_beta / spec.bp.log_beta


def parameter_dimension_bounds(
    v: Number, vhat: Number, beta0: Number, beta1: Number, beta2: Number
) -> Optional[tuple[float, float]]:
    """Bounds on dim{β ∈ [β₁, β₂] : V_β(1, x₀) = v, V̂_β(1, x₀) = v̂}; None when empty."""
    b0, b1, b2 = (float(b) for b in (beta0, beta1, beta2))
    if not 1 < b0 < b1 < b2:
        raise DomainError("need 1 < β₀ < β₁ < β₂")
    result = dim_formula(v, vhat)
    if result.is_empty:
        return None
    dim = float(result.value)
    return dim * math.log(b1) / math.log(b2), min(1.0, dim * math.log(b1) / math.log(b0))


# -- covering counts -----------------------------------------------------------


def covering_dimension_estimate(spec: Union[CantorSpec, BetaParam], n: int) -> float:
    """log(♯ depth-n words consistent with the construction) / (n log β).

    Free blocks contribute ♯Σ^len_{β_N} for their part inside [1, n]; marker
    and copy blocks contribute one choice. A bare BetaParam counts all of Σ^n_β.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    if n > ENUMERATION_CAP:
        raise CapExceeded(f"depth {n} exceeds the counting cap {ENUMERATION_CAP}")
    if isinstance(spec, BetaParam):
        return math.log(count_words(spec, n)) / (n * spec.log_beta)
    aut = automaton(spec.bp_N)
    log_count = 0.0
    for seg in spec.segments(n):
        if seg.kind is SegmentKind.FREE:
            log_count += math.log(aut.count_words(min(seg.end, n) - seg.start + 1))
    return log_count / (n * spec.bp.log_beta)


# -- parameter space -----------------------------------------------------------


def solve_beta_from_self_admissible(w: Union[DigitWord, Sequence[int]]) -> Enclosure:
    """The β > 1 with d_β(1) = w, checked by expanding 1 under it."""
    digits = tuple(w)
    if not digits:
        raise DomainError("need a nonempty word")
    if not is_self_admissible(digits):
        raise NotSelfAdmissible(f"{digits} has a shift above itself")
    if digits[-1] == 0:
        raise DomainError(f"{digits} ends in 0")
    beta = solve_beta_n(digits, len(digits))
    bp = BetaParam(beta)
    expansion = expand_one(bp, len(digits)).digits
    if expansion != digits or is_simple_parry_within(bp, len(digits)) != len(digits):
        raise VerificationFailed(f"d_β(1) = {expansion}… does not reproduce {digits}")
    logger.debug("β for d_β(1) = %s is %s", digits, bp.literal)
    return beta


def _parameter_base(w_or_beta) -> BetaParam:
    if isinstance(w_or_beta, BetaParam):
        return w_or_beta
    if isinstance(w_or_beta, Enclosure):
        return BetaParam(w_or_beta)
    if isinstance(w_or_beta, str):
        return BetaParam.from_literal(w_or_beta)
    return BetaParam(solve_beta_from_self_admissible(w_or_beta))


def parameter_exponents(
    w_or_beta, x0: Enclosure, horizon: int, window=TAIL_WINDOW, start: int = 1
) -> ExponentEstimate:
    """Exponents of the orbit of 1 under β, with T_β 1 = β − ⌊β⌋."""
    bp = _parameter_base(w_or_beta)
    logger.info("orbit of 1 under %s, ε* starts %s", bp.literal, eps_star_prefix(bp, 8).text())
    return estimate_exponents(bp, Enclosure.point(1), x0, horizon, window=window, start=start)
