#!/usr/bin/env python3
"""
β-transformation orbits and greedy expansions

BetaParam carries a base β > 1 as an exact field element, together with the
memoised orbit of 1, the expansion d_β(1) and the infinite expansion ε*(β).
"""

import logging
import math
import re
import threading
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Optional, Sequence, Union

from config import BETA_N_BITS, MAX_REFINE_ROUNDS, PARRY_HORIZON, PRECISION_BITS
from errors import DomainError, InvalidPrefix, PrecisionExhausted
from models import DigitWord
from numerics import (
    Enclosure,
    FieldElement,
    NumberField,
    embed,
    format_fraction,
    parse_number,
    refine,
    root_field,
)

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^beta=(?P<beta>\S+)\s+alphabet_top=(?P<top>\d+)\s+n=(?P<n>\d+)\s*$")


class DigitStream:
    """Digits produced on demand; the prefix already produced never changes"""

    def __init__(self, producer: Iterator[int]):
        self._producer = producer
        self._digits: list[int] = []
        self._exhausted = False
        self._lock = threading.Lock()

    def take(self, n: int) -> tuple[int, ...]:
        with self._lock:
            while len(self._digits) < n and not self._exhausted:
                try:
                    self._digits.append(next(self._producer))
                except StopIteration:
                    self._exhausted = True
            return tuple(self._digits[:n])

    def __getitem__(self, i: int) -> int:
        prefix = self.take(i + 1)
        if len(prefix) <= i:
            raise IndexError(i)
        return prefix[i]


class BetaParam:
    """A base β > 1 with its alphabet, d_β(1) and ε*(β)"""

    def __init__(self, beta: Enclosure, literal: str = ""):
        if beta.exact is None:
            raise DomainError("β must be an exact rational or algebraic number")
        self.beta: FieldElement = beta.exact
        self.field: NumberField = self.beta.field
        if not self.beta > 1:
            raise DomainError(f"β must exceed 1, got {float(self.beta)}")
        self.enclosure = beta
        self.literal = literal or field_literal(self.beta)
        top = self.beta.as_integer()
        self.is_integer = top is not None
        self.alphabet_top = top - 1 if top is not None else self.beta.floor()
        rational = self.beta.as_rational()
        if rational is not None:
            self.beta_inv = self.field.from_rational(1 / rational)
        elif self.beta == self.field.generator():
            self.beta_inv = self.field.generator_inverse()
        else:
            raise DomainError("an algebraic β must be the generator of its field")
        self.log_beta = self.beta.log_abs()
        self._orbit_one: list[FieldElement] = [self.field.from_rational(1)]
        self._digits_one: list[int] = []
        self._orbit_lock = threading.Lock()
        self.parry_period: Optional[int] = None
        self.cache: dict = {}
        self.d1 = DigitStream(self._d1_producer())
        self.eps_star = DigitStream(self._eps_star_producer())

    @classmethod
    def from_literal(cls, text: str) -> "BetaParam":
        return cls(parse_number(text), literal=text.strip())

    def __repr__(self) -> str:
        return f"BetaParam({self.literal})"

    def lift(self, x: Enclosure) -> Optional[FieldElement]:
        """x as an exact element of β's field, when that is possible."""
        return embed(x, self.field)

    def _extend_one_orbit(self, n: int) -> None:
        with self._orbit_lock:
            while len(self._digits_one) < n:
                y = self.beta * self._orbit_one[-1]
                d = y.floor()
                self._digits_one.append(d)
                self._orbit_one.append(y - d)

    def one_orbit(self, n: int) -> tuple[list[int], list[FieldElement]]:
        """First n digits of d_β(1) and the points T^0 1 … T^n 1."""
        self._extend_one_orbit(n)
        return self._digits_one[:n], self._orbit_one[: n + 1]

    def _d1_producer(self) -> Iterator[int]:
        i = 0
        while True:
            self._extend_one_orbit(i + 1)
            yield self._digits_one[i]
            i += 1

    def _eps_star_producer(self) -> Iterator[int]:
        i = 0
        while True:
            self._extend_one_orbit(i + 1)
            digits, points = self._digits_one, self._orbit_one
            if points[i + 1].is_zero():
                period = tuple(digits[:i]) + (digits[i] - 1,)
                self.parry_period = i + 1
                logger.debug("d_β(1) terminates at %d for %s; ε* has period %s", i + 1, self.literal, period)
                yield from period[i:]
                while True:
                    yield from period
            yield digits[i]
            i += 1

    def width_for(self, n: int) -> Fraction:
        """A width small enough to keep n orbit steps of an interval inside one cylinder chain."""
        bits = math.ceil(n * self.log_beta / math.log(2)) + PRECISION_BITS + 2
        return Fraction(1, 1 << bits)


def field_literal(value: FieldElement) -> str:
    q = value.as_rational()
    if q is not None:
        return format_fraction(q)
    f = value.field
    if value == f.generator():
        return f"root:[{','.join(str(c) for c in f.poly)}]@[{format_fraction(f.lo)},{format_fraction(f.hi)}]"
    return f"≈{float(value):.15g}"


# -- orbits ------------------------------------------------------------------


def _start_point(bp: BetaParam, x: Enclosure) -> Optional[FieldElement]:
    if x.hi < 0 or x.lo > 1:
        raise DomainError(f"x must lie in [0, 1], got [{float(x.lo)}, {float(x.hi)}]")
    exact = bp.lift(x)
    if exact is not None and (exact.sign() < 0 or exact > 1):
        raise DomainError(f"x must lie in [0, 1], got {float(exact)}")
    return exact


def iter_orbit(bp: BetaParam, x: Enclosure, n: int) -> Iterator[tuple[int, FieldElement, FieldElement]]:
    """Yield (ε_k, lo_k, hi_k) for k = 1..n with lo_k ≤ T^k x ≤ hi_k.

    Exact points give lo_k is hi_k. Other points are carried as two rational
    endpoints that must share every digit; on a straddle the start enclosure
    is refined and the walk resumes where it stopped.
    """
    exact = _start_point(bp, x)
    if exact is not None:
        if exact == 1:
            digits, points = bp.one_orbit(n)
            for k in range(n):
                yield digits[k], points[k + 1], points[k + 1]
            return
        current = exact
        for _ in range(n):
            y = bp.beta * current
            d = y.floor()
            current = y - d
            yield d, current, current
        return
    width = bp.width_for(n)
    emitted = 0
    for attempt in range(MAX_REFINE_ROUNDS):
        tight = refine(x, width)
        lo = bp.field.from_rational(max(tight.lo, Fraction(0)))
        hi = bp.field.from_rational(min(tight.hi, Fraction(1)))
        for k in range(n):
            y_lo, y_hi = bp.beta * lo, bp.beta * hi
            d = y_lo.floor()
            if y_hi.floor() != d:
                logger.debug("orbit straddles a digit boundary at step %d; refining (round %d)", k + 1, attempt + 1)
                width /= 1 << PRECISION_BITS
                break
            lo, hi = y_lo - d, y_hi - d
            if k >= emitted:
                emitted += 1
                yield d, lo, hi
        else:
            return
    raise PrecisionExhausted(f"orbit of x cannot be separated from cylinder boundaries within {n} steps")


def trace_orbit(bp: BetaParam, x: Enclosure, n: int) -> tuple[list[int], tuple[FieldElement, FieldElement]]:
    """Digits ε_1..ε_n of x and bounds on T^n x."""
    exact = _start_point(bp, x)
    digits: list[int] = []
    last = (exact, exact) if exact is not None else None
    for d, lo, hi in iter_orbit(bp, x, n):
        digits.append(d)
        last = (lo, hi)
    if last is None:
        last = (bp.field.from_rational(x.lo), bp.field.from_rational(x.hi))
    return digits, last


def _pair_enclosure(lo: FieldElement, hi: FieldElement) -> Enclosure:
    if lo is hi:
        return lo.enclosure()
    return Enclosure(lo.bounds()[0], hi.bounds()[1])


def t_beta_step(bp: BetaParam, x: Enclosure) -> Enclosure:
    """T_β x = βx − ⌊βx⌋, with T_β 1 = β − ⌊β⌋."""
    _, last = trace_orbit(bp, x, 1)
    return _pair_enclosure(*last)


def expand(bp: BetaParam, x: Enclosure, n: int) -> DigitWord:
    """First n digits of the greedy β-expansion of x."""
    if n < 0:
        raise DomainError("n must be non-negative")
    exact = bp.lift(x)
    if exact is not None and exact == 1:
        return expand_one(bp, n)
    digits, _ = trace_orbit(bp, x, n)
    return DigitWord(tuple(digits), bp)


def expand_safe(bp: BetaParam, x: Enclosure, n: int) -> tuple[Optional[DigitWord], Optional[str]]:
    try:
        return expand(bp, x, n), None
    except Exception as e:
        logger.error("expansion failed: %s", str(e))
        return None, f"{type(e).__name__}: {str(e)}"


def expand_one(bp: BetaParam, n: int) -> DigitWord:
    """d_β(1) through the extension T_β 1 = β − ⌊β⌋; integer β gives the digit β itself."""
    return DigitWord(bp.d1.take(n), bp, of_one=True)


def value_of(bp: BetaParam, digits: Sequence[int]) -> FieldElement:
    """Σ w_i β^{-i}, exact."""
    total = bp.field.from_rational(0)
    for d in reversed(tuple(digits)):
        total = (total + d) * bp.beta_inv
    return total


def evaluate(bp: BetaParam, w: Union[DigitWord, Sequence[int]]) -> Enclosure:
    return value_of(bp, w).enclosure()


def beta_power_inverse(bp: BetaParam, n: int) -> FieldElement:
    return bp.beta_inv ** n


def eps_star_prefix(bp: BetaParam, n: int) -> DigitWord:
    if n < 0:
        raise DomainError("n must be non-negative")
    return DigitWord(bp.eps_star.take(n), bp)


def is_simple_parry_within(bp: BetaParam, horizon: int = PARRY_HORIZON) -> Optional[int]:
    """Length m of a finite d_β(1) with m ≤ horizon, certified by exact arithmetic."""
    if horizon < 1:
        raise DomainError("horizon must be at least 1")
    try:
        _, points = bp.one_orbit(horizon)
    except PrecisionExhausted:
        return None
    for m in range(1, horizon + 1):
        if points[m].is_zero():
            return m
    return None


# -- β_N ---------------------------------------------------------------------


def solve_beta_n(prefix: Union[DigitWord, Sequence[int]], N: int) -> Enclosure:
    """The root z > 1 of 1 = Σ_{i≤N} ε_i z^{-i}."""
    from admissibility import is_self_admissible

    digits = tuple(prefix)[:N]
    if N < 1 or len(digits) < N:
        raise InvalidPrefix(f"need {N} digits, got {len(digits)}")
    if digits[-1] == 0:
        raise InvalidPrefix(f"digit ε_{N} is 0")
    if any(d < 0 for d in digits):
        raise InvalidPrefix("digits must be non-negative")
    if not is_self_admissible(digits):
        raise InvalidPrefix(f"{digits} is not self-admissible")
    total = sum(digits)
    if total <= 1:
        raise InvalidPrefix(f"{digits} defines no base above 1")
    poly = [0] * (N + 1)
    poly[N] = 1
    for i, d in enumerate(digits, start=1):
        poly[N - i] = -d
    made = root_field(poly, Fraction(1), Fraction(1 + total))
    if isinstance(made, Fraction):
        return Enclosure.point(made)
    enc = made.generator().enclosure()
    return refine(enc, Fraction(1, 1 << BETA_N_BITS))


def beta_n_chain(bp: BetaParam, n_max: int) -> list[tuple[int, Enclosure]]:
    """β_N for every N ≤ n_max whose digit ε*_N is positive."""
    eps = bp.eps_star.take(n_max)
    chain = []
    for N in range(1, n_max + 1):
        if eps[N - 1] == 0:
            continue
        try:
            chain.append((N, solve_beta_n(eps, N)))
        except InvalidPrefix as e:
            logger.debug("skipping N=%d: %s", N, str(e))
    return chain


# -- digit files -------------------------------------------------------------


def format_digit_file(bp: BetaParam, word: Sequence[int]) -> str:
    digits = tuple(word)
    return f"beta={bp.literal} alphabet_top={bp.alphabet_top} n={len(digits)}\n{' '.join(map(str, digits))}\n"


def write_digit_file(path: Union[str, Path], bp: BetaParam, word: Sequence[int]) -> Path:
    target = Path(path)
    target.write_text(format_digit_file(bp, word), encoding="ascii")
    return target


def read_digit_file(path: Union[str, Path]) -> tuple[BetaParam, DigitWord]:
    lines = Path(path).read_text(encoding="ascii").splitlines()
    if not lines:
        raise DomainError(f"{path} is empty")
    match = _HEADER.match(lines[0])
    if not match:
        raise DomainError(f"bad digit-file header: {lines[0]!r}")
    bp = BetaParam.from_literal(match["beta"])
    if int(match["top"]) != bp.alphabet_top:
        raise DomainError(f"header alphabet_top={match['top']} disagrees with β ({bp.alphabet_top})")
    digits = tuple(int(t) for t in (lines[1].split() if len(lines) > 1 else []))
    if len(digits) != int(match["n"]):
        raise DomainError(f"header says n={match['n']} but the file holds {len(digits)} digits")
    return bp, DigitWord(digits, bp)
