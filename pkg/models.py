#!/usr/bin/env python3
"""
Data models for betadim
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Iterator, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator

from config import DEFAULT_SEED
from errors import BetaDimError, DomainError
from numerics import parse_number


@dataclass(frozen=True)
class DigitWord:
    """Finite digit word, optionally tied to the base it was produced under.

    Digits lie in 0..alphabet_top of the context. An expansion of 1
    (`of_one=True`) may use ⌊β⌋ itself, so d_2(1) = (2) is accepted.
    """
    digits: tuple[int, ...] = ()
    beta_context: Optional[Any] = field(default=None, compare=False, repr=False)
    of_one: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if self.beta_context is not None:
            top = self.beta_context.alphabet_top
            if self.of_one and self.beta_context.is_integer:
                top += 1
            bad = [d for d in self.digits if d < 0 or d > top]
            if bad:
                raise DomainError(f"digits {bad} outside alphabet 0..{top}")

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __add__(self, other) -> "DigitWord":
        return DigitWord(self.digits + tuple(other), self.beta_context, self.of_one)

    def text(self) -> str:
        return " ".join(str(d) for d in self.digits)


@dataclass(frozen=True)
class Cylinder:
    """Basic interval I_n(word)"""
    word: DigitWord
    left: Any  # Enclosure
    length: Any  # Enclosure
    is_full: bool
    order: int
    state: int = 0


@dataclass(frozen=True)
class RunRecord:
    n_k: int
    m_k: int
    open_ended: bool = False

    @property
    def gap(self) -> int:
        return self.m_k - self.n_k


@dataclass
class ExponentEstimate:
    """Finite-horizon surrogates of the asymptotic and uniform exponents"""
    horizon: int
    start: int
    window: Fraction
    dist_log: list[float]
    v_seq: list[float]
    vhat_seq: list[float]
    v_tail: float
    vhat_tail: float
    runs: list[RunRecord] = field(default_factory=list)
    first_exact_hit: Optional[int] = None
    tail_from: Optional[int] = None  # first N of the tail window

    @property
    def infinite(self) -> bool:
        return self.first_exact_hit is not None


@dataclass(frozen=True)
class ScheduleEntry:
    """One stage k of the construction with its absolute offsets"""
    k: int
    n: int
    m: int
    t: int
    l: int = 0
    h: int = 0
    p: int = 0
    q: int = 0


class SegmentKind(str, Enum):
    FREE = "free"
    MARKER = "marker"
    COPY = "copy"


@dataclass(frozen=True)
class Segment:
    """A block of positions start..end (1-based, inclusive) of a constructed word"""
    start: int
    length: int
    kind: SegmentKind
    stage: int

    @property
    def end(self) -> int:
        return self.start + self.length - 1


@dataclass(frozen=True)
class MeasureNode:
    word: DigitWord
    mass: Fraction


class Regime(str, Enum):
    EMPTY = "empty"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


@dataclass(frozen=True)
class DimResult:
    regime: Regime
    value: Optional[Fraction] = None

    @property
    def is_empty(self) -> bool:
        return self.regime is Regime.EMPTY

    def __float__(self) -> float:
        if self.value is None:
            raise BetaDimError("the empty regime has no dimension value")
        return float(self.value)


# -- wire models -----------------------------------------------------------

Number = Union[float, str]


def finite_or_inf(x: float) -> Number:
    return "inf" if math.isinf(x) else x


def fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _check_literal(value: Optional[str]) -> Optional[str]:
    if value is None or value.strip().startswith("beta:"):
        return value
    try:
        parse_number(value)
    except BetaDimError as e:
        raise ValueError(str(e))
    return value


def _check_rational(value: Optional[str]) -> Optional[str]:
    if value is None:
        return value
    try:
        Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational number: {value!r} ({str(e)})")
    return value


class RunConfig(BaseModel):
    """One CLI invocation, validated"""
    command: str = Field(description="Subcommand name")
    mode: Optional[str] = Field(default=None, description="dim sub-mode: formula, max or estimate")
    beta: Optional[str] = Field(default=None, description="Base literal")
    x: Optional[str] = Field(default=None, description="Point literal")
    x0: Optional[str] = Field(default=None, description="Target point literal")
    v: Optional[str] = Field(default=None, description="Asymptotic exponent")
    vhat: Optional[str] = Field(default=None, description="Uniform exponent")
    n: Optional[int] = Field(default=None, ge=0, description="Word length or depth")
    N: Optional[int] = Field(default=None, ge=1, description="Truncation order of β_N")
    word: Optional[list[int]] = Field(default=None, description="Digit word")
    horizon: Optional[int] = Field(default=None, ge=1, description="Orbit horizon")
    depth: Optional[int] = Field(default=None, ge=0, description="Construction depth")
    k_max: Optional[int] = Field(default=None, ge=1, description="Number of schedule stages")
    window: Optional[str] = Field(default=None, description="Tail window fraction")
    start: int = Field(default=1, ge=0, le=1, description="First orbit index of the exponent windows")
    seed: Optional[int] = Field(default=None, description="Free-slot filler seed; the spec file or DEFAULT_SEED when absent")
    fill: Optional[str] = Field(default=None, description="Free-slot policy: random, zeros or word:<digits>")
    eps_prime: Optional[str] = Field(default=None, description="ε′ of the critical exponent")
    parameter: bool = Field(default=False, description="Report the parameter-space reading")
    spec_file: Optional[str] = Field(default=None, description="CantorSpecFile JSON path")
    output: Optional[str] = Field(default=None, description="Output path; stdout when absent")
    format: Literal["jsonl", "digits", "csv"] = Field(default="jsonl", description="Output format")

    @field_validator("beta", "x", "x0")
    @classmethod
    def literal_parses(cls, value: Optional[str]) -> Optional[str]:
        return _check_literal(value)

    @field_validator("v", "vhat", "window", "eps_prime")
    @classmethod
    def rational_parses(cls, value: Optional[str]) -> Optional[str]:
        return _check_rational(value)


class CantorSpecFile(BaseModel):
    """On-disk description of a construction"""
    v: str = Field(description="Asymptotic exponent v > 0")
    vhat: str = Field(description="Uniform exponent in (0, 1)")
    N: int = Field(ge=1, description="Truncation order")
    beta: str = Field(description="Base literal")
    x0: str = Field(description="Target point literal")
    seed: int = Field(default=DEFAULT_SEED)
    k_max: int = Field(default=8, ge=2)
    free_fill: str = Field(default="random")

    @field_validator("v", "vhat", mode="before")
    @classmethod
    def as_text(cls, value) -> str:
        return _check_rational(str(value))

    @field_validator("beta", "x0")
    @classmethod
    def literal_parses(cls, value: str) -> str:
        return _check_literal(value)


class CountRecord(BaseModel):
    n: int
    count: int
    lower: float
    upper: float
    certified_depth: Optional[int] = None


class CylinderRecord(BaseModel):
    word: list[int]
    order: int
    left: float
    length: float
    is_full: bool


class ExponentRecord(BaseModel):
    N: int
    vN: Number
    vhatN: Number


class ExponentSummary(BaseModel):
    horizon: int
    start: int
    window: str
    v_tail: Number
    vhat_tail: Number
    infinite: bool
    first_exact_hit: Optional[int] = None
    tail_from: Optional[int] = Field(default=None, description="First N of the tail window")
    runs: list[list[int]] = Field(default_factory=list)


class RunRecordOut(BaseModel):
    n: int
    m: int
    open_ended: bool


class BetaRecord(BaseModel):
    N: Optional[int] = None
    beta: str
    value: float
    lo: str
    hi: str
    verified: Optional[bool] = None


class MeasureRecord(BaseModel):
    n: int
    mass: str
    value: float


class LocalDimRecord(BaseModel):
    k: int
    h: int
    ratio: float
    target: Optional[float] = None


class DimRecord(BaseModel):
    v: Optional[str] = None
    vhat: Optional[str] = None
    regime: str
    parameter: Optional[bool] = None
    dimension: Optional[float] = None
    v_star: Optional[float] = None
    exact: Optional[str] = None
    critical: Optional[str] = Field(default=None, description="Critical exponent s₀ at the requested ε′, as p/q")


class WordRecord(BaseModel):
    word: list[int]
    admissible: Optional[bool] = None
    self_admissible: Optional[bool] = None
    is_full: Optional[bool] = None


class DigitsRecord(BaseModel):
    beta: str = Field(description="Base literal the digits were produced under")
    alphabet_top: int
    n: int
    digits: list[int]
