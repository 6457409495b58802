#!/usr/bin/env python3
"""
Rigorous real arithmetic for betadim

Every real quantity is one of two things:

* an exact element of a number field Q(θ), where θ is a real algebraic number
  fixed by an integer polynomial and an isolating interval. Rationals are
  the degree-one case.
* a rational enclosure [lo, hi] with an optional refiner that tightens it on
  request.

Floors are certified against integer-scaled bisection brackets of θ. When a
decision cannot be made within the configured budget, PrecisionExhausted is
raised; no digit is ever guessed.
"""

import logging
import math
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import sympy

from config import FACTOR_DEGREE_LIMIT, MAX_REFINE_ROUNDS, PRECISION_BITS
from errors import DomainError, NumberFormatError, PrecisionExhausted

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]

_Z = sympy.Symbol("z")
_ROOT_LITERAL = re.compile(r"^root:\[(?P<coeffs>[^\]]*)\]@\[(?P<lo>[^,\]]+),(?P<hi>[^\]]+)\]$")
_BETA_LITERAL = re.compile(r"^beta:\[(?P<coeffs>[^\]]*)\]$")


def _poly_sign(poly: Sequence[int], num: int, bits: int) -> int:
    """Sign of Σ c_i (num/2^bits)^i, evaluated homogeneously in integers."""
    k = len(poly) - 1
    acc = poly[k]
    for i in range(k - 1, -1, -1):
        acc = acc * num + (poly[i] << (bits * (k - i)))
    return (acc > 0) - (acc < 0)


def _poly_sign_at(poly: Sequence[int], q: Fraction) -> int:
    k = len(poly) - 1
    p, d = q.numerator, q.denominator
    acc = poly[k]
    d_pow = 1
    for i in range(k - 1, -1, -1):
        d_pow *= d
        acc = acc * p + poly[i] * d_pow
    return (acc > 0) - (acc < 0)


class NumberField:
    """Q[z]/(f) together with the real root of f lying in [lo, hi]"""

    def __init__(self, poly: Sequence[int], lo: Rational, hi: Rational):
        coeffs = [int(c) for c in poly]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise DomainError(f"defining polynomial {list(poly)} has degree 0")
        self.poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._lock = threading.Lock()
        self._brackets: dict[int, tuple[int, int]] = {}
        self._powers: dict[int, list[tuple[int, int]]] = {}
        self._anchor: Optional[tuple[int, int, int]] = None
        if self.degree == 1:
            self._root = Fraction(-self.poly[0], self.poly[1])
            return
        self._root = None
        sign_lo = _poly_sign_at(self.poly, self.lo)
        sign_hi = _poly_sign_at(self.poly, self.hi)
        if sign_lo == 0 or sign_hi == 0 or sign_lo == sign_hi:
            raise DomainError(f"polynomial {list(self.poly)} does not change sign on [{self.lo}, {self.hi}]")
        self._sign_lo = sign_lo

    @property
    def key(self) -> tuple:
        return (self.poly, self.lo, self.hi)

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        if self.degree == 1:
            return "NumberField(Q)"
        return f"NumberField(poly={list(self.poly)}, root in [{self.lo}, {self.hi}])"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    # -- brackets of θ -----------------------------------------------------

    def _initial_anchor(self) -> tuple[int, int, int]:
        """Dyadic endpoints inside [lo, hi] whose signs straddle the root."""
        bits = 64
        for _ in range(MAX_REFINE_ROUNDS):
            a = math.ceil(self.lo * (1 << bits))
            b = math.floor(self.hi * (1 << bits))
            if a < b:
                sa = _poly_sign(self.poly, a, bits)
                sb = _poly_sign(self.poly, b, bits)
                if sa == 0:
                    return bits, a, a
                if sb == 0:
                    return bits, b, b
                if sa == self._sign_lo and sb == -self._sign_lo:
                    return bits, a, b
            bits *= 2
        raise PrecisionExhausted(f"cannot anchor the root of {list(self.poly)} in [{self.lo}, {self.hi}]")

    def bracket(self, bits: int) -> tuple[int, int]:
        """Integers L ≤ H with L/2^bits ≤ θ ≤ H/2^bits and H − L ≤ 1."""
        if self._root is not None:
            scaled = self._root * (1 << bits)
            return math.floor(scaled), math.ceil(scaled)
        with self._lock:
            hit = self._brackets.get(bits)
            if hit is not None:
                return hit
            if self._anchor is None:
                self._anchor = self._initial_anchor()
            anchor_bits, a, b = self._anchor
            if anchor_bits <= bits:
                lo_n, hi_n = a << (bits - anchor_bits), b << (bits - anchor_bits)
            else:
                shift = anchor_bits - bits
                lo_n, hi_n = a >> shift, -((-b) >> shift)
            while hi_n - lo_n > 1:
                mid = (lo_n + hi_n) >> 1
                s = _poly_sign(self.poly, mid, bits)
                if s == 0:
                    lo_n = hi_n = mid
                elif s == self._sign_lo:
                    lo_n = mid
                else:
                    hi_n = mid
            if anchor_bits <= bits and lo_n != hi_n:
                self._anchor = (bits, lo_n, hi_n)
            self._brackets[bits] = (lo_n, hi_n)
            return lo_n, hi_n

    def power_brackets(self, bits: int) -> list[tuple[int, int]]:
        """Integer enclosures of θ^i at scale 2^(bits·i) for i < degree."""
        with self._lock:
            hit = self._powers.get(bits)
        if hit is not None:
            return hit
        lo_t, hi_t = self.bracket(bits)
        powers = [(1, 1)]
        for _ in range(1, self.degree):
            plo, phi = powers[-1]
            products = (plo * lo_t, plo * hi_t, phi * lo_t, phi * hi_t)
            powers.append((min(products), max(products)))
        with self._lock:
            self._powers[bits] = powers
        return powers

    # -- elements ----------------------------------------------------------

    def element(self, coeffs: Sequence[int], den: int = 1) -> "FieldElement":
        if den == 0:
            raise DomainError("zero denominator")
        values = [int(c) for c in coeffs][: self.degree]
        values += [0] * (self.degree - len(values))
        if den < 0:
            values, den = [-c for c in values], -den
        return FieldElement(self, tuple(values), int(den))

    def from_rational(self, q: Rational) -> "FieldElement":
        q = Fraction(q)
        return self.element([q.numerator], q.denominator)

    def generator(self) -> "FieldElement":
        if self.is_rational:
            return self.from_rational(self._root)
        return self.element([0, 1])

    def generator_inverse(self) -> "FieldElement":
        if self.is_rational:
            if self._root == 0:
                raise DomainError("the generator is zero")
            return self.from_rational(1 / self._root)
        c0 = self.poly[0]
        if c0 == 0:
            raise DomainError(f"generator of {self!r} is not invertible from its polynomial")
        return self.element([-c for c in self.poly[1:]], c0)

    def reduce_product(self, a: Sequence[int], b: Sequence[int]) -> tuple[list[int], int]:
        """Product of two coefficient vectors modulo f, with the extra denominator it needs."""
        k = self.degree
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        if self.is_rational:
            return [prod[0]], 1
        lead = self.poly[-1]
        scale = 1
        for i in range(len(prod) - 1, k - 1, -1):
            c = prod[i]
            if c == 0:
                continue
            if c % lead:
                prod = [x * lead for x in prod]
                scale *= lead
                c = prod[i]
            q = c // lead
            for j in range(k):
                prod[i - k + j] -= q * self.poly[j]
            prod[i] = 0
        return prod[:k], scale

    def sympy_root(self):
        """The generator as a sympy algebraic number (CRootOf) or Rational."""
        if self.is_rational:
            return sympy.Rational(self._root.numerator, self._root.denominator)
        poly = sympy.Poly(list(reversed(self.poly)), _Z)
        lo = sympy.Rational(self.lo.numerator, self.lo.denominator)
        hi = sympy.Rational(self.hi.numerator, self.hi.denominator)
        for root in poly.real_roots():
            if bool(root >= lo) and bool(root <= hi):
                return root
        raise DomainError(f"no real root of {list(self.poly)} in [{self.lo}, {self.hi}]")


RATIONALS = NumberField((0, 1), 0, 0)


def common_field(a: NumberField, b: NumberField) -> NumberField:
    if a == b or b.is_rational:
        return a
    if a.is_rational:
        return b
    raise DomainError(f"cannot mix elements of {a!r} and {b!r}")


@dataclass(frozen=True, eq=False)
class FieldElement:
    """(Σ coeffs[i]·θ^i) / den, exact"""

    field: NumberField
    coeffs: tuple[int, ...]
    den: int = 1

    # -- coercion ----------------------------------------------------------

    def _lift(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def _pair(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return None
        target = common_field(self.field, other.field)
        return self.to_field(target), other.to_field(target)

    def to_field(self, target: NumberField) -> "FieldElement":
        if self.field == target:
            return self
        if not self.field.is_rational:
            raise DomainError(f"cannot move an element of {self.field!r} into {target!r}")
        return target.element([self.coeffs[0]], self.den)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.den == b.den:
            return a.field.element([x + y for x, y in zip(a.coeffs, b.coeffs)], a.den)
        return a.field.element([x * b.den + y * a.den for x, y in zip(a.coeffs, b.coeffs)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return self.field.element([-c for c in self.coeffs], self.den)

    def __sub__(self, other):
        lifted = self._lift(other)
        if lifted is NotImplemented:
            return NotImplemented
        return self + (-lifted)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        coeffs, scale = a.field.reduce_product(a.coeffs, b.coeffs)
        return a.field.element(coeffs, a.den * b.den * scale)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "FieldElement":
        if n < 0:
            raise DomainError("negative powers need an inverse; use generator_inverse()")
        result = self.field.from_rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scaled(self, q: Rational) -> "FieldElement":
        q = Fraction(q)
        return self.field.element([c * q.numerator for c in self.coeffs], self.den * q.denominator)

    def normalized(self) -> "FieldElement":
        g = math.gcd(self.den, *self.coeffs)
        if g <= 1:
            return self
        return self.field.element([c // g for c in self.coeffs], self.den // g)

    # -- exact tests -------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_rational(self) -> Optional[Fraction]:
        if any(self.coeffs[1:]):
            return None
        return Fraction(self.coeffs[0], self.den)

    def as_integer(self) -> Optional[int]:
        if any(self.coeffs[1:]) or self.coeffs[0] % self.den:
            return None
        return self.coeffs[0] // self.den

    # -- certified bounds --------------------------------------------------

    def scaled_bounds(self, bits: int) -> tuple[int, int, int]:
        """Integers lo, hi, D with lo/D ≤ value ≤ hi/D."""
        if not any(self.coeffs[1:]):
            return self.coeffs[0], self.coeffs[0], self.den
        powers = self.field.power_brackets(bits)
        top = len(self.coeffs) - 1
        lo = hi = 0
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            plo, phi = powers[i]
            shift = bits * (top - i)
            if c > 0:
                lo += (c * plo) << shift
                hi += (c * phi) << shift
            else:
                lo += (c * phi) << shift
                hi += (c * plo) << shift
        return lo, hi, self.den << (bits * top)

    def floor(self) -> int:
        if not any(self.coeffs[1:]):
            return self.coeffs[0] // self.den
        for attempt in range(MAX_REFINE_ROUNDS):
            lo, hi, den = self.scaled_bounds(PRECISION_BITS * (attempt + 1))
            f_lo = lo // den
            if f_lo == hi // den:
                if attempt:
                    logger.debug("floor certified after %d refinement rounds", attempt)
                return f_lo
        raise PrecisionExhausted(f"floor of {self!r} not separated from an integer within budget")

    def sign(self) -> int:
        if not any(self.coeffs[1:]):
            c = self.coeffs[0]
            return (c > 0) - (c < 0)
        for attempt in range(MAX_REFINE_ROUNDS):
            lo, hi, _ = self.scaled_bounds(PRECISION_BITS * (attempt + 1))
            if lo > 0:
                return 1
            if hi < 0:
                return -1
        raise PrecisionExhausted(f"sign of {self!r} undecided within budget")

    def bounds(self, bits: int = PRECISION_BITS) -> tuple[Fraction, Fraction]:
        lo, hi, den = self.scaled_bounds(bits)
        return Fraction(lo, den), Fraction(hi, den)

    def log_abs(self) -> float:
        """Natural log of |value|; an upper bound when the budget runs out."""
        if self.is_zero():
            raise DomainError("log of exact zero")
        last = None
        for attempt in range(MAX_REFINE_ROUNDS):
            lo, hi, den = self.scaled_bounds(PRECISION_BITS * (attempt + 1))
            last = (lo, hi, den)
            if lo > 0 or hi < 0:
                small, big = sorted((abs(lo), abs(hi)))
                if (big - small) << 20 <= small:
                    return math.log(big) - math.log(den)
            if not any(self.coeffs[1:]):
                break
        lo, hi, den = last
        return math.log(max(abs(lo), abs(hi), 1)) - math.log(den)

    def enclosure(self, bits: int = PRECISION_BITS) -> "Enclosure":
        lo, hi = self.bounds(bits)
        return Enclosure(lo, hi, refiner=self._refiner, exact=self)

    def _refiner(self, width: Fraction) -> "Enclosure":
        bits = PRECISION_BITS
        for _ in range(MAX_REFINE_ROUNDS):
            lo, hi = self.bounds(bits)
            if hi - lo <= width:
                return Enclosure(lo, hi, refiner=self._refiner, exact=self)
            bits *= 2
        raise PrecisionExhausted(f"cannot enclose {self!r} within width {width}")

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return (pair[0] - pair[1]).is_zero()

    __hash__ = None

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return self == other or (self - other).sign() < 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return self == other or (self - other).sign() > 0

    def __float__(self) -> float:
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    def __repr__(self) -> str:
        exact = self.as_rational()
        if exact is not None:
            return f"FieldElement({exact})"
        return f"FieldElement(≈{float(self):.12g})"


@dataclass(frozen=True)
class Enclosure:
    """A real known to lie in [lo, hi]; `exact` is set when the value is a field element"""

    lo: Fraction
    hi: Fraction
    refiner: Optional[Callable[[Fraction], "Enclosure"]] = field(default=None, compare=False, repr=False)
    exact: Optional[FieldElement] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: Rational) -> "Enclosure":
        q = Fraction(q)
        return cls(q, q, exact=RATIONALS.from_rational(q))

    @classmethod
    def of(cls, elem: FieldElement) -> "Enclosure":
        return elem.enclosure()

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q: Rational) -> bool:
        return self.lo <= q <= self.hi

    def refine(self, width: Rational) -> "Enclosure":
        return refine(self, width)

    def __float__(self) -> float:
        return float(self.midpoint)

    # -- outward arithmetic ------------------------------------------------

    def _exact_pair(self, other: "Enclosure"):
        if self.exact is None or other.exact is None:
            return None
        try:
            common_field(self.exact.field, other.exact.field)
        except DomainError:
            return None
        return self.exact, other.exact

    def _combine(self, other, interval_op, exact_op, width_split) -> "Enclosure":
        other = _as_enclosure(other)
        pair = self._exact_pair(other)
        if pair is not None:
            return exact_op(*pair).enclosure()
        lo, hi = interval_op(self, other)
        left, right = self, other

        def refiner(width: Fraction) -> Enclosure:
            sub = width_split(left, right, Fraction(width))
            a, b = refine(left, sub), refine(right, sub)
            r_lo, r_hi = interval_op(a, b)
            return Enclosure(r_lo, r_hi, refiner=refiner)

        return Enclosure(lo, hi, refiner=refiner)

    def __add__(self, other) -> "Enclosure":
        return self._combine(
            other,
            lambda a, b: (a.lo + b.lo, a.hi + b.hi),
            lambda x, y: x + y,
            lambda a, b, w: w / 2,
        )

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        if self.exact is not None:
            return (-self.exact).enclosure()
        source = self

        def refiner(width: Fraction) -> Enclosure:
            r = refine(source, width)
            return Enclosure(-r.hi, -r.lo, refiner=refiner)

        return Enclosure(-self.hi, -self.lo, refiner=refiner if self.refiner else None)

    def __sub__(self, other) -> "Enclosure":
        return self + (-_as_enclosure(other))

    def __rsub__(self, other) -> "Enclosure":
        return _as_enclosure(other) - self

    def __mul__(self, other) -> "Enclosure":
        def interval(a, b):
            products = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
            return min(products), max(products)

        def split(a, b, w):
            scale = max(abs(a.lo), abs(a.hi)) + max(abs(b.lo), abs(b.hi)) + 1
            return w / (2 * scale)

        return self._combine(other, interval, lambda x, y: x * y, split)

    __rmul__ = __mul__


def _as_enclosure(value) -> Enclosure:
    if isinstance(value, Enclosure):
        return value
    if isinstance(value, FieldElement):
        return value.enclosure()
    if isinstance(value, (int, Fraction)):
        return Enclosure.point(value)
    raise DomainError(f"cannot treat {value!r} as a real enclosure")


def refine(e: Enclosure, width: Rational) -> Enclosure:
    """Tighten e to width ≤ `width`; never widens."""
    width = Fraction(width)
    if width <= 0:
        raise DomainError("refinement width must be positive")
    if e.width <= width:
        return e
    if e.refiner is None:
        raise PrecisionExhausted(f"enclosure [{e.lo}, {e.hi}] has no refiner and is wider than {width}")
    tighter = e.refiner(width)
    lo, hi = max(e.lo, tighter.lo), min(e.hi, tighter.hi)
    if hi - lo > width:
        raise PrecisionExhausted(f"refiner returned width {hi - lo} > {width}")
    return Enclosure(lo, hi, refiner=e.refiner, exact=e.exact)


def floor_separated(e: Enclosure) -> int:
    """⌊value⌋, certified; exact values use their field arithmetic."""
    if e.exact is not None:
        return e.exact.floor()
    for attempt in range(MAX_REFINE_ROUNDS + 1):
        f_lo = math.floor(e.lo)
        if f_lo == math.floor(e.hi):
            return f_lo
        if attempt == MAX_REFINE_ROUNDS or e.refiner is None:
            break
        e = refine(e, e.width / (1 << PRECISION_BITS))
    raise PrecisionExhausted(f"cannot separate [{float(e.lo)}, {float(e.hi)}] from an integer")


# -- literal grammar -------------------------------------------------------


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise NumberFormatError(f"not a rational literal: {text!r}: {str(e)}")


def _parse_coefficients(text: str) -> list[Fraction]:
    parts = [p for p in (s.strip() for s in text.split(",")) if p]
    if not parts:
        raise NumberFormatError("empty coefficient list")
    return [_parse_rational(p) for p in parts]


def _integer_coefficients(coeffs: Sequence[Fraction]) -> list[int]:
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in coeffs]


def root_field(coeffs: Sequence[int], lo: Fraction, hi: Fraction) -> Union[NumberField, Fraction]:
    """The field generated by the unique root of Σ c_i z^i in [lo, hi], or the root itself if rational."""
    if lo > hi:
        raise NumberFormatError(f"bad root bracket [{lo}, {hi}]")
    try:
        poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), _Z)
    except sympy.PolynomialError as e:
        raise NumberFormatError(f"bad polynomial {list(coeffs)}: {str(e)}")
    if poly.degree() < 1:
        raise NumberFormatError(f"polynomial {list(coeffs)} is constant")
    s_lo = sympy.Rational(lo.numerator, lo.denominator)
    s_hi = sympy.Rational(hi.numerator, hi.denominator)
    if poly.degree() <= FACTOR_DEGREE_LIMIT:
        try:
            if poly.count_roots(s_lo, s_hi) != 1:
                raise NumberFormatError(f"{list(coeffs)} must have exactly one root in [{lo}, {hi}]")
            _, factors = poly.factor_list()
            poly = next(f for f, _ in factors if f.count_roots(s_lo, s_hi) == 1)
        except sympy.PolynomialError as e:
            raise NumberFormatError(f"cannot isolate a root of {list(coeffs)}: {str(e)}")
    else:
        logger.debug("degree %d above factoring limit; using the polynomial as given", poly.degree())
    ints = [int(c) for c in reversed(poly.all_coeffs())]
    if len(ints) == 2:
        return Fraction(-ints[0], ints[1])
    return NumberField(ints, lo, hi)


def algebraic(coeffs: Sequence[int], lo: Rational, hi: Rational) -> Enclosure:
    made = root_field(coeffs, Fraction(lo), Fraction(hi))
    if isinstance(made, Fraction):
        return Enclosure.point(made)
    return made.generator().enclosure()


def embed(e: Enclosure, target: NumberField) -> Optional[FieldElement]:
    """Express e exactly in `target` when possible."""
    if e.exact is None:
        return None
    elem = e.exact
    if elem.field == target or elem.field.is_rational:
        return elem.to_field(target)
    if target.is_rational or max(target.degree, elem.field.degree) > FACTOR_DEGREE_LIMIT:
        return None
    try:
        image = sympy.to_number_field(elem.field.sympy_root(), target.sympy_root())
        rep = [Fraction(int(c.p), int(c.q)) for c in (sympy.Rational(c) for c in reversed(image.coeffs()))]
    except Exception as e:
        logger.warning("number %r is not in %r: %s", elem, target, str(e))
        return None
    theta = target.element([0], 1)
    power = target.from_rational(1)
    generator = target.generator()
    for c in rep:
        theta = theta + power.scaled(c)
        power = power * generator
    result = target.element([0], 1)
    power = target.from_rational(1)
    for c in elem.coeffs:
        result = result + power.scaled(c)
        power = power * theta
    return result.scaled(Fraction(1, elem.den))


def parse_number(text: str, base: Optional[FieldElement] = None) -> Enclosure:
    """Parse a number literal.

    Forms: "1.5", "5/8", "root:[c0,…,ck]@[a,b]" and, given a base β,
    "beta:[c0,c1,…]" meaning Σ c_i β^i.
    """
    text = text.strip().replace(" ", "")
    match = _ROOT_LITERAL.match(text)
    if match:
        coeffs = _integer_coefficients(_parse_coefficients(match["coeffs"]))
        return algebraic(coeffs, _parse_rational(match["lo"]), _parse_rational(match["hi"]))
    match = _BETA_LITERAL.match(text)
    if match:
        if base is None:
            raise NumberFormatError(f"{text!r} needs a base to be interpreted in")
        value = base.field.element([0], 1)
        power = base.field.from_rational(1)
        for c in _parse_coefficients(match["coeffs"]):
            value = value + power.scaled(c)
            power = power * base
        return value.enclosure()
    return Enclosure.point(_parse_rational(text))


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
