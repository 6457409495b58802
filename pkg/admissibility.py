#!/usr/bin/env python3
"""
Admissible words of the β-shift

Lexicographic comparison, Parry's admissibility criterion, the follower
automaton that counts admissible words without listing them, and basic
intervals (cylinders) with exact lengths.

The follower state of a word is the length of the longest tail of the word
still running along ε*(β). Reading a digit below the next ε* digit resets the
state to 0. Reading the same digit advances it. A larger digit is rejected.
For simple Parry β the state wraps at the period of ε*.
"""

import logging
import threading
from enum import Enum
from typing import Iterator, Optional, Sequence, Union

from beta_core import BetaParam, is_simple_parry_within, value_of
from config import AUTOMATON_DEPTH, ENUMERATION_CAP
from errors import AutomatonDepthExceeded, CapExceeded, DomainError, NotAdmissible
from models import Cylinder, DigitWord
from numerics import FieldElement

logger = logging.getLogger(__name__)

Word = Union[DigitWord, Sequence[int]]


class Order(str, Enum):
    LT = "LT"
    EQ_PREFIX = "EQ_PREFIX"
    GT = "GT"


def lex_compare(w: Word, other: Word) -> Order:
    a, b = tuple(w), tuple(other)
    m = min(len(a), len(b))
    if a[:m] == b[:m]:
        return Order.EQ_PREFIX
    return Order.LT if a[:m] < b[:m] else Order.GT


def is_self_admissible(w: Word) -> bool:
    """Every shift of w is ≤_lex w, a shorter equal prefix counting as ≤."""
    digits = tuple(w)
    if not digits:
        raise DomainError("self-admissibility needs a nonempty word")
    n = len(digits)
    return all(digits[k:] <= digits[: n - k] for k in range(1, n))


# -- Parry scan ----------------------------------------------------------------


def parry_state(bp: BetaParam, w: Word) -> Optional[int]:
    """Follower state after reading w, or None when w is not β-admissible."""
    digits = tuple(w)
    if any(d < 0 or d > bp.alphabet_top for d in digits):
        return None
    eps = bp.eps_star.take(len(digits) + 1)
    state = 0
    for d in digits:
        bound = eps[state]
        if d > bound:
            return None
        if d < bound:
            state = 0
        else:
            state += 1
            if state == bp.parry_period:
                state = 0
    return state


def is_admissible(bp: BetaParam, w: Word) -> bool:
    """σ^k(w) ≤_lex ε*(β) for every k, with equal prefixes admissible."""
    return parry_state(bp, w) is not None


def remainder(bp: BetaParam, state: int) -> FieldElement:
    """r_j = Σ_i ε*_{j+i} β^{-i}, via r_0 = 1 and r_j = β r_{j-1} − ε*_j."""
    rests: list[FieldElement] = bp.cache.setdefault("remainders", [bp.field.from_rational(1)])
    if state >= len(rests):
        eps = bp.eps_star.take(state)
        with _CACHE_LOCK:
            while len(rests) <= state:
                j = len(rests)
                rests.append(bp.beta * rests[-1] - eps[j - 1])
    return rests[state]


_CACHE_LOCK = threading.Lock()


# -- follower automaton ------------------------------------------------------


class FollowerAutomaton:
    """Finite follower automaton of ε*(β), periodic or truncated at depth D"""

    def __init__(self, bp: BetaParam, depth: int = AUTOMATON_DEPTH):
        self.bp = bp
        self.period = is_simple_parry_within(bp, depth)
        if self.period is not None:
            self.depth: Optional[int] = None
            self.eps = bp.eps_star.take(self.period)
        else:
            self.depth = depth
            self.eps = bp.eps_star.take(depth)
            logger.info("ε*(%s) not periodic within %d digits; automaton truncated", bp.literal, depth)
        self._vectors: dict[int, list[Optional[int]]] = {0: [1] * self.size}
        self._lock = threading.Lock()

    @property
    def size(self) -> int:
        return self.period if self.period is not None else self.depth + 1

    @property
    def is_finite_type(self) -> bool:
        return self.period is not None

    def step(self, state: int, digit: int) -> Optional[int]:
        if state >= len(self.eps):
            raise AutomatonDepthExceeded(f"state {state} is past the automaton depth {self.depth}")
        if digit < 0:
            return None
        bound = self.eps[state]
        if digit > bound:
            return None
        if digit < bound:
            return 0
        nxt = state + 1
        return 0 if nxt == self.period else nxt

    def run(self, word: Word, state: int = 0) -> Optional[int]:
        for d in word:
            state = self.step(state, d)
            if state is None:
                return None
        return state

    def accepts(self, word: Word) -> bool:
        return self.run(word) is not None

    def _next_vector(self, g: list[Optional[int]]) -> list[Optional[int]]:
        out: list[Optional[int]] = []
        for j in range(self.size):
            if j >= len(self.eps):
                out.append(None)
                continue
            nxt = j + 1
            if nxt == self.period:
                nxt = 0
            follow = g[nxt] if nxt < self.size else None
            if follow is None or g[0] is None:
                out.append(None)
            else:
                out.append(self.eps[j] * g[0] + follow)
        return out

    def continuations(self, length: int) -> list[Optional[int]]:
        """g_L(j): number of admissible words of length L readable from state j."""
        if length < 0:
            raise DomainError("length must be non-negative")
        with self._lock:
            hit = self._vectors.get(length)
            if hit is not None:
                return hit
            base = max(L for L in self._vectors if L <= length)
            g = self._vectors[base]
            for L in range(base + 1, length + 1):
                g = self._next_vector(g)
            self._vectors[length] = g
            return g

    def count_from_state(self, state: int, length: int) -> int:
        if not 0 <= state < self.size:
            raise DomainError(f"no state {state}")
        if self.depth is not None and state + length > self.depth:
            raise AutomatonDepthExceeded(f"{length} digits from state {state} exceed depth {self.depth}")
        value = self.continuations(length)[state]
        if value is None:
            raise AutomatonDepthExceeded(f"count from state {state} at length {length} needs more of ε*")
        return value

    def count_words(self, n: int) -> int:
        return self.count_from_state(0, n)

    def words(self, n: int) -> Iterator[tuple[int, ...]]:
        """Admissible words of length n in ascending lexicographic order."""
        if self.depth is not None and n > self.depth:
            raise AutomatonDepthExceeded(f"length {n} exceeds depth {self.depth}")
        stack: list[tuple[tuple[int, ...], int]] = [((), 0)]
        while stack:
            prefix, state = stack.pop()
            if len(prefix) == n:
                yield prefix
                continue
            bound = self.eps[state]
            for d in range(bound, -1, -1):
                nxt = self.step(state, d)
                stack.append((prefix + (d,), nxt))


def automaton(bp: BetaParam, depth: int = AUTOMATON_DEPTH) -> FollowerAutomaton:
    """The follower automaton of bp, built once per depth."""
    key = ("automaton", depth)
    with _CACHE_LOCK:
        made = bp.cache.get(key)
        if made is None:
            made = FollowerAutomaton(bp, depth)
            bp.cache[key] = made
    return made


def count_from_state(aut: FollowerAutomaton, state: int, length: int) -> int:
    return aut.count_from_state(state, length)


def count_words(bp: BetaParam, n: int) -> int:
    """♯Σ^n_β by dynamic programming over follower states."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return automaton(bp).count_words(n)


def count_bounds(bp: BetaParam, n: int) -> tuple[float, float]:
    """β^n and β^(n+1)/(β−1) as floats."""
    beta = float(bp.beta)
    return beta ** n, beta ** (n + 1) / (beta - 1)


def count_within_bounds(bp: BetaParam, n: int, count: int) -> bool:
    """β^n ≤ count ≤ β^(n+1)/(β−1), decided exactly."""
    power = bp.beta ** n
    return power <= count and count * (bp.beta - 1) <= power * bp.beta


def enumerate_words(bp: BetaParam, n: int, cap: int = ENUMERATION_CAP) -> list[DigitWord]:
    """Σ^n_β, sorted lexicographically."""
    if n < 0:
        raise DomainError("n must be non-negative")
    total = count_words(bp, n)
    if total > cap:
        raise CapExceeded(f"{total} words of length {n} exceed the enumeration cap {cap}")
    return [DigitWord(w, bp) for w in automaton(bp).words(n)]


# -- cylinders -----------------------------------------------------------------


def maximal_continuation(bp: BetaParam, w: Word, m: int) -> DigitWord:
    """The lexicographically largest admissible tail of length m after w."""
    state = parry_state(bp, w)
    if state is None:
        raise NotAdmissible(f"{tuple(w)} is not admissible for {bp.literal}")
    return DigitWord(bp.eps_star.take(state + m)[state:], bp)


def cylinder(bp: BetaParam, w: Word) -> Cylinder:
    """I_n(w) with left endpoint evaluate(w) and length β^{-n}·r_j."""
    digits = tuple(w)
    state = parry_state(bp, digits)
    if state is None:
        raise NotAdmissible(f"{digits} is not admissible for {bp.literal}")
    n = len(digits)
    rest = remainder(bp, state)
    length = (bp.beta_inv ** n) * rest
    return Cylinder(
        word=DigitWord(digits, bp),
        left=value_of(bp, digits).enclosure(),
        length=length.enclosure(),
        is_full=rest == 1,
        order=n,
        state=state,
    )


def is_full(bp: BetaParam, w: Word) -> bool:
    """I_n(w) is full iff the follower state of w is the initial state."""
    state = parry_state(bp, w)
    if state is None:
        raise NotAdmissible(f"{tuple(w)} is not admissible for {bp.literal}")
    return state == 0
