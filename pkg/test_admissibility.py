#!/usr/bin/env python3
"""
Tests for admissible words, counting and cylinders
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from admissibility import (
    Order,
    automaton,
    count_bounds,
    count_from_state,
    count_within_bounds,
    count_words,
    cylinder,
    enumerate_words,
    is_admissible,
    is_full,
    is_self_admissible,
    lex_compare,
    maximal_continuation,
)
from beta_core import BetaParam, expand, solve_beta_n, value_of
from errors import CapExceeded, NotAdmissible
from numerics import Enclosure


def test_lex_compare():
    assert lex_compare((1, 0), (1, 1)) is Order.LT
    assert lex_compare((1, 0, 1), (1, 0, 1, 0)) is Order.EQ_PREFIX
    assert lex_compare((2,), (1, 9)) is Order.GT


def test_is_admissible_examples(phi, two):
    assert not is_admissible(phi, (1, 1))
    assert is_admissible(phi, (1, 0, 1))
    for word in itertools.product((0, 1), repeat=6):
        assert is_admissible(two, word)
    assert not is_admissible(two, (0, 2))


def test_is_self_admissible_examples():
    assert is_self_admissible((1, 0, 1))
    assert not is_self_admissible((1, 1, 2))
    for k in range(1, 5):
        assert is_self_admissible((k,))


def test_enumerate_examples(two, phi):
    words = enumerate_words(two, 3)
    assert len(words) == 8
    assert words[0].digits == (0, 0, 0) and words[-1].digits == (1, 1, 1)
    assert [w.digits for w in enumerate_words(phi, 3)] == [
        (0, 0, 0),
        (0, 0, 1),
        (0, 1, 0),
        (1, 0, 0),
        (1, 0, 1),
    ]
    assert [w.digits for w in enumerate_words(phi, 0)] == [()]


def test_enumerate_cap(two):
    with pytest.raises(CapExceeded):
        enumerate_words(two, 12, cap=100)


def test_count_examples(phi, two):
    assert count_words(phi, 3) == 5
    assert count_words(two, 10) == 1024
    assert count_words(phi, 10) == 144
    lower, upper = count_bounds(phi, 3)
    assert lower == pytest.approx(4.236, abs=1e-3)
    assert upper == pytest.approx(11.09, abs=1e-2)


def test_count_from_state(phi, test_bases):
    aut = automaton(phi)
    assert count_from_state(aut, 0, 3) == 5
    assert count_from_state(aut, aut.step(0, 1), 3) == 3
    for bp in test_bases:
        aut = automaton(bp)
        for L in range(1, 8):
            split = sum(count_from_state(aut, aut.step(0, d), L - 1) for d in range(aut.eps[0] + 1))
            assert count_from_state(aut, 0, L) == split


def test_count_bounds_hold(test_bases):
    for bp in test_bases:
        for n in range(15):
            assert count_within_bounds(bp, n, count_words(bp, n))


def test_golden_mean_counts_are_fibonacci(phi):
    fib = [1, 1]
    while len(fib) < 23:
        fib.append(fib[-1] + fib[-2])
    for n in range(21):
        assert count_words(phi, n) == fib[n + 1]


def test_count_bounds_hold_for_sampled_bases():
    rng = np.random.default_rng(17)
    for p in rng.integers(101, 400, size=10):
        bp = BetaParam.from_literal(f"{int(p)}/100")
        for n in range(15):
            assert count_within_bounds(bp, n, count_words(bp, n))


def _left_endpoint_prefixes(bp: BetaParam, n: int) -> set:
    found = set()
    for word in itertools.product(range(bp.alphabet_top + 1), repeat=n):
        left = value_of(bp, word)
        if left < 1:
            found.add(expand(bp, left.enclosure(), n).digits)
    return found


def _midpoint_words(bp: BetaParam, depth: int, grid: int, margin: float = 1e-9) -> np.ndarray:
    """Float greedy digits of the grid midpoints, kept only where every step clears a digit boundary by margin."""
    beta = float(bp.beta)
    x = (2 * np.arange(grid) + 1) / (2 * grid)
    digits = np.empty((grid, depth), dtype=np.int64)
    keep = np.ones(grid, dtype=bool)
    for i in range(depth):
        y = beta * x
        d = np.floor(y)
        x = y - d
        keep &= (x > margin) & (x < 1 - margin)
        digits[:, i] = d
    return digits[keep]


def test_midpoint_digits_match_exact_expansion(three_halves):
    words = _midpoint_words(three_halves, 8, 200)
    assert len(words) > 150
    for row in words[::20]:
        assert all(0 <= d <= three_halves.alphabet_top for d in row)
    exact = {expand(three_halves, Enclosure.point(Fraction(2 * k + 1, 400)), 8).digits for k in range(200)}
    assert {tuple(int(d) for d in row) for row in words} <= exact


@pytest.mark.slow
def test_enumeration_matches_brute_force(test_bases):
    for bp in test_bases:
        words = _midpoint_words(bp, 8, 10**5)
        for n in range(1, 9):
            listed = {w.digits for w in enumerate_words(bp, n)}
            from_grid = {tuple(int(d) for d in row) for row in np.unique(words[:, :n], axis=0)}
            assert from_grid <= listed
            assert from_grid | _left_endpoint_prefixes(bp, n) == listed
            assert len(listed) == count_words(bp, n)


def test_enumeration_is_exact_for_full_shift(two):
    listed = {w.digits for w in enumerate_words(two, 5)}
    assert listed == set(itertools.product((0, 1), repeat=5))


def test_monotonicity(rho, phi, five_halves):
    for n in range(1, 8):
        for word in enumerate_words(rho, n):
            assert is_admissible(phi, word)
        for word in enumerate_words(phi, n):
            assert is_admissible(five_halves, word)


def test_prefix_closure(three_halves):
    for word in enumerate_words(three_halves, 7):
        for i in range(len(word)):
            assert is_admissible(three_halves, word.digits[:i])


def test_cylinder_examples(phi, two):
    beta = phi.beta
    inv = phi.beta_inv

    cyl = cylinder(phi, (1, 0, 0))
    assert cyl.left.exact == inv
    assert cyl.length.exact == inv ** 3
    assert cyl.is_full

    cyl = cylinder(phi, (1, 0, 1))
    assert cyl.left.exact == inv + inv ** 3
    assert cyl.length.exact == inv ** 4
    assert not cyl.is_full
    assert (cyl.left.exact + cyl.length.exact) == 1
    assert beta * inv == 1

    cyl = cylinder(two, (0, 1))
    assert cyl.left.exact == Fraction(1, 4)
    assert cyl.length.exact == Fraction(1, 4)
    assert cyl.is_full


def test_cylinder_rejects_inadmissible(phi):
    with pytest.raises(NotAdmissible):
        cylinder(phi, (1, 1))


def test_is_full_examples(phi, two):
    assert is_full(phi, (1, 0, 0))
    assert not is_full(phi, (1, 0, 1))
    for word in enumerate_words(two, 4):
        assert is_full(two, word)


def _check_fullness_by_concatenation(bases, lengths):
    for bp in bases:
        tails = [w for m in range(1, 5) for w in enumerate_words(bp, m)]
        for n in lengths:
            for word in enumerate_words(bp, n):
                by_concat = all(is_admissible(bp, word.digits + t.digits) for t in tails)
                assert is_full(bp, word) == by_concat
                assert cylinder(bp, word).is_full == is_full(bp, word)


def test_fullness_agrees_with_concatenation(test_bases):
    _check_fullness_by_concatenation(test_bases, range(1, 7))


@pytest.mark.slow
def test_fullness_agrees_with_concatenation_at_depth(test_bases):
    _check_fullness_by_concatenation(test_bases, range(7, 9))


def test_full_cylinders_multiply(phi, rho):
    for bp in (phi, rho):
        for word in enumerate_words(bp, 5):
            if not is_full(bp, word):
                continue
            outer = cylinder(bp, word).length.exact
            for m in range(1, 5):
                for tail in enumerate_words(bp, m):
                    inner = cylinder(bp, word.digits + tail.digits).length.exact
                    assert inner == outer * cylinder(bp, tail).length.exact


def test_first_full_descendant_is_not_too_small(test_bases):
    rng = np.random.default_rng(11)
    for bp in test_bases:
        aut = automaton(bp)
        words = [w for w in enumerate_words(bp, 6) if not is_full(bp, w)]
        for index in rng.choice(len(words), size=min(10, len(words)), replace=False):
            word = words[int(index)]
            length = cylinder(bp, word).length.exact
            frontier = [word.digits]
            found = None
            while found is None:
                frontier = [w + (d,) for w in frontier for d in range(bp.alphabet_top + 1) if aut.accepts(w + (d,))]
                full = [w for w in frontier if is_full(bp, w)]
                if full:
                    found = full
            largest = max((cylinder(bp, w).length.exact for w in found), key=float)
            assert largest * bp.beta >= length


def _check_beta_n_cylinders(bases, lengths):
    for bp in bases:
        eps = bp.eps_star.take(8)
        for N in range(2, 7):
            if eps[N - 1] == 0:
                continue
            bp_N = BetaParam(solve_beta_n(eps, N))
            for n in lengths:
                for word in enumerate_words(bp_N, n):
                    length = cylinder(bp, word).length.exact
                    assert bp.beta_inv ** (n + N) <= length <= bp.beta_inv ** n


def test_beta_n_words_have_bounded_cylinders(two, three_halves):
    _check_beta_n_cylinders((two, three_halves), range(1, 7))


@pytest.mark.slow
def test_beta_n_words_have_bounded_cylinders_at_depth(two, three_halves):
    _check_beta_n_cylinders((two, three_halves), range(7, 13))


def test_cylinders_tile_the_unit_interval(test_bases):
    for bp in test_bases:
        total = sum((cylinder(bp, w).length.exact for w in enumerate_words(bp, 6)), bp.field.from_rational(0))
        assert total == 1


def test_maximal_continuation(phi):
    assert maximal_continuation(phi, (1, 0, 1), 4).digits == (0, 1, 0, 1)
    assert maximal_continuation(phi, (0,), 3).digits == (1, 0, 1)
