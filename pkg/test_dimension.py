#!/usr/bin/env python3
"""
Tests for the dimension formulas, covering estimates and the parameter space
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from admissibility import is_self_admissible
from beta_core import BetaParam, expand_one
from cantor import CantorSpec
from conftest import PHI
from dimension import (
    asymptotic_dimension,
    covering_dimension_estimate,
    critical_exponent,
    dim_formula,
    dim_formula_max_over_v,
    dim_hat_formula,
    lower_bound_target,
    parameter_dimension_bounds,
    parameter_exponents,
    solve_beta_from_self_admissible,
)
from errors import CapExceeded, DomainError, EmptyRegime, NotSelfAdmissible
from models import Regime
from numerics import Enclosure, parse_number


def test_dim_formula_examples():
    result = dim_formula(2, "1/2")
    assert result.regime is Regime.INTERIOR
    assert result.value == Fraction(1, 9)

    boundary = dim_formula(3, "3/4")
    assert boundary.regime is Regime.BOUNDARY
    assert boundary.value == 0

    empty = dim_formula("1/2", "1/2")
    assert empty.is_empty
    assert empty.value is None


@pytest.mark.parametrize("v,vhat", [(0, "1/2"), (2, 0), (2, 1), (-1, "1/2")])
def test_dim_formula_rejects_out_of_range(v, vhat):
    with pytest.raises(DomainError):
        dim_formula(v, vhat)


def test_dim_formula_range():
    for v in np.linspace(0.1, 10, 25):
        for vhat in np.linspace(0.01, 0.99, 25):
            result = dim_formula(Fraction(float(v)), Fraction(float(vhat)))
            if not result.is_empty:
                assert 0 <= result.value <= 1


def test_empty_regime_boundary_on_a_grid():
    for k in range(1, 51):
        for j in range(1, 51):
            v, vhat = Fraction(k, 10), Fraction(j, 51)
            result = dim_formula(v, vhat)
            assert result.is_empty == (v < vhat / (1 - vhat))
            if not result.is_empty:
                assert 0 <= result.value <= 1
                assert (result.regime is Regime.BOUNDARY) == (result.value == 0)


def test_dim_hat_formula_examples():
    assert dim_hat_formula(0) == 1
    assert dim_hat_formula(1) == 0
    assert dim_hat_formula("1/3") == Fraction(1, 4)
    with pytest.raises(DomainError):
        dim_hat_formula("3/2")


def test_max_over_v_examples():
    v_star, value = dim_formula_max_over_v("1/2")
    assert v_star == pytest.approx(2, abs=1e-5)
    assert value == pytest.approx(1 / 9, abs=1e-9)
    v_star, value = dim_formula_max_over_v("1/3")
    assert v_star == pytest.approx(1, abs=1e-5)
    assert value == pytest.approx(0.25, abs=1e-9)
    assert dim_formula_max_over_v("1/10000")[1] == pytest.approx(1, abs=1e-3)


def test_max_over_v_matches_dim_hat_on_a_grid():
    for i in range(1, 100):
        vhat = Fraction(i, 100)
        _, value = dim_formula_max_over_v(vhat)
        assert value == pytest.approx(float(dim_hat_formula(vhat)), abs=1e-6)


def test_small_uniform_exponent_recovers_asymptotic_dimension():
    for v in (Fraction(1, 2), 2, 5):
        value = dim_formula(v, Fraction(1, 10**4)).value
        assert float(value) == pytest.approx(float(asymptotic_dimension(v)), abs=1e-3)
    assert asymptotic_dimension(2) == Fraction(1, 3)


def test_critical_exponent():
    assert critical_exponent(2, "1/2") == Fraction(1, 9)
    assert critical_exponent(2, "1/2", "1/3") == Fraction(2, 9)
    with pytest.raises(EmptyRegime):
        critical_exponent("1/2", "1/2")
    with pytest.raises(DomainError):
        critical_exponent(2, "1/2", 1)


def test_parameter_dimension_bounds():
    lower, upper = parameter_dimension_bounds(2, "1/2", "1.2", "1.5", "2")
    assert lower == pytest.approx(math.log(1.5) / math.log(2) / 9)
    assert upper == pytest.approx(math.log(1.5) / math.log(1.2) / 9)
    assert lower < 1 / 9 < upper
    assert parameter_dimension_bounds("1/2", "1/2", "1.2", "1.5", "2") is None
    with pytest.raises(DomainError):
        parameter_dimension_bounds(2, "1/2", "1.5", "1.2", "2")


# -- covering counts -----------------------------------------------------------


def test_covering_full_shift_is_one(two):
    assert covering_dimension_estimate(two, 10) == pytest.approx(1.0, abs=1e-12)


def test_covering_constructed_set(spec_n6):
    n = spec_n6.entry(6).h
    estimate = covering_dimension_estimate(spec_n6, n)
    assert estimate == pytest.approx(lower_bound_target(spec_n6), abs=0.1)
    assert estimate == pytest.approx(float(dim_formula(2, "1/2").value), abs=0.1)


def test_covering_on_the_boundary_decreases():
    bp = BetaParam.from_literal("2")
    spec = CantorSpec.build(3, "3/4", 2, bp, parse_number("1/3"))
    estimates = [covering_dimension_estimate(spec, n) for n in (50, 200, 800, 3200)]
    assert all(a > b for a, b in zip(estimates, estimates[1:]))
    assert estimates[-1] < 0.01


def test_covering_cap(two, spec_n2):
    with pytest.raises(CapExceeded):
        covering_dimension_estimate(two, 10**7)
    with pytest.raises(CapExceeded):
        covering_dimension_estimate(spec_n2, 10**7)
    with pytest.raises(DomainError):
        covering_dimension_estimate(two, 0)


# -- parameter space -----------------------------------------------------------


def test_solve_beta_from_self_admissible_examples():
    assert float(solve_beta_from_self_admissible((1, 0, 1))) == pytest.approx(1.4655712318767680)
    assert float(solve_beta_from_self_admissible((1, 1))) == pytest.approx(1.6180339887498949)
    with pytest.raises(NotSelfAdmissible):
        solve_beta_from_self_admissible((1, 1, 2))
    with pytest.raises(DomainError):
        solve_beta_from_self_admissible((1, 0))


def _self_admissible_words(seed: int, count: int, max_length: int) -> list[tuple[int, ...]]:
    rng = np.random.default_rng(seed)
    words = set()
    while len(words) < count:
        length = int(rng.integers(2, max_length + 1))
        word = tuple(int(d) for d in rng.integers(0, 3, size=length))
        if word[-1] and sum(word) > 1 and is_self_admissible(word):
            words.add(word)
    return sorted(words)


def _check_round_trip(words):
    for word in words:
        beta = solve_beta_from_self_admissible(word)
        assert expand_one(BetaParam(beta), len(word) + 3).digits == word + (0, 0, 0)


def test_solve_beta_round_trip():
    _check_round_trip(_self_admissible_words(3, 25, 8))


@pytest.mark.slow
def test_solve_beta_round_trip_long_words():
    _check_round_trip(_self_admissible_words(29, 100, 12))


def test_parameter_exponents_exact_hit(phi):
    estimate = parameter_exponents(phi, Enclosure.point(0), 20)
    assert estimate.first_exact_hit == 2
    assert estimate.infinite
    from_word = parameter_exponents((1, 1), Enclosure.point(0), 20)
    assert from_word.first_exact_hit == 2
    from_literal = parameter_exponents(PHI, Enclosure.point(0), 20)
    assert from_literal.infinite


def test_parameter_exponents_finite(two):
    estimate = parameter_exponents(two, Enclosure.point(Fraction(1, 3)), 50)
    assert not estimate.infinite
    assert estimate.v_tail < 0.1
    assert estimate.vhat_tail < 0.1
