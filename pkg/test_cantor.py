#!/usr/bin/env python3
"""
Tests for the schedule, the construction and the measure μ
"""

import json
from fractions import Fraction

import pytest

from admissibility import automaton, count_words, is_admissible, is_full
from cantor import (
    CantorSpec,
    build_schedule,
    construct_point,
    construct_point_safe,
    free_blocks,
    local_dimension_at,
    local_dimension_series,
    measure_children,
    mu_at_h,
    mu_mass,
)
from conftest import make_spec
from dimension import lower_bound_target
from errors import DepthTooSmall, DomainError, EmptyRegime, InconsistentPrefix
from models import SegmentKind


def test_schedule_example():
    entries = build_schedule(2, "1/2", 3)
    assert [(e.n, e.m, e.t) for e in entries] == [(4, 12, 0), (16, 48, 0), (64, 192, 0)]


def test_schedule_offsets():
    entries = build_schedule(2, "1/2", 4, N=6)
    for e in entries:
        assert e.l == 4 ** e.k + 24 * (e.k - 1)
        assert e.h == 3 * 4 ** e.k + 24 * e.k
        assert e.p == 2 * 4 ** e.k - 1
        assert e.q == e.h
    small = build_schedule(2, "1/2", 2, N=2)
    assert [(e.l, e.h, e.q) for e in small] == [(4, 20, 20), (24, 64, 64)]


def test_schedule_repairs_touching_pairs():
    entries = build_schedule(1, "1/2", 2)
    assert [(e.n, e.m) for e in entries] == [(2, 3), (4, 7)]


def test_schedule_with_repeats():
    entries = build_schedule("1/4", "1/8", 6, N=2)
    assert entries[0].t == 2
    for e, nxt in zip(entries, entries[1:]):
        gap = e.m - e.n
        assert e.n < e.m < nxt.n
        assert gap <= nxt.m - nxt.n
        assert e.m + e.t * gap < nxt.n <= e.m + (e.t + 1) * gap
        assert e.t <= 2 / Fraction(1, 8)
        assert e.l < e.h <= e.q < nxt.l
        assert e.q - e.h == e.t * (gap + 2 * 2)


def test_schedule_ratios_approach_exponents():
    entries = build_schedule(2, "1/2", 8)
    last, nxt = entries[-2], entries[-1]
    assert (last.m - last.n) / last.n == pytest.approx(2, abs=0.01)
    assert (last.m - last.n) / nxt.n == pytest.approx(0.5, abs=0.01)


def test_schedule_empty_regime():
    with pytest.raises(EmptyRegime):
        build_schedule("1/2", "1/2", 3)


def test_schedule_needs_two_stages():
    with pytest.raises(DomainError):
        build_schedule(2, "1/2", 1)


def test_construct_is_deterministic_and_admissible(spec_n2):
    word = construct_point(spec_n2, 60)
    again = construct_point(make_spec(2), 60)
    assert word == again
    assert len(word) == 60
    assert is_admissible(spec_n2.bp, word)
    aut = automaton(spec_n2.bp_N)
    for seg, block in free_blocks(spec_n2, word):
        assert aut.accepts(block)


def test_construct_follows_the_layout(spec_n2):
    word = construct_point(spec_n2, 64)
    marker = (0, 0, 1, 0, 0)
    assert word.digits[3:8] == marker
    assert word.digits[8:15] == (0, 1, 0, 1, 0, 1, 0)
    assert word.digits[15:20] == marker
    assert word.digits[23:28] == marker
    assert word.digits[28:59] == ((0, 1) * 16)[:31]
    assert word.digits[59:64] == marker
    for seg in spec_n2.segments(64):
        if seg.kind is not SegmentKind.FREE:
            assert word.digits[seg.start - 1 : seg.end] == spec_n2.determined(seg)


def test_shallow_construction_is_a_prefix(spec_n2):
    deep = construct_point(spec_n2, 150)
    shallow = construct_point(spec_n2, 70)
    assert deep.digits[:70] == shallow.digits


def test_zeros_policy():
    spec = make_spec(2, free_fill="zeros")
    word = construct_point(spec, 100)
    assert is_admissible(spec.bp, word)
    for _, block in free_blocks(spec, word):
        assert set(block) <= {0}


def test_word_policy_stays_admissible():
    spec = make_spec(2, free_fill="word:1,1,1")
    word = construct_point(spec, 100)
    aut = automaton(spec.bp_N)
    for _, block in free_blocks(spec, word):
        assert aut.accepts(block)
        assert (1, 1) not in zip(block, block[1:])


def test_unknown_policy_is_rejected():
    with pytest.raises(DomainError):
        make_spec(2, free_fill="spiral")


def test_depth_too_small(spec_n2):
    with pytest.raises(DepthTooSmall):
        construct_point(spec_n2, 23)
    word, error = construct_point_safe(spec_n2, 23)
    assert word is None and error.startswith("DepthTooSmall")


def test_constructed_prefix_is_full_at_h(spec_n2):
    word = construct_point(spec_n2, 64)
    for k in (1, 2):
        assert is_full(spec_n2.bp, word.digits[: spec_n2.entry(k).h])


def test_spec_file_round_trip(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"v": "2", "vhat": "1/2", "N": 2, "beta": "2", "x0": "1/3", "seed": 5}), encoding="utf-8")
    spec = CantorSpec.from_file(path)
    assert spec.seed == 5 and spec.N == 2
    assert float(spec.beta_N) == pytest.approx(1.6180339887)
    assert construct_point(spec, 40) == construct_point(make_spec(2, seed=5), 40)


# -- the measure ---------------------------------------------------------------


def test_mass_at_zero_is_one(spec_n2):
    assert mu_mass(spec_n2, 0, ()) == 1


def test_mass_is_frozen_through_first_determined_block(spec_n2):
    word = construct_point(spec_n2, 64)
    first = Fraction(1, count_words(spec_n2.bp_N, 3))
    assert first == Fraction(1, 5)
    for n in range(3, 21):
        assert mu_mass(spec_n2, n, word) == first


def test_mass_is_additive(spec_n2):
    word = construct_point(spec_n2, 64)
    q2 = spec_n2.entry(2).q
    for n in range(q2):
        parent = mu_mass(spec_n2, n, word)
        children = measure_children(spec_n2, word.digits[:n])
        assert sum(child.mass for child in children) == parent
        assert word.digits[: n + 1] in [child.word.digits for child in children]


def test_mass_at_h_matches_closed_form(spec_n2):
    word = construct_point(spec_n2, 216)
    for k in (1, 2, 3):
        h = spec_n2.entry(k).h
        assert mu_mass(spec_n2, h, word) == mu_at_h(spec_n2, k)
    assert mu_at_h(spec_n2, 2) == Fraction(1, 25)


def test_deviation_from_a_marker_raises(spec_n2):
    word = list(construct_point(spec_n2, 30).digits)
    word[5] = 1 - word[5]
    with pytest.raises(InconsistentPrefix):
        mu_mass(spec_n2, 30, word)


def test_inadmissible_free_block_has_no_mass(spec_n2):
    assert mu_mass(spec_n2, 3, (1, 1, 0)) == 0


def test_local_dimension_series_approaches_target(spec_n6):
    series = local_dimension_series(spec_n6, 8)
    ratios = [ratio for _, ratio in series]
    assert 0 < ratios[0] < 1
    assert all(a <= b for a, b in zip(ratios[1:], ratios[2:]))
    target = lower_bound_target(spec_n6)
    assert target == pytest.approx(float(Fraction(1, 9)) * 0.98811, abs=1e-4)
    assert ratios[-1] == pytest.approx(target, abs=0.05)


def test_local_dimension_series_needs_three_stages(spec_n2):
    with pytest.raises(DomainError):
        local_dimension_series(spec_n2, 2)


def test_local_dimension_at_h_matches_series(spec_n2):
    word = construct_point(spec_n2, 216)
    series = dict(local_dimension_series(spec_n2, 3))
    for k in (1, 2, 3):
        h = spec_n2.entry(k).h
        assert local_dimension_at(spec_n2, word.digits[:h]) == pytest.approx(series[k])


def test_intermediate_ratios_stay_above_stage_ratios(spec_n2):
    word = construct_point(spec_n2, 216)
    series = dict(local_dimension_series(spec_n2, 3))
    h2, h3 = spec_n2.entry(2).h, spec_n2.entry(3).h
    floor = min(series[2], series[3]) - (2 * spec_n2.N + 1) / h2
    for n in range(h2, h3 + 1, 7):
        assert local_dimension_at(spec_n2, word.digits[:n]) >= floor
