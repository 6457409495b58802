#!/usr/bin/env python3
"""
Shared fixtures for the betadim tests
"""

import os
import sys

import pytest

# Add the current directory to Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from beta_core import BetaParam
from cantor import CantorSpec
from numerics import parse_number

PHI = "root:[-1,-1,1]@[1,2]"
RHO = "root:[-1,0,-1,1]@[1,2]"


@pytest.fixture(scope="session")
def phi() -> BetaParam:
    return BetaParam.from_literal(PHI)


@pytest.fixture(scope="session")
def two() -> BetaParam:
    return BetaParam.from_literal("2")


@pytest.fixture(scope="session")
def three_halves() -> BetaParam:
    return BetaParam.from_literal("3/2")


@pytest.fixture(scope="session")
def five_halves() -> BetaParam:
    return BetaParam.from_literal("5/2")


@pytest.fixture(scope="session")
def rho() -> BetaParam:
    return BetaParam.from_literal(RHO)


@pytest.fixture(scope="session")
def test_bases(phi, three_halves, rho, five_halves) -> list[BetaParam]:
    return [phi, three_halves, rho, five_halves]


def make_spec(N: int, **kwargs) -> CantorSpec:
    bp = BetaParam.from_literal("2")
    return CantorSpec.build(2, "1/2", N, bp, parse_number("1/3"), **kwargs)


@pytest.fixture
def spec_n2() -> CantorSpec:
    """v = 2, v̂ = 1/2, β = 2, x₀ = 1/3, markers 00100"""
    return make_spec(2)


@pytest.fixture(scope="module")
def spec_n6() -> CantorSpec:
    return make_spec(6)
