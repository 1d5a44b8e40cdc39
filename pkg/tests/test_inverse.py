import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steklov.errors import BracketError, DomainError
from steklov.harness import standard_media
from steklov.inverse import area_correction, estimate_constant, estimate_two_step
from steklov.medium import DiskInclusion
from steklov.oracles import sov_eigenvalue, sov_first


def test_examples():
    n, its, res = estimate_constant(1.3771053, 1)
    assert n == pytest.approx(2.0, abs=1e-5) and res <= 1e-10 and its > 0
    assert estimate_constant(0.575080915, 1)[0] == pytest.approx(1.0, abs=1e-6)
    assert estimate_constant(1.3007182, 1)[0] == pytest.approx(1.920193, abs=1e-4)


@pytest.mark.parametrize("n_star", [1.5, 2.0, 3.0])
def test_round_trip(n_star):
    lam = sov_first(1.0, n_star).real
    n, _, res = estimate_constant(lam, 1.0)
    assert abs(n - n_star) <= 1e-8
    assert res <= 1e-10


@settings(max_examples=30, deadline=None)
@given(st.floats(1.01, 5.5))
def test_round_trip_property(n_star):
    # below the first pole of the m = 0 branch (J_0(sqrt(n)) = 0 at n ~ 5.78)
    lam = sov_eigenvalue(1.0, n_star, 0).real
    n, _, _ = estimate_constant(lam, 1.0)
    assert abs(n - n_star) <= 1e-8


def test_branch_monotone_on_bracket():
    ns = np.linspace(1.0001, 5.7, 100)
    vals = [sov_eigenvalue(1.0, n, 0).real for n in ns]
    assert np.all(np.diff(vals) > 0)


def test_bracket_split_at_poles():
    # the m = 0 branch has a pole near n = 5.7832; a target on the next branch
    lam = sov_eigenvalue(1.0, 8.0, 0).real
    n, _, res = estimate_constant(lam, 1.0, n_bracket=(6.0, 25.0))
    assert n == pytest.approx(8.0, abs=1e-8) and res <= 1e-10


def test_bracket_error():
    with pytest.raises(BracketError):
        estimate_constant(0.1, 1.0, n_bracket=(1.0001, 5.0))
    with pytest.raises(DomainError):
        estimate_constant(1.0, 1.0, n_bracket=(3.0, 2.0))


def test_area_correction():
    assert area_correction(1.5, math.pi, math.pi / 4) == pytest.approx(3.0)
    assert area_correction(1.7, math.pi, math.pi) == 1.7
    for s in (0.5, 3.0, 1e3):
        assert area_correction(1.4, s * math.pi, s * 1.1) == pytest.approx(area_correction(1.4, math.pi, 1.1), rel=1e-14)
    with pytest.raises(DomainError):
        area_correction(1.5, math.pi, 0.0)
    with pytest.raises(DomainError):
        area_correction(1.5, math.pi, 4.0)


def test_two_step():
    full = estimate_two_step(1.3007182, 1.0)
    assert full.n_approx2 == full.n_approx
    assert full.n_approx2 == pytest.approx(1.920193, abs=1e-4)
    half = estimate_two_step(0.78174886356, 1.0, DiskInclusion(0.5, 2.0))
    assert half.n_approx2 == pytest.approx(2.181511, abs=1e-3)
    sq = estimate_two_step(1.11759427187, 1.0, standard_media()["rounded_square"])
    assert sq.n_approx2 == pytest.approx(2.053623, abs=1e-3)
    assert set(full.as_dict()) == {"lambda_target", "n_approx", "n_approx2", "iterations", "residual"}
