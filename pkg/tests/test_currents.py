import numpy as np
import pytest

from hypothesis import given, settings, strategies as st

from kemmer import DimensionError, NormError
from kemmer import currents as cur
from kemmer.exactmath import ExpSum
from kemmer.spectra import landau_state_spin0, solve_free
from .base import assertPasses, rep0, rep1, reps

spin_ids = ["spin0", "spin1"]


def _modes(rep, count=3):
    modes = [((0, 0, 0), False), ((1, 0, 0), False), ((0, 1, 2), True)][:count]
    return [
        solve_free(rep, 1, n, label=label, negative=negative)[-1]
        for label, (n, negative) in enumerate(modes)
    ]


def _superposition(rep, count=3):
    return cur.superpose(_modes(rep, count), [1, (1, 2), (0, -1)][:count])


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("count", [1, 2, 3])
def test_j_is_conserved(rep, count):
    current = cur.current_j(rep, _superposition(rep, count))
    report = cur.verify_conservation(current)
    assert report.identity == "1.3"
    assertPasses(report)


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("count", [1, 2, 3])
def test_s_is_conserved(rep, count):
    current = cur.current_s(rep, _superposition(rep, count))
    report = cur.verify_conservation(current)
    assert report.identity == "1.5"
    assertPasses(report)
    assert not current.norm.is_zero()


def test_conservation_outside_free_case_is_informational():
    current = cur.current_j(rep0, _superposition(rep0, 1))
    report = cur.verify_conservation(current, free=False)
    assert report.expect is None
    assert report.notes


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
def test_s_density_is_positive(rep):
    current = cur.current_s(rep, _superposition(rep))
    points = [(t, x, 0.5, 1.5) for t in (0.0, 0.7, 2.0) for x in np.linspace(0, 2 * np.pi, 5)]

    profile = cur.sample_profile(current, points)
    assert len(profile) == len(points)
    assert all(row[4] >= 0 for row in profile)


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
def test_box_charge_is_static(rep):
    charge, static = cur.box_charge(cur.current_j(rep, _superposition(rep)))
    assert static
    assert not charge.is_zero()


def test_zero_state_has_no_norm():
    with pytest.raises(NormError):
        cur.current_s(rep0, ExpSum.zero(rep0.dim))


def test_dimension_mismatch():
    psi = _superposition(rep0, 1)

    with pytest.raises(DimensionError):
        cur.current_j(rep1, psi)

    with pytest.raises(DimensionError):
        cur.current_s(rep1, psi)

    with pytest.raises(DimensionError):
        cur.superpose(_modes(rep0, 2), [1])


def test_superpose_gaussian_coefficient():
    (mode,) = _modes(rep0, 1)
    doubled = cur.superpose([mode, mode], [(1, 1), (1, -1)])
    assert doubled == mode.psi.scale(2)


def test_numerical_divergence():
    state = landau_state_spin0(rep0, 1, 1, 1, size=128)
    assert cur.numerical_divergence(rep0, state) < 1e-6


gaussian_pairs = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(any)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(reps), st.lists(gaussian_pairs, min_size=3, max_size=3))
def test_random_combinations_are_conserved(rep, coefficients):
    psi = cur.superpose(_modes(rep), coefficients)
    assertPasses(cur.verify_conservation(cur.current_j(rep, psi)))
    assertPasses(cur.verify_conservation(cur.current_s(rep, psi)))
