import csv

import numpy as np
import pytest

from sympy.polys.domains import QQ

from kemmer import ConvergenceError, OperatorError, SpectrumError
from kemmer import spectra as sp
from kemmer.fields import make_field
from kemmer.operators import lambda_op
from .base import assertFails, assertPasses, out_path, rep0, rep1, reps

zero = make_field("zero")


@pytest.mark.parametrize("rep, count", [(rep0, 1), (rep1, 3)], ids=["spin0", "spin1"])
def test_solve_free(rep, count):
    solutions = sp.solve_free(rep, 1, (1, 2, 0), label=3)
    assert len(solutions) == count
    assert {s.polarization for s in solutions} == set(range(count))
    assert all(s.energy.value == QQ(6) and s.sign == 1 for s in solutions)


@pytest.mark.parametrize("rep, count", [(rep0, 1), (rep1, 3)], ids=["spin0", "spin1"])
def test_momentum_space_nullspace(rep, count):
    # 5^2 = 3^2 + 4^2
    assert len(sp.momentum_space_nullspace(rep, 3, 5, (4, 0, 0))) == count
    assert len(sp.momentum_space_nullspace(rep, 3, 5, (0, 0, -4))) == count
    assert sp.momentum_space_nullspace(rep, 3, 6, (4, 0, 0)) == []


def test_magnetic_length():
    assert sp.magnetic_length(1, 4) == 0.5
    assert sp.magnetic_length(-1, 4) == 0.5

    with pytest.raises(SpectrumError):
        sp.magnetic_length(1, 0)

    with pytest.raises(SpectrumError):
        sp.landau_spectrum_spin0(1, 1, 0)


def test_unknown_methods():
    with pytest.raises(SpectrumError):
        sp.landau_spectrum_spin0(1, 1, 1, method="shooting")

    with pytest.raises(SpectrumError):
        sp.landau_spectrum_spin1(rep1, 1, 1, 1, method="oscillator-basis")

    with pytest.raises(SpectrumError):
        sp.make_grid("chebyshev", 16, 1.0)

    with pytest.raises(SpectrumError):
        sp.convergence_study("oscillator-basis", [16, 32])

    with pytest.raises(SpectrumError):
        sp.convergence_study("fourier-grid", [16, 32], spin=2)


def test_fourier_derivative():
    grid = sp.make_grid("fourier-grid", 32, 2 * np.pi)
    f = np.sin(3 * grid.x)

    assert np.allclose(sp.derivative_matrix(grid, 1) @ f, 3 * np.cos(3 * grid.x))
    assert np.allclose(sp.derivative_matrix(grid, 2) @ f, -9 * f)
    assert np.allclose(sp.derivative_matrix(grid, 0), np.eye(32))


def test_finite_difference_grid():
    grid = sp.make_grid("finite-difference", 9, 10.0)
    assert grid.h == 1.0
    assert grid.x[0] == -4.0 and grid.x[-1] == 4.0


def test_discretize_needs_energy():
    grid = sp.make_grid("fourier-grid", 16, 10.0)
    with pytest.raises(OperatorError):
        sp.discretize(lambda_op(rep0, zero, 1), grid)

    matrix = sp.discretize(lambda_op(rep0, zero, 1), grid, energy=1.0)
    assert matrix.shape == (5 * 16, 5 * 16)


def test_discretize_needs_separable_coefficients():
    grid = sp.make_grid("fourier-grid", 16, 10.0)
    field = make_field("null-wave-poly", n=1)

    with pytest.raises(OperatorError):
        sp.discretize(lambda_op(rep0, field, 1), grid, energy=1.0)


def test_oracles():
    assert sp.landau_oracle_spin0(1, 1, 2, p_z=1, n_max=2) == [4.0, 8.0, 12.0]

    levels = sp.landau_oracle_spin1(1, 1, 1, k_max=2)
    assert [level.E2 for level in levels] == pytest.approx(
        [1.0, 2.0, 2.438447, 4.0, 4.0, 6.0, 6.561553], abs=1e-6
    )
    assert levels[0] == (0, "single", 1.0)
    assert levels[1] == (0, "longitudinal", 2.0)
    assert sorted(level.branch for level in levels if level.E2 == 4.0) == ["longitudinal", "single"]


def test_lowest_spin1_levels():
    assert sp.lowest_oracle_spin1(1, 1, 1, 7) == pytest.approx(
        [1.0, 2.0, 2.438447, 4.0, 4.0, 4.0, 5.627719], abs=1e-6
    )

    # strong fields pull the lower roots of high blocks down
    wide = sorted(level.E2 for level in sp.landau_oracle_spin1(1, 1, 10, k_max=80))
    assert sp.lowest_oracle_spin1(1, 1, 10, 12) == pytest.approx(wide[:12])


def test_spin0_oscillator_basis():
    result = sp.landau_spectrum_spin0(2, 1, 3, p_z=1, n_max=4, method="oscillator-basis", size=32)
    oracle = sp.landau_oracle_spin0(2, 1, 3, p_z=1, n_max=4)

    assert result.route == "oscillator-basis"
    assert [level.n for level in result.levels] == list(range(5))
    assert np.allclose([level.E2 for level in result.levels], oracle)
    assert result.error < 1e-10


@pytest.mark.parametrize("B", [1, -2])
def test_spin0_fourier_grid(B):
    result = sp.landau_spectrum_spin0(1, 1, B, n_max=4, size=128)
    oracle = sp.landau_oracle_spin0(1, 1, B, n_max=4)
    assert sp.match_levels([level.E2 for level in result.levels], oracle, 1e-6) < 1e-6


def test_spin0_strict_convergence():
    with pytest.raises(ConvergenceError):
        sp.landau_spectrum_spin0(1, 1, 1, size=8, strict=True)


def test_symmetric_gauge_spin0():
    levels = sp.symmetric_gauge_spectrum_spin0(1, 1, 2, n_max=3)
    assert np.allclose(levels, sp.landau_oracle_spin0(1, 1, 2, n_max=3))


def test_match_levels():
    assert sp.match_levels([1.0, 3.0, 5.0, 9.0], [1.0, 3.0, 5.0], 1e-12) == 0.0
    assert sp.match_levels([1.0, 3.1], [1.0, 3.0], 1e-6) == pytest.approx(0.1 / 3)
    assert sp.match_levels([5.0, 1.0, 3.0], [3.0, 5.0, 1.0], 1e-12) == 0.0


def test_match_levels_counts_multiplicity():
    assert sp.match_levels([1.0, 3.0, 5.0], [1.0, 3.0, 3.0], 1e-6) == pytest.approx(2 / 3)
    assert sp.match_levels([1.0, 3.0, 3.0], [1.0, 3.0, 5.0], 1e-6) == pytest.approx(2 / 5)


def test_spin0_levels_carry_their_own_error():
    result = sp.landau_spectrum_spin0(1, 1, 1, n_max=4, size=128)
    errors = [level.error for level in result.levels]

    assert all(error >= 0 for error in errors)
    assert max(errors) == result.error
    assert errors[0] <= errors[-1]


def test_float_inputs():
    result = sp.landau_spectrum_spin0(1.0, 1.0, 0.5, n_max=2, size=128)
    oracle = sp.landau_oracle_spin0(1, 1, 0.5, n_max=2)
    assert sp.match_levels([level.E2 for level in result.levels], oracle, 1e-6) < 1e-6

    results = sp.landau_spectrum_spin1(
        rep1, 1.0, 1.0, 0.5, n_max=2, size=128, route_tolerance=1e-4
    )
    assert [r.route for r in results] == ["o_red-eigen", "fourth-order", "analytic-oracle"]


def _spin1(B, n_max=6):
    return sp.landau_spectrum_spin1(rep1, 1, 1, B, n_max=n_max, size=128, route_tolerance=1e-4)


def test_spin1_routes_agree():
    results = _spin1(1)
    assert [r.route for r in results] == ["o_red-eigen", "fourth-order", "analytic-oracle"]

    o_red, fourth, oracle = ([level.E2 for level in r.levels] for r in results)
    assert len(o_red) == len(fourth) == len(oracle) == 7
    assert oracle == pytest.approx([1.0, 2.0, 2.438447, 4.0, 4.0, 4.0, 5.627719], abs=1e-6)
    assert sp.match_levels(fourth, oracle, 1e-4) < 1e-4
    assert sp.match_levels(o_red, fourth, 1e-4) < 1e-4

    for level in results[1].levels:
        assert level.error <= results[1].error <= 1e-4


def test_spin1_projection_labels():
    fourth = _spin1(1)[1]
    labels = [level.spin_projection for level in fourth.levels]
    assert set(labels) <= {-1, 0, 1, "mixed"}

    # E^2 = m^2 is transverse, E^2 = m^2 + |eB| longitudinal
    assert labels[0] in (-1, 1)
    assert labels[1] == 0
    assert 0 in labels[3:6]

    for level in fourth.levels:
        if level.spin_projection != "mixed":
            assert level.expectation == pytest.approx(level.spin_projection, abs=1e-4)


def _projections_by_level(levels, sign=1):
    groups = {}
    for level in levels:
        groups.setdefault(round(level.E2, 5), []).append(sign * level.expectation)
    return {key: sorted(values) for key, values in groups.items()}


def test_spin1_splitting_is_odd_in_field():
    up, down = _spin1(1)[1], _spin1(-1)[1]
    assert [level.E2 for level in up.levels] == pytest.approx(
        [level.E2 for level in down.levels], rel=1e-8
    )

    flipped = _projections_by_level(down.levels, sign=-1)
    for key, values in _projections_by_level(up.levels).items():
        assert values == pytest.approx(flipped[key], abs=1e-4)

    assert up.levels[0].spin_projection == -down.levels[0].spin_projection


def test_spin0_state_residuals():
    field = make_field("uniform-B", B=1)
    state = sp.landau_state_spin0(rep0, 1, 1, 1, level=1, size=128)

    assert state.components.shape == (5, 128)
    assert state.energy ** 2 == pytest.approx(4.0, rel=1e-8)
    report = sp.check_residuals(rep0, field, 1, state)
    assertPasses(report)
    assert ("3.7", "e^2 rewriting") in report.checked


@pytest.mark.parametrize("level, energy2", [(0, 1.0), (1, 2.0)])
def test_spin1_state_residuals(level, energy2):
    field = make_field("uniform-B", B=1)
    state = sp.landau_state_spin1(rep1, 1, 1, 1, level=level, size=128)

    assert state.components.shape == (10, 128)
    assert state.energy ** 2 == pytest.approx(energy2, rel=1e-6)
    report = sp.check_residuals(rep1, field, 1, state)
    assertPasses(report)
    assert ("3.7", "e^2 rewriting") in report.checked


def test_residuals_fail_off_shell():
    field = make_field("uniform-B", B=1)
    state = sp.landau_state_spin1(rep1, 1, 1, 1, size=128)
    shifted = state._replace(energy=1.1 * state.energy)

    report = sp.check_residuals(rep1, field, 1, shifted)
    assertFails(report)
    assert "Lambda" in [index for index, _ in report.failures]


def test_residuals_of_zero_state():
    state = sp.landau_state_spin0(rep0, 1, 1, 1, size=32)
    empty = state._replace(components=np.zeros_like(state.components))

    with pytest.raises(SpectrumError):
        sp.check_residuals(rep0, make_field("uniform-B", B=1), 1, empty)


def test_write_csv():
    results = [sp.landau_spectrum_spin0(1, 1, 1, n_max=2, method="oscillator-basis", size=16)]
    path = out_path("levels.csv")
    sp.write_csv(results, path)

    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert tuple(rows[0]) == sp.CSV_COLUMNS
    assert len(rows) == 4
    assert rows[1][:3] == ["0", "oscillator-basis", "0"]
    assert float(rows[3][5]) == pytest.approx(6.0)
    assert float(rows[3][7]) == results[0].levels[2].error


@pytest.mark.slow
@pytest.mark.parametrize("method", sp.GRID_METHODS)
def test_spin0_default_resolution(method):
    result = sp.landau_spectrum_spin0(1, 1, 1, method=method, tolerance=1e-3)
    oracle = sp.landau_oracle_spin0(1, 1, 1)
    tolerance = 1e-6 if method == "fourier-grid" else 1e-2
    assert sp.match_levels([level.E2 for level in result.levels], oracle, tolerance) < tolerance


@pytest.mark.slow
def test_spin1_default_resolution():
    results = sp.landau_spectrum_spin1(rep1, 1, 1, 1, n_max=8)
    fourth, oracle = ([level.E2 for level in r.levels] for r in results[1:])
    assert len(fourth) == len(oracle) == 9
    assert sp.match_levels(fourth, oracle, 1e-6) < 1e-6


@pytest.mark.slow
def test_finite_difference_is_second_order():
    rows, order = sp.convergence_study("finite-difference", [100, 200, 400])
    assert [n for n, _ in rows] == [100, 200, 400]
    assert rows[0][1] > rows[1][1] > rows[2][1]
    assert order == pytest.approx(2, abs=0.2)


@pytest.mark.slow
def test_spin1_finite_difference_converges():
    rows, order = sp.convergence_study("finite-difference", [100, 200, 400], spin=1)
    assert rows[0][1] > rows[1][1] > rows[2][1]
    assert order > 1.5


@pytest.mark.parametrize("rep", reps, ids=["spin0", "spin1"])
def test_free_solutions_carry_energy_symbol(rep):
    (first, *_) = sp.solve_free(rep, 2, (0, 0, 0), negative=True)
    assert first.sign == -1
    assert first.energy.value == QQ(4)
