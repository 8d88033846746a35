import pytest

from hypothesis import given, settings, strategies as st

from kemmer import FieldError, RepresentationError
from kemmer.algebra import (
    IdentityReport,
    build_and_verify_omega,
    build_and_verify_spin_operators,
    build_representation,
    is_zero,
    mutate,
    trivial_representation,
    verify_adjoint_metric,
    verify_beta_projector,
    verify_e2_rewriting_matrix_part,
    verify_s_commutator,
    verify_spin0_strong,
    verify_spin1_characterization,
    verify_trilinear,
)
from .base import assertFails, assertPasses, rep0, rep1, reps

UNIFORM_B = [
    [0, 0, 0, 0],
    [0, 0, -2, 0],
    [0, 2, 0, 0],
    [0, 0, 0, 0],
]


@pytest.mark.parametrize("rep", reps, ids=["spin0", "spin1"])
def test_trilinear(rep):
    report = verify_trilinear(rep)
    assertPasses(report)
    assert len(report.checked) == 64


def test_unknown_spin():
    with pytest.raises(RepresentationError):
        build_representation(2)


def test_trivial_representation():
    assertPasses(verify_trilinear(trivial_representation()))


def test_spin0_strong():
    report = verify_spin0_strong(rep0)
    assertPasses(report)
    assert len(report.checked) == 128
    assert ("sym", 0, 1, 1) in report.checked

    report = verify_spin0_strong(rep1)
    assertFails(report)
    assert report.expect is False
    assert report.as_expected

    with pytest.raises(RepresentationError):
        verify_spin0_strong(rep1, strict=True)


def test_spin1_characterization():
    report = verify_spin1_characterization(rep1)
    assertPasses(report)
    assert len(report.checked) == 128

    report = verify_spin1_characterization(rep0)
    assertFails(report)
    assert report.as_expected

    with pytest.raises(RepresentationError):
        verify_spin1_characterization(rep0, strict=True)


def test_omega_spin0():
    omega, report = build_and_verify_omega(rep0)
    assertPasses(report)
    assert is_zero(omega)


def test_omega_spin1():
    omega, report = build_and_verify_omega(rep1)
    assertPasses(report)
    assert not is_zero(omega)

    tags = {i[0] for i in report.checked if isinstance(i, tuple)}
    assert tags == {"2.5", "2.6", "2.7"}
    assert "2.4" in report.checked


def test_spin_operators():
    assertPasses(build_and_verify_spin_operators(rep1))

    with pytest.raises(RepresentationError):
        build_and_verify_spin_operators(rep0)


@pytest.mark.parametrize("rep", reps, ids=["spin0", "spin1"])
def test_beta_projector(rep):
    report = verify_beta_projector(rep)
    assertPasses(report)
    assert any(n.startswith("affine solution space") for n in report.notes)


@pytest.mark.parametrize("rep", reps, ids=["spin0", "spin1"])
def test_adjoint_metric(rep):
    assertPasses(verify_adjoint_metric(rep))


@pytest.mark.parametrize("rep", reps, ids=["spin0", "spin1"])
def test_s_commutator(rep):
    assertPasses(verify_s_commutator(rep))


@pytest.mark.parametrize("rep", reps, ids=["spin0", "spin1"])
def test_e2_rewriting_is_informational(rep):
    report = verify_e2_rewriting_matrix_part(rep, UNIFORM_B)
    assert report.expect is None
    assert report.as_expected
    assert report.checked


def test_e2_rewriting_needs_antisymmetric_f():
    F = [row[:] for row in UNIFORM_B]
    F[0][1] = 1

    with pytest.raises(FieldError):
        verify_e2_rewriting_matrix_part(rep0, F)


def test_report():
    report = IdentityReport("9.9", "made up")
    report.record("a", 0).record("b", 1).record_value("c", 1e-3, 1e-6)
    data = report.to_dict()

    assert not report.passed
    assert data["checked"] == 3
    assert data["failure_count"] == 2
    assert [f["index"] for f in data["failures"]] == ["b", "c"]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(reps), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_e2_rewriting_random_field(rep, entries):
    F = [[0] * 4 for _ in range(4)]
    pairs = [(mu, nu) for mu in range(4) for nu in range(mu + 1, 4)]
    for (mu, nu), value in zip(pairs, entries):
        F[mu][nu], F[nu][mu] = value, -value

    report = verify_e2_rewriting_matrix_part(rep, F)
    assert report.expect is None
    assert report.checked


def _detected(rep):
    reports = [
        verify_trilinear(rep),
        verify_adjoint_metric(rep),
        verify_beta_projector(rep),
        build_and_verify_omega(rep)[1],
        verify_spin0_strong(rep) if rep.spin == 0 else verify_spin1_characterization(rep),
    ]
    return any(not r.passed for r in reports)


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(reps),
    st.integers(0, 3),
    st.integers(0, 9),
    st.integers(0, 9),
    st.sampled_from([2, -3, (1, 2)]),
)
def test_fault_injection(rep, mu, row, col, value):
    row, col = row % rep.dim, col % rep.dim
    assert _detected(mutate(rep, mu, row, col, value))
