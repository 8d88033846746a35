import pytest

from kemmer import DimensionError, OperatorError
from kemmer import operators as ops
from kemmer.exactmath import RING, ExpSum
from kemmer.fields import make_field
from kemmer.operators import DiffOperator
from kemmer.spectra import solve_free
from .base import (
    assertFails,
    assertPasses,
    basis_for,
    fields,
    null_wave,
    rep0,
    rep1,
    reps,
    uniform_b,
)

t, x, y, z = RING.gens[:4]

field_ids = [ops.field_label(f) for f in fields]
spin_ids = ["spin0", "spin1"]


def test_leibniz():
    dx = DiffOperator.partial(1, 1)
    composed = dx @ DiffOperator.multiplier(x, 1)

    # d_x o x = x d_x + 1
    assert composed.order == 1
    assert set(composed.terms) == {(0, 1, 0, 0), (0, 0, 0, 0)}
    psi = ExpSum.plane_wave([y ** 2])
    assert composed.apply(psi) == ExpSum.plane_wave([y ** 2])


def test_apply_dimension():
    with pytest.raises(DimensionError):
        DiffOperator.identity(5).apply(ExpSum.plane_wave([1, 1]))

    with pytest.raises(DimensionError):
        DiffOperator.identity(5) + DiffOperator.identity(10)


def test_block():
    lam = ops.lambda_op(rep1, make_field("zero"), 1)
    block = lam.block([0, 1, 2], [6, 7, 8])
    assert block.shape == (3, 3)
    assert block.order == 1


def test_basis_size():
    basis = ops.test_basis(1, 2)
    assert len(basis.elements) == 15
    assert basis.elements[0][0] == (1, (0, 0, 0, 0))

    restricted = ops.test_basis(10, 1, components=[0, 9])
    assert len(restricted.elements) == 10
    assert {label[0] for label, _ in restricted.elements} == {1, 10}


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
def test_constraint_identity(rep):
    assertPasses(ops.verify_constraint_identity(rep))


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("field", fields, ids=field_ids)
def test_covariant_commutator(rep, field):
    assertPasses(ops.verify_covariant_commutator(rep, field, basis_for(rep)))


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
def test_free_factorization(rep):
    assertPasses(ops.verify_free_factorization(rep, 1, basis_for(rep)))


@pytest.mark.slow
def test_free_factorization_spin1_full_basis():
    report = ops.verify_free_factorization(rep1, 2, ops.test_basis(rep1.dim, 3))
    assertPasses(report)
    assert len(report.checked) == 350


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("field", fields, ids=field_ids)
def test_factorization(rep, field):
    assertPasses(ops.verify_factorization(rep, field, 1, basis_for(rep)))


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("field", fields, ids=field_ids)
def test_commutator_57(rep, field):
    assertPasses(ops.verify_commutator_57(rep, field, (3, 2), basis_for(rep)))


def test_commutator_57_nonconstant_field():
    report = ops.verify_commutator_57(rep0, null_wave, 1, basis_for(rep0))
    assert "right hand side is nonzero" in report.notes


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("field", fields, ids=field_ids)
def test_commutator_d2(rep, field):
    assertPasses(ops.verify_commutator_d2(rep, field, 1, basis_for(rep)))


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("field", fields, ids=field_ids)
def test_omega2(rep, field):
    assertPasses(ops.verify_omega2(rep, field, 1, basis_for(rep)))


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("field", fields, ids=field_ids)
def test_aux_identities(rep, field):
    report = ops.verify_aux_identities_6(rep, field, 1, basis_for(rep))
    assertPasses(report)
    assert ("6.3",) in report.checked


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
@pytest.mark.parametrize("field", fields, ids=field_ids)
def test_equation_class_expanded(rep, field):
    assertPasses(ops.verify_equation_class(rep, field, 1, basis_for(rep), printed=False))


def test_equation_class_printed():
    field = make_field("uniform-B", B=2)
    report = ops.verify_equation_class(rep0, field, 1, basis_for(rep0), printed=True)
    assertFails(report)
    assert report.expect is False
    assert report.as_expected

    zero = make_field("zero")
    assertPasses(ops.verify_equation_class(rep0, zero, 1, basis_for(rep0), printed=True))


def test_omega1_zero_field():
    field = make_field("zero")
    omega1 = ops.omega1_op(rep1, field, 2)
    expected = ops.box(field, rep1.dim) - DiffOperator.identity(rep1.dim).scale(4)
    assert (omega1 - expected).is_zero()


def test_omega1_derivative_mode():
    with pytest.raises(OperatorError):
        ops.omega1_op(rep0, null_wave, 1, derivative="wave")


@pytest.mark.parametrize("field", fields, ids=field_ids)
def test_field_derivative_term_spin0(field):
    assert not any(ops.field_derivative_term(rep0, field).iter_values())


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
def test_first_order_relation_on_free_solutions(rep):
    zero = make_field("zero")
    psi = [s.psi for s in solve_free(rep, 1, (1, 0, 2))]
    psi += [s.psi for s in solve_free(rep, 1, (0, 1, 0), negative=True)]
    assertPasses(ops.verify_eq33_on_solutions(rep, zero, 1, psi))


@pytest.mark.parametrize("rep", reps, ids=spin_ids)
def test_lambda_annihilates_free_solutions(rep):
    lam = ops.lambda_op(rep, make_field("zero"), 1)
    for solution in solve_free(rep, 1, (2, -1, 1)):
        assert lam.apply(solution.psi).is_zero()


full_basis1 = ops.test_basis(rep1.dim, 3)

spin1_sweeps = {
    "5.4": lambda field, basis: ops.verify_factorization(rep1, field, 1, basis),
    "5.7": lambda field, basis: ops.verify_commutator_57(rep1, field, (3, 2), basis),
    "5.9": lambda field, basis: ops.verify_equation_class(rep1, field, 1, basis, printed=False),
    "6.1": lambda field, basis: ops.verify_commutator_d2(rep1, field, 1, basis),
    "6.4": lambda field, basis: ops.verify_aux_identities_6(rep1, field, 1, basis),
    "6.6": lambda field, basis: ops.verify_omega2(rep1, field, 1, basis),
}


@pytest.mark.slow
@pytest.mark.parametrize("field", [uniform_b, null_wave], ids=["uniform-B", "null-wave-2"])
@pytest.mark.parametrize("identity", sorted(spin1_sweeps))
def test_spin1_identities_full_basis(identity, field):
    report = spin1_sweeps[identity](field, full_basis1)
    assertPasses(report)
    assert len(report.checked) >= 350
