import pytest

from hypothesis import given, settings, strategies as st

from kemmer import FieldError
from kemmer.exactmath import RING, poly
from kemmer.fields import (
    electric_vector,
    field_strength,
    gauge_transform,
    is_zero_field,
    magnetic_vector,
    make_field,
    maxwell_divergence,
    shipped_fields,
)

t, x, y, z = RING.gens[:4]


def test_zero():
    field = make_field("zero")
    assert is_zero_field(field)
    assert magnetic_vector(field) == (RING.zero,) * 3


def test_uniform_b():
    field = make_field("uniform-B", B=(3, 2))
    assert field.A == (0, 0, poly((3, 2)) * x, 0)
    assert magnetic_vector(field) == (0, 0, poly((3, 2)))
    assert electric_vector(field) == (0, 0, 0)


def test_uniform_e():
    field = make_field("uniform-E", e=-1, E=5)
    assert electric_vector(field) == (0, 0, poly(5))
    assert magnetic_vector(field) == (0, 0, 0)
    assert field.e == -1


def test_symmetric_b_is_a_gauge_transform():
    landau = make_field("uniform-B", B=2)
    symmetric = make_field("symmetric-B", B=2)

    moved = gauge_transform(landau, -x * y)
    assert moved.A == symmetric.A
    assert moved.F == landau.F == symmetric.F


@pytest.mark.parametrize("n", [1, 2, 3])
def test_null_wave(n):
    field = make_field("null-wave-poly", n=n)
    assert not is_zero_field(field)
    assert not any(maxwell_divergence(field.F))

    # E and B are equal and orthogonal
    E, B = electric_vector(field), magnetic_vector(field)
    assert sum((a * b for a, b in zip(E, B)), RING.zero) == 0
    assert sum((a * a for a in E), RING.zero) == sum((b * b for b in B), RING.zero)


def test_field_strength_antisymmetric():
    for field in shipped_fields():
        F = field_strength(field.A)
        for mu in range(4):
            for nu in range(4):
                assert F[mu][nu] == -F[nu][mu]


def test_not_source_free():
    with pytest.raises(FieldError):
        make_field("custom", A=(0, 0, x ** 2, 0))


def test_bad_params():
    with pytest.raises(FieldError):
        make_field("null-wave-poly", n=4)

    with pytest.raises(FieldError):
        make_field("custom", A=(0, 0))

    with pytest.raises(FieldError):
        make_field("radial")


def test_shipped_fields():
    kinds = [f.kind for f in shipped_fields()]
    assert kinds == ["zero", "uniform-B", "uniform-E", "null-wave-poly", "null-wave-poly"]
    assert [f.params.get("n") for f in shipped_fields()][3:] == [1, 2]


@settings(max_examples=25, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
            st.integers(-5, 5),
        ),
        min_size=1,
        max_size=4,
    ),
    st.sampled_from(shipped_fields()),
)
def test_gauge_invariance(monomials, field):
    chi = sum((c * t ** a * x ** b * y ** d * z ** f for a, b, d, f, c in monomials), RING.zero)
    moved = gauge_transform(field, chi)
    assert moved.F == field.F
