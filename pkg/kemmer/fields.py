"""External electromagnetic fields with polynomial four-potentials."""

import logging

from collections import namedtuple
from itertools import product

from kemmer import FieldError
from kemmer.algebra import INDICES, METRIC, levi_civita
from kemmer.exactmath import COORDS, RING, poly, rational, t, x, y, z

__all__ = [
    "FieldConfig",
    "KINDS",
    "make_field",
    "magnetic_vector",
    "electric_vector",
    "gauge_transform",
    "shipped_fields",
]

logger = logging.getLogger(__name__)

KINDS = ("zero", "uniform-B", "symmetric-B", "uniform-E", "null-wave-poly", "custom")

FieldConfig = namedtuple("FieldConfig", ["kind", "A", "F", "e", "params"])
FieldConfig.__doc__ = """Four-potential ``A^mu`` (upper index), field strength
``F^{mu nu}`` and the charge ``e``."""


def partial_upper(p, mu):
    """``d^mu p`` with the metric ``diag(1, -1, -1, -1)``."""
    return p.diff(COORDS[mu]) * METRIC[mu]


def lower(A):
    return tuple(a * METRIC[mu] for mu, a in enumerate(A))


def field_strength(A):
    return tuple(
        tuple(partial_upper(A[nu], mu) - partial_upper(A[mu], nu) for nu in INDICES)
        for mu in INDICES
    )


def maxwell_divergence(F):
    """``d_mu F^{mu nu}`` for each ``nu``."""
    return tuple(
        sum((F[mu][nu].diff(COORDS[mu]) for mu in INDICES), RING.zero) for nu in INDICES
    )


def _potential(kind, params):
    if kind == "zero":
        return (RING.zero,) * 4
    if kind == "uniform-B":
        B = poly(rational(params.get("B", 1)))
        return (RING.zero, RING.zero, B * x, RING.zero)
    if kind == "symmetric-B":
        half = poly(rational(params.get("B", 1))) * poly(rational((1, 2)))
        return (RING.zero, -half * y, half * x, RING.zero)
    if kind == "uniform-E":
        E = poly(rational(params.get("E", 1)))
        return (-E * z, RING.zero, RING.zero, RING.zero)
    if kind == "null-wave-poly":
        n = int(params.get("n", 1))
        if n not in (1, 2, 3):
            raise FieldError(f"Null wave profile degree {n} not in 1..3")
        amplitude = poly(rational(params.get("amplitude", 1)))
        # A_mu = eps_mu (t - z)^n with eps = (0, 1, 0, 0), stored with upper index
        return (RING.zero, -amplitude * (t - z) ** n, RING.zero, RING.zero)
    if kind == "custom":
        A = params.get("A")
        if A is None or len(A) != 4:
            raise FieldError("Custom fields need four potential components")
        return tuple(poly(a) for a in A)

    raise FieldError(f"Unknown field kind {kind!r}")


def make_field(kind, e=1, **params):
    """Build a field configuration.

    :param kind: one of :data:`KINDS`
    :param e: rational charge
    :raises FieldError: on unknown kinds, bad parameters or a potential that
        does not solve the free Maxwell equations
    """
    A = _potential(kind, params)
    F = field_strength(A)

    bad = [nu for nu, d in enumerate(maxwell_divergence(F)) if d]
    if bad:
        raise FieldError(f"{kind} field is not source free (d_mu F^mu{bad[0]} != 0)")

    logger.debug("Built %s field with params %s", kind, params)
    return FieldConfig(kind, A, F, rational(e), dict(params))


def is_zero_field(field):
    return not any(any(row) for row in field.F) and not any(field.A)


def magnetic_vector(field):
    """``B^k = -(1/2) eps_kij F^{ij}``."""
    half = poly(rational((1, 2)))
    return tuple(
        -half
        * sum(
            (field.F[i][j] * levi_civita(k, i, j) for i, j in product(range(1, 4), repeat=2)),
            RING.zero,
        )
        for k in range(1, 4)
    )


def electric_vector(field):
    """``E^k = F^{k0}``."""
    return tuple(field.F[k][0] for k in range(1, 4))


def gauge_transform(field, chi):
    """``A^mu -> A^mu - d^mu chi`` for a polynomial gauge function ``chi``."""
    chi = poly(chi)
    A = tuple(a - partial_upper(chi, mu) for mu, a in enumerate(field.A))
    return FieldConfig(field.kind, A, field_strength(A), field.e, dict(field.params))


def shipped_fields(e=1, B=2, E=1):
    """The sweep set used by the identity suites."""
    return [
        make_field("zero", e),
        make_field("uniform-B", e, B=B),
        make_field("uniform-E", e, E=E),
        make_field("null-wave-poly", e, n=1),
        make_field("null-wave-poly", e, n=2),
    ]
