r"""
Reduction of the first order system to its physical components.

The projector ``beta_0^2`` picks the components that carry dynamics (``psi_4,
psi_5`` for spin-0, ``P`` and ``Q`` for spin-1). On that range the time
evolution is generated by the reduced operator ``O_red``, built here in three
equivalent forms:

``raw``
    ``beta_0^2 H beta_0^2 - (1/m) beta_0^2 H beta_i D^i beta_0^2``
``compact``
    ``-beta_0 m + e A_0 beta_0^2 + (1/m) beta_0 beta_i beta_j D^i D^j``
``spin-form`` (spin-1 only)
    ``-beta_0 m + e A_0 + (1/2m) beta_0 (1 + xi) D^i D_i
    + (1/m) beta_0 xi (S_j D^j)^2 + (e/2m) beta_0 (1 + xi) S_k B^k``

Every form is right-multiplied by ``beta_0^2``.
"""

import logging

from collections import namedtuple
from itertools import product

from sympy.polys.domains import QQ_I

from kemmer import FieldError, OperatorError, RepresentationError
from kemmer.algebra import (
    SPATIAL,
    IdentityReport,
    eye,
    levi_civita,
    mul,
    projector,
)
from kemmer.exactmath import RING, ExpSum, I, mat_vec, poly, rational
from kemmer.fields import is_zero_field, magnetic_vector, shipped_fields
from kemmer.operators import (
    DiffOperator,
    box,
    const,
    constraint_op,
    covariant,
    field_label,
    hamilton_op,
    inverse,
    lambda_op,
    multiplier_sum,
    pmatrix,
    sweep,
    test_basis,
    troublesome_term,
)

__all__ = [
    "FORMS",
    "ReducedOperator",
    "project_physical",
    "verify_projector_identities",
    "build_o_red",
    "verify_form_equivalence",
    "verify_troublesome_term_vanishes",
    "spin0_lift",
    "spin0_lift_and_reduce",
    "verify_reduced_evolution",
    "verify_spin1_constraint_rows",
    "reduced_blocks",
    "build_fourth_order",
    "compare_fourth_order",
    "troublesome_survey",
]

logger = logging.getLogger(__name__)

FORMS = ("raw", "compact", "spin-form")

P_BLOCK = (0, 1, 2)
M_BLOCK = (3, 4, 5)
Q_BLOCK = (6, 7, 8)
S_COMPONENT = 9


class ReducedOperator(namedtuple("ReducedOperator", ["form", "spin", "operator"])):
    """``O_red`` in one of :data:`FORMS`, acting on the range of ``beta_0^2``."""

    __slots__ = ()

    def apply(self, psi):
        return self.operator.apply(psi)

    def block(self, rows, cols):
        return self.operator.block(rows, cols)


def project_physical(rep, psi):
    """``beta_0^2 psi``."""
    b00 = projector(rep)
    return psi.map_amplitudes(lambda amp: mat_vec(b00, amp))


def _words(length):
    return product(SPATIAL, repeat=length)


def verify_projector_identities(rep, max_length=4):
    """Odd spatial words vanish between two projectors, even words commute
    with the projector."""
    report = IdentityReport("4.3", "beta_0^2 sandwiches of spatial beta words")
    b = rep.beta
    b00 = projector(rep)

    for length in range(1, max_length + 1):
        for word in _words(length):
            w = mul(*(b[i] for i in word))
            if length % 2:
                report.record(word, mul(b00, w, b00))
            else:
                report.record(word + ("left",), mul(b00, w).sub(mul(w, b00)))
                report.record(word + ("both",), mul(b00, w).sub(mul(b00, w, b00)))
    return report


def _raw(rep, field, m, troublesome=True):
    dim = rep.dim
    h = hamilton_op(rep, field, m, troublesome=troublesome)
    b00 = const(projector(rep))

    shift = DiffOperator.zero(dim)
    for i in SPATIAL:
        shift = shift + const(rep.beta[i]) @ covariant(i, field, dim)
    return b00 @ h @ (DiffOperator.identity(dim) - shift.scale(inverse(m))) @ b00


def _compact(rep, field, m):
    dim = rep.dim
    b = rep.beta
    b00 = projector(rep)

    out = const(b[0]).scale(-m)
    out = out + DiffOperator.multiplier(multiplier_sum([(poly(field.e) * field.A[0], b00)], dim))
    for i, j in product(SPATIAL, repeat=2):
        term = const(mul(b[0], b[i], b[j])) @ covariant(i, field, dim) @ covariant(j, field, dim)
        out = out + term.scale(inverse(m))
    return out @ const(b00)


def _spin_form(rep, field, m):
    if rep.spin != 1:
        raise OperatorError("The spin-form of O_red needs the spin-1 representation")

    dim = rep.dim
    b0 = rep.beta[0]
    one_xi = eye(dim).add(rep.xi)
    half = inverse(2 * m)

    out = const(b0).scale(-m)
    out = out + DiffOperator.multiplier(poly(field.e) * field.A[0], dim)

    # D^i D_i = -sum_i D^i D^i
    laplace = DiffOperator.zero(dim)
    for i in SPATIAL:
        laplace = laplace - covariant(i, field, dim) @ covariant(i, field, dim)
    out = out + (const(mul(b0, one_xi)) @ laplace).scale(half)

    spin_d = DiffOperator.zero(dim)
    for j in SPATIAL:
        spin_d = spin_d + const(rep.S[j - 1]) @ covariant(j, field, dim)
    out = out + (const(mul(b0, rep.xi)) @ spin_d @ spin_d).scale(inverse(m))

    B = magnetic_vector(field)
    spin_b = multiplier_sum([(B[k], rep.S[k]) for k in range(3)], dim)
    out = out + (const(mul(b0, one_xi)) @ DiffOperator.multiplier(spin_b)).scale(
        poly(field.e) * poly(half)
    )
    return out @ const(projector(rep))


def build_o_red(rep, field, m, form="compact", troublesome=True):
    """Build ``O_red``.

    :param form: one of :data:`FORMS`
    :param troublesome: keep the ``(ie/2m) F (b b b + b g)`` term of ``H``
        (only the raw form starts from ``H``)
    :raises OperatorError: for an unknown form or the spin-form on spin-0
    """
    m = rational(m)
    if form == "raw":
        op = _raw(rep, field, m, troublesome)
    elif form == "compact":
        op = _compact(rep, field, m)
    elif form == "spin-form":
        op = _spin_form(rep, field, m)
    else:
        raise OperatorError(f"Unknown O_red form {form!r}")

    logger.debug("Built %s O_red for spin-%s with %d terms", form, rep.spin, len(op.terms))
    return ReducedOperator(form, rep.spin, op)


def range_basis(rep, degree=2):
    return test_basis(rep.dim, degree, components=rep.projected)


def _compare(report, basis, a, b):
    return sweep(report, basis, a.operator, b.operator)


def verify_form_equivalence(rep, field, m, degree=2):
    """Raw against compact ("4.4") and, for spin-1, compact against the
    spin-form ("4.11") on the range of ``beta_0^2``."""
    basis = range_basis(rep, degree)
    raw = build_o_red(rep, field, m, "raw")
    compact = build_o_red(rep, field, m, "compact")

    reports = [
        _compare(
            IdentityReport("4.4", f"raw O_red = compact O_red [{field_label(field)}]"),
            basis,
            raw,
            compact,
        )
    ]

    if rep.spin == 1:
        spin = build_o_red(rep, field, m, "spin-form")
        reports.append(
            _compare(
                IdentityReport("4.11", f"compact O_red = spin-form [{field_label(field)}]"),
                basis,
                compact,
                spin,
            )
        )
    return reports


def verify_troublesome_term_vanishes(rep, field, m, degree=2):
    report = IdentityReport(
        "4.2", f"O_red does not see the troublesome term [{field_label(field)}]"
    )
    full = build_o_red(rep, field, m, "raw", troublesome=True)
    bare = build_o_red(rep, field, m, "raw", troublesome=False)
    _compare(report, range_basis(rep, degree), full, bare)

    if not is_zero_field(field):
        kept = not troublesome_term(rep, field, m).is_zero()
        report.note(
            "troublesome term is nonzero in H" if kept else "troublesome term is zero in H"
        )
    return report


def spin0_lift(field, m, phi5):
    """Five component wave function with ``psi_i = -(1/m) D^i phi5`` and
    ``psi_4 = (i/m) D^0 phi5``."""
    if phi5.dim != 1:
        raise RepresentationError("The spin-0 lift takes a scalar wave function")

    m = rational(m)
    parts = [covariant(i, field, 1).apply(phi5).scale(-inverse(m)) for i in SPATIAL]
    parts.append(covariant(0, field, 1).apply(phi5).scale(poly(I) * poly(inverse(m))))
    parts.append(phi5)
    return ExpSum.stack(parts)


def _ratio(a, b):
    """Gaussian rational ``c`` with ``a == c b``, or ``None``."""
    if a.is_zero():
        return QQ_I.zero
    if b.is_zero():
        return None

    (key, (amp,)) = b.sorted_terms()[0]
    monom, coeff = amp.terms()[0]
    other = a.terms.get(key)
    if other is None:
        return None
    c = other[0].get(monom, QQ_I.zero) / coeff
    return c if (a - b.scale(c)).is_zero() else None


def spin0_lift_and_reduce(rep, field, m, phi5):
    """Every row of ``Lambda psi`` is a fixed multiple of the Klein-Gordon
    residual ``(D^a D_a - m^2) phi5``."""
    if rep.spin != 0:
        raise RepresentationError("The Klein-Gordon reduction needs spin-0")

    m = rational(m)
    report = IdentityReport("3.11", f"spin-0 lift reduces to Klein-Gordon [{field_label(field)}]")
    psi = spin0_lift(field, m, phi5)
    residual = lambda_op(rep, field, m).apply(psi)
    kg = (box(field, 1) - DiffOperator.identity(1).scale(m * m)).apply(phi5)

    for k in range(rep.dim):
        row = residual.component(k)
        c = _ratio(row, kg)
        if c is None:
            report.record(k + 1, row)
        else:
            report.record(k + 1, 0)
            if c:
                report.note(f"row {k + 1} = ({c.x} + {c.y}i) x Klein-Gordon residual")

    if kg.is_zero():
        report.note("phi5 solves the Klein-Gordon equation")
    return report


def verify_reduced_evolution(rep, field, m, solutions, form="compact"):
    """``i d_0 (beta_0^2 psi) = O_red (beta_0^2 psi)`` on exact solutions."""
    report = IdentityReport("4.2", f"reduced evolution on solutions [{field_label(field)}]")
    o_red = build_o_red(rep, field, m, form)
    dt = DiffOperator.partial(0, rep.dim).scale(I)

    for k, psi in enumerate(solutions):
        chi = project_physical(rep, psi)
        report.record(k, dt.apply(chi) - o_red.apply(chi))
    return report


def _row_operator(dim, entries):
    """Single-row operator from ``{column: DiffOperator on one component}``."""
    out = DiffOperator.zero((1, dim))
    for col, op in entries.items():
        for alpha, coeff in op.terms.items():
            out = out + DiffOperator((1, dim), {alpha: _place(coeff, col, dim)})
    return out


def _place(coeff, col, dim):
    value = coeff.to_dod().get(0, {}).get(0, RING.zero)
    return pmatrix({(0, col): value}, (1, dim))


def verify_spin1_constraint_rows(rep, field, m, basis=None):
    """The scalar row gives ``m psi_s = i D^j psi_Pj`` and the magnetic rows
    give ``m psi_Ma = -eps_{a j q} D^j psi_Qq``; rows on ``P`` and ``Q`` are
    empty."""
    if rep.spin != 1:
        raise RepresentationError("Constraint rows are labelled for spin-1")

    m = rational(m)
    report = IdentityReport("3.8", f"spin-1 constraint rows [{field_label(field)}]")
    dim = rep.dim
    c = constraint_op(rep, field, m)
    d = {j: covariant(j, field, 1) for j in SPATIAL}
    mass = DiffOperator.identity(1).scale(m)

    expected = {
        S_COMPONENT: _row_operator(
            dim, {S_COMPONENT: mass, **{j - 1: d[j].scale(-I) for j in SPATIAL}}
        )
    }
    for a in range(3):
        entries = {M_BLOCK[a]: mass}
        for j, q in product(SPATIAL, range(3)):
            eps = levi_civita(a + 1, j, q + 1)
            if eps:
                current = entries.get(Q_BLOCK[q], DiffOperator.zero(1))
                entries[Q_BLOCK[q]] = current + d[j].scale(eps)
        expected[M_BLOCK[a]] = _row_operator(dim, entries)

    for row in range(dim):
        actual = c.block([row], range(dim))
        target = expected.get(row, DiffOperator.zero((1, dim)))
        report.record(row + 1, actual - target)

    if basis is not None:
        for label, psi in basis.elements:
            out = c.apply(psi)
            for row in P_BLOCK + Q_BLOCK:
                report.record((row + 1, label), out.component(row))

    report.note(
        "the first printed line of the constraint list is not a literal row of "
        "this representation; psi_s follows from the scalar row"
    )
    return report


def reduced_blocks(rep, field, m, form=None):
    """``O_red`` split into blocks on the range of ``beta_0^2``.

    Spin-0 returns the 2 x 2 system on ``(psi_4, psi_5)``; spin-1 returns the
    ``PP, PQ, QP, QQ`` blocks of the six component system.
    """
    form = form or ("spin-form" if rep.spin == 1 else "compact")
    o_red = build_o_red(rep, field, m, form)

    if rep.spin == 0:
        return {"range": o_red.block(rep.projected, rep.projected)}

    return {
        "PP": o_red.block(P_BLOCK, P_BLOCK),
        "PQ": o_red.block(P_BLOCK, Q_BLOCK),
        "QP": o_red.block(Q_BLOCK, P_BLOCK),
        "QQ": o_red.block(Q_BLOCK, Q_BLOCK),
        "range": o_red.block(P_BLOCK + Q_BLOCK, P_BLOCK + Q_BLOCK),
    }


def _t_matrices(rep):
    return [s.extract(list(P_BLOCK), list(P_BLOCK)) for s in rep.S]


def _printed_fourth_order(rep, field, m):
    dim = 3
    T = _t_matrices(rep)
    e = poly(field.e)
    inv_m = inverse(m)
    inv_m2 = inv_m * inv_m

    d_up = {i: covariant(i, field, dim) for i in SPATIAL}
    d_low = {i: d_up[i].scale(-1) for i in SPATIAL}

    laplace = DiffOperator.zero(dim)
    for i in SPATIAL:
        laplace = laplace + d_up[i] @ d_low[i]

    t_d = DiffOperator.zero(dim)
    t_d_up = DiffOperator.zero(dim)
    for i in SPATIAL:
        t_d = t_d + const(T[i - 1]) @ d_low[i]
        t_d_up = t_d_up + const(T[i - 1]) @ d_up[i]

    B = magnetic_vector(field)
    t_b = DiffOperator.multiplier(multiplier_sum([(B[k], T[k]) for k in range(3)], dim))

    out = DiffOperator.identity(dim).scale(m * m) - laplace
    out = out - t_b.scale(e * poly(inv_m))
    out = out - (t_d @ t_d @ laplace).scale(inv_m2)
    out = out - (t_b @ t_b @ t_b @ t_b).scale(inv_m2)
    out = out - (t_d_up @ t_d_up @ t_b).scale(e * poly(inv_m2))
    return out


def build_fourth_order(rep, field, m, printed=False):
    """Operator ``K`` on the physical triple with ``E^2 chi = K chi``.

    The derived form is ``O_PQ o O_QP`` from the spin-form blocks, valid when
    ``A_0 = 0`` so that the diagonal blocks vanish. ``printed`` builds the
    expanded form as it is usually printed instead.

    :raises FieldError: when ``A_0 != 0``
    """
    if rep.spin != 1:
        raise RepresentationError("The fourth order equation is a spin-1 result")
    if field.A[0]:
        raise FieldError("The fourth order reduction needs A_0 = 0")

    m = rational(m)
    if printed:
        return _printed_fourth_order(rep, field, m)

    blocks = reduced_blocks(rep, field, m, "spin-form")
    if not (blocks["PP"].is_zero() and blocks["QQ"].is_zero()):
        raise FieldError("O_red has diagonal blocks; the P/Q elimination does not apply")
    return blocks["PQ"] @ blocks["QP"]


def compare_fourth_order(rep, field, m, degree=2):
    """Derived against printed fourth order operator; informational only."""
    report = IdentityReport(
        "4.12", f"derived vs printed fourth order operator [{field_label(field)}]", expect=None
    )
    derived = build_fourth_order(rep, field, m)
    printed = build_fourth_order(rep, field, m, printed=True)
    sweep(report, test_basis(3, degree), derived, printed)

    difference = derived - printed
    report.note(
        "derived and printed forms agree"
        if difference.is_zero()
        else f"derived - printed has {len(difference.terms)} derivative orders, "
        f"highest order {difference.order}"
    )
    return report


def troublesome_survey(rep, m, degree=1, e=1):
    """Troublesome-term check over every shipped field."""
    return [
        verify_troublesome_term_vanishes(rep, field, m, degree) for field in shipped_fields(e)
    ]

