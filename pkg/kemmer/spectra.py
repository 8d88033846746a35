r"""
Free solutions and Landau-level spectra.

This is the only module that rounds. Exact operators from
:mod:`kemmer.operators` and :mod:`kemmer.reduction` are instantiated on a one
dimensional grid in ``x`` after separating ``exp(i p_y y + i p_z z - i E t)``
in the Landau gauge ``A = (0, 0, B x, 0)``:

.. code-block:: text

    d_t -> -iE    d_y -> i p_y    d_z -> i p_z    d_x -> derivative matrix

Grids are either periodic with a spectral (Fourier) derivative or Dirichlet
with second order central differences. Lengths are measured in magnetic
lengths ``1 / sqrt(|eB|)``.
"""

import csv
import logging

from collections import namedtuple
from itertools import product

import numpy as np

from scipy import linalg
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from kemmer import ConvergenceError, OperatorError, RouteDisagreementError, SpectrumError
from kemmer.algebra import (
    INDICES,
    SPATIAL,
    IdentityReport,
    build_representation,
    levi_civita,
)
from kemmer.exactmath import (
    RING,
    EnergySymbol,
    ExpSum,
    I,
    evaluate_poly,
    poly,
    rational,
    to_complex,
)
from kemmer.fields import make_field
from kemmer.operators import (
    DiffOperator,
    constraint_op,
    covariant,
    e2_rewriting_ops,
    eq33_op,
    field_label,
    lambda_op,
)
from kemmer.reduction import P_BLOCK, build_fourth_order, reduced_blocks

__all__ = [
    "METHODS",
    "FreeSolution",
    "Grid",
    "Level",
    "SpectrumResult",
    "NumericalState",
    "solve_free",
    "momentum_space_nullspace",
    "make_grid",
    "derivative_matrix",
    "discretize",
    "landau_oracle_spin0",
    "landau_oracle_spin1",
    "lowest_oracle_spin1",
    "match_levels",
    "spin_projections",
    "landau_spectrum_spin0",
    "landau_spectrum_spin1",
    "symmetric_gauge_spectrum_spin0",
    "landau_state_spin0",
    "landau_state_spin1",
    "check_residuals",
    "convergence_study",
    "write_csv",
]

logger = logging.getLogger(__name__)

METHODS = ("oscillator-basis", "fourier-grid", "finite-difference")
GRID_METHODS = METHODS[1:]

DEFAULT_SIZE = 512
DEFAULT_BOX = 40
DEFAULT_TOLERANCE = 1e-6
DEFAULT_ROUTE_TOLERANCE = 1e-5

CSV_COLUMNS = ("spin", "route", "n", "p_z", "spin_projection", "E2", "E", "est_error")

FreeSolution = namedtuple(
    "FreeSolution", ["momentum", "energy", "polarization", "spin", "sign", "psi"]
)
Grid = namedtuple("Grid", ["method", "x", "h", "length"])
Level = namedtuple(
    "Level",
    ["n", "p_z", "spin_projection", "E2", "E", "error", "expectation"],
    defaults=(None, None),
)
OracleLevel = namedtuple("OracleLevel", ["k", "branch", "E2"])
SpectrumResult = namedtuple("SpectrumResult", ["spin", "route", "levels", "size", "error"])
NumericalState = namedtuple(
    "NumericalState", ["spin", "grid", "components", "energy", "p_y", "p_z"]
)


# -- free solutions --------------------------------------------------------------


def _free_amplitude(rep, m, p, energy):
    """Amplitude solving ``(beta_mu p^mu + m) v = 0``; ``energy`` may be a polynomial."""
    inv = rational(m) ** -1
    if rep.spin == 0:
        return [[-poly(k * inv) for k in p] + [poly(I) * energy * poly(inv), poly(1)]]

    p2 = sum(k * k for k in p)
    amplitudes = []
    for a in range(3):
        u = [int(a == k) for k in range(3)]
        pu = p[a]
        cross = [p[1] * u[2] - p[2] * u[1], p[2] * u[0] - p[0] * u[2], p[0] * u[1] - p[1] * u[0]]
        amp = [poly(I) * poly(rational(m) * u[k] + (p2 * u[k] - p[k] * pu) * inv) for k in range(3)]
        amp += [-energy * poly(c * inv) for c in cross]
        amp += [energy * u[k] for k in range(3)]
        amp.append(poly(-pu))
        amplitudes.append(amp)
    return amplitudes


def solve_free(rep, m, n=(0, 0, 0), kappa=1, label=0, negative=False):
    """Exact free plane wave solutions with lattice momentum ``kappa n``.

    One solution for spin-0, three polarisations for spin-1. The energy is
    the symbol ``E_label`` with ``E_label**2 = m**2 + |p|**2``; ``negative``
    gives the negative frequency partners.
    """
    m = rational(m)
    kappa = rational(kappa)
    p = [kappa * rational(k) for k in n]
    energy = EnergySymbol(label, m * m + sum(k * k for k in p))
    sign = -1 if negative else 1
    frequency = energy.gen * sign

    solutions = []
    for polarization, amp in enumerate(_free_amplitude(rep, m, p, frequency)):
        psi = ExpSum.plane_wave(
            amp, tuple(n), frequency, relations={label: energy.relation}, kappa=kappa
        )
        solutions.append(FreeSolution(tuple(n), energy, polarization, rep.spin, sign, psi))

    logger.debug("Built %d free spin-%s solutions at n=%s", len(solutions), rep.spin, n)
    return solutions


def momentum_space_nullspace(rep, m, energy, p):
    """Exact nullspace of ``beta_mu p^mu + m`` at a rational energy.

    :returns: list of amplitude vectors; empty off the mass shell
    """
    values = [rational(energy)] + [rational(k) for k in p]
    matrix = DomainMatrix.eye(rep.dim, QQ_I).scalarmul(QQ_I(rational(m), 0))
    for mu in INDICES:
        matrix = matrix.add(rep.beta[mu].scalarmul(QQ_I(values[mu], 0)))
    return [tuple(row) for row in matrix.to_dense().nullspace().to_list()]


# -- discretisation ---------------------------------------------------------------


def magnetic_length(e, B):
    eb = abs(float(e) * float(B))
    if eb == 0:
        raise SpectrumError("Landau levels need e B != 0")
    return eb ** -0.5


def make_grid(method, size, length, center=0.0):
    """Periodic (``fourier-grid``) or Dirichlet (``finite-difference``) grid."""
    if method == "fourier-grid":
        h = length / size
        x = center - length / 2 + h * np.arange(size)
    elif method == "finite-difference":
        h = length / (size + 1)
        x = center - length / 2 + h * np.arange(1, size + 1)
    else:
        raise SpectrumError(f"No grid for method {method!r}")
    return Grid(method, x, h, length)


def _fourier_first_derivative(grid):
    size = len(grid.x)
    k = 2 * np.pi * np.fft.fftfreq(size, d=grid.h)
    if size % 2 == 0:
        k[size // 2] = 0
    dft = linalg.dft(size)
    return (dft.conj().T / size) @ np.diag(1j * k) @ dft


def _fd_first_derivative(grid):
    size = len(grid.x)
    return (np.eye(size, k=1) - np.eye(size, k=-1)) / (2 * grid.h)


def _fd_second_derivative(grid):
    size = len(grid.x)
    return (np.eye(size, k=1) - 2 * np.eye(size) + np.eye(size, k=-1)) / grid.h ** 2


def derivative_matrix(grid, order):
    """Matrix of ``d^order / dx^order`` on ``grid``."""
    size = len(grid.x)
    if order == 0:
        return np.eye(size)

    if grid.method == "fourier-grid":
        return np.linalg.matrix_power(_fourier_first_derivative(grid), order)

    d1, d2 = _fd_first_derivative(grid), _fd_second_derivative(grid)
    out = np.linalg.matrix_power(d2, order // 2)
    return out @ d1 if order % 2 else out


def _evaluate_coefficient(p, x):
    for monom in p.itermonoms():
        if any(e for k, e in enumerate(monom) if k != 1):
            raise OperatorError(
                f"Coefficient {p.as_expr()} depends on more than x; the operator is not separable"
            )
    values = [0.0, x] + [0.0] * (RING.ngens - 2)
    return np.broadcast_to(evaluate_poly(p, values), x.shape)


def discretize(op, grid, p_y=0.0, p_z=0.0, energy=None):
    """Dense matrix of ``op`` with components stacked block by block.

    :raises OperatorError: for coefficients that depend on ``t, y, z`` or a
        time derivative without ``energy``
    """
    rows, cols = op.shape
    size = len(grid.x)
    out = np.zeros((rows * size, cols * size), dtype=complex)
    derivatives = {}

    for alpha, coeff in op.terms.items():
        a_t, a_x, a_y, a_z = alpha
        if a_t and energy is None:
            raise OperatorError("Time derivatives need an energy to discretize")

        factor = (1j * p_y) ** a_y * (1j * p_z) ** a_z
        if a_t:
            factor *= (-1j * energy) ** a_t
        if a_x not in derivatives:
            derivatives[a_x] = derivative_matrix(grid, a_x)
        d = derivatives[a_x]

        for (i, j), value in coeff.iter_items():
            c = _evaluate_coefficient(value, grid.x) * factor
            out[i * size:(i + 1) * size, j * size:(j + 1) * size] += c[:, None] * d

    return out


def to_numpy(m):
    out = np.zeros(m.shape, dtype=complex)
    for (i, j), value in m.iter_items():
        out[i, j] = to_complex(value)
    return out


def _eigen(matrix, vectors=False):
    if np.allclose(matrix, matrix.conj().T):
        return linalg.eigh(matrix, eigvals_only=not vectors)
    if vectors:
        return linalg.eig(matrix)
    return linalg.eigvals(matrix)


def _physical(values, tolerance=1e-8):
    """Real positive eigenvalues, sorted."""
    values = np.asarray(values)
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    keep = np.abs(values.imag) <= tolerance * scale
    real = values.real[keep]
    return np.sort(real[real > 0])


# -- oracles ---------------------------------------------------------------------


def landau_oracle_spin0(m, e, B, p_z=0, n_max=4):
    """``E^2 = m^2 + p_z^2 + (2n + 1)|eB|``."""
    eb = abs(float(e) * float(B))
    m, p_z = float(m), float(p_z)
    return [m * m + p_z * p_z + (2 * n + 1) * eb for n in range(n_max + 1)]


def landau_oracle_spin1(m, e, B, k_max=4):
    """Closed form spin-1 levels at ``p_z = 0`` as :class:`OracleLevel`, sorted by ``E^2``.

    The ``longitudinal`` branch is the projection-0 family
    ``m^2 + (2k + 1)|eB|``. The transverse family has a ``single`` level at
    ``k = 0`` (``m^2``) and ``k = 1`` (``m^2 + 2|eB| + eps``) and, for every
    ``k >= 2``, the ``lower`` and ``upper`` roots of a 2 x 2 oscillator block
    with ``eps = (eB/m)^2``.
    """
    eb = abs(float(e) * float(B))
    m2 = float(m) ** 2
    eps = eb * eb / m2

    levels = [OracleLevel(k, "longitudinal", m2 + (2 * k + 1) * eb) for k in range(k_max + 1)]
    levels.append(OracleLevel(0, "single", m2))
    if k_max >= 1:
        levels.append(OracleLevel(1, "single", m2 + 2 * eb + eps))
    for k in range(2, k_max + 1):
        a = m2 + 2 * k * eb
        c = a - 2 * eb
        root = np.sqrt(eps * (2 * (a + c) + eps))
        levels.append(OracleLevel(k, "lower", (a + c + eps - root) / 2))
        levels.append(OracleLevel(k, "upper", (a + c + eps + root) / 2))
    return sorted(levels, key=lambda level: level.E2)


def lowest_oracle_spin1(m, e, B, count):
    """The ``count`` lowest closed form spin-1 values of ``E^2``, with multiplicity.

    Every branch grows with ``k``, so the levels of block ``k_max + 1`` bound
    everything left out.
    """
    k_max = max(count, 1)
    while True:
        levels = landau_oracle_spin1(m, e, B, k_max)
        beyond = min(v.E2 for v in landau_oracle_spin1(m, e, B, k_max + 1) if v.k == k_max + 1)
        if levels[count - 1].E2 <= beyond:
            return [level.E2 for level in levels[:count]]
        k_max *= 2


def _oscillator_matrices(size, length):
    """``x`` and ``p = -i d/dx`` in the first ``size`` oscillator states."""
    a = np.diag(np.sqrt(np.arange(1, size)), k=1)
    x = length / np.sqrt(2) * (a + a.T)
    p = 1j / (length * np.sqrt(2)) * (a.T - a)
    return x, p


def _oscillator_spin0(m, e, B, p_z, n_max, size):
    eb = float(e) * float(B)
    length = magnetic_length(e, B)
    x, p = _oscillator_matrices(size + 2, length)
    # p_y = 0 centres the orbit at the origin
    h = (p @ p + eb * eb * x @ x)[:size, :size]
    values = np.sort(linalg.eigh(h, eigvals_only=True))[: n_max + 1]
    return float(m) ** 2 + float(p_z) ** 2 + values


def symmetric_gauge_spectrum_spin0(m, e, B, p_z=0, n_max=4, shells=None):
    """Distinct transverse levels in the symmetric gauge from a two dimensional
    oscillator basis truncated to complete shells."""
    eb = float(e) * float(B)
    shells = shells or 2 * n_max + 2
    length = (2 / abs(eb)) ** 0.5
    x, p = _oscillator_matrices(shells + 2, length)
    x2, p2 = (x @ x)[: shells + 1, : shells + 1], (p @ p)[: shells + 1, : shells + 1]
    x, p = x[: shells + 1, : shells + 1], p[: shells + 1, : shells + 1]

    states = [(a, b) for a, b in product(range(shells + 1), repeat=2) if a + b <= shells]
    size = len(states)
    h = np.zeros((size, size), dtype=complex)
    w2 = eb * eb / 4
    for (r, (a, b)), (c, (a2, b2)) in product(enumerate(states), repeat=2):
        same_a, same_b = a == a2, b == b2
        value = 0j
        if same_b:
            value += p2[a, a2] + w2 * x2[a, a2]
        if same_a:
            value += p2[b, b2] + w2 * x2[b, b2]
        # -eB (x p_y - y p_x)
        value -= eb * (x[a, a2] * p[b, b2] - p[a, a2] * x[b, b2])
        h[r, c] = value

    values = np.sort(linalg.eigh(h, eigvals_only=True))
    levels = []
    for v in values:
        if not levels or v - levels[-1] > 1e-6 * abs(eb):
            levels.append(v)
    return [float(m) ** 2 + float(p_z) ** 2 + v for v in levels[: n_max + 1]]


# -- Landau spectra --------------------------------------------------------------


def _exact(value):
    """Exact coefficient for operator construction; floats go through their repr."""
    if isinstance(value, float):
        return rational(repr(value))
    return rational(value)


def _uniform_b(e, B):
    return make_field("uniform-B", _exact(e), B=_exact(B))


def _klein_gordon_transverse(field, m):
    """``m^2 + sum_i D^i D^i``, which equals ``E^2`` on stationary states with ``A_0 = 0``."""
    m = _exact(m)
    out = DiffOperator.identity(1).scale(m * m)
    for i in SPATIAL:
        d = covariant(i, field, 1)
        out = out + d @ d
    return out


def _grid_for(method, e, B, size, box_lengths):
    return make_grid(method, size, box_lengths * magnetic_length(e, B))


def _spin0_grid_levels(m, e, B, p_z, n_max, method, size, box_lengths):
    field = _uniform_b(e, B)
    grid = _grid_for(method, e, B, size, box_lengths)
    matrix = discretize(_klein_gordon_transverse(field, m), grid, p_z=float(p_z))
    return _physical(_eigen(matrix))[: n_max + 1]


def _levels(values, p_z, projections=None, errors=None, expectations=None):
    out = []
    for n, v in enumerate(values):
        out.append(
            Level(
                n,
                float(p_z),
                None if projections is None else projections[n],
                float(v),
                float(v) ** 0.5,
                None if errors is None else float(errors[n]),
                None if expectations is None else expectations[n],
            )
        )
    return out


def landau_spectrum_spin0(
    m,
    e,
    B,
    p_z=0,
    n_max=4,
    method="fourier-grid",
    size=DEFAULT_SIZE,
    box_lengths=DEFAULT_BOX,
    tolerance=DEFAULT_TOLERANCE,
    strict=False,
):
    """Spin-0 Landau levels from the reduced Klein-Gordon operator.

    Each level carries its relative change against a half resolution solve;
    the result error is the largest of those.

    :raises SpectrumError: when ``e B = 0`` or ``method`` is unknown
    :raises ConvergenceError: with ``strict`` when the estimate exceeds
        ``tolerance``
    """
    if method not in METHODS:
        raise SpectrumError(f"Unknown method {method!r}")
    magnetic_length(e, B)

    if method == "oscillator-basis":
        values = _oscillator_spin0(m, e, B, p_z, n_max, size)
        coarse = _oscillator_spin0(m, e, B, p_z, n_max, max(size // 2, n_max + 2))
    else:
        values = _spin0_grid_levels(m, e, B, p_z, n_max, method, size, box_lengths)
        coarse = _spin0_grid_levels(m, e, B, p_z, n_max, method, size // 2, box_lengths)

    if len(values) < n_max + 1 or len(coarse) < n_max + 1:
        raise ConvergenceError(f"Only {len(values)} bound levels resolved on {size} points")

    errors = np.abs(values - coarse) / values
    error = float(np.max(errors))
    logger.info("spin-0 %s N=%d: %d levels, estimated error %.2e", method, size, len(values), error)
    if error > tolerance:
        message = f"spin-0 {method} at N={size} has estimated error {error:.2e}"
        if strict:
            raise ConvergenceError(message)
        logger.warning(message)

    return SpectrumResult(0, method, _levels(values, p_z, errors=errors), size, error)


def _degenerate_groups(values, tolerance=1e-6):
    """Runs of sorted ``values`` within ``tolerance`` (relative) of their first member."""
    groups, start = [], 0
    for k in range(1, len(values) + 1):
        if k == len(values) or values[k] - values[start] > tolerance * abs(values[start]):
            groups.append(list(range(start, k)))
            start = k
    return groups


def spin_projections(rep, vectors, values, size, tolerance=1e-4):
    """``T_3`` expectations and labels of fourth order eigenvectors.

    ``T_3`` is diagonalised inside every degenerate group before it is read
    off. A label is the nearest of ``-1, 0, 1``, or ``"mixed"`` when the
    expectation is further than ``tolerance`` from it.

    :returns: ``(labels, expectations)``
    """
    t3 = to_numpy(rep.S[2].extract(list(P_BLOCK), list(P_BLOCK)))
    t3 = np.kron(t3, np.eye(size))
    t3 = (t3 + t3.conj().T) / 2

    expectations = np.zeros(len(values))
    for group in _degenerate_groups(values):
        basis, _ = np.linalg.qr(vectors[:, group])
        restricted = basis.conj().T @ t3 @ basis
        expectations[group] = linalg.eigvalsh(restricted)

    labels = []
    for value in expectations:
        nearest = int(np.clip(np.round(value), -1, 1))
        labels.append(nearest if abs(value - nearest) <= tolerance else "mixed")
    return labels, [float(np.round(v, 6)) for v in expectations]


def fourth_order_route(rep, field, m, grid, p_z=0.0, vectors=False):
    matrix = discretize(build_fourth_order(rep, field, _exact(m)), grid, p_z=p_z)
    return _eigen(matrix, vectors)


def o_red_route(rep, field, m, grid, p_z=0.0):
    o_red = reduced_blocks(rep, field, _exact(m))["range"]
    energies = _eigen(discretize(o_red, grid, p_z=p_z))
    energies = np.asarray(energies)
    positive = energies[energies.real > 0]
    return positive ** 2


def _fourth_order_levels(rep, field, m, grid, p_z, count):
    """Lowest ``count`` real positive eigenvalues of ``K`` with their spin labels."""
    values, vectors = fourth_order_route(rep, field, m, grid, p_z, vectors=True)
    values = np.asarray(values)
    scale = max(1.0, float(np.max(np.abs(values))))
    keep = np.flatnonzero((np.abs(values.imag) <= 1e-8 * scale) & (values.real > 0))
    order = keep[np.argsort(values.real[keep])]
    if len(order) < count:
        raise ConvergenceError(f"Only {len(order)} fourth order levels on {len(grid.x)} points")

    # the last degenerate group is labelled whole
    last, top = count, values.real[order[count - 1]]
    while last < len(order) and values.real[order[last]] - top <= 1e-6 * top:
        last += 1
    chosen = order[:last]
    real = values.real[chosen]
    labels, expectations = spin_projections(rep, vectors[:, chosen], real, len(grid.x))
    return real[:count], labels[:count], expectations[:count]


def landau_spectrum_spin1(
    rep,
    m,
    e,
    B,
    p_z=0,
    n_max=4,
    method="fourier-grid",
    size=DEFAULT_SIZE,
    box_lengths=DEFAULT_BOX,
    route_tolerance=DEFAULT_ROUTE_TOLERANCE,
):
    """Spin-1 Landau levels from two independent routes.

    Route ``o_red-eigen`` diagonalises the six component reduced operator,
    route ``fourth-order`` the three component operator ``E^2 = K``. The
    ``n_max + 1`` lowest levels of both are compared in order, multiplicities
    included, and each level carries its own route delta.

    :returns: ``[o_red-eigen, fourth-order]`` plus ``analytic-oracle`` at ``p_z = 0``
    :raises RouteDisagreementError: when a level differs by more than
        ``route_tolerance`` (relative)
    """
    if method not in GRID_METHODS:
        raise SpectrumError(f"Spin-1 spectra need a grid method, not {method!r}")
    magnetic_length(e, B)

    count = n_max + 1
    field = _uniform_b(e, B)
    grid = _grid_for(method, e, B, size, box_lengths)
    p_z = float(p_z)

    fourth, labels, expectations = _fourth_order_levels(rep, field, m, grid, p_z, count)
    reduced = _physical(o_red_route(rep, field, m, grid, p_z))
    if len(reduced) < count:
        raise ConvergenceError(f"Only {len(reduced)} O_red levels on {size} points")

    deltas = np.abs(reduced[:count] - fourth) / fourth
    delta = float(np.max(deltas))
    logger.info("spin-1 %s N=%d: route delta %.2e", method, size, delta)
    if delta > route_tolerance:
        worst = int(np.argmax(deltas))
        raise RouteDisagreementError(
            f"O_red and fourth order routes differ by {delta:.2e} at level {worst}, N={size}"
        )

    results = [
        SpectrumResult(
            1, "o_red-eigen", _levels(reduced[:count], p_z, errors=deltas), size, delta
        ),
        SpectrumResult(
            1, "fourth-order", _levels(fourth, p_z, labels, deltas, expectations), size, delta
        ),
    ]
    if p_z == 0:
        oracle = lowest_oracle_spin1(m, e, B, count)
        results.append(SpectrumResult(1, "analytic-oracle", _levels(oracle, 0.0), 0, 0.0))
    return results


def match_levels(numerical, oracle, tolerance):
    """Largest relative distance between the ``i``-th lowest numerical and
    oracle levels over the shorter of the two lists.

    Both lists are sorted first, so a missing or doubled level shifts every
    level above it.
    """
    numerical = np.sort(np.asarray(numerical, dtype=float))
    oracle = np.sort(np.asarray(oracle, dtype=float))
    count = min(len(numerical), len(oracle))
    if not count:
        return 0.0

    worst = float(np.max(np.abs(numerical[:count] - oracle[:count]) / np.abs(oracle[:count])))
    if worst > tolerance:
        logger.warning("Oracle mismatch %.2e above %.1e", worst, tolerance)
    return worst


# -- numerical states and residuals --------------------------------------------------


def landau_state_spin0(rep, m, e, B, p_z=0, level=0, method="fourier-grid", size=256):
    """Full five component Landau state lifted from the Klein-Gordon eigenvector."""
    field = _uniform_b(e, B)
    grid = _grid_for(method, e, B, size, DEFAULT_BOX)
    matrix = discretize(_klein_gordon_transverse(field, m), grid, p_z=float(p_z))
    values, vectors = _eigen(matrix, vectors=True)
    order = np.argsort(values.real)
    e2 = float(values.real[order[level]])
    phi = vectors[:, order[level]]
    energy = e2 ** 0.5

    inv = 1 / float(m)
    parts = [
        -inv * discretize(covariant(i, field, 1), grid, p_z=float(p_z)) @ phi for i in SPATIAL
    ]
    parts.append(1j * inv * energy * phi)
    parts.append(phi)
    return NumericalState(0, grid, np.array(parts), energy, 0.0, float(p_z))


def landau_state_spin1(rep, m, e, B, p_z=0, level=0, method="fourier-grid", size=128):
    """Full ten component Landau state built from a fourth order eigenvector.

    ``Q = O_QP P / E``, the scalar and magnetic components follow from the
    constraint rows.
    """
    field = _uniform_b(e, B)
    grid = _grid_for(method, e, B, size, DEFAULT_BOX)
    p_z = float(p_z)

    values, vectors = fourth_order_route(rep, field, m, grid, p_z, vectors=True)
    values = np.asarray(values)
    candidates = [k for k in np.argsort(values.real) if values.real[k] > 0]
    k = candidates[level]
    energy = float(values.real[k]) ** 0.5
    chi_p = vectors[:, k].reshape(3, size)

    o_qp = discretize(reduced_blocks(rep, field, _exact(m))["QP"], grid, p_z=p_z)
    chi_q = (o_qp @ chi_p.ravel()).reshape(3, size) / energy

    d = {j: discretize(covariant(j, field, 1), grid, p_z=p_z) for j in SPATIAL}
    inv = 1 / float(m)
    scalar = 1j * inv * sum(d[j] @ chi_p[j - 1] for j in SPATIAL)
    magnetic = []
    for a in range(3):
        total = np.zeros(size, dtype=complex)
        for j, q in product(SPATIAL, range(3)):
            eps = levi_civita(a + 1, j, q + 1)
            if eps:
                total += eps * (d[j] @ chi_q[q])
        magnetic.append(-inv * total)

    components = np.vstack([chi_p, np.array(magnetic), chi_q, scalar[None, :]])
    return NumericalState(1, grid, components, energy, 0.0, p_z)


def check_residuals(rep, field, m, state, tolerance=1e-6):
    """Relative residuals of ``Lambda psi``, ``C psi``, the first order
    derivative relation and the ``e^2`` rewriting on a numerical state.

    The rewriting compares ``(ie/2m)(b b b - b g) F D psi`` with its ``e^2``
    form, which only holds on solutions.
    """
    m = _exact(m)
    report = IdentityReport("3.3", f"residuals on a numerical state [{field_label(field)}]")
    psi = state.components.ravel()
    norm = np.linalg.norm(psi)
    if not norm:
        raise SpectrumError("Residuals of a zero state are meaningless")

    def residual(op):
        matrix = discretize(op, state.grid, state.p_y, state.p_z, state.energy)
        return np.linalg.norm(matrix @ psi) / norm

    report.record_value("Lambda", residual(lambda_op(rep, field, m)), tolerance)
    report.record_value("C", residual(constraint_op(rep, field, m)), tolerance)
    for nu in INDICES:
        report.record_value(("3.3", nu), residual(eq33_op(rep, field, m, nu)), tolerance)

    lhs, rhs = e2_rewriting_ops(rep, field, m)
    report.record_value(("3.7", "e^2 rewriting"), residual(lhs - rhs), tolerance)
    return report


def convergence_study(method, sizes, m=1, e=1, B=1, level=0, box_lengths=DEFAULT_BOX, spin=0):
    """Level error against the closed form oracle for each grid size.

    Spin 1 uses the fourth order route at ``p_z = 0``.

    :returns: ``(rows, order)`` with rows ``(N, error)`` and the fitted
        order in the grid spacing
    """
    if method not in GRID_METHODS:
        raise SpectrumError(f"Convergence studies need a grid method, not {method!r}")
    if spin not in (0, 1):
        raise SpectrumError(f"No Landau oracle for spin {spin!r}")

    if spin == 1:
        rep, field = build_representation(1), _uniform_b(e, B)
        exact = lowest_oracle_spin1(m, e, B, level + 1)[level]
    else:
        exact = landau_oracle_spin0(m, e, B, n_max=level)[level]

    rows = []
    for size in sizes:
        if spin == 1:
            grid = _grid_for(method, e, B, size, box_lengths)
            values, _, _ = _fourth_order_levels(rep, field, m, grid, 0.0, level + 1)
        else:
            values = _spin0_grid_levels(m, e, B, 0, level, method, size, box_lengths)
        rows.append((size, abs(values[level] - exact) / exact))

    spacing = [box_lengths / n for n, _ in rows]
    errors = [max(err, np.finfo(float).tiny) for _, err in rows]
    order = float(np.polyfit(np.log(spacing), np.log(errors), 1)[0]) if len(rows) > 1 else None
    logger.info("spin-%d %s convergence: %s, order %s", spin, method, rows, order)
    return rows, order


def write_csv(results, path):
    """One row per level with the columns of :data:`CSV_COLUMNS`."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for result in results:
            for level in result.levels:
                writer.writerow(
                    [
                        result.spin,
                        result.route,
                        level.n,
                        level.p_z,
                        "" if level.spin_projection is None else level.spin_projection,
                        repr(level.E2),
                        repr(level.E),
                        repr(result.error if level.error is None else level.error),
                    ]
                )
    logger.info("Wrote %d spectra to %s", len(results), path)
