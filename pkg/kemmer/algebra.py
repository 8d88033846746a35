r"""
Matrix representations of the Kemmer algebra and their exact identity checks.

Representations are built from explicit entries in ``{0, +-1, +-i}`` over the
Gaussian rationals and then verified, never assumed. Matrices carry lower
indices, ``beta[mu]`` is :math:`\beta_\mu`, and upper indices are raised with
``g = diag(1, -1, -1, -1)``.

Spin-0 components are ordered ``(psi_1, psi_2, psi_3, psi_4, psi_5)`` with the
vector ``psi_1..psi_3`` and ``psi_4`` auxiliary and ``psi_5`` the physical scalar.
Spin-1 components are ``P = 1..3`` (physical vector), ``M = 4..6``
(magnetic-type), ``Q = 7..9`` (electric-type) and ``s = 10``.
"""

import logging

from collections import namedtuple
from itertools import product

from sympy import LeviCivita
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from kemmer import FieldError, RepresentationError
from kemmer.exactmath import I, conjugate, rational

__all__ = [
    "Representation",
    "IdentityReport",
    "build_representation",
    "trivial_representation",
    "mutate",
    "verify_trilinear",
    "verify_spin0_strong",
    "build_and_verify_omega",
    "verify_spin1_characterization",
    "build_and_verify_spin_operators",
    "verify_e2_rewriting_matrix_part",
    "verify_adjoint_metric",
    "verify_beta_projector",
    "verify_s_commutator",
]

logger = logging.getLogger(__name__)

METRIC = (1, -1, -1, -1)
INDICES = range(4)
SPATIAL = range(1, 4)


def g(mu, nu):
    return METRIC[mu] if mu == nu else 0


def levi_civita(*idx):
    return int(LeviCivita(*idx))


def matrix(entries, dim):
    """Sparse ``dim x dim`` matrix from ``{(row, col): value}`` (0-indexed)."""
    dod = {}
    for (i, j), value in entries.items():
        value = QQ_I.convert(value) if QQ_I.of_type(value) else QQ_I(rational(value))
        if value:
            dod.setdefault(i, {})[j] = value
    return DomainMatrix.from_dod(dod, (dim, dim), QQ_I)


def eye(dim):
    return DomainMatrix.eye(dim, QQ_I)


def zeros(dim):
    return DomainMatrix.zeros((dim, dim), QQ_I)


def mul(*factors):
    out = factors[0]
    for f in factors[1:]:
        out = out.matmul(f)
    return out


def scale(m, c):
    c = QQ_I.convert(c) if QQ_I.of_type(c) else QQ_I(rational(c))
    return m.scalarmul(c)


def is_zero(m):
    return not any(m.iter_values())


def equal(a, b):
    return is_zero(a.sub(b))


def dagger(m):
    dod = {}
    for (i, j), value in m.iter_items():
        dod.setdefault(j, {})[i] = conjugate(value)
    return DomainMatrix.from_dod(dod, m.shape, m.domain)


def commutator(a, b):
    return a.matmul(b).sub(b.matmul(a))


def anticommutator(a, b):
    return a.matmul(b).add(b.matmul(a))


def total(matrices, dim):
    out = zeros(dim)
    for m in matrices:
        out = out.add(m)
    return out


Representation = namedtuple(
    "Representation",
    [
        "spin",
        "dim",
        "beta",
        "beta_proj",
        "omega",
        "S",
        "xi",
        "eta",
        "physical",
        "projected",
    ],
)


def upper(rep, mu):
    return scale(rep.beta[mu], METRIC[mu])


def spin_tensor(rep, nu, mu):
    """``S_{nu mu} = beta_nu beta_mu - beta_mu beta_nu``."""
    return commutator(rep.beta[nu], rep.beta[mu])


def beta_tilde(rep, k):
    """``[beta_0, beta^k]``, the spatial matrix of the positive density current."""
    return commutator(rep.beta[0], upper(rep, k))


def projector(rep):
    return mul(rep.beta[0], rep.beta[0])


def omega_matrix(beta):
    dim = beta[0].shape[0]
    parts = []
    for idx in product(INDICES, repeat=4):
        sign = levi_civita(*idx)
        if sign:
            parts.append(scale(mul(*(beta[i] for i in idx)), sign))
    return total(parts, dim).scalarmul(I * QQ_I(rational((1, 4))))


def _spin_vectors(beta, dim):
    S = []
    for k in SPATIAL:
        parts = []
        for i, j in product(SPATIAL, repeat=2):
            eps = levi_civita(i, j, k)
            if eps:
                parts.append(scale(commutator(beta[i], beta[j]), eps))
        S.append(total(parts, dim).scalarmul(I * QQ_I(rational((1, 2)))))
    return tuple(S)


def _spin0_betas():
    beta0 = matrix({(3, 4): -I, (4, 3): I}, 5)
    spatial = [matrix({(k - 1, 4): 1, (4, k - 1): -1}, 5) for k in SPATIAL]
    return (beta0, *spatial)


def _spin1_betas():
    beta0 = matrix(
        {**{(l, 6 + l): -I for l in range(3)}, **{(6 + l, l): I for l in range(3)}}, 10
    )
    spatial = []
    for j in SPATIAL:
        entries = {(9, j - 1): -I, (j - 1, 9): -I}
        for a, q in product(range(3), repeat=2):
            eps = levi_civita(a + 1, j, q + 1)
            if eps:
                entries[(3 + a, 6 + q)] = eps
                entries[(6 + q, 3 + a)] = -eps
        spatial.append(matrix(entries, 10))
    return (beta0, *spatial)


def build_representation(spin):
    """Build the explicit representation for ``spin`` 0 (5x5) or 1 (10x10).

    :raises RepresentationError: for any other spin
    """
    if spin == 0:
        beta = _spin0_betas()
        dim = 5
        beta_proj = eye(dim).sub(matrix({(4, 4): 1}, dim))
        physical = (4,)
        xi = eye(dim)
    elif spin == 1:
        beta = _spin1_betas()
        dim = 10
        physical = (0, 1, 2)
        xi = matrix({(i, i): 1 if i in (0, 1, 2, 9) else -1 for i in range(dim)}, dim)
        beta_proj = None
    else:
        raise RepresentationError(f"No representation for spin {spin!r}")

    omega = omega_matrix(beta)
    if beta_proj is None:
        beta_proj = eye(dim).sub(mul(omega, omega))

    beta00 = mul(beta[0], beta[0])
    projected = tuple(i for i in range(dim) if beta00.to_dod().get(i, {}).get(i))
    eta = scale(beta00, 2).sub(eye(dim))

    rep = Representation(
        spin=spin,
        dim=dim,
        beta=beta,
        beta_proj=beta_proj,
        omega=omega,
        S=_spin_vectors(beta, dim),
        xi=xi,
        eta=eta,
        physical=physical,
        projected=projected,
    )

    if not verify_trilinear(rep).passed:
        raise RepresentationError(f"Spin-{spin} matrices violate the trilinear algebra")

    logger.debug("Built spin-%s representation of dimension %s", spin, dim)
    return rep


def trivial_representation(dim=5):
    """``beta_mu = 0``: every identity holds degenerately."""
    z = zeros(dim)
    return Representation(
        spin=None,
        dim=dim,
        beta=(z,) * 4,
        beta_proj=z,
        omega=z,
        S=(z,) * 3,
        xi=eye(dim),
        eta=scale(eye(dim), -1),
        physical=(),
        projected=(),
    )


def mutate(rep, mu, row, col, value):
    """Copy of ``rep`` with one entry of ``beta[mu]`` replaced (fault injection)."""
    dod = rep.beta[mu].to_dod()
    entries = {(i, j): v for i, r in dod.items() for j, v in r.items()}
    entries[(row, col)] = value
    beta = list(rep.beta)
    beta[mu] = matrix(entries, rep.dim)
    return rep._replace(beta=tuple(beta))


class IdentityReport:
    """Outcome of an exact (or tolerance based) identity sweep.

    ``expect`` is ``True`` when the identity should hold, ``False`` when it is
    expected to fail (characterisation checks and printed-equation
    discrepancies) and ``None`` when the verdict is informational only.
    """

    max_failures = 8

    def __init__(self, identity, description="", expect=True):
        self.identity = identity
        self.description = description
        self.expect = expect
        self.checked = []
        self.failures = []
        self.notes = []

    @property
    def passed(self):
        return not self.failures

    @property
    def as_expected(self):
        return self.expect is None or self.passed == self.expect

    def record(self, index, residual):
        self.checked.append(index)
        if _nonzero(residual):
            self.failures.append((index, _describe(residual)))
        return self

    def record_value(self, index, value, tolerance):
        self.checked.append(index)
        if not abs(value) <= tolerance:
            self.failures.append((index, f"{value:.3e} > {tolerance:.1e}"))
        return self

    def note(self, text):
        self.notes.append(text)
        return self

    def merge(self, other):
        self.checked.extend(other.checked)
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        return self

    def to_dict(self):
        return {
            "identity": self.identity,
            "description": self.description,
            "passed": self.passed,
            "expect": self.expect,
            "checked": len(self.checked),
            "failures": [
                {"index": _plain(i), "residual": r}
                for i, r in self.failures[: self.max_failures]
            ],
            "failure_count": len(self.failures),
            "notes": list(self.notes),
        }

    def __repr__(self):
        verdict = "pass" if self.passed else f"fail({len(self.failures)})"
        return f"<IdentityReport {self.identity} {verdict} of {len(self.checked)}>"


def _plain(index):
    if isinstance(index, tuple):
        return [_plain(i) for i in index]
    return index if isinstance(index, (int, float, str)) else str(index)


def _nonzero(residual):
    if isinstance(residual, DomainMatrix):
        return not is_zero(residual)
    if hasattr(residual, "is_zero"):
        zero = residual.is_zero
        return not (zero() if callable(zero) else zero)
    return bool(residual)


def _describe(residual):
    if isinstance(residual, DomainMatrix):
        entries = sorted(
            ((i, j), v) for (i, j), v in residual.iter_items() if v
        )[:4]
        return {f"{i + 1},{j + 1}": str(v) for (i, j), v in entries}
    if hasattr(residual, "sorted_terms"):
        (n, freq), amp = residual.sorted_terms()[0]
        return {
            "momentum": list(n),
            "frequency": str(freq.as_expr()),
            "amplitude": [str(a.as_expr()) for a in amp],
        }
    return str(residual)


def verify_trilinear(rep):
    report = IdentityReport("1.2", "b^mu b^nu b^a + b^a b^nu b^mu = g^mu nu b^a + g^nu a b^mu")
    up = [upper(rep, mu) for mu in INDICES]

    for mu, nu, al in product(INDICES, repeat=3):
        lhs = mul(up[mu], up[nu], up[al]).add(mul(up[al], up[nu], up[mu]))
        rhs = scale(up[al], g(mu, nu)).add(scale(up[mu], g(nu, al)))
        report.record((mu, nu, al), lhs.sub(rhs))

    return report


def _strong_rhs(rep, up, mu, nu, al):
    b = rep.beta_proj
    return scale(mul(up[al], b), g(mu, nu)).add(scale(mul(b, up[mu]), g(nu, al)))


def verify_spin0_strong(rep, strict=False):
    """``b^mu b^nu b^a = g^mu nu b^a b + g^nu a b b^mu`` for all 64 triples.

    With ``strict`` a representation of another spin raises instead of being
    reported as failing.
    """
    if strict and rep.spin != 0:
        raise RepresentationError("The strong relation characterises spin 0 only")

    report = IdentityReport(
        "2.2", "b^mu b^nu b^a = g^mu nu b^a B + g^nu a B b^mu", expect=rep.spin != 1
    )
    up = [upper(rep, mu) for mu in INDICES]

    for mu, nu, al in product(INDICES, repeat=3):
        lhs = mul(up[mu], up[nu], up[al])
        report.record((mu, nu, al), lhs.sub(_strong_rhs(rep, up, mu, nu, al)))

    # adding the (mu, nu, a) and (a, nu, mu) instances must give the trilinear form
    for mu, nu, al in product(INDICES, repeat=3):
        summed = _strong_rhs(rep, up, mu, nu, al).add(_strong_rhs(rep, up, al, nu, mu))
        rhs = scale(up[al], g(mu, nu)).add(scale(up[mu], g(nu, al)))
        report.record(("sym", mu, nu, al), summed.sub(rhs))
    return report


def build_and_verify_omega(rep):
    """Rebuild ``omega`` from the epsilon contraction and check its properties.

    :return: ``(omega, report)``
    """
    omega = omega_matrix(rep.beta)
    report = IdentityReport("2.3", "omega = (i/4) eps b b b b and its properties")
    report.record("definition", omega.sub(rep.omega))

    if rep.spin == 0:
        report.record("omega=0", omega)
        return omega, report

    dim = rep.dim
    one = eye(dim)
    w2 = mul(omega, omega)

    report.record("2.4", w2.sub(one.sub(rep.beta_proj)))
    report.record("idempotent", mul(one.sub(w2), one.sub(w2)).sub(one.sub(w2)))

    for mu in INDICES:
        report.record(("2.5", mu), anticommutator(w2, rep.beta[mu]).sub(rep.beta[mu]))

    for mu, nu in product(INDICES, repeat=2):
        bm, bn = rep.beta[mu], rep.beta[nu]
        report.record(("2.6", mu, nu), mul(bm, omega, bn).add(mul(bn, omega, bm)))
        lhs = mul(bm, bn, omega).add(mul(omega, bn, bm))
        report.record(("2.7", mu, nu), lhs.sub(scale(omega, g(mu, nu))))

    return omega, report


def _characterization_rhs(rep, up, nu, al, mu):
    w = rep.omega
    w2 = mul(w, w)
    return total(
        [
            scale(mul(up[nu], w2), g(al, mu)),
            scale(mul(w2, up[mu]), g(nu, al)),
            mul(up[mu], w, up[nu], up[al], w),
            mul(w, up[al], up[mu], w, up[nu]),
        ],
        rep.dim,
    )


def verify_spin1_characterization(rep, strict=False):
    if strict and rep.spin != 1:
        raise RepresentationError("The omega relation characterises spin 1 only")

    report = IdentityReport(
        "2.8",
        "b^nu b^a b^mu = g^a mu b^nu w^2 + g^nu a w^2 b^mu + b^mu w b^nu b^a w "
        "+ w b^a b^mu w b^nu",
        expect=rep.spin != 0,
    )
    up = [upper(rep, mu) for mu in INDICES]

    for nu, al, mu in product(INDICES, repeat=3):
        lhs = mul(up[nu], up[al], up[mu])
        report.record((nu, al, mu), lhs.sub(_characterization_rhs(rep, up, nu, al, mu)))

    # the symmetrised right hand sides must give back the trilinear form
    for nu, al, mu in product(INDICES, repeat=3):
        summed = _characterization_rhs(rep, up, nu, al, mu).add(
            _characterization_rhs(rep, up, mu, al, nu)
        )
        rhs = scale(up[mu], g(nu, al)).add(scale(up[nu], g(al, mu)))
        report.record(("sym", nu, al, mu), summed.sub(rhs))
    return report


def adjoint_block(k):
    """``(T_k)_ij = i eps_ikj``."""
    return {
        (i, j): I * QQ_I(levi_civita(i + 1, k, j + 1))
        for i, j in product(range(3), repeat=2)
        if levi_civita(i + 1, k, j + 1)
    }


def build_and_verify_spin_operators(rep):
    """Check the spin matrices ``S_k`` and the sign matrix ``xi`` of spin 1."""
    if rep.spin != 1:
        raise RepresentationError("Spin operators are defined for spin 1 only")

    report = IdentityReport("4.6", "spin matrices S_k, xi and their algebra")
    S, xi, dim = rep.S, rep.xi, rep.dim

    for k in SPATIAL:
        block = adjoint_block(k)
        expected = {
            (off + i, off + j): v for off in (0, 3, 6) for (i, j), v in block.items()
        }
        report.record(("4.6", k), S[k - 1].sub(matrix(expected, dim)))

    for i, j in product(SPATIAL, repeat=2):
        rhs = total(
            [scale(S[k - 1], levi_civita(i, j, k)) for k in SPATIAL], dim
        ).scalarmul(I)
        report.record(("4.7", i, j), commutator(S[i - 1], S[j - 1]).sub(rhs))

        s_ij = spin_tensor(rep, i, j)
        rhs = total(
            [scale(S[k - 1], levi_civita(i, j, k)) for k in SPATIAL], dim
        ).scalarmul(-I)
        report.record(("4.5", i, j), s_ij.sub(rhs))

    expected_xi = matrix(
        {(i, i): 1 if i in (0, 1, 2, 9) else -1 for i in range(dim)}, dim
    )
    report.record("4.8", xi.sub(expected_xi))
    report.record(("4.8", "xi^2"), mul(xi, xi).sub(eye(dim)))

    one = eye(dim)
    half = QQ_I(rational((1, 2)))
    for i, j in product(SPATIAL, repeat=2):
        bi, bj = rep.beta[i], rep.beta[j]
        if i != j:
            lhs = anticommutator(bi, bj)
            rhs = mul(xi, anticommutator(S[i - 1], S[j - 1]))
        else:
            lhs = mul(bi, bi)
            rhs = one.add(xi).scalarmul(-half).add(mul(xi, S[i - 1], S[i - 1]))
        report.record(("4.9", i, j), lhs.sub(rhs))

    for i, k, j in product(SPATIAL, repeat=3):
        lhs = mul(S[i - 1], S[k - 1], S[j - 1]).add(mul(S[j - 1], S[k - 1], S[i - 1]))
        rhs = scale(S[j - 1], int(i == k)).add(scale(S[i - 1], int(j == k)))
        report.record(("4.10", i, k, j), lhs.sub(rhs))

    t3 = DomainMatrix.from_dod(
        {i: {j: v} for (i, j), v in adjoint_block(3).items()}, (3, 3), QQ_I
    )
    # lambda^3 - lambda: eigenvalues -1, 0, 1
    expected = [QQ_I(1), QQ_I(0), QQ_I(-1), QQ_I(0)]
    report.record("T3 spectrum", int(list(t3.charpoly()) != expected))

    return report


def _antisymmetric(F):
    F = [[QQ_I(rational(v)) for v in row] for row in F]
    for mu, nu in product(INDICES, repeat=2):
        if F[mu][nu] != -F[nu][mu]:
            raise FieldError(f"F is not antisymmetric at ({mu}, {nu})")
    return F


def verify_e2_rewriting_matrix_part(rep, F):
    """Second equality of the quadratic field-strength rewriting, ``e^2/4m^2`` scaled out.

    ``F`` holds constant upper-index components ``F^{mu nu}``. The printed form
    is checked as is; whether it holds is informational.
    """
    F = _antisymmetric(F)
    dim = rep.dim
    b = rep.beta
    report = IdentityReport("3.7", "quadratic F rewriting (matrix part)", expect=None)

    lhs, rhs = [], []
    for al, ga, mu, rho in product(INDICES, repeat=4):
        ff = F[al][ga] * F[mu][rho]
        if not ff:
            continue
        term = mul(b[rho], b[ga], b[mu], b[al])
        if g(mu, al):
            term = term.add(scale(mul(b[rho], b[ga]), g(mu, al)))
        lhs.append(term.scalarmul(ff))

        quad = mul(spin_tensor(rep, rho, mu), spin_tensor(rep, al, ga)).sub(
            scale(mul(spin_tensor(rep, rho, ga), spin_tensor(rep, mu, al)), 2)
        )
        rhs.append(quad.scalarmul(ff * QQ_I(rational((-1, 4)))))
        if g(mu, al):
            # F_a^rho = g_{a mu} F^{mu rho}
            rhs.append(scale(mul(b[rho], b[ga]), 2 * g(mu, al)).scalarmul(ff))

    label = tuple(tuple(str(v) for v in row) for row in F)
    report.record(label, total(lhs, dim).sub(total(rhs, dim)))
    return report


def verify_adjoint_metric(rep):
    report = IdentityReport("1.3", "eta^2 = 1, eta beta^dagger eta = beta, hermiticity")
    eta = rep.eta
    report.record("eta^2", mul(eta, eta).sub(eye(rep.dim)))

    for mu in INDICES:
        b = rep.beta[mu]
        report.record(("eta", mu), mul(eta, dagger(b), eta).sub(b))
        report.record(("dagger", mu), dagger(b).sub(scale(b, METRIC[mu])))

    return report


def _anticommutator_system(rep):
    """Linear system ``{X, beta_mu} = beta_mu`` as an augmented matrix."""
    dim = rep.dim
    unknowns = dim * dim
    rows = {}

    for mu in INDICES:
        b = rep.beta[mu].to_dod()
        for i, j in product(range(dim), repeat=2):
            row = rows.setdefault((mu * dim + i) * dim + j, {})
            # (X b)_ij = X_ik b_kj
            for k, r in b.items():
                if j in r:
                    row[i * dim + k] = row.get(i * dim + k, QQ_I.zero) + r[j]
            # (b X)_ij = b_ik X_kj
            for k, v in b.get(i, {}).items():
                row[k * dim + j] = row.get(k * dim + j, QQ_I.zero) + v
            value = b.get(i, {}).get(j)
            if value:
                row[unknowns] = value

    dod = {r: {c: v for c, v in row.items() if v} for r, row in rows.items()}
    return DomainMatrix.from_dod(dod, (4 * unknowns, unknowns + 1), QQ_I)


def verify_beta_projector(rep):
    """Solve ``{X, beta_mu} = beta_mu`` exactly and check the chosen ``beta``."""
    report = IdentityReport("2.1", "{B, beta_mu} = beta_mu and B^2 = B")
    system = _anticommutator_system(rep)
    _, pivots = system.rref()
    unknowns = rep.dim * rep.dim

    if unknowns in pivots:
        report.record("solvable", 1)
        return report

    report.note(f"affine solution space of dimension {unknowns - len(pivots)}")
    B = rep.beta_proj

    for mu in INDICES:
        report.record(("anticommutator", mu), anticommutator(B, rep.beta[mu]).sub(rep.beta[mu]))
    report.record("idempotent", mul(B, B).sub(B))

    if rep.spin == 1:
        report.note("chosen B = 1 - omega^2")
        report.record("B=1-w^2", B.sub(eye(rep.dim).sub(mul(rep.omega, rep.omega))))
    elif rep.spin == 0:
        report.note("chosen B annihilates the physical component psi_5")
        report.record("B psi_5", B.extract(list(range(rep.dim)), [4]))

    return report


def verify_s_commutator(rep):
    report = IdentityReport("6.2", "[b_mu, S_ds] = g_md b_s - g_ms b_d")

    for mu, de, si in product(INDICES, repeat=3):
        lhs = commutator(rep.beta[mu], spin_tensor(rep, de, si))
        rhs = scale(rep.beta[si], g(mu, de)).sub(scale(rep.beta[de], g(mu, si)))
        report.record((mu, de, si), lhs.sub(rhs))

    return report
