r"""
Exact arithmetic substrate.

Everything upstream of :mod:`kemmer.spectra` is computed here without rounding.
Coefficients live in the Gaussian rationals ``QQ_I`` and every coordinate
polynomial is an element of one shared sparse ring

.. code-block:: text

    RING = QQ_I[t, x, y, z, L, E0, ..., E7]

``t, x, y, z`` are the space-time coordinates, ``L`` is the formal box length
(it only appears after :func:`box_integrate`) and ``E0..E7`` are energy symbols.
An energy symbol carries the relation ``E_k**2 = m**2 + |p|**2`` and every
polynomial is kept reduced to degree one in each ``E_k``.

A wave function is an :class:`ExpSum`: a finite sum of polynomial amplitude
vectors times plane waves ``exp(i(kappa n.x - w t))`` where ``n`` is an integer
lattice triple, ``kappa`` the rational momentum unit and ``w`` a linear
combination of energy symbols.
"""

import logging

from collections import namedtuple
from fractions import Fraction
from itertools import product
from numbers import Integral, Rational

import numpy as np

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import PolyElement, ring

from kemmer import BoxIntegrationError, DimensionError, EnergyRelationError

__all__ = [
    "RING",
    "DOMAIN",
    "COORDS",
    "ENERGY_GENS",
    "EnergySymbol",
    "ExpSum",
    "rational",
    "gaussian",
    "conjugate",
    "poly",
    "derive",
    "pointwise_sesquilinear",
    "box_integrate",
    "reduce_energies",
]

logger = logging.getLogger(__name__)

MAX_ENERGIES = 8

RING, t, x, y, z, L, *ENERGY_GENS = ring(
    "t,x,y,z,L," + ",".join(f"E{k}" for k in range(MAX_ENERGIES)), QQ_I
)
DOMAIN = RING.to_domain()
COORDS = (t, x, y, z)

# positions of the generators inside a monomial tuple
_L = 4
_E = 5

I = QQ_I(0, 1)
ZERO_MOMENTUM = (0, 0, 0)


def rational(value):
    """Convert ``value`` to an exact ``QQ`` element.

    Accepts integers, :class:`fractions.Fraction`, ``QQ`` elements, strings such
    as ``"3/4"`` and ``[num, den]`` pairs.
    """
    if isinstance(value, (list, tuple)):
        num, den = value
        return QQ(int(num), int(den))
    if isinstance(value, str):
        value = Fraction(value)
    if isinstance(value, Integral):
        return QQ(int(value))
    if isinstance(value, Rational):
        return QQ(int(value.numerator), int(value.denominator))
    if QQ.of_type(value):
        return value

    raise TypeError(f"Cannot represent {value!r} exactly")


def gaussian(re, im=0):
    if QQ_I.of_type(re) and im == 0:
        return re
    return QQ_I(rational(re), rational(im))


def conjugate(c):
    return QQ_I.new(c.x, -c.y)


def to_complex(c):
    return complex(float(c.x), float(c.y))


def poly(value):
    """Lift a scalar or an existing ring element into :data:`RING`."""
    if isinstance(value, PolyElement):
        if value.ring != RING:
            raise TypeError("Polynomial belongs to a foreign ring")
        return value
    return RING.ground_new(gaussian(value))


def conjugate_poly(p):
    # every generator is real
    return RING.from_dict({m: conjugate(c) for m, c in p.iterterms()})


def is_coordinate_free(p, axis):
    return all(m[axis] == 0 for m in p.itermonoms())


def evaluate_poly(p, values):
    """Evaluate ``p`` at float (or numpy array) ``values``, one per generator."""
    result = 0j
    for monom, coeff in p.iterterms():
        term = to_complex(coeff)
        for value, exp in zip(values, monom):
            if exp:
                term = term * np.asarray(value) ** exp
        result = result + term
    return result


class EnergySymbol(namedtuple("EnergySymbol", ["label", "relation"])):
    """Positive energy ``E_label`` with ``E_label**2 == relation``."""

    __slots__ = ()

    @property
    def gen(self):
        return ENERGY_GENS[self.label]

    @property
    def value(self):
        return float(self.relation) ** 0.5


def merge_relations(*relations):
    merged = {}
    for rel in relations:
        for label, value in rel.items():
            if merged.setdefault(label, value) != value:
                raise EnergyRelationError(
                    f"E{label} carries both {merged[label]} and {value}"
                )
    return merged


def reduce_energies(p, relations):
    """Reduce ``p`` modulo ``E_k**2 - relations[k]``.

    Reducing twice gives the same polynomial as reducing once.
    """
    if all(max(m[_E:], default=0) < 2 for m in p.itermonoms()):
        return p

    out = {}
    for monom, coeff in p.iterterms():
        factor = QQ(1)
        reduced = list(monom)

        for k, exp in enumerate(monom[_E:]):
            if exp < 2:
                continue
            try:
                factor *= relations[k] ** (exp // 2)
            except KeyError:
                raise EnergyRelationError(f"No relation known for E{k}")
            reduced[_E + k] = exp % 2

        key = tuple(reduced)
        out[key] = out.get(key, QQ_I.zero) + coeff * QQ_I(factor)

    return RING.from_dict({m: c for m, c in out.items() if c})


def _vector_key(key):
    n, freq = key
    return (n, freq.terms())


class ExpSum:
    """Exponential sum wave function with ``dim`` components.

    :param dim: number of components
    :param terms: mapping ``(n, frequency) -> amplitude tuple``
    :param relations: mapping ``energy label -> E**2``
    :param kappa: rational momentum unit of the lattice
    """

    __slots__ = ("dim", "terms", "relations", "kappa")

    def __init__(self, dim, terms=None, relations=None, kappa=1):
        self.dim = dim
        self.relations = dict(relations or {})
        self.kappa = rational(kappa)
        self.terms = {}

        for (n, freq), amp in (terms or {}).items():
            self._accumulate(tuple(n), poly(freq), amp)

    def _accumulate(self, n, freq, amp):
        if len(amp) != self.dim:
            raise DimensionError(f"Amplitude of length {len(amp)}, expected {self.dim}")

        key = (n, freq)
        amp = tuple(reduce_energies(poly(a), self.relations) for a in amp)
        current = self.terms.get(key)

        if current is not None:
            amp = tuple(a + b for a, b in zip(current, amp))

        if any(amp):
            self.terms[key] = amp
        else:
            self.terms.pop(key, None)

    def _like(self, terms, relations=None, dim=None):
        return ExpSum(
            self.dim if dim is None else dim,
            terms,
            self.relations if relations is None else relations,
            self.kappa,
        )

    @classmethod
    def constant(cls, vector, relations=None, kappa=1):
        return cls.plane_wave(vector, relations=relations, kappa=kappa)

    @classmethod
    def plane_wave(cls, amplitude, n=ZERO_MOMENTUM, frequency=0, relations=None, kappa=1):
        amplitude = tuple(poly(a) for a in amplitude)
        return cls(len(amplitude), {(tuple(n), poly(frequency)): amplitude}, relations, kappa)

    @classmethod
    def zero(cls, dim, relations=None, kappa=1):
        return cls(dim, None, relations, kappa)

    @classmethod
    def stack(cls, components):
        """Build a vector wave function from scalar ones."""
        relations = merge_relations(*(c.relations for c in components))
        kappa = _common_kappa(components)
        terms = {}

        for i, comp in enumerate(components):
            for key, (amp,) in comp.terms.items():
                vec = terms.setdefault(key, [RING.zero] * len(components))
                vec[i] = vec[i] + amp

        return cls(len(components), terms, relations, kappa)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _vector_key(kv[0]))

    def momenta(self):
        return {n for n, _ in self.terms}

    def is_zero(self):
        return not self.terms

    def component(self, i):
        return self._like(
            {key: (amp[i],) for key, amp in self.terms.items()}, dim=1
        )

    def map_amplitudes(self, func, dim=None):
        return self._like(
            {key: tuple(func(amp)) for key, amp in self.terms.items()}, dim=dim
        )

    def scale(self, c):
        c = poly(c)
        return self.map_amplitudes(lambda amp: (c * a for a in amp))

    def conjugate(self):
        terms = {}
        for (n, freq), amp in self.terms.items():
            key = (tuple(-k for k in n), -conjugate_poly(freq))
            terms[key] = tuple(conjugate_poly(a) for a in amp)
        return self._like(terms)

    def _combine(self, other, sign):
        if self.dim != other.dim:
            raise DimensionError(f"Cannot add {self.dim} and {other.dim} components")
        _common_kappa([self, other])

        out = self._like(self.terms, merge_relations(self.relations, other.relations))
        for (n, freq), amp in other.terms.items():
            out._accumulate(n, freq, tuple(sign * a for a in amp))
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, ExpSum):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(self.sorted_terms()))

    def __repr__(self):
        return f"ExpSum(dim={self.dim}, terms={len(self.terms)})"

    def evaluate(self, point, energies=None):
        """Float values of the components at ``point = (t, x, y, z)``.

        Energy symbols take their positive root unless ``energies`` overrides
        them. Array valued coordinates are broadcast.
        """
        values = list(point) + [1.0]
        values += [
            (energies or {}).get(k, float(self.relations.get(k, 0)) ** 0.5)
            for k in range(MAX_ENERGIES)
        ]
        kappa = float(self.kappa)
        t_, x_, y_, z_ = (np.asarray(v, dtype=float) for v in point)
        out = [0j] * self.dim

        for (n, freq), amp in self.terms.items():
            w = evaluate_poly(freq, values)
            phase = np.exp(1j * (kappa * (n[0] * x_ + n[1] * y_ + n[2] * z_) - w * t_))
            for i, a in enumerate(amp):
                out[i] = out[i] + evaluate_poly(a, values) * phase

        return np.array([np.broadcast_to(o, np.broadcast(t_, x_, y_, z_).shape) for o in out])


def _common_kappa(items):
    kappas = {f.kappa for f in items if f.terms}
    if len(kappas) > 1:
        raise BoxIntegrationError(f"Incommensurate lattices: {sorted(kappas)}")
    return kappas.pop() if kappas else items[0].kappa


def derive(f, axis):
    """Exact ``d/dx^axis`` of ``f``; ``axis`` 0 is time."""
    gen = COORDS[axis]
    kappa = poly(f.kappa)
    terms = {}

    for (n, freq), amp in f.terms.items():
        if axis == 0:
            factor = -poly(I) * freq
        else:
            factor = poly(I) * kappa * n[axis - 1]
        terms[(n, freq)] = tuple(a.diff(gen) + factor * a for a in amp)

    return f._like(terms)


def mat_vec(matrix, amp):
    """Multiply a DomainMatrix (any coefficient domain) into an amplitude tuple."""
    rows, cols = matrix.shape
    if cols != len(amp):
        raise DimensionError(f"Matrix has {cols} columns, vector {len(amp)} entries")

    out = [RING.zero] * rows
    for (i, j), value in matrix.iter_items():
        if amp[j]:
            out[i] = out[i] + poly(value) * amp[j]
    return tuple(out)


def pointwise_sesquilinear(f, matrix, g):
    """Scalar wave function ``f^dagger M g``."""
    rows, cols = matrix.shape
    if f.dim != rows or g.dim != cols:
        raise DimensionError(
            f"Shapes {f.dim} x ({rows}, {cols}) x {g.dim} do not contract"
        )
    _common_kappa([f, g])

    out = ExpSum(1, None, merge_relations(f.relations, g.relations), f.kappa)
    fc = f.conjugate()

    for ((na, wa), amp_a), ((nb, wb), amp_b) in product(
        fc.terms.items(), g.terms.items()
    ):
        mg = mat_vec(matrix, amp_b)
        value = sum((a * b for a, b in zip(amp_a, mg)), RING.zero)
        if value:
            n = tuple(p + q for p, q in zip(na, nb))
            out._accumulate(n, wa + wb, (value,))

    return out


def box_integrate(s):
    r"""Integrate a scalar wave function over the periodic box ``[0, L)^3``.

    Lattice modes with nonzero momentum integrate to zero; polynomial amplitudes
    at zero momentum integrate monomial by monomial. The result is a scalar
    :class:`ExpSum` at zero momentum that may still depend on ``t``.
    """
    if s.dim != 1:
        raise DimensionError("box_integrate expects a scalar wave function")

    out = s._like({})
    for (n, freq), (amp,) in s.terms.items():
        if any(n):
            for axis, k in enumerate(n, start=1):
                if k and not is_coordinate_free(amp, axis):
                    raise BoxIntegrationError(
                        "Polynomial amplitude on a nonzero lattice mode is not "
                        "integrable exactly over the box"
                    )
            continue

        integral = {}
        for monom, coeff in amp.iterterms():
            a, b, c = monom[1:4]
            reduced = (monom[0], 0, 0, 0, monom[_L] + a + b + c + 3) + monom[_E:]
            weight = QQ(1, (a + 1) * (b + 1) * (c + 1))
            integral[reduced] = integral.get(reduced, QQ_I.zero) + coeff * QQ_I(weight)

        out._accumulate(ZERO_MOMENTUM, freq, (RING.from_dict(integral),))

    return out
