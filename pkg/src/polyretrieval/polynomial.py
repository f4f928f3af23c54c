"""Dense complex polynomials on the unit disk.

Coefficients are stored lowest power first, so ``coeffs[k]`` multiplies
``z**k``. All operations are pure and return new objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _numeric
from ._numeric import COMPLEX, roots_of_unity


@dataclass(frozen=True)
class Poly:
    """Complex polynomial with ``degree_bound`` coefficients c_0..c_{d-1}.

    Trailing zeros are allowed, so the true degree may be smaller than
    ``degree_bound - 1``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=COMPLEX).reshape(-1)
        if c.size == 0:
            raise ValueError("a polynomial needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree_bound(self) -> int:
        return self.coeffs.size

    @property
    def degree(self) -> int:
        """Actual degree; -1 for the zero polynomial."""
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else -1

    def __call__(self, z):
        return evaluate(self, z)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return multiply(self, other)
        return Poly(self.coeffs * other)

    __rmul__ = __mul__

    def __len__(self):
        return self.degree_bound

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"Poly({np.array2string(self.coeffs.astype(complex), precision=6)})"

    def to_json(self) -> list:
        return poly_to_json(self)


@dataclass(frozen=True)
class RootSet:
    """Roots together with the leading coefficient of the expanded product."""

    roots: np.ndarray
    leading: complex = 1.0

    def __post_init__(self):
        r = np.array(self.roots, dtype=COMPLEX).reshape(-1)
        r.setflags(write=False)
        object.__setattr__(self, "roots", r)
        object.__setattr__(self, "leading", COMPLEX(self.leading))

    def inner(self) -> np.ndarray:
        return self.roots[np.abs(self.roots) < 1]

    def outer(self) -> np.ndarray:
        return self.roots[np.abs(self.roots) > 1]


def evaluate(p: Poly, z):
    """Horner evaluation of ``p`` at a scalar or array of points."""
    z = np.asarray(z, dtype=COMPLEX)
    acc = np.full(z.shape, p.coeffs[-1], dtype=COMPLEX)
    for c in p.coeffs[-2::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def derivative(p: Poly) -> Poly:
    if p.degree_bound == 1:
        return Poly([0.0])
    k = np.arange(1, p.degree_bound)
    return Poly(k * p.coeffs[1:])


def multiply(p: Poly, q: Poly) -> Poly:
    """Cauchy product; the result has ``p.d + q.d - 1`` coefficients."""
    return Poly(np.convolve(p.coeffs, q.coeffs))


def pad(p: Poly, d: int) -> Poly:
    if p.degree_bound > d:
        raise ValueError(f"cannot pad degree bound {p.degree_bound} down to {d}")
    out = np.zeros(d, dtype=COMPLEX)
    out[: p.degree_bound] = p.coeffs
    return Poly(out)


def reverse(p: Poly, d: int) -> Poly:
    """Coefficients of ``z**(d-1) * p(1/z)``.

    Pure index permutation after zero padding to length ``d``, hence an
    exact involution.
    """
    return Poly(pad(p, d).coeffs[::-1])


def from_roots(rs: RootSet) -> Poly:
    """Expand ``leading * prod(z - z_j)`` in root order."""
    c = np.ones(1, dtype=COMPLEX)
    for r in rs.roots:
        c = np.convolve(c, [-r, 1.0])
    return Poly(rs.leading * c)


def unit_circle(n: int) -> np.ndarray:
    """The ``n`` roots of unity exp(2 pi i q / n), q = 0..n-1."""
    return roots_of_unity(n)


def circle_extrema(p: Poly, grid: int = 4096) -> tuple[float, float, float]:
    """Grid estimates of min |p|, max |p| and max |p'| on the unit circle.

    The minimum is an over-estimate and the maxima are under-estimates of
    the true extrema; increase ``grid`` to tighten them.
    """
    if grid < 16 * p.degree_bound:
        raise ValueError(f"grid must be at least 16*d = {16 * p.degree_bound}")
    z = unit_circle(grid)
    absf = np.abs(evaluate(p, z))
    absdf = np.abs(evaluate(derivative(p), z))
    return float(absf.min()), float(absf.max()), float(absdf.max())


def error_up_to_phase(truth: Poly, approx: Poly) -> tuple[complex, float]:
    """Max coefficient error after aligning ``approx`` by a unimodular constant.

    The constant ``c`` maximizes Re <approx, c truth>, i.e. it is the exact
    least-squares alignment. Returns ``(c, err)`` where
    ``err = max_k |truth_k - conj(c) approx_k|``.
    """
    if truth.degree_bound != approx.degree_bound:
        raise ValueError("degree bounds differ")
    s = np.vdot(truth.coeffs, approx.coeffs)
    c = s / abs(s) if s != 0 else COMPLEX(1)
    err = np.max(np.abs(truth.coeffs - np.conj(c) * approx.coeffs))
    return complex(c), float(err)


def poly_to_json(p: Poly) -> list:
    return [[c.real, c.imag] for c in p.coeffs]


def poly_from_json(data: Sequence) -> Poly:
    """Parse a JSON array of ``[re, im]`` pairs (bare reals are accepted)."""
    out = []
    for item in data:
        if isinstance(item, (int, float)):
            out.append(COMPLEX(item))
        else:
            re, im = item
            out.append(COMPLEX(re) + 1j * COMPLEX(im))
    return Poly(out)


def load_poly(path) -> Poly:
    return poly_from_json(_numeric.load(path))


def save_poly(p: Poly, path):
    _numeric.dump(poly_to_json(p), path)
