"""Annulus geometry, boundary quadrature grids, and the two boundary bases.

The domain is the annulus ``R < |z| < 1``.  Its boundary has two circles:
the unit circle (component ``"C"``) and the inner circle of radius ``R``
(component ``"C0"``).  Boundary functions are stored as samples on uniform
angular grids, one array per component, and all inner products use the
normalized arc-length measure that gives each circle mass one (total mass
two).  Points on the boundary are always addressed as (component, angle);
no complex arithmetic crosses from one component to the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import GridMismatchError

COMPONENTS = ("C", "C0")


def _is_power_of_two(m: int) -> bool:
    return m >= 1 and (m & (m - 1)) == 0


@dataclass(frozen=True)
class AnnulusGeometry:
    """Quadrature configuration for one annulus.

    Parameters
    ----------
    R : float
        Inner radius, ``0 < R < 1``.
    m_circle : int
        Number of uniform angular nodes per boundary circle.  Must be a
        power of two, at least 8, so the trapezoid rule integrates
        ``exp(i k t)`` exactly for ``|k| < m_circle``.
    m_radial : int
        Number of Gauss-Legendre nodes on ``[R, 1]`` for area integrals.
    """

    R: float = 0.5
    m_circle: int = 4096
    m_radial: int = 128

    def __post_init__(self):
        if not 0.0 < self.R < 1.0:
            raise ValueError(f"inner radius must satisfy 0 < R < 1, got {self.R}")
        if self.m_circle < 8 or not _is_power_of_two(self.m_circle):
            raise ValueError(
                f"m_circle must be a power of two >= 8, got {self.m_circle}"
            )
        if self.m_radial < 1:
            raise ValueError(f"m_radial must be positive, got {self.m_radial}")

    def angles(self) -> np.ndarray:
        """Uniform angular grid ``t_j = 2 pi j / m_circle``."""
        return 2.0 * np.pi * np.arange(self.m_circle) / self.m_circle

    def radial_nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Gauss-Legendre nodes and weights mapped from [-1, 1] to [R, 1]."""
        x, w = np.polynomial.legendre.leggauss(self.m_radial)
        half = 0.5 * (1.0 - self.R)
        mid = 0.5 * (1.0 + self.R)
        return mid + half * x, half * w


class BoundaryData(NamedTuple):
    """Samples of one boundary function on the two angular grids."""

    on_C: np.ndarray
    on_C0: np.ndarray


def circle_average(values: np.ndarray) -> complex:
    """Trapezoid average over one full circle (exact for band-limited data)."""
    return complex(np.mean(values))


def boundary_inner_product(f: BoundaryData, g: BoundaryData, geo: AnnulusGeometry) -> complex:
    """Inner product on the two-circle boundary.

    Computes ``avg_C(f conj(g)) + avg_C0(f conj(g))`` by the trapezoid rule
    on each circle, which is the normalized boundary measure of total mass
    two.  Raises :class:`GridMismatchError` if any sample array does not
    match ``geo.m_circle``.
    """
    for arr in (f.on_C, f.on_C0, g.on_C, g.on_C0):
        if len(arr) != geo.m_circle:
            raise GridMismatchError(
                f"sample length {len(arr)} does not match m_circle={geo.m_circle}"
            )
    top = np.mean(f.on_C * np.conj(g.on_C))
    bottom = np.mean(f.on_C0 * np.conj(g.on_C0))
    return complex(top + bottom)


def hardy_norm_const(n: int, R: float) -> float:
    """Normalizer ``sqrt(1 + R^(2n))`` so that ``z^n / const`` has unit norm."""
    return float(np.sqrt(1.0 + R ** (2 * n)))


def hardy_basis_eval(n: int, component: str, angles: np.ndarray, R: float) -> np.ndarray:
    """Evaluate the n-th normalized power basis function on one boundary circle.

    The function is ``z^n / sqrt(1 + R^(2n))``; on the inner circle the
    monomial contributes an extra factor ``R^n``.

    Parameters
    ----------
    n : int
        Fourier degree (any integer).
    component : str
        ``"C"`` for the unit circle or ``"C0"`` for the inner circle.
    angles : ndarray
        Angles at which to evaluate.
    R : float
        Inner radius.
    """
    c = hardy_norm_const(n, R)
    phase = np.exp(1j * n * np.asarray(angles, dtype=float))
    if component == "C":
        return phase / c
    if component == "C0":
        return (R**n) * phase / c
    raise ValueError(f"unknown boundary component {component!r}")


def complement_basis_eval(n: int, component: str, angles: np.ndarray, R: float) -> np.ndarray:
    """Evaluate the n-th basis function of the orthogonal complement.

    On the unit circle this is ``R^n z^n / sqrt(1 + R^(2n))``; on the inner
    circle it is ``-z^n / (R^n sqrt(1 + R^(2n)))``, where ``z^n`` carries
    the factor ``R^n`` from ``z = R exp(it)``, leaving a bare phase.
    Together with the functions from :func:`hardy_basis_eval` these form an
    orthonormal basis of boundary L2.
    """
    c = hardy_norm_const(n, R)
    phase = np.exp(1j * n * np.asarray(angles, dtype=float))
    if component == "C":
        return (R**n) * phase / c
    if component == "C0":
        return -phase / c
    raise ValueError(f"unknown boundary component {component!r}")


def hardy_basis_data(n: int, geo: AnnulusGeometry) -> BoundaryData:
    t = geo.angles()
    return BoundaryData(
        hardy_basis_eval(n, "C", t, geo.R), hardy_basis_eval(n, "C0", t, geo.R)
    )


def complement_basis_data(n: int, geo: AnnulusGeometry) -> BoundaryData:
    t = geo.angles()
    return BoundaryData(
        complement_basis_eval(n, "C", t, geo.R),
        complement_basis_eval(n, "C0", t, geo.R),
    )


def gram_matrix(geo: AnnulusGeometry, half_window: int) -> np.ndarray:
    """Quadrature Gram matrix of the combined basis over ``|n| <= half_window``.

    Rows/columns are ordered as the hardy family for n = -W..W followed by
    the complement family for n = -W..W.  For an orthonormal system the
    result is the identity up to quadrature rounding; callers assert the
    deviation.  Requires ``half_window <= m_circle / 4`` so no products
    alias on the grid.
    """
    W = int(half_window)
    if W > geo.m_circle // 4:
        raise ValueError(
            f"half_window {W} too large for m_circle={geo.m_circle}; need <= m_circle/4"
        )
    t = geo.angles()
    ns = range(-W, W + 1)
    rows_C = [hardy_basis_eval(n, "C", t, geo.R) for n in ns]
    rows_C += [complement_basis_eval(n, "C", t, geo.R) for n in ns]
    rows_C0 = [hardy_basis_eval(n, "C0", t, geo.R) for n in ns]
    rows_C0 += [complement_basis_eval(n, "C0", t, geo.R) for n in ns]
    A = np.asarray(rows_C)
    B = np.asarray(rows_C0)
    return (A @ A.conj().T + B @ B.conj().T) / geo.m_circle


def bergman_norm_const(n: int, R: float) -> float:
    """Normalizer making ``const * z^n`` a unit vector in the Bergman space.

    The area measure is normalized so the squared monomial norm is the
    radial moment ``integral_R^1 r^(2n+1) dr``; the closed form for its
    inverse square root is ``sqrt(2(n+1) / (1 - R^(2(n+1))))`` with the
    logarithmic limit at ``n = -1``.
    """
    if n == -1:
        return float(1.0 / np.sqrt(np.log(1.0 / R)))
    k = 2 * (n + 1)
    return float(np.sqrt(k / (1.0 - R**k)))


def bergman_monomial_norm_quadrature(n: int, geo: AnnulusGeometry) -> float:
    """Quadrature value of the squared Bergman norm of ``z^n`` (radial moment)."""
    r, w = geo.radial_nodes()
    return float(np.sum(w * r ** (2 * n + 1)))
