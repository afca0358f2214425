"""Symbols on the annulus boundary and in polar form, plus their transforms.

A boundary symbol carries one Fourier coefficient sequence per boundary
circle; the two sequences are independent.  ``ExactSymbol`` stores finite
coefficient dictionaries, ``SampledSymbol`` stores grid samples.  Polar
symbols for the area (Bergman) theory are finite sums of angular bands,
each with its own radial profile.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, GridMismatchError
from .geometry import AnnulusGeometry, BoundaryData


# ---------------------------------------------------------------------------
# boundary symbols


@dataclass(frozen=True)
class ExactSymbol:
    """Boundary symbol given by finite coefficient tables, one per circle.

    ``coeffs_C[n]`` is the coefficient of ``exp(i n t)`` for the values on
    the unit circle, ``coeffs_C0[n]`` the same for the values on the inner
    circle (as a function of its own angle).
    """

    coeffs_C: dict[int, complex] = field(default_factory=dict)
    coeffs_C0: dict[int, complex] = field(default_factory=dict)

    def support(self) -> list[int]:
        keys = set(self.coeffs_C) | set(self.coeffs_C0)
        return sorted(k for k in keys if self.pair(k) != (0.0, 0.0))

    def pair(self, n: int) -> tuple[complex, complex]:
        return (
            complex(self.coeffs_C.get(n, 0.0)),
            complex(self.coeffs_C0.get(n, 0.0)),
        )

    def is_zero(self) -> bool:
        return not self.support()

    def top_degree(self) -> int:
        sup = self.support()
        if not sup:
            raise ValueError("zero symbol has no top degree")
        return sup[-1]

    def bandwidth(self) -> int:
        sup = self.support()
        return max((abs(n) for n in sup), default=0)

    def neg_reach(self) -> int:
        """How far below zero the support extends (0 for analytic-type support)."""
        sup = self.support()
        return max(0, -sup[0]) if sup else 0


@dataclass(frozen=True)
class SampledSymbol:
    """Boundary symbol given by samples on the two standard angular grids."""

    on_C: np.ndarray
    on_C0: np.ndarray

    def __post_init__(self):
        if len(self.on_C) != len(self.on_C0):
            raise GridMismatchError("the two circles must use the same grid size")


BoundarySymbol = ExactSymbol | SampledSymbol


def laurent_symbol(coeffs: dict[int, complex], R: float) -> ExactSymbol:
    """Boundary trace of a single Laurent polynomial ``sum c_n z^n``.

    On the inner circle the monomial ``z^n`` contributes ``R^n exp(i n t)``,
    so the two coefficient tables are locked together; symbols of this form
    multiply the Hardy space into itself.
    """
    return ExactSymbol(
        coeffs_C={n: complex(c) for n, c in coeffs.items()},
        coeffs_C0={n: complex(c) * R**n for n, c in coeffs.items()},
    )


def constant_symbol(value_C: complex, value_C0: complex) -> ExactSymbol:
    return ExactSymbol({0: complex(value_C)}, {0: complex(value_C0)})


def sample_symbol(sym: BoundarySymbol, geo: AnnulusGeometry) -> BoundaryData:
    """Boundary grid samples of a symbol (exact synthesis or passthrough)."""
    if isinstance(sym, SampledSymbol):
        if len(sym.on_C) != geo.m_circle:
            raise GridMismatchError(
                f"sampled symbol has {len(sym.on_C)} nodes, geometry wants {geo.m_circle}"
            )
        return BoundaryData(np.asarray(sym.on_C), np.asarray(sym.on_C0))
    return BoundaryData(
        _synthesize(sym.coeffs_C, geo.m_circle),
        _synthesize(sym.coeffs_C0, geo.m_circle),
    )


def _synthesize(coeffs: dict[int, complex], m: int) -> np.ndarray:
    spectrum = np.zeros(m, dtype=complex)
    for n, c in coeffs.items():
        if abs(n) >= m // 2:
            raise AliasingError(f"coefficient index {n} out of range for grid size {m}")
        spectrum[n % m] += c
    return np.fft.ifft(spectrum) * m


def _analyze(values: np.ndarray, n: int) -> complex:
    m = len(values)
    if abs(n) >= m // 2:
        raise AliasingError(f"Fourier index {n} is aliased on a grid of {m} nodes")
    phase = np.exp(-2j * np.pi * n * np.arange(m) / m)
    return complex(np.mean(values * phase))


def fourier_pair(sym: BoundarySymbol, n: int) -> tuple[complex, complex]:
    """The pair of n-th Fourier coefficients (unit circle, inner circle).

    Exact symbols answer from their tables; sampled symbols use the
    discrete Fourier sum, raising :class:`AliasingError` when ``|n|`` is
    not resolved by the grid.
    """
    if isinstance(sym, ExactSymbol):
        return sym.pair(n)
    return _analyze(sym.on_C, n), _analyze(sym.on_C0, n)


def multiply_symbols(a: BoundarySymbol, b: BoundarySymbol, geo: AnnulusGeometry | None = None) -> BoundarySymbol:
    """Pointwise product of two boundary symbols.

    Exact inputs convolve coefficient tables per circle and stay exact;
    any sampled input forces sampling (which needs ``geo``).
    """
    if isinstance(a, ExactSymbol) and isinstance(b, ExactSymbol):
        return ExactSymbol(
            _convolve(a.coeffs_C, b.coeffs_C), _convolve(a.coeffs_C0, b.coeffs_C0)
        )
    if geo is None:
        raise ValueError("sampled multiplication requires a geometry")
    fa, fb = sample_symbol(a, geo), sample_symbol(b, geo)
    return SampledSymbol(fa.on_C * fb.on_C, fa.on_C0 * fb.on_C0)


def _convolve(a: dict[int, complex], b: dict[int, complex]) -> dict[int, complex]:
    out: dict[int, complex] = {}
    for n, ca in a.items():
        for k, cb in b.items():
            out[n + k] = out.get(n + k, 0.0) + ca * cb
    return {n: c for n, c in out.items() if c != 0.0}


def conjugate_symbol(sym: BoundarySymbol) -> BoundarySymbol:
    """Complex conjugate symbol; coefficients reflect and conjugate."""
    if isinstance(sym, ExactSymbol):
        return ExactSymbol(
            {-n: np.conj(c) for n, c in sym.coeffs_C.items()},
            {-n: np.conj(c) for n, c in sym.coeffs_C0.items()},
        )
    return SampledSymbol(np.conj(sym.on_C), np.conj(sym.on_C0))


# ---------------------------------------------------------------------------
# circle symbols (for the disc-space operators)


@dataclass(frozen=True)
class ExactCircle:
    """Function on the unit circle with a finite Fourier table."""

    coeffs: dict[int, complex] = field(default_factory=dict)

    def hat(self, n: int) -> complex:
        return complex(self.coeffs.get(n, 0.0))

    def bandwidth(self) -> int:
        return max((abs(n) for n, c in self.coeffs.items() if c != 0.0), default=0)

    def sample(self, m: int) -> np.ndarray:
        return _synthesize(self.coeffs, m)


@dataclass(frozen=True)
class SampledCircle:
    """Function on the unit circle given by uniform grid samples."""

    values: np.ndarray

    def hat(self, n: int) -> complex:
        return _analyze(self.values, n)

    def sample(self, m: int) -> np.ndarray:
        if len(self.values) != m:
            raise GridMismatchError(f"have {len(self.values)} samples, want {m}")
        return np.asarray(self.values)


CircleSymbol = ExactCircle | SampledCircle


def conjugate_circle(phi: CircleSymbol) -> CircleSymbol:
    if isinstance(phi, ExactCircle):
        return ExactCircle({-n: np.conj(c) for n, c in phi.coeffs.items()})
    return SampledCircle(np.conj(phi.values))


def pullback_symbols(sym: BoundarySymbol) -> tuple[CircleSymbol, CircleSymbol]:
    """Transplant both boundary restrictions to the unit circle.

    The unit-circle restriction is kept as is.  The inner-circle
    restriction is composed with ``theta -> R / z`` viewed on angles,
    i.e. the angle is negated: coefficient index ``n`` of the inner table
    lands at index ``-n`` of the transplanted circle function.
    """
    if isinstance(sym, ExactSymbol):
        return (
            ExactCircle(dict(sym.coeffs_C)),
            ExactCircle({-n: c for n, c in sym.coeffs_C0.items()}),
        )
    flipped = np.concatenate((sym.on_C0[:1], sym.on_C0[:0:-1]))
    return SampledCircle(np.asarray(sym.on_C)), SampledCircle(flipped)


# ---------------------------------------------------------------------------
# radial profiles and polar symbols (Bergman side)


@dataclass(frozen=True)
class PolyProfile:
    """Radial profile that is a polynomial ``sum_m c_m r^m`` on [R, 1]."""

    coeffs: dict[int, complex] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coeffs.values())

    def degree(self) -> int:
        live = [m for m, c in self.coeffs.items() if c != 0.0]
        if not live:
            raise ValueError("zero profile has no degree")
        return max(live)

    def eval(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r, dtype=complex)
        for m, c in self.coeffs.items():
            out += c * r ** float(m)
        return out

    def is_monomial(self) -> bool:
        return len([c for c in self.coeffs.values() if c != 0.0]) == 1


@dataclass(frozen=True)
class SampledProfile:
    """Radial profile given by values at the geometry's radial nodes."""

    values: np.ndarray

    def is_zero(self) -> bool:
        return bool(np.all(self.values == 0.0))

    def eval(self, r: np.ndarray) -> np.ndarray:
        raise GridMismatchError(
            "sampled profiles are bound to their quadrature nodes and cannot be re-evaluated"
        )


RadialProfile = PolyProfile | SampledProfile


@dataclass(frozen=True)
class PolarSymbol:
    """Finite sum of angular bands ``f_k(r) exp(i k theta)``."""

    bands: dict[int, RadialProfile] = field(default_factory=dict)

    def live_bands(self) -> list[int]:
        return sorted(k for k, p in self.bands.items() if not p.is_zero())

    def is_zero(self) -> bool:
        return not self.live_bands()

    def top_band(self) -> int:
        lb = self.live_bands()
        if not lb:
            raise ValueError("zero polar symbol has no top band")
        return lb[-1]

    def bandwidth(self) -> int:
        lb = self.live_bands()
        return max((abs(k) for k in lb), default=0)

    def neg_reach(self) -> int:
        lb = self.live_bands()
        return max(0, -lb[0]) if lb else 0


def single_band(k: int, profile: RadialProfile) -> PolarSymbol:
    return PolarSymbol({k: profile})


# ---------------------------------------------------------------------------
# file formats


def _coeff_rows(coeffs: dict[int, complex]) -> list[list]:
    return [
        [int(n), float(np.real(c)), float(np.imag(c))]
        for n, c in sorted(coeffs.items())
        if c != 0.0
    ]


def _rows_to_coeffs(rows) -> dict[int, complex]:
    out: dict[int, complex] = {}
    for n, re, im in rows:
        out[int(n)] = complex(float(re), float(im))
    return out


def boundary_symbol_to_json(sym: ExactSymbol, R: float) -> dict:
    return {
        "repr": "exact",
        "R": float(R),
        "coeffs_C": _coeff_rows(sym.coeffs_C),
        "coeffs_C0": _coeff_rows(sym.coeffs_C0),
    }


def polar_symbol_to_json(sym: PolarSymbol, R: float) -> dict:
    bands = []
    for k in sorted(sym.bands):
        profile = sym.bands[k]
        if not isinstance(profile, PolyProfile):
            raise ValueError("only polynomial radial profiles have a file form")
        bands.append([int(k), _coeff_rows(profile.coeffs)])
    return {"repr": "polar", "R": float(R), "bands": bands}


def symbol_from_json(doc: dict):
    """Parse a symbol document; returns ``(symbol, R)``."""
    kind = doc.get("repr")
    if kind == "exact":
        return (
            ExactSymbol(
                _rows_to_coeffs(doc.get("coeffs_C", [])),
                _rows_to_coeffs(doc.get("coeffs_C0", [])),
            ),
            float(doc["R"]),
        )
    if kind == "polar":
        bands = {
            int(k): PolyProfile(_rows_to_coeffs(rows)) for k, rows in doc.get("bands", [])
        }
        return PolarSymbol(bands), float(doc["R"])
    raise ValueError(f"unknown symbol repr {kind!r}")


def write_symbol(path, sym, R: float) -> None:
    if isinstance(sym, ExactSymbol):
        doc = boundary_symbol_to_json(sym, R)
    elif isinstance(sym, PolarSymbol):
        doc = polar_symbol_to_json(sym, R)
    else:
        raise ValueError("only exact boundary or polar symbols can be written")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def read_symbol(path):
    with open(path, "r", encoding="utf-8") as fh:
        return symbol_from_json(json.load(fh))
