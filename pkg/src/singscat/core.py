"""Shared numeric vocabulary for the whole package.

Everything here works on the stationary equation

    psi'' + (k - U) psi = 0

written so that the spectral parameter k multiplies psi directly; the
physical wavenumber is sqrt(k).  Units are bare (hbar = 2m = 1 absorbed
into k and U).  State vectors are (psi, psi') and every propagator or
junction is a real 2x2 matrix acting on them from the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidExponent

# Below this |k|*x^2 the closed forms for S lose digits (and divide 0/0 at
# k = 0), so a 3-term series takes over.  Truncation error ~ (1e-4)^3/5040.
SERIES_WINDOW = 1e-4


@dataclass(frozen=True)
class Mat2:
    """Real 2x2 matrix acting on (psi, psi') state vectors."""

    m11: float
    m12: float
    m21: float
    m22: float

    def __post_init__(self):
        for entry in (self.m11, self.m12, self.m21, self.m22):
            if not math.isfinite(entry):
                raise ValueError("matrix entries must be finite")

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[float]]) -> "Mat2":
        (a, b), (c, d) = rows
        return Mat2(float(a), float(b), float(c), float(d))

    def rows(self) -> list[list[float]]:
        return [[self.m11, self.m12], [self.m21, self.m22]]

    def det(self) -> float:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def apply(self, v: tuple[float, float]) -> tuple[float, float]:
        """Matrix times state vector."""
        return (
            self.m11 * v[0] + self.m12 * v[1],
            self.m21 * v[0] + self.m22 * v[1],
        )

    def scale(self, factor: float) -> "Mat2":
        return Mat2(
            factor * self.m11,
            factor * self.m12,
            factor * self.m21,
            factor * self.m22,
        )

    def max_abs_diff(self, other: "Mat2") -> float:
        return max(
            abs(self.m11 - other.m11),
            abs(self.m12 - other.m12),
            abs(self.m21 - other.m21),
            abs(self.m22 - other.m22),
        )


@dataclass(frozen=True)
class PotentialSpec:
    """Point potential c * delta^m at the origin.

    m is the power of the delta factor (m > 0), c the coupling strength.
    """

    m: float
    c: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m > 0.0):
            raise InvalidExponent(f"exponent must be positive and finite, got {self.m}")
        if not math.isfinite(self.c):
            raise ValueError(f"coupling must be finite, got {self.c}")


@dataclass(frozen=True)
class ShellPotentialSpec:
    """Spherical shell carrying a point potential at radius a > 0."""

    base: PotentialSpec
    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"shell radius must be positive, got {self.a}")


def fundamental_pair(k: float, x: float) -> tuple[float, float, float, float]:
    """Uniform fundamental system of u'' + k u = 0, evaluated at x.

    Returns (C, S, C', S') where C(k, 0) = 1, C'(k, 0) = 0 and
    S(k, 0) = 0, S'(k, 0) = 1:

        k > 0:  C = cos(sqrt(k) x),   S = sin(sqrt(k) x)/sqrt(k)
        k = 0:  C = 1,                S = x
        k < 0:  C = cosh(sqrt(-k) x), S = sinh(sqrt(-k) x)/sqrt(-k)

    The derivatives close under C' = -k S and S' = C, so the pair is valid
    for either sign of k without branching at call sites.  For
    |k| * x^2 < 1e-4 the sine solution switches to its power series, which
    keeps S continuous in k across 0.  Extreme hyperbolic arguments
    overflow to inf rather than raising.
    """
    kx2 = k * x * x
    if k > 0.0:
        wx = math.sqrt(k) * x
        c = math.cos(wx)
    elif k < 0.0:
        wx = math.sqrt(-k) * x
        try:
            c = math.cosh(wx)
        except OverflowError:
            c = math.inf
    else:
        c = 1.0
    if abs(kx2) < SERIES_WINDOW:
        s = x * (1.0 - kx2 / 6.0 + kx2 * kx2 / 120.0)
    elif k > 0.0:
        s = math.sin(wx) / math.sqrt(k)
    else:
        try:
            s = math.sinh(wx) / math.sqrt(-k)
        except OverflowError:
            s = math.copysign(math.inf, x)
    return c, s, -k * s, c


def free_transfer(k: float, h: float) -> Mat2:
    """Propagator of (psi, psi') across a potential-free interval of width h.

    Unit determinant for every (k, h); h may be negative (backward
    propagation), and free_transfer(k, -h) inverts free_transfer(k, h).
    """
    c, s, _, _ = fundamental_pair(k, h)
    return Mat2(c, s, -k * s, c)


@dataclass(frozen=True)
class PiecewiseSolution:
    """Solution of the point-potential problem on both half lines.

    Coefficients are in the (C, S) basis anchored at the origin, so each
    coefficient pair is literally the one-sided boundary data
    (psi(0), psi'(0)) of its branch.  The right pair must equal the
    junction matrix applied to the left pair.
    """

    k: float
    left_coeffs: tuple[float, float]
    right_coeffs: tuple[float, float]
    junction: Mat2

    def __post_init__(self):
        expected = self.junction.apply(self.left_coeffs)
        scale = max(1.0, *(abs(v) for v in expected), *(abs(v) for v in self.left_coeffs))
        gap = max(
            abs(expected[0] - self.right_coeffs[0]),
            abs(expected[1] - self.right_coeffs[1]),
        )
        if gap > 1e-9 * scale:
            raise ValueError("right coefficients are not junction * left coefficients")

    @classmethod
    def from_left(
        cls, k: float, left_coeffs: tuple[float, float], junction: Mat2
    ) -> "PiecewiseSolution":
        """Build the solution determined by left boundary data."""
        return cls(k, tuple(left_coeffs), junction.apply(left_coeffs), junction)
