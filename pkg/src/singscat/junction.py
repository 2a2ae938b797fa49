"""Junction matrices for powers of the delta potential.

A potential c * delta^m concentrated at the origin connects the two half
lines through a 2x2 matrix J acting on (psi, psi').  Which matrix (if any)
exists depends on (m, c):

    0 < m < 1           identity, any c (the potential has no effect)
    m = 1               [[1, 0], [c, 1]] (ordinary delta of strength c)
    m = 2, c = -(n*pi)^2  (-1)^n * identity (discrete resonant couplings)
    m > 2, c < 0        [[a, 0], [b, 1]] with a = +-1 and b free, so the
                        caller must pick (a, b)
    anything else       no junction exists (this includes every m in the
                        open band (1, 2), m = 2 off resonance or with
                        c > 0, and m > 2 with c >= 0)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import Mat2, PotentialSpec
from .errors import MissingChoice, UndefinedRegime

# Absolute tolerance for deciding m == 1 and m == 2.
EXPONENT_TOL = 1e-12

# Default relative tolerance on sqrt(-c)/pi when matching resonant levels.
DEFAULT_RESONANCE_TOL = 1e-9


class RegimeKind(str, Enum):
    NO_EFFECT = "no_effect"
    STANDARD_DELTA = "standard_delta"
    RESONANT_SQUARE = "resonant_square"
    INDETERMINATE = "indeterminate"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class Regime:
    """Classification of an (m, c) pair.

    n is set only for RESONANT_SQUARE, reason only for UNDEFINED.
    """

    kind: RegimeKind
    n: int | None = None
    reason: str | None = None


@dataclass(frozen=True)
class IvChoice:
    """Caller-supplied resolution (a, b) of the doubly indeterminate case."""

    a: int
    b: float

    def __post_init__(self):
        if self.a not in (1, -1):
            raise ValueError(f"a must be +1 or -1, got {self.a}")
        if not math.isfinite(self.b):
            raise ValueError(f"b must be finite, got {self.b}")


def classify_regime(
    p: PotentialSpec, resonance_tol: float = DEFAULT_RESONANCE_TOL
) -> Regime:
    """Assign the unique regime of a point potential.

    The exponent comparisons m == 1 and m == 2 use the absolute tolerance
    EXPONENT_TOL.  Resonance matching at m = 2 is relative: with
    nu = sqrt(-c)/pi, level n = round(nu) matches iff
    |nu - n| <= resonance_tol * max(1, nu).
    """
    m, c = p.m, p.c
    if abs(m - 1.0) <= EXPONENT_TOL:
        return Regime(RegimeKind.STANDARD_DELTA)
    if abs(m - 2.0) <= EXPONENT_TOL:
        if c > 0.0:
            return Regime(
                RegimeKind.UNDEFINED, reason="m = 2 with positive coupling"
            )
        nu = math.sqrt(-c) / math.pi
        n = round(nu)
        if abs(nu - n) <= resonance_tol * max(1.0, nu):
            return Regime(RegimeKind.RESONANT_SQUARE, n=n)
        return Regime(
            RegimeKind.UNDEFINED,
            reason="m = 2 coupling is not a resonant level -(n*pi)^2",
        )
    if m < 1.0:
        return Regime(RegimeKind.NO_EFFECT)
    if m < 2.0:
        return Regime(
            RegimeKind.UNDEFINED, reason="exponents in the open band (1, 2)"
        )
    # m > 2 from here on
    if c < 0.0:
        return Regime(RegimeKind.INDETERMINATE)
    return Regime(
        RegimeKind.UNDEFINED, reason="m > 2 with non-negative coupling"
    )


def junction_matrix(
    p: PotentialSpec,
    choice: IvChoice | None = None,
    resonance_tol: float = DEFAULT_RESONANCE_TOL,
) -> Mat2:
    """Junction matrix of a point potential.

    choice must be supplied exactly when the regime is indeterminate;
    anywhere else the matrix is fully determined and a stray choice is
    rejected.

    Raises
    ------
    UndefinedRegime
        if no junction exists for (m, c).
    MissingChoice
        if the regime is indeterminate and choice is None.
    """
    regime = classify_regime(p, resonance_tol)
    if regime.kind is RegimeKind.INDETERMINATE:
        if choice is None:
            raise MissingChoice(
                "m > 2 with c < 0 is doubly indeterminate, supply (a, b)"
            )
        return Mat2(float(choice.a), 0.0, choice.b, 1.0)
    if choice is not None:
        raise ValueError("choice is only meaningful for the indeterminate regime")
    if regime.kind is RegimeKind.NO_EFFECT:
        return Mat2.identity()
    if regime.kind is RegimeKind.STANDARD_DELTA:
        return Mat2(1.0, 0.0, p.c, 1.0)
    if regime.kind is RegimeKind.RESONANT_SQUARE:
        sign = -1.0 if regime.n % 2 else 1.0
        return Mat2(sign, 0.0, 0.0, sign)
    raise UndefinedRegime(regime.reason or "no junction exists")


def resonant_couplings(n_max: int) -> list[tuple[int, float]]:
    """Couplings c_n = -(n*pi)^2, n = 0 .. n_max, that admit a junction at m = 2."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    # + 0.0 keeps the n = 0 entry at plain zero instead of -0.0
    return [(n, -((n * math.pi) ** 2) + 0.0) for n in range(n_max + 1)]
