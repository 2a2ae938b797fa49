"""s-wave scattering off a singular spherical shell.

The radial equation for the l = 0 partial wave,

    R'' + (2/r) R' + (k - U) R = 0,

reduces under u = r R to the line problem u'' + (k - U) u = 0 with
u(0) = 0, so a shell potential at radius a is handled by the same
junction matrices as a point potential on the line.  Regularity at the
origin fixes the interior solution to a multiple of sin(sqrt(k) r); the
junction at r = a produces the exterior boundary data, and the phase
shift follows from

    tan(sqrt(k) a + delta0) = sqrt(k) u(a+) / u'(a+).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Mat2, ShellPotentialSpec, fundamental_pair
from .errors import NonPositiveEnergy
from .junction import DEFAULT_RESONANCE_TOL, IvChoice, junction_matrix

# Below r = _SERIES_R_FRACTION * a, R = u/r is evaluated through the
# series of sin(sqrt(k) r)/r instead of naive division.
_SERIES_R_FRACTION = 1e-12


@dataclass(frozen=True)
class RadialSolution:
    """Reduced radial solution u(r), normalized to unit exterior amplitude.

    Interior: u = interior_amplitude * sin(sqrt(k) r) for r < a.
    Exterior: u = alpha C(k, r - a) + beta S(k, r - a) for r > a, with
    (alpha, beta) = junction applied to the interior boundary data, which
    makes the exterior asymptote exactly sin(sqrt(k) r + delta0).
    """

    shell: ShellPotentialSpec
    k: float
    junction: Mat2
    interior_amplitude: float
    exterior_coeffs: tuple[float, float]


@dataclass(frozen=True)
class RadialResult:
    """Phase shift and s-wave cross section of a shell at energy k > 0."""

    k: float
    a: float
    delta0: float
    sigma0: float
    interior_amplitude: float


def _principal_shift(raw: float) -> float:
    """Reduce a phase mod pi into (-pi/2, pi/2]."""
    shift = math.remainder(raw, math.pi)
    if shift <= -0.5 * math.pi:
        shift += math.pi
    return shift


def s_wave_solution(
    shell: ShellPotentialSpec,
    k: float,
    choice: IvChoice | None = None,
    resonance_tol: float = DEFAULT_RESONANCE_TOL,
) -> RadialSolution:
    """Solve the reduced shell problem at energy k > 0."""
    if not (k > 0.0):
        raise NonPositiveEnergy(f"s-wave scattering needs k > 0, got {k}")
    junction = junction_matrix(shell.base, choice, resonance_tol)
    q = math.sqrt(k)
    a = shell.a
    u_a = math.sin(q * a)
    du_a = q * math.cos(q * a)
    alpha, beta = junction.apply((u_a, du_a))
    # Exterior asymptotic amplitude of alpha C + beta S is hypot(alpha, beta/q).
    amp = math.hypot(alpha, beta / q)
    interior = 1.0 / amp
    return RadialSolution(
        shell=shell,
        k=k,
        junction=junction,
        interior_amplitude=interior,
        exterior_coeffs=(alpha * interior, beta * interior),
    )


def s_wave_solve(
    shell: ShellPotentialSpec,
    k: float,
    choice: IvChoice | None = None,
    resonance_tol: float = DEFAULT_RESONANCE_TOL,
) -> RadialResult:
    """Phase shift delta0 in (-pi/2, pi/2] and cross section sigma0.

    sigma0 = (4 pi / k) sin^2(delta0), bounded by 4 pi / k.
    """
    sol = s_wave_solution(shell, k, choice, resonance_tol)
    q = math.sqrt(k)
    j = sol.junction
    if j.m12 == 0.0 and j.m21 == 0.0 and abs(j.m11) == 1.0 and j.m11 == j.m22:
        # junction is +-identity: the exterior wave is the interior free wave
        # up to overall sign, so the shift is zero exactly, not via atan2
        delta0 = 0.0
    else:
        alpha, beta = sol.exterior_coeffs
        delta0 = _principal_shift(math.atan2(q * alpha, beta) - q * shell.a)
    sigma0 = (4.0 * math.pi / k) * math.sin(delta0) ** 2
    return RadialResult(
        k=k,
        a=shell.a,
        delta0=delta0,
        sigma0=sigma0,
        interior_amplitude=sol.interior_amplitude,
    )


def radial_wavefunction(
    solution: RadialSolution, rs
) -> list[tuple[float, float, float]]:
    """Sample (r, R, u) of a radial solution at radii r > 0.

    R = u/r; near the origin the removable singularity is evaluated by
    series, never by naive division below r = 1e-12 * a.
    """
    k = solution.k
    q = math.sqrt(k)
    a = solution.shell.a
    amp = solution.interior_amplitude
    alpha, beta = solution.exterior_coeffs
    out: list[tuple[float, float, float]] = []
    for r in rs:
        if not r > 0.0:
            raise ValueError(f"radii must be positive, got {r}")
        if r < a:
            if r < _SERIES_R_FRACTION * a:
                kr2 = k * r * r
                big_r = amp * q * (1.0 - kr2 / 6.0 + kr2 * kr2 / 120.0)
                u = big_r * r
            else:
                u = amp * math.sin(q * r)
                big_r = u / r
        else:
            c, s, _, _ = fundamental_pair(k, r - a)
            u = alpha * c + beta * s
            big_r = u / r
        out.append((r, big_r, u))
    return out
