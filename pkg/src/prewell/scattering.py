"""Reflection/transmission probabilities from transfer matrices (E > 0),
plus the closed forms for rectangles, the delta limit, and the scaled well."""

import math
from dataclasses import dataclass

from .potential import PotentialProfile, SqueezeSpec
from .transfer import TransferMatrix, profile_matrix, segment_matrix
from .potential import realize

# tolerated det drift, relative to the entry magnitude of the composition
DET_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ScatteringResult:
    """u = l11 - l22, v = k l12 + l21/k, and the derived probabilities."""

    u: float
    v: float
    refl_prob: float
    trans_prob: float


def scatter(matrix: TransferMatrix, energy: float) -> ScatteringResult:
    """Scattering probabilities of a structure with transfer matrix ``matrix``.

    Requires energy > 0 and a unit determinant (up to floating-point
    cancellation in the entry products); anything else signals a corrupted
    composition upstream.
    """
    if not (math.isfinite(energy) and energy > 0):
        raise ValueError(f"scattering energy must be > 0, got {energy}")
    det_err = abs(matrix.det - 1.0) / matrix.det_scale()
    if det_err > DET_TOLERANCE:
        raise ValueError(f"transfer matrix determinant off unity by {det_err:.3e} (relative)")
    k = math.sqrt(energy)
    u = matrix.l11 - matrix.l22
    v = k * matrix.l12 + matrix.l21 / k
    denom = 4.0 + u * u + v * v
    return ScatteringResult(u, v, (u * u + v * v) / denom, 4.0 / denom)


def transmission(matrix: TransferMatrix, energy: float) -> float:
    return scatter(matrix, energy).trans_prob


def profile_transmission(profile: PotentialProfile, energy: float) -> float:
    return scatter(profile_matrix(profile, energy), energy).trans_prob


def rectangle_transmission(height: float, width: float, energy: float) -> float:
    """Closed-form transmission of one rectangular well/barrier.

    T = [1 + height^2 sin^2(q l) / (4 E (E - height))]^-1, written through
    sin(q l)/q so the same expression covers the tunneling branch and the
    q -> 0 crossover. Kept independent of the transfer-matrix code on
    purpose: it is the second route of a dual-path check.
    """
    if not (math.isfinite(energy) and energy > 0):
        raise ValueError(f"scattering energy must be > 0, got {energy}")
    w = energy - height
    if abs(w) < 1e-12:
        z = w * width * width
        s = 1.0
        term = 1.0
        for m in range(1, 7):
            term *= -z / ((2 * m) * (2 * m + 1))
            s += term
        sinc = width * s
    elif w > 0:
        q = math.sqrt(w)
        sinc = math.sin(q * width) / q
    else:
        p = math.sqrt(-w)
        if p * width > 700.0:
            return 0.0
        sinc = math.sinh(p * width) / p
    return 1.0 / (1.0 + height * height * sinc * sinc / (4.0 * energy))


def delta_barrier_transmission(alpha: float, k: float) -> float:
    """Transmission across a delta barrier of strength alpha at wavenumber k."""
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k}")
    r = alpha / (2.0 * k)
    return 1.0 / (1.0 + r * r)


def squeezed_well_transmission(spec: SqueezeSpec, energy: float, epsilon: float | None = None) -> float:
    """Closed-form transmission of the scaled well (nu = 2).

    Must agree with scatter(segment_matrix(realize(spec))) to machine
    precision; the generic route is the other side of that check.
    """
    if spec.nu != 2:
        raise ValueError("squeezed_well_transmission applies to nu=2 specs")
    if not (math.isfinite(energy) and energy > 0):
        raise ValueError(f"scattering energy must be > 0, got {energy}")
    eps = spec.epsilon if epsilon is None else epsilon
    if not (math.isfinite(eps) and eps > 0):
        raise ValueError(f"epsilon must be finite and > 0, got {eps}")
    e2 = eps * eps
    s = math.sin(math.sqrt(e2 * energy + spec.d) * spec.a)
    x = spec.d * spec.d * s * s / (4.0 * e2 * energy * (e2 * energy + spec.d))
    return 1.0 / (1.0 + x)


def squeezed_well_growth(spec: SqueezeSpec, energy: float, epsilon: float | None = None) -> float:
    """q |sin(q l)| of the realized well: diverges like 1/eps off the
    resonance thicknesses and is suppressed on them."""
    seg = realize(spec, epsilon)
    q = math.sqrt(energy - seg.height)
    return q * abs(math.sin(q * seg.width))


def resonance_thicknesses(d: float, n_max: int) -> list:
    """First n_max thickness values a_n = n pi / sqrt(d), increasing."""
    if not (math.isfinite(d) and d > 0):
        raise ValueError(f"d must be finite and > 0, got {d}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    root = math.sqrt(d)
    return [n * math.pi / root for n in range(1, n_max + 1)]


def resonance_index(d: float, a: float, tol: float = 1e-6) -> int | None:
    """Index n if (d, a) sits on the resonance set within tol, else None.

    Classification only; limit formulas take exact a_n values and never
    need this band.
    """
    m = math.sqrt(d) * a / math.pi
    n = round(m)
    if n >= 1 and abs(m - n) < tol:
        return n
    return None


def is_resonant(d: float, a: float, tol: float = 1e-6) -> bool:
    return resonance_index(d, a, tol) is not None
