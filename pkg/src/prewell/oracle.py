"""Independent verification paths: Numerov integration and the textbook
even/odd square-well solver.

These exist only to validate the transfer-matrix pipeline; production
numbers never come from here. The Numerov propagation runs per segment
(the recurrence assumes a smooth coefficient, so steps never straddle a
potential jump) and passes (psi, psi') across interfaces, where both are
continuous.
"""

import cmath
import math
from dataclasses import dataclass

from .potential import PotentialProfile, Segment
from .transfer import TransferMatrix


class OracleConvergenceError(RuntimeError):
    """Numerov self-convergence gate not met within the halving budget."""


@dataclass(frozen=True)
class NumerovConfig:
    """step: target grid step in nm; padding: zero-potential margin added
    on each side; the gate halves the step until |T(h) - T(h/2)| < gate_tol."""

    step: float = 1e-3
    padding: float = 0.5
    gate_tol: float = 1e-8
    max_halvings: int = 5

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValueError(f"step must be finite and > 0, got {self.step}")
        if self.padding < 0:
            raise ValueError(f"padding must be >= 0, got {self.padding}")


DEFAULT_NUMEROV = NumerovConfig()


def _coshm1_series(z):
    # cosh(sqrt(z) x)-style series minus its leading 1, to keep the first
    # propagation step free of cancellation
    t = z / 2.0
    s = t
    for m in range(2, 14):
        t *= z / ((2 * m - 1) * (2 * m))
        s += t
    return s


def _sinhc_series(z):
    s = 1.0
    t = 1.0
    for m in range(1, 13):
        t *= z / ((2 * m) * (2 * m + 1))
        s += t
    return s


def _segment_steps(width, g, step):
    # keep |g| h^2 small so the first/last Taylor steps and the recurrence
    # stay well inside their convergence range
    n = max(4, math.ceil(width / step))
    if g != 0.0:
        n = max(n, math.ceil(4.0 * width * math.sqrt(abs(g))))
    return n


def _propagate_segment(psi, dpsi, width, g, step):
    """Advance (psi, psi') across one constant-g segment with Numerov.

    psi'' = g * psi; works for real or complex psi. The recurrence runs in
    summed (delta) form, d_j = d_{j-1} + z psi_j / (1 - z/12) with
    z = g h^2: the textbook three-term form buries the physics in the
    low digits of 2 + O(h^2) and its rounding error grows as 1/h^2. The
    first step and the endpoint derivative use the constant-g Taylor
    series.
    """
    n = _segment_steps(width, g, step)
    h = width / n
    z = g * h * h
    sh = _sinhc_series(z)  # sin/sinh(sqrt(|z|) )/sqrt(|z|)-style, even in z
    gain = z / (1.0 - z / 12.0)
    # d = psi_{j+1} - psi_j, started from the exact one-step series
    d = psi * _coshm1_series(z) + dpsi * h * sh
    cur = psi + d
    for _ in range(n - 1):
        d = d + gain * cur
        cur = cur + d
    # one virtual step past the end gives the centered derivative
    d_next = d + gain * cur
    dcur = (d_next + d) / (2.0 * h * sh)
    return cur, dcur


def _padded_segments(profile: PotentialProfile, padding: float):
    segs = list(profile.segments)
    if padding > 0:
        segs = [Segment(padding, 0.0)] + segs + [Segment(padding, 0.0)]
    return segs


def numerov_profile_matrix(profile: PotentialProfile, energy: float, step: float = 1e-3) -> TransferMatrix:
    """Transfer matrix via Numerov propagation of the two unit initial
    conditions (1, 0) and (0, 1)."""
    cols = []
    for psi0, dpsi0 in ((1.0, 0.0), (0.0, 1.0)):
        psi, dpsi = psi0, dpsi0
        for seg in profile.segments:
            psi, dpsi = _propagate_segment(psi, dpsi, seg.width, seg.height - energy, step)
        cols.append((psi, dpsi))
    return TransferMatrix(cols[0][0], cols[1][0], cols[0][1], cols[1][1])


def _transmission_at_step(segs, energy, step):
    k = math.sqrt(energy)
    m = numerov_profile_matrix(PotentialProfile(tuple(segs)), energy, step)
    total = sum(s.width for s in segs)
    # match psi = e^{ikx} + R e^{-ikx} on the left (x=0) to psi = T e^{ikx}
    # on the right (x=total): solve the 2x2 system for (R, T)
    e = cmath.exp(1j * k * total)
    a11 = m.l11 - 1j * k * m.l12
    a21 = m.l21 - 1j * k * m.l22
    b1 = -(m.l11 + 1j * k * m.l12)
    b2 = -(m.l21 + 1j * k * m.l22)
    det = a11 * (-1j * k * e) + e * a21
    t_amp = (a11 * b2 - a21 * b1) / det
    return abs(t_amp) ** 2


def numerov_transmission(profile: PotentialProfile, energy: float, config: NumerovConfig = DEFAULT_NUMEROV) -> float:
    """Transmission probability by direct integration and plane-wave matching.

    Parameters
    ----------
    profile:
        Piecewise-constant potential to integrate across.
    energy:
        Scattering energy, > 0 (internal units).
    config:
        Step, padding and the self-convergence gate. The result is only
        returned once halving the step moves T by less than the gate
        tolerance; otherwise OracleConvergenceError.
    """
    if not (math.isfinite(energy) and energy > 0):
        raise ValueError(f"scattering energy must be > 0, got {energy}")
    segs = _padded_segments(profile, config.padding)
    step = config.step
    t_coarse = _transmission_at_step(segs, energy, step)
    for _ in range(config.max_halvings + 1):
        t_fine = _transmission_at_step(segs, energy, step / 2.0)
        if abs(t_fine - t_coarse) < config.gate_tol:
            # fourth-order method: Richardson extrapolation of the final pair
            return t_fine + (t_fine - t_coarse) / 15.0
        step /= 2.0
        t_coarse = t_fine
    raise OracleConvergenceError(
        f"|T(h) - T(h/2)| = {abs(t_fine - t_coarse):.3e} still above "
        f"{config.gate_tol} after {config.max_halvings} halvings"
    )


def square_well_levels(depth: float, width: float) -> list:
    """Bound levels of one rectangular well from the even/odd matching
    conditions, descending.

    depth is |V| > 0 in nm^-2, width in nm. Independent of the
    transfer-matrix route: solves z tan z = sqrt(z0^2 - z^2) (even) and
    -z cot z = sqrt(z0^2 - z^2) (odd) for z in (0, z0).
    """
    if not (depth > 0 and width > 0):
        raise ValueError("depth and width must be > 0")
    z0 = 0.5 * width * math.sqrt(depth)

    def radial(z):
        return math.sqrt(max((z0 - z) * (z0 + z), 0.0))

    def even(z):
        return z * math.tan(z) - radial(z)

    def odd(z):
        return -z / math.tan(z) - radial(z)

    roots = []
    m = 0
    while m * math.pi / 2 < z0:
        lo = m * math.pi / 2 + 1e-12 * max(1.0, z0)
        hi = min((m + 1) * math.pi / 2, z0) - 1e-12 * max(1.0, z0)
        if hi > lo:
            f = even if m % 2 == 0 else odd
            flo, fhi = f(lo), f(hi)
            if flo * fhi < 0:
                a, b = lo, hi
                for _ in range(200):
                    if b - a <= 1e-15 * max(1.0, z0):
                        break
                    mid = 0.5 * (a + b)
                    fm = f(mid)
                    if fm == 0.0:
                        a = b = mid
                        break
                    if flo * fm < 0:
                        b = mid
                    else:
                        a, flo = mid, fm
                roots.append(0.5 * (a + b))
        m += 1
    kappas = [2.0 / width * radial(z) for z in roots]
    return sorted(kappas, reverse=True)
