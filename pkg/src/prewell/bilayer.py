"""Squeezed-limit tunneling through the composed prewell + layer system.

In the limit the prewell either blocks everything (off the resonance
thicknesses) or becomes transparent up to a rotation of the layer's
(u, v) pair by the gap phase k*rho. The rotation preserves u^2 + v^2,
which is why the limit transmission does not depend on rho and
factorizes as T_well * T_layer.
"""

import math
from dataclasses import dataclass

from .potential import BilayerSpec, PotentialProfile
from .scattering import resonance_index, scatter
from .transfer import TransferMatrix, bilayer_matrix, profile_matrix


def limit_uv(
    background: TransferMatrix,
    k: float,
    rho: float,
    n: int,
    ordering: str = "wb",
) -> tuple:
    """Limit (u, v) of the composed system on the n-th resonance thickness.

    (u_b, v_b) of the bare layer is rotated by the gap phase k*rho, with
    the rotation sense set by the ordering, and carries an overall (-1)^n.
    """
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k}")
    if ordering not in ("wb", "bw"):
        raise ValueError(f"ordering must be 'wb' or 'bw', got {ordering!r}")
    u_b = background.l11 - background.l22
    v_b = k * background.l12 + background.l21 / k
    c, s = math.cos(k * rho), math.sin(k * rho)
    sign = -1.0 if n % 2 else 1.0
    if ordering == "wb":
        return sign * (u_b * c - v_b * s), sign * (v_b * c + u_b * s)
    return sign * (u_b * c + v_b * s), sign * (v_b * c - u_b * s)


@dataclass(frozen=True)
class LimitTransmission:
    """Limit transmission at one (d, a) point: zero off the resonance set,
    the bare-layer value on it (u/v defined only there)."""

    on_resonance: bool
    t_limit: float
    u_limit: float | None = None
    v_limit: float | None = None


def limit_transmission(
    background: TransferMatrix,
    energy: float,
    d: float,
    a: float,
    rho: float,
    ordering: str = "wb",
    tol: float = 1e-6,
) -> LimitTransmission:
    """Classify (d, a) against the resonance set and evaluate the limit."""
    n = resonance_index(d, a, tol)
    if n is None:
        return LimitTransmission(False, 0.0)
    k = math.sqrt(energy)
    u, v = limit_uv(background, k, rho, n, ordering)
    return LimitTransmission(True, 4.0 / (4.0 + u * u + v * v), u, v)


def structure_transmission(spec: BilayerSpec, energy: float, epsilon: float | None = None) -> float:
    """Finite-epsilon transmission of the full composed structure."""
    return scatter(bilayer_matrix(spec, energy, epsilon), energy).trans_prob


@dataclass(frozen=True)
class PeakValleyReport:
    """Transmission grids T[eps][i_a][i_lb] plus the peak-to-valley ratio
    along the thickness axis at a fixed layer width."""

    a_values: tuple
    lb_values: tuple
    epsilons: tuple
    grids: dict
    ratio_lb: float
    ratios: dict


def peak_valley_report(
    d: float,
    barrier_height: float,
    energy: float,
    rho: float,
    a_values,
    lb_values,
    epsilons,
    ordering: str = "bw",
    ratio_lb: float | None = None,
) -> PeakValleyReport:
    """Transmission over an (a, l_b) grid for each epsilon.

    Parameters
    ----------
    d, barrier_height, energy, rho:
        Prewell depth, layer height, energy and gap width (internal units).
    a_values, lb_values, epsilons:
        Sweep axes; all strictly positive.
    ratio_lb:
        Layer width at which the peak-to-valley ratio along a is taken;
        defaults to the grid value closest to the middle.
    """
    from .potential import Segment, SqueezeSpec

    a_values = tuple(a_values)
    lb_values = tuple(lb_values)
    epsilons = tuple(epsilons)
    if ratio_lb is None:
        ratio_lb = lb_values[len(lb_values) // 2]
    i_ratio = min(range(len(lb_values)), key=lambda i: abs(lb_values[i] - ratio_lb))

    grids = {}
    ratios = {}
    for eps in epsilons:
        grid = []
        for a in a_values:
            spec = SqueezeSpec(d=d, a=a, epsilon=eps, nu=2)
            row = []
            for lb in lb_values:
                b = PotentialProfile((Segment(lb, barrier_height),))
                row.append(
                    structure_transmission(
                        BilayerSpec(spec, rho, b, ordering), energy
                    )
                )
            grid.append(tuple(row))
        grids[eps] = tuple(grid)
        column = [grid[i][i_ratio] for i in range(len(a_values))]
        ratios[eps] = max(column) / min(column)
    return PeakValleyReport(
        a_values, lb_values, epsilons, grids, lb_values[i_ratio], ratios
    )


def bare_layer_matrix(b_layer: PotentialProfile, energy: float) -> TransferMatrix:
    """Convenience: the layer matrix used by the limit formulas."""
    return profile_matrix(b_layer, energy)
