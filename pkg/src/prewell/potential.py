"""Layered 1D potentials: constant segments, free gaps, and scaled prewells.

A profile is an ordered, contiguous list of constant-height segments.
Free space between layers is an explicit zero-height segment, so every
composed structure is just one segment list and one code path downstream.
"""

import json
import math
from dataclasses import dataclass

from .units import DEFAULT_UNITS, UnitSystem


@dataclass(frozen=True)
class Segment:
    """One constant-potential slab: width in nm, height in nm^-2 (signed)."""

    width: float
    height: float

    def __post_init__(self):
        if not (math.isfinite(self.width) and self.width > 0):
            raise ValueError(f"segment width must be finite and > 0, got {self.width}")
        if not math.isfinite(self.height):
            raise ValueError(f"segment height must be finite, got {self.height}")


@dataclass(frozen=True)
class PotentialProfile:
    """Contiguous segments; origin is only used when reporting positions.

    Scattering and bound-state results are translation invariant, so the
    solvers ignore ``origin`` entirely.
    """

    segments: tuple = ()
    origin: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        for s in self.segments:
            if not isinstance(s, Segment):
                raise TypeError(f"expected Segment, got {type(s).__name__}")

    @property
    def total_width(self) -> float:
        return sum(s.width for s in self.segments)

    def min_height(self) -> float:
        return min((s.height for s in self.segments), default=0.0)


def rectangle(width: float, height: float) -> PotentialProfile:
    """Single rectangular well (height < 0) or barrier (height > 0)."""
    return PotentialProfile((Segment(width, height),))


@dataclass(frozen=True)
class SqueezeSpec:
    """Scaled rectangular layer: width eps*a, height -d/eps^2 (nu=2 well)
    or +d/eps (nu=1 barrier).

    d is the unscaled depth/strength in nm^-2, a the thickness parameter
    in nm, eps the dimensionless squeezing parameter.
    """

    d: float
    a: float
    epsilon: float = 1.0
    nu: int = 2

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0):
            raise ValueError(f"d must be finite and > 0, got {self.d}")
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"a must be finite and > 0, got {self.a}")
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError(f"epsilon must be finite and > 0, got {self.epsilon}")
        if self.nu not in (1, 2):
            raise ValueError(f"nu must be 1 or 2, got {self.nu}")


def realize(spec: SqueezeSpec, epsilon: float | None = None) -> Segment:
    """Concrete segment for a squeeze spec, optionally overriding epsilon.

    nu=2 realizes a well of height -d/eps^2; nu=1 realizes a barrier of
    height +d/eps (the sign convention of the delta-limit comparison).
    """
    eps = spec.epsilon if epsilon is None else epsilon
    if not (math.isfinite(eps) and eps > 0):
        raise ValueError(f"epsilon must be finite and > 0, got {eps}")
    if spec.nu == 2:
        height = -spec.d / (eps * eps)
    else:
        height = spec.d / eps
    return Segment(eps * spec.a, height)


@dataclass(frozen=True)
class BilayerSpec:
    """Prewell plus background layer separated by a free gap of width rho.

    ordering "wb" puts the prewell on the incoming (left) side, "bw"
    behind the background layer.
    """

    prewell: SqueezeSpec
    gap_rho: float
    b_layer: PotentialProfile
    ordering: str = "wb"

    def __post_init__(self):
        if not (math.isfinite(self.gap_rho) and self.gap_rho > 0):
            raise ValueError(f"gap_rho must be finite and > 0, got {self.gap_rho}")
        if self.ordering not in ("wb", "bw"):
            raise ValueError(f"ordering must be 'wb' or 'bw', got {self.ordering!r}")


def bilayer_profile(spec: BilayerSpec, epsilon: float | None = None) -> PotentialProfile:
    """Full segment list for the composed structure, gap included."""
    well = realize(spec.prewell, epsilon)
    gap = Segment(spec.gap_rho, 0.0)
    if spec.ordering == "wb":
        segs = (well, gap) + spec.b_layer.segments
    else:
        segs = spec.b_layer.segments + (gap, well)
    return PotentialProfile(segs)


def slabify(field, y1: float, y2: float, n_slabs: int) -> PotentialProfile:
    """Discretize a scalar field on [y1, y2] into equal-width slabs.

    Heights are sampled at slab midpoints (second-order accurate for
    smooth fields, exact for piecewise-constant fields aligned to slab
    boundaries).
    """
    if n_slabs < 1:
        raise ValueError(f"n_slabs must be >= 1, got {n_slabs}")
    if not y2 > y1:
        raise ValueError(f"need y2 > y1, got [{y1}, {y2}]")
    width = (y2 - y1) / n_slabs
    segs = []
    for i in range(n_slabs):
        h = float(field(y1 + (i + 0.5) * width))
        if not math.isfinite(h):
            raise ValueError(f"field value at slab {i} is not finite: {h}")
        segs.append(Segment(width, h))
    return PotentialProfile(tuple(segs))


def profile_from_dict(data: dict, units: UnitSystem = DEFAULT_UNITS) -> PotentialProfile:
    """Build a profile from the JSON schema; heights arrive in eV."""
    try:
        raw = data["segments"]
    except (KeyError, TypeError):
        raise ValueError("profile JSON must carry a 'segments' list") from None
    segs = []
    for i, item in enumerate(raw):
        try:
            width = float(item["width_nm"])
            height_ev = float(item["height_ev"])
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"segment {i} must carry numeric width_nm and height_ev") from None
        segs.append(Segment(width, units.to_internal(height_ev)))
    return PotentialProfile(tuple(segs), origin=float(data.get("origin_nm", 0.0)))


def profile_to_dict(profile: PotentialProfile, units: UnitSystem = DEFAULT_UNITS) -> dict:
    return {
        "segments": [
            {"width_nm": s.width, "height_ev": units.to_ev(s.height)}
            for s in profile.segments
        ],
        "origin_nm": profile.origin,
    }


def load_profile(path, units: UnitSystem = DEFAULT_UNITS) -> PotentialProfile:
    with open(path, encoding="utf-8") as fh:
        return profile_from_dict(json.load(fh), units)
