"""Real 2x2 transfer matrices for constant segments and their composition.

The matrix maps (psi, psi') at the left edge of a region to the right
edge. Entries stay real at every energy: oscillatory segments use
cos/sin, classically forbidden ones cosh/sinh, and the crossover is
bridged by an even power series so nothing blows up at q^2 = 0.
"""

import math
from dataclasses import dataclass

from .potential import BilayerSpec, PotentialProfile, Segment, bilayer_profile

# exp() saturates doubles near arg 709; refuse a little earlier
SATURATION_ARG = 700.0

# |q^2| below this goes through the series branch (q^2 in nm^-2)
BRANCH_THRESHOLD = 1e-12


class SaturationError(ArithmeticError):
    """A matrix entry would overflow double precision."""


@dataclass(frozen=True)
class TransferMatrix:
    l11: float
    l12: float
    l21: float
    l22: float

    def __post_init__(self):
        for name in ("l11", "l12", "l21", "l22"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise SaturationError(f"non-finite transfer-matrix entry {name}={v}")

    @property
    def det(self) -> float:
        return self.l11 * self.l22 - self.l12 * self.l21

    def det_scale(self) -> float:
        """Magnitude against which det cancellation error must be judged."""
        return max(1.0, abs(self.l11 * self.l22), abs(self.l12 * self.l21))

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(
            self.l11 * other.l11 + self.l12 * other.l21,
            self.l11 * other.l12 + self.l12 * other.l22,
            self.l21 * other.l11 + self.l22 * other.l21,
            self.l21 * other.l12 + self.l22 * other.l22,
        )

    @staticmethod
    def identity() -> "TransferMatrix":
        return TransferMatrix(1.0, 0.0, 0.0, 1.0)


def _series_entries(w: float, length: float):
    """cos(q l) and sin(q l)/q as even series in w = q^2.

    Valid on both sides of w = 0; six correction terms keep full double
    precision for |w| * length^2 well below 1.
    """
    z = w * length * length
    cos_term = 1.0
    sinc_term = 1.0
    tc = 1.0
    ts = 1.0
    for m in range(1, 7):
        tc *= -z / ((2 * m - 1) * (2 * m))
        ts *= -z / ((2 * m) * (2 * m + 1))
        cos_term += tc
        sinc_term += ts
    return cos_term, length * sinc_term


def segment_matrix(segment: Segment, energy: float) -> TransferMatrix:
    """Transfer matrix of one constant segment at the given energy.

    Works for scattering (energy > 0) and bound-state (energy < 0)
    evaluations alike; the branch is set by the sign of
    q^2 = energy - height.
    """
    if not math.isfinite(energy):
        raise ValueError(f"energy must be finite, got {energy}")
    w = energy - segment.height
    length = segment.width
    if abs(w) < BRANCH_THRESHOLD:
        c, s = _series_entries(w, length)
    elif w > 0.0:
        q = math.sqrt(w)
        c = math.cos(q * length)
        s = math.sin(q * length) / q
    else:
        p = math.sqrt(-w)
        if p * length > SATURATION_ARG:
            raise SaturationError(
                f"evanescent argument p*l = {p * length:.3g} exceeds {SATURATION_ARG}; "
                "shrink the energy window or the segment"
            )
        c = math.cosh(p * length)
        s = math.sinh(p * length) / p
    # l21 = -q sin(q l) = -w * (sin(q l)/q) on every branch
    return TransferMatrix(c, s, -w * s, c)


def compose(matrices) -> TransferMatrix:
    """Product over layers listed left to right along the axis.

    The first layer met by a left-incident particle is the rightmost
    factor, so compose([W, gap, B]) = B @ gap @ W.
    """
    matrices = list(matrices)
    if not matrices:
        raise ValueError("compose needs at least one matrix")
    acc = matrices[0]
    for m in matrices[1:]:
        acc = m @ acc
    return acc


def profile_matrix(profile: PotentialProfile, energy: float) -> TransferMatrix:
    """Transfer matrix of a whole profile (identity for an empty one)."""
    acc = TransferMatrix.identity()
    for seg in profile.segments:
        acc = segment_matrix(seg, energy) @ acc
    return acc


def bilayer_matrix(spec: BilayerSpec, energy: float, epsilon: float | None = None) -> TransferMatrix:
    """Generic-product route for the composed prewell + gap + layer system."""
    return profile_matrix(bilayer_profile(spec, epsilon), energy)


def closed_form_bilayer_matrix(
    background: TransferMatrix,
    q: float,
    length: float,
    k: float,
    rho: float,
    ordering: str = "wb",
) -> TransferMatrix:
    """Composite matrix written out in closed form for a rectangular well.

    ``background`` is the layer matrix, (q, length) parameterize the well
    (q = sqrt(E - V_well) real), k = sqrt(E) the gap wavenumber. Used as
    the second route of the dual-path check against the generic product.
    """
    if ordering not in ("wb", "bw"):
        raise ValueError(f"ordering must be 'wb' or 'bw', got {ordering!r}")
    l11, l12, l21, l22 = background.l11, background.l12, background.l21, background.l22
    cq, sq = math.cos(q * length), math.sin(q * length)
    ck, sk = math.cos(k * rho), math.sin(k * rho)
    ta = cq * ck - (q / k) * sq * sk
    tb = q * sq * ck + k * cq * sk
    tc = sq * ck / q + cq * sk / k
    td = cq * ck - (k / q) * sq * sk
    if ordering == "wb":
        return TransferMatrix(
            l11 * ta - l12 * tb,
            l11 * tc + l12 * td,
            l21 * ta - l22 * tb,
            l21 * tc + l22 * td,
        )
    # behind-the-layer ordering: swap l11 <-> l22 in the mirrored entries
    return TransferMatrix(
        l21 * tc + l11 * td,
        l22 * tc + l12 * td,
        l21 * ta - l11 * tb,
        l22 * ta - l12 * tb,
    )
