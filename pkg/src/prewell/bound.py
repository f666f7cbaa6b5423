"""Bound-state levels kappa (E = -kappa^2) of layered profiles.

The compatibility condition for a decaying solution on both sides of a
structure with matrix L is l11 + l22 + kappa*l12 + l21/kappa = 0; we work
with the kappa-regularized residual

    F(kappa) = kappa*(l11 + l22) + kappa^2*l12 + l21,

which stays finite as kappa -> 0+ so detaching levels can be scanned all
the way down to the floor. Roots are located by sign-change bracketing on
a uniform grid that is doubled until the root count stabilizes, then
refined by bisection: residuals near avoided crossings are too wild for
anything cleverer to be trusted.
"""

import math
from dataclasses import dataclass

from .potential import BilayerSpec, PotentialProfile, bilayer_profile
from .transfer import SATURATION_ARG, TransferMatrix, bilayer_matrix, profile_matrix

KAPPA_FLOOR = 1e-6
BISECTION_TOL = 1e-12
RESIDUAL_REL_TOL = 1e-9


def bound_state_residual(matrix: TransferMatrix, kappa: float) -> float:
    """Regularized bound-state residual of a matrix built at E = -kappa^2."""
    if not kappa > 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    return kappa * (matrix.l11 + matrix.l22) + kappa * kappa * matrix.l12 + matrix.l21


def profile_bound_residual(profile: PotentialProfile, kappa: float) -> float:
    return bound_state_residual(profile_matrix(profile, -kappa * kappa), kappa)


@dataclass(frozen=True)
class BoundSpectrum:
    """Sorted levels with the residual actually achieved at each root.

    ``failures`` lists brackets whose refined residual did not drop below
    RESIDUAL_REL_TOL of the local residual scale; they are reported, never
    silently dropped.
    """

    levels: tuple
    residuals: tuple
    search_window: tuple
    grid_n: int
    failures: tuple = ()

    def __len__(self):
        return len(self.levels)


def _bisect(f, lo, hi, flo):
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def _scan(f, lo, hi, n):
    """Sign-change brackets of f on a uniform n-cell grid, refined."""
    xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
    fs = [f(x) for x in xs]
    found = []
    for i in range(n):
        if fs[i] == 0.0:
            found.append((xs[i], max(abs(v) for v in fs[max(0, i - 1):i + 2])))
        elif fs[i] * fs[i + 1] < 0:
            root = _bisect(f, xs[i], xs[i + 1], fs[i])
            found.append((root, max(abs(fs[i]), abs(fs[i + 1]))))
    return found


def find_roots(f, window, grid_n: int = 128, max_doublings: int = 10):
    """All roots of f in the window, via adaptive grid doubling.

    The grid is doubled until the root count is unchanged for two
    consecutive doublings; a count that never stabilizes raises.
    Returns (list of (root, bracket_scale), final grid size).
    """
    lo, hi = window
    if not (math.isfinite(lo) and math.isfinite(hi) and 0 < lo < hi):
        raise ValueError(f"bad search window {window}")
    n = max(64, grid_n)
    prev_count = None
    streak = 0
    while True:
        found = _scan(f, lo, hi, n)
        if prev_count is not None and len(found) == prev_count:
            streak += 1
            if streak >= 2:
                return found, n
        else:
            streak = 0
        prev_count = len(found)
        if n >= grid_n << max_doublings:
            raise RuntimeError(
                f"root count failed to stabilize by grid_n={n} in window {window}"
            )
        n *= 2


def _spectrum_from_roots(f, found, window, grid_n) -> BoundSpectrum:
    levels = []
    residuals = []
    failures = []
    for root, scale in sorted(found, reverse=True):
        res = abs(f(root))
        if res <= RESIDUAL_REL_TOL * max(scale, 1e-300):
            levels.append(root)
            residuals.append(res)
        else:
            failures.append((root, res, scale))
    return BoundSpectrum(tuple(levels), tuple(residuals), tuple(window), grid_n, tuple(failures))


def find_bound_states(
    profile: PotentialProfile,
    window: tuple | None = None,
    grid_n: int = 128,
) -> BoundSpectrum:
    """All bound levels of a profile, descending.

    Parameters
    ----------
    profile:
        Layered potential; needs at least one negative-height segment to
        bind anything.
    window:
        (kappa_lo, kappa_hi) search range. Defaults to (KAPPA_FLOOR,
        sqrt(-min height)), additionally trimmed so evanescent arguments
        stay below the saturation limit.
    grid_n:
        Starting grid resolution for the sign-change scan.
    """
    if window is None:
        depth = -profile.min_height()
        if depth <= 0:
            return BoundSpectrum((), (), (KAPPA_FLOOR, KAPPA_FLOOR), grid_n)
        ceil = math.sqrt(depth) * (1.0 - 1e-12)
        ceil = min(ceil, _saturation_ceiling(profile))
        window = (KAPPA_FLOOR, ceil)
    f = lambda k: profile_bound_residual(profile, k)
    found, n = find_roots(f, window, grid_n)
    return _spectrum_from_roots(f, found, window, n)


def _saturation_ceiling(profile: PotentialProfile) -> float:
    # kappa * total_width bounds every evanescent argument in the product
    width = profile.total_width
    return (0.98 * SATURATION_ARG / width) if width > 0 else math.inf


# -- composed prewell + background system ----------------------------------

def wb_bound_residual(spec: BilayerSpec, kappa: float, epsilon: float | None = None) -> float:
    """Pole-free residual of the composed system via the generic matrix.

    This is the route used for root scanning; the explicit tan/tanh form
    below is reserved for cross-validation between its poles.
    """
    return bound_state_residual(bilayer_matrix(spec, -kappa * kappa, epsilon), kappa)


def wb_bound_residual_explicit(spec: BilayerSpec, kappa: float, epsilon: float | None = None) -> float:
    """Closed-form residual with t = tan(sqrt(d - (eps*kappa)^2) a) and
    tau = tanh(kappa rho); requires kappa < sqrt(d)/eps (real well
    wavenumber) and nu = 2.

    Relation to the generic route: generic = cos(q_eps*l) * cosh(kappa*rho)
    * kappa * explicit, so both have identical roots and, between the tan
    poles, signs matching up to the sign of that cosine.
    """
    if spec.prewell.nu != 2:
        raise ValueError("explicit residual applies to nu=2 prewells")
    eps = spec.prewell.epsilon if epsilon is None else epsilon
    d, a = spec.prewell.d, spec.prewell.a
    if not kappa > 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    if not kappa < math.sqrt(d) / eps:
        raise ValueError(f"kappa={kappa} outside the real-wavenumber range kappa < sqrt(d)/eps")
    lam = profile_matrix(spec.b_layer, -kappa * kappa)
    l11, l12, l21, l22 = lam.l11, lam.l12, lam.l21, lam.l22
    if spec.ordering == "bw":
        l11, l22 = l22, l11
    q = math.sqrt(d / (eps * eps) - kappa * kappa)
    t = math.tan(math.sqrt(d - (eps * kappa) ** 2) * a)
    tau = math.tanh(kappa * spec.gap_rho)
    k2 = kappa * kappa
    return (
        (l11 + l22 + kappa * l12 + l21 / kappa) * (1.0 + tau)
        + (kappa / q * l11 - q / kappa * l22 - q * l12 + l21 / q) * t
        + (k2 / q * l12 - q / k2 * l21 - q / kappa * l11 + kappa / q * l22) * t * tau
    )


def wb_bound_states(
    spec: BilayerSpec,
    epsilon: float | None = None,
    window: tuple | None = None,
    grid_n: int = 256,
) -> BoundSpectrum:
    """Spectrum of the composed system at fixed epsilon.

    The default window is (KAPPA_FLOOR, sqrt(d)/eps): binding is capped by
    the deepest (scaled) segment, so epsilon sweeps get per-epsilon
    windows. The ceiling is additionally trimmed to keep evanescent
    arguments below the saturation limit.
    """
    eps = spec.prewell.epsilon if epsilon is None else epsilon
    if window is None:
        ceil = math.sqrt(spec.prewell.d) / eps * (1.0 - 1e-9)
        ceil = min(ceil, _saturation_ceiling(bilayer_profile(spec, eps)))
        window = (KAPPA_FLOOR, ceil)
    f = lambda k: wb_bound_residual(spec, k, eps)
    found, n = find_roots(f, window, grid_n)
    return _spectrum_from_roots(f, found, window, n)


def wall_limit_residual(matrix: TransferMatrix, kappa: float, tau: float, ordering: str = "wb") -> float:
    """Residual of the squeezed-limit condition off the resonance set.

    For a layer matrix built at E = -kappa^2 and tau = tanh(kappa*rho) the
    regularized form is kappa*(l11*tau + l22) + kappa^2*l12 + l21*tau;
    tau = 1 recovers the unperturbed bound-state residual. Physically this
    is the layer with a hard wall at distance rho on the prewell side.
    """
    if not kappa > 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    if not 0 < tau <= 1:
        raise ValueError(f"tau must be in (0, 1], got {tau}")
    l11, l22 = matrix.l11, matrix.l22
    if ordering == "bw":
        l11, l22 = l22, l11
    return kappa * (l11 * tau + l22) + kappa * kappa * matrix.l12 + matrix.l21 * tau


def wall_limit_states(
    b_layer: PotentialProfile,
    rho: float,
    ordering: str = "wb",
    window: tuple | None = None,
    grid_n: int = 256,
) -> BoundSpectrum:
    """Roots of the squeezed-limit condition for a given layer and gap."""
    if window is None:
        depth = -b_layer.min_height()
        if depth <= 0:
            return BoundSpectrum((), (), (KAPPA_FLOOR, KAPPA_FLOOR), grid_n)
        window = (KAPPA_FLOOR, math.sqrt(depth) * (1.0 - 1e-12))

    def f(k):
        m = profile_matrix(b_layer, -k * k)
        return wall_limit_residual(m, k, math.tanh(k * rho), ordering)

    found, n = find_roots(f, window, grid_n)
    return _spectrum_from_roots(f, found, window, n)


# -- level tracking across parameter sweeps ---------------------------------

@dataclass(frozen=True)
class TrackEvent:
    kind: str  # "detach", "escape", "appear", "ambiguous"
    param_index: int
    param: float
    value: float


@dataclass(frozen=True)
class Track:
    start: int
    values: tuple

    def last(self):
        return self.values[-1]


@dataclass(frozen=True)
class LevelTrack:
    params: tuple
    spectra: tuple
    tracks: tuple
    events: tuple


# matching bounds: absolute until a slope estimate exists, then slope-based;
# the absolute bound scales with the level so fast 1/eps-type levels at large
# kappa do not fragment between reasonable sweep samples
ABS_MATCH_BOUND = 0.05
SLOPE_BOUND_FACTOR = 5.0


def _match_bound(values, prev_dp, dp):
    base = ABS_MATCH_BOUND * max(1.0, abs(values[-1]))
    if len(values) < 2:
        return values[-1], base
    slope = (values[-1] - values[-2]) / prev_dp
    predicted = values[-1] + slope * dp
    return predicted, max(SLOPE_BOUND_FACTOR * abs(slope) * abs(dp), base)


def track_levels(params, solver, kappa_floor: float = KAPPA_FLOOR) -> LevelTrack:
    """Follow levels across a monotone parameter sweep.

    Parameters
    ----------
    params:
        Strictly monotone (increasing or decreasing) parameter values.
    solver:
        Callable param -> BoundSpectrum (or any sequence of levels).
        Window ceilings, when available, drive escape detection.
    kappa_floor:
        A new lowest level appearing above this floor is recorded as a
        detachment event.

    Matching is nearest-neighbor under a continuity bound of
    SLOPE_BOUND_FACTOR * |local slope| * grid step, with an absolute bound
    while a track has no slope estimate yet. Two candidates inside the
    bound are reported as an ambiguity, not guessed: the track is closed
    and fresh ones are opened. A track whose continuation would leave the
    search ceiling is recorded as an escape.
    """
    params = tuple(float(p) for p in params)
    if not params:
        raise ValueError("empty parameter grid")
    diffs = [params[i + 1] - params[i] for i in range(len(params) - 1)]
    if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
        raise ValueError("parameter grid must be strictly monotone")

    spectra = []
    ceilings = []
    for p in params:
        sp = solver(p)
        if isinstance(sp, BoundSpectrum):
            spectra.append(tuple(sp.levels))
            ceilings.append(sp.search_window[1])
        else:
            spectra.append(tuple(sorted(sp, reverse=True)))
            ceilings.append(None)

    live = [{"start": 0, "values": [v]} for v in spectra[0]]
    done = []
    events = []

    for i in range(1, len(params)):
        dp = params[i] - params[i - 1]
        prev_dp = params[i - 1] - params[i - 2] if i >= 2 else dp
        candidates = list(spectra[i])
        taken = [False] * len(candidates)
        lowest = min(candidates) if candidates else None
        prev_lowest = min(spectra[i - 1]) if spectra[i - 1] else math.inf
        still_live = []
        for tr in live:
            predicted, bound = _match_bound(tr["values"], prev_dp, dp)
            inside = sorted(
                (abs(c - predicted), j)
                for j, c in enumerate(candidates)
                if not taken[j] and abs(c - predicted) <= bound
            )
            if len(inside) >= 2:
                events.append(TrackEvent("ambiguous", i, params[i], predicted))
                done.append(tr)
            elif inside:
                j = inside[0][1]
                taken[j] = True
                tr["values"].append(candidates[j])
                still_live.append(tr)
            else:
                ceil = ceilings[i]
                if ceil is not None and predicted >= 0.9 * ceil:
                    events.append(TrackEvent("escape", i, params[i], tr["values"][-1]))
                done.append(tr)
        for j, c in enumerate(candidates):
            if taken[j]:
                continue
            # a detachment means the spectrum gained a new minimum above the
            # floor; an unmatched root that merely moved is an appearance
            kind = "detach" if (c == lowest and kappa_floor < c < prev_lowest) else "appear"
            events.append(TrackEvent(kind, i, params[i], c))
            still_live.append({"start": i, "values": [c]})
        live = still_live

    done.extend(live)
    tracks = tuple(
        Track(tr["start"], tuple(tr["values"]))
        for tr in sorted(done, key=lambda t: (t["start"], -t["values"][0]))
    )
    return LevelTrack(params, tuple(spectra), tracks, tuple(events))
