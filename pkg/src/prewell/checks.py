"""Assertion bundles behind the `check` subcommand.

Each suite re-runs the headline claims at the reference parameter sets
and reports measured values against their tolerances. Results are
returned, not printed; the CLI does the formatting and sets the exit
code. Some reference counts are known to disagree with what the solver
actually finds (see the test suite); the checks report those honestly
rather than bending the expectation.
"""

import math
import random
from dataclasses import dataclass

from .bilayer import limit_uv, structure_transmission
from .bound import (
    find_bound_states,
    track_levels,
    wall_limit_states,
    wb_bound_residual,
    wb_bound_residual_explicit,
    wb_bound_states,
)
from .oracle import numerov_transmission, square_well_levels
from .potential import (
    BilayerSpec,
    PotentialProfile,
    Segment,
    SqueezeSpec,
    realize,
    rectangle,
    slabify,
)
from .scattering import (
    profile_transmission,
    rectangle_transmission,
    resonance_thicknesses,
    scatter,
    squeezed_well_growth,
    squeezed_well_transmission,
)
from .figures import RESONANCE_REFINEMENT
from .transfer import bilayer_matrix, closed_form_bilayer_matrix, profile_matrix, segment_matrix
from .units import DEFAULT_UNITS, UnitSystem


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    measured: str
    tolerance: str


def _result(suite, name, passed, measured, tolerance):
    return CheckResult(suite, name, bool(passed), measured, tolerance)


def run_summary1(units: UnitSystem = DEFAULT_UNITS):
    """Squeezed-well blocking off the resonance set, perfect limit on it."""
    out = []
    energy = units.to_internal(0.01)
    d = units.to_internal(0.2)
    a1 = resonance_thicknesses(d, 1)[0]
    off = SqueezeSpec(d=d, a=1.5 * a1, nu=2)
    on = SqueezeSpec(d=d, a=a1, nu=2)

    ts = [squeezed_well_transmission(off, energy, e) for e in (0.1, 0.01, 0.001)]
    out.append(_result(

        "summary1", "blocking_monotone", ts[0] > ts[1] > ts[2],
        f"T(0.1)={ts[0]:.3e} T(0.01)={ts[1]:.3e} T(0.001)={ts[2]:.3e}", "strictly decreasing"))
    out.append(_result("summary1", "blocking_floor", ts[2] < 1e-6, f"T(0.001)={ts[2]:.3e}", "< 1e-6"))

    deficit_01 = 1.0 - squeezed_well_transmission(on, energy, 0.1)
    deficit_001 = 1.0 - squeezed_well_transmission(on, energy, 0.01)
    out.append(_result("summary1", "resonance_deficit", deficit_001 < 1e-3,
                       f"1-T(0.01)={deficit_001:.3e}", "< 1e-3"))
    rate = deficit_001 / deficit_01
    out.append(_result("summary1", "resonance_rate_eps2", 0.005 <= rate <= 0.02,
                       f"(1-T(0.01))/(1-T(0.1))={rate:.4f}", "within [0.005, 0.02] (~eps^2)"))

    g2 = squeezed_well_growth(off, energy, 1e-2)
    g3 = squeezed_well_growth(off, energy, 1e-3)
    ratio = g3 / g2
    out.append(_result("summary1", "growth_ratio_off_resonance", abs(ratio - 10.0) <= 1.0,
                       f"growth(1e-3)/growth(1e-2)={ratio:.4f}", "10 +- 10%"))
    gs = [squeezed_well_growth(on, energy, e) for e in (1e-1, 1e-2, 1e-3)]
    out.append(_result("summary1", "growth_suppressed_on_resonance",
                       gs[0] > gs[1] > gs[2] and gs[2] < 1e-3,
                       f"growth={gs[0]:.2e},{gs[1]:.2e},{gs[2]:.2e}", "decreasing and < 1e-3"))
    return out


def _fig3_system(units: UnitSystem):
    energy = units.to_internal(0.02)
    d = units.to_internal(0.2)
    vb = units.to_internal(0.1)
    lb = 5.0
    return energy, d, vb, lb


def run_summary2(units: UnitSystem = DEFAULT_UNITS):
    """Limit factorization and gap-width independence for a barrier layer."""
    out = []
    energy, d, vb, lb = _fig3_system(units)
    a1 = resonance_thicknesses(d, 1)[0]
    t_bare = rectangle_transmission(vb, lb, energy)
    b_layer = rectangle(lb, vb)

    worst = 0.0
    spread = 0.0
    per_rho = {}
    for ordering in ("wb", "bw"):
        vals = []
        for rho in (5.0, 10.0, 20.0):
            spec = BilayerSpec(SqueezeSpec(d=d, a=a1, nu=2), rho, b_layer, ordering)
            t = structure_transmission(spec, energy, 1e-3)
            vals.append(t)
            worst = max(worst, abs(t - t_bare))
        spread = max(spread, max(vals) - min(vals))
        per_rho[ordering] = vals
    out.append(_result("summary2", "factorization_on_resonance", worst < 1e-3,
                       f"max|T-T_bare|={worst:.3e} (T_bare={t_bare:.6f})", "< 1e-3"))
    out.append(_result("summary2", "rho_independence", spread < 1e-3,
                       f"max spread over rho={spread:.3e}", "< 1e-3"))

    blocked = max(
        structure_transmission(
            BilayerSpec(SqueezeSpec(d=d, a=1.5 * a1, nu=2), 10.0, b_layer, ordering),
            energy,
            1e-3,
        )
        for ordering in ("wb", "bw")
    )
    out.append(_result("summary2", "blocked_off_resonance", blocked < 1e-3,
                       f"max T at 1.5*a1 = {blocked:.3e}", "< 1e-3"))

    asym = PotentialProfile((Segment(2.5, units.to_internal(0.12)), Segment(2.5, units.to_internal(0.08))))
    twb = structure_transmission(BilayerSpec(SqueezeSpec(d=d, a=a1, nu=2), 10.0, asym, "wb"), energy, 1e-3)
    tbw = structure_transmission(BilayerSpec(SqueezeSpec(d=d, a=a1, nu=2), 10.0, asym, "bw"), energy, 1e-3)
    out.append(_result("summary2", "ordering_limit_equality_asymmetric", abs(twb - tbw) < 1e-3,
                       f"|T_wb-T_bw|={abs(twb - tbw):.3e}", "< 1e-3"))

    rng = random.Random(20240817)
    worst_norm = 0.0
    for _ in range(200):
        k = rng.uniform(0.05, 3.0)
        rho = rng.uniform(0.1, 30.0)
        seg = Segment(rng.uniform(0.2, 6.0), rng.uniform(-1.0, 1.0))
        m = segment_matrix(seg, k * k)
        u_b = m.l11 - m.l22
        v_b = k * m.l12 + m.l21 / k
        n = rng.randint(1, 6)
        for ordering in ("wb", "bw"):
            u, v = limit_uv(m, k, rho, n, ordering)
            worst_norm = max(worst_norm, abs((u * u + v * v) - (u_b * u_b + v_b * v_b)))
    out.append(_result("summary2", "rotation_norm_invariance", worst_norm < 1e-12,
                       f"max |u^2+v^2 - u_b^2-v_b^2| = {worst_norm:.2e}", "< 1e-12"))
    return out


def _fig4_system(units: UnitSystem):
    d = units.to_internal(0.2)
    b_layer = rectangle(7.0, units.to_internal(-0.5))
    return d, 0.5, b_layer


def run_summary3(units: UnitSystem = DEFAULT_UNITS):
    """Spectrum reconstruction scenario at the double-well reference point.

    The interval-count expectations (3/4/5) come from the reference
    description; the solver reproducibly finds one more level per
    interval (a low-lying hard-wall level the reference misses), so that
    check is expected to fail. It is reported as measured.
    """
    out = []
    d, rho, b_layer = _fig4_system(units)
    a1 = resonance_thicknesses(d, 1)[0]
    eps = 0.01

    def spectrum(a, e=eps):
        spec = BilayerSpec(SqueezeSpec(d=d, a=a, epsilon=e, nu=2), rho, b_layer, "wb")
        return wb_bound_states(spec, e, grid_n=512)

    counts = tuple(len(spectrum(f * a1)) for f in (0.5, 1.5, 2.5))
    out.append(_result("summary3", "interval_counts_3_4_5", counts == (3, 4, 5),
                       f"counts at (0.5,1.5,2.5)*a1 = {counts}", "== (3, 4, 5)"))
    on_counts = (len(spectrum(a1)), len(spectrum(2.0 * a1)))
    out.append(_result("summary3", "resonance_counts_4_5", on_counts == (4, 5),
                       f"counts at (a1, a2) = {on_counts}", "== (4, 5)"))

    refs = find_bound_states(b_layer).levels
    sp = spectrum(a1)
    diffs = [abs(x - y) for x, y in zip(sp.levels[-3:], refs)]
    out.append(_result("summary3", "on_resonance_levels", max(diffs) < 1e-3,
                       f"max|kappa - kappa0| = {max(diffs):.2e}", "< 1e-3"))

    wall = wall_limit_states(b_layer, rho, "wb").levels
    eps_seq = (0.1, 0.05, 0.02, 0.01)
    spectra = [spectrum(1.5 * a1, e) for e in eps_seq]
    dists = [
        tuple(abs(sp.levels[-1 - j] - wall[-1 - j]) for sp in spectra) for j in range(2)
    ]
    monotone = all(all(ds[i] > ds[i + 1] for i in range(len(ds) - 1)) for ds in dists)
    out.append(_result("summary3", "off_resonance_convergence", monotone,
                       f"|kappa_eps - kappa_wall| sequences {dists}", "strictly decreasing"))
    grows = spectra[-1].levels[0] > spectra[0].levels[0]
    out.append(_result("summary3", "largest_level_grows", grows,
                       f"kappa_max(0.01)={spectra[-1].levels[0]:.2f} vs kappa_max(0.1)={spectra[0].levels[0]:.2f}",
                       "kappa_max(0.01) > kappa_max(0.1)"))

    a_grid = sorted(
        {round(a, 12) for a in
         [0.3 * a1 + (2.8 - 0.3) * a1 * i / 39 for i in range(40)]
         + [an * f for an in (a1, 2 * a1) for f in RESONANCE_REFINEMENT]}
    )
    trace = track_levels(a_grid, spectrum)
    detaches = [ev for ev in trace.events if ev.kind == "detach"]
    near = [
        sum(1 for ev in detaches if abs(ev.param - an) < 0.15 * a1)
        for an in (a1, 2 * a1)
    ]
    ok = len(detaches) == 2 and near == [1, 1]
    out.append(_result("summary3", "one_detachment_per_resonance", ok,
                       f"detach events at a={[round(ev.param, 3) for ev in detaches]}",
                       "exactly one near a1 and one near a2"))
    return out


def run_oracle(units: UnitSystem = DEFAULT_UNITS):
    """Dual-path and integrator agreement across the verification profiles."""
    out = []
    energy = units.to_internal(0.02)
    profiles = {
        "well": rectangle(7.0, units.to_internal(-0.5)),
        "barrier": rectangle(5.0, units.to_internal(0.1)),
        "ramp64": slabify(lambda x: units.to_internal(-0.5) * x / 7.0, 0.0, 7.0, 64),
    }
    for name, prof in profiles.items():
        tm = profile_transmission(prof, energy)
        tn = numerov_transmission(prof, energy)
        out.append(_result("oracle", f"numerov_{name}", abs(tm - tn) < 1e-6,
                           f"|T_matrix - T_numerov| = {abs(tm - tn):.2e}", "< 1e-6"))

    for name, (depth_ev, width) in {"deep": (0.5, 7.0), "shallow": (0.001, 7.0)}.items():
        ora = square_well_levels(units.to_internal(depth_ev), width)
        got = find_bound_states(rectangle(width, -units.to_internal(depth_ev))).levels
        agree = len(ora) == len(got) and all(abs(a - b) < 1e-8 for a, b in zip(ora, got))
        out.append(_result("oracle", f"square_well_{name}", agree,
                           f"levels {list(got)} vs oracle {list(ora)}", "< 1e-8 each, same count"))

    d = units.to_internal(0.2)
    vb = units.to_internal(0.1)
    k = math.sqrt(energy)
    b_mat = profile_matrix(rectangle(5.0, vb), energy)
    worst = 0.0
    for eps in (1.0, 0.1):
        spec = SqueezeSpec(d=d, a=4.0, epsilon=eps, nu=2)
        seg = realize(spec)
        q = math.sqrt(energy - seg.height)
        for ordering in ("wb", "bw"):
            generic = bilayer_matrix(BilayerSpec(spec, 10.0, rectangle(5.0, vb), ordering), energy)
            closed = closed_form_bilayer_matrix(b_mat, q, seg.width, k, 10.0, ordering)
            worst = max(
                worst,
                max(abs(a - b) for a, b in zip(
                    (generic.l11, generic.l12, generic.l21, generic.l22),
                    (closed.l11, closed.l12, closed.l21, closed.l22),
                )),
            )
    out.append(_result("oracle", "bilayer_closed_form", worst < 1e-10,
                       f"max entry diff = {worst:.2e}", "< 1e-10"))

    rng = random.Random(7021)
    d4, rho, b_layer = _fig4_system(units)
    worst_rel = 0.0
    for _ in range(20):
        eps = rng.choice([0.1, 0.05, 0.02])
        a = rng.uniform(0.3, 2.8) * resonance_thicknesses(d4, 1)[0]
        spec = BilayerSpec(SqueezeSpec(d=d4, a=a, epsilon=eps, nu=2), rho, b_layer, rng.choice(["wb", "bw"]))
        kap = rng.uniform(0.05, 0.95) * math.sqrt(d4) / eps
        generic = wb_bound_residual(spec, kap, eps)
        explicit = wb_bound_residual_explicit(spec, kap, eps)
        ql = math.sqrt(d4 - (eps * kap) ** 2) * a
        if abs(math.cos(ql)) < 1e-3:
            continue  # too close to a tan pole for a fair comparison
        recon = math.cos(ql) * math.cosh(kap * rho) * kap * explicit
        scale = max(abs(generic), abs(recon), 1e-30)
        worst_rel = max(worst_rel, abs(generic - recon) / scale)
    out.append(_result("oracle", "explicit_residual_identity", worst_rel < 1e-9,
                       f"max rel deviation = {worst_rel:.2e}",
                       "generic = cos(q l) cosh(kappa rho) kappa * explicit, < 1e-9"))

    worst = 0.0
    energy01 = units.to_internal(0.01)
    for eps, a in ((1.0, 4.0), (0.37, 2.2), (0.01, 6.5)):
        spec = SqueezeSpec(d=d, a=a, epsilon=eps, nu=2)
        closed = squeezed_well_transmission(spec, energy01)
        generic = scatter(segment_matrix(realize(spec), energy01), energy01).trans_prob
        worst = max(worst, abs(closed - generic))
    out.append(_result("oracle", "squeezed_well_dual_path", worst < 1e-12,
                       f"max |closed - generic| = {worst:.2e}", "< 1e-12"))
    return out


SUITES = {
    "summary1": run_summary1,
    "summary2": run_summary2,
    "summary3": run_summary3,
    "oracle": run_oracle,
}
