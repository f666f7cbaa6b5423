"""Sweep data behind the canned report figures (fig1, fig3, fig4, fig5).

Each builder returns a list of FigureTable objects; the CLI writes them as
CSV (and renders companion PNGs). Baked-in defaults reproduce the
reference parameter sets; every value can be overridden through the
config file's "figure" section.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .bilayer import structure_transmission
from .bound import find_bound_states, wall_limit_states, wb_bound_states
from .potential import BilayerSpec, PotentialProfile, Segment, SqueezeSpec, rectangle
from .scattering import rectangle_transmission, resonance_thicknesses, squeezed_well_transmission
from .units import DEFAULT_UNITS, UnitSystem


@dataclass(frozen=True)
class FigureTable:
    suffix: str
    columns: tuple
    rows: tuple
    meta: dict


def pmap(fn, items, threads: int | None = None):
    items = list(items)
    if threads is not None and threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def grid_values(spec: dict) -> list:
    start, stop, count = float(spec["start"]), float(spec["stop"]), int(spec["count"])
    if count < 2:
        raise ValueError(f"grid count must be >= 2, got {count}")
    if not stop > start:
        raise ValueError(f"grid needs stop > start, got [{start}, {stop}]")
    return [start + (stop - start) * i / (count - 1) for i in range(count)]


def _eps_label(eps: float) -> str:
    return f"{eps:g}"


def build_fig1(units: UnitSystem, overrides: dict, threads: int | None = None):
    """Scaled-well transmission vs thickness, plus the nu=1 delta-limit line."""
    cfg = {
        "energy_ev": 0.01,
        "d_ev": 0.2,
        "epsilons": [1.0, 0.1, 0.01],
        "delta_epsilon": 0.01,
        "delta_h_ev": 0.2,
        "a_grid_nm": {"start": 0.05, "stop": 15.0, "count": 300},
    }
    cfg.update(overrides)
    energy = units.to_internal(cfg["energy_ev"])
    d = units.to_internal(cfg["d_ev"])
    h = units.to_internal(cfg["delta_h_ev"])
    eps_list = [float(e) for e in cfg["epsilons"]]
    deps = float(cfg["delta_epsilon"])
    a_values = grid_values(cfg["a_grid_nm"])

    def row(a):
        spec = SqueezeSpec(d=d, a=a, nu=2)
        vals = [squeezed_well_transmission(spec, energy, eps) for eps in eps_list]
        delta = rectangle_transmission(h / deps, deps * a, energy)
        return (a, *vals, delta)

    rows = pmap(row, a_values, threads)
    columns = ("a_nm", *(f"T_eps{_eps_label(e)}" for e in eps_list), "T_delta_nu1")
    return [FigureTable("", columns, tuple(rows), cfg)]


def build_fig3(units: UnitSystem, overrides: dict, threads: int | None = None):
    """Full-structure transmission over the (a, l_b) plane, one table per epsilon."""
    cfg = {
        "energy_ev": 0.02,
        "d_ev": 0.2,
        "barrier_ev": 0.1,
        "gap_rho_nm": 10.0,
        "ordering": "bw",
        "epsilons": [1.0, 0.1],
        "a_grid_nm": {"start": 0.1, "stop": 15.0, "count": 120},
        "lb_grid_nm": {"start": 0.1, "stop": 15.0, "count": 120},
    }
    cfg.update(overrides)
    energy = units.to_internal(cfg["energy_ev"])
    d = units.to_internal(cfg["d_ev"])
    vb = units.to_internal(cfg["barrier_ev"])
    rho = float(cfg["gap_rho_nm"])
    ordering = cfg["ordering"]
    a_values = grid_values(cfg["a_grid_nm"])
    lb_values = grid_values(cfg["lb_grid_nm"])

    tables = []
    for eps in cfg["epsilons"]:
        eps = float(eps)

        def row(a, _eps=eps):
            spec = SqueezeSpec(d=d, a=a, epsilon=_eps, nu=2)
            out = []
            for lb in lb_values:
                t = structure_transmission(
                    BilayerSpec(spec, rho, rectangle(lb, vb), ordering), energy
                )
                out.append((a, lb, t))
            return out

        blocks = pmap(row, a_values, threads)
        rows = tuple(item for block in blocks for item in block)
        tables.append(
            FigureTable(f"_eps{_eps_label(eps)}", ("a_nm", "lb_nm", "trans_prob"), rows, {**cfg, "epsilon": eps})
        )
    return tables


# extra samples on both flanks of a resonance thickness: level motion
# accelerates there and the detaching level must be caught while it is
# still the lowest root
RESONANCE_REFINEMENT = (
    0.97, 0.985, 0.993, 0.997, 1.0,
    1.002, 1.004, 1.006, 1.008, 1.012, 1.016, 1.022, 1.03,
)


def _fig4_a_grid(a1: float) -> list:
    base = [0.25 + (3.0 * a1 - 0.25) * i / 159 for i in range(160)]
    refine = [an * f for an in (a1, 2.0 * a1) for f in RESONANCE_REFINEMENT]
    return sorted({round(a, 12) for a in base + refine})


def build_fig4(units: UnitSystem, overrides: dict, threads: int | None = None):
    """Level positions vs prewell thickness at fixed small epsilon.

    Long format (a_nm, level_index, kappa); level_index is the descending
    rank, and rows -1, -2, -3 repeat the unperturbed layer levels as
    constant references.
    """
    cfg = {
        "epsilon": 0.01,
        "d_ev": 0.2,
        "gap_rho_nm": 0.5,
        "vb_ev": -0.5,
        "lb_nm": 7.0,
        "ordering": "wb",
        "a_values_nm": None,
    }
    cfg.update(overrides)
    d = units.to_internal(cfg["d_ev"])
    eps = float(cfg["epsilon"])
    b_layer = rectangle(float(cfg["lb_nm"]), units.to_internal(cfg["vb_ev"]))
    rho = float(cfg["gap_rho_nm"])
    a1 = resonance_thicknesses(d, 1)[0]
    a_values = cfg["a_values_nm"] or _fig4_a_grid(a1)
    refs = find_bound_states(b_layer).levels

    def solve(a):
        spec = BilayerSpec(SqueezeSpec(d=d, a=a, epsilon=eps, nu=2), rho, b_layer, cfg["ordering"])
        return wb_bound_states(spec, eps, grid_n=512)

    spectra = pmap(solve, a_values, threads)
    rows = []
    for a, sp in zip(a_values, spectra):
        for i, kappa in enumerate(sp.levels):
            rows.append((a, i + 1, kappa))
        for j, kappa in enumerate(refs):
            rows.append((a, -(j + 1), kappa))
    meta = {**cfg, "a_values_nm": list(a_values), "reference_levels": list(refs)}
    return [FigureTable("", ("a_nm", "level_index", "kappa_inv_nm"), tuple(rows), meta)]


def build_fig5(units: UnitSystem, overrides: dict, threads: int | None = None):
    """Level positions vs epsilon at three thickness choices (panels a, b, c).

    Panel b sits on the first resonance thickness; its reference rows are
    the unperturbed layer levels. Panels a and c sit mid-interval; their
    references are the hard-wall limit levels at the same gap.
    """
    cfg = {
        "d_ev": 0.2,
        "gap_rho_nm": 0.5,
        "vb_ev": -0.5,
        "lb_nm": 7.0,
        "ordering": "wb",
        "epsilons": [0.1, 0.08, 0.06, 0.05, 0.04, 0.03, 0.025, 0.02, 0.015, 0.012, 0.01],
    }
    cfg.update(overrides)
    d = units.to_internal(cfg["d_ev"])
    rho = float(cfg["gap_rho_nm"])
    ordering = cfg["ordering"]
    b_layer = rectangle(float(cfg["lb_nm"]), units.to_internal(cfg["vb_ev"]))
    a1 = resonance_thicknesses(d, 1)[0]
    eps_list = [float(e) for e in cfg["epsilons"]]

    wall_refs = wall_limit_states(b_layer, rho, ordering).levels
    bare_refs = find_bound_states(b_layer).levels
    panels = (
        ("_a", 0.5 * a1, wall_refs),
        ("_b", a1, bare_refs),
        ("_c", 1.5 * a1, wall_refs),
    )

    tables = []
    for suffix, a, refs in panels:
        spec = BilayerSpec(SqueezeSpec(d=d, a=a, nu=2), rho, b_layer, ordering)
        spectra = pmap(lambda e: wb_bound_states(spec, e, grid_n=512), eps_list, threads)
        rows = []
        for eps, sp in zip(eps_list, spectra):
            for i, kappa in enumerate(sp.levels):
                rows.append((eps, i + 1, kappa))
            for j, kappa in enumerate(refs):
                rows.append((eps, -(j + 1), kappa))
        meta = {**cfg, "a_nm": a, "panel": suffix.strip("_"), "reference_levels": list(refs)}
        tables.append(FigureTable(suffix, ("epsilon", "level_index", "kappa_inv_nm"), tuple(rows), meta))
    return tables


FIGURE_BUILDERS = {
    "fig1": build_fig1,
    "fig3": build_fig3,
    "fig4": build_fig4,
    "fig5": build_fig5,
}
