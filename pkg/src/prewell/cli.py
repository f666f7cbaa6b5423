"""Command-line front end.

Subcommands: transmit, bound, squeeze, bilayer, figure <name>,
check <suite>. Output is CSV with a single header comment line echoing
the resolved configuration; identical configs produce byte-identical
files (12 significant digits, '.' decimal separator, '\\n' line endings).
Exit codes: 0 success, 1 check-suite assertion failure, 2 config error.
"""

import argparse
import json
import os
import sys

from . import figures
from .bilayer import structure_transmission
from .bound import find_bound_states
from .checks import SUITES
from .figures import FIGURE_BUILDERS, grid_values, pmap
from .potential import BilayerSpec, SqueezeSpec, profile_from_dict, rectangle
from .scattering import profile_transmission, squeezed_well_transmission
from .units import DEFAULT_EV_TO_INV_NM2, UnitSystem


class ConfigError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def write_table(path, meta: dict, columns, rows):
    header = json.dumps(meta, sort_keys=True, separators=(",", ":"))
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# {header}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return cfg


def _resolve_units(args, config) -> UnitSystem:
    value = args.units_ev_to_inv_nm2
    if value is None:
        value = config.get("units", {}).get("ev_to_inv_nm2", DEFAULT_EV_TO_INV_NM2)
    try:
        return UnitSystem(float(value))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad units.ev_to_inv_nm2: {value}") from exc


def _resolve(args, config, key, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    return config.get(key, default)


def _section(config, name) -> dict:
    section = config.get(name, {})
    if not isinstance(section, dict):
        raise ConfigError(f"config section {name!r} must be an object")
    return section


def _meta(units, section) -> dict:
    return {"units": {"ev_to_inv_nm2": units.ev_to_inv_nm2}, **section}


def cmd_transmit(args, config):
    units = _resolve_units(args, config)
    section = {
        "profile": {"segments": [{"width_nm": 5.0, "height_ev": 0.1}]},
        "energy_grid_ev": {"start": 0.001, "stop": 0.3, "count": 100},
    }
    section.update(_section(config, "transmit"))
    profile = profile_from_dict(section["profile"], units)
    energies_ev = grid_values(section["energy_grid_ev"])
    threads = _resolve(args, config, "threads", None)

    def one(e_ev):
        t = profile_transmission(profile, units.to_internal(e_ev))
        return (e_ev, t, 1.0 - t)

    rows = pmap(one, energies_ev, threads)
    out = _resolve(args, config, "out", None) or "transmit.csv"
    write_table(out, _meta(units, section), ("energy_ev", "trans_prob", "refl_prob"), rows)
    print(f"wrote {out}")
    return 0


def cmd_bound(args, config):
    units = _resolve_units(args, config)
    section = {
        "profile": {"segments": [{"width_nm": 7.0, "height_ev": -0.5}]},
        "grid_n": 128,
        "window": None,
    }
    section.update(_section(config, "bound"))
    profile = profile_from_dict(section["profile"], units)
    window = tuple(section["window"]) if section["window"] else None
    spectrum = find_bound_states(profile, window=window, grid_n=int(section["grid_n"]))
    rows = [
        (i + 1, kappa, -units.to_ev(kappa * kappa), res)
        for i, (kappa, res) in enumerate(zip(spectrum.levels, spectrum.residuals))
    ]
    out = _resolve(args, config, "out", None) or "bound.csv"
    meta = _meta(units, section)
    meta["search_window"] = list(spectrum.search_window)
    meta["failures"] = len(spectrum.failures)
    write_table(out, meta, ("level_index", "kappa_inv_nm", "energy_ev", "residual"), rows)
    print(f"wrote {out}")
    return 0


def cmd_squeeze(args, config):
    units = _resolve_units(args, config)
    section = {
        "d_ev": 0.2,
        "energy_ev": 0.01,
        "epsilons": [1.0, 0.1, 0.01],
        "a_grid_nm": {"start": 0.05, "stop": 15.0, "count": 300},
    }
    section.update(_section(config, "squeeze"))
    d = units.to_internal(float(section["d_ev"]))
    energy = units.to_internal(float(section["energy_ev"]))
    eps_list = [float(e) for e in section["epsilons"]]
    a_values = grid_values(section["a_grid_nm"])
    threads = _resolve(args, config, "threads", None)

    def one(a):
        spec = SqueezeSpec(d=d, a=a, nu=2)
        return (a, *(squeezed_well_transmission(spec, energy, e) for e in eps_list))

    rows = pmap(one, a_values, threads)
    out = _resolve(args, config, "out", None) or "squeeze.csv"
    columns = ("a_nm", *(f"T_eps{e:g}" for e in eps_list))
    write_table(out, _meta(units, section), columns, rows)
    print(f"wrote {out}")
    return 0


def cmd_bilayer(args, config):
    units = _resolve_units(args, config)
    section = {
        "d_ev": 0.2,
        "energy_ev": 0.02,
        "gap_rho_nm": 10.0,
        "ordering": "bw",
        "epsilons": [1.0, 0.1],
        "b_layer": {"segments": [{"width_nm": 5.0, "height_ev": 0.1}]},
        "a_grid_nm": {"start": 0.1, "stop": 15.0, "count": 120},
    }
    section.update(_section(config, "bilayer"))
    units_d = units.to_internal(float(section["d_ev"]))
    energy = units.to_internal(float(section["energy_ev"]))
    rho = float(section["gap_rho_nm"])
    ordering = section["ordering"]
    b_layer = profile_from_dict(section["b_layer"], units)
    eps_list = [float(e) for e in section["epsilons"]]
    a_values = grid_values(section["a_grid_nm"])
    threads = _resolve(args, config, "threads", None)

    def one(a):
        spec = SqueezeSpec(d=units_d, a=a, nu=2)
        bspec = BilayerSpec(spec, rho, b_layer, ordering)
        return [(a, e, structure_transmission(bspec, energy, e)) for e in eps_list]

    blocks = pmap(one, a_values, threads)
    rows = [item for block in blocks for item in block]
    out = _resolve(args, config, "out", None) or "bilayer.csv"
    write_table(out, _meta(units, section), ("a_nm", "epsilon", "trans_prob"), rows)
    print(f"wrote {out}")
    return 0


def cmd_figure(args, config):
    units = _resolve_units(args, config)
    name = args.name
    overrides = _section(_section(config, "figure"), name)
    threads = _resolve(args, config, "threads", None)
    try:
        tables = FIGURE_BUILDERS[name](units, overrides, threads)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"figure {name}: {exc}") from exc
    out = _resolve(args, config, "out", None) or f"{name}.csv"
    stem = out[:-4] if out.endswith(".csv") else out
    written = []
    for table in tables:
        path = f"{stem}{table.suffix}.csv"
        meta = _meta(units, table.meta)
        write_table(path, meta, table.columns, table.rows)
        written.append(path)
    if not args.no_plot:
        from .plotting import render_figure

        written.extend(render_figure(name, tables, stem))
    for path in written:
        print(f"wrote {path}")
    return 0


def cmd_check(args, config):
    units = _resolve_units(args, config)
    results = SUITES[args.suite](units)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        print(f"{status} {r.suite}.{r.name}: measured {r.measured}; tolerance {r.tolerance}")
    print(f"{args.suite}: {len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file")
    common.add_argument("--out", metavar="PATH", help="output CSV path")
    common.add_argument("--threads", type=int, metavar="N",
                        help="worker threads for sweeps (default: hardware)")
    common.add_argument("--units.ev-to-inv-nm2", dest="units_ev_to_inv_nm2",
                        type=float, metavar="X", help="energy conversion, nm^-2 per eV")

    parser = argparse.ArgumentParser(
        prog="prewell",
        description="Transmission and bound-state sweeps for layered 1D structures "
                    "with a squeezed prewell.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("transmit", parents=[common], help="transmission over an energy grid")
    sub.add_parser("bound", parents=[common], help="bound levels of a profile")
    sub.add_parser("squeeze", parents=[common], help="scaled-well transmission vs thickness")
    sub.add_parser("bilayer", parents=[common], help="full-structure transmission sweep")
    fig = sub.add_parser("figure", parents=[common], help="canned report sweeps")
    fig.add_argument("name", choices=sorted(FIGURE_BUILDERS))
    fig.add_argument("--no-plot", action="store_true", help="skip the PNG rendering")
    chk = sub.add_parser("check", parents=[common], help="assertion suites")
    chk.add_argument("suite", choices=sorted(SUITES))
    return parser


COMMANDS = {
    "transmit": cmd_transmit,
    "bound": cmd_bound,
    "squeeze": cmd_squeeze,
    "bilayer": cmd_bilayer,
    "figure": cmd_figure,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return COMMANDS[args.command](args, config)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
