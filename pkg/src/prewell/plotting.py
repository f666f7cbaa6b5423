"""Matplotlib rendering for the figure subcommand.

Every figure is also written as CSV; the PNGs are a convenience view of
the same tables and carry no data of their own.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _group_levels(rows):
    """Split long-format (x, level_index, kappa) rows into level curves
    and constant reference lines."""
    curves = {}
    refs = {}
    for x, idx, kappa in rows:
        idx = int(idx)
        target = refs if idx < 0 else curves
        target.setdefault(idx, []).append((x, kappa))
    return curves, refs


def render_fig1(tables, base_path):
    table = tables[0]
    xs = [r[0] for r in table.rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for col in range(1, len(table.columns)):
        ax.plot(xs, [r[col] for r in table.rows], lw=1.2, label=table.columns[col])
    ax.set_xlabel("a (nm)")
    ax.set_ylabel("transmission")
    ax.set_ylim(0.0, 1.05)
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = f"{base_path}.png"
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return [path]


def render_fig3(tables, base_path):
    fig, axes = plt.subplots(1, len(tables), figsize=(5.6 * len(tables), 4.6), squeeze=False)
    mappable = None
    for ax, table in zip(axes[0], tables):
        a_vals = sorted({r[0] for r in table.rows})
        lb_vals = sorted({r[1] for r in table.rows})
        grid = [[0.0] * len(a_vals) for _ in lb_vals]
        index_a = {a: i for i, a in enumerate(a_vals)}
        index_lb = {lb: i for i, lb in enumerate(lb_vals)}
        for a, lb, t in table.rows:
            grid[index_lb[lb]][index_a[a]] = t
        mappable = ax.pcolormesh(a_vals, lb_vals, grid, shading="nearest", vmin=0.0, vmax=1.0)
        ax.set_xlabel("a (nm)")
        ax.set_ylabel("l_b (nm)")
        ax.set_title(f"epsilon = {table.meta.get('epsilon')}")
    fig.colorbar(mappable, ax=axes[0].tolist(), label="transmission", shrink=0.9)
    path = f"{base_path}.png"
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return [path]


def render_fig4(tables, base_path):
    table = tables[0]
    curves, refs = _group_levels(table.rows)
    fig, (ax_zoom, ax_full) = plt.subplots(1, 2, figsize=(11.0, 4.6))
    for ax, ylim in ((ax_zoom, 1.45), (ax_full, None)):
        for idx in sorted(curves):
            pts = curves[idx]
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "k.", ms=2.0)
        for idx in sorted(refs, reverse=True):
            ax.axhline(refs[idx][0][1], color="tab:blue", lw=0.8, ls="--")
        ax.set_xlabel("a (nm)")
        ax.set_ylabel("kappa (1/nm)")
        if ylim:
            ax.set_ylim(0.0, ylim)
        else:
            ax.set_yscale("log")
    ax_zoom.set_title("layer-level range")
    ax_full.set_title("all levels (log)")
    fig.tight_layout()
    path = f"{base_path}.png"
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return [path]


def render_fig5(tables, base_path):
    fig, axes = plt.subplots(1, len(tables), figsize=(4.4 * len(tables), 4.2), squeeze=False)
    for ax, table in zip(axes[0], tables):
        curves, refs = _group_levels(table.rows)
        for idx in sorted(curves):
            pts = curves[idx]
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "k.-", ms=3.0, lw=0.6)
        for idx in sorted(refs, reverse=True):
            ax.axhline(refs[idx][0][1], color="tab:red", lw=0.8, ls="--")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("epsilon")
        ax.set_ylabel("kappa (1/nm)")
        ax.set_title(f"a = {table.meta.get('a_nm'):.4g} nm")
    fig.tight_layout()
    path = f"{base_path}.png"
    fig.savefig(path, dpi=160)
    plt.close(fig)
    return [path]


RENDERERS = {
    "fig1": render_fig1,
    "fig3": render_fig3,
    "fig4": render_fig4,
    "fig5": render_fig5,
}


def render_figure(name, tables, base_path):
    return RENDERERS[name](tables, base_path)
