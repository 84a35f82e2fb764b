"""Delimited tables and rendered figures for the command-line report paths.

Every writer here takes already-computed results (an orbit fragment, a
verification :class:`~phv.verify.Report`, catalog entries) and produces a
tab-separated table or a PNG figure on disk.  Nothing in this module
recomputes mathematics; it exists so the CLI can drop file artifacts next
to the text it prints.
"""

from __future__ import annotations

import math
import os
from collections.abc import Iterable, Sequence

from .castling import CastlingMove, OrbitFragment
from .catalog import FLAGS, CatalogEntry
from .core import group_dim, module_dim
from .grammar import format_module
from .verify import Report

_DPI = 120
_BAR = "#4878a8"
_ACCENT = "#b0503c"


def ensure_dir(path: str) -> str:
    """Create ``path`` (and parents) if needed and return it."""
    os.makedirs(path, exist_ok=True)
    return path


def write_tsv(path: str, header: Sequence[str],
              rows: Iterable[Sequence[object]]) -> None:
    """Write one header line plus one line per row, tab-separated."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(header) + "\n")
        for row in rows:
            fh.write("\t".join(str(cell) for cell in row) + "\n")


def move_text(move: CastlingMove) -> str:
    """Render one transform step compactly, with 1-based numbering."""
    if move.kind == "promote":
        marks = "+".join(f"s{j + 1}" for j in sorted(move.summands))
        return f"promote[{marks}]"
    return f"castle[f{move.factor + 1}]"


# ---------------------------------------------------------------------------
# tables


def orbit_table(frag: OrbitFragment) -> tuple[tuple[str, ...], list[tuple]]:
    """Tabulate an orbit fragment: one row per member, seed first."""
    header = ("index", "depth", "dim_G", "dim_V", "path", "module")
    rows = []
    for idx, mem in enumerate(frag.members):
        path = " ; ".join(move_text(mv) for mv in mem.path) or "-"
        rows.append((idx, mem.depth, group_dim(mem.module),
                     module_dim(mem.module), path, format_module(mem.module)))
    return header, rows


def report_table(report: Report) -> tuple[tuple[str, ...], list[tuple]]:
    """Tabulate a report's violations (empty table on a clean pass)."""
    header = ("code", "location", "detail")
    rows = [(v.code, v.location, v.detail) for v in report.violations]
    return header, rows


def scan_table(report: Report) -> tuple[tuple[str, ...], list[tuple]]:
    """Tabulate scan coverage: members visited per seed."""
    header = ("seed", "members")
    per_seed = report.stats.get("members_per_seed", {})
    return header, [(label, count) for label, count in per_seed.items()]


def catalog_table(entries: Sequence[CatalogEntry]) -> tuple[tuple[str, ...], list[tuple]]:
    """Tabulate catalog entries with representative dimensions."""
    header = ("id", "module", "flags", "source", "dim_G", "dim_V")
    rows = []
    for entry in entries:
        m = entry.build(**entry.representative)
        flags = ",".join(f for f in FLAGS if f in entry.flags)
        rows.append((entry.id, format_module(m), flags,
                     entry.source, group_dim(m), module_dim(m)))
    return header, rows


# ---------------------------------------------------------------------------
# figures


def _new_figure(figsize: tuple[float, float]):
    # Imported here so table-only callers never pay for matplotlib.
    from matplotlib.figure import Figure

    return Figure(figsize=figsize)


def _save(fig, path: str) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)


def render_orbit_figure(frag: OrbitFragment, path: str) -> None:
    """Scatter dim V against transform depth for every orbit member."""
    fig = _new_figure((7.0, 4.5))
    ax = fig.subplots()
    xs = [mem.depth for mem in frag.members]
    ys = [module_dim(mem.module) for mem in frag.members]
    ax.scatter(xs, ys, s=30, color=_BAR, alpha=0.85, edgecolors="none")
    if ys and max(ys) > 50 * max(min(ys), 1):
        ax.set_yscale("log")
    ax.set_xlabel("transform depth")
    ax.set_ylabel("dim V")
    ax.set_title(f"orbit of {format_module(frag.seed)}")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def render_scan_figure(report: Report, path: str) -> None:
    """Horizontal bars: orbit members examined per scan seed."""
    per_seed = report.stats.get("members_per_seed", {})
    labels = list(per_seed)
    counts = [per_seed[label] for label in labels]
    fig = _new_figure((7.0, 0.34 * max(len(labels), 1) + 1.6))
    ax = fig.subplots()
    ax.barh(range(len(labels)), counts, color=_BAR)
    ax.set_yticks(range(len(labels)), labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("orbit members examined")
    ax.set_title(f"repeated-factor scan ({report.verdict})")
    _save(fig, path)


def render_check_figure(report: Report, path: str) -> None:
    """Plot the gcd data behind a coprimality report.

    For a single-module check this bars gcd(n, m_i) over the standard-acting
    block sizes; for an orbit-wide check it plots the invariant gcd of every
    member against the seed's reference value.
    """
    stats = report.stats
    fig = _new_figure((7.0, 4.0))
    ax = fig.subplots()
    if "member_gcds" in stats:
        gcds = stats["member_gcds"]
        ax.plot(range(len(gcds)), gcds, marker="o", linestyle="",
                markersize=4, color=_BAR)
        ax.axhline(stats["reference_gcd"], color=_ACCENT, linewidth=1.2,
                   label=f"reference gcd = {stats['reference_gcd']}")
        ax.set_xlabel("orbit member")
        ax.set_ylabel("gcd(n, product of block sizes)")
        ax.set_ylim(bottom=0)
        ax.legend(loc="best", fontsize=8)
    else:
        sizes = stats.get("w_sizes", ())
        n = stats.get("n", 1)
        gcds = [math.gcd(n, size) for size in sizes]
        ticks = range(1, len(sizes) + 1)
        colors = [_ACCENT if g != 1 else _BAR for g in gcds]
        ax.bar(ticks, gcds, color=colors)
        ax.set_xticks(list(ticks))
        ax.set_xlabel("standard-acting block")
        ax.set_ylabel(f"gcd(n = {n}, block size)")
    ax.set_title(f"{report.subject} ({report.verdict})")
    ax.grid(True, axis="y", alpha=0.3)
    _save(fig, path)


def render_catalog_figure(entries: Sequence[CatalogEntry], path: str) -> None:
    """Horizontal bars: representative dim G per catalog entry."""
    labels = [entry.id for entry in entries]
    dims = [group_dim(entry.build(**entry.representative)) for entry in entries]
    colors = [_BAR if "etale" in entry.flags else _ACCENT for entry in entries]
    fig = _new_figure((7.0, 0.34 * max(len(labels), 1) + 1.6))
    ax = fig.subplots()
    ax.barh(range(len(labels)), dims, color=colors)
    ax.set_yticks(range(len(labels)), labels, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("dim G of representative")
    ax.set_title("catalog representatives")
    _save(fig, path)


def render_verify_figure(report: Report, path: str) -> None:
    """Bars: headline counters of a catalog verification run."""
    stats = report.stats
    labels = ["entries", "etale entries", "instances",
              "stabilizer checks", "violations"]
    counts = [stats.get("entries", 0), stats.get("etale_entries", 0),
              stats.get("instances", 0), stats.get("stabilizer_checks", 0),
              len(report.violations)]
    colors = [_BAR] * 4 + [_ACCENT]
    fig = _new_figure((7.0, 4.0))
    ax = fig.subplots()
    ax.bar(range(len(labels)), counts, color=colors)
    ax.set_xticks(range(len(labels)), labels, fontsize=8)
    ax.set_ylabel("count")
    ax.set_title(f"catalog verification ({report.verdict})")
    ax.grid(True, axis="y", alpha=0.3)
    _save(fig, path)
