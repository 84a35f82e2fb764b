"""Tabular export and figure rendering for the report paths."""

from phv import (
    OrbitLimits,
    catalog_list,
    enumerate_orbit,
    parse_module,
    theorem_A_check,
    theorem_B_scan,
)
from phv.report import (
    catalog_table,
    move_text,
    orbit_table,
    render_catalog_figure,
    render_check_figure,
    render_orbit_figure,
    render_scan_figure,
    report_table,
    scan_table,
    write_tsv,
)

_LIMITS = OrbitLimits(max_steps=2, max_dim=10**6, max_nodes=10**4)


def test_move_text():
    frag = enumerate_orbit(parse_module("GL1 x SL2 : 3w1"), _LIMITS)
    texts = {move_text(mv) for member in frag.members for mv in member.path}
    assert texts  # at least one transform reached
    assert all(t.startswith(("castle[", "promote[")) for t in texts)


def test_orbit_table_contents():
    frag = enumerate_orbit(parse_module("GL1 x SL2 : 3w1"), _LIMITS)
    header, rows = orbit_table(frag)
    assert header == ("index", "depth", "dim_G", "dim_V", "path", "module")
    assert rows[0][:4] == (0, 0, 4, 4)
    assert rows[0][5] == "GL1 x SL2 : 3w1"
    assert all(row[2] == row[3] for row in rows)  # seed is etale, so all members are


def test_report_and_scan_tables():
    rep = theorem_A_check(parse_module("GL1 x SL2 x SL4 x SL3 : w1 # w1 # 2w1"))
    header, rows = report_table(rep)
    assert header == ("code", "location", "detail")
    assert {row[0] for row in rows} == {"GCD-PAIR", "GCD-N-EXTRA"}

    scan = theorem_B_scan(OrbitLimits(max_steps=1, max_dim=10**4))
    header, rows = scan_table(scan)
    assert header == ("seed", "members")
    assert sum(r[1] for r in rows) == scan.stats["members_total"]


def test_catalog_table_flag_order():
    entries = catalog_list()
    header, rows = catalog_table(entries)
    assert header == ("id", "module", "flags", "source", "dim_G", "dim_V")
    by_id = {row[0]: row for row in rows}
    assert by_id["SK I-4"][2] == "etale,regular,reduced,irreducible"
    assert by_id["SK I-4"][4] == by_id["SK I-4"][5] == 4


def test_write_tsv(tmp_path):
    path = tmp_path / "out.tsv"
    write_tsv(path, ("a", "b"), [(1, "x"), (2, "y")])
    assert path.read_text() == "a\tb\n1\tx\n2\ty\n"


def test_figures_render_to_png(tmp_path):
    frag = enumerate_orbit(parse_module("GL1 x SL3 x SL2 : 2w1 # w1"), _LIMITS)
    rep_pass = theorem_A_check(parse_module("GL1 x SL3 x SL2 : 2w1 # w1"))
    scan = theorem_B_scan(OrbitLimits(max_steps=1, max_dim=10**4))
    jobs = [
        (render_orbit_figure, frag, "orbit.png"),
        (render_check_figure, rep_pass, "check.png"),
        (render_scan_figure, scan, "scan.png"),
        (render_catalog_figure, catalog_list(), "catalog.png"),
    ]
    for render, payload, name in jobs:
        target = tmp_path / name
        render(payload, target)
        assert target.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
