import math
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import table1
from lsqre.estimate import FtreReport, Scheme
from lsqre.manifest import ManifestError, load_manifest, parse_manifest
from lsqre.report import FTRE_COLUMNS, ftre_row, lre_row, parse_ftre_row, read_csv, to_csv, to_table

ROOT = Path(__file__).resolve().parent.parent
MANIFESTS = sorted((ROOT / "manifests" / "spbc").glob("*.yaml"))


def test_shipped_manifests_cover_table1():
    keys = {(m.application, m.algorithm) for m in map(load_manifest, MANIFESTS)}
    assert keys == set(table1())


def test_inline_summary_echoes_table1_row():
    m = load_manifest(ROOT / "manifests" / "spbc" / "tfim-square-trotter.yaml")
    [(entry, summary)] = m.summaries()
    row = lre_row(entry.name, summary)
    assert row == {
        "Name": "trotter-step", "Occurrences": "5.37e+07", "LQ": "100", "Gates": "7.84e+12",
        "T Gates": "3.08e+12", "Depth": "1.70e+11", "Density": "4.63e-01", "T Fraction": "3.93e-01",
    }


def test_circuit_entry_resolved_relative_to_manifest():
    m = load_manifest(ROOT / "manifests" / "direct" / "random10.yaml")
    assert m.scheme is Scheme.DIRECT
    [(_, summary)] = m.summaries()
    assert summary.num_lq == 10
    assert m.to_spec().entries[0].circuit is not None


def doc(**over):
    base = {"application": "A", "algorithm": "B", "subcircuits": [
        {"name": "s", "occurrences": 2, "summary": {"num_lq": 4, "num_gates": 20, "num_t": 4, "depth": 10}}
    ]}
    base.update(over)
    return base


def test_summary_totals_divided_by_occurrences():
    m = parse_manifest(doc())
    [(_, s)] = m.summaries()
    assert (s.num_gates, s.num_t, s.depth, s.total_gates) == (10, 2, 5, 20)


@pytest.mark.parametrize(
    "bad",
    [
        doc(subcircuits=[]),
        doc(subcircuits=[{"name": "x", "occurrences": 1}]),
        doc(subcircuits=[{"name": "x", "circuit": "a.txt", "summary": {}}]),
        doc(subcircuits=[{"name": "x", "occurrences": 0, "circuit": "a.txt"}]),
        doc(subcircuits=[{"name": "x", "summary": {"num_lq": 3}}]),
        doc(scheme="pbc"),
        doc(layout="2-lane"),
        ["not", "a", "mapping"],
    ],
)
def test_malformed_manifests(bad):
    with pytest.raises(ManifestError):
        parse_manifest(bad)


def test_direct_scheme_needs_circuit_files():
    with pytest.raises(ManifestError, match="circuit file"):
        parse_manifest(doc(scheme="direct")).to_spec()


def test_missing_circuit_file_named(tmp_path):
    m = parse_manifest(doc(subcircuits=[{"name": "x", "circuit": "gone.txt"}]), base=tmp_path)
    with pytest.raises(ManifestError, match="gone.txt"):
        m.summaries()


def test_invalid_yaml(tmp_path):
    path = tmp_path / "m.yaml"
    path.write_text("a: [1, 2\n")
    with pytest.raises(ManifestError, match="YAML"):
        load_manifest(path)


positive = st.floats(min_value=1e-30, max_value=1e30, allow_nan=False)


@given(
    d=st.sampled_from([(9, 25), (11, 31), (11, 37)]), n=st.integers(0, 20),
    p_t=positive, tiles=st.integers(1, 10**6), tau=positive,
    e1=positive, e2=positive, e3=positive,
)
def test_ftre_row_round_trip(d, n, p_t, tiles, tau, e1, e2, e3):
    r = FtreReport(d[0], d[1], n, p_t, tiles, tau, e1, e2, e3, "App", "Alg")
    parsed = parse_ftre_row(read_csv(to_csv([ftre_row(r)], FTRE_COLUMNS))[0])
    assert (parsed["d1"], parsed["d2"], parsed["N"]) == (d[0], d[1], n)
    for col, value in [
        ("P_T", p_t), ("n_total", tiles), ("tau_total", tau), ("tau_total*d2", r.time_metric),
        ("n_total*tau_total*d2^3", r.footprint_metric), ("eps_logical", e1),
        ("eps_total", r.eps_total),
    ]:
        assert math.isclose(parsed[col], value, rel_tol=5e-3)


def test_table_is_aligned():
    rows = [{"a": "1", "bb": "long value"}, {"a": "22", "bb": "x"}]
    lines = to_table(rows, ["a", "bb"]).splitlines()
    assert len({line.index(line.split()[1]) for line in [lines[0], lines[2]]}) == 1
    assert set(lines[1]) <= {"-", " "}
