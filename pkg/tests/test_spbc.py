import math

import pytest

from helpers import load_table, rel, summary_from_row, table1
from lsqre.circuit import CircuitSummary
from lsqre.models import load_calibration
from lsqre.spbc import (
    SpbcParams,
    spbc_estimate,
    spbc_factories,
    spbc_slices,
    spbc_tiles,
    storage_cycles,
)


@pytest.fixture(scope="module")
def cal():
    return load_calibration()


def summary(num_t, num_lq):
    return CircuitSummary.from_counts(num_lq, max(num_t, 1), num_t, 1)


def test_slices_examples():
    assert spbc_slices(summary(3.08e12, 100)) == pytest.approx(3.696e13, rel=1e-3)
    assert spbc_slices(summary(1.57e10, 119)) == pytest.approx(1.884e11, rel=1e-3)
    assert spbc_slices(summary(0, 4)) == 32


def test_slices_affine_in_t():
    a, b = spbc_slices(summary(10, 7)), spbc_slices(summary(11, 7))
    assert b - a == 12
    assert SpbcParams().slices_per_t == 12


def test_tiles_examples():
    assert spbc_tiles(100) == 204
    assert spbc_tiles(1) == 6
    assert spbc_tiles(1024) == 2052


def test_factory_count_examples():
    assert spbc_factories(24) == 3
    assert spbc_factories(8) == 1
    assert spbc_factories(9) == 2
    assert spbc_factories(18) == 3


@pytest.mark.parametrize("kwargs", [{"tau_ppm": 0}, {"clifford_correction_rate": 1.5}])
def test_params_validated(kwargs):
    with pytest.raises(ValueError):
        SpbcParams(**kwargs)


def test_storage_cycles():
    assert storage_cycles(0, 18) == 0
    assert storage_cycles(18, 18) == 0
    assert storage_cycles(19, 18) == 1


def test_tfim_square_trotter_row(cal):
    row = table1()[("TFIM (square)", "Trotter")]
    est = spbc_estimate(summary_from_row(row), cal.factory, cal.phys, 11, 31)
    assert est.eps_dist == pytest.approx(7.30e-6, rel=0.01)
    assert est.eps_storage == pytest.approx(9.70e-6, rel=0.05)
    assert est.eps_logical == pytest.approx(6.59e-4, rel=0.05)
    assert est.tau_total == pytest.approx(3.70e13, rel=0.005)
    assert est.num_factories == 3
    assert est.n_total == est.n_logical + 3 * (est.factory_tiles + 1)
    assert est.tau_total == est.tau_logical + cal.factory.tau_d
    cycles = math.ceil(est.tau_total / cal.factory.tau_d) - 1
    assert est.eps_storage == pytest.approx(3 * cal.factory.tau_d * cycles * cal.phys(31))


def test_zero_t_gives_zero_errors(cal):
    s = CircuitSummary.from_counts(4, 0, 0, 0)
    est = spbc_estimate(s, cal.factory, cal.phys, 11, 31)
    assert est.eps_dist == est.eps_storage == 0
    assert est.num_factories == 0
    assert est.n_total == est.n_logical


def test_rejects_uncalibrated_or_even_distances(cal):
    s = summary(10, 4)
    with pytest.raises(ValueError):
        spbc_estimate(s, cal.factory, cal.phys, 11, 30)
    with pytest.raises(ValueError):
        spbc_estimate(s, cal.factory, cal.phys, 13, 41)


@pytest.mark.parametrize("row", load_table("table2_spbc.csv"), ids=lambda r: f"{r['application']}-{r['algorithm']}")
def test_tau_total_within_half_percent(row):
    src = table1()[(row["application"], row["algorithm"])]
    tau = src["occurrences"] * spbc_slices(summary_from_row(src))
    assert rel(tau, row["tau_total"]) < 0.005
