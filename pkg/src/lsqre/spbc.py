"""Closed-form footprint analysis for sequential Pauli-based computation (SPBC).

Every pi/8 rotation costs one worst-case Pauli product measurement of
``tau_ppm`` logical time-steps, half of them followed by a pi/4 correction, on
a two-row linear block with one data tile per qubit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import CircuitSummary
from .models import FactoryModel, PhysicalErrorModel


@dataclass(frozen=True)
class SpbcParams:
    tau_ppm: int = 8
    clifford_correction_rate: float = 0.5

    def __post_init__(self):
        if self.tau_ppm < 1:
            raise ValueError("tau_ppm must be at least 1")
        if not 0 <= self.clifford_correction_rate <= 1:
            raise ValueError("clifford_correction_rate must lie in [0, 1]")

    @property
    def slices_per_t(self) -> float:
        """SPBC time per T gate; 12 with the defaults."""
        return self.tau_ppm * (1 + self.clifford_correction_rate)


@dataclass(frozen=True)
class SpbcEstimate:
    d1: int
    d2: int
    tau_logical: float
    tau_total: float
    n_logical: int
    n_total: int
    num_factories: int
    factory_tiles: int
    p_t: float
    eps_logical: float
    eps_dist: float
    eps_storage: float

    @property
    def eps_total(self) -> float:
        return self.eps_logical + self.eps_dist + self.eps_storage


def spbc_slices(summary: CircuitSummary, params: SpbcParams = SpbcParams()) -> float:
    """Logical time-steps for one occurrence of ``summary``."""
    return params.tau_ppm * (
        (1 + params.clifford_correction_rate) * summary.num_t + summary.num_lq
    )


def spbc_tiles(num_lq: int) -> int:
    # data row plus equal ancilla row, widened by the Y-state and magic-storage
    # tiles and their two mediating ancillae
    return 2 * (num_lq + 2)


def spbc_factories(factory: FactoryModel | int, params: SpbcParams = SpbcParams()) -> int:
    tau_d = factory if isinstance(factory, int) else factory.tau_d
    if tau_d < 1:
        raise ValueError("tau_d must be at least 1")
    return math.ceil(tau_d / params.tau_ppm)


def storage_cycles(tau_total: float, tau_d: int) -> int:
    """Distillation cycles in the computation, excluding the warm-up cycle."""
    return max(math.ceil(tau_total / tau_d) - 1, 0)


def spbc_estimate(
    summary: CircuitSummary,
    factory: FactoryModel,
    phys: PhysicalErrorModel,
    d1: int,
    d2: int,
    params: SpbcParams = SpbcParams(),
) -> SpbcEstimate:
    """FTRE of ``summary`` repeated ``summary.occurrences`` times at (d1, d2).

    A single warm-up cycle precedes the whole run.
    """
    if d1 > d2 or d1 % 2 == 0 or d2 % 2 == 0:
        raise ValueError(f"need odd d1 <= d2, got ({d1}, {d2})")
    p_t = factory.p_t_at(d1, d2)
    f_tiles = factory.tiles_at(d1, d2)
    total_t = summary.total_t
    tau_logical = summary.occurrences * spbc_slices(summary, params)
    n_logical = spbc_tiles(summary.num_lq)
    if total_t > 0:
        num_factories = spbc_factories(factory, params)
        tau_total = tau_logical + factory.tau_d
    else:
        num_factories = 0
        tau_total = tau_logical
    p = phys.p_logical(d2)
    return SpbcEstimate(
        d1=d1,
        d2=d2,
        tau_logical=tau_logical,
        tau_total=tau_total,
        n_logical=n_logical,
        n_total=n_logical + num_factories * (f_tiles + 1),
        num_factories=num_factories,
        factory_tiles=f_tiles,
        p_t=p_t,
        eps_logical=n_logical * tau_logical * p,
        eps_dist=total_t * p_t,
        eps_storage=num_factories * factory.tau_d * storage_cycles(tau_total, factory.tau_d) * p,
    )
