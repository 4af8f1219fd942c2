"""Magic-state supply: distillation parameters and min-storage factory scheduling.

Min-storage runs exactly as many factories during distillation cycle ``k - 1``
as there are T gates consumed during cycle ``k``. Produced states wait one
cycle in storage. The factory allocation for a sub-circuit is the busiest
cycle's demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .models import FactoryModel, PhysicalErrorModel

ConsumptionProfile = tuple[int, ...]


@dataclass(frozen=True)
class MinStoragePlan:
    num_factories: int
    storage_tiles: int
    num_cycles: int
    distillation_volume: int
    storage_volume: int
    tau_d: int
    demand: tuple[int, ...] = ()
    factory_tiles: int = 1

    @property
    def factory_cycles(self) -> int:
        """Factory activations summed over all cycles, warm-up included."""
        return sum(self.demand)

    def with_factory_tiles(self, factory_tiles: int) -> "MinStoragePlan":
        return replace(
            self,
            factory_tiles=factory_tiles,
            distillation_volume=self.factory_cycles * factory_tiles * self.tau_d,
        )

    def tiles(self, factory_tiles: int) -> int:
        """Spatial allocation: factories plus one storage tile each."""
        return self.num_factories * factory_tiles + self.storage_tiles


def block_demand(profile: Sequence[int], tau_d: int) -> np.ndarray:
    """Magic states consumed in each consecutive block of ``tau_d`` slices."""
    counts = np.asarray(profile, dtype=np.int64)
    if counts.size == 0:
        return counts
    if (counts < 0).any():
        raise ValueError("consumption profile must be nonnegative")
    pad = (-counts.size) % tau_d
    if pad:
        counts = np.concatenate([counts, np.zeros(pad, dtype=np.int64)])
    return counts.reshape(-1, tau_d).sum(axis=1)


def min_storage_schedule(
    profile: Sequence[int], factory: FactoryModel | int, factory_tiles: int = 1
) -> MinStoragePlan:
    tau_d = factory if isinstance(factory, int) else factory.tau_d
    if tau_d < 1:
        raise ValueError("tau_d must be at least 1")
    demand = block_demand(profile, tau_d)
    num_slices = len(profile)
    num_factories = int(demand.max()) if demand.size else 0
    total = int(demand.sum())
    return MinStoragePlan(
        num_factories=num_factories,
        storage_tiles=num_factories,
        # computation cycles plus the warm-up cycle
        num_cycles=math.ceil((num_slices + tau_d) / tau_d),
        distillation_volume=total * factory_tiles * tau_d,
        # every state sits in storage for the cycle between production and use
        storage_volume=total * tau_d,
        tau_d=tau_d,
        demand=tuple(int(x) for x in demand),
        factory_tiles=factory_tiles,
    )


def distill_params(
    d1: int, d2: int, factory: FactoryModel, phys: PhysicalErrorModel | None = None
) -> tuple[float, int]:
    """Return (P_T, factory footprint in d2 tiles) for a calibrated pair.

    ``phys`` is accepted for interface symmetry; the calibrated P_T already
    folds in the physical error assumptions.
    """
    return factory.p_t_at(d1, d2), factory.tiles_at(d1, d2)
