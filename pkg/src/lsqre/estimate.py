"""Fault-tolerance-layer resource estimates (FTRE).

Error terms, aggregation of serially executed sub-circuits, and the search
over calibrated code-distance pairs for the smallest space-time footprint
that stays inside the error budget.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .circuit import CircuitSummary, LogicalCircuit, compute_lre
from .compiler import CompilationResult, CompilerConfig, compile_circuit
from .layout import LayoutKind, plan_layout
from .magic import MinStoragePlan, min_storage_schedule
from .models import Calibration, FactoryModel, PhysicalErrorModel
from .spbc import SpbcParams, spbc_factories, spbc_slices, spbc_tiles, storage_cycles

DEFAULT_BUDGET = 0.01
D1_GRID = range(7, 14, 2)
D2_GRID = range(17, 50, 2)


class InfeasibleBudget(RuntimeError):
    def __init__(self, budget: float, best: "FtreReport"):
        super().__init__(
            f"no calibrated distance pair meets the error budget {budget:g}; "
            f"best achievable eps_total = {best.eps_total:.3e} at (d1, d2) = ({best.d1}, {best.d2})"
        )
        self.budget = budget
        self.best = best


class MixedDistances(ValueError):
    pass


class Scheme(enum.Enum):
    SPBC = "spbc"
    DIRECT = "direct"

    @classmethod
    def parse(cls, name: str) -> "Scheme":
        key = name.strip().lower().replace("_", "-")
        aliases = {"spbc": cls.SPBC, "direct": cls.DIRECT, "clifford+t": cls.DIRECT,
                   "direct-clifford-t": cls.DIRECT}
        if key not in aliases:
            raise ValueError(f"unknown scheme {name!r}; choose 'spbc' or 'direct'")
        return aliases[key]


# -- error terms ------------------------------------------------------------


def logical_error(active_volume: float, d: int, phys: PhysicalErrorModel) -> float:
    return active_volume * phys.p_logical(d)


def dist_error(total_t: float, p_t: float) -> float:
    if total_t < 0:
        raise ValueError("T count must be nonnegative")
    return total_t * p_t


def storage_error(plan: MinStoragePlan, d2: int, phys: PhysicalErrorModel) -> float:
    return plan.storage_volume * phys.p_logical(d2)


def fit_error_law(points: Iterable[tuple[int, float]]) -> tuple[PhysicalErrorModel, list[float]]:
    """Least-squares fit of ``log P = log A - ((d+1)/2) log Lambda``.

    ``points`` are ``(d, P)`` pairs. Returns the model and the per-point
    ratio ``P / P_fit``.
    """
    d, p = zip(*points)
    x = (np.asarray(d, dtype=float) + 1) / 2
    y = np.log(np.asarray(p, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    model = PhysicalErrorModel(float(np.exp(intercept)), float(np.exp(-slope)))
    ratios = [pi / model.p_logical(di) for di, pi in zip(d, p)]
    return model, ratios


# -- reports and aggregation ------------------------------------------------


@dataclass(frozen=True)
class FtreReport:
    d1: int
    d2: int
    num_factories: int
    p_t: float
    n_total: int
    tau_total: float
    eps_logical: float
    eps_dist: float
    eps_storage: float
    application: str = ""
    algorithm: str = ""
    scheme: str = ""
    active_volume: float | None = None
    breakdown: tuple["SubcircuitResult", ...] = field(default=(), repr=False, compare=False)

    @property
    def eps_total(self) -> float:
        return self.eps_logical + self.eps_dist + self.eps_storage

    @property
    def time_metric(self) -> float:
        return self.tau_total * self.d2

    @property
    def footprint_metric(self) -> float:
        return self.n_total * self.tau_total * self.d2**3


@dataclass(frozen=True)
class SubcircuitResult:
    """FTRE of one execution of a sub-circuit, warm-up excluded."""

    tau: float
    volume: float
    eps_logical: float
    eps_dist: float
    eps_storage: float
    tiles: int
    num_factories: int = 0
    num_lq: int = 0
    num_t: float = 0
    d1: int | None = None
    d2: int | None = None
    name: str = ""


@dataclass(frozen=True)
class AggregateTotals:
    tau_total: float
    volume_total: float
    eps_logical: float
    eps_dist: float
    eps_storage: float
    n_total: int
    num_factories: int

    @property
    def eps_total(self) -> float:
        return self.eps_logical + self.eps_dist + self.eps_storage


def aggregate(
    per_subcircuit: Sequence[tuple[SubcircuitResult, float]],
    tau_d: int = 0,
    register_qubits: int | None = None,
    p_logical: float = 0.0,
) -> AggregateTotals:
    """Combine serially executed sub-circuits into whole-algorithm totals.

    Each occurrence is preceded by one warm-up distillation cycle of ``tau_d``
    slices. Register qubits outside a sub-circuit's layout idle through its
    slices, and the whole register idles through every warm-up; that idle
    volume is charged at ``p_logical`` per tile-slice.
    """
    if not per_subcircuit:
        raise ValueError("nothing to aggregate")
    dists = {(r.d1, r.d2) for r, _ in per_subcircuit}
    if len(dists) > 1:
        raise MixedDistances(f"sub-circuits use different code distances: {sorted(dists, key=str)}")
    register = register_qubits
    if register is None:
        register = max(r.num_lq for r, _ in per_subcircuit)
    tau = volume = e_log = e_dist = e_stor = 0.0
    for r, n in per_subcircuit:
        if n < 1:
            raise ValueError("occurrence counts must be at least 1")
        idle = max(register - r.num_lq, 0) * r.tau + register * tau_d
        tau += n * (r.tau + tau_d)
        volume += n * (r.volume + idle)
        e_log += n * (r.eps_logical + idle * p_logical)
        e_dist += n * r.eps_dist
        e_stor += n * r.eps_storage
    return AggregateTotals(
        tau_total=tau,
        volume_total=volume,
        eps_logical=e_log,
        eps_dist=e_dist,
        eps_storage=e_stor,
        n_total=max(r.tiles for r, _ in per_subcircuit),
        num_factories=max(r.num_factories for r, _ in per_subcircuit),
    )


# -- algorithm specification and evaluation ---------------------------------


@dataclass(frozen=True)
class Entry:
    summary: CircuitSummary
    occurrences: float
    circuit: LogicalCircuit | None = None
    name: str = ""

    @classmethod
    def from_circuit(cls, circuit: LogicalCircuit, occurrences: float = 1, name: str = "") -> "Entry":
        return cls(compute_lre(circuit, occurrences), occurrences, circuit, name)

    @classmethod
    def from_summary(cls, summary: CircuitSummary, name: str = "") -> "Entry":
        return cls(summary, summary.occurrences, None, name)


@dataclass(frozen=True)
class AlgorithmSpec:
    entries: tuple[Entry, ...]
    scheme: Scheme = Scheme.SPBC
    layout: LayoutKind = LayoutKind.ONE_LANE_CONDENSED
    budget: float = DEFAULT_BUDGET
    application: str = ""
    algorithm: str = ""
    register_qubits: int | None = None
    num_storage: int | None = None
    warmup_per_occurrence: bool = False
    spbc: SpbcParams = SpbcParams()
    compiler: CompilerConfig = CompilerConfig()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("an algorithm needs at least one sub-circuit")
        for e in self.entries:
            if e.occurrences < 1:
                raise ValueError(f"sub-circuit {e.name!r} has occurrences < 1")
            if self.scheme is Scheme.DIRECT and e.circuit is None:
                raise ValueError(
                    f"sub-circuit {e.name!r}: the direct scheme needs an explicit circuit"
                )

    @property
    def register(self) -> int:
        if self.register_qubits is not None:
            return self.register_qubits
        return max(e.summary.num_lq for e in self.entries)


@dataclass(frozen=True)
class PreparedSubcircuit:
    """Distance-independent costs of one sub-circuit in the direct scheme."""

    entry: Entry
    result: CompilationResult
    plan: MinStoragePlan


def prepare_direct(spec: AlgorithmSpec) -> list[PreparedSubcircuit]:
    prepared = []
    for e in spec.entries:
        layout = plan_layout(e.circuit.qubit_count, spec.layout, spec.num_storage)
        result = compile_circuit(e.circuit, layout, config=spec.compiler)
        prepared.append(PreparedSubcircuit(e, result, None))
    return prepared


def _with_plans(prepared: list[PreparedSubcircuit], factory: FactoryModel) -> list[PreparedSubcircuit]:
    return [
        PreparedSubcircuit(p.entry, p.result, min_storage_schedule(p.result.profile, factory))
        for p in prepared
    ]


def score_direct(
    spec: AlgorithmSpec, prepared: list[PreparedSubcircuit], cal: Calibration, d1: int, d2: int
) -> FtreReport:
    factory, phys = cal.factory, cal.phys
    p_t = factory.p_t_at(d1, d2)
    f_tiles = factory.tiles_at(d1, d2)
    p = phys.p_logical(d2)
    parts = []
    for prep in prepared:
        res, plan = prep.result, prep.plan
        parts.append((
            SubcircuitResult(
                tau=res.num_slices,
                volume=res.active_volume,
                eps_logical=res.active_volume * p,
                eps_dist=dist_error(res.num_t, p_t),
                eps_storage=storage_error(plan, d2, phys),
                tiles=res.layout_tiles + plan.num_factories * (f_tiles + 1),
                num_factories=plan.num_factories,
                num_lq=res.num_lq,
                num_t=res.num_t,
                d1=d1,
                d2=d2,
                name=prep.entry.name,
            ),
            prep.entry.occurrences,
        ))
    totals = aggregate(parts, tau_d=factory.tau_d, register_qubits=spec.register, p_logical=p)
    return FtreReport(
        d1=d1,
        d2=d2,
        num_factories=totals.num_factories,
        p_t=p_t,
        n_total=totals.n_total,
        tau_total=totals.tau_total,
        eps_logical=totals.eps_logical,
        eps_dist=totals.eps_dist,
        eps_storage=totals.eps_storage,
        application=spec.application,
        algorithm=spec.algorithm,
        scheme=Scheme.DIRECT.value,
        active_volume=totals.volume_total,
        breakdown=tuple(r for r, _ in parts),
    )


def score_spbc(spec: AlgorithmSpec, cal: Calibration, d1: int, d2: int) -> FtreReport:
    """SPBC estimate of the whole algorithm at (d1, d2).

    With the default single warm-up this reduces to the closed-form
    single-summary estimate when there is one entry.
    """
    factory, phys, params = cal.factory, cal.phys, spec.spbc
    tau_d = factory.tau_d
    p_t = factory.p_t_at(d1, d2)
    f_tiles = factory.tiles_at(d1, d2)
    p = phys.p_logical(d2)
    total_t = sum(e.summary.total_t for e in spec.entries)
    num_factories = spbc_factories(factory, params) if total_t > 0 else 0
    warm = tau_d if num_factories else 0

    tau_logical = 0.0
    volume = 0.0
    cycles = 0
    parts = []
    for e in spec.entries:
        tau_i = spbc_slices(e.summary, params)
        n_log = spbc_tiles(e.summary.num_lq)
        tau_logical += e.occurrences * tau_i
        volume += e.occurrences * n_log * tau_i
        if spec.warmup_per_occurrence:
            cycles += e.occurrences * storage_cycles(tau_i + warm, tau_d)
        parts.append(SubcircuitResult(
            tau=tau_i, volume=n_log * tau_i, eps_logical=n_log * tau_i * p,
            eps_dist=e.summary.num_t * p_t, eps_storage=0.0,
            tiles=n_log + num_factories * (f_tiles + 1), num_factories=num_factories,
            num_lq=e.summary.num_lq, num_t=e.summary.num_t, d1=d1, d2=d2, name=e.name,
        ))
    if spec.warmup_per_occurrence:
        tau_total = tau_logical + warm * sum(e.occurrences for e in spec.entries)
    else:
        tau_total = tau_logical + warm
        cycles = storage_cycles(tau_total, tau_d)
    n_logical = max(spbc_tiles(e.summary.num_lq) for e in spec.entries)
    return FtreReport(
        d1=d1,
        d2=d2,
        num_factories=num_factories,
        p_t=p_t,
        n_total=n_logical + num_factories * (f_tiles + 1),
        tau_total=tau_total,
        eps_logical=volume * p,
        eps_dist=dist_error(total_t, p_t),
        eps_storage=num_factories * tau_d * cycles * p,
        application=spec.application,
        algorithm=spec.algorithm,
        scheme=Scheme.SPBC.value,
        active_volume=volume,
        breakdown=tuple(parts),
    )


def candidate_pairs(factory: FactoryModel) -> list[tuple[int, int]]:
    return [(d1, d2) for d1, d2 in factory.pairs if d1 in D1_GRID and d2 in D2_GRID]


def evaluate_all(
    spec: AlgorithmSpec, cal: Calibration, prepared: list[PreparedSubcircuit] | None = None
) -> list[FtreReport]:
    """Score every calibrated distance pair; compilation is done once and reused."""
    pairs = candidate_pairs(cal.factory)
    if not pairs:
        raise ValueError("calibration covers no distance pair inside the search grid")
    if spec.scheme is Scheme.SPBC:
        return [score_spbc(spec, cal, d1, d2) for d1, d2 in pairs]
    if prepared is None:
        prepared = prepare_direct(spec)
    prepared = _with_plans(prepared, cal.factory)
    return [score_direct(spec, prepared, cal, d1, d2) for d1, d2 in pairs]


def select_report(reports: Sequence[FtreReport], budget: float) -> FtreReport:
    feasible = [r for r in reports if r.eps_total <= budget]
    if not feasible:
        best = min(reports, key=lambda r: (r.eps_total, r.d2, r.d1))
        raise InfeasibleBudget(budget, best)
    return min(feasible, key=lambda r: (r.footprint_metric, r.d2, r.d1))


def optimize_distances(
    spec: AlgorithmSpec,
    cal: Calibration,
    budget: float | None = None,
    prepared: list[PreparedSubcircuit] | None = None,
) -> FtreReport:
    budget = spec.budget if budget is None else budget
    return select_report(evaluate_all(spec, cal, prepared), budget)


def round_sig(x: float, digits: int = 3) -> float:
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.{digits - 1}e}")
