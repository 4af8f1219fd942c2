"""Shared test oracles: golden tables and an independent schedule validator."""

from __future__ import annotations

import csv
from collections import defaultdict
from pathlib import Path

from lsqre.circuit import CircuitSummary, GateKind
from lsqre.estimate import AlgorithmSpec, Entry, Scheme
from lsqre.layout import TileRole

DATA = Path(__file__).parent / "data"

NUMERIC = {
    "occurrences", "num_lq", "num_gates", "num_t", "depth", "density", "t_fraction",
    "d1", "d2", "N", "P_T", "n_total", "tau_total", "time_metric", "footprint_metric",
    "eps_logical", "eps_dist", "eps_storage", "eps_total",
}


def load_table(name: str) -> list[dict]:
    rows = []
    with open(DATA / name, newline="") as fh:
        for raw in csv.DictReader(fh):
            rows.append({k: (float(v) if k in NUMERIC else v) for k, v in raw.items()})
    return rows


def table1() -> dict[tuple[str, str], dict]:
    return {(r["application"], r["algorithm"]): r for r in load_table("table1_lre.csv")}


def summary_from_row(row: dict) -> CircuitSummary:
    """Per-occurrence summary from a Table-I row of totals."""
    n = row["occurrences"]
    return CircuitSummary.from_counts(
        int(row["num_lq"]), row["num_gates"] / n, row["num_t"] / n, row["depth"] / n,
        occurrences=n,
    )


def spbc_spec(row: dict, budget: float = 0.01) -> AlgorithmSpec:
    return AlgorithmSpec(
        entries=(Entry.from_summary(summary_from_row(row), "step"),),
        scheme=Scheme.SPBC,
        budget=budget,
        application=row["application"],
        algorithm=row["algorithm"],
    )


def rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


# -- replay validator -------------------------------------------------------

DURATION = {
    GateKind.H: 3, GateKind.S: 2, GateKind.SDG: 2, GateKind.CX: 2,
    GateKind.X: 1, GateKind.Y: 1, GateKind.Z: 1,
}
ENDPOINT_ROLES = {TileRole.DATA, TileRole.MAGIC_STORAGE, TileRole.Y_STATE}


def replay(circuit, layout, result, availability=None) -> list[str]:
    """Re-check a slice stream from scratch; returns the list of violations.

    Uses only the circuit, the layout geometry and the emitted slices, never
    the scheduler's internal bookkeeping.
    """
    errors = []
    seen_slices: dict[int, list[int]] = defaultdict(list)
    magic_by_gate: dict[int, int] = defaultdict(int)
    pos = layout.data_positions

    for sl in result.slices:
        used: set = set()
        consumed = 0
        for op in sl.ops:
            seen_slices[op.gate].append(sl.index)
            clash = used.intersection(op.tiles)
            if clash:
                errors.append(f"slice {sl.index}: tiles {sorted(clash)} used twice")
            used.update(op.tiles)
            if len(set(op.tiles)) != len(op.tiles):
                errors.append(f"slice {sl.index}: gate {op.gate} route revisits a tile")
            for a, b in zip(op.tiles, op.tiles[1:]):
                if abs(a[0] - b[0]) + abs(a[1] - b[1]) != 1:
                    errors.append(f"slice {sl.index}: gate {op.gate} route jumps {a}->{b}")
            if len(op.tiles) >= 2:
                for t in op.tiles[1:-1]:
                    if layout.role(t) is not TileRole.ROUTING:
                        errors.append(f"slice {sl.index}: gate {op.gate} routes through {t}")
                if layout.role(op.tiles[0]) not in ENDPOINT_ROLES:
                    errors.append(f"slice {sl.index}: gate {op.gate} starts on a non-endpoint")
            gate = circuit.gates[op.gate]
            mine = {pos[q] for q in gate.qubits}
            if not mine <= set(op.tiles):
                errors.append(f"slice {sl.index}: gate {op.gate} op misses its data tiles")
            other_data = {t for t in op.tiles if layout.role(t) is TileRole.DATA} - mine
            if other_data:
                errors.append(f"slice {sl.index}: gate {op.gate} touches foreign data {other_data}")
            if op.magic_consumed:
                if not gate.kind.is_t_like:
                    errors.append(f"slice {sl.index}: non-T gate {op.gate} consumes magic")
                if layout.role(op.tiles[-1]) is not TileRole.MAGIC_STORAGE:
                    errors.append(f"slice {sl.index}: gate {op.gate} magic not from storage")
                magic_by_gate[op.gate] += op.magic_consumed
                consumed += op.magic_consumed
        if availability is not None:
            cap = availability(sl.index)
            if cap is not None and consumed > cap:
                errors.append(f"slice {sl.index}: consumed {consumed} > available {cap}")
        if result.profile[sl.index] != consumed:
            errors.append(f"slice {sl.index}: profile disagrees with ops")

    interval = {}
    for g, gate in enumerate(circuit.gates):
        s = sorted(set(seen_slices.get(g, ())))
        if not s:
            errors.append(f"gate {g} never scheduled")
            continue
        if s != list(range(s[0], s[-1] + 1)):
            errors.append(f"gate {g} scheduled in non-contiguous slices {s}")
        interval[g] = (s[0], s[-1] + 1)
        length = s[-1] + 1 - s[0]
        if gate.kind.is_t_like:
            if magic_by_gate[g] != 1:
                errors.append(f"T gate {g} consumed {magic_by_gate[g]} states")
            if length not in (1, 3):
                errors.append(f"T gate {g} lasts {length} slices")
        elif length != DURATION[gate.kind]:
            errors.append(f"gate {g} ({gate.kind.value}) lasts {length} slices")

    # every pair of gates sharing a qubit must run in list order, without overlap
    last_on: dict[int, int] = {}
    for g, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            if q in last_on and g in interval and last_on[q] in interval:
                p = last_on[q]
                if interval[g][0] < interval[p][1]:
                    errors.append(f"gate {g} starts before predecessor {p} finishes")
            last_on[q] = g

    if sum(result.profile) != circuit.num_t:
        errors.append("profile total differs from the T count")
    if len(result.slices) != result.num_slices or len(result.profile) != result.num_slices:
        errors.append("slice stream length differs from num_slices")
    if result.active_volume < result.num_slices * result.num_lq:
        errors.append("active volume below the idle floor")
    return errors
