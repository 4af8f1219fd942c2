"""Direct Clifford+T to lattice-surgery compilation.

Gates are placed slice by slice with a greedy list scheduler: in each slice
the dependency-ready gates are tried in ascending index order and admitted
when all of their tiles, for every slice the gate lasts, are free and a
vertex-disjoint route exists. There is no backtracking.

Per-gate cost in logical time-steps (slices):

=========  ==============================================================
H          3 slices on the data tile
S / SDG    2 slices merging with a Y state (the Y-state tile if the layout
           has one, otherwise a twist-initialised state in an adjacent
           routing tile)
T / TDG    1 ZZ merge with a stored magic state, plus an S correction
           (2 slices) for the gates chosen by the correction policy
CX         2 slices holding one routed merge path between the data tiles
X, Y, Z    1 slice on the data tile
=========  ==============================================================
"""

from __future__ import annotations

import bisect
import enum
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .circuit import CircuitSummary, GateKind, LogicalCircuit, build_dag
from .layout import Coord, Layout, TileRole

Availability = Callable[[int], "int | None"]


class CompilationError(RuntimeError):
    def __init__(self, message: str, gate_index: int | None = None):
        super().__init__(message)
        self.gate_index = gate_index


class OpKind(enum.Enum):
    MERGE_ROUTE = "merge"
    PATCH_LOCAL = "local"
    IDLE = "idle"


class CorrectionPolicy(enum.Enum):
    ALTERNATE = "alternate"
    ALWAYS = "always"
    NEVER = "never"
    RANDOM = "random"


@dataclass(frozen=True)
class GateTiming:
    h: int = 3
    s: int = 2
    t_merge: int = 1
    cx: int = 2
    pauli: int = 1


@dataclass(frozen=True)
class CompilerConfig:
    timing: GateTiming = GateTiming()
    correction: CorrectionPolicy = CorrectionPolicy.ALTERNATE
    seed: int = 0
    retry_factor: int = 10
    # once a ready gate has been blocked this many slices, the longest-waiting
    # one is the only gate admitted until it runs
    starvation_limit: int = 32

    def corrected_t(self, circuit: LogicalCircuit) -> frozenset[int]:
        """Gate indices of the T/TDG gates that need an S correction."""
        t_gates = [i for i, g in enumerate(circuit.gates) if g.kind.is_t_like]
        if self.correction is CorrectionPolicy.ALWAYS:
            return frozenset(t_gates)
        if self.correction is CorrectionPolicy.NEVER:
            return frozenset()
        if self.correction is CorrectionPolicy.RANDOM:
            rng = random.Random(self.seed)
            return frozenset(i for i in t_gates if rng.random() < 0.5)
        # every second T gate in program order, starting with the second
        return frozenset(t_gates[1::2])


@dataclass(frozen=True)
class SliceOp:
    kind: OpKind
    gate: int
    tiles: tuple[Coord, ...]
    magic_consumed: int = 0
    purpose: str = ""


@dataclass(frozen=True)
class Slice:
    index: int
    ops: tuple[SliceOp, ...]


@dataclass(frozen=True)
class CompilationResult:
    num_slices: int
    profile: tuple[int, ...]
    active_volume: int
    layout_tiles: int
    num_lq: int
    num_t: int
    slices: tuple[Slice, ...] = field(repr=False)
    spans: tuple[tuple[int, int], ...] = field(repr=False)

    def dump(self) -> str:
        lines = []
        for sl in self.slices:
            parts = []
            for op in sl.ops:
                path = "-".join(f"{r},{c}" for r, c in op.tiles)
                magic = " +magic" if op.magic_consumed else ""
                parts.append(f"g{op.gate}:{op.purpose}[{path}]{magic}")
            lines.append(f"{sl.index}: " + " ".join(parts))
        return "\n".join(lines) + ("\n" if lines else "")


def unlimited(_slice: int) -> None:
    return None


def route(
    occupied: set[Coord] | frozenset[Coord],
    src: Coord,
    dst: Coord | Iterable[Coord],
    layout: Layout,
) -> list[Coord] | None:
    """Shortest path from ``src`` to ``dst`` through free routing tiles.

    ``dst`` may be one tile or a collection of candidate targets; the nearest
    free one wins, ties going to the target reached first in the fixed
    up/right/down/left expansion order. Endpoints are included in the
    returned path, so adjacent tiles give a path of length 2.
    """
    targets = {dst} if _is_coord(dst) else set(dst)
    targets = {t for t in targets if t not in occupied and t != src}
    if not targets:
        return None
    parent: dict[Coord, Coord | None] = {src: None}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nb in layout.neighbors(cur):
            if nb in parent:
                continue
            if nb in targets:
                path = [nb, cur]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if nb not in occupied and layout.role(nb) is TileRole.ROUTING:
                parent[nb] = cur
                queue.append(nb)
    return None


def _is_coord(obj) -> bool:
    return isinstance(obj, tuple) and len(obj) == 2 and all(isinstance(x, int) for x in obj)


@dataclass
class _Phase:
    offset: int
    duration: int
    kind: OpKind
    tiles: tuple[Coord, ...]
    purpose: str
    magic: int = 0


class _Scheduler:
    def __init__(self, circuit: LogicalCircuit, layout: Layout, availability: Availability,
                 config: CompilerConfig):
        if layout.num_lq < circuit.qubit_count:
            raise CompilationError(
                f"layout holds {layout.num_lq} data qubits, circuit needs {circuit.qubit_count}"
            )
        self.circuit = circuit
        self.layout = layout
        self.availability = availability
        self.config = config
        self.timing = config.timing
        self.corrected = config.corrected_t(circuit)
        self.storage = sorted(layout.tiles(TileRole.MAGIC_STORAGE))
        self.y_tiles = sorted(layout.tiles(TileRole.Y_STATE))
        self.busy: dict[int, set[Coord]] = {}
        self.ops: dict[int, list[SliceOp]] = {}
        self.horizon = 0

    def _occupied(self, start: int, duration: int) -> set[Coord]:
        out: set[Coord] = set()
        for s in range(start, start + duration):
            out |= self.busy.get(s, set())
        return out

    def _y_protocol(self, data: Coord, start: int, duration: int, purpose: str) -> _Phase | None:
        occupied = self._occupied(start, duration)
        if data in occupied:
            return None
        if self.y_tiles:
            path = route(occupied, data, self.y_tiles, self.layout)
            if path is None:
                return None
            return _Phase(0, duration, OpKind.MERGE_ROUTE, tuple(path), purpose)
        for nb in self.layout.neighbors(data):
            if self.layout.role(nb) is TileRole.ROUTING and nb not in occupied:
                return _Phase(0, duration, OpKind.MERGE_ROUTE, (data, nb), purpose)
        return None

    def plan(self, index: int, s: int, magic_left: int | None) -> list[_Phase] | None:
        gate = self.circuit.gates[index]
        kind = gate.kind
        pos = self.layout.data_positions
        tm = self.timing
        if kind is GateKind.H or kind.is_pauli:
            duration = tm.h if kind is GateKind.H else tm.pauli
            data = pos[gate.qubits[0]]
            if data in self._occupied(s, duration):
                return None
            return [_Phase(0, duration, OpKind.PATCH_LOCAL, (data,), kind.value.lower())]
        if kind.is_s_like:
            phase = self._y_protocol(pos[gate.qubits[0]], s, tm.s, "s")
            return None if phase is None else [phase]
        if kind is GateKind.CX:
            a, b = pos[gate.qubits[0]], pos[gate.qubits[1]]
            occupied = self._occupied(s, tm.cx)
            if a in occupied or b in occupied:
                return None
            path = route(occupied, a, b, self.layout)
            if path is None:
                return None
            return [_Phase(0, tm.cx, OpKind.MERGE_ROUTE, tuple(path), "cx")]
        # T / TDG
        if magic_left is not None and magic_left < 1:
            return None
        data = pos[gate.qubits[0]]
        occupied = self._occupied(s, tm.t_merge)
        if data in occupied:
            return None
        path = route(occupied, data, self.storage, self.layout)
        if path is None:
            return None
        phases = [_Phase(0, tm.t_merge, OpKind.MERGE_ROUTE, tuple(path), "t", magic=1)]
        if index in self.corrected:
            fix = self._y_protocol(data, s + tm.t_merge, tm.s, "t-fix")
            if fix is None:
                return None
            fix.offset = tm.t_merge
            phases.append(fix)
        return phases

    def commit(self, index: int, s: int, phases: list[_Phase]) -> int:
        end = s
        for ph in phases:
            for k in range(ph.duration):
                sl = s + ph.offset + k
                self.busy.setdefault(sl, set()).update(ph.tiles)
                self.ops.setdefault(sl, []).append(
                    SliceOp(ph.kind, index, ph.tiles, ph.magic if k == 0 else 0, ph.purpose)
                )
            end = max(end, s + ph.offset + ph.duration)
        self.horizon = max(self.horizon, end)
        return end

    def run(self) -> CompilationResult:
        circuit = self.circuit
        n = len(circuit.gates)
        dag = build_dag(circuit)
        remaining = [len(p) for p in dag.predecessors]
        earliest = [0] * n
        ready_since = [0] * n
        spans: list[tuple[int, int]] = [(0, 0)] * n
        ready = [i for i in range(n) if remaining[i] == 0]
        releases: dict[int, list[int]] = {}
        done = 0
        s = 0
        while done < n:
            for g in releases.pop(s, ()):
                for succ in dag.successors[g]:
                    remaining[succ] -= 1
                    earliest[succ] = max(earliest[succ], s)
                    if remaining[succ] == 0:
                        ready_since[succ] = s
                        bisect.insort(ready, succ)
            magic_left = self.availability(s)
            admitted = []
            limit = self.config.starvation_limit
            starving = [g for g in ready if earliest[g] <= s and s - ready_since[g] >= limit]
            if starving:
                starving = [min(starving, key=lambda g: (ready_since[g], g))]
            for g in starving or ready:
                if earliest[g] > s:
                    continue
                phases = self.plan(g, s, magic_left)
                if phases is None:
                    continue
                end = self.commit(g, s, phases)
                spans[g] = (s, end)
                releases.setdefault(end, []).append(g)
                admitted.append(g)
                if magic_left is not None:
                    magic_left -= sum(ph.magic for ph in phases)
            for g in admitted:
                ready.remove(g)
            done += len(admitted)
            if not admitted and ready:
                self._check_stall(s, ready, ready_since)
            s += 1
        return self._result(spans)

    def _check_stall(self, s: int, ready: list[int], ready_since: list[int]) -> None:
        in_flight = self.horizon > s
        first = ready[0]
        magic_blocked = self.circuit.gates[first].kind.is_t_like and self.availability(s) == 0
        if not in_flight and not magic_blocked:
            raise CompilationError(
                f"gate {first} ({self.circuit.gates[first].kind.value}) cannot be routed "
                f"even on an idle layout",
                gate_index=first,
            )
        for g in ready:
            waited = s - ready_since[g]
            if waited > self.config.retry_factor * max(ready_since[g], 10):
                raise CompilationError(
                    f"gate {g} still unscheduled after waiting {waited} slices", gate_index=g
                )

    def _result(self, spans) -> CompilationResult:
        num_slices = max((end for _, end in spans), default=0)
        slices = []
        profile = []
        volume = 0
        num_lq = self.layout.num_lq
        for s in range(num_slices):
            ops = tuple(self.ops.get(s, ()))
            slices.append(Slice(s, ops))
            profile.append(sum(op.magic_consumed for op in ops))
            volume += num_lq + slice_overhead_tiles(ops, self.layout)
        return CompilationResult(
            num_slices=num_slices,
            profile=tuple(profile),
            active_volume=volume,
            layout_tiles=self.layout.tile_count,
            num_lq=num_lq,
            num_t=self.circuit.num_t,
            slices=tuple(slices),
            spans=tuple(spans),
        )


def slice_overhead_tiles(ops: Iterable[SliceOp], layout: Layout) -> int:
    """Non-data tiles busy in one slice; storage tiles are costed separately."""
    tiles = set()
    for op in ops:
        for t in op.tiles:
            if layout.role(t) not in (TileRole.DATA, TileRole.MAGIC_STORAGE):
                tiles.add(t)
    return len(tiles)


def compile_circuit(
    circuit: LogicalCircuit,
    layout: Layout,
    availability: Availability = unlimited,
    config: CompilerConfig = CompilerConfig(),
) -> CompilationResult:
    return _Scheduler(circuit, layout, availability, config).run()


def slices_per_layer(result: CompilationResult, summary: CircuitSummary) -> float:
    if summary.depth < 1:
        raise ValueError("circuit depth must be at least 1")
    return result.num_slices / summary.depth


def slices_per_t(result: CompilationResult, summary: CircuitSummary) -> float:
    if summary.num_t < 1:
        raise ValueError("circuit has no T gates")
    return result.num_slices / summary.num_t
