"""Clifford+T logical circuits and their logical-layer resource estimates (LRE)."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable


class CircuitError(ValueError):
    """Raised for malformed gate-list input or invalid circuits."""


class GateKind(enum.Enum):
    H = "H"
    S = "S"
    SDG = "SDG"
    T = "T"
    TDG = "TDG"
    X = "X"
    Y = "Y"
    Z = "Z"
    CX = "CX"

    @property
    def arity(self) -> int:
        return 2 if self is GateKind.CX else 1

    @property
    def is_t_like(self) -> bool:
        return self in (GateKind.T, GateKind.TDG)

    @property
    def is_s_like(self) -> bool:
        return self in (GateKind.S, GateKind.SDG)

    @property
    def is_pauli(self) -> bool:
        return self in (GateKind.X, GateKind.Y, GateKind.Z)


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self):
        if len(self.qubits) != self.kind.arity:
            raise CircuitError(
                f"{self.kind.value} takes {self.kind.arity} qubit(s), got {len(self.qubits)}"
            )
        if self.kind is GateKind.CX and self.qubits[0] == self.qubits[1]:
            raise CircuitError(f"CX operands must differ, got {self.qubits[0]} twice")

    @property
    def weight(self) -> int:
        """Contribution to the gate count; a CNOT counts twice."""
        return len(self.qubits)


@dataclass(frozen=True)
class LogicalCircuit:
    qubit_count: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.qubit_count < 1:
            raise CircuitError(f"qubit_count must be positive, got {self.qubit_count}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for i, gate in enumerate(self.gates):
            for q in gate.qubits:
                if not 0 <= q < self.qubit_count:
                    raise CircuitError(
                        f"gate {i} ({gate.kind.value}) uses qubit {q}, "
                        f"outside register of {self.qubit_count}"
                    )

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def num_t(self) -> int:
        return sum(1 for g in self.gates if g.kind.is_t_like)

    @property
    def active_qubits(self) -> frozenset[int]:
        return frozenset(q for g in self.gates for q in g.qubits)


@dataclass(frozen=True)
class DependencyDag:
    """Same-qubit precedence graph, transitively reduced per qubit line."""

    num_nodes: int
    edges: tuple[tuple[int, int], ...]
    predecessors: tuple[tuple[int, ...], ...] = field(repr=False)
    successors: tuple[tuple[int, ...], ...] = field(repr=False)

    def topological_order(self) -> list[int]:
        # list order is already topological because every edge points forward
        return list(range(self.num_nodes))


@dataclass(frozen=True)
class CircuitSummary:
    """One LRE row. Counts are per occurrence; ``occurrences`` repeats the unit.

    Counts may be floats when the summary is taken from published tables
    rather than computed from an explicit circuit.
    """

    occurrences: float
    num_lq: int
    num_gates: float
    num_t: float
    depth: float
    density: float
    t_fraction: float

    @classmethod
    def from_counts(cls, num_lq, num_gates, num_t, depth, occurrences=1) -> "CircuitSummary":
        if num_gates == 0:
            density, t_fraction = 0.0, 0.0
        else:
            density, t_fraction = derive_metrics(num_gates, num_lq, depth, num_t)
        return cls(occurrences, num_lq, num_gates, num_t, depth, density, t_fraction)

    @property
    def total_gates(self) -> float:
        return self.num_gates * self.occurrences

    @property
    def total_t(self) -> float:
        return self.num_t * self.occurrences

    @property
    def total_depth(self) -> float:
        return self.depth * self.occurrences


_TOKENS = {kind.value: kind for kind in GateKind}


def parse_circuit(text: str) -> LogicalCircuit:
    """Parse the plain gate-list format.

    The first non-comment line is ``qubits <N>``; each following line holds one
    gate, e.g. ``H 0`` or ``CX 0 1``. ``#`` starts a comment; tokens are
    case-insensitive.
    """
    qubit_count = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0].upper()
        if qubit_count is None:
            if head != "QUBITS" or len(parts) != 2:
                raise CircuitError(f"line {lineno}: expected 'qubits <N>' header, got {raw!r}")
            qubit_count = _parse_int(parts[1], lineno)
            if qubit_count < 1:
                raise CircuitError(f"line {lineno}: qubit count must be positive")
            continue
        kind = _TOKENS.get(head)
        if kind is None:
            raise CircuitError(f"line {lineno}: unknown gate {parts[0]!r}")
        qubits = tuple(_parse_int(tok, lineno) for tok in parts[1:])
        if len(qubits) != kind.arity:
            raise CircuitError(
                f"line {lineno}: {kind.value} takes {kind.arity} operand(s), got {len(qubits)}"
            )
        for q in qubits:
            if not 0 <= q < qubit_count:
                raise CircuitError(
                    f"line {lineno}: qubit {q} out of range for {qubit_count} qubits"
                )
        if kind is GateKind.CX and qubits[0] == qubits[1]:
            raise CircuitError(f"line {lineno}: CX operands equal ({qubits[0]})")
        gates.append(Gate(kind, qubits))
    if qubit_count is None:
        raise CircuitError("missing 'qubits <N>' header")
    return LogicalCircuit(qubit_count, tuple(gates))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise CircuitError(f"line {lineno}: expected integer, got {token!r}") from None


def unparse_circuit(circuit: LogicalCircuit) -> str:
    lines = [f"qubits {circuit.qubit_count}"]
    lines.extend(
        " ".join([g.kind.value, *(str(q) for q in g.qubits)]) for g in circuit.gates
    )
    return "\n".join(lines) + "\n"


def build_dag(circuit: LogicalCircuit) -> DependencyDag:
    n = len(circuit.gates)
    last_on_qubit: dict[int, int] = {}
    preds: list[list[int]] = [[] for _ in range(n)]
    succs: list[list[int]] = [[] for _ in range(n)]
    edges = []
    for j, gate in enumerate(circuit.gates):
        for q in gate.qubits:
            i = last_on_qubit.get(q)
            # a CX whose both operands were last touched by the same gate gives one edge
            if i is not None and i not in preds[j]:
                preds[j].append(i)
                succs[i].append(j)
                edges.append((i, j))
            last_on_qubit[q] = j
    return DependencyDag(
        num_nodes=n,
        edges=tuple(sorted(edges)),
        predecessors=tuple(tuple(sorted(p)) for p in preds),
        successors=tuple(tuple(sorted(s)) for s in succs),
    )


def asap_layers(circuit: LogicalCircuit) -> list[int]:
    """Layer index of each gate under as-soon-as-possible layering."""
    frontier: dict[int, int] = {}
    layers = []
    for gate in circuit.gates:
        layer = max((frontier.get(q, 0) for q in gate.qubits), default=0)
        layers.append(layer)
        for q in gate.qubits:
            frontier[q] = layer + 1
    return layers


def derive_metrics(num_gates, num_lq, depth, num_t) -> tuple[float, float]:
    """Return (circuit density, T fraction)."""
    if num_lq <= 0 or depth <= 0:
        raise ZeroDivisionError("density needs positive qubit count and depth")
    if num_gates <= 0:
        raise ZeroDivisionError("T fraction needs a positive gate count")
    return num_gates / (num_lq * depth), num_t / num_gates


def compute_lre(circuit: LogicalCircuit, occurrences=1) -> CircuitSummary:
    num_gates = sum(g.weight for g in circuit.gates)
    layers = asap_layers(circuit)
    depth = max(layers) + 1 if layers else 0
    return CircuitSummary.from_counts(
        num_lq=circuit.qubit_count,
        num_gates=num_gates,
        num_t=circuit.num_t,
        depth=depth,
        occurrences=occurrences,
    )


def combine_summaries(summaries: Iterable[CircuitSummary]) -> CircuitSummary:
    """Whole-algorithm LRE: occurrence-weighted sums, register = widest sub-circuit.

    Depth is summed because sub-circuits execute serially.
    """
    summaries = list(summaries)
    if not summaries:
        raise CircuitError("no sub-circuits to combine")
    num_lq = max(s.num_lq for s in summaries)
    gates = sum(s.total_gates for s in summaries)
    t = sum(s.total_t for s in summaries)
    depth = sum(s.total_depth for s in summaries)
    return CircuitSummary.from_counts(num_lq, gates, t, depth, occurrences=1)
