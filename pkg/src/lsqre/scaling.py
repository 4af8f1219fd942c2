"""Seeded random Clifford+T workloads and power-law fits of compiled cost."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .circuit import Gate, GateKind, LogicalCircuit, compute_lre
from .compiler import CompilerConfig, compile_circuit, slices_per_layer, slices_per_t
from .layout import LayoutKind, plan_layout

# share of the gate count (CX counted twice) per kind; T share mirrors the
# Trotter workloads
DEFAULT_MIX = {"CX": 0.40, "T": 0.39, "H": 0.10, "S": 0.11}


def random_circuit(
    num_qubits: int,
    num_layers: int,
    density: float,
    seed: int,
    mix: dict[str, float] | None = None,
) -> LogicalCircuit:
    """Layered random circuit whose ASAP depth equals ``num_layers``.

    Each layer keeps about ``density * num_qubits`` qubits busy. Every gate
    touches at least one qubit that was busy in the previous layer, so no gate
    can slide into an earlier layer and the measured density matches the
    target. CX gates pair a previously busy qubit with an idle one, which
    rotates the busy set through the register.
    """
    if not 0 < density <= 1:
        raise ValueError("density must lie in (0, 1]")
    mix = dict(DEFAULT_MIX if mix is None else mix)
    total = sum(mix.values())
    w_cx = mix.pop("CX", 0.0) / total
    singles = [(GateKind[k.upper()], w / total) for k, w in mix.items()]
    single_total = sum(w for _, w in singles)
    rng = random.Random(seed)

    def pick_single():
        r = rng.random() * single_total
        for kind, w in singles:
            r -= w
            if r <= 0:
                return kind
        return singles[-1][0]

    gates: list[Gate] = []
    prev: list[int] = []
    for layer in range(num_layers):
        expected = density * num_qubits
        busy = max(1, min(num_qubits, int(expected) + (rng.random() < expected - int(expected))))
        if layer == 0:
            prev = rng.sample(range(num_qubits), busy)
            rng.shuffle(prev)
            current = []
            i = 0
            while i < len(prev):
                if i + 1 < len(prev) and rng.random() < w_cx / (2 - w_cx):
                    gates.append(Gate(GateKind.CX, (prev[i], prev[i + 1])))
                    current += prev[i:i + 2]
                    i += 2
                else:
                    gates.append(Gate(pick_single(), (prev[i],)))
                    current.append(prev[i])
                    i += 1
            prev = current
            continue
        anchors = prev[:]
        rng.shuffle(anchors)
        prev_set = set(prev)
        idle = [q for q in range(num_qubits) if q not in prev_set]
        rng.shuffle(idle)
        n_cx = min(int(round(w_cx * busy / 2)), len(idle), len(anchors))
        n_single = min(busy - 2 * n_cx, len(anchors) - n_cx)
        layer_gates = []
        for k in range(n_cx):
            pair = (anchors[k], idle[k])
            layer_gates.append(Gate(GateKind.CX, pair if rng.random() < 0.5 else pair[::-1]))
        for q in anchors[n_cx:n_cx + n_single]:
            layer_gates.append(Gate(pick_single(), (q,)))
        rng.shuffle(layer_gates)
        gates.extend(layer_gates)
        prev = [q for g in layer_gates for q in g.qubits]
    return LogicalCircuit(num_qubits, tuple(gates))


@dataclass(frozen=True)
class ScalingPoint:
    num_lq: int
    num_gates: int
    num_t: int
    depth: int
    density: float
    t_fraction: float
    num_slices: int
    slices_per_layer: float
    slices_per_t: float
    num_factories: int | None = None


@dataclass(frozen=True)
class PowerLaw:
    exponent: float
    prefactor: float
    r_squared: float

    def __call__(self, x):
        return self.prefactor * np.asarray(x, dtype=float) ** self.exponent


def fit_power_law(x, y) -> PowerLaw:
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    if lx.size < 2:
        raise ValueError("a power-law fit needs at least two points")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return PowerLaw(float(slope), float(np.exp(intercept)), r2)


def run_scaling(
    sizes,
    density: float = 0.4,
    seed: int = 0,
    num_layers: int = 20,
    kind: LayoutKind = LayoutKind.ONE_LANE_CONDENSED,
    config: CompilerConfig = CompilerConfig(),
    tau_d: int | None = None,
    mix: dict[str, float] | None = None,
) -> list[ScalingPoint]:
    from .magic import min_storage_schedule

    points = []
    for k, n in enumerate(sizes):
        circuit = random_circuit(n, num_layers, density, seed + k, mix)
        summary = compute_lre(circuit)
        result = compile_circuit(circuit, plan_layout(n, kind), config=config)
        factories = None
        if tau_d is not None:
            factories = min_storage_schedule(result.profile, tau_d).num_factories
        points.append(ScalingPoint(
            num_lq=n,
            num_gates=summary.num_gates,
            num_t=summary.num_t,
            depth=summary.depth,
            density=summary.density,
            t_fraction=summary.t_fraction,
            num_slices=result.num_slices,
            slices_per_layer=slices_per_layer(result, summary),
            slices_per_t=slices_per_t(result, summary) if summary.num_t else float("nan"),
            num_factories=factories,
        ))
    return points
