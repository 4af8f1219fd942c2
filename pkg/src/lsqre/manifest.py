"""Job manifests: one YAML document per algorithm run.

Example::

    application: TFIM (square)
    algorithm: Trotter
    scheme: spbc                 # or: direct
    layout: 1-lane-condensed     # direct scheme only
    budget: 0.01
    subcircuits:
      - name: trotter-step
        occurrences: 5.37e7
        summary:                 # LRE totals over all occurrences
          num_lq: 100
          num_gates: 7.84e12
          num_t: 3.08e12
          depth: 1.70e11
      - name: prep
        occurrences: 1
        circuit: circuits/prep.txt   # gate-list file, relative to the manifest

Optional keys: ``calibration`` (path), ``register_qubits``, ``num_storage``,
``warmup_per_occurrence``, ``correction`` (alternate/always/never/random),
``seed`` and ``output`` (``csv``, ``table``). Summary entries may also carry
``density`` and ``t_fraction``, which are then reported verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .circuit import CircuitSummary, LogicalCircuit, compute_lre, parse_circuit
from .compiler import CompilerConfig, CorrectionPolicy
from .estimate import DEFAULT_BUDGET, AlgorithmSpec, Entry, Scheme
from .layout import LayoutKind


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class SubcircuitEntry:
    name: str
    occurrences: float
    circuit_path: Path | None = None
    summary: CircuitSummary | None = None


@dataclass(frozen=True)
class JobManifest:
    application: str
    algorithm: str
    scheme: Scheme
    layout: LayoutKind
    entries: tuple[SubcircuitEntry, ...]
    budget: float = DEFAULT_BUDGET
    calibration: Path | None = None
    register_qubits: int | None = None
    num_storage: int | None = None
    warmup_per_occurrence: bool = False
    correction: CorrectionPolicy = CorrectionPolicy.ALTERNATE
    seed: int = 0
    outputs: dict[str, Path] = field(default_factory=dict)
    source: Path | None = None

    def load_circuit(self, entry: SubcircuitEntry) -> LogicalCircuit:
        try:
            text = entry.circuit_path.read_text()
        except OSError as exc:
            raise ManifestError(f"cannot read circuit {entry.circuit_path}: {exc}") from exc
        try:
            return parse_circuit(text)
        except ValueError as exc:
            raise ManifestError(f"{entry.circuit_path}: {exc}") from exc

    def summaries(self) -> list[tuple[SubcircuitEntry, CircuitSummary]]:
        out = []
        for e in self.entries:
            if e.summary is not None:
                out.append((e, e.summary))
            else:
                out.append((e, compute_lre(self.load_circuit(e), e.occurrences)))
        return out

    def to_spec(self, scheme: Scheme | None = None, layout: LayoutKind | None = None,
                budget: float | None = None) -> AlgorithmSpec:
        scheme = scheme or self.scheme
        entries = []
        for e in self.entries:
            if e.circuit_path is not None:
                circuit = self.load_circuit(e)
                entries.append(Entry.from_circuit(circuit, e.occurrences, e.name))
            elif scheme is Scheme.DIRECT:
                raise ManifestError(
                    f"sub-circuit {e.name!r}: the direct scheme needs a circuit file, "
                    "not an inline summary"
                )
            else:
                entries.append(Entry.from_summary(e.summary, e.name))
        return AlgorithmSpec(
            entries=tuple(entries),
            scheme=scheme,
            layout=layout or self.layout,
            budget=self.budget if budget is None else budget,
            application=self.application,
            algorithm=self.algorithm,
            register_qubits=self.register_qubits,
            num_storage=self.num_storage,
            warmup_per_occurrence=self.warmup_per_occurrence,
            compiler=CompilerConfig(correction=self.correction, seed=self.seed),
        )


def load_manifest(path: str | Path) -> JobManifest:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ManifestError(f"{path}: invalid YAML: {exc}") from exc
    return parse_manifest(doc, base=path.parent, source=path)


def parse_manifest(doc, base: Path = Path("."), source: Path | None = None) -> JobManifest:
    where = str(source) if source else "<manifest>"
    if not isinstance(doc, dict):
        raise ManifestError(f"{where}: expected a mapping at top level")
    try:
        scheme = Scheme.parse(str(doc.get("scheme", "spbc")))
        layout = LayoutKind.parse(str(doc.get("layout", LayoutKind.ONE_LANE_CONDENSED.value)))
        correction = CorrectionPolicy(str(doc.get("correction", "alternate")).lower())
    except ValueError as exc:
        raise ManifestError(f"{where}: {exc}") from exc

    raw_entries = doc.get("subcircuits") or []
    if not isinstance(raw_entries, list) or not raw_entries:
        raise ManifestError(f"{where}: 'subcircuits' must be a nonempty list")
    entries = []
    for k, raw in enumerate(raw_entries):
        entries.append(_parse_entry(raw, k, base, where))

    calibration = doc.get("calibration")
    outputs = {key: base / val for key, val in (doc.get("output") or {}).items()}
    return JobManifest(
        application=str(doc.get("application", "")),
        algorithm=str(doc.get("algorithm", "")),
        scheme=scheme,
        layout=layout,
        entries=tuple(entries),
        budget=float(doc.get("budget", DEFAULT_BUDGET)),
        calibration=base / calibration if calibration else None,
        register_qubits=doc.get("register_qubits"),
        num_storage=doc.get("num_storage"),
        warmup_per_occurrence=bool(doc.get("warmup_per_occurrence", False)),
        correction=correction,
        seed=int(doc.get("seed", 0)),
        outputs=outputs,
        source=source,
    )


def _parse_entry(raw, k: int, base: Path, where: str) -> SubcircuitEntry:
    if not isinstance(raw, dict):
        raise ManifestError(f"{where}: sub-circuit {k} must be a mapping")
    name = str(raw.get("name", f"subcircuit-{k}"))
    occurrences = float(raw.get("occurrences", 1))
    if occurrences < 1:
        raise ManifestError(f"{where}: sub-circuit {name!r} needs occurrences >= 1")
    has_circuit = "circuit" in raw
    has_summary = "summary" in raw
    if has_circuit == has_summary:
        raise ManifestError(
            f"{where}: sub-circuit {name!r} needs exactly one of 'circuit' or 'summary'"
        )
    if has_circuit:
        return SubcircuitEntry(name, occurrences, circuit_path=base / str(raw["circuit"]))
    s = raw["summary"]
    try:
        num_lq = int(s["num_lq"])
        total_gates = float(s["num_gates"])
        total_t = float(s["num_t"])
        total_depth = float(s["depth"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ManifestError(f"{where}: sub-circuit {name!r} summary: {exc}") from exc
    summary = CircuitSummary.from_counts(
        num_lq,
        total_gates / occurrences,
        total_t / occurrences,
        total_depth / occurrences,
        occurrences=occurrences,
    )
    if "density" in s or "t_fraction" in s:
        summary = CircuitSummary(
            summary.occurrences, summary.num_lq, summary.num_gates, summary.num_t,
            summary.depth, float(s.get("density", summary.density)),
            float(s.get("t_fraction", summary.t_fraction)),
        )
    return SubcircuitEntry(name, occurrences, summary=summary)
