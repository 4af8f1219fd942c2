"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 infeasible error budget,
3 compilation failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .circuit import CircuitError, combine_summaries, parse_circuit
from .compiler import CompilationError, CompilerConfig, CorrectionPolicy, compile_circuit
from .estimate import InfeasibleBudget, Scheme, optimize_distances
from .layout import LayoutKind, plan_layout, validate_layout
from .manifest import ManifestError, load_manifest
from .models import CalibrationError, load_calibration
from .report import FTRE_COLUMNS, LRE_COLUMNS, ftre_row, lre_row, sci, to_csv, to_table
from .scaling import fit_power_law, run_scaling

log = logging.getLogger("lsqre")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_COMPILE = 3


class UsageError(Exception):
    pass


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _calibration(args, manifest=None):
    path = args.calibration
    if path is None and manifest is not None:
        path = manifest.calibration
    return load_calibration(path)


def _estimate(path: str, args):
    manifest = load_manifest(path)
    cal = _calibration(args, manifest)
    spec = manifest.to_spec(
        scheme=Scheme.parse(args.scheme) if args.scheme else None,
        layout=LayoutKind.parse(args.layout) if args.layout else None,
        budget=args.budget,
    )
    return manifest, optimize_distances(spec, cal)


def cmd_lre(args) -> int:
    rows = []
    for path in args.manifest:
        manifest = load_manifest(path)
        pairs = manifest.summaries()
        for entry, summary in pairs:
            rows.append(lre_row(entry.name, summary))
        label = " ".join(x for x in (manifest.application, manifest.algorithm) if x) or "total"
        rows.append(lre_row(f"{label} (total)", combine_summaries(s for _, s in pairs)))
    text = to_csv(rows, LRE_COLUMNS) if args.format == "csv" else to_table(rows, LRE_COLUMNS)
    _emit(text, args.out)
    return EXIT_OK


def cmd_estimate(args) -> int:
    rows = []
    breakdown = []
    for path in args.manifest:
        manifest, report = _estimate(path, args)
        rows.append(ftre_row(report))
        if args.breakdown:
            for part in report.breakdown:
                breakdown.append(
                    f"{manifest.application} {manifest.algorithm} [{part.name}]: "
                    f"tau={sci(part.tau)} V={sci(part.volume)} tiles={part.tiles} "
                    f"N={part.num_factories} eps_logical={sci(part.eps_logical)} "
                    f"eps_dist={sci(part.eps_dist)} eps_storage={sci(part.eps_storage)}"
                    + (f" slices_per_t={part.tau / part.num_t:.4g}" if part.num_t else "")
                )
    text = to_csv(rows, FTRE_COLUMNS) if args.format == "csv" else to_table(rows, FTRE_COLUMNS)
    out = args.out
    if out is None and len(args.manifest) == 1:
        out = load_manifest(args.manifest[0]).outputs.get(args.format)
    _emit(text, out)
    for line in breakdown:
        sys.stderr.write(line + "\n")
    return EXIT_OK


def compare_reports(a, b) -> list[dict[str, str]]:
    label_a = " ".join(x for x in (a.application, a.algorithm, a.scheme) if x) or "a"
    label_b = " ".join(x for x in (b.application, b.algorithm, b.scheme) if x) or "b"
    rows = []
    for metric in ("time_metric", "footprint_metric"):
        va, vb = getattr(a, metric), getattr(b, metric)
        ratio = va / vb if vb else float("inf")
        if va == vb:
            winner = "tie"
        else:
            winner = "a" if va < vb else "b"
        rows.append({
            "metric": metric,
            "a": label_a,
            "value_a": sci(va),
            "b": label_b,
            "value_b": sci(vb),
            "ratio_a_over_b": f"{ratio:.4f}",
            "winner": winner,
        })
    return rows


def cmd_compare(args) -> int:
    if len(args.manifest) != 2:
        raise UsageError("compare needs exactly two --manifest arguments")
    _, a = _estimate(args.manifest[0], args)
    _, b = _estimate(args.manifest[1], args)
    rows = compare_reports(a, b)
    columns = list(rows[0])
    text = to_csv(rows, columns) if args.format == "csv" else to_table(rows, columns)
    _emit(text, args.out)
    return EXIT_OK


def cmd_scaling(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    if len(sizes) < 2:
        raise UsageError("scaling needs at least two sizes")
    kind = LayoutKind.parse(args.layout or LayoutKind.ONE_LANE_CONDENSED.value)
    cal = load_calibration(args.calibration)
    points = run_scaling(
        sizes,
        density=args.density,
        seed=args.seed,
        num_layers=args.layers,
        kind=kind,
        tau_d=cal.factory.tau_d,
    )
    rows = [
        {
            "num_lq": str(p.num_lq),
            "num_gates": str(p.num_gates),
            "num_t": str(p.num_t),
            "depth": str(p.depth),
            "density": f"{p.density:.4f}",
            "t_fraction": f"{p.t_fraction:.4f}",
            "num_slices": str(p.num_slices),
            "slices_per_layer": f"{p.slices_per_layer:.6g}",
            "slices_per_t": f"{p.slices_per_t:.6g}",
            "num_factories": str(p.num_factories),
        }
        for p in points
    ]
    _emit(to_csv(rows, list(rows[0])), args.out)
    x = [p.num_lq for p in points]
    for name, y in (
        ("slices_per_layer", [p.slices_per_layer for p in points]),
        ("slices_per_t", [p.slices_per_t for p in points]),
        ("num_factories", [max(p.num_factories, 1) for p in points]),
    ):
        fit = fit_power_law(x, y)
        sys.stderr.write(
            f"{name}: exponent={fit.exponent:.4f} prefactor={fit.prefactor:.4g} "
            f"R2={fit.r_squared:.4f}\n"
        )
    return EXIT_OK


def cmd_dump_layout(args) -> int:
    kind = LayoutKind.parse(args.layout or LayoutKind.ONE_LANE_CONDENSED.value)
    layout = plan_layout(args.num_lq, kind, args.storage)
    problems = validate_layout(layout)
    text = layout.render() + "\n"
    text += f"# {kind.value}: {layout.tile_count} tiles, {layout.num_lq} data qubits\n"
    for p in problems:
        text += f"# violation: {p}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_dump_slices(args) -> int:
    try:
        circuit = parse_circuit(Path(args.circuit).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read circuit {args.circuit}: {exc}") from exc
    kind = LayoutKind.parse(args.layout or LayoutKind.ONE_LANE_CONDENSED.value)
    layout = plan_layout(circuit.qubit_count, kind, args.storage)
    config = CompilerConfig(correction=CorrectionPolicy(args.correction), seed=args.seed)
    result = compile_circuit(circuit, layout, config=config)
    text = result.dump()
    text += (
        f"# slices={result.num_slices} active_volume={result.active_volume} "
        f"magic={sum(result.profile)} layout_tiles={result.layout_tiles}\n"
    )
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsqre",
        description="Lattice-surgery resource estimates for SPBC and direct Clifford+T compilation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, manifests=True):
        if manifests:
            p.add_argument("--manifest", action="append", required=True,
                           help="job manifest (YAML); repeat for several runs")
        p.add_argument("--calibration", type=Path, default=None,
                       help="calibration file (default: $LSQRE_CALIBRATION or packaged)")
        p.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
        p.add_argument("--format", choices=("csv", "table"), default="csv")

    p = sub.add_parser("lre", help="logical-layer resource estimates")
    common(p)
    p.set_defaults(func=cmd_lre)

    for name, func, helptext in (
        ("estimate", cmd_estimate, "fault-tolerance-layer resource estimates"),
        ("compare", cmd_compare, "compare two manifests by time and footprint"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--scheme", default=None, help="override: spbc or direct")
        p.add_argument("--layout", default=None, help="override layout kind")
        p.add_argument("--budget", type=float, default=None, help="override error budget")
        if name == "estimate":
            p.add_argument("--breakdown", action="store_true",
                           help="print per-sub-circuit results to stderr")
        p.set_defaults(func=func)

    p = sub.add_parser("scaling", help="random-circuit scaling sweep with power-law fits")
    common(p, manifests=False)
    p.add_argument("--sizes", default="25,49,100,196")
    p.add_argument("--density", type=float, default=0.4)
    p.add_argument("--layers", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--layout", default=None)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("dump-layout", help="print a layout as a character grid")
    p.add_argument("--num-lq", type=int, required=True)
    p.add_argument("--layout", default=None)
    p.add_argument("--storage", type=int, default=None, help="number of magic-storage tiles")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_dump_layout)

    p = sub.add_parser("dump-slices", help="compile a circuit and print the slice stream")
    p.add_argument("--circuit", required=True)
    p.add_argument("--layout", default=None)
    p.add_argument("--storage", type=int, default=None)
    p.add_argument("--correction", default="alternate",
                   choices=[c.value for c in CorrectionPolicy])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_dump_slices)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleBudget as exc:
        sys.stderr.write(f"lsqre: {exc}\n")
        return EXIT_INFEASIBLE
    except CompilationError as exc:
        sys.stderr.write(f"lsqre: compilation failed: {exc}\n")
        return EXIT_COMPILE
    except (UsageError, ManifestError, CalibrationError, CircuitError, ValueError, OSError) as exc:
        sys.stderr.write(f"lsqre: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
