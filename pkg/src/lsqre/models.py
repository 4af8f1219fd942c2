"""Calibrated physical models: surface-code error law and distillation factory.

Both are read from one text calibration file so they can be re-fitted without
touching code. The packaged default lives in ``lsqre/data/calibration.txt``;
``LSQRE_CALIBRATION`` overrides it.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

CALIBRATION_ENV = "LSQRE_CALIBRATION"


class CalibrationError(ValueError):
    pass


class DistanceError(ValueError):
    """A (d1, d2) pair outside the calibrated domain."""


@dataclass(frozen=True)
class PhysicalErrorModel:
    """Logical error per tile per logical time-step, ``A * Lambda**(-(d+1)/2)``."""

    prefactor: float
    suppression: float

    def __post_init__(self):
        if self.prefactor <= 0:
            raise CalibrationError("error-law prefactor must be positive")
        if self.suppression <= 1:
            raise CalibrationError("suppression ratio must exceed 1 (below threshold)")

    def p_logical(self, d: int) -> float:
        return min(self.prefactor * self.suppression ** (-(d + 1) / 2), 1.0)

    __call__ = p_logical


@dataclass(frozen=True)
class FactoryEntry:
    d1: int
    d2: int
    p_t: float
    base_tiles: float


@dataclass(frozen=True)
class FactoryModel:
    """Two-level 15-to-1 factory treated as a calibrated black box."""

    tau_d: int
    entries: tuple[FactoryEntry, ...]

    def __post_init__(self):
        if self.tau_d < 1:
            raise CalibrationError("tau_d must be at least 1")
        seen = set()
        for e in self.entries:
            if e.d1 % 2 == 0 or e.d2 % 2 == 0 or e.d1 > e.d2:
                raise CalibrationError(f"bad distance pair ({e.d1}, {e.d2})")
            if not 0 < e.p_t < 1:
                raise CalibrationError(f"P_T out of (0, 1) at ({e.d1}, {e.d2})")
            if (e.d1, e.d2) in seen:
                raise CalibrationError(f"duplicate pair ({e.d1}, {e.d2})")
            seen.add((e.d1, e.d2))

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return sorted((e.d1, e.d2) for e in self.entries)

    def _entry(self, d1: int, d2: int) -> FactoryEntry:
        for e in self.entries:
            if (e.d1, e.d2) == (d1, d2):
                return e
        raise DistanceError(
            f"({d1}, {d2}) is not calibrated; calibrated pairs: {self.pairs}"
        )

    def p_t_at(self, d1: int, d2: int) -> float:
        return self._entry(d1, d2).p_t

    def tiles_at(self, d1: int, d2: int) -> int:
        """Footprint of one factory in d2-sized tiles."""
        e = self._entry(d1, d2)
        # rounding guard so exact products are not pushed up by float noise
        return max(1, math.ceil(e.base_tiles * (d1 / d2) ** 2 - 1e-9))

    def with_tau_d(self, tau_d: int) -> "FactoryModel":
        return FactoryModel(tau_d, self.entries)


@dataclass(frozen=True)
class Calibration:
    phys: PhysicalErrorModel
    factory: FactoryModel
    source: str = "<memory>"


def default_calibration_path() -> Path | None:
    env = os.environ.get(CALIBRATION_ENV)
    return Path(env) if env else None


def load_calibration(path: str | os.PathLike | None = None) -> Calibration:
    if path is None:
        path = default_calibration_path()
    if path is None:
        text = resources.files("lsqre").joinpath("data/calibration.txt").read_text()
        return parse_calibration(text, source="<packaged>")
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CalibrationError(f"cannot read calibration file {path}: {exc}") from exc
    return parse_calibration(text, source=str(path))


def parse_calibration(text: str, source: str = "<string>") -> Calibration:
    law: dict[str, float] = {}
    entries = []
    tau_values = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "law" and len(parts) == 3:
                law[parts[1]] = float(parts[2])
            elif parts[0] == "factory" and len(parts) == 6:
                d1, d2 = int(parts[1]), int(parts[2])
                entries.append(FactoryEntry(d1, d2, float(parts[3]), float(parts[4])))
                tau_values.add(int(parts[5]))
            else:
                raise ValueError(raw)
        except ValueError:
            raise CalibrationError(f"{source}:{lineno}: unrecognized row {raw!r}") from None
    missing = {"A", "Lambda"} - law.keys()
    if missing:
        raise CalibrationError(f"{source}: missing law rows {sorted(missing)}")
    if not entries:
        raise CalibrationError(f"{source}: no factory rows")
    if len(tau_values) != 1:
        raise CalibrationError(f"{source}: factory rows disagree on tau_d {sorted(tau_values)}")
    return Calibration(
        phys=PhysicalErrorModel(law["A"], law["Lambda"]),
        factory=FactoryModel(tau_values.pop(), tuple(entries)),
        source=source,
    )


def format_calibration(cal: Calibration) -> str:
    lines = [
        f"law A {cal.phys.prefactor:.6g}",
        f"law Lambda {cal.phys.suppression:.6g}",
    ]
    for e in sorted(cal.factory.entries, key=lambda e: (e.d1, e.d2)):
        lines.append(
            f"factory {e.d1} {e.d2} {e.p_t:.6g} {e.base_tiles:.6g} {cal.factory.tau_d}"
        )
    return "\n".join(lines) + "\n"
