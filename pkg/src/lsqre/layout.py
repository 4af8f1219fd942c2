"""Tile layouts for the two compilation schemes.

A layout is a grid of surface-code tiles; ``None`` cells are outside the
layout. Coordinates are ``(row, col)``.

``SPBC_LINEAR``
    Data row over an ancilla row, with a Y-state and a magic-storage tile at
    the end of the data row: ``2 * (num_lq + 2)`` tiles.
``ONE_LANE``
    Every data tile is ringed by routing tiles (3:1 routing:data in the bulk).
``ONE_LANE_CONDENSED``
    2x2 blocks of data tiles separated by single routing lanes (5:4 in the
    bulk).

The 1-lane family gets magic-storage tiles just outside the routing core,
each fed from a factory port on the outer boundary.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator

Coord = tuple[int, int]


class LayoutError(ValueError):
    pass


class TileRole(enum.Enum):
    DATA = "D"
    ROUTING = "."
    MAGIC_STORAGE = "M"
    Y_STATE = "Y"
    FACTORY_PORT = "P"


class LayoutKind(enum.Enum):
    SPBC_LINEAR = "spbc-linear"
    ONE_LANE = "1-lane"
    ONE_LANE_CONDENSED = "1-lane-condensed"

    @classmethod
    def parse(cls, name: str) -> "LayoutKind":
        key = name.strip().lower().replace("_", "-")
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown layout {name!r}; choose from {[k.value for k in cls]}")


_STEPS = ((-1, 0), (0, 1), (1, 0), (0, -1))


@dataclass(frozen=True)
class Layout:
    kind: LayoutKind
    grid: tuple[tuple[TileRole | None, ...], ...]
    data_positions: tuple[Coord, ...]
    boundary_ports: tuple[Coord, ...] = ()
    # routing core of the 1-lane family: (row0, col0, rows, cols)
    core: tuple[int, int, int, int] | None = None

    @property
    def num_lq(self) -> int:
        return len(self.data_positions)

    @property
    def height(self) -> int:
        return len(self.grid)

    @property
    def width(self) -> int:
        return len(self.grid[0]) if self.grid else 0

    def role(self, coord: Coord) -> TileRole | None:
        r, c = coord
        if 0 <= r < self.height and 0 <= c < self.width:
            return self.grid[r][c]
        return None

    def tiles(self, role: TileRole | None = None) -> Iterator[Coord]:
        for r, row in enumerate(self.grid):
            for c, cell in enumerate(row):
                if cell is not None and (role is None or cell is role):
                    yield (r, c)

    @property
    def tile_count(self) -> int:
        return sum(len(row) - row.count(None) for row in self.grid)

    def count(self, role: TileRole) -> int:
        return sum(1 for _ in self.tiles(role))

    def neighbors(self, coord: Coord) -> list[Coord]:
        r, c = coord
        out = []
        for dr, dc in _STEPS:
            nb = (r + dr, c + dc)
            if self.role(nb) is not None:
                out.append(nb)
        return out

    def on_boundary(self, coord: Coord) -> bool:
        r, c = coord
        return any(self.role((r + dr, c + dc)) is None for dr, dc in _STEPS)

    def bulk_counts(self) -> dict[TileRole, int]:
        """Role counts over the whole unit cells of the routing core.

        The core's closing routing row and column are excluded, so a fully
        populated core reproduces the bulk routing:data ratio exactly.
        """
        counts = {role: 0 for role in TileRole}
        if self.core is None:
            for coord in self.tiles():
                counts[self.role(coord)] += 1
            return counts
        r0, c0, rows, cols = self.core
        for r in range(r0, r0 + rows - 1):
            for c in range(c0, c0 + cols - 1):
                counts[self.grid[r][c]] += 1
        return counts

    def bulk_ratio(self) -> float:
        counts = self.bulk_counts()
        return counts[TileRole.ROUTING] / counts[TileRole.DATA]

    def render(self) -> str:
        return "\n".join(
            "".join(" " if cell is None else cell.value for cell in row) for row in self.grid
        )


def adjacency(layout: Layout) -> dict[Coord, list[Coord]]:
    """4-neighbour grid adjacency over existing tiles."""
    return {coord: layout.neighbors(coord) for coord in layout.tiles()}


def plan_layout(num_lq: int, kind: LayoutKind, num_storage: int | None = None) -> Layout:
    """Build a layout for ``num_lq`` data qubits.

    ``num_storage`` sets the number of magic-storage tiles (one factory port
    each) for the 1-lane family; ``None`` picks one per core column, split
    evenly over the top and bottom boundaries. SPBC-linear always has exactly
    one storage tile.
    """
    if num_lq < 1:
        raise LayoutError(f"num_lq must be positive, got {num_lq}")
    if kind is LayoutKind.SPBC_LINEAR:
        return _spbc_linear(num_lq)
    return _one_lane(num_lq, kind, num_storage)


def _spbc_linear(num_lq: int) -> Layout:
    top = [TileRole.DATA] * num_lq + [TileRole.Y_STATE, TileRole.MAGIC_STORAGE]
    bottom = [TileRole.ROUTING] * (num_lq + 2)
    return Layout(
        kind=LayoutKind.SPBC_LINEAR,
        grid=(tuple(top), tuple(bottom)),
        data_positions=tuple((0, c) for c in range(num_lq)),
    )


def _data_offset(i: int, kind: LayoutKind) -> int:
    if kind is LayoutKind.ONE_LANE:
        return 2 * i + 1
    return i + i // 2 + 1


def _one_lane(num_lq: int, kind: LayoutKind, num_storage: int | None) -> Layout:
    cols = math.ceil(math.sqrt(num_lq))
    rows = math.ceil(num_lq / cols)
    core_h = _data_offset(rows - 1, kind) + 2
    core_w = _data_offset(cols - 1, kind) + 2
    if num_storage is None:
        num_storage = core_w
    if num_storage < 0:
        raise LayoutError("num_storage must be nonnegative")

    while True:
        sides = _distribute_ports(num_storage, core_h, core_w)
        if sides is not None:
            break
        core_w += 1  # grow with an extra routing column until the ports fit

    top, bottom, left, right = (len(s) for s in sides)
    pad_top = 2 if top else 0
    pad_bottom = 2 if bottom else 0
    pad_left = 2 if left else 0
    pad_right = 2 if right else 0
    height = pad_top + core_h + pad_bottom
    width = pad_left + core_w + pad_right
    grid: list[list[TileRole | None]] = [[None] * width for _ in range(height)]
    for r in range(core_h):
        for c in range(core_w):
            grid[pad_top + r][pad_left + c] = TileRole.ROUTING

    data = []
    for q in range(num_lq):
        i, j = divmod(q, cols)
        coord = (pad_top + _data_offset(i, kind), pad_left + _data_offset(j, kind))
        grid[coord[0]][coord[1]] = TileRole.DATA
        data.append(coord)

    ports = []
    r_lo, r_hi = pad_top, pad_top + core_h - 1
    c_lo, c_hi = pad_left, pad_left + core_w - 1
    for c in sides[0]:
        ports.append(_place(grid, (r_lo - 1, c_lo + c), (r_lo - 2, c_lo + c)))
    for c in sides[1]:
        ports.append(_place(grid, (r_hi + 1, c_lo + c), (r_hi + 2, c_lo + c)))
    for r in sides[2]:
        ports.append(_place(grid, (r_lo + r, c_lo - 1), (r_lo + r, c_lo - 2)))
    for r in sides[3]:
        ports.append(_place(grid, (r_lo + r, c_hi + 1), (r_lo + r, c_hi + 2)))

    return Layout(
        kind=kind,
        grid=tuple(tuple(row) for row in grid),
        data_positions=tuple(data),
        boundary_ports=tuple(ports),
        core=(pad_top, pad_left, core_h, core_w),
    )


def _place(grid, storage: Coord, port: Coord) -> Coord:
    grid[storage[0]][storage[1]] = TileRole.MAGIC_STORAGE
    grid[port[0]][port[1]] = TileRole.FACTORY_PORT
    return port


def _spread(count: int, length: int) -> list[int]:
    return [int((k + 0.5) * length / count) for k in range(count)]


def _distribute_ports(n: int, core_h: int, core_w: int):
    """Split ``n`` ports over the top, bottom, left and right core edges.

    Top and bottom fill first; the side edges skip the corner rows so side
    ports never touch the top/bottom storage rows. Returns ``None`` when the
    core perimeter is too small.
    """
    top = min(math.ceil(n / 2), core_w)
    bottom = min(n - top, core_w)
    rest = n - top - bottom
    side_len = max(core_h - 2, 0)
    left = min(math.ceil(rest / 2), side_len)
    right = min(rest - left, side_len)
    if top + bottom + left + right < n:
        return None
    return (
        _spread(top, core_w),
        _spread(bottom, core_w),
        [1 + r for r in _spread(left, side_len)],
        [1 + r for r in _spread(right, side_len)],
    )


def validate_layout(layout: Layout) -> list[str]:
    """Return a list of invariant violations (empty when the layout is sound)."""
    problems = []
    data = layout.data_positions
    if len(set(data)) != len(data):
        problems.append("data positions are not distinct")
    for q, coord in enumerate(data):
        if layout.role(coord) is not TileRole.DATA:
            problems.append(f"qubit {q} at {coord} is not on a data tile")
    if layout.count(TileRole.DATA) != len(data):
        problems.append("data tiles without an assigned qubit")
    for coord in layout.tiles(TileRole.DATA):
        if not any(layout.role(nb) is TileRole.ROUTING for nb in layout.neighbors(coord)):
            problems.append(f"data tile {coord} has no routing neighbour")
    for coord in layout.boundary_ports:
        if layout.role(coord) is not TileRole.FACTORY_PORT:
            problems.append(f"port {coord} is not a factory-port tile")
        elif not layout.on_boundary(coord):
            problems.append(f"port {coord} is not on the boundary")
    for coord in layout.tiles(TileRole.MAGIC_STORAGE):
        fed = layout.on_boundary(coord) or any(
            layout.role(nb) is TileRole.FACTORY_PORT for nb in layout.neighbors(coord)
        )
        if not fed:
            problems.append(f"storage tile {coord} is not fed from the boundary")

    if layout.kind is LayoutKind.SPBC_LINEAR:
        n = len(data)
        if layout.tile_count != 2 * (n + 2):
            problems.append(f"SPBC-linear has {layout.tile_count} tiles, expected {2 * (n + 2)}")
        if layout.count(TileRole.Y_STATE) != 1 or layout.count(TileRole.MAGIC_STORAGE) != 1:
            problems.append("SPBC-linear needs exactly one Y-state and one storage tile")
    elif data and not _data_connected(layout):
        problems.append("data tiles are not mutually reachable through routing tiles")
    return problems


def _data_connected(layout: Layout) -> bool:
    routing = set(layout.tiles(TileRole.ROUTING))
    start = next(
        (nb for nb in layout.neighbors(layout.data_positions[0]) if nb in routing), None
    )
    if start is None:
        return False
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nb in layout.neighbors(cur):
            if nb in routing and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return all(
        any(nb in seen for nb in layout.neighbors(coord)) for coord in layout.data_positions
    )
