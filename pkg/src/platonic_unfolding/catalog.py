"""
Built-in surfaces and surface files.

The classical solids are stored as vertex cycles of their faces.  Faces are
oriented coherently on construction (the orientation of face 0 wins), and the
slot ``a`` of a face with vertex cycle ``v`` is the edge ``v[a] -> v[a+1]``.
Which vertex comes first in each cycle, and hence which edge is slot 0, is an
arbitrary choice; any choice gives an isomorphic map.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .surface import (
    MalformedSurface,
    SchlafliSymbol,
    TiledSurface,
    ValidationError,
    check,
    dual,
    genus,
    is_rotary,
    schlafli,
)
from .unfolding import cocycle, holonomy_degree


class UnknownName(KeyError):
    pass


class InvalidSize(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"ParseError: {message}{where}")


def surface_from_faces(faces: Sequence[Sequence[int]]) -> TiledSurface:
    """Glue polygons given as vertex cycles, orienting them coherently."""
    oriented = orient_faces(faces)
    p = len(oriented[0])

    def edges(f):
        return [(f[a], f[(a + 1) % p]) for a in range(p)]

    slot_of = {}
    for i, cyc in enumerate(oriented):
        for a, e in enumerate(edges(cyc)):
            if e in slot_of:
                raise MalformedSurface("faces cannot be oriented coherently")
            slot_of[e] = (i, a)
    adj = [[slot_of[(v, u)] for u, v in edges(cyc)] for cyc in oriented]
    return check(TiledSurface(p, adj))


def orient_faces(faces: Sequence[Sequence[int]]) -> list[list[int]]:
    """Vertex cycles reversed where needed to agree with face 0.

    A reversed cycle keeps its first vertex, so corner ``a`` of face ``f`` in
    the glued surface is the vertex ``orient_faces(faces)[f][a]``.
    """
    faces = [list(f) for f in faces]
    p = len(faces[0])
    if any(len(f) != p for f in faces):
        raise MalformedSurface("faces of different sizes")

    def edges(f):
        return [(f[a], f[(a + 1) % p]) for a in range(p)]

    undirected = {}
    for i, f in enumerate(faces):
        for u, v in edges(f):
            undirected.setdefault(frozenset((u, v)), []).append(i)
    if any(len(owners) != 2 for owners in undirected.values()):
        raise MalformedSurface("every edge must border exactly two faces")

    oriented = {0: faces[0]}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for u, v in edges(oriented[i]):
            (j,) = [x for x in undirected[frozenset((u, v))] if x != i]
            if j in oriented:
                continue
            cyc = faces[j]
            if (u, v) in edges(cyc):
                cyc = cyc[::-1]
                cyc = cyc[-1:] + cyc[:-1]  # keep the same first vertex
            oriented[j] = cyc
            queue.append(j)
    if len(oriented) != len(faces):
        raise MalformedSurface("face graph is disconnected")
    return [oriented[i] for i in range(len(faces))]


_TETRAHEDRON = [[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]]

# vertex 4x + 2y + z sits at (x, y, z)
_CUBE = [[0, 1, 3, 2], [4, 6, 7, 5], [0, 4, 5, 1], [2, 3, 7, 6], [0, 2, 6, 4], [1, 5, 7, 3]]

# vertices +x, -x, +y, -y, +z, -z
_OCTAHEDRON = [[x, y, z] for x in (0, 1) for y in (2, 3) for z in (4, 5)]

_ICOSAHEDRON = [
    [0, 2, 1], [0, 1, 7], [0, 6, 2], [0, 5, 6], [0, 7, 5], [1, 2, 8], [1, 3, 7],
    [1, 8, 3], [2, 6, 4], [2, 4, 8], [3, 11, 7], [3, 8, 9], [3, 9, 11], [4, 6, 10],
    [4, 9, 8], [4, 10, 9], [5, 10, 6], [5, 7, 11], [5, 11, 10], [9, 10, 11],
]

# vertices are the faces of the icosahedron above
_DODECAHEDRON = [
    [3, 2, 0, 1, 4], [6, 1, 0, 5, 7], [9, 5, 0, 2, 8], [12, 10, 6, 7, 11],
    [14, 9, 8, 13, 15], [18, 16, 3, 4, 17], [13, 8, 2, 3, 16], [17, 4, 1, 6, 10],
    [11, 7, 5, 9, 14], [19, 12, 11, 14, 15], [19, 15, 13, 16, 18], [18, 17, 10, 12, 19],
]

_SOLIDS = {
    "tetrahedron": _TETRAHEDRON,
    "cube": _CUBE,
    "octahedron": _OCTAHEDRON,
    "dodecahedron": _DODECAHEDRON,
    "icosahedron": _ICOSAHEDRON,
}


def platonic_solid(name: str) -> TiledSurface:
    try:
        faces = _SOLIDS[name]
    except KeyError:
        raise UnknownName(name) from None
    return surface_from_faces(faces)


# Crossing slot a of octagon j on sheet i of the unfolding lands on sheet
# i + shift, octagon g, where (shift, g) = BOLZA_SHIFTS[j][a % 4].  Parallel
# edges of an octagon meet the same neighbour, hence the period 4.
BOLZA_SHIFTS = (
    ((0, 4), (-1, 3), (-4, 2), (2, 5)),
    ((0, 2), (1, 3), (0, 4), (0, 5)),
    ((0, 1), (-1, 5), (-4, 0), (2, 3)),
    ((-1, 1), (-2, 2), (1, 0), (0, 4)),
    ((0, 0), (1, 5), (0, 1), (0, 3)),
    ((-1, 4), (-2, 0), (1, 2), (0, 1)),
)


def bolza() -> TiledSurface:
    """The Bolza surface as six regular octagons.

    A sheet of the unfolding is a rotation by ``2 pi/8``, so a sheet shift
    ``s`` across slot ``a`` equals ``rho / 2 = a - b - 4``; that fixes the
    slot ``b`` on the far side.
    """
    p = 8
    adj = []
    for row in BOLZA_SHIFTS:
        adj.append([(g, (a - p // 2 - s) % p) for a in range(p) for s, g in [row[a % 4]]])
    surface = check(TiledSurface(p, adj))
    rho = cocycle(surface)
    for f, row in enumerate(BOLZA_SHIFTS):
        for a in range(p):
            assert rho[f][a] // 2 == row[a % 4][0] % p, "Bolza gluing does not reproduce the sheet shifts"
    return surface


def pi_p(p: int) -> TiledSurface:
    """The regular p-gon with opposite sides glued, or the double p-gon for odd p."""
    if p < 3:
        raise InvalidSize(f"p = {p} < 3")
    if p % 2 == 0:
        surface = TiledSurface(p, [[(0, (a + p // 2) % p) for a in range(p)]])
    else:
        surface = TiledSurface(p, [[(1, a) for a in range(p)], [(0, a) for a in range(p)]])
    check(surface)
    # for odd p every crossing turns by p, but loops cross an even number of times
    rho = cocycle(surface)
    assert all(r == (0 if p % 2 == 0 else p) for row in rho.table for r in row)
    assert holonomy_degree(surface) == 1
    return surface


def _hnf(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int, int]:
    """Basis ``(a, b), (0, c)`` of the lattice spanned by ``u`` and ``v``."""
    rows = [list(u), list(v)]
    # Euclid on the first column
    while rows[1][0] != 0:
        q = rows[0][0] // rows[1][0]
        rows[0] = [rows[0][0] - q * rows[1][0], rows[0][1] - q * rows[1][1]]
        rows[0], rows[1] = rows[1], rows[0]
    if rows[0][0] < 0:
        rows[0] = [-rows[0][0], -rows[0][1]]
    a, b = rows[0]
    c = abs(rows[1][1])
    if a == 0 or c == 0:
        raise InvalidSize("lattice is degenerate")
    return a, b, c


# neighbour offsets of slot a, in a lattice basis adapted to each tiling
_SQUARE_STEPS = ((0, -1), (1, 0), (0, 1), (-1, 0))
_HEX_STEPS = ((1, -1), (1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1))


def torus_quotient(p: int, u: tuple[int, int], v: tuple[int, int]) -> TiledSurface:
    """The square (p = 4) or hexagonal (p = 6) tiling modulo the lattice <u, v>.

    For p = 6 coordinates are taken in the basis of the outward normals of
    slots 1 and 2, which are sixty degrees apart.
    """
    if p == 4:
        steps = _SQUARE_STEPS
    elif p == 6:
        steps = _HEX_STEPS
    else:
        raise InvalidSize(f"no planar tiling by regular {p}-gons")
    a, b, c = _hnf(u, v)

    def reduce(x: int, y: int) -> tuple[int, int]:
        k = x // a
        x, y = x - k * a, y - k * b
        return x, y % c

    cells = [(x, y) for x in range(a) for y in range(c)]
    index = {cell: i for i, cell in enumerate(cells)}
    adj = []
    for x, y in cells:
        row = []
        for s, (dx, dy) in enumerate(steps):
            row.append((index[reduce(x + dx, y + dy)], (s + p // 2) % p))
        adj.append(row)
    return check(TiledSurface(p, adj))


def torus_map(p: int, b: int, c: int = 0) -> TiledSurface:
    """The regular torus map {4,4}_(b,c) or {6,3}_(b,c).

    The lattice is generated by ``(b, c)`` and its rotation by a quarter or a
    sixth of a turn, giving ``b^2 + c^2`` squares or ``b^2 + bc + c^2`` hexagons.
    """
    if p == 4:
        rotated = (-c, b)
    elif p == 6:
        rotated = (-c, b + c)
    else:
        raise InvalidSize(f"torus maps exist for p = 4 or 6, not {p}")
    if b < 0 or c < 0 or b + c == 0:
        raise InvalidSize(f"size ({b}, {c}) gives no faces")
    return torus_quotient(p, (b, c), rotated)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], TiledSurface] = field(repr=False)
    symbol: tuple[int, int] | None = None
    genus: int | None = None
    rot_order: int | None = None

    @property
    def surface(self) -> TiledSurface:
        return self.build()

    def check_expected(self) -> None:
        s = self.surface
        if self.symbol is not None:
            assert schlafli(s) == SchlafliSymbol(*self.symbol)
        if self.genus is not None:
            assert genus(s) == self.genus
        if self.rot_order is not None:
            assert s.num_pairs == self.rot_order and is_rotary(s)


def _entries() -> list[CatalogEntry]:
    out = [
        CatalogEntry("tetrahedron", lambda: platonic_solid("tetrahedron"), (3, 3), 0, 12),
        CatalogEntry("cube", lambda: platonic_solid("cube"), (4, 3), 0, 24),
        CatalogEntry("octahedron", lambda: platonic_solid("octahedron"), (3, 4), 0, 24),
        CatalogEntry("dodecahedron", lambda: platonic_solid("dodecahedron"), (5, 3), 0, 60),
        CatalogEntry("icosahedron", lambda: platonic_solid("icosahedron"), (3, 5), 0, 60),
        CatalogEntry("bolza", bolza, (8, 3), 2, 48),
        CatalogEntry("bolza-dual", lambda: dual(bolza()), (3, 8), 2, 48),
        CatalogEntry("torus-4-1-0", lambda: torus_map(4, 1, 0), (4, 4), 1, 4),
        CatalogEntry("torus-4-2-0", lambda: torus_map(4, 2, 0), (4, 4), 1, 16),
        CatalogEntry("torus-4-1-1", lambda: torus_map(4, 1, 1), (4, 4), 1, 8),
        CatalogEntry("torus-4-2-1", lambda: torus_map(4, 2, 1), (4, 4), 1, 20),
        CatalogEntry("torus-6-1-0", lambda: torus_map(6, 1, 0), (6, 3), 1, 6),
        CatalogEntry("torus-6-1-1", lambda: torus_map(6, 1, 1), (6, 3), 1, 18),
        CatalogEntry("torus-6-2-0", lambda: torus_map(6, 2, 0), (6, 3), 1, 24),
        CatalogEntry("torus-6-2-1", lambda: torus_map(6, 2, 1), (6, 3), 1, 42),
        CatalogEntry("torus-6-1-1-dual", lambda: dual(torus_map(6, 1, 1)), (3, 6), 1, 18),
    ]
    for p in range(3, 13):
        out.append(CatalogEntry(f"pi-{p}", lambda p=p: pi_p(p), None, (p - 1) // 2 if p % 2 else None, None))
    return out


BUILTIN = {e.name: e for e in _entries()}

CATALOG_DIR_ENV = "PLATONIC_CATALOG_DIR"


def user_entries() -> dict[str, CatalogEntry]:
    """Surface files from the directory named by ``PLATONIC_CATALOG_DIR``."""
    root = os.environ.get(CATALOG_DIR_ENV)
    if not root:
        return {}
    out = {}
    for path in sorted(Path(root).glob("*.json")):
        out[path.stem] = CatalogEntry(path.stem, lambda path=path: load(path))
    return out


def entries() -> dict[str, CatalogEntry]:
    out = dict(BUILTIN)
    for name, entry in user_entries().items():
        out.setdefault(name, entry)
    return out


def get(name: str) -> TiledSurface:
    try:
        return entries()[name].surface
    except KeyError:
        raise UnknownName(name) from None


def listing() -> list[dict]:
    out = []
    for name, entry in entries().items():
        s = entry.surface
        try:
            q = schlafli(s).q
        except ValueError:
            q = None
        out.append({"name": name, "p": s.p, "q": q, "faces": s.m, "genus": genus(s)})
    return out


def loads(text: str) -> TiledSurface:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")
    return check(TiledSurface.from_dict(data))


def load(path) -> TiledSurface:
    return loads(Path(path).read_text())


def save(surface: TiledSurface, path) -> None:
    Path(path).write_text(surface.to_json())
