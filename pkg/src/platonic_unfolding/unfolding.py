"""
The unfolding of a p-gon tiled surface and the monodromy of its map to Pi_p.

All angles are exact integers in units of pi/p, i.e. elements of Z/2p.  A
face of the surface placed with rotation class ``t`` has its slot ``a`` edge
pointing in direction ``t + 2a``.  Gluing slot ``a`` of ``f`` antiparallel to
slot ``b`` of ``g`` forces the class of ``g`` to be

    t' = t + 2(a - b) - p   (mod 2p),

so ``rho[f][a] = 2(a - b) - p`` is the rotation picked up by that crossing.
The unfolding is the connected component of ``(0, 0)`` in the graph on
``(face, class)`` whose edges are these crossings.

For even p every class is even and the p-gon rotated by ``t`` is again the
one polygon of Pi_p.  For odd p the even classes lie over polygon A of the
double p-gon and the odd classes over polygon B.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .permgroup import Permutation, PermutationGroup
from .surface import SchlafliSymbol, TiledSurface, is_regular, schlafli, vertex_degrees


class NormalityFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class RotationCocycle:
    p: int
    table: tuple[tuple[int, ...], ...]

    def __getitem__(self, f: int) -> tuple[int, ...]:
        return self.table[f]


def cocycle(surface: TiledSurface) -> RotationCocycle:
    p = surface.p
    table = tuple(
        tuple((2 * (a - b) - p) % (2 * p) for a, (_, b) in enumerate(row)) for row in surface.adj
    )
    for f, row in enumerate(surface.adj):
        for a, (g, b) in enumerate(row):
            assert (table[g][b] + table[f][a]) % (2 * p) == 0
            assert table[f][a] % 2 == p % 2
    return RotationCocycle(p, table)


def k_prime(sym: SchlafliSymbol) -> int:
    """Least k' > 0 with k' * q(p-2)/p * pi a multiple of 2 pi."""
    p, q = sym.p, sym.q
    value = 2 * p // math.gcd(2 * p, q * (p - 2))
    assert value == k_prime_table(sym)
    return value


def k_prime_table(sym: SchlafliSymbol) -> int:
    """k' read off from the parities of p and q."""
    p, q, d = sym.p, sym.q, sym.d
    if p % 2 == 1 and q % 2 == 1:
        return 2 * p // d
    if p % 4 == 2 and q % 2 == 1:
        return p // (2 * d)
    return p // d


def holonomy_generator(surface: TiledSurface) -> int:
    """Generator ``h`` of the holonomy subgroup ``hZ/2pZ``, from loop defects.

    Classes are pushed along a breadth-first spanning tree of the face graph;
    every non-tree crossing closes a loop whose defect lies in the subgroup,
    and these defects generate it.  Independent of :func:`unfold`.
    """
    p = surface.p
    rho = cocycle(surface)
    cls = {0: 0}
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for a, (g, _) in enumerate(surface.adj[f]):
            if g not in cls:
                cls[g] = (cls[f] + rho[f][a]) % (2 * p)
                queue.append(g)
    h = 2 * p
    for f, row in enumerate(surface.adj):
        for a, (g, _) in enumerate(row):
            h = math.gcd(h, (cls[f] + rho[f][a] - cls[g]) % (2 * p))
    return h


def holonomy_degree(surface: TiledSurface) -> int:
    """Cover degree predicted by the loop-defect oracle."""
    return 2 * surface.p // holonomy_generator(surface)


@dataclass
class UnfoldedSurface:
    base: TiledSurface
    rho: RotationCocycle
    faces: list[tuple[int, int]]
    crossing: list[list[int]]
    index: dict = field(repr=False)

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def k(self) -> int:
        return sum(1 for f, _ in self.faces if f == 0)

    def classes(self, f: int) -> list[int]:
        return sorted(t for g, t in self.faces if g == f)

    def is_polygon_a(self, i: int) -> bool:
        return self.faces[i][1] % 2 == 0

    def direction(self, i: int, a: int) -> int:
        """Absolute direction of slot ``a`` of cover face ``i``, units pi/p."""
        return (self.faces[i][1] + 2 * a) % (2 * self.p)

    def slot_towards(self, i: int, direction: int) -> int:
        t = self.faces[i][1]
        diff = (direction - t) % (2 * self.p)
        assert diff % 2 == 0, "direction of the wrong parity for this face"
        return (diff // 2) % self.p

    def neighbour(self, i: int, direction: int) -> int:
        return self.crossing[i][self.slot_towards(i, direction)]

    def as_surface(self) -> TiledSurface:
        """The cover as a surface in its own right."""
        adj = []
        for i, (f, _) in enumerate(self.faces):
            row = []
            for a in range(self.p):
                _, b = self.base.adj[f][a]
                row.append((self.crossing[i][a], b))
            adj.append(row)
        return TiledSurface(self.p, adj)


def unfold(surface: TiledSurface) -> UnfoldedSurface:
    p = surface.p
    two_p = 2 * p
    rho = cocycle(surface)
    faces = [(0, 0)]
    index = {(0, 0): 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        f, t = faces[i]
        for a, (g, _) in enumerate(surface.adj[f]):
            nxt = (g, (t + rho[f][a]) % two_p)
            if nxt not in index:
                index[nxt] = len(faces)
                faces.append(nxt)
                queue.append(index[nxt])
    crossing = [
        [index[(g, (t + rho[f][a]) % two_p)] for a, (g, _) in enumerate(surface.adj[f])]
        for f, t in faces
    ]
    u = UnfoldedSurface(surface, rho, faces, crossing, index)
    _check_unfolding(u)
    return u


def _check_unfolding(u: UnfoldedSurface) -> None:
    p, k = u.p, u.k
    two_p = 2 * p
    # every face carries a coset of one subgroup H of Z/2p with |H| = k
    h = two_p // k
    assert two_p % k == 0
    for f in range(u.base.m):
        ts = u.classes(f)
        assert len(ts) == k, f"face {f} has {len(ts)} lifts, face 0 has {k}"
        assert all((t - ts[0]) % h == 0 for t in ts)
    assert k <= (p if p % 2 == 0 else two_p)
    # the cover has cone angles in 2 pi Z: degree * (p - 2) is a multiple of 2p
    for degree in vertex_degrees(u.as_surface()):
        assert degree * (p - 2) % two_p == 0
    if is_regular(u.base):
        assert k % k_prime(schlafli(u.base)) == 0


@dataclass(frozen=True)
class MonodromySetup:
    """Sheets over polygon A, numbered in discovery order, and the generators."""

    sheets: tuple[int, ...]
    generators: tuple[Permutation, ...]

    @property
    def n(self) -> int:
        return len(self.sheets)


def monodromy(u: UnfoldedSurface) -> MonodromySetup:
    p = u.p
    sheets = tuple(i for i in range(len(u.faces)) if u.is_polygon_a(i))
    sheet_of = {face: s for s, face in enumerate(sheets)}
    n = len(sheets)
    if p % 2 == 0:
        assert n == u.k * u.base.m
        # sigma_j crosses the edge of absolute class j (units 2pi/p)
        gens = []
        for j in range(p):
            gens.append(Permutation([sheet_of[u.neighbour(x, 2 * j)] for x in sheets]))
        for j in range(p // 2):
            assert gens[j + p // 2] == gens[j].inverse()
        gens = gens[: p // 2]
    else:
        assert 2 * n == u.k * u.base.m
        # c_j crosses from polygon A along direction 2j into polygon B
        cross = [[u.neighbour(x, 2 * j) for x in sheets] for j in range(p)]
        for c in cross:
            assert len(set(c)) == n and not any(u.is_polygon_a(y) for y in c)
        back = {y: s for s, y in enumerate(cross[0])}
        gens = [Permutation([back[cross[j][s]] for s in range(n)]) for j in range(1, p)]
    return MonodromySetup(sheets, tuple(gens))


def monodromy_generators(u: UnfoldedSurface) -> list[Permutation]:
    return list(monodromy(u).generators)


def monodromy_group(u: UnfoldedSurface) -> PermutationGroup:
    setup = monodromy(u)
    group = PermutationGroup(setup.generators, degree=setup.n)
    assert group.is_transitive(), "cover is disconnected"
    assert group.order() == setup.n, "monodromy order differs from the degree of the cover"
    return group


def deck_transformations(u: UnfoldedSurface) -> list[Permutation]:
    """Deck transformations of the cover over Pi_p, one per sheet.

    The ``s``-th transformation sends sheet 0 to sheet ``s`` and is extended
    along crossings labelled by absolute direction.  Each extension closing
    up consistently is what normality of the cover means.
    """
    p = u.p
    nfaces = len(u.faces)
    sheets = [i for i in range(nfaces) if u.is_polygon_a(i)]
    out = []
    for target in sheets:
        delta = {sheets[0]: target}
        queue = deque([sheets[0]])
        while queue:
            x = queue.popleft()
            y = delta[x]
            for a in range(p):
                d = u.direction(x, a)
                nx = u.crossing[x][a]
                ny = u.neighbour(y, d)
                if nx in delta:
                    if delta[nx] != ny:
                        raise NormalityFailure(f"sheet {target}: face {nx} sent to {delta[nx]} and {ny}")
                else:
                    delta[nx] = ny
                    queue.append(nx)
        if len(delta) != nfaces or len(set(delta.values())) != nfaces:
            raise NormalityFailure(f"sheet {target}: extension is not a bijection")
        out.append(Permutation([delta[i] for i in range(nfaces)]))

    images = {g(sheets[0]) for g in out}
    assert len(images) == len(sheets), "deck group is not simply transitive on the fiber"
    elements = set(out)
    for g in out:
        for h in out:
            assert g * h in elements, "deck transformations are not closed under composition"
    return out
