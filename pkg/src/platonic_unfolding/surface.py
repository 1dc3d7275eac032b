"""
Closed oriented surfaces glued from regular p-gons.

A surface is an ``m x p`` table ``adj``: ``adj[f][a] == (g, b)`` says that edge
slot ``a`` of face ``f`` is glued to slot ``b`` of face ``g``.  Slots are
numbered counterclockwise with slot 0 the bottom edge, so orientability is
built into the representation.

A *pair* ``(f, a)`` is a face together with one of its edge slots.  Two
operations act on pairs:

* ``sigma``: ``(f, a) -> (f, a + 1 mod p)``, turn inside the face;
* ``alpha``: ``(f, a) -> adj[f][a]``, cross the edge.

Orientation preserving automorphisms are exactly the pair permutations
commuting with both.  Pairs are indexed as ``f * p + a`` whenever they are
used as points of a permutation group.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

from .permgroup import Permutation, PermutationGroup


class MalformedSurface(ValueError):
    pass


class ValidationError(ValueError):
    """A surface table violating one of the gluing invariants."""

    def __init__(self, invariant: str, face: int | None = None, slot: int | None = None, message: str = ""):
        self.invariant = invariant
        self.face = face
        self.slot = slot
        self.message = message
        super().__init__(str(self))

    def __str__(self):
        loc = "".join(f", {x}" for x in (self.face, self.slot) if x is not None)
        tail = f": {self.message}" if self.message else ""
        return f"ValidationError({self.invariant!r}{loc}){tail}"


class NotRegular(ValueError):
    """Raised when the vertices of a surface do not all have the same degree."""

    def __init__(self, degrees: Counter):
        self.degrees = degrees
        shown = ", ".join(f"{d}^{c}" for d, c in sorted(degrees.items()))
        super().__init__(f"vertex degrees are not constant: {shown}")


@dataclass(frozen=True)
class SchlafliSymbol:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 3 or self.q < 3:
            raise ValueError(f"Schläfli symbol needs p, q >= 3, got {{{self.p},{self.q}}}")

    @property
    def d(self) -> int:
        return math.gcd(self.p, self.q)

    def __str__(self):
        return f"{{{self.p},{self.q}}}"


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    invariant: str | None = None
    face: int | None = None
    slot: int | None = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def raise_for_error(self) -> None:
        if not self.ok:
            raise ValidationError(self.invariant, self.face, self.slot, self.message)


@dataclass(frozen=True)
class TiledSurface:
    p: int
    adj: tuple

    def __init__(self, p: int, adj: Sequence[Sequence[Sequence[int]]]):
        object.__setattr__(self, "p", int(p))
        object.__setattr__(
            self, "adj", tuple(tuple((int(g), int(b)) for g, b in row) for row in adj)
        )

    @property
    def m(self) -> int:
        return len(self.adj)

    @property
    def num_pairs(self) -> int:
        return self.m * self.p

    def pairs(self) -> list[tuple[int, int]]:
        return [(f, a) for f in range(self.m) for a in range(self.p)]

    def index(self, f: int, a: int) -> int:
        return f * self.p + a

    def pair(self, i: int) -> tuple[int, int]:
        return divmod(i, self.p)

    def sigma(self, f: int, a: int) -> tuple[int, int]:
        return f, (a + 1) % self.p

    def alpha(self, f: int, a: int) -> tuple[int, int]:
        return self.adj[f][a]

    def to_dict(self) -> dict:
        return {"p": self.p, "faces": self.m, "adj": [[list(x) for x in row] for row in self.adj]}

    @classmethod
    def from_dict(cls, data: dict) -> "TiledSurface":
        try:
            p, m, adj = data["p"], data["faces"], data["adj"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("shape", message=f"missing field {exc}") from None
        if not isinstance(adj, list) or len(adj) != m:
            raise ValidationError("shape", message=f"expected {m} rows in adj")
        for f, row in enumerate(adj):
            if not isinstance(row, list) or len(row) != p:
                raise ValidationError("shape", f, message=f"expected {p} slots")
            for a, entry in enumerate(row):
                if not (isinstance(entry, list) and len(entry) == 2 and all(type(v) is int for v in entry)):
                    raise ValidationError("shape", f, a, "entries must be [face, slot]")
        return cls(p, adj)

    def to_json(self) -> str:
        """Canonical JSON text: one face per line, trailing newline."""
        rows = ",\n".join(
            "    [" + ", ".join(f"[{g}, {b}]" for g, b in row) + "]" for row in self.adj
        )
        return f'{{\n  "p": {self.p},\n  "faces": {self.m},\n  "adj": [\n{rows}\n  ]\n}}\n'


def validate(surface: TiledSurface) -> ValidationResult:
    p, m = surface.p, surface.m
    if p < 3:
        return ValidationResult(False, "range", message=f"p = {p} < 3")
    if m < 1:
        return ValidationResult(False, "shape", message="no faces")
    for f, row in enumerate(surface.adj):
        if len(row) != p:
            return ValidationResult(False, "shape", f, message=f"row has {len(row)} slots, expected {p}")
        for a, (g, b) in enumerate(row):
            if not (0 <= g < m and 0 <= b < p):
                return ValidationResult(False, "range", f, a, f"({g}, {b}) out of range")
    for f, row in enumerate(surface.adj):
        for a, (g, b) in enumerate(row):
            if (g, b) == (f, a):
                return ValidationResult(False, "involution", f, a, "slot glued to itself")
            if surface.adj[g][b] != (f, a):
                return ValidationResult(False, "involution", f, a, f"({g}, {b}) does not glue back")
    seen = {0}
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g, _ in surface.adj[f]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    if len(seen) != m:
        missing = min(set(range(m)) - seen)
        return ValidationResult(False, "disconnected", missing, message="face unreachable from face 0")
    return ValidationResult(True)


def check(surface: TiledSurface) -> TiledSurface:
    validate(surface).raise_for_error()
    return surface


def vertex_orbits(surface: TiledSurface) -> list[list[tuple[int, int]]]:
    """Corner cycles around each vertex.

    Corner ``(f, a)`` is the vertex where slot ``a`` of face ``f`` starts; the
    next corner around the same vertex is ``(g, b + 1)`` with ``(g, b) = adj[f][a]``.
    Cycles start at their smallest corner and are listed in order of it.
    """
    p = surface.p
    seen = set()
    cycles = []
    for start in surface.pairs():
        if start in seen:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            g, b = surface.adj[x[0]][x[1]]
            x = (g, (b + 1) % p)
        cycles.append(cyc)
    return cycles


def vertex_degrees(surface: TiledSurface) -> Counter:
    return Counter(len(c) for c in vertex_orbits(surface))


def schlafli(surface: TiledSurface) -> SchlafliSymbol:
    degrees = vertex_degrees(surface)
    if len(degrees) != 1:
        raise NotRegular(degrees)
    (q,) = degrees
    if q < 3:
        raise NotRegular(degrees)
    return SchlafliSymbol(surface.p, q)


def is_regular(surface: TiledSurface) -> bool:
    try:
        schlafli(surface)
    except NotRegular:
        return False
    return True


def euler_characteristic(surface: TiledSurface) -> int:
    if surface.num_pairs % 2:
        raise MalformedSurface(f"mp = {surface.num_pairs} is odd, edge count is not integral")
    v = len(vertex_orbits(surface))
    return v - surface.num_pairs // 2 + surface.m


def genus(surface: TiledSurface) -> int:
    chi = euler_characteristic(surface)
    if chi % 2:
        raise MalformedSurface(f"odd Euler characteristic {chi}")
    return (2 - chi) // 2


def dual(surface: TiledSurface) -> TiledSurface:
    """Exchange faces and vertices.

    Face ``i`` of the dual is the ``i``-th vertex cycle; its slot ``j`` is the
    edge crossed when stepping from the ``j``-th corner of that cycle.
    """
    schlafli(surface)
    cycles = vertex_orbits(surface)
    where = {}
    for i, cyc in enumerate(cycles):
        for j, corner in enumerate(cyc):
            where[corner] = (i, j)
    adj = [[where[surface.adj[f][a]] for f, a in cyc] for cyc in cycles]
    return TiledSurface(len(cycles[0]), adj)


# -- automorphisms ---------------------------------------------------------


def _propagate(source: TiledSurface, target: TiledSurface, image: tuple[int, int], reverse: bool = False):
    """Extend ``(0, 0) -> image`` to a map commuting with alpha and with sigma.

    With ``reverse`` the map intertwines sigma with its inverse instead
    (orientation reversing).  Returns a dict on pairs, or None when the
    propagation is inconsistent.
    """
    step = -1 if reverse else 1
    phi = {(0, 0): image}
    used = {image}
    queue = deque([(0, 0)])
    while queue:
        x = queue.popleft()
        y = phi[x]
        for nx, ny in (
            (source.sigma(*x), (y[0], (y[1] + step) % target.p)),
            (source.alpha(*x), target.alpha(*y)),
        ):
            if nx in phi:
                if phi[nx] != ny:
                    return None
            else:
                if ny in used:
                    return None
                phi[nx] = ny
                used.add(ny)
                queue.append(nx)
    if len(phi) != source.num_pairs:
        return None
    return phi


def _as_permutation(surface: TiledSurface, phi: dict) -> Permutation:
    return Permutation([surface.index(*phi[x]) for x in surface.pairs()])


def automorphisms(surface: TiledSurface) -> list[Permutation]:
    """All orientation preserving automorphisms as permutations of pair indices."""
    out = []
    for image in surface.pairs():
        phi = _propagate(surface, surface, image)
        if phi is not None:
            out.append(_as_permutation(surface, phi))
    return out


def rotation_group(surface: TiledSurface) -> PermutationGroup:
    auts = automorphisms(surface)
    group = PermutationGroup(auts, degree=surface.num_pairs)
    assert group.order() == len(auts), "automorphisms are not closed under composition"
    return group


def is_rotary(surface: TiledSurface) -> bool:
    group = rotation_group(surface)
    by_order = group.order() == surface.num_pairs
    by_orbit = group.is_transitive()
    assert by_order == by_orbit
    return by_order


def is_reflexible(surface: TiledSurface) -> bool:
    """Whether some orientation reversing automorphism exists."""
    return any(_propagate(surface, surface, image, reverse=True) is not None for image in surface.pairs())


def find_isomorphism(source: TiledSurface, target: TiledSurface) -> dict | None:
    """An orientation preserving map isomorphism as a dict on pairs, if one exists."""
    if source.p != target.p or source.m != target.m:
        return None
    for image in target.pairs():
        phi = _propagate(source, target, image)
        if phi is not None:
            return phi
    return None
