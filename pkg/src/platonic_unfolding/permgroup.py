"""
Permutations and permutation groups.

Permutations act on ``0..n-1`` from the left as functions, but products are
written left to right: ``(g * h)(x) == h(g(x))``, i.e. apply ``g`` first.  This
is the convention of GAP and Sage, so cycle listings can be compared directly.

Groups carry a base and strong generating set built by a deterministic
Schreier-Sims procedure.  Base points are taken as the smallest point moved by
the element that forces a new level, so identical inputs always give
identical internal chains.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class DegreeMismatch(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


class Permutation:
    """A bijection of ``range(degree)`` stored as its image array."""

    __slots__ = ("_img",)

    def __init__(self, images: Iterable[int], check: bool = True):
        img = tuple(int(i) for i in images)
        if check and sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation: {img!r}")
        self._img = img

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, cycles, degree: int | None = None) -> "Permutation":
        """Build from a cycle string ``"(0 19 21)(1 18 4)"`` or a list of tuples.

        Commas are accepted as separators, so a Python-style listing
        ``[(0, 19, 21), (1, 18, 4)]`` parses too.
        """
        if isinstance(cycles, str):
            cycles = _parse_cycle_string(cycles)
        cycles = [tuple(int(x) for x in c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=-1) + 1
        n = top if degree is None else degree
        if top > n:
            raise DegreeMismatch(f"cycle point {top - 1} outside degree {n}")
        img = list(range(n))
        seen = set()
        for c in cycles:
            for x in c:
                if x in seen:
                    raise ValueError(f"point {x} appears in two cycles")
                seen.add(x)
            for i, x in enumerate(c):
                img[x] = c[(i + 1) % len(c)]
        return cls(img, check=False)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return self._img

    def __call__(self, x: int) -> int:
        return self._img[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DegreeMismatch(f"{self.degree} != {other.degree}")
        o = other._img
        return Permutation([o[i] for i in self._img], check=False)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, j in enumerate(self._img):
            inv[j] = i
        return Permutation(inv, check=False)

    __invert__ = inverse

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(e)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def smallest_moved_point(self) -> int | None:
        for i, j in enumerate(self._img):
            if i != j:
                return i
        return None

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point, sorted."""
        seen = [False] * len(self._img)
        out = []
        for i in range(len(self._img)):
            if seen[i] or self._img[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self._img[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self._img[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self):
        return hash(self._img)

    def __repr__(self):
        return f"Permutation.from_cycles({self.cycle_string()!r}, degree={self.degree})"

    def __str__(self):
        return self.cycle_string()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycle_string(s: str) -> list[tuple[int, ...]]:
    s = s.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    leftover = _CYCLE_RE.sub("", s).replace(",", "").strip()
    if leftover:
        raise ValueError(f"could not parse permutation {s!r}")
    cycles = []
    for body in _CYCLE_RE.findall(s):
        pts = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        if pts:
            cycles.append(tuple(int(t) for t in pts))
    return cycles


@dataclass
class _Level:
    point: int
    gens: list[Permutation]
    # transversal[x] maps the base point to x, or None when x is outside the orbit
    transversal: list[Permutation | None]
    orbit: list[int]
    tested: set


class PermutationGroup:
    """A permutation group with a base and strong generating set."""

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for an empty generator list")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self._identity = Permutation.identity(degree)
        self._levels: list[_Level] = []
        self._schreier_sims()

    # -- chain construction ------------------------------------------------

    def _new_level(self, point: int) -> _Level:
        trans: list[Permutation | None] = [None] * self.degree
        trans[point] = self._identity
        return _Level(point, [], trans, [point], set())

    def _extend_orbit(self, level: _Level) -> None:
        queue = deque(level.orbit)
        while queue:
            x = queue.popleft()
            ux = level.transversal[x]
            for s in level.gens:
                y = s(x)
                if level.transversal[y] is None:
                    level.transversal[y] = ux * s
                    level.orbit.append(y)
                    queue.append(y)

    def _strip(self, g: Permutation, start: int) -> tuple[Permutation, int]:
        h = g
        for j in range(start, len(self._levels)):
            lev = self._levels[j]
            u = lev.transversal[h(lev.point)]
            if u is None:
                return h, j
            h = h * u.inverse()
        return h, len(self._levels)

    def _add_strong_generator(self, h: Permutation, upto: int) -> None:
        if upto == len(self._levels):
            self._levels.append(self._new_level(h.smallest_moved_point()))
        for lev in self._levels[: upto + 1]:
            if all(h(b) == b for b in self._base_before(lev)):
                lev.gens.append(h)
                self._extend_orbit(lev)

    def _base_before(self, lev: _Level) -> list[int]:
        out = []
        for other in self._levels:
            if other is lev:
                return out
            out.append(other.point)
        return out

    def _schreier_sims(self) -> None:
        for g in self.generators:
            if g.is_identity():
                continue
            if all(g(lev.point) == lev.point for lev in self._levels):
                self._levels.append(self._new_level(g.smallest_moved_point()))
        if not self._levels:
            return
        for g in self.generators:
            if not g.is_identity():
                for lev in self._levels:
                    if all(g(b) == b for b in self._base_before(lev)):
                        lev.gens.append(g)
        for lev in self._levels:
            self._extend_orbit(lev)

        i = len(self._levels) - 1
        while i >= 0:
            lev = self._levels[i]
            restarted = False
            for x in list(lev.orbit):
                ux = lev.transversal[x]
                for si, s in enumerate(lev.gens):
                    key = (x, si)
                    if key in lev.tested:
                        continue
                    y = s(x)
                    schreier = ux * s * lev.transversal[y].inverse()
                    h, j = self._strip(schreier, i + 1)
                    if h.is_identity():
                        lev.tested.add(key)
                        continue
                    self._add_strong_generator(h, j)
                    i = j
                    restarted = True
                    break
                if restarted:
                    break
            if not restarted:
                i -= 1

    # -- queries -------------------------------------------------------------

    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self._levels]

    def strong_generators(self) -> list[Permutation]:
        out: list[Permutation] = []
        for lev in self._levels:
            for g in lev.gens:
                if g not in out:
                    out.append(g)
        return out

    def transversal_sizes(self) -> list[int]:
        return [len(lev.orbit) for lev in self._levels]

    def order(self) -> int:
        return math.prod(self.transversal_sizes())

    def __len__(self) -> int:
        return self.order()

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(f"element of degree {g.degree}, group of degree {self.degree}")
        h, j = self._strip(g, 0)
        return j == len(self._levels) and h.is_identity()

    __contains__ = contains

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once, as products of transversal elements."""

        def rec(j: int, acc: Permutation):
            if j < 0:
                yield acc
                return
            for x in self._levels[j].orbit:
                yield from rec(j - 1, acc * self._levels[j].transversal[x])

        yield from rec(len(self._levels) - 1, self._identity)

    def orbit(self, point: int) -> set[int]:
        seen = {point}
        queue = deque([point])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        if other.degree != self.degree:
            raise DegreeMismatch(f"{self.degree} != {other.degree}")
        return all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: "PermutationGroup") -> bool:
        if not self.is_subgroup_of(other):
            raise NotASubgroup("some generator is not an element of the ambient group")
        return all(
            self.contains(g.inverse() * n * g)
            for g in other.generators
            for n in self.generators
        )

    def __eq__(self, other):
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    __hash__ = None

    def __repr__(self):
        return f"<PermutationGroup of degree {self.degree} and order {self.order()}>"


def naive_closure(generators: Sequence[Permutation], degree: int | None = None) -> set[Permutation]:
    """All elements of the generated group by breadth-first closure."""
    if degree is None:
        degree = generators[0].degree
    e = Permutation.identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in generators:
            y = x * g
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


@dataclass(frozen=True)
class QuotientGroup:
    """A small group given by a multiplication table on coset indices.

    ``representatives[i]`` is an element of the coset ``i``; coset 0 is the
    subgroup itself.
    """

    representatives: tuple[Permutation, ...]
    table: tuple[tuple[int, ...], ...]

    def order(self) -> int:
        return len(self.representatives)

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def element_orders(self) -> list[int]:
        return [self.element_order(i) for i in range(self.order())]

    def is_cyclic(self) -> bool:
        return self.order() in self.element_orders()


def quotient_by_normal(G: PermutationGroup, N: PermutationGroup) -> QuotientGroup:
    if not N.is_normal_in(G):
        raise NotNormal("subgroup is not normal")

    reps: list[Permutation] = [G._identity]

    def coset_of(x: Permutation) -> int | None:
        for i, r in enumerate(reps):
            if N.contains(x * r.inverse()):
                return i
        return None

    queue = deque([0])
    while queue:
        i = queue.popleft()
        for g in G.generators:
            y = reps[i] * g
            if coset_of(y) is None:
                reps.append(y)
                queue.append(len(reps) - 1)

    table = tuple(tuple(coset_of(a * b) for b in reps) for a in reps)
    return QuotientGroup(tuple(reps), table)


def is_cyclic(Q) -> bool:
    """Cyclicity of a :class:`QuotientGroup` or a :class:`PermutationGroup`."""
    if isinstance(Q, QuotientGroup):
        return Q.is_cyclic()
    n = Q.order()
    return any(g.order() == n for g in Q.elements())
