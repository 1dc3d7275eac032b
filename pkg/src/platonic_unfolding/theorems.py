"""
Checks relating the monodromy of the unfolding to the rotation group.

Every deck transformation of the unfolding over Pi_p preserves absolute
directions, so it descends to a permutation of the pairs of the base surface:
face ``f`` goes to the face under the image and every slot is shifted by half
the change of rotation class.  The induced permutations form the subgroup N
of the rotation group.

Two kinds of failure are kept apart.  Internal consistency conditions are
``assert``-ed, because they only fail on a bug.  Statements about surfaces in
general are recorded as flags of a :class:`VerificationReport`, since a
counterexample is a legitimate outcome of the audit.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass

from .permgroup import Permutation, PermutationGroup, is_cyclic, quotient_by_normal
from .surface import SchlafliSymbol, TiledSurface, is_rotary, rotation_group, schlafli
from .unfolding import UnfoldedSurface, deck_transformations, k_prime, monodromy_group, unfold


class ProjectionInconsistent(RuntimeError):
    pass


class NotInRotationGroup(RuntimeError):
    pass


class NotRotary(ValueError):
    pass


def mon_order_lower_bound(sym: SchlafliSymbol, m: int) -> int:
    """Lower bound for the order of the monodromy group, by parity of p and q."""
    p, q, d = sym.p, sym.q, sym.d
    halved = (p % 2 == 1 and q % 2 == 0) or (p % 4 == 2 and q % 2 == 1)
    return m * p // (2 * d) if halved else m * p // d


def quotient_order_upper_bound(sym: SchlafliSymbol) -> int:
    """Upper bound for the order of the cyclic quotient, by parity of p and q."""
    p, q, d = sym.p, sym.q, sym.d
    doubled = (p % 2 == 1 and q % 2 == 0) or (p % 4 == 2 and q % 2 == 1)
    return 2 * d if doubled else d


def gcd1_hypothesis(sym: SchlafliSymbol) -> bool:
    p, q = sym.p, sym.q
    if math.gcd(p, q) != 1:
        return False
    return p % 4 == 0 or q % 4 == 0 or (p % 2 == 1 and q % 2 == 1)


def project_deck_transformation(u: UnfoldedSurface, delta: Permutation) -> Permutation:
    """The pair permutation of the base surface induced by a deck transformation."""
    base = u.base
    p = base.p
    image: dict[tuple[int, int], tuple[int, int]] = {}
    for i, (f, t) in enumerate(u.faces):
        g, s = u.faces[delta(i)]
        if (t - s) % 2:
            raise ProjectionInconsistent(f"cover face {i} changes polygon of Pi_p")
        shift = ((t - s) % (2 * p)) // 2
        for a in range(p):
            target = (g, (a + shift) % p)
            if image.setdefault((f, a), target) != target:
                raise ProjectionInconsistent(f"pair {(f, a)} has two images depending on the lift")
    return Permutation([base.index(*image[x]) for x in base.pairs()])


@dataclass(frozen=True)
class InducedSubgroup:
    group: PermutationGroup
    elements: tuple[Permutation, ...]


def induced_subgroup(u: UnfoldedSurface, rot: PermutationGroup) -> PermutationGroup:
    return _induced(u, rot).group


def _induced(u: UnfoldedSurface, rot: PermutationGroup) -> InducedSubgroup:
    decks = deck_transformations(u)
    elements = tuple(project_deck_transformation(u, d) for d in decks)
    for x in elements:
        if not rot.contains(x):
            raise NotInRotationGroup(x.cycle_string())
    group = PermutationGroup(elements, degree=u.base.num_pairs)
    assert group.order() == len(decks) == len(set(elements)), "deck group does not embed"
    return InducedSubgroup(group, elements)


def direction_preserving_rotations(u: UnfoldedSurface, rot: PermutationGroup) -> list[Permutation]:
    """Rotations of the base lifting to maps of the unfolding that keep directions.

    A rotation moving face ``f`` to ``g`` and shifting its slots by ``c``
    lifts as ``(f, t) -> (g, t - 2c)``; it is kept when this maps the set of
    cover faces into itself.  Brute force over all of ``rot``.
    """
    base = u.base
    p = base.p
    cover = set(u.faces)
    out = []
    for r in rot.elements():
        lifted = set()
        for f, t in u.faces:
            g, b = base.pair(r(base.index(f, 0)))
            lifted.add((g, (t - 2 * b) % (2 * p)))
        if lifted == cover:
            out.append(r)
    return out


@dataclass
class VerificationReport:
    p: int
    q: int | None
    m: int
    d: int | None = None
    k_prime: int | None = None
    k: int | None = None
    n: int | None = None
    mon_order: int | None = None
    rot_order: int | None = None
    n_order: int | None = None
    quotient_order: int | None = None
    table2_entry: int | None = None
    table3_entry: int | None = None
    rotary: bool = False
    k_prime_divides_k: bool | None = None
    k_bound_ok: bool | None = None
    mon_order_formula_ok: bool | None = None
    rot_order_mp_ok: bool | None = None
    n_is_subgroup: bool | None = None
    n_normal: bool | None = None
    quotient_cyclic: bool | None = None
    table2_lower_bound_ok: bool | None = None
    table3_upper_bound_ok: bool | None = None
    gcd1_hypothesis_holds: bool | None = None
    gcd1_conclusion_holds: bool | None = None
    projection_well_defined: bool | None = None

    # gcd1_hypothesis_holds is a classification, not a check
    CHECKS = (
        "rotary",
        "k_prime_divides_k",
        "k_bound_ok",
        "mon_order_formula_ok",
        "rot_order_mp_ok",
        "n_is_subgroup",
        "n_normal",
        "quotient_cyclic",
        "table2_lower_bound_ok",
        "table3_upper_bound_ok",
        "gcd1_conclusion_holds",
        "projection_well_defined",
    )

    def failed(self) -> list[str]:
        return [name for name in self.CHECKS if getattr(self, name) is False]

    def all_passed(self) -> bool:
        return not self.failed()

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_table(self) -> str:
        width = max(len(f.name) for f in dataclasses.fields(self))
        lines = []
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if value is None:
                shown = "-"
            elif isinstance(value, bool):
                shown = "ok" if value else "FAIL"
                if f.name == "gcd1_hypothesis_holds":
                    shown = "yes" if value else "no"
            else:
                shown = str(value)
            lines.append(f"{f.name:<{width}}  {shown}")
        return "\n".join(lines) + "\n"


@dataclass
class _Context:
    surface: TiledSurface
    sym: SchlafliSymbol
    unfolded: UnfoldedSurface
    mon: PermutationGroup
    rot: PermutationGroup
    induced: InducedSubgroup | None
    projection_ok: bool


def _context(surface: TiledSurface) -> _Context:
    sym = schlafli(surface)
    rot = rotation_group(surface)
    if rot.order() != surface.num_pairs:
        raise NotRotary(f"rotation group of order {rot.order()} is not transitive on {surface.num_pairs} pairs")
    u = unfold(surface)
    mon = monodromy_group(u)
    try:
        induced = _induced(u, rot)
        projection_ok = True
    except (ProjectionInconsistent, NotInRotationGroup):
        induced, projection_ok = None, False
    return _Context(surface, sym, u, mon, rot, induced, projection_ok)


def _blank(surface: TiledSurface, ctx: _Context) -> VerificationReport:
    return VerificationReport(p=surface.p, q=ctx.sym.q, m=surface.m, d=ctx.sym.d, rotary=True)


def _fill_main(report: VerificationReport, ctx: _Context) -> None:
    report.projection_well_defined = ctx.projection_ok
    report.rot_order = ctx.rot.order()
    report.mon_order = ctx.mon.order()
    if ctx.induced is None:
        report.n_is_subgroup = False
        return
    N = ctx.induced.group
    report.n_order = N.order()
    report.n_is_subgroup = N.is_subgroup_of(ctx.rot)
    report.n_normal = N.is_normal_in(ctx.rot)
    if report.n_normal:
        Q = quotient_by_normal(ctx.rot, N)
        report.quotient_order = Q.order()
        report.quotient_cyclic = is_cyclic(Q)
        assert Q.order() * N.order() == ctx.rot.order()
        p, k = ctx.surface.p, ctx.unfolded.k
        assert Q.order() == (p // k if p % 2 == 0 else 2 * p // k)


def _fill_bounds(report: VerificationReport, ctx: _Context) -> None:
    p, m, k = ctx.surface.p, ctx.surface.m, ctx.unfolded.k
    report.k_prime = k_prime(ctx.sym)
    report.k = k
    report.n = ctx.mon.degree
    report.mon_order = ctx.mon.order()
    report.rot_order = ctx.rot.order()
    report.k_prime_divides_k = k % report.k_prime == 0
    report.k_bound_ok = report.k_prime <= k <= (p if p % 2 == 0 else 2 * p)
    expected = k * m if p % 2 == 0 else k * m // 2
    report.mon_order_formula_ok = report.mon_order == expected
    report.rot_order_mp_ok = report.rot_order == m * p
    report.table2_entry = mon_order_lower_bound(ctx.sym, m)
    report.table3_entry = quotient_order_upper_bound(ctx.sym)
    report.table2_lower_bound_ok = report.mon_order >= report.table2_entry
    if ctx.induced is not None:
        quotient = report.rot_order // ctx.induced.group.order()
        report.table3_upper_bound_ok = quotient <= report.table3_entry


def _fill_gcd1(report: VerificationReport, ctx: _Context) -> None:
    report.gcd1_hypothesis_holds = gcd1_hypothesis(ctx.sym)
    if report.gcd1_hypothesis_holds:
        same_order = ctx.mon.order() == ctx.rot.order()
        report.gcd1_conclusion_holds = (
            same_order and ctx.induced is not None and ctx.induced.group == ctx.rot
        )


def verify_main_theorem(surface: TiledSurface) -> VerificationReport:
    ctx = _context(surface)
    report = _blank(surface, ctx)
    _fill_main(report, ctx)
    return report


def verify_bounds(surface: TiledSurface) -> VerificationReport:
    ctx = _context(surface)
    report = _blank(surface, ctx)
    _fill_bounds(report, ctx)
    return report


def verify_gcd1(surface: TiledSurface) -> VerificationReport:
    ctx = _context(surface)
    report = _blank(surface, ctx)
    _fill_gcd1(report, ctx)
    return report


def full_report(surface: TiledSurface) -> VerificationReport:
    """Every check on one surface.

    Surfaces with non-constant vertex degree or a rotation group that is not
    transitive on pairs get ``rotary = False`` and nothing else.
    """
    try:
        sym = schlafli(surface)
    except ValueError:
        sym = None
    if sym is None or not is_rotary(surface):
        return VerificationReport(
            p=surface.p,
            q=sym.q if sym else None,
            m=surface.m,
            d=sym.d if sym else None,
            rotary=False,
        )
    ctx = _context(surface)
    report = _blank(surface, ctx)
    _fill_main(report, ctx)
    _fill_bounds(report, ctx)
    _fill_gcd1(report, ctx)
    return report
