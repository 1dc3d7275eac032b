import math

import pytest
from hypothesis import given, settings

from platonic_unfolding.permgroup import PermutationGroup
from platonic_unfolding.surface import SchlafliSymbol, TiledSurface, schlafli, vertex_degrees, vertex_orbits
from platonic_unfolding.unfolding import (
    cocycle,
    deck_transformations,
    holonomy_degree,
    holonomy_generator,
    k_prime,
    k_prime_table,
    monodromy,
    monodromy_generators,
    monodromy_group,
    unfold,
)

from conftest import CATALOG_NAMES, surface, unfolded
from strategies import relabel_slots, surfaces

TORUS = TiledSurface(4, [[(0, 2), (0, 3), (0, 0), (0, 1)]])


def test_cocycle_examples():
    assert cocycle(TORUS).table == ((0, 0, 0, 0),)
    for name in ("tetrahedron", "octahedron", "icosahedron", "bolza-dual"):
        assert all(v % 2 == 1 for row in cocycle(surface(name)).table for v in row)
    cube = cocycle(surface("cube"))
    assert all(v in (0, 2, 4, 6) for row in cube.table for v in row)


def test_cube_cocycle_by_hand():
    s = surface("cube")
    expected = [[(2 * (a - b) - 4) % 8 for a, (_, b) in enumerate(row)] for row in s.adj]
    assert [list(r) for r in cocycle(s).table] == expected


def test_k_prime_examples():
    assert k_prime(SchlafliSymbol(5, 3)) == 10
    assert k_prime(SchlafliSymbol(8, 3)) == 8
    assert k_prime(SchlafliSymbol(6, 3)) == 1
    assert k_prime(SchlafliSymbol(4, 3)) == 4


def k_prime_by_search(p, q):
    # cone angle q(p-2)/p pi in units of pi/p is q(p-2); need k q(p-2) in 2p Z
    k = 1
    while k * q * (p - 2) % (2 * p):
        k += 1
    return k


@pytest.mark.parametrize("p", range(3, 31))
def test_k_prime_by_search(p):
    for q in range(3, 31):
        sym = SchlafliSymbol(p, q)
        assert k_prime(sym) == k_prime_table(sym) == k_prime_by_search(p, q)


def test_unfold_examples():
    u = unfold(TORUS)
    assert u.k == 1 and u.faces == [(0, 0)]
    assert unfolded("dodecahedron").k == 10
    assert unfolded("bolza").k == 8


@pytest.mark.parametrize("name", ["octahedron", "tetrahedron"])
def test_open_cases_agree_with_loop_oracle(name):
    u = unfolded(name)
    assert u.k == holonomy_degree(surface(name))
    p = surface(name).p
    allowed = {k for k in range(1, 2 * p + 1) if (2 * p) % k == 0 and k % k_prime(schlafli(surface(name))) == 0}
    assert u.k in allowed


def test_monodromy_generator_counts():
    gens = monodromy_generators(unfolded("bolza"))
    assert len(gens) == 4 and all(g.degree == 48 for g in gens)
    gens = monodromy_generators(unfolded("dodecahedron"))
    assert len(gens) == 4 and all(g.degree == 60 for g in gens)
    gens = monodromy_generators(unfold(TORUS))
    assert len(gens) == 2 and all(g.degree == 1 and g.is_identity() for g in gens)


def test_monodromy_group_examples():
    assert monodromy_group(unfolded("dodecahedron")).order() == 60
    assert monodromy_group(unfolded("bolza")).order() == 48
    assert monodromy_group(unfolded("icosahedron")).order() == 60
    assert monodromy_group(unfolded("bolza")).is_transitive()


def test_bolza_monodromy_is_transitive_by_search():
    gens = monodromy_generators(unfolded("bolza"))
    seen, frontier = {0}, [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            for y in (g(x), g.inverse()(x)):
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    assert seen == set(range(48))


def test_deck_transformation_examples():
    assert [d.is_identity() for d in deck_transformations(unfold(TORUS))] == [True]
    cube = deck_transformations(unfolded("cube"))
    assert len(cube) == 24
    assert PermutationGroup(cube).order() == 24
    bolza = deck_transformations(unfolded("bolza"))
    assert len(bolza) == 48
    sheets = monodromy(unfolded("bolza")).sheets
    assert len(sheets) == 48
    assert PermutationGroup(bolza).order() == monodromy_group(unfolded("bolza")).order() == 48


def test_deck_transformations_commute_with_monodromy():
    u = unfolded("dodecahedron")
    setup = monodromy(u)
    pos = {face: s for s, face in enumerate(setup.sheets)}
    for d in deck_transformations(u):
        on_sheets = [pos[d(face)] for face in setup.sheets]
        for g in setup.generators:
            assert all(on_sheets[g(s)] == g(on_sheets[s]) for s in range(setup.n))


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_unfolding_invariants(name):
    s = surface(name)
    u = unfolded(name)
    p, m, k = s.p, s.m, u.k
    sym = schlafli(s)
    assert k == holonomy_degree(s)
    assert k % k_prime(sym) == 0
    assert k <= (p if p % 2 == 0 else 2 * p)
    h = holonomy_generator(s)
    assert sym.q * (p - 2) % h == 0
    for f in range(m):
        ts = u.classes(f)
        assert len(ts) == k and len({t % h for t in ts}) == 1
    setup = monodromy(u)
    assert setup.n == (k * m if p % 2 == 0 else k * m // 2)
    G = monodromy_group(u)
    assert G.is_transitive() and G.order() == setup.n
    for deg in vertex_degrees(u.as_surface()):
        assert deg * (p - 2) % (2 * p) == 0
        assert (deg * (p - 2) // p) % 2 == 0


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron", "icosahedron", "dodecahedron", "pi-5"])
def test_odd_crossings_pair_polygons(name):
    u = unfolded(name)
    sheets = monodromy(u).sheets
    for j in range(u.p):
        images = [u.neighbour(x, 2 * j) for x in sheets]
        assert len(set(images)) == len(sheets)
        assert not any(u.is_polygon_a(y) for y in images)


def test_even_generators_invert_opposite_class():
    u = unfolded("cube")
    sheets = monodromy(u).sheets
    pos = {x: i for i, x in enumerate(sheets)}
    for j in range(u.p // 2):
        fwd = [pos[u.neighbour(x, 2 * j)] for x in sheets]
        back = [pos[u.neighbour(x, 2 * (j + u.p // 2))] for x in sheets]
        assert all(back[fwd[i]] == i for i in range(len(sheets)))


def test_cube_slot_conventions_agree():
    cube = surface("cube")
    for offsets in ([1, 0, 0, 0, 0, 0], [1, 2, 3, 0, 1, 2], [3, 3, 3, 3, 3, 3]):
        other = relabel_slots(cube, offsets)
        u = unfold(other)
        assert u.k == 4
        assert monodromy_group(u).order() == 24


@settings(max_examples=80, deadline=None)
@given(surfaces())
def test_random_cocycles_and_holonomy(s):
    rho = cocycle(s)
    p = s.p
    for f, a in s.pairs():
        g, b = s.alpha(f, a)
        assert (rho[f][a] + rho[g][b]) % (2 * p) == 0
        assert rho[f][a] % 2 == p % 2
    u = unfold(s)
    assert u.k == holonomy_degree(s)
    h = holonomy_generator(s)
    for cyc in vertex_orbits(s):
        assert len(cyc) * (p - 2) % h == 0
    # the unfolding is a cover: every face has k lifts forming a coset
    for f in range(s.m):
        ts = u.classes(f)
        assert len(ts) == u.k and len({t % h for t in ts}) == 1
    assert len(u.faces) == u.k * s.m
