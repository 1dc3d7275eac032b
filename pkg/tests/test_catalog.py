import json

import pytest

from platonic_unfolding import catalog
from platonic_unfolding.catalog import (
    BOLZA_SHIFTS,
    InvalidSize,
    ParseError,
    UnknownName,
    bolza,
    pi_p,
    platonic_solid,
    torus_map,
)
from platonic_unfolding.surface import (
    SchlafliSymbol,
    TiledSurface,
    ValidationError,
    genus,
    is_rotary,
    schlafli,
)
from platonic_unfolding.unfolding import cocycle, k_prime, monodromy_group, unfold

from conftest import CATALOG_NAMES, report, surface


@pytest.mark.parametrize(
    "name, p, q, m",
    [
        ("tetrahedron", 3, 3, 4),
        ("cube", 4, 3, 6),
        ("octahedron", 3, 4, 8),
        ("dodecahedron", 5, 3, 12),
        ("icosahedron", 3, 5, 20),
    ],
)
def test_platonic_solids(name, p, q, m):
    s = platonic_solid(name)
    assert schlafli(s) == SchlafliSymbol(p, q) and s.m == m
    assert genus(s) == 0 and is_rotary(s)


def test_unknown_solid():
    with pytest.raises(UnknownName):
        platonic_solid("torus")
    with pytest.raises(UnknownName):
        catalog.get("nothing")


def test_bolza_faces_and_genus():
    s = bolza()
    assert [g for g, _ in s.adj[0]] == [4, 3, 2, 5, 4, 3, 2, 5]
    assert genus(s) == 2 and schlafli(s) == SchlafliSymbol(8, 3) and is_rotary(s)


def test_bolza_sheet_shifts():
    rho = cocycle(bolza())
    assert [rho[0][a] // 2 for a in range(4)] == [0, 7, 4, 2]  # i, i-1, i-4, i+2 mod 8
    for f in range(6):
        for a in range(8):
            assert rho[f][a] // 2 == BOLZA_SHIFTS[f][a % 4][0] % 8


def test_bolza_unfolding_reproduces_adjacency_listing():
    # sheet i of octagon j is the cover face (j, 2i); edge e of it is slot e - i
    s = bolza()
    u = unfold(s)
    assert u.k == 8
    for i in range(8):
        for j in range(6):
            here = u.index[(j, 2 * i)]
            for e in range(8):
                g, t = u.faces[u.neighbour(here, 2 * e)]
                shift, octagon = BOLZA_SHIFTS[j][(e - i) % 4]
                assert (t // 2, g) == ((i + shift) % 8, octagon)


@pytest.mark.parametrize("p", range(3, 13))
def test_pi_p(p):
    s = pi_p(p)
    assert s.m == (1 if p % 2 == 0 else 2)
    u = unfold(s)
    assert u.k == 1
    assert monodromy_group(u).order() == 1


def test_pi_p_examples():
    assert genus(pi_p(4)) == 1 and pi_p(4).m == 1
    assert genus(pi_p(5)) == 2
    assert genus(pi_p(8)) == 2
    for p in (3, 5, 7, 9, 11):
        assert genus(pi_p(p)) == (p - 1) // 2
    with pytest.raises(InvalidSize):
        pi_p(2)


def test_torus_maps():
    assert torus_map(4, 1) == pi_p(4)
    t = torus_map(4, 2)
    assert t.m == 4 and genus(t) == 1
    for p, b, c, m in [(4, 2, 1, 5), (4, 3, 0, 9), (6, 1, 1, 3), (6, 3, 0, 9), (6, 2, 1, 7)]:
        s = torus_map(p, b, c)
        assert s.m == m and genus(s) == 1 and is_rotary(s)
    assert k_prime(schlafli(torus_map(6, 2, 0))) == 1
    with pytest.raises(InvalidSize):
        torus_map(4, 0, 0)
    with pytest.raises(InvalidSize):
        torus_map(5, 1)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_entries(name):
    entry = catalog.BUILTIN[name]
    entry.check_expected()
    assert report(name).quotient_cyclic


def test_listing():
    rows = {r["name"]: r for r in catalog.listing()}
    assert rows["bolza"] == {"name": "bolza", "p": 8, "q": 3, "faces": 6, "genus": 2}
    assert list(rows) == list(catalog.BUILTIN)


def test_json_round_trip(tmp_path):
    path = tmp_path / "cube.json"
    catalog.save(surface("cube"), path)
    text = path.read_text()
    loaded = catalog.load(path)
    assert loaded == surface("cube")
    assert schlafli(loaded) == SchlafliSymbol(4, 3)
    catalog.save(loaded, path)
    assert path.read_text() == text
    assert json.loads(text)["faces"] == 6


def test_truncated_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(surface("cube").to_json()[:40])
    with pytest.raises(ParseError) as exc:
        catalog.load(path)
    assert exc.value.line is not None


def test_involution_violation(tmp_path):
    data = surface("cube").to_dict()
    data["adj"][0][0] = [0, 0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(ValidationError) as exc:
        catalog.load(path)
    assert (exc.value.invariant, exc.value.face, exc.value.slot) == ("involution", 0, 0)


def test_wrong_shape(tmp_path):
    with pytest.raises(ValidationError):
        catalog.loads('{"p": 4, "faces": 2, "adj": [[[0, 2], [0, 3], [0, 0], [0, 1]]]}')
    with pytest.raises(ParseError):
        catalog.loads("[1, 2]")


def test_user_catalog_dir(tmp_path, monkeypatch):
    catalog.save(pi_p(6), tmp_path / "hexagon.json")
    monkeypatch.setenv(catalog.CATALOG_DIR_ENV, str(tmp_path))
    assert "hexagon" in catalog.entries()
    assert catalog.get("hexagon") == pi_p(6)
    assert catalog.listing()[-1]["name"] == "hexagon"
