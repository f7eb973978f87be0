"""Acylindrical hyperbolicity routes: witness triples, rank 3 checks, and
the confined syllable growth tables."""
import pytest

from relartin.acyl_checker import (
    AcylVerdict,
    check_acylindricity,
    check_delta,
    check_hypotheses,
    empirical_orbit_growth,
    find_witness,
    strictly_increasing,
)
from relartin.defining_graph import DefiningGraph, SubgraphFamily
from relartin.dihedral_garside import CapExceeded

from instances import affine_parts_join, single_interedge


def tripartite(edges):
    verts = sorted({v for e in edges for v in e[:2]})
    g = DefiningGraph.build(verts, edges)
    return g, SubgraphFamily.build(g, [[v] for v in verts])


def test_orbit_growth_frozen_tables():
    assert empirical_orbit_growth(3) == [(2, 2), (4, 4), (6, 5), (8, 6)]
    assert empirical_orbit_growth(4) == [(2, 2), (4, 4), (6, 6), (8, 8)]
    # the label 2 plane saturates at two syllables immediately
    assert empirical_orbit_growth(2) == [(2, 2), (4, 2), (6, 2), (8, 2)]
    assert strictly_increasing(empirical_orbit_growth(3))
    assert strictly_increasing(empirical_orbit_growth(4))
    assert not strictly_increasing(empirical_orbit_growth(2))


def test_orbit_growth_small_radii():
    assert empirical_orbit_growth(3, radii=(0, 2)) == [(0, 0), (2, 2)]
    assert empirical_orbit_growth(3, radii=(6,)) == [(6, 5)]
    # radii are sorted before measuring
    assert empirical_orbit_growth(4, radii=(4, 2)) == [(2, 2), (4, 4)]


def test_orbit_growth_nondecreasing_invariant():
    for m in range(2, 7):
        rows = empirical_orbit_growth(m, radii=tuple(range(0, 9)))
        values = [v for _, v in rows]
        assert values == sorted(values)
        assert values[0] == 0


def test_orbit_growth_validation():
    with pytest.raises(ValueError):
        empirical_orbit_growth(1)
    with pytest.raises(ValueError):
        empirical_orbit_growth(3, radii=())
    with pytest.raises(ValueError):
        empirical_orbit_growth(3, radii=(-2,))
    with pytest.raises(CapExceeded) as info:
        empirical_orbit_growth(4, radii=(8,), cap=50)
    assert info.value.cap == 50


def test_strictly_increasing_helper():
    assert strictly_increasing([(2, 1), (4, 2), (6, 3)])
    assert not strictly_increasing([(2, 1), (4, 1)])
    assert strictly_increasing([])


def test_check_delta_on_the_join():
    g, _ = affine_parts_join()
    checks = check_delta(g, ("a1", "a2", "b1"))
    assert checks.connected
    assert checks.two_dimensional
    assert checks.not_right_angled
    assert checks.rank3
    assert checks.all_ok
    doc = checks.to_json_dict()
    assert doc == {
        "connected": True,
        "two_dimensional": True,
        "not_right_angled": True,
        "rank3": True,
    }


def test_check_delta_rejections():
    spherical = DefiningGraph.build(
        ["a", "b", "c"], [("a", "b", 5), ("a", "c", 2), ("b", "c", 3)]
    )
    assert not check_delta(spherical, ("a", "b", "c")).two_dimensional

    raag = DefiningGraph.build(
        ["a", "b", "c"], [("a", "b", 2), ("a", "c", 2), ("b", "c", 2)]
    )
    assert not check_delta(raag, ("a", "b", "c")).not_right_angled

    sparse = DefiningGraph.build(["a", "b", "c"], [("a", "b", 3)])
    checks = check_delta(sparse, ("a", "b", "c"))
    assert not checks.connected and not checks.all_ok


def test_find_witness_ordering():
    g, fam = affine_parts_join()
    edge, s, delta = find_witness(g, fam)
    assert (edge.u, edge.v, edge.label) == ("a1", "a2", 4)
    assert s == "b1"
    assert delta == ("a1", "a2", "b1")

    # the largest label wins over lexicographic position
    g2, fam2 = tripartite([("a", "b", 3), ("b", "c", 5)])
    edge2, s2, _ = find_witness(g2, fam2)
    assert (edge2.u, edge2.v, edge2.label) == ("b", "c", 5)
    assert s2 == "a"


def test_full_pipeline_on_the_join():
    g, fam = affine_parts_join()
    verdict = check_acylindricity(g, fam)
    assert verdict.status == "acyl-hyperbolic-via-witness"
    assert verdict.ok
    assert verdict.witness_edge == ("a1", "a2", 4)
    assert verdict.witness_vertex == "b1"
    assert verdict.orbit_growth == [(2, 2), (4, 4), (6, 6), (8, 8)]
    assert verdict.reasons == ["witness triple satisfies the rank 3 criterion"]
    assert len(verdict.citations) == 2
    assert "Vaskou" in verdict.citations[0]
    assert "cited, not computed" in verdict.citations[1]
    doc = verdict.to_json_dict()
    assert doc["delta"] == ["a1", "a2", "b1"]
    assert doc["orbit_growth"] == [[2, 2], [4, 4], [6, 6], [8, 8]]


def test_free_product_routes():
    g = DefiningGraph.build(["a", "b"], [])
    fam = SubgraphFamily.build(g, [["a"], ["b"]])
    verdict = check_acylindricity(g, fam)
    assert verdict.status == "acyl-hyperbolic-via-free-product"
    assert verdict.ok
    assert "Minasyan-Osin" in verdict.citations[0]

    # a witness edge in its own component: no third neighbour exists
    g2 = DefiningGraph.build(["a", "b", "c"], [("a", "b", 3)])
    fam2 = SubgraphFamily.build(g2, [["a"], ["b"], ["c"]])
    verdict2 = check_acylindricity(g2, fam2)
    assert verdict2.status == "acyl-hyperbolic-via-free-product"
    assert "disconnected" in verdict2.reasons[0]


def test_inapplicable_routes():
    g, fam = affine_parts_join()
    whole = SubgraphFamily.build(g, [sorted(g.vertices)])
    assert check_acylindricity(g, whole).status == "inapplicable"

    g2, fam2 = single_interedge()
    two = check_acylindricity(g2, fam2)
    assert two.status == "inapplicable"
    assert "three generators" in two.reasons[0]

    g3, fam3 = tripartite([("a", "b", 2), ("a", "c", 2), ("b", "c", 2)])
    flat = check_acylindricity(g3, fam3)
    assert flat.status == "inapplicable"
    assert "label 2" in flat.reasons[0]

    gate = check_hypotheses(*affine_parts_join())
    assert gate.status == "hypotheses-pass" and gate.ok


def test_witness_checks_failed_on_a_spherical_triple():
    g, fam = tripartite([("a", "b", 5), ("a", "c", 2), ("b", "c", 3)])
    verdict = check_acylindricity(g, fam)
    assert verdict.status == "witness-checks-failed"
    assert not verdict.ok
    assert verdict.witness_edge == ("a", "b", 5)
    assert verdict.reasons[0] == "the witness triple fails a rank 3 hypothesis"
    assert verdict.delta_checks is not None
    assert not verdict.delta_checks.two_dimensional
