"""Family audit, crossing check, and the assembled asphericity verdict."""
from relartin.defining_graph import DefiningGraph, SubgraphFamily
from relartin.girth_checker import CertificationReport, LinkCertificate
from relartin.kpi1_checker import (
    audit_family,
    kpi1_verdict,
    verify_no_large_crossing_spherical,
)
from relartin.poset_complex import SubsetPoset, build_S_bar

from instances import affine_parts_join, single_interedge, touching_triple_control


def unknown_part_instance():
    # the 4-vertex part carries a spherical triangle and a non-spherical
    # 4-clique, so it lands in none of the recognized classes
    g = DefiningGraph.build(
        ["p", "q", "r", "s", "t"],
        [
            ("p", "q", 3),
            ("q", "r", 3),
            ("r", "s", 3),
            ("p", "s", 3),
            ("q", "s", 3),
            ("p", "r", 2),
            ("t", "p", 4),
            ("t", "q", 4),
            ("t", "r", 4),
            ("t", "s", 4),
        ],
    )
    return g, SubgraphFamily.build(g, [["p", "q", "r", "s"], ["t"]])


def test_audit_family_passes_on_the_join():
    g, fam = affine_parts_join()
    audit = audit_family(build_S_bar(g, fam), g, fam)
    assert audit.condition1_ok and audit.condition1_witness is None
    assert audit.condition3_ok and audit.condition3_witness is None
    assert audit.overall == "pass"
    assert [(p.provenance, p.which) for p in audit.parts] == [
        ("known-class", "affine")
    ] * 2


def test_audit_family_reports_witnesses():
    g, fam = single_interedge()
    poset = SubsetPoset.from_tagged(
        [(frozenset(), "empty"), (frozenset("ab"), "inter-edge")]
    )
    audit = audit_family(poset, g, fam)
    assert not audit.condition1_ok
    assert audit.condition1_witness == (frozenset("a"), frozenset("ab"))
    assert not audit.condition3_ok
    assert audit.condition3_witness == frozenset("a")
    assert audit.overall == "fail"


def test_assertions_upgrade_parts():
    g, fam = unknown_part_instance()
    audit = audit_family(build_S_bar(g, fam), g, fam)
    assert audit.parts[0].provenance == "unknown"
    assert audit.overall == "conditional"
    by_index = audit_family(build_S_bar(g, fam), g, fam, assertions={0})
    assert by_index.parts[0].provenance == "user-asserted"
    key = frozenset(("p", "q", "r", "s"))
    by_set = audit_family(build_S_bar(g, fam), g, fam, assertions={key})
    assert by_set.parts[0].provenance == "user-asserted"
    assert by_set.overall == "pass"
    # a known class is never downgraded to an assertion
    assert by_set.parts[1].provenance == "known-class"


def test_crossing_check():
    g, fam = affine_parts_join()
    verdict = verify_no_large_crossing_spherical(g, fam)
    assert verdict.ok and verdict.checked == 45 and verdict.witnesses == []

    g2, fam2 = touching_triple_control()
    bad = verify_no_large_crossing_spherical(g2, fam2)
    assert not bad.ok
    assert bad.witnesses == [frozenset(("a", "b", "c"))]
    assert bad.checked == 8


def test_kpi1_holds_on_the_join():
    g, fam = affine_parts_join()
    verdict = kpi1_verdict(g, fam)
    assert verdict.applicable and verdict.holds
    assert verdict.status_line == "holds, parts affine"
    machine = [e for e in verdict.evidence if e["kind"] == "machine"]
    citations = [e for e in verdict.evidence if e["kind"] == "citation"]
    assert len(machine) == 6 and all(e["ok"] for e in machine)
    assert len(citations) == 2
    cited = " ".join(e["detail"] for e in citations)
    assert "Godelle-Paris" in cited and "Cartan-Hadamard" in cited
    assert verdict.certification is not None and verdict.certification.ok
    doc = verdict.to_json_dict()
    assert doc["status"] == "holds, parts affine"
    assert set(doc) == {"applicable", "holds", "status", "evidence", "certification"}


def test_kpi1_inapplicable_on_the_control():
    g, fam = touching_triple_control()
    verdict = kpi1_verdict(g, fam)
    assert not verdict.applicable and not verdict.holds
    assert verdict.status_line == "inapplicable: inter-edge label condition fails"
    assert len(verdict.evidence) == 1
    assert sorted(verdict.evidence[0]["detail"]) == ["a-b (m=3)", "b-c (m=3)"]
    assert verdict.certification is None and verdict.audit is None


def test_kpi1_pending_and_asserted_parts():
    g, fam = unknown_part_instance()
    verdict = kpi1_verdict(g, fam)
    assert verdict.holds
    assert verdict.status_line == "reduction established, per-part status pending"
    asserted = kpi1_verdict(g, fam, assertions={0})
    assert asserted.status_line == "holds, parts asserted, spherical"


def test_kpi1_spherical_parts():
    g = DefiningGraph.build(
        ["a", "b", "c", "d"],
        [
            ("a", "b", 3),
            ("c", "d", 3),
            ("a", "c", 4),
            ("a", "d", 4),
            ("b", "c", 4),
            ("b", "d", 4),
        ],
    )
    fam = SubgraphFamily.build(g, [["a", "b"], ["c", "d"]])
    verdict = kpi1_verdict(g, fam)
    assert verdict.holds and verdict.status_line == "holds, parts spherical"


def test_kpi1_reports_machine_failure(monkeypatch):
    # the aggregation path for a failing machine check, driven by a stubbed
    # certification since valid instances never produce one
    stub = CertificationReport(
        ok=False,
        entries=[
            LinkCertificate(
                case="inter-edge",
                descriptor="stub",
                status="FAIL",
                certificate=None,
                members=[],
                stats={},
            )
        ],
    )
    monkeypatch.setattr(
        "relartin.kpi1_checker.certify_link_condition", lambda *a, **k: stub
    )
    g, fam = affine_parts_join()
    verdict = kpi1_verdict(g, fam)
    assert verdict.applicable and not verdict.holds
    assert verdict.status_line == "failed: a machine check did not pass"
    link_evidence = next(
        e for e in verdict.evidence if "link condition" in e["check"]
    )
    assert not link_evidence["ok"]
    assert link_evidence["detail"]["failures"] == ["stub"]
