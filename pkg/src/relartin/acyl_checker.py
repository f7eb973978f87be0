"""Acylindrical hyperbolicity checks for graphs split into parts.

Two routes are mechanized.  With no inter-edges the group splits as a free
product of the part groups, and a free product of two infinite groups is
acylindrically hyperbolic (Minasyan-Osin).  Otherwise we look for an
inter-edge e with label at least 3 together with a third generator adjacent
to an endpoint of e; the triple spans a rank 3, 2-dimensional, connected
defining graph, which places the instance in Vaskou's criterion.  The part
of that criterion that is genuinely infinite (weak malnormality of the edge
subgroup, A_e meeting its conjugates trivially) is recorded as a citation,
never as a computation.

As empirical corroboration we measure syllable growth in the dihedral
group of the witness edge: the maximum, over the word-metric ball of a
given radius, of the least number of generator blocks needed to spell an
element by paths inside the enumerated ball.  Strict growth of that
statistic across radii is the signature of an unbounded orbit for the
syllable quasi-action.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import coxeter
from .defining_graph import DefiningGraph, InterEdge, SubgraphFamily, inter_edges
from .dihedral_garside import CapExceeded, DihedralGroupCtx, ball_levels


@dataclass
class DeltaChecks:
    connected: bool
    two_dimensional: bool
    not_right_angled: bool
    rank3: bool

    @property
    def all_ok(self) -> bool:
        return self.connected and self.two_dimensional and self.not_right_angled and self.rank3

    def to_json_dict(self) -> dict:
        return {
            "connected": self.connected,
            "two_dimensional": self.two_dimensional,
            "not_right_angled": self.not_right_angled,
            "rank3": self.rank3,
        }


def check_delta(graph: DefiningGraph, delta: tuple[str, str, str]) -> DeltaChecks:
    """Hypotheses of the rank 3 criterion on the induced triple."""
    verts = sorted(set(delta))
    labels = {
        frozenset((u, v)): graph.label(u, v)
        for i, u in enumerate(verts)
        for v in verts[i + 1 :]
        if graph.label(u, v) is not None
    }
    # connectivity of a 3-vertex graph: two edges spanning all vertices
    covered = set().union(*labels) if labels else set()
    return DeltaChecks(
        connected=len(labels) >= 2 and covered == set(verts),
        two_dimensional=not coxeter.is_spherical(graph, verts),
        not_right_angled=any(m >= 3 for m in labels.values()),
        rank3=len(set(delta)) == 3,
    )


def find_witness(
    graph: DefiningGraph, family: SubgraphFamily
) -> tuple[InterEdge, str, tuple[str, str, str]] | None:
    """Deterministic witness search: inter-edges by label descending then
    lexicographic, third vertex lexicographic among neighbours of the
    endpoints."""
    ies = [e for e in inter_edges(graph, family) if e.label >= 3]
    ies.sort(key=lambda e: (-e.label, e.u, e.v))
    for e in ies:
        candidates = sorted(
            v
            for v in graph.vertices
            if v != e.u and v != e.v and (graph.has_edge(v, e.u) or graph.has_edge(v, e.v))
        )
        if candidates:
            s = candidates[0]
            return e, s, (e.u, e.v, s)
    return None


def _confined_syllable_max(ctx: DihedralGroupCtx, members: set) -> int:
    """Least block count per element among words whose prefixes all stay in
    ``members``, maximised over the set.

    0/1 breadth-first search over (element, last letter) states: a
    same-letter step extends the current block for free, a letter change
    opens a new block at cost 1.  Confinement makes the value an upper
    bound for the true syllable length, exact whenever some
    minimal-syllable word stays inside the set.
    """
    start = (ctx.identity, None)
    cost = {start: 0}
    dq = deque([start])
    while dq:
        el, last = dq.popleft()
        c = cost[(el, last)]
        for g in (ctx.a, ctx.b):
            step = 0 if g == last else 1
            for sign in (1, -1):
                nxt = ctx.mult_gen(el, g, sign)
                if nxt not in members:
                    continue
                state = (nxt, g)
                if cost.get(state, c + step + 1) <= c + step:
                    continue
                cost[state] = c + step
                if step == 0:
                    dq.appendleft(state)
                else:
                    dq.append(state)
    syll: dict = {}
    for (el, _last), c in cost.items():
        if el not in syll or c < syll[el]:
            syll[el] = c
    return max(syll.values())


def empirical_orbit_growth(
    m: int, radii: tuple[int, ...] = (2, 4, 6, 8), cap: int = 10**6
) -> list[tuple[int, int]]:
    """Maximum observed syllable length per radius in the dihedral group
    with label m.

    For each radius the word-metric ball is enumerated and each element is
    charged the fewest generator blocks needed to spell it by a word whose
    prefixes stay in that ball.
    """
    if m < 2:
        raise ValueError("dihedral label must be >= 2")
    if not radii or any(r < 0 for r in radii):
        raise ValueError("radii must be non-negative")
    ctx = DihedralGroupCtx("a", "b", m)
    rows = []
    for r in sorted(radii):
        levels, truncated = ball_levels(ctx, r, cap)
        if truncated:
            raise CapExceeded(
                requested_radius=r,
                completed_radius=len(levels) - 1,
                count=sum(len(l) for l in levels),
                cap=cap,
            )
        members = {el for level in levels for el in level}
        rows.append((r, _confined_syllable_max(ctx, members)))
    return rows


def strictly_increasing(rows: list[tuple[int, int]]) -> bool:
    vals = [v for _, v in rows]
    return all(x < y for x, y in zip(vals, vals[1:]))


@dataclass
class AcylVerdict:
    status: str  # acyl-hyperbolic-via-witness | acyl-hyperbolic-free-product | inapplicable
    ok: bool
    reasons: list[str]
    witness_edge: tuple[str, str, int] | None
    witness_vertex: str | None
    delta: tuple[str, str, str] | None
    delta_checks: DeltaChecks | None
    orbit_growth: list[tuple[int, int]] | None
    citations: list[str]

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "ok": self.ok,
            "reasons": self.reasons,
            "witness_edge": list(self.witness_edge) if self.witness_edge else None,
            "witness_vertex": self.witness_vertex,
            "delta": list(self.delta) if self.delta else None,
            "delta_checks": self.delta_checks.to_json_dict() if self.delta_checks else None,
            "orbit_growth": [list(r) for r in self.orbit_growth] if self.orbit_growth else None,
            "citations": self.citations,
        }


_FREE_PRODUCT_CITATION = (
    "Minasyan-Osin: a group splitting as a free product of two infinite "
    "groups is acylindrically hyperbolic"
)
_VASKOU_CITATION = (
    "Vaskou: a 2-dimensional Artin group of rank at least 3 with connected "
    "defining graph is acylindrically hyperbolic"
)
_MALNORMALITY_CITATION = (
    "weak malnormality of the edge subgroup (A_e intersecting g A_e g^-1 "
    "trivially for some g) is cited, not computed"
)


def _inapplicable(reason: str) -> AcylVerdict:
    return AcylVerdict(
        status="inapplicable",
        ok=False,
        reasons=[reason],
        witness_edge=None,
        witness_vertex=None,
        delta=None,
        delta_checks=None,
        orbit_growth=None,
        citations=[],
    )


def _free_product(reason: str) -> AcylVerdict:
    return AcylVerdict(
        status="acyl-hyperbolic-via-free-product",
        ok=True,
        reasons=[reason],
        witness_edge=None,
        witness_vertex=None,
        delta=None,
        delta_checks=None,
        orbit_growth=None,
        citations=[_FREE_PRODUCT_CITATION],
    )


def check_hypotheses(graph: DefiningGraph, family: SubgraphFamily) -> AcylVerdict:
    """Decide which route applies before spending any enumeration work."""
    if len(family.parts) < 2:
        return _inapplicable("the family must contain at least two parts")
    ies = inter_edges(graph, family)
    if not ies:
        return _free_product(
            "no inter-edges: the group is the free product of the part groups"
        )
    if len(graph.vertices) < 3:
        return _inapplicable("the witness route needs at least three generators")
    if all(e.label == 2 for e in ies):
        return _inapplicable("every inter-edge has label 2, no witness edge exists")
    verdict = _inapplicable("hypotheses pass")
    verdict.ok = True
    verdict.status = "hypotheses-pass"
    return verdict


def check_acylindricity(
    graph: DefiningGraph,
    family: SubgraphFamily,
    radii: tuple[int, ...] = (2, 4, 6, 8),
    cap: int = 10**6,
) -> AcylVerdict:
    """Full pipeline: hypotheses, witness triple, rank 3 checks, growth table."""
    gate = check_hypotheses(graph, family)
    if gate.status != "hypotheses-pass":
        return gate
    found = find_witness(graph, family)
    if found is None:
        # every label >= 3 inter-edge spans its own connected component, so
        # the group splits over the remaining generators
        return _free_product(
            "no third generator neighbours any witness edge: the defining "
            "graph is disconnected and the group splits as a free product"
        )
    edge, s, delta = found
    checks = check_delta(graph, delta)
    growth = empirical_orbit_growth(edge.label, radii, cap)
    reasons = []
    if not checks.all_ok:
        reasons.append("the witness triple fails a rank 3 hypothesis")
    if not strictly_increasing(growth):
        reasons.append("syllable growth is not strictly increasing over the radii")
    ok = checks.all_ok
    return AcylVerdict(
        status="acyl-hyperbolic-via-witness" if ok else "witness-checks-failed",
        ok=ok,
        reasons=reasons or ["witness triple satisfies the rank 3 criterion"],
        witness_edge=(edge.u, edge.v, edge.label),
        witness_vertex=s,
        delta=delta,
        delta_checks=checks,
        orbit_growth=growth,
        citations=[_VASKOU_CITATION, _MALNORMALITY_CITATION],
    )
