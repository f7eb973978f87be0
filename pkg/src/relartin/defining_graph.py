"""Labeled defining graphs, vertex-set families, and the relative extra-large conditions.

A defining graph is a finite simplicial graph whose edges carry integer labels
m >= 2.  Vertices are generators; an edge {s, t} with label m imposes the
relation prod(s,t;m) = prod(t,s;m), where prod(x,y;m) is the alternating word
xyxy... of length m.  A missing edge means the two generators satisfy no
relation at all (m = infinity).

A family is an ordered list of disjoint, non-empty vertex subsets covering the
graph.  Edges inside a part are "intra" edges; edges joining two different
parts are "inter" edges.  The relative extra-large conditions constrain the
labels of inter edges only:

  REL   every inter edge has label >= 4;
  REL'  every inter edge that shares a vertex with a distinct inter edge has
        label >= 4 (an isolated inter edge may carry label 2 or 3).

REL implies REL'.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Malformed graph, family, or input document."""


def _canonical_edge(u: str, v: str, m: int) -> tuple[str, str, int]:
    return (u, v, m) if u < v else (v, u, m)


@dataclass(frozen=True)
class DefiningGraph:
    """Finite simplicial graph with integer edge labels >= 2.

    ``edges`` is canonically sorted with u < v in every entry.  Use
    :meth:`build` rather than the raw constructor so that edge order and
    validation are taken care of.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, int]]) -> "DefiningGraph":
        vs = tuple(vertices)
        seen: set[str] = set()
        for v in vs:
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex names must be non-empty strings, got {v!r}")
            if v in seen:
                raise GraphError(f"duplicate vertex {v!r}")
            seen.add(v)
        canon: list[tuple[str, str, int]] = []
        pairs: set[frozenset[str]] = set()
        for u, v, m in edges:
            if u not in seen or v not in seen:
                raise GraphError(f"edge ({u!r}, {v!r}) mentions an unknown vertex")
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            # bool is an int subclass; reject it explicitly
            if isinstance(m, bool) or not isinstance(m, int):
                raise GraphError(f"edge label must be an integer, got {m!r}")
            if m < 2:
                raise GraphError(f"edge label must be >= 2, got {m} on ({u!r}, {v!r})")
            key = frozenset((u, v))
            if key in pairs:
                raise GraphError(f"parallel edge ({u!r}, {v!r})")
            pairs.add(key)
            canon.append(_canonical_edge(u, v, m))
        return cls(vertices=tuple(sorted(vs)), edges=tuple(sorted(canon)))

    @cached_property
    def _label_map(self) -> dict[frozenset[str], int]:
        return {frozenset((u, v)): m for u, v, m in self.edges}

    @cached_property
    def _adjacency(self) -> dict[str, tuple[str, ...]]:
        nbrs: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v, _ in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    def label(self, u: str, v: str) -> int | None:
        """Edge label of {u, v}, or None when the edge is absent (m = infinity)."""
        return self._label_map.get(frozenset((u, v)))

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._label_map

    def neighbors(self, v: str) -> tuple[str, ...]:
        if v not in self._adjacency:
            raise GraphError(f"unknown vertex {v!r}")
        return self._adjacency[v]

    def induced(self, subset: Iterable[str]) -> "DefiningGraph":
        """Full subgraph on ``subset`` (keeps every edge with both ends inside)."""
        sub = set(subset)
        unknown = sub - set(self.vertices)
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)}")
        return DefiningGraph.build(
            sorted(sub),
            [(u, v, m) for u, v, m in self.edges if u in sub and v in sub],
        )

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"u": u, "v": v, "m": m} for u, v, m in self.edges],
        }


@dataclass(frozen=True)
class SubgraphFamily:
    """Ordered list of disjoint non-empty vertex subsets covering the graph."""

    parts: tuple[tuple[str, ...], ...]

    @classmethod
    def build(cls, graph: DefiningGraph, parts: Sequence[Iterable[str]]) -> "SubgraphFamily":
        vs = set(graph.vertices)
        norm: list[tuple[str, ...]] = []
        seen: set[str] = set()
        for i, part in enumerate(parts):
            p = sorted(part)
            if not p:
                raise GraphError(f"family part {i} is empty")
            for v in p:
                if v not in vs:
                    raise GraphError(f"family part {i} mentions unknown vertex {v!r}")
                if v in seen:
                    raise GraphError(f"vertex {v!r} appears in two family parts")
                seen.add(v)
            norm.append(tuple(p))
        if seen != vs:
            missing = sorted(vs - seen)
            raise GraphError(f"family does not cover vertices {missing}")
        return cls(parts=tuple(norm))

    @cached_property
    def _part_of(self) -> dict[str, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}

    def part_index(self, v: str) -> int:
        if v not in self._part_of:
            raise GraphError(f"unknown vertex {v!r}")
        return self._part_of[v]

    def part_sets(self) -> tuple[frozenset[str], ...]:
        return tuple(frozenset(p) for p in self.parts)


@dataclass(frozen=True)
class InterEdge:
    """Edge joining two distinct family parts.  ``u < v`` canonically."""

    u: str
    v: str
    label: int
    part_u: int
    part_v: int

    @property
    def pair(self) -> frozenset[str]:
        return frozenset((self.u, self.v))


_TOP_KEYS = {"vertices", "edges", "family"}
_EDGE_KEYS = {"u", "v", "m"}


def parse_graph(text: str) -> tuple[DefiningGraph, SubgraphFamily]:
    """Parse the JSON input document.

    Expected shape::

        {"vertices": ["a", ...],
         "edges": [{"u": "a", "v": "b", "m": 4}, ...],
         "family": [["a", ...], ...]}

    The format is strict: unknown keys, duplicate vertices, self-loops,
    parallel edges, labels below 2 and non-covering or overlapping families
    are all rejected with :class:`GraphError`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphError("top-level document must be an object")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise GraphError(f"unknown keys {sorted(extra)}")
    missing = _TOP_KEYS - set(doc)
    if missing:
        raise GraphError(f"missing keys {sorted(missing)}")
    if not isinstance(doc["vertices"], list):
        raise GraphError("'vertices' must be a list")
    if not isinstance(doc["edges"], list):
        raise GraphError("'edges' must be a list")
    if not isinstance(doc["family"], list):
        raise GraphError("'family' must be a list of vertex lists")
    edges: list[tuple[str, str, int]] = []
    for i, entry in enumerate(doc["edges"]):
        if not isinstance(entry, dict):
            raise GraphError(f"edge {i} must be an object")
        extra = set(entry) - _EDGE_KEYS
        if extra:
            raise GraphError(f"edge {i} has unknown keys {sorted(extra)}")
        if set(entry) != _EDGE_KEYS:
            raise GraphError(f"edge {i} must have keys u, v, m")
        edges.append((entry["u"], entry["v"], entry["m"]))
    graph = DefiningGraph.build(doc["vertices"], edges)
    for i, part in enumerate(doc["family"]):
        if not isinstance(part, list):
            raise GraphError(f"family part {i} must be a list")
    family = SubgraphFamily.build(graph, doc["family"])
    return graph, family


def instance_to_json(graph: DefiningGraph, family: SubgraphFamily) -> str:
    doc = graph.to_json_dict()
    doc["family"] = [list(p) for p in family.parts]
    return json.dumps(doc, indent=2, sort_keys=True)


def inter_edges(graph: DefiningGraph, family: SubgraphFamily) -> tuple[InterEdge, ...]:
    """All edges joining two distinct parts, sorted by vertex pair."""
    out: list[InterEdge] = []
    for u, v, m in graph.edges:
        pu, pv = family.part_index(u), family.part_index(v)
        if pu != pv:
            out.append(InterEdge(u=u, v=v, label=m, part_u=pu, part_v=pv))
    return tuple(sorted(out, key=lambda e: (e.u, e.v)))


@dataclass(frozen=True)
class RelVerdict:
    ok: bool
    violations: tuple[InterEdge, ...]


def check_rel(graph: DefiningGraph, family: SubgraphFamily) -> RelVerdict:
    """REL: every inter edge has label >= 4."""
    bad = tuple(e for e in inter_edges(graph, family) if e.label < 4)
    return RelVerdict(ok=not bad, violations=bad)


def check_rel_prime(graph: DefiningGraph, family: SubgraphFamily) -> RelVerdict:
    """REL': every non-isolated inter edge has label >= 4.

    An inter edge is non-isolated when it shares a vertex with a distinct
    inter edge, regardless of which parts that second edge joins.
    """
    ies = inter_edges(graph, family)
    count_at: dict[str, int] = {}
    for e in ies:
        count_at[e.u] = count_at.get(e.u, 0) + 1
        count_at[e.v] = count_at.get(e.v, 0) + 1
    bad = tuple(
        e for e in ies
        if e.label < 4 and (count_at[e.u] > 1 or count_at[e.v] > 1)
    )
    return RelVerdict(ok=not bad, violations=bad)


@dataclass(frozen=True)
class ClassifierReport:
    """Membership flags for the standard presentation classes.

    ``locally_reducible`` is None: deciding it needs input beyond the graph,
    so the classifier never claims it either way.
    """

    spherical_type: bool
    affine_type: bool
    two_dimensional: bool
    fc_type: bool
    large_type: bool
    extra_large_type: bool
    xxl_type: bool
    right_angled: bool
    join_decomposable: bool
    locally_reducible: None
    notes: tuple[str, ...]


def _complement_connected(graph: DefiningGraph) -> bool:
    vs = graph.vertices
    if len(vs) <= 1:
        return True
    adj = {v: set(vs) - {v} - set(graph.neighbors(v)) for v in vs}
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


def _cliques(graph: DefiningGraph) -> list[frozenset[str]]:
    """All complete full subgraphs, grown one vertex at a time."""
    vs = graph.vertices
    levels: list[frozenset[str]] = [frozenset()]
    frontier = [frozenset((v,)) for v in vs]
    out = list(frontier)
    while frontier:
        nxt: set[frozenset[str]] = set()
        for c in frontier:
            top = max(c)
            for v in vs:
                if v > top and all(graph.has_edge(v, u) for u in c):
                    nxt.add(c | {v})
        frontier = sorted(nxt, key=sorted)
        out.extend(frontier)
    return [frozenset()] + out


def classify_known(graph: DefiningGraph) -> ClassifierReport:
    """Flags for the presentation classes with a known K(pi,1) or known
    acylindrical hyperbolicity status.

    Label quantifiers run over the edges that are present; a graph with no
    edges is therefore vacuously large/extra-large/XXL and right-angled.
    """
    from . import coxeter

    labels = [m for _, _, m in graph.edges]
    large = all(m >= 3 for m in labels)
    xl = all(m >= 4 for m in labels)
    xxl = all(m >= 5 for m in labels)
    right_angled = all(m == 2 for m in labels)

    whole = frozenset(graph.vertices)
    ctype = coxeter.classify_type(graph, whole)
    spherical = ctype.kind == "finite"
    affine = ctype.kind == "affine"

    spherical_sets = coxeter.enumerate_spherical_subsets(graph)
    two_dim = all(len(t) <= 2 for t in spherical_sets)
    fc = all(
        coxeter.is_spherical(graph, clique) for clique in _cliques(graph) if clique
    )
    join = not _complement_connected(graph) if len(graph.vertices) >= 2 else False

    notes = (f"coxeter type: {ctype.kind} ({', '.join(ctype.components) or 'empty'})",)
    return ClassifierReport(
        spherical_type=spherical,
        affine_type=affine,
        two_dimensional=two_dim,
        fc_type=fc,
        large_type=large,
        extra_large_type=xl,
        xxl_type=xxl,
        right_angled=right_angled,
        join_decomposable=join,
        locally_reducible=None,
        notes=notes,
    )


def classifier_to_dict(report: ClassifierReport) -> dict:
    return {
        "spherical_type": report.spherical_type,
        "affine_type": report.affine_type,
        "two_dimensional": report.two_dimensional,
        "fc_type": report.fc_type,
        "large_type": report.large_type,
        "extra_large_type": report.extra_large_type,
        "xxl_type": report.xxl_type,
        "right_angled": report.right_angled,
        "join_decomposable": report.join_decomposable,
        "locally_reducible": None,
        "notes": list(report.notes),
    }
