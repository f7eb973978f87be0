"""Weighted link graphs at each vertex type of the coset complex.

The complex has one vertex orbit per element of S^l, so four links cover
everything:

  empty       link of the trivial coset: finite bipartite graph with the
              inter-edge-vertex subgroups on one side, the parts and
              inter-edge subgroups on the other; edge lengths 2 units to a
              part, 2 to a disjoint inter-edge, 3 to a non-disjoint one;
  single      link of an inter-edge-vertex subgroup coset: complete
              bipartite between the powers of the generator and the parts
              or inter-edges above it, every edge 4 units; only finitely
              many powers are drawn, which cannot change the cycle
              structure of a complete bipartite graph;
  part        link of a part subgroup coset, developed as a ball: element
              cosets on one side, generator-cyclic cosets on the other,
              every edge 2 units; needs an exact word-problem engine;
  inter-edge  link of an inter-edge subgroup coset, developed with the
              dihedral engine; edges 2 units when the inter-edge is
              disjoint from all others, 1 unit when it shares a vertex.

Lengths are angles of the metric triangles at the corresponding corner, in
integer units of pi/8; the 2pi threshold is the integer 16.

Developments are balls of infinite graphs.  Enumeration keeps only complete
word-length levels under the element cap, records the achieved radius, and
marks outer-level element vertices and every coset vertex touching them as
boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .defining_graph import DefiningGraph, GraphError, SubgraphFamily, InterEdge, inter_edges
from .dihedral_garside import DihedralEngine, engine_for_part
from .poset_complex import build_S_ell, disjoint_inter_edges, subset_label

TWO_PI_UNITS = 16


class UnsupportedPartError(GraphError):
    """No exact word-problem engine exists for this part."""


@dataclass(frozen=True)
class TruncationInfo:
    complete: bool
    truncated: bool = False
    requested_radius: int | None = None
    achieved_radius: int | None = None
    cap: int | None = None


@dataclass
class LinkGraph:
    """Simple weighted graph with a bipartition and development metadata."""

    case: str
    descriptor: str
    vertex_kinds: list[str]
    vertex_labels: list[str]
    sides: list[int]
    edges: list[tuple[int, int, int]]
    truncation: TruncationInfo
    boundary: set[int] = field(default_factory=set)

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for i, j, w in self.edges:
            adj[i].append((j, w))
            adj[j].append((i, w))
        return adj

    def check_simple_bipartite(self) -> None:
        seen = set()
        for i, j, w in self.edges:
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphError(f"parallel edge {key}")
            seen.add(key)
            if self.sides[i] == self.sides[j]:
                raise GraphError(f"edge {key} inside one side of the bipartition")
            if w not in (1, 2, 3, 4):
                raise GraphError(f"edge length {w} outside 1..4 units")

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "descriptor": self.descriptor,
            "vertices": [
                {
                    "kind": self.vertex_kinds[i],
                    "label": self.vertex_labels[i],
                    "side": self.sides[i],
                    "boundary": i in self.boundary,
                }
                for i in range(self.vertex_count)
            ],
            "edges": [
                {"u": i, "v": j, "units": w} for i, j, w in self.edges
            ],
            "truncation": {
                "complete": self.truncation.complete,
                "truncated": self.truncation.truncated,
                "requested_radius": self.truncation.requested_radius,
                "achieved_radius": self.truncation.achieved_radius,
                "cap": self.truncation.cap,
            },
        }

    def to_dot(self) -> str:
        lines = [f'graph "{self.descriptor}" {{']
        for i in range(self.vertex_count):
            shape = "box" if self.sides[i] else "ellipse"
            style = ', style=dashed' if i in self.boundary else ""
            lines.append(
                f'  n{i} [label="{self.vertex_labels[i]}", shape={shape}{style}];'
            )
        for i, j, w in self.edges:
            lines.append(f'  n{i} -- n{j} [label="{w}"];')
        lines.append("}")
        return "\n".join(lines)


def build_link_empty(graph: DefiningGraph, family: SubgraphFamily) -> LinkGraph:
    """Finite link of the trivial coset."""
    s_ell = build_S_ell(graph, family)
    disjoint = disjoint_inter_edges(graph, family)
    uppers = [t for t in s_ell.elements if t]
    index = {t: i for i, t in enumerate(uppers)}
    kinds, labels, sides = [], [], []
    for t in uppers:
        tags = s_ell.tags[t]
        if "inter-edge" in tags:
            kind = "inter-edge"
        elif "part" in tags:
            # a singleton part that is also an inter-edge vertex sits on the
            # singleton side: its only link edges go up to inter-edges
            kind = "part" if "inter-edge-vertex" not in tags else "singleton"
        else:
            kind = "singleton"
        kinds.append(kind)
        labels.append(subset_label(t))
        sides.append(0 if kind == "singleton" else 1)
    edges: list[tuple[int, int, int]] = []
    for t in uppers:
        if kinds[index[t]] != "singleton":
            continue
        (s,) = t
        for u in uppers:
            if t < u:
                tags = s_ell.tags[u]
                if "inter-edge" in tags:
                    units = 2 if disjoint[u] else 3
                else:
                    units = 2
                edges.append((index[t], index[u], units))
    link = LinkGraph(
        case="empty",
        descriptor="link of the trivial coset",
        vertex_kinds=kinds,
        vertex_labels=labels,
        sides=sides,
        edges=sorted(edges),
        truncation=TruncationInfo(complete=True),
    )
    link.check_simple_bipartite()
    return link


def build_link_single(
    graph: DefiningGraph, family: SubgraphFamily, s: str, truncation_n: int = 3
) -> LinkGraph:
    """Link of the cyclic subgroup coset at inter-edge vertex s: complete
    bipartite, all edges 4 units.

    Only powers s^k with |k| <= truncation_n are drawn.  Extra powers attach
    by the same complete-bipartite rule, so the minimal cycle (4 edges when
    both sides have two vertices, none otherwise) is already exact; the
    graph is marked complete.
    """
    if truncation_n < 1:
        raise GraphError("truncation_n must be >= 1")
    ies = [e for e in inter_edges(graph, family) if s in e.pair]
    if not ies:
        raise GraphError(f"{s!r} is not an inter-edge vertex")
    part = frozenset(family.parts[family.part_index(s)])
    uppers: list[tuple[str, frozenset]] = []
    if part != frozenset((s,)):
        uppers.append(("part", part))
    uppers.extend(("inter-edge", e.pair) for e in ies)
    kinds, labels, sides = [], [], []
    for k in range(-truncation_n, truncation_n + 1):
        kinds.append("power")
        labels.append(f"{s}^{k}")
        sides.append(0)
    for kind, t in uppers:
        kinds.append(kind)
        labels.append(subset_label(t))
        sides.append(1)
    n_powers = 2 * truncation_n + 1
    edges = [
        (i, n_powers + j, 4)
        for i in range(n_powers)
        for j in range(len(uppers))
    ]
    link = LinkGraph(
        case="single",
        descriptor=f"link of the cyclic coset at {s}",
        vertex_kinds=kinds,
        vertex_labels=labels,
        sides=sides,
        edges=edges,
        truncation=TruncationInfo(complete=True, requested_radius=truncation_n),
    )
    link.check_simple_bipartite()
    return link


def _develop(engine, units: int, radius: int, cap: int, case: str, descriptor: str) -> LinkGraph:
    """Shared ball development: element vertices on side 0, one coset vertex
    per generator-cyclic coset on side 1, every incidence one edge."""
    if radius < 1:
        raise GraphError("radius must be >= 1")
    levels, truncated = engine.ball_levels(radius, cap)
    achieved = len(levels) - 1
    kinds, labels, sides = [], [], []
    index: dict[object, int] = {}
    boundary: set[int] = set()
    for depth, level in enumerate(levels):
        for el in level:
            index[("element", el)] = len(labels)
            kinds.append("element")
            labels.append(engine.describe(el))
            sides.append(0)
            if depth == achieved:
                boundary.add(index[("element", el)])
    edges: list[tuple[int, int, int]] = []
    for level in levels:
        for el in level:
            i = index[("element", el)]
            for g in engine.generators:
                key = engine.coset_key(el, g)
                if ("coset", key) not in index:
                    index[("coset", key)] = len(labels)
                    kinds.append("coset")
                    labels.append(f"{engine.describe(el)}.<{g}>")
                    sides.append(1)
                j = index[("coset", key)]
                edges.append((i, j, units))
                if i in boundary:
                    boundary.add(j)
    link = LinkGraph(
        case=case,
        descriptor=descriptor,
        vertex_kinds=kinds,
        vertex_labels=labels,
        sides=sides,
        edges=edges,
        truncation=TruncationInfo(
            complete=False,
            truncated=truncated,
            requested_radius=radius,
            achieved_radius=achieved,
            cap=cap,
        ),
        boundary=boundary,
    )
    link.check_simple_bipartite()
    return link


def develop_link_part(
    graph: DefiningGraph,
    family: SubgraphFamily,
    i: int,
    oracle=None,
    radius: int = 16,
    cap: int = 10**6,
) -> LinkGraph:
    """Ball development of the link of the part subgroup coset S_i.

    All edges are 2 units.  An exact engine is required; parts that are
    neither edgeless nor a single labeled edge have none and raise
    :class:`UnsupportedPartError`.
    """
    part = family.parts[i]
    engine = oracle if oracle is not None else engine_for_part(graph, part)
    if engine is None or not engine.exact:
        raise UnsupportedPartError(
            f"no exact word-problem engine for part {list(part)}"
        )
    return _develop(
        engine,
        units=2,
        radius=radius,
        cap=cap,
        case="part",
        descriptor=f"link of the part coset {subset_label(frozenset(part))}",
    )


def develop_link_interedge(
    graph: DefiningGraph,
    family: SubgraphFamily,
    edge: InterEdge,
    radius: int | None = None,
    cap: int = 10**6,
) -> LinkGraph:
    """Ball development of the link of an inter-edge subgroup coset.

    Edge lengths are 2 units when the inter-edge shares no vertex with any
    other inter-edge, 1 unit otherwise.  The default radius is 8m.
    """
    disjoint = disjoint_inter_edges(graph, family)[edge.pair]
    units = 2 if disjoint else 1
    if radius is None:
        radius = 8 * edge.label
    engine = DihedralEngine(*sorted(edge.pair), m=edge.label)
    flavor = "disjoint" if disjoint else "non-disjoint"
    return _develop(
        engine,
        units=units,
        radius=radius,
        cap=cap,
        case="inter-edge",
        descriptor=(
            f"link of the inter-edge coset {subset_label(edge.pair)} "
            f"(m={edge.label}, {flavor})"
        ),
    )
