"""Subset posets, derived complexes, the piecewise-Euclidean metric, and the
retraction from the big fundamental domain onto the small one.

Three posets under inclusion:

  S^l   the empty set, the family parts S_i, the inter-edges, and the
        singletons of inter-edge vertices;
  S^f   every subset whose Coxeter quotient is finite;
  S_bar the union of S^l with every subset of every part.

The derived complex of a poset has one simplex per chain.  Over S^l the
complex is 2-dimensional and every 2-chain has the shape
[empty < {s} < T]; such a triangle receives Euclidean angles in integer
units of pi/8:

  T a part, or an inter-edge disjoint from all others   (2, 4, 2)
  T an inter-edge sharing a vertex with another         (3, 4, 1)

listed at the (empty, {s}, T) corners.  Side lengths follow the law of
sines once the edge [empty, {s}] is normalised to length 1; they are kept
exactly as ratios sin(p pi/8) / sin(q pi/8) with p, q in {1..4}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import pi, sin
from typing import Iterable

from .defining_graph import DefiningGraph, GraphError, SubgraphFamily, inter_edges

Subset = frozenset


def subset_sort_key(t: frozenset) -> tuple:
    return (len(t), tuple(sorted(t)))


def subset_label(t: frozenset) -> str:
    return "{" + ",".join(sorted(t)) + "}"


@dataclass
class SubsetPoset:
    """Finite family of vertex subsets ordered by inclusion, with tags."""

    elements: tuple[frozenset, ...]
    tags: dict[frozenset, frozenset]

    @classmethod
    def from_tagged(cls, tagged: Iterable[tuple[frozenset, str]]) -> "SubsetPoset":
        tags: dict[frozenset, set[str]] = {}
        for subset, tag in tagged:
            tags.setdefault(subset, set()).add(tag)
        elements = tuple(sorted(tags, key=subset_sort_key))
        return cls(elements=elements, tags={t: frozenset(ts) for t, ts in tags.items()})

    def __contains__(self, subset: frozenset) -> bool:
        return subset in self.tags

    def covers(self) -> list[tuple[frozenset, frozenset]]:
        """Covering relations of the inclusion order (Hasse diagram edges)."""
        out = []
        for small in self.elements:
            for big in self.elements:
                if small < big and not any(
                    small < mid < big for mid in self.elements
                ):
                    out.append((small, big))
        return out

    def to_json_dict(self) -> dict:
        return {
            "elements": [
                {"subset": sorted(t), "tags": sorted(self.tags[t])}
                for t in self.elements
            ],
            "covers": [
                [sorted(a), sorted(b)] for a, b in self.covers()
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph poset {", "  rankdir=BT;"]
        index = {t: i for i, t in enumerate(self.elements)}
        for t in self.elements:
            tag_str = ",".join(sorted(self.tags[t]))
            lines.append(f'  n{index[t]} [label="{subset_label(t)}\\n{tag_str}"];')
        for a, b in self.covers():
            lines.append(f"  n{index[a]} -> n{index[b]};")
        lines.append("}")
        return "\n".join(lines)


def build_S_ell(graph: DefiningGraph, family: SubgraphFamily) -> SubsetPoset:
    """The empty set, the parts, the inter-edges, and the singletons of
    inter-edge vertices, each stored once with all applicable tags."""
    tagged: list[tuple[frozenset, str]] = [(frozenset(), "empty")]
    for part in family.parts:
        tagged.append((frozenset(part), "part"))
    for e in inter_edges(graph, family):
        tagged.append((e.pair, "inter-edge"))
        tagged.append((frozenset((e.u,)), "inter-edge-vertex"))
        tagged.append((frozenset((e.v,)), "inter-edge-vertex"))
    return SubsetPoset.from_tagged(tagged)


def build_S_f(graph: DefiningGraph) -> SubsetPoset:
    from . import coxeter

    return SubsetPoset.from_tagged(
        (t, "spherical") for t in coxeter.enumerate_spherical_subsets(graph)
    )


def build_S_bar(graph: DefiningGraph, family: SubgraphFamily) -> SubsetPoset:
    """S^l together with every subset of every part."""
    s_ell = build_S_ell(graph, family)
    tagged = [(t, tag) for t in s_ell.elements for tag in s_ell.tags[t]]
    for part in family.parts:
        members = sorted(part)
        for mask in range(1 << len(members)):
            subset = frozenset(m for i, m in enumerate(members) if mask >> i & 1)
            tagged.append((subset, "part-subset"))
    return SubsetPoset.from_tagged(tagged)


@dataclass
class DerivedComplex:
    """All chains of a poset; a chain of n+1 subsets is an n-simplex."""

    poset: SubsetPoset
    chains: tuple[tuple[frozenset, ...], ...]

    @property
    def dimension(self) -> int:
        return max(len(c) for c in self.chains) - 1 if self.chains else -1

    def chains_of_length(self, n: int) -> list[tuple[frozenset, ...]]:
        return [c for c in self.chains if len(c) == n]

    def to_json_dict(self) -> dict:
        return {
            "vertex_count": len(self.poset.elements),
            "chain_counts": {
                str(n): len(self.chains_of_length(n))
                for n in range(1, self.dimension + 2)
            },
            "chains": [[sorted(t) for t in c] for c in self.chains],
        }


def derived_complex(poset: SubsetPoset) -> DerivedComplex:
    """Every nonempty chain, face-closed by construction.

    Chain counts grow exponentially with part size; intended for the small
    fundamental-domain posets, not for arbitrary lattices.
    """
    elements = sorted(poset.elements, key=subset_sort_key)
    above: dict[frozenset, list[frozenset]] = {
        t: [u for u in elements if t < u] for t in elements
    }
    chains: list[tuple[frozenset, ...]] = []

    def grow(chain: tuple[frozenset, ...]) -> None:
        chains.append(chain)
        for u in above[chain[-1]]:
            grow(chain + (u,))

    for t in elements:
        grow((t,))
    chains.sort(key=lambda c: (len(c), tuple(subset_sort_key(t) for t in c)))
    return DerivedComplex(poset=poset, chains=tuple(chains))


@dataclass(frozen=True)
class DimensionVerdict:
    ok: bool
    max_chain_length: int
    witness: tuple[frozenset, ...] | None


def check_two_dimensional(cx: DerivedComplex) -> DimensionVerdict:
    """True when no chain has four or more subsets."""
    longest = max(cx.chains, key=len)
    return DimensionVerdict(
        ok=len(longest) <= 3,
        max_chain_length=len(longest),
        witness=longest if len(longest) > 3 else None,
    )


# ---------------------------------------------------------------------------
# metric

# exact equality on ratios sin(p pi/8)/sin(q pi/8) for p, q in 1..4: the 16
# values split into classes detectable by floats at this scale (the closest
# distinct pair differs by more than 0.05)
_SIN = {k: sin(k * pi / 8) for k in (1, 2, 3, 4)}


def canonical_sine_ratio(p: int, q: int) -> tuple[int, int]:
    if not (1 <= p <= 4 and 1 <= q <= 4):
        raise ValueError("sine units must lie in 1..4")
    value = _SIN[p] / _SIN[q]
    best = None
    for pp in (1, 2, 3, 4):
        for qq in (1, 2, 3, 4):
            if abs(_SIN[pp] / _SIN[qq] - value) < 1e-9:
                cand = (pp, qq)
                if best is None or cand < best:
                    best = cand
    assert best is not None
    return best


def sine_ratio_value(ratio: tuple[int, int]) -> float:
    p, q = ratio
    return _SIN[p] / _SIN[q]


@dataclass(frozen=True)
class MetricSimplex:
    """A 2-chain [empty < {s} < T] with corner angles in pi/8 units and the
    three side lengths as exact sine ratios, normalised so that the side
    [empty, {s}] has length 1."""

    chain: tuple[frozenset, frozenset, frozenset]
    units: tuple[int, int, int]
    case: str
    sides: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    # sides listed for edges ([empty,{s}], [{s},T], [empty,T])

    def edge_lengths(self) -> dict[tuple[frozenset, frozenset], tuple[int, int]]:
        t0, t1, t2 = self.chain
        return {(t0, t1): self.sides[0], (t1, t2): self.sides[1], (t0, t2): self.sides[2]}


def _sides_from_units(units: tuple[int, int, int]) -> tuple:
    a0, a1, a2 = units
    # law of sines: each side is proportional to the sine of the opposite
    # corner; dividing by sin(top corner) normalises [empty,{s}] to 1
    return (
        canonical_sine_ratio(a2, a2),
        canonical_sine_ratio(a0, a2),
        canonical_sine_ratio(a1, a2),
    )


def disjoint_inter_edges(graph: DefiningGraph, family: SubgraphFamily) -> dict[frozenset, bool]:
    """For each inter-edge pair, whether it shares no vertex with any other
    inter-edge."""
    ies = inter_edges(graph, family)
    out = {}
    for e in ies:
        out[e.pair] = not any(
            f.pair != e.pair and (f.pair & e.pair) for f in ies
        )
    return out


def assign_metric(
    cx: DerivedComplex, graph: DefiningGraph, family: SubgraphFamily
) -> list[MetricSimplex]:
    """Angles and side lengths for every 2-chain of the S^l complex."""
    disjoint = disjoint_inter_edges(graph, family)
    tags = cx.poset.tags
    out: list[MetricSimplex] = []
    for chain in cx.chains_of_length(3):
        t0, t1, t2 = chain
        if t0 != frozenset() or len(t1) != 1:
            raise GraphError(f"unrecognised 2-chain shape {[sorted(t) for t in chain]}")
        top_tags = tags[t2]
        if "inter-edge" in top_tags:
            units = (2, 4, 2) if disjoint[t2] else (3, 4, 1)
            case = "inter-edge-disjoint" if disjoint[t2] else "inter-edge-nondisjoint"
        elif "part" in top_tags:
            units = (2, 4, 2)
            case = "part"
        else:
            raise GraphError(f"2-chain top {sorted(t2)} is neither part nor inter-edge")
        assert sum(units) == 8
        out.append(
            MetricSimplex(
                chain=(t0, t1, t2), units=units, case=case, sides=_sides_from_units(units)
            )
        )
    return out


@dataclass
class GluingReport:
    ok: bool
    shared_edges: list[dict]
    conflicts: list[dict]


def check_gluing(simplices: list[MetricSimplex]) -> GluingReport:
    """Every 1-cell shared by several metric triangles must receive one
    length."""
    lengths: dict[tuple[frozenset, frozenset], set[tuple[int, int]]] = {}
    for sx in simplices:
        for edge, ratio in sx.edge_lengths().items():
            lengths.setdefault(edge, set()).add(ratio)
    shared, conflicts = [], []
    for edge, ratios in sorted(
        lengths.items(), key=lambda kv: (subset_sort_key(kv[0][0]), subset_sort_key(kv[0][1]))
    ):
        entry = {
            "edge": [sorted(edge[0]), sorted(edge[1])],
            "lengths": sorted(ratios),
        }
        shared.append(entry)
        if len(ratios) > 1:
            conflicts.append(entry)
    return GluingReport(ok=not conflicts, shared_edges=shared, conflicts=conflicts)


# ---------------------------------------------------------------------------
# retraction from the S_bar complex onto the S^l complex


@dataclass
class RetractionReport:
    total_maximal_chains: int
    lands_in_s_ell: bool
    identity_on_s_ell: bool
    idempotent: bool
    face_compatible: bool
    vertex_map: dict[frozenset, frozenset]
    chain_images: dict[tuple[frozenset, ...], tuple[frozenset, ...]]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return (
            self.lands_in_s_ell
            and self.identity_on_s_ell
            and self.idempotent
            and self.face_compatible
        )


def maximal_chains(cx: DerivedComplex) -> list[tuple[frozenset, ...]]:
    elements = cx.poset.elements
    out = []
    for chain in cx.chains:
        cset = set(chain)
        extendable = any(
            x not in cset and all(x < t or t < x for t in chain) for x in elements
        )
        if not extendable:
            out.append(chain)
    return out


def retraction_map(
    s_bar_cx: DerivedComplex,
    s_ell_cx: DerivedComplex,
    graph: DefiningGraph,
    family: SubgraphFamily,
) -> RetractionReport:
    """The simplicial retraction: subsets already in S^l stay fixed, proper
    part-subsets collapse onto their part.

    On a maximal chain inside a part this sends [empty < {s} < ... < S_i]
    to [empty < {s} < S_i] when s lies on an inter-edge and to
    [empty < S_i] otherwise; maximal inter-edge chains are fixed pointwise.
    """
    s_ell = s_ell_cx.poset
    part_of: dict[frozenset, frozenset] = {}
    for part in family.parts:
        pset = frozenset(part)
        for t in s_bar_cx.poset.elements:
            if t and t <= pset:
                part_of.setdefault(t, pset)

    failures: list[str] = []
    vertex_map: dict[frozenset, frozenset] = {}
    for t in s_bar_cx.poset.elements:
        if t in s_ell:
            vertex_map[t] = t
        elif t in part_of:
            vertex_map[t] = part_of[t]
        else:
            failures.append(f"no image for {sorted(t)}")

    # an unmapped element makes the retraction partial, so it cannot land
    lands = not failures and all(img in s_ell for img in vertex_map.values())
    identity = all(vertex_map.get(t) == t for t in s_ell.elements)
    idempotent = all(vertex_map.get(img) == img for img in vertex_map.values())

    # monotone vertex maps carry chains to chains, which is exactly
    # compatibility on shared faces; additionally the image of each maximal
    # chain must match the stated formula
    monotone = True
    elems = [t for t in s_bar_cx.poset.elements if t in vertex_map]
    for a in elems:
        for b in elems:
            if a < b and not vertex_map[a] <= vertex_map[b]:
                monotone = False
                failures.append(f"not monotone on {sorted(a)} < {sorted(b)}")

    iev = {
        t for t in s_ell.elements if "inter-edge-vertex" in s_ell.tags[t]
    }
    chain_images: dict[tuple[frozenset, ...], tuple[frozenset, ...]] = {}
    formula_ok = True
    for chain in maximal_chains(s_bar_cx):
        if any(t not in vertex_map for t in chain):
            continue
        image: list[frozenset] = []
        for t in chain:
            img = vertex_map[t]
            if not image or image[-1] != img:
                image.append(img)
        chain_images[chain] = tuple(image)
        top = chain[-1]
        if "inter-edge" in s_bar_cx.poset.tags.get(top, frozenset()):
            expected = chain
        else:
            bottom = chain[1] if len(chain) > 1 else None
            part = vertex_map[top]
            if bottom is not None and bottom in iev:
                expected = (frozenset(), bottom, part)
            else:
                expected = (frozenset(), part)
        if tuple(image) != expected:
            formula_ok = False
            failures.append(
                f"chain {[sorted(t) for t in chain]} mapped to "
                f"{[sorted(t) for t in image]}, expected {[sorted(t) for t in expected]}"
            )
        if tuple(image) not in set(s_ell_cx.chains):
            lands = False
            failures.append(f"image of {[sorted(t) for t in chain]} is not an S^l chain")

    return RetractionReport(
        total_maximal_chains=len(chain_images),
        lands_in_s_ell=lands,
        identity_on_s_ell=identity,
        idempotent=idempotent,
        face_compatible=monotone and formula_ok,
        vertex_map=vertex_map,
        chain_images=chain_images,
        failures=failures,
    )
