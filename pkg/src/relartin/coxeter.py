"""Coxeter quotient types: finite and affine classification over full subgraphs.

The quotient of the group presented by a defining graph adds s^2 = 1 for every
generator.  Whether that quotient is finite is read off the *classification
diagram* of the vertex subset: vertices are the generators, and a pair {u, v}
gets a diagram edge when its label differs from 2 (a missing defining edge is
recorded as an infinity label).  Connected diagram components are matched
against the classical finite and affine catalogues:

  finite  A_n, B_n (n>=2), D_n (n>=4), E6 E7 E8, F4, H3 H4, I2(m) (m>=3)
  affine  ~A1 (infinity edge), ~A_n (cycle, n>=2), ~B_n (n>=3), ~C_n (n>=2),
          ~D_n (n>=4), ~E6 ~E7 ~E8, ~F4, ~G2

Anything else is indefinite.  A subset is *spherical* exactly when every
component is finite.  A numerical cross-check of the same decision computes
the smallest eigenvalue of the cosine matrix B_ij = -cos(pi / m_ij).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .defining_graph import DefiningGraph, GraphError

# diagram label for a missing defining edge
INFINITY: None = None


@dataclass(frozen=True)
class CoxeterType:
    """kind is 'finite', 'affine' or 'indefinite'; components are the
    irreducible factor names, sorted."""

    kind: str
    components: tuple[str, ...]


@dataclass(frozen=True)
class OracleVerdict:
    classification: str
    min_eigenvalue: float
    low_confidence: bool


def diagram_edges(
    graph: DefiningGraph, subset: Iterable[str]
) -> dict[frozenset[str], int | None]:
    """Classification-diagram edges on ``subset``: label m when m != 2,
    INFINITY when the defining edge is absent, nothing when m == 2."""
    verts = sorted(set(subset))
    unknown = set(verts) - set(graph.vertices)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    out: dict[frozenset[str], int | None] = {}
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            m = graph.label(u, v)
            if m is None:
                out[frozenset((u, v))] = INFINITY
            elif m != 2:
                out[frozenset((u, v))] = m
    return out


def _components(verts: list[str], edges: dict[frozenset[str], int | None]) -> list[list[str]]:
    adj: dict[str, set[str]] = {v: set() for v in verts}
    for e in edges:
        u, v = sorted(e)
        adj[u].add(v)
        adj[v].add(u)
    seen: set[str] = set()
    comps: list[list[str]] = []
    for start in verts:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify_path(labels: list[int]) -> str:
    """Name of the type of a path diagram given its edge labels in order."""
    k = len(labels)
    n = k + 1
    if all(l == 3 for l in labels):
        return f"A{n}"
    if k == 1:
        m = labels[0]
        if m == 4:
            return "B2"
        return f"I2({m})"
    non3 = [(i, l) for i, l in enumerate(labels) if l != 3]
    if len(non3) == 1:
        i, l = non3[0]
        at_end = i in (0, k - 1)
        if l == 4:
            if at_end:
                return f"B{n}"
            if k == 3:
                return "F4"
            if k == 4:
                return "~F4"
            return "indefinite"
        if l == 5 and at_end and n in (3, 4):
            return f"H{n}"
        if l == 6 and at_end and n == 3:
            return "~G2"
        return "indefinite"
    if len(non3) == 2:
        (i1, l1), (i2, l2) = non3
        if l1 == 4 and l2 == 4 and i1 == 0 and i2 == k - 1:
            return f"~C{n - 1}"
    return "indefinite"


def _classify_component(
    verts: list[str], edges: dict[frozenset[str], int | None]
) -> str:
    n = len(verts)
    if n == 1:
        return "A1"
    comp_edges = {e: m for e, m in edges.items() if e <= set(verts)}
    if any(m is INFINITY for m in comp_edges.values()):
        if n == 2 and len(comp_edges) == 1:
            return "~A1"
        return "indefinite"
    adj: dict[str, list[str]] = {v: [] for v in verts}
    for e in comp_edges:
        u, v = sorted(e)
        adj[u].append(v)
        adj[v].append(u)
    ne = len(comp_edges)
    if ne > n:
        return "indefinite"
    if ne == n:
        # a single cycle through every vertex, all labels 3
        if all(len(adj[v]) == 2 for v in verts) and all(
            m == 3 for m in comp_edges.values()
        ):
            return f"~A{n - 1}"
        return "indefinite"
    # tree from here on
    branch = [v for v in verts if len(adj[v]) >= 3]
    if not branch:
        # walk the path from one endpoint
        ends = [v for v in verts if len(adj[v]) == 1]
        prev, cur = None, min(ends)
        labels: list[int] = []
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            labels.append(comp_edges[frozenset((cur, nxt[0]))])
            prev, cur = cur, nxt[0]
        return _classify_path(labels)
    if len(branch) == 1:
        b = branch[0]
        if len(adj[b]) == 4:
            if n == 5 and all(m == 3 for m in comp_edges.values()):
                return "~D4"
            return "indefinite"
        if len(adj[b]) > 4:
            return "indefinite"
        arms: list[list[int]] = []
        for w in sorted(adj[b]):
            labels = [comp_edges[frozenset((b, w))]]
            prev, cur = b, w
            while True:
                nxt = [x for x in adj[cur] if x != prev]
                if not nxt:
                    break
                labels.append(comp_edges[frozenset((cur, nxt[0]))])
                prev, cur = cur, nxt[0]
            arms.append(labels)
        arms.sort(key=len)
        lens = tuple(len(a) for a in arms)
        if all(l == 3 for a in arms for l in a):
            if lens[0] == 1 and lens[1] == 1:
                return f"D{lens[2] + 3}"
            if lens == (1, 2, 2):
                return "E6"
            if lens == (1, 2, 3):
                return "E7"
            if lens == (1, 2, 4):
                return "E8"
            if lens == (2, 2, 2):
                return "~E6"
            if lens == (1, 3, 3):
                return "~E7"
            if lens == (1, 2, 5):
                return "~E8"
            return "indefinite"
        # fork of two simple leaves plus one arm of 3s ending in a single 4
        non3_arms = [a for a in arms if any(l != 3 for l in a)]
        if len(non3_arms) == 1:
            tail = non3_arms[0]
            others = [a for a in arms if a is not tail]
            if (
                all(len(a) == 1 and a[0] == 3 for a in others)
                and tail[-1] == 4
                and all(l == 3 for l in tail[:-1])
            ):
                return f"~B{len(tail) + 2}"
        return "indefinite"
    if len(branch) == 2:
        b1, b2 = branch
        if (
            len(adj[b1]) == 3
            and len(adj[b2]) == 3
            and all(m == 3 for m in comp_edges.values())
            and sum(1 for w in adj[b1] if len(adj[w]) == 1) >= 2
            and sum(1 for w in adj[b2] if len(adj[w]) == 1) >= 2
        ):
            return f"~D{n - 1}"
        return "indefinite"
    return "indefinite"


def classify_type(graph: DefiningGraph, subset: Iterable[str]) -> CoxeterType:
    verts = sorted(set(subset))
    if not verts:
        return CoxeterType(kind="finite", components=())
    edges = diagram_edges(graph, verts)
    names = sorted(_classify_component(c, edges) for c in _components(verts, edges))
    if any(n == "indefinite" for n in names):
        kind = "indefinite"
    elif any(n.startswith("~") for n in names):
        kind = "affine"
    else:
        kind = "finite"
    return CoxeterType(kind=kind, components=tuple(names))


def is_spherical(graph: DefiningGraph, subset: Iterable[str]) -> bool:
    """True when the Coxeter quotient of the full subgraph on ``subset`` is
    finite."""
    return classify_type(graph, subset).kind == "finite"


def cosine_matrix(graph: DefiningGraph, subset: Iterable[str]) -> np.ndarray:
    """B_ij = -cos(pi / m_ij) over the sorted subset; missing edge gives -1."""
    verts = sorted(set(subset))
    unknown = set(verts) - set(graph.vertices)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    n = len(verts)
    mat = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            m = graph.label(verts[i], verts[j])
            c = -1.0 if m is None else -math.cos(math.pi / m)
            mat[i, j] = mat[j, i] = c
    return mat


def definiteness_oracle(
    graph: DefiningGraph, subset: Iterable[str], tolerance: float = 1e-9
) -> OracleVerdict:
    """Numerical counterpart of :func:`classify_type`.

    Positive definite cosine matrix (min eigenvalue > tolerance) means finite,
    a kernel within tolerance means affine, a negative eigenvalue means
    indefinite.  ``low_confidence`` flags minima within 10x of the tolerance,
    where the table decision should be trusted over floating point.
    """
    verts = sorted(set(subset))
    if not verts:
        return OracleVerdict(classification="finite", min_eigenvalue=math.inf, low_confidence=False)
    eigs = np.linalg.eigvalsh(cosine_matrix(graph, verts))
    lam = float(eigs[0])
    if lam > tolerance:
        cls = "finite"
    elif lam >= -tolerance:
        cls = "affine"
    else:
        cls = "indefinite"
    return OracleVerdict(
        classification=cls,
        min_eigenvalue=lam,
        low_confidence=abs(lam) <= 10 * tolerance,
    )


def enumerate_spherical_subsets(graph: DefiningGraph) -> list[frozenset[str]]:
    """Every vertex subset with finite Coxeter quotient, smallest first.

    Sphericity is hereditary, so candidates grow one vertex at a time from
    spherical seeds only.
    """
    verts = graph.vertices
    out: set[frozenset[str]] = {frozenset()}
    level: list[frozenset[str]] = [frozenset((v,)) for v in verts]
    out.update(level)
    while level:
        nxt: set[frozenset[str]] = set()
        for base in level:
            for v in verts:
                if v in base:
                    continue
                cand = base | {v}
                if cand in out or cand in nxt:
                    continue
                if classify_type(graph, cand).kind == "finite":
                    nxt.add(cand)
        out.update(nxt)
        level = sorted(nxt, key=sorted)
    return sorted(out, key=lambda s: (len(s), sorted(s)))
