"""Garside normal forms for dihedral presentations, plus word-problem engines.

The group on two generators a, b with the relation prod(a,b;m) = prod(b,a;m)
(2 <= m < infinity) is spherical type, with Garside element Delta equal to
either alternating product of length m.  Every element is uniquely

    Delta^k . x_1 x_2 ... x_r

where each x_i is a proper simple (an alternating positive word of length
1..m-1, recorded as (first letter, length)) and consecutive factors are
left-weighted: the last letter of x_i equals the first letter of x_{i+1}.
Pairwise left-weightedness characterises the normal form, so multiplying by
one letter needs only a local repair at the right end, with Delta powers
migrating left through tau (the atom swap when m is odd, identity when m is
even).

Equality of words is equality of normal forms.  The exponent-sum
homomorphism eps (every generator to 1) reads off normal forms as
eps = k*m + sum of tail lengths; each coset g<s> contains exactly one
element with eps = 0, which serves as its canonical representative.

Three word-problem engines share one small interface used by link
development: the exact dihedral engine above, an exact free-group engine
(reduced words) for edgeless subgraphs, and a finite dihedral quotient
engine, sound for inequality only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[tuple[str, int], ...]


class CapExceeded(RuntimeError):
    """Ball enumeration hit the element cap before finishing the radius."""

    def __init__(self, requested_radius: int, completed_radius: int, count: int, cap: int):
        super().__init__(
            f"element cap {cap} exceeded: completed radius {completed_radius} "
            f"of {requested_radius} with {count} elements"
        )
        self.requested_radius = requested_radius
        self.completed_radius = completed_radius
        self.count = count
        self.cap = cap


def prod_word(x: str, y: str, m: int) -> Word:
    """Alternating positive word x y x y ... of length m."""
    return tuple((x if i % 2 == 0 else y, 1) for i in range(m))


def parse_word(text: str, letters: Sequence[str]) -> Word:
    """Tokens separated by whitespace: "a", "a^-1", or single-char uppercase
    for the inverse of a single-char generator."""
    lower = {l for l in letters}
    out: list[tuple[str, int]] = []
    for tok in text.split():
        if tok.endswith("^-1"):
            base, sign = tok[:-3], -1
        elif tok not in lower and len(tok) == 1 and tok.lower() in lower:
            base, sign = tok.lower(), -1
        else:
            base, sign = tok, 1
        if base not in lower:
            raise ValueError(f"unknown letter {tok!r}")
        out.append((base, sign))
    return tuple(out)


def word_to_str(word: Word) -> str:
    toks = []
    for letter, sign in word:
        if sign == 1:
            toks.append(letter)
        elif len(letter) == 1:
            toks.append(letter.upper())
        else:
            toks.append(f"{letter}^-1")
    return " ".join(toks)


def syllable_length(word: Iterable[tuple[str, int]]) -> int:
    """Number of maximal one-generator blocks after cancelling within blocks.

    Blocks that cancel to nothing disappear and same-generator neighbours
    merge, repeatedly.
    """
    stack: list[tuple[str, int]] = []
    for letter, sign in word:
        if stack and stack[-1][0] == letter:
            exp = stack[-1][1] + sign
            stack.pop()
            if exp != 0:
                stack.append((letter, exp))
        else:
            stack.append((letter, sign))
    return len(stack)


@dataclass(frozen=True)
class DihedralElement:
    """Normal form Delta^k times a left-weighted tail of proper simples."""

    k: int
    tail: tuple[tuple[str, int], ...]


class DihedralGroupCtx:
    """Two generators with one finite label m >= 2."""

    def __init__(self, a: str, b: str, m: int):
        if a == b:
            raise ValueError("generators must be distinct")
        if m < 2:
            raise ValueError("label must be >= 2")
        self.a = a
        self.b = b
        self.m = m
        self.identity = DihedralElement(k=0, tail=())

    def other(self, t: str) -> str:
        if t == self.a:
            return self.b
        if t == self.b:
            return self.a
        raise ValueError(f"unknown generator {t!r}")

    def _last_letter(self, simple: tuple[str, int]) -> str:
        first, length = simple
        return first if length % 2 == 1 else self.other(first)

    def _tau_tail(self, tail: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
        if self.m % 2 == 0:
            return tail
        return tuple((self.other(f), l) for f, l in tail)

    def _mult_pos_atom(self, el: DihedralElement, t: str) -> DihedralElement:
        k, tail = el.k, el.tail
        if tail and self._last_letter(tail[-1]) != t:
            first, length = tail[-1]
            if length + 1 == self.m:
                # the last simple fills up to Delta; migrate it left
                return DihedralElement(k=k + 1, tail=self._tau_tail(tail[:-1]))
            return DihedralElement(k=k, tail=tail[:-1] + ((first, length + 1),))
        return DihedralElement(k=k, tail=tail + ((t, 1),))

    def _mult_neg_atom(self, el: DihedralElement, t: str) -> DihedralElement:
        # t^-1 = Delta^-1 . (Delta t^-1), the latter a proper simple of
        # length m-1 starting with t when m is odd, with the other letter
        # when m is even
        out = DihedralElement(k=el.k - 1, tail=self._tau_tail(el.tail))
        first = t if self.m % 2 == 1 else self.other(t)
        letter = first
        for _ in range(self.m - 1):
            out = self._mult_pos_atom(out, letter)
            letter = self.other(letter)
        return out

    def mult_gen(self, el: DihedralElement, letter: str, sign: int) -> DihedralElement:
        if letter not in (self.a, self.b):
            raise ValueError(f"unknown generator {letter!r}")
        if sign == 1:
            return self._mult_pos_atom(el, letter)
        if sign == -1:
            return self._mult_neg_atom(el, letter)
        raise ValueError(f"sign must be +-1, got {sign}")

    def mult_word(self, el: DihedralElement, word: Iterable[tuple[str, int]]) -> DihedralElement:
        for letter, sign in word:
            el = self.mult_gen(el, letter, sign)
        return el

    def epsilon(self, el: DihedralElement) -> int:
        """Exponent-sum homomorphism (both generators to 1)."""
        return el.k * self.m + sum(l for _, l in el.tail)

    def sort_key(self, el: DihedralElement):
        return (el.k, len(el.tail), el.tail)


def normal_form(ctx: DihedralGroupCtx, word: Iterable[tuple[str, int]]) -> DihedralElement:
    return ctx.mult_word(ctx.identity, word)


def equals(ctx: DihedralGroupCtx, w1: Iterable[tuple[str, int]], w2: Iterable[tuple[str, int]]) -> bool:
    return normal_form(ctx, w1) == normal_form(ctx, w2)


def ball_levels(
    ctx: "DihedralGroupCtx | FreeGroupCtx", radius: int, cap: int = 10**6
) -> tuple[list[list], bool]:
    """BFS levels of the word metric ball, generically over any context with
    identity, generator list and mult_gen.

    Only complete levels are kept: when adding the next level would pass the
    cap, enumeration stops and the truncated flag is set.  levels[d] holds
    exactly the elements at distance d, each level sorted by the context's
    sort key.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    gens = context_generators(ctx)
    seen = {ctx.identity}
    levels: list[list] = [[ctx.identity]]
    frontier = [ctx.identity]
    for _ in range(radius):
        nxt = set()
        for el in frontier:
            for g in gens:
                for sign in (1, -1):
                    w = ctx.mult_gen(el, g, sign)
                    if w not in seen and w not in nxt:
                        nxt.add(w)
        if not nxt:
            return levels, False
        if len(seen) + len(nxt) > cap:
            return levels, True
        frontier = sorted(nxt, key=ctx.sort_key)
        levels.append(frontier)
        seen.update(nxt)
    return levels, False


def ball(ctx: "DihedralGroupCtx | FreeGroupCtx", radius: int, cap: int = 10**6) -> list:
    """All elements of word length <= radius, sorted level by level.

    Raises :class:`CapExceeded` when the cap cuts enumeration short.
    """
    levels, truncated = ball_levels(ctx, radius, cap)
    if truncated:
        raise CapExceeded(
            requested_radius=radius,
            completed_radius=len(levels) - 1,
            count=sum(len(l) for l in levels),
            cap=cap,
        )
    return [el for level in levels for el in level]


def context_generators(ctx) -> tuple[str, ...]:
    if isinstance(ctx, DihedralGroupCtx):
        return (ctx.a, ctx.b)
    return tuple(ctx.generators)


def coset_rep(ctx: DihedralGroupCtx, g: DihedralElement, generator: str) -> DihedralElement:
    """The unique element of g<generator> with exponent sum zero.

    Radius independent, so two elements agree here exactly when their cosets
    coincide.
    """
    e = ctx.epsilon(g)
    sign = -1 if e > 0 else 1
    return ctx.mult_word(g, ((generator, sign),) * abs(e))


class FreeGroupCtx:
    """Free group on any number of generators; elements are reduced words."""

    def __init__(self, generators: Sequence[str]):
        if len(set(generators)) != len(generators) or not generators:
            raise ValueError("generators must be distinct and non-empty")
        self.generators = tuple(generators)
        self.identity: Word = ()

    def mult_gen(self, el: Word, letter: str, sign: int) -> Word:
        if letter not in self.generators:
            raise ValueError(f"unknown generator {letter!r}")
        if el and el[-1] == (letter, -sign):
            return el[:-1]
        return el + ((letter, sign),)

    def mult_word(self, el: Word, word: Iterable[tuple[str, int]]) -> Word:
        for letter, sign in word:
            el = self.mult_gen(el, letter, sign)
        return el

    def sort_key(self, el: Word):
        return (len(el), el)


# ---------------------------------------------------------------------------
# engines: the oracle contract used by link development


class DihedralEngine:
    """Exact engine for a two-generator part with a finite label."""

    exact = True

    def __init__(self, a: str, b: str, m: int):
        self.ctx = DihedralGroupCtx(a, b, m)
        self.generators = (a, b)

    @property
    def identity(self) -> DihedralElement:
        return self.ctx.identity

    def mult_gen(self, el, letter, sign):
        return self.ctx.mult_gen(el, letter, sign)

    def equals(self, w1: Word, w2: Word) -> bool:
        return equals(self.ctx, w1, w2)

    def ball_levels(self, radius: int, cap: int = 10**6):
        return ball_levels(self.ctx, radius, cap)

    def coset_key(self, el: DihedralElement, generator: str) -> tuple:
        rep = coset_rep(self.ctx, el, generator)
        return (generator, rep.k, rep.tail)

    def sort_key(self, el):
        return self.ctx.sort_key(el)

    def describe(self, el: DihedralElement) -> str:
        if el.k == 0 and not el.tail:
            return "1"
        parts = []
        if el.k != 0:
            parts.append(f"D^{el.k}")
        for first, length in el.tail:
            parts.append("".join(first if i % 2 == 0 else self.ctx.other(first) for i in range(length)))
        return ".".join(parts)


class FreeEngine:
    """Exact engine for an edgeless part (free group; rank 1 is the integers)."""

    exact = True

    def __init__(self, generators: Sequence[str]):
        self.ctx = FreeGroupCtx(generators)
        self.generators = self.ctx.generators

    @property
    def identity(self) -> Word:
        return self.ctx.identity

    def mult_gen(self, el, letter, sign):
        return self.ctx.mult_gen(el, letter, sign)

    def equals(self, w1: Word, w2: Word) -> bool:
        return self.ctx.mult_word(self.ctx.identity, w1) == self.ctx.mult_word(
            self.ctx.identity, w2
        )

    def ball_levels(self, radius: int, cap: int = 10**6):
        return ball_levels(self.ctx, radius, cap)

    def coset_key(self, el: Word, generator: str) -> tuple:
        while el and el[-1][0] == generator:
            el = el[:-1]
        return (generator, el)

    def sort_key(self, el):
        return self.ctx.sort_key(el)

    def describe(self, el: Word) -> str:
        return word_to_str(el) if el else "1"


class CoxeterQuotientEngine:
    """Images in the finite dihedral group of order 2m.

    Elements are pairs (rotation index mod m, reflection bit).  Distinct
    images prove distinct group elements; equal images prove nothing, so
    ``equals`` answers False or None and ``exact`` is False.
    """

    exact = False

    def __init__(self, a: str, b: str, m: int):
        if m < 2:
            raise ValueError("label must be >= 2")
        self.a, self.b, self.m = a, b, m
        self.generators = (a, b)
        self.identity = (0, 0)

    def mult_gen(self, el: tuple[int, int], letter: str, sign: int) -> tuple[int, int]:
        if letter == self.a:
            g = (0, 1)
        elif letter == self.b:
            g = (1, 1)
        else:
            raise ValueError(f"unknown generator {letter!r}")
        # reflections are involutions, sign does not matter
        j, d = el
        jp, dp = g
        return ((j + (jp if d == 0 else -jp)) % self.m, d ^ dp)

    def image(self, word: Word) -> tuple[int, int]:
        el = self.identity
        for letter, sign in word:
            el = self.mult_gen(el, letter, sign)
        return el

    def equals(self, w1: Word, w2: Word) -> bool | None:
        return False if self.image(w1) != self.image(w2) else None

    def sort_key(self, el):
        return el


def engine_for_part(graph, part: Sequence[str]):
    """Exact engine for a family part when one exists, else None.

    Supported: any edgeless part (free group, rank 1 included) and any
    two-vertex part with an edge (dihedral).
    """
    verts = sorted(part)
    sub = graph.induced(verts)
    if not sub.edges:
        return FreeEngine(verts)
    if len(verts) == 2 and len(sub.edges) == 1:
        u, v, m = sub.edges[0]
        return DihedralEngine(u, v, m)
    return None
