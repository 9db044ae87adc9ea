"""Laurence generators of Aut(A_Γ) and the algebra of automorphisms.

Composition convention: ``compose(phi, psi)`` is "phi after psi", so
``compose(phi, psi)(v) == phi(psi(v))``; ``phi @ psi`` means the same thing.
Abelianization matrices act on column exponent vectors, column v being the
exponent vector of ``phi(v)``, so the matrix of ``phi @ psi`` is the product
of the two matrices in that order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, dominates, star_complement_components
from .words import Word, invert_letters

KINDS = ("R", "L", "P", "inv", "perm")


class AutomorphismError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    """Symbolic name of a transvection, partial conjugation, inversion or graph symmetry.

    For ``R``/``L`` the acted vertex is ``vertex`` and the acting one ``acting``
    (``R[v<-w]`` sends v to v w). For ``P`` the acting vertex is ``vertex`` and
    ``component`` the conjugated component. ``cycles`` holds a graph
    symmetry in cycle notation.
    """

    kind: str
    vertex: str = ""
    acting: str = ""
    component: tuple[str, ...] = ()
    cycles: tuple[tuple[str, ...], ...] = field(default=())

    @property
    def name(self) -> str:
        if self.kind in ("R", "L"):
            return f"{self.kind}[{self.vertex}<-{self.acting}]"
        if self.kind == "P":
            return f"P[{self.vertex}|{{{','.join(self.component)}}}]"
        if self.kind == "inv":
            return f"inv[{self.vertex}]"
        return "perm[" + "".join("(" + " ".join(c) + ")" for c in self.cycles) + "]"

    def __str__(self) -> str:
        return self.name

    @property
    def is_transvection(self) -> bool:
        return self.kind in ("R", "L")

    @property
    def infinite_order(self) -> bool:
        return self.kind in ("R", "L", "P")

    @classmethod
    def parse(cls, text: str) -> "Generator":
        m = re.fullmatch(r"([RL])\[([^<\s\[\]]+)<-([^\s\[\]]+)\]", text)
        if m:
            return cls(m.group(1), m.group(2), m.group(3))
        m = re.fullmatch(r"P\[([^|\s]+)\|\{([^{}\s]*)\}\]", text)
        if m:
            comp = tuple(x for x in m.group(2).split(",") if x)
            if not comp:
                raise AutomorphismError(f"empty component in {text!r}")
            return cls("P", m.group(1), component=comp)
        m = re.fullmatch(r"inv\[([^\s\[\]]+)\]", text)
        if m:
            return cls("inv", m.group(1))
        m = re.fullmatch(r"perm\[((?:\([^()]*\))*)\]", text)
        if m:
            cycles = tuple(tuple(c.split()) for c in re.findall(r"\(([^()]*)\)", m.group(1)))
            return cls("perm", cycles=tuple(c for c in cycles if c))
        raise AutomorphismError(f"cannot parse generator name {text!r}")


# -- automorphisms -------------------------------------------------------


class Automorphism:
    """An endomorphism of A_Γ given by normal-form images of the vertices.

    ``provenance`` (when present) is a tuple of ``(Generator, exponent)``
    pairs whose product, leftmost applied last, equals this map.
    """

    __slots__ = ("graph", "images", "provenance")

    def __init__(self, graph: Graph, images: Sequence[Sequence[int]], provenance=None, *, normalize=True):
        if len(images) != graph.n:
            raise AutomorphismError("one image per vertex required")
        if normalize:
            k = graph.word_kernel
            images = tuple(k.normal_form(tuple(img)) for img in images)
        self.graph = graph
        self.images = tuple(images)
        self.provenance = None if provenance is None else tuple(provenance)

    @classmethod
    def identity(cls, G: Graph) -> "Automorphism":
        return _identity(G)

    @classmethod
    def from_words(cls, G: Graph, images: dict[str, Word | str], inverse: dict[str, Word | str] | None = None):
        """Build from explicit images; ``inverse`` (if given) must compose to the identity.

        Without an inverse the map is only checked to be an endomorphism.
        """
        def as_images(m):
            out = []
            for v in G.vertices:
                w = m.get(v, v)
                out.append(w.letters if isinstance(w, Word) else Word.parse(G, w).letters)
            return out

        phi = cls(G, as_images(images))
        if not phi.is_endomorphism():
            raise AutomorphismError("images of adjacent vertices do not commute")
        if inverse is not None:
            psi = cls(G, as_images(inverse))
            ident = _identity(G)
            if compose(phi, psi) != ident or compose(psi, phi) != ident:
                raise AutomorphismError("supplied inverse does not invert the map")
        return phi

    def is_endomorphism(self) -> bool:
        k = self.graph.word_kernel
        for i, j in self.graph._edge_pairs:
            a, b = self.images[i], self.images[j]
            if k.normal_form(a + b) != k.normal_form(b + a):
                return False
        return True

    def image(self, v: str) -> Word:
        return Word(self.graph, self.images[self.graph.index(v)])

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)

    def __pow__(self, n: int) -> "Automorphism":
        return power(self, n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.images == other.images and self.graph == other.graph

    def __hash__(self) -> int:
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(img == (i + 1,) for i, img in enumerate(self.images))

    def image_strings(self) -> dict[str, str]:
        return {v: str(Word(self.graph, img)) for v, img in zip(self.graph.vertices, self.images)}

    def __repr__(self) -> str:
        body = ", ".join(f"{v}->{w or '1'}" for v, w in self.image_strings().items())
        return f"Automorphism({body})"


@lru_cache(maxsize=None)
def _identity(G: Graph) -> Automorphism:
    return Automorphism(G, [(i + 1,) for i in range(G.n)], (), normalize=False)


def _same_graph(*phis: Automorphism) -> Graph:
    G = phis[0].graph
    for p in phis[1:]:
        if p.graph is not G and p.graph != G:
            raise AutomorphismError("automorphisms of different graphs")
    return G


def apply(phi: Automorphism, w: Word) -> Word:
    G = phi.graph
    if w.graph is not G and w.graph != G:
        raise AutomorphismError("word and automorphism live over different graphs")
    return Word(G, G.word_kernel.substitute(w.letters, phi.images))


def compose(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """phi after psi."""
    G = _same_graph(phi, psi)
    prov = None
    if phi.provenance is not None and psi.provenance is not None:
        prov = phi.provenance + psi.provenance
    return Automorphism(G, G.word_kernel.compose(phi.images, psi.images), prov, normalize=False)


def equal(phi: Automorphism, psi: Automorphism) -> bool:
    _same_graph(phi, psi)
    return phi.images == psi.images


def inverse(phi: Automorphism) -> Automorphism:
    """Inverse computed from generator provenance with closed-form generator inverses."""
    if phi.provenance is None:
        raise AutomorphismError("inverse needs generator provenance")
    G = phi.graph
    result = _identity(G)
    for gen, e in phi.provenance:
        # (g1^e1 ... gk^ek)^-1 = gk^-ek ... g1^-e1
        result = compose(generator_power(G, gen, -e), result)
    return Automorphism(G, result.images, tuple((g, -e) for g, e in reversed(phi.provenance)), normalize=False)


def power(phi: Automorphism, n: int) -> Automorphism:
    G = phi.graph
    if n < 0:
        return power(inverse(phi), -n)
    result = _identity(G)
    base = phi
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def commutes(phi: Automorphism, psi: Automorphism, max_power: int = 1) -> tuple[int, int] | None:
    """Least (n, m), lexicographically, with phi^n and psi^m commuting; None if none up to max_power."""
    _same_graph(phi, psi)
    if max_power < 1:
        raise AutomorphismError("max_power must be positive")
    k = phi.graph.word_kernel
    pp = [phi.images]
    qq = [psi.images]
    for _ in range(max_power - 1):
        pp.append(k.compose(phi.images, pp[-1]))
        qq.append(k.compose(psi.images, qq[-1]))
    for n, a in enumerate(pp, 1):
        for m, b in enumerate(qq, 1):
            if k.compose(a, b) == k.compose(b, a):
                return n, m
    return None


def commutation_images(phi: Automorphism, psi: Automorphism, n: int, m: int) -> tuple[Automorphism, Automorphism]:
    """(phi^n psi^m, psi^m phi^n); used to audit commutation witnesses."""
    a, b = power(phi, n), power(psi, m)
    return compose(a, b), compose(b, a)


def abelianization_matrix(phi: Automorphism) -> np.ndarray:
    G = phi.graph
    M = np.zeros((G.n, G.n), dtype=np.int64)
    for col, img in enumerate(phi.images):
        for x in img:
            M[abs(x) - 1, col] += 1 if x > 0 else -1
    return M


# -- generators ------------------------------------------------------------


def make_transvection(G: Graph, side: str, v: str, w: str) -> Automorphism:
    side = {"right": "R", "left": "L"}.get(side, side)
    if side not in ("R", "L"):
        raise AutomorphismError(f"side must be right/left, got {side!r}")
    if v == w:
        raise AutomorphismError("transvection needs two distinct vertices")
    if not dominates(G, v, w):
        raise AutomorphismError(f"{v} is not dominated by {w}: lk({v}) not in st({w})")
    return generator_power(G, Generator(side, v, w), 1)


def make_partial_conjugation(G: Graph, v: str, component: Iterable[str]) -> Automorphism:
    comp = set(component)
    for C in star_complement_components(G, v):
        if set(C) == comp:
            return generator_power(G, Generator("P", v, component=C), 1)
    raise AutomorphismError(f"{sorted(comp)} is not a component of Γ - st({v})")


def make_inversion(G: Graph, v: str) -> Automorphism:
    G.index(v)
    return generator_power(G, Generator("inv", v), 1)


def make_graph_automorphism(G: Graph, sigma: dict[str, str]) -> Automorphism:
    return generator_power(G, permutation_generator(G, sigma), 1)


def permutation_generator(G: Graph, sigma: dict[str, str]) -> Generator:
    full = {v: sigma.get(v, v) for v in G.vertices}
    if sorted(full.values()) != sorted(G.vertices):
        raise AutomorphismError("not a permutation of the vertices")
    for u, v in G.edges:
        if not G.adjacent(full[u], full[v]):
            raise AutomorphismError(f"permutation breaks edge {u}-{v}")
    seen = set()
    cycles = []
    for v in G.vertices:
        if v in seen or full[v] == v:
            continue
        cyc = [v]
        seen.add(v)
        x = full[v]
        while x != v:
            cyc.append(x)
            seen.add(x)
            x = full[x]
        cycles.append(tuple(cyc))
    return Generator("perm", cycles=tuple(cycles))


def _perm_map(gen: Generator) -> dict[str, str]:
    m = {}
    for cyc in gen.cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            m[a] = b
    return m


def validate_generator(G: Graph, gen: Generator) -> None:
    """Raise AutomorphismError unless ``gen`` names a generator of Aut(A_G)."""
    try:
        if gen.kind in ("R", "L"):
            if gen.vertex == gen.acting or not dominates(G, gen.vertex, gen.acting):
                raise AutomorphismError(f"{gen.name}: domination fails")
        elif gen.kind == "P":
            if tuple(gen.component) not in star_complement_components(G, gen.vertex):
                raise AutomorphismError(f"{gen.name}: not a component of Γ - st({gen.vertex})")
        elif gen.kind == "inv":
            G.index(gen.vertex)
        elif gen.kind == "perm":
            m = _perm_map(gen)
            if len(m) != sum(len(c) for c in gen.cycles):
                raise AutomorphismError(f"{gen.name}: repeated vertex in cycles")
            permutation_generator(G, m)
        else:
            raise AutomorphismError(f"unknown generator kind {gen.kind!r}")
    except ValueError as exc:
        if isinstance(exc, AutomorphismError):
            raise
        raise AutomorphismError(str(exc)) from None


@lru_cache(maxsize=200_000)
def generator_power(G: Graph, gen: Generator, e: int) -> Automorphism:
    """gen^e with closed-form images; validates the descriptor."""
    validate_generator(G, gen)
    if e == 0:
        return _identity(G)
    k = G.word_kernel
    imgs = [(i + 1,) for i in range(G.n)]
    if gen.kind in ("R", "L"):
        v, w = G.index(gen.vertex) + 1, G.index(gen.acting) + 1
        s = 1 if e > 0 else -1
        ws = (s * w,) * abs(e)
        imgs[v - 1] = (v,) + ws if gen.kind == "R" else ws + (v,)
    elif gen.kind == "P":
        v = G.index(gen.vertex) + 1
        s = 1 if e > 0 else -1
        pre = (s * v,) * abs(e)
        for u in gen.component:
            j = G.index(u)
            imgs[j] = pre + (j + 1,) + invert_letters(pre)
    elif gen.kind == "inv":
        v = G.index(gen.vertex)
        if e % 2:
            imgs[v] = (-(v + 1),)
    else:
        perm = list(range(G.n))
        step = {G.index(a): G.index(b) for a, b in _perm_map(gen).items()}
        if e < 0:
            step = {b: a for a, b in step.items()}
        for _ in range(abs(e)):
            perm = [step.get(p, p) for p in perm]
        imgs = [(perm[i] + 1,) for i in range(G.n)]
    imgs = [k.normal_form(img) for img in imgs]
    return Automorphism(G, imgs, ((gen, e),), normalize=False)


def generator_automorphism(G: Graph, gen: Generator) -> Automorphism:
    return generator_power(G, gen, 1)


@dataclass(frozen=True)
class GeneratorNode:
    """A member of S: the generator kept after image deduplication plus its duplicates."""

    generator: Generator
    aliases: tuple[Generator, ...]
    automorphism: Automorphism = field(compare=False, repr=False)

    @property
    def name(self) -> str:
        return self.generator.name

    @property
    def members(self) -> tuple[Generator, ...]:
        return (self.generator,) + self.aliases


@lru_cache(maxsize=4096)
def generator_table(G: Graph) -> tuple[GeneratorNode, ...]:
    """S for Aut*(A_Γ): transvections (R before L per dominating pair), then partial conjugations.

    Generators with identical image maps are merged into the first one.
    """
    raw: list[Generator] = []
    for v in G.vertices:
        for w in G.vertices:
            if v != w and dominates(G, v, w):
                raw.append(Generator("R", v, w))
                raw.append(Generator("L", v, w))
    for v in G.vertices:
        for C in star_complement_components(G, v):
            raw.append(Generator("P", v, component=C))
    kept: dict[tuple, list] = {}
    order = []
    for gen in raw:
        phi = generator_power(G, gen, 1)
        slot = kept.get(phi.images)
        if slot is None:
            kept[phi.images] = [gen, [], phi]
            order.append(phi.images)
        else:
            slot[1].append(gen)
    return tuple(GeneratorNode(kept[k][0], tuple(kept[k][1]), kept[k][2]) for k in order)


def enumerate_generators(G: Graph) -> list[Generator]:
    return [node.generator for node in generator_table(G)]


def inversions(G: Graph) -> list[Generator]:
    return [Generator("inv", v) for v in G.vertices]


def graph_symmetries(G: Graph) -> list[Generator]:
    """All graph automorphisms of Γ (brute force; meant for small graphs)."""
    import itertools

    out = []
    for perm in itertools.permutations(G.vertices):
        sigma = dict(zip(G.vertices, perm))
        if all(G.adjacent(sigma[u], sigma[v]) for u, v in G.edges):
            out.append(permutation_generator(G, sigma))
    return out


# -- inner automorphisms ------------------------------------------------------


def conjugation(G: Graph, g: Word) -> Automorphism:
    """The inner automorphism x -> g x g^-1."""
    k = G.word_kernel
    gl = k.normal_form(g.letters)
    gi = invert_letters(gl)
    return Automorphism(G, [k.normal_form(gl + (i + 1,) + gi) for i in range(G.n)], normalize=False)


def is_inner_bounded(G: Graph, phi: Automorphism, length_bound: int = 4) -> Word | None:
    """A shortest g with |g| <= length_bound and phi(v) = g v g^-1 for every v, or None.

    None only means no such g within the bound. The search peels one letter
    of g at a time; a branch is dropped once some image is longer than
    2 * (remaining budget) + 1, which no shorter conjugator could produce.
    """
    _same_graph(phi, _identity(G))
    if phi.is_identity():
        return Word(G, ())
    if not np.array_equal(abelianization_matrix(phi), np.eye(G.n, dtype=np.int64)):
        return None
    k = G.word_kernel
    letters = [s * (i + 1) for i in range(G.n) for s in (1, -1)]
    ident = _identity(G).images

    def search(images, budget, failed):
        if images == ident:
            return ()
        if budget == 0:
            return None
        limit = 2 * budget + 1
        if any(len(img) > limit for img in images):
            return None
        key = (images, budget)
        if key in failed:
            return None
        for x in letters:
            nxt = tuple(k.normal_form((-x,) + img + (x,)) for img in images)
            rest = search(nxt, budget - 1, failed)
            if rest is not None:
                return (x,) + rest
        failed.add(key)
        return None

    failed: set = set()
    for bound in range(1, length_bound + 1):
        found = search(phi.images, bound, failed)
        if found is not None:
            return Word(G, k.normal_form(found))
    return None
