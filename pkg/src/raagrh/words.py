"""Elements of A_Γ as words in signed vertex letters, with a solved word problem.

Internally a letter is the int ``i + 1`` (vertex i) or ``-(i + 1)`` (its
inverse). The normal form deletes every pair x ... x^-1 separated only by
letters commuting with x and then takes the lexicographically least
commutation shuffle, vertices ordered as declared and x before x^-1.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, NamedTuple

from .graph import Graph, GraphError


class WordError(ValueError):
    pass


class Letter(NamedTuple):
    vertex: str
    sign: int


def encode_letter(G: Graph, vertex: str, sign: int = 1) -> int:
    if sign not in (1, -1):
        raise WordError(f"sign must be +1 or -1, got {sign}")
    try:
        return sign * (G.index(vertex) + 1)
    except GraphError as exc:
        raise WordError(str(exc)) from None


def format_letters(G: Graph, letters: Iterable[int]) -> str:
    return " ".join(G.vertices[x - 1] if x > 0 else G.vertices[-x - 1] + "^-1" for x in letters)


def parse_letters(G: Graph, text: str) -> tuple[int, ...]:
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append(encode_letter(G, tok[:-3], -1))
        elif tok.endswith("^1"):
            out.append(encode_letter(G, tok[:-2], 1))
        else:
            out.append(encode_letter(G, tok, 1))
    return tuple(out)


def invert_letters(letters: Iterable[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(tuple(letters)))


class Word:
    """A word over V ∪ V^-1 tagged with its ambient graph.

    Not necessarily reduced; ``normal_form`` gives the canonical representative.
    """

    __slots__ = ("graph", "letters")

    def __init__(self, graph: Graph, letters: Iterable[int] = ()):
        letters = tuple(letters)
        n = graph.n
        for x in letters:
            if not isinstance(x, int) or x == 0 or abs(x) > n:
                raise WordError(f"letter code {x!r} out of range for {n} vertices")
        self.graph = graph
        self.letters = letters

    @classmethod
    def parse(cls, graph: Graph, text: str) -> "Word":
        return cls(graph, parse_letters(graph, text))

    @classmethod
    def from_letters(cls, graph: Graph, letters: Iterable[Letter | tuple[str, int]]) -> "Word":
        return cls(graph, (encode_letter(graph, v, s) for v, s in letters))

    @classmethod
    def identity(cls, graph: Graph) -> "Word":
        return cls(graph, ())

    def as_letters(self) -> tuple[Letter, ...]:
        V = self.graph.vertices
        return tuple(Letter(V[abs(x) - 1], 1 if x > 0 else -1) for x in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_letters(self.graph, self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self) or 'ε'})"

    def __eq__(self, other: object) -> bool:
        # letter-for-letter; use equal_words for group equality
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and self.graph == other.graph

    def __hash__(self) -> int:
        return hash(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self.graph, self, other)


def _check(G: Graph, *words: Word) -> None:
    for w in words:
        if w.graph is not G and w.graph != G:
            raise WordError("words live over different graphs")


def normal_form(G: Graph, w: Word) -> Word:
    _check(G, w)
    return Word(G, G.word_kernel.normal_form(w.letters))


def multiply(G: Graph, u: Word, v: Word) -> Word:
    _check(G, u, v)
    return Word(G, G.word_kernel.normal_form(u.letters + v.letters))


def invert(u: Word) -> Word:
    G = u.graph
    return Word(G, G.word_kernel.normal_form(invert_letters(u.letters)))


def equal_words(G: Graph, u: Word, v: Word) -> bool:
    _check(G, u, v)
    k = G.word_kernel
    return k.normal_form(u.letters) == k.normal_form(v.letters)


def abelianize(G: Graph, w: Word) -> dict[str, int]:
    """Exponent sum per vertex (every vertex present, zeros included)."""
    _check(G, w)
    return abelian_vector(G, w.letters)


def abelian_vector(G: Graph, letters: Iterable[int]) -> dict[str, int]:
    counts: Counter[int] = Counter()
    for x in letters:
        counts[abs(x) - 1] += 1 if x > 0 else -1
    return {v: counts[i] for i, v in enumerate(G.vertices)}
