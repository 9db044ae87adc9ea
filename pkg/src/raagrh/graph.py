"""Finite simplicial graphs: links, stars, domination, small-graph enumeration."""

from __future__ import annotations

import hashlib
import itertools
import json
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import networkx as nx

from .kernels import WordKernel, canonical_code

MAX_CANONICAL_VERTICES = 8


class GraphError(ValueError):
    """Malformed graph or a vertex that does not belong to it."""


class Graph:
    """Immutable simple graph with named vertices.

    The declared vertex order is the total order used by normal forms,
    generator enumeration and canonicalization.
    """

    __slots__ = ("vertices", "_index", "_adj", "_edge_pairs", "__dict__")

    def __init__(self, vertices: Sequence[str], edges: Iterable[Sequence[str]] = ()):
        vertices = tuple(vertices)
        for v in vertices:
            if not isinstance(v, str) or not v:
                raise GraphError(f"vertex names must be nonempty strings, got {v!r}")
            if any(ch.isspace() for ch in v) or "^" in v:
                raise GraphError(f"vertex name {v!r} may not contain whitespace or '^'")
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphError("duplicate vertex names")
        adj = [0] * len(vertices)
        pairs = set()
        for e in edges:
            e = tuple(e)
            if len(e) != 2:
                raise GraphError(f"edge {e!r} is not a pair")
            u, v = e
            if u not in index or v not in index:
                raise GraphError(f"edge {e!r} uses an undeclared vertex")
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            i, j = sorted((index[u], index[v]))
            if (i, j) in pairs:
                raise GraphError(f"repeated edge {u}-{v}")
            pairs.add((i, j))
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self.vertices = vertices
        self._index = index
        self._adj = tuple(adj)
        self._edge_pairs = tuple(sorted(pairs, key=lambda p: (p[1], p[0])))

    # -- basic structure -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple[tuple[str, str], ...]:
        return tuple((self.vertices[i], self.vertices[j]) for i, j in self._edge_pairs)

    @property
    def adjacency_masks(self) -> tuple[int, ...]:
        return self._adj

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self._adj[self.index(u)] >> self.index(v) & 1)

    def _names(self, mask: int) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def _mask(self, names: Iterable[str]) -> int:
        m = 0
        for v in names:
            m |= 1 << self.index(v)
        return m

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self._edge_pairs == other._edge_pairs

    def __hash__(self) -> int:
        return hash((self.vertices, self._edge_pairs))

    def __repr__(self) -> str:
        es = ", ".join(f"{u}-{v}" for u, v in self.edges)
        return f"Graph([{', '.join(self.vertices)}]; {es})"

    def __reduce__(self):
        return (Graph, (self.vertices, self.edges))

    @cached_property
    def word_kernel(self) -> WordKernel:
        full = (1 << self.n) - 1
        noncomm = []
        for i in range(self.n):
            others = full & ~self._adj[i] & ~(1 << i)
            noncomm.append([j for j in range(self.n) if others >> j & 1])
        return WordKernel(noncomm)

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "vertices" not in data:
            raise GraphError("graph JSON must be an object with 'vertices' and 'edges'")
        edges = data.get("edges", [])
        if not isinstance(data["vertices"], list) or not isinstance(edges, list):
            raise GraphError("'vertices' and 'edges' must be arrays")
        return cls(data["vertices"], edges)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)

    def digest(self) -> str:
        """sha256 of the compact JSON form; labels matter."""
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{u}" -- "{v}";' for u, v in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def relabel(self, mapping: dict[str, str]) -> "Graph":
        """Same graph with vertex ``v`` renamed to ``mapping[v]`` (order kept)."""
        return Graph([mapping[v] for v in self.vertices], [(mapping[u], mapping[v]) for u, v in self.edges])

    def permute(self, order: Sequence[str]) -> "Graph":
        """Same labelled graph with its vertex list reordered."""
        if sorted(order) != sorted(self.vertices):
            raise GraphError("order must be a permutation of the vertices")
        return Graph(order, self.edges)

    def induced(self, names: Iterable[str]) -> "Graph":
        keep = set(names)
        return Graph([v for v in self.vertices if v in keep], [e for e in self.edges if e[0] in keep and e[1] in keep])


# -- combinatorics -------------------------------------------------------


def link(G: Graph, v: str) -> tuple[str, ...]:
    return G._names(G._adj[G.index(v)])


def star(G: Graph, v: str) -> tuple[str, ...]:
    i = G.index(v)
    return G._names(G._adj[i] | 1 << i)


def _star_mask(G: Graph, i: int) -> int:
    return G._adj[i] | 1 << i


def dominates(G: Graph, v: str, w: str) -> bool:
    """True iff lk(v) is contained in st(w) (non-strict, so v <= v)."""
    i, j = G.index(v), G.index(w)
    return G._adj[i] & ~_star_mask(G, j) == 0


def equivalent(G: Graph, v: str, w: str) -> bool:
    return dominates(G, v, w) and dominates(G, w, v)


def equivalence_classes(G: Graph) -> list[tuple[str, ...]]:
    classes: list[list[str]] = []
    for v in G.vertices:
        for cls in classes:
            if equivalent(G, v, cls[0]):
                cls.append(v)
                break
        else:
            classes.append([v])
    return [tuple(c) for c in classes]


def maximal_vertices(G: Graph) -> tuple[str, ...]:
    return tuple(
        v for v in G.vertices if all(equivalent(G, v, w) for w in G.vertices if dominates(G, v, w))
    )


def _components_of_mask(G: Graph, mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= G._adj[b.bit_length() - 1]
                f ^= b
            frontier = nxt & mask & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def components(G: Graph) -> list[tuple[str, ...]]:
    return [G._names(c) for c in _components_of_mask(G, (1 << G.n) - 1)]


def star_complement_components(G: Graph, v: str) -> list[tuple[str, ...]]:
    """Connected components of the subgraph induced on V - st(v).

    Components come out ordered by their least vertex.
    """
    i = G.index(v)
    mask = ((1 << G.n) - 1) & ~_star_mask(G, i)
    return [G._names(c) for c in _components_of_mask(G, mask)]


def is_connected(G: Graph) -> bool:
    return len(components(G)) <= 1


def is_complete(G: Graph) -> bool:
    return len(G._edge_pairs) == G.n * (G.n - 1) // 2


# -- canonical forms and enumeration ---------------------------------------


def _canonical(G: Graph) -> tuple[int, tuple[int, ...]]:
    if G.n > MAX_CANONICAL_VERTICES:
        raise GraphError(f"canonical_form supports at most {MAX_CANONICAL_VERTICES} vertices")
    return canonical_code(G.n, G._adj)


def _graph_from_code(n: int, code: int) -> Graph:
    total = n * (n - 1) // 2
    edges = []
    bit = total - 1
    for k in range(1, n):
        for i in range(k):
            if code >> bit & 1:
                edges.append((str(i), str(k)))
            bit -= 1
    return Graph([str(i) for i in range(n)], edges)


def canonical_form(G: Graph) -> Graph:
    """Relabelled copy of G on vertices "0".."n-1" with the least adjacency code.

    Isomorphic graphs give equal results.
    """
    code, _ = _canonical(G)
    return _graph_from_code(G.n, code)


def canonical_labeling(G: Graph) -> tuple[str, ...]:
    """Original vertex names in canonical position order."""
    _, order = _canonical(G)
    return tuple(G.vertices[i] for i in order)


def graph6(G: Graph) -> str:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G._edge_pairs)
    return nx.to_graph6_bytes(g, header=False).decode().strip()


def canonical_encoding(G: Graph) -> str:
    """graph6 string of the canonical form; a complete isomorphism invariant."""
    return graph6(canonical_form(G))


def enumerate_graphs(n: int, up_to_iso: bool = True) -> Iterator[Graph]:
    """All simple graphs on vertices "0".."n-1".

    With ``up_to_iso`` one canonical representative per isomorphism class is
    produced, in increasing code order.
    """
    if not 1 <= n <= MAX_CANONICAL_VERTICES:
        raise GraphError(f"n must be between 1 and {MAX_CANONICAL_VERTICES}")
    names = [str(i) for i in range(n)]
    pairs = [(i, k) for k in range(1, n) for i in range(k)]
    if not up_to_iso:
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            yield Graph(names, [(names[i], names[k]) for (i, k), b in zip(pairs, bits) if b])
        return
    for code in _iso_codes(n):
        yield _graph_from_code(n, code)


def _iso_codes(n: int) -> list[int]:
    # one-vertex extensions of the (n-1)-vertex classes reach every class
    if n == 1:
        return [0]
    codes = set()
    for g in (_graph_from_code(n - 1, c) for c in _iso_codes(n - 1)):
        base = list(g._adj) + [0]
        for nbrs in range(1 << (n - 1)):
            adj = base[:]
            adj[n - 1] = nbrs
            for i in range(n - 1):
                if nbrs >> i & 1:
                    adj[i] |= 1 << (n - 1)
            codes.add(canonical_code(n, adj)[0])
    return sorted(codes)


# -- named graphs -------------------------------------------------------


def path_graph(names: Sequence[str]) -> Graph:
    return Graph(names, list(zip(names, names[1:])))


def cycle_graph(n: int, prefix: str = "v") -> Graph:
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Graph(names, [(names[i], names[(i + 1) % n]) for i in range(n)])


def complete_graph(names: Sequence[str]) -> Graph:
    return Graph(names, itertools.combinations(names, 2))


def edgeless_graph(names: Sequence[str]) -> Graph:
    return Graph(names, [])


def figure_left() -> Graph:
    """Ten-cycle v1..v10 with an apex c joined to v2, v3, v7, v8."""
    g = cycle_graph(10)
    return Graph(list(g.vertices) + ["c"], list(g.edges) + [("c", x) for x in ("v2", "v3", "v7", "v8")])


def figure_right() -> Graph:
    """Five-cycle with two non-adjacent apexes a, b each joined to the whole cycle."""
    g = cycle_graph(5)
    cyc = list(g.vertices)
    return Graph(["a", "b"] + cyc, list(g.edges) + [(x, v) for x in ("a", "b") for v in cyc])
