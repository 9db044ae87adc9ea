"""Commutativity graphs of S (Aut*) and S' (Out*) and their certificates.

Certificates are plain JSON-able dicts. ``verify_certificate`` re-derives
everything from the graph: node inventory, every edge witness, edge
completeness, forest structure, the component count, the rank-2 evidence
and finally a digest over the content.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from .automorphisms import (
    Automorphism,
    AutomorphismError,
    Generator,
    abelianization_matrix,
    commutation_images,
    commutes,
    compose,
    generator_power,
    generator_table,
    inverse,
    is_inner_bounded,
    power,
)
from .graph import Graph, star, star_complement_components

log = logging.getLogger(__name__)

TARGETS = ("aut", "out")
DEFAULT_INNER_BOUND = 4
STRATEGIES = ("abelianization_log", "conjugation_exponent", "abelianization_conjugation", "grid_heuristic")
EXACT_STRATEGIES = STRATEGIES[:3]


class CertificateMismatch(ValueError):
    """The certificate was issued for a different graph."""


@dataclass(frozen=True)
class Node:
    """A vertex of K: one generator of S, or one class of generators in Out.

    ``members`` pairs each generator with +1 or -1 according to whether its
    image is the class element or its inverse; the first member has sign +1
    and names the node.
    """

    members: tuple[tuple[Generator, int], ...]
    automorphisms: tuple[Automorphism, ...] = field(compare=False, repr=False)

    @property
    def name(self) -> str:
        return self.members[0][0].name

    @property
    def representative(self) -> Generator:
        return self.members[0][0]

    @property
    def is_transvection_class(self) -> bool:
        return all(g.is_transvection for g, _ in self.members)

    def member_names(self) -> list[list]:
        return [[g.name, s] for g, s in self.members]

    def distinct(self) -> list[tuple[Generator, Automorphism]]:
        seen = set()
        out = []
        for (g, _), phi in zip(self.members, self.automorphisms):
            if phi.images not in seen:
                seen.add(phi.images)
                out.append((g, phi))
        return out


OutGeneratorClass = Node


def aut_nodes(G: Graph) -> list[Node]:
    nodes = []
    for entry in generator_table(G):
        members = tuple((g, 1) for g in entry.members)
        nodes.append(Node(members, tuple(entry.automorphism for _ in members)))
    return nodes


def _matrix_key(phi: Automorphism) -> bytes:
    return abelianization_matrix(phi).tobytes()


@lru_cache(maxsize=4096)
def out_image_generators(G: Graph, inner_bound: int = DEFAULT_INNER_BOUND) -> tuple[Node, ...]:
    """S' = nontrivial images of S in Out, grouped into classes.

    Partial conjugations whose acting vertex leaves a single component are
    inner and dropped. Two survivors share a class when phi psi^-1 is found
    inner (same element) or phi psi is found inner (mutually inverse
    elements), both by bounded conjugator search; image-identical generators
    were already merged in S.
    """
    entries = []
    for entry in generator_table(G):
        g = entry.generator
        if g.kind == "P" and len(star_complement_components(G, g.vertex)) == 1:
            continue
        entries.append(entry)
    k = len(entries)
    autos = [e.automorphism for e in entries]
    invs = [inverse(phi) for phi in autos]
    keys = [_matrix_key(phi) for phi in autos]
    inv_keys = [_matrix_key(phi) for phi in invs]

    parent = list(range(k))
    parity = [0] * k  # sign relative to parent: 0 same element, 1 inverse

    def find(i):
        if parent[i] == i:
            return i, 0
        r, p = find(parent[i])
        parent[i] = r
        parity[i] ^= p
        return r, parity[i]

    def union(i, j, rel):
        ri, pi = find(i)
        rj, pj = find(j)
        if ri == rj:
            if pi ^ pj != rel:
                log.warning("generator %s is conjugate to its own inverse in Out", entries[i].generator.name)
            return
        if rj < ri:
            ri, rj, pi, pj = rj, ri, pj, pi
        parent[rj] = ri
        parity[rj] = pi ^ pj ^ rel

    for i, j in itertools.combinations(range(k), 2):
        if find(i)[0] == find(j)[0]:
            continue
        if keys[i] == keys[j] and is_inner_bounded(G, compose(autos[i], invs[j]), inner_bound) is not None:
            union(i, j, 0)
        elif keys[i] == inv_keys[j] and is_inner_bounded(G, compose(autos[i], autos[j]), inner_bound) is not None:
            union(i, j, 1)

    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i)[0], []).append(i)
    nodes = []
    for root in sorted(groups):
        members = []
        phis = []
        for i in groups[root]:
            sign = -1 if find(i)[1] else 1
            for g in entries[i].members:
                members.append((g, sign))
                phis.append(autos[i])
        nodes.append(Node(tuple(members), tuple(phis)))
    return tuple(nodes)


# -- commutativity graph ------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    a: int
    b: int
    n: int
    m: int
    via: tuple[Generator, Generator]


@dataclass
class CommutativityGraph:
    graph: Graph
    target: str
    max_power: int
    inner_bound: int
    nodes: list[Node]
    edges: list[Edge]

    def names(self) -> list[str]:
        return [nd.name for nd in self.nodes]

    def neighbours(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {i: [] for i in range(len(self.nodes))}
        for e in self.edges:
            nb[e.a].append(e.b)
            nb[e.b].append(e.a)
        return nb

    def to_dot(self, forest: list[int] | None = None) -> str:
        tree = set(forest or ())
        lines = [f"graph K_{self.target} {{"]
        lines += [f'  "{nd.name}";' for nd in self.nodes]
        for idx, e in enumerate(self.edges):
            style = ' [color=red, penwidth=2]' if idx in tree else ""
            lines.append(f'  "{self.nodes[e.a].name}" -- "{self.nodes[e.b].name}"{style};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _edge_witness(x: Node, y: Node, max_power: int):
    best = None
    for ga, pa in x.distinct():
        for gb, pb in y.distinct():
            w = commutes(pa, pb, max_power)
            if w is not None and (best is None or w < best[0]):
                best = (w, (ga, gb))
    return best


def build_commutativity_graph(
    G: Graph, target: str = "aut", max_power: int = 1, inner_bound: int = DEFAULT_INNER_BOUND
) -> CommutativityGraph:
    """K(Aut*, S) or K(Out*, S'), edges from Aut-level power commutation.

    For class nodes an edge is recorded when some pair of members commute;
    the least witness over member pairs is kept.
    """
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}")
    if max_power < 1:
        raise ValueError("max_power must be at least 1")
    nodes = aut_nodes(G) if target == "aut" else list(out_image_generators(G, inner_bound))
    edges = []
    for i, j in itertools.combinations(range(len(nodes)), 2):
        found = _edge_witness(nodes[i], nodes[j], max_power)
        if found is not None:
            (n, m), via = found
            edges.append(Edge(i, j, n, m, via))
    edges.sort(key=lambda e: (nodes[e.a].name, nodes[e.b].name))
    return CommutativityGraph(G, target, max_power, inner_bound, nodes, edges)


def spanning_forest(num_nodes: int, edges: list[Edge]) -> tuple[list[int], int]:
    """Breadth-first forest (edge indices) rooted at the least unvisited node; and component count."""
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(num_nodes)}
    for idx, e in enumerate(edges):
        adj[e.a].append((e.b, idx))
        adj[e.b].append((e.a, idx))
    for lst in adj.values():
        lst.sort()
    seen = [False] * num_nodes
    forest = []
    comps = 0
    for root in range(num_nodes):
        if seen[root]:
            continue
        comps += 1
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, idx in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    forest.append(idx)
                    queue.append(y)
    return forest, comps


@dataclass
class ConnectivityCertificate:
    forest: list[int]
    components: int
    audit: list[dict]

    @property
    def connected(self) -> bool:
        return self.components == 1


def connectivity_certificate(K: CommutativityGraph) -> ConnectivityCertificate:
    forest, comps = spanning_forest(len(K.nodes), K.edges)
    audit = []
    for idx in forest:
        e = K.edges[idx]
        fwd, bwd = _witness_images(K.graph, e)
        audit.append({"edge": idx, "forward": fwd.image_strings(), "backward": bwd.image_strings()})
    return ConnectivityCertificate(forest, comps, audit)


def _witness_images(G: Graph, e: Edge) -> tuple[Automorphism, Automorphism]:
    return commutation_images(generator_power(G, e.via[0], 1), generator_power(G, e.via[1], 1), e.n, e.m)


# -- rank-2 evidence ------------------------------------------------------------


@dataclass
class Rank2Certificate:
    pair: tuple[str, str]
    via: tuple[Generator, Generator]
    exponents: tuple[int, int]
    strategy: str
    data: dict[str, Any]
    sound: bool

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "via": [g.name for g in self.via],
            "strategy": self.strategy,
            "exponents": list(self.exponents),
            "sound": self.sound,
            "data": self.data,
        }


class Rank2Error(ValueError):
    pass


def _matrix_power(M: np.ndarray, e: int) -> np.ndarray:
    return np.linalg.matrix_power(M.astype(object), e).astype(np.int64) if e >= 0 else None


def nilpotent_log(A: np.ndarray) -> tuple[np.ndarray, int] | None:
    """Integer matrix L and scale s with log(A) = L / s, or None if A is not unipotent."""
    d = A.shape[0]
    N = (A - np.eye(d, dtype=np.int64)).astype(object)
    if d and np.any(np.linalg.matrix_power(N, d) != 0):
        return None
    scale = math.lcm(*range(1, max(d, 2)))
    L = np.zeros((d, d), dtype=object)
    P = np.eye(d, dtype=object)
    for k in range(1, d):
        P = P.dot(N)
        if not np.any(P != 0):
            break
        L = L + ((-1) ** (k + 1)) * (scale // k) * P
    return L, scale


def independent(x: np.ndarray, y: np.ndarray) -> bool:
    """Rational linear independence of two integer matrices (as vectors)."""
    a = [int(t) for t in x.ravel()]
    b = [int(t) for t in y.ravel()]
    for i, j in itertools.combinations(range(len(a)), 2):
        if a[i] * b[j] - a[j] * b[i] != 0:
            return True
    return False


def _abelianization_log(G, ga, gb, n, m):
    A = _matrix_power(abelianization_matrix(generator_power(G, ga, 1)), n)
    B = _matrix_power(abelianization_matrix(generator_power(G, gb, 1)), m)
    if not np.array_equal(A.astype(object).dot(B), B.astype(object).dot(A)):
        raise Rank2Error("abelianization matrices do not commute")
    la, lb = nilpotent_log(A), nilpotent_log(B)
    if la is None or lb is None:
        raise Rank2Error("abelianization matrix is not unipotent")
    if not independent(la[0], lb[0]):
        raise Rank2Error("matrix logarithms are linearly dependent")
    return {"A": A.tolist(), "B": B.tolist(), "logA": [[int(t) for t in r] for r in la[0]],
            "logB": [[int(t) for t in r] for r in lb[0]], "log_scale": la[1]}


def _conj_pattern(G: Graph, sides, ga: Generator, gb: Generator, n: int, m: int) -> bool:
    """Check s^(n j) s2^(m k) on each test vertex for j, k in {0, 1, 2}.

    ``sides`` lists (partial conjugation, exponent, test vertex); the test
    vertex must go to the acting vertex's power conjugating it.
    """
    s, t = generator_power(G, ga, 1), generator_power(G, gb, 1)
    k = G.word_kernel
    for j in range(3):
        for kk in range(3):
            phi = compose(power(s, n * j), power(t, m * kk))
            for g, e, u in sides:
                steps = (n * j) if g is ga else (m * kk)
                pv = (G.index(g.vertex) + 1,) * steps
                iu = G.index(u) + 1
                want = k.normal_form(pv + (iu,) + tuple(-x for x in reversed(pv)))
                if phi.images[iu - 1] != want:
                    return False
    return True


def _conjugation_side(G: Graph, g: Generator, other: Generator, target: str, moved_by_other: set[str]) -> dict:
    """Test vertex u in g's component untouched by ``other``; for Out also a fixed z outside st(g.vertex)."""
    C = set(g.component)
    u = [x for x in G.vertices if x in C and x not in moved_by_other]
    if not u:
        raise Rank2Error(f"no test vertex for {g.name} untouched by {other.name}")
    side = {"u": u[0]}
    if target == "out":
        z = [x for x in G.vertices if x not in C and x not in star(G, g.vertex)]
        if not z:
            raise Rank2Error(f"no fixed vertex outside st({g.vertex}); inner powers of {g.name} not excluded")
        side["z"] = z[0]
    return side


def _moved(g: Generator) -> set[str]:
    return set(g.component) if g.kind == "P" else {g.vertex}


def _conjugation_exponent(G, ga, gb, n, m, target):
    if ga.kind != "P" or gb.kind != "P":
        raise Rank2Error("conjugation_exponent needs two partial conjugations")
    first = _conjugation_side(G, ga, gb, target, _moved(gb))
    second = _conjugation_side(G, gb, ga, target, _moved(ga))
    # the fixed vertex of each side must be fixed by both generators
    if target == "out":
        both = set(ga.component) | set(gb.component)
        for side, g in ((first, ga), (second, gb)):
            z = [x for x in G.vertices if x not in both and x not in star(G, g.vertex)]
            if not z:
                raise Rank2Error(f"no common fixed vertex outside st({g.vertex})")
            side["z"] = z[0]
    data = {"u": first["u"], "u2": second["u"]}
    if target == "out":
        data.update({"z": first["z"], "z2": second["z"]})
    if not _conj_pattern(G, [(ga, n, data["u"]), (gb, m, data["u2"])], ga, gb, n, m):
        raise Rank2Error("conjugation pattern not observed")
    return data


def _abelianization_conjugation(G, ga, gb, n, m, target):
    """One transvection-like side read off the abelianization, one partial conjugation side."""
    if ga.kind == "P" and gb.kind != "P":
        raise Rank2Error("order the pair as (matrix side, partial conjugation)")
    if gb.kind != "P":
        raise Rank2Error("second generator must be a partial conjugation")
    A = _matrix_power(abelianization_matrix(generator_power(G, ga, 1)), n)
    la = nilpotent_log(A)
    if la is None or not np.any(la[0] != 0):
        raise Rank2Error("first generator has no nontrivial unipotent abelianization")
    if ga.kind in ("R", "L") and gb.vertex == ga.vertex:
        raise Rank2Error("partial conjugation acts by the transvected vertex")
    side = _conjugation_side(G, gb, ga, target, _moved(ga))
    data = {"A": A.tolist(), "logA": [[int(t) for t in r] for r in la[0]], "u2": side["u"]}
    if target == "out":
        data["z2"] = side["z"]
    if not _conj_pattern(G, [(gb, m, data["u2"])], ga, gb, n, m):
        raise Rank2Error("conjugation pattern not observed")
    return data


def _grid_heuristic(G, ga, gb, n, m):
    s, t = power(generator_power(G, ga, 1), n), power(generator_power(G, gb, 1), m)
    seen = set()
    for j in range(-2, 3):
        for kk in range(-2, 3):
            seen.add(compose(power(s, j), power(t, kk)).images)
    if len(seen) != 25:
        raise Rank2Error("grid elements are not pairwise distinct")
    return {"grid": [-2, 2]}


def certify_rank2(G: Graph, s: Generator, s2: Generator, strategy: str, exponents=(1, 1), target: str = "aut",
                  pair: tuple[str, str] | None = None) -> Rank2Certificate:
    """Evidence that the chosen powers of s, s2 generate a copy of Z^2.

    abelianization_log: the induced integer matrices are commuting unipotents
    with rationally independent logarithms, so they generate Z^2 in GL_n(Z)
    (inner automorphisms act trivially there, so this also holds in Out).

    conjugation_exponent: for partial conjugations P_v^C, P_w^D pick u in
    C - D and u2 in D - C; s^j s2^k sends u to v^j u v^-j and u2 to
    w^k u2 w^-k, which determines (j, k). For Out, z and z2 are fixed
    vertices outside st(v) and st(w): a conjugator fixing z has zero
    v-exponent, so no nonzero (j, k) gives an inner automorphism.

    abelianization_conjugation: s is a transvection with nontrivial unipotent
    matrix, s2 = P_w^D with w not the transvected vertex. The matrix of
    s^j s2^k is A^j, so j = 0 in Aut and Out alike; then the test vertex u2
    in D (and the fixed z2 for Out) force k = 0 as above.

    grid_heuristic: the 25 elements s^j s2^k, |j|, |k| <= 2, are distinct;
    evidence only.
    """
    n, m = exponents
    if s == s2:
        raise Rank2Error("pair must consist of two distinct generators")
    phi, psi = generator_power(G, s, 1), generator_power(G, s2, 1)
    if phi == psi:
        raise Rank2Error("pair must consist of two distinct generators")
    a, b = power(phi, n), power(psi, m)
    if compose(a, b) != compose(b, a):
        raise Rank2Error("pair does not commute at the given exponents")
    if strategy == "abelianization_log":
        data = _abelianization_log(G, s, s2, n, m)
    elif strategy == "conjugation_exponent":
        data = _conjugation_exponent(G, s, s2, n, m, target)
    elif strategy == "abelianization_conjugation":
        data = _abelianization_conjugation(G, s, s2, n, m, target)
    elif strategy == "grid_heuristic":
        data = _grid_heuristic(G, s, s2, n, m)
    else:
        raise Rank2Error(f"unknown strategy {strategy!r}")
    return Rank2Certificate(pair or (s.name, s2.name), (s, s2), (n, m), strategy, data,
                            strategy != "grid_heuristic")


def _commuting_member_pairs(K: CommutativityGraph, e: Edge):
    yield e.via[0], e.via[1], e.n, e.m
    for ga, pa in K.nodes[e.a].distinct():
        for gb, pb in K.nodes[e.b].distinct():
            if (ga, gb) == e.via:
                continue
            w = commutes(pa, pb, K.max_power)
            if w is not None:
                yield ga, gb, w[0], w[1]


def find_rank2(K: CommutativityGraph) -> Rank2Certificate | None:
    """First exact certificate over edges and commuting member pairs; grid heuristic otherwise."""
    for strategy in ("abelianization_log", "conjugation_exponent", "abelianization_conjugation"):
        for e in K.edges:
            pair = (K.nodes[e.a].name, K.nodes[e.b].name)
            for ga, gb, n, m in _commuting_member_pairs(K, e):
                for x, y, p, q, names in ((ga, gb, n, m, pair), (gb, ga, m, n, pair[::-1])):
                    try:
                        return certify_rank2(K.graph, x, y, strategy, (p, q), K.target, names)
                    except Rank2Error:
                        continue
    for e in K.edges:
        try:
            return certify_rank2(K.graph, e.via[0], e.via[1], "grid_heuristic", (e.n, e.m), K.target,
                                 (K.nodes[e.a].name, K.nodes[e.b].name))
        except Rank2Error:
            continue
    return None


# -- serialization and verification --------------------------------------------


def _digest(cert: dict) -> str:
    body = {k: v for k, v in cert.items() if k != "digest"}
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def certificate_to_dict(K: CommutativityGraph, conn: ConnectivityCertificate, rank2: Rank2Certificate | None) -> dict:
    cert = {
        "graph_hash": K.graph.digest(),
        "target": K.target,
        "max_power": K.max_power,
        "inner_bound": K.inner_bound,
        "nodes": K.names(),
        "classes": [nd.member_names() for nd in K.nodes],
        "edges": [
            {"a": K.nodes[e.a].name, "b": K.nodes[e.b].name, "n": e.n, "m": e.m, "via": [e.via[0].name, e.via[1].name]}
            for e in K.edges
        ],
        "forest": list(conn.forest),
        "components": conn.components,
        "audit": conn.audit,
        "rank2": rank2.to_dict() if rank2 is not None else None,
    }
    cert["digest"] = _digest(cert)
    return cert


def build_certificate(G: Graph, target: str = "aut", max_power: int = 1, inner_bound: int = DEFAULT_INNER_BOUND) -> dict:
    K = build_commutativity_graph(G, target, max_power, inner_bound)
    conn = connectivity_certificate(K)
    return certificate_to_dict(K, conn, find_rank2(K))


def certificate_json(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True, indent=2) + "\n"


class _Fail(Exception):
    pass


def _require(cond: bool, item: str) -> None:
    if not cond:
        raise _Fail(item)


def check_certificate(G: Graph, cert: dict) -> list[str]:
    """Failing items, first failure first (empty when the certificate verifies).

    Raises CertificateMismatch when the certificate names another graph.
    """
    if not isinstance(cert, dict) or cert.get("graph_hash") != G.digest():
        raise CertificateMismatch("certificate graph_hash does not match the graph")
    try:
        _check(G, cert)
    except _Fail as exc:
        return [str(exc)]
    except (AutomorphismError, KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        return [f"malformed certificate: {exc}"]
    return []


def verify_certificate(G: Graph, cert: dict) -> bool:
    return not check_certificate(G, cert)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _check(G: Graph, cert: dict) -> None:
    required = {"graph_hash", "target", "max_power", "inner_bound", "nodes", "classes", "edges", "forest",
                "components", "audit", "rank2", "digest"}
    _require(set(cert) == required, "fields: unexpected or missing keys")
    target = cert["target"]
    _require(target in TARGETS, "target")
    p, bound = cert["max_power"], cert["inner_bound"]
    _require(_is_int(p) and p >= 1, "max_power")
    _require(_is_int(bound) and bound >= 0, "inner_bound")

    # node inventory, recomputed
    nodes = aut_nodes(G) if target == "aut" else list(out_image_generators(G, bound))
    _require(cert["nodes"] == [nd.name for nd in nodes], "nodes")
    _require(cert["classes"] == [nd.member_names() for nd in nodes], "classes")
    index = {nd.name: i for i, nd in enumerate(nodes)}
    member_of = [{g.name: g for g, _ in nd.members} for nd in nodes]

    # edge witnesses
    edges = cert["edges"]
    _require(isinstance(edges, list), "edges")
    parsed: list[Edge] = []
    seen = set()
    for k, e in enumerate(edges):
        item = f"edges[{k}]"
        _require(isinstance(e, dict) and set(e) == {"a", "b", "n", "m", "via"}, item)
        _require(e["a"] in index and e["b"] in index, f"{item}.a/b")
        i, j = index[e["a"]], index[e["b"]]
        _require(i < j, f"{item}.a/b order")
        _require((i, j) not in seen, f"{item} duplicate")
        seen.add((i, j))
        n, m = e["n"], e["m"]
        _require(_is_int(n) and _is_int(m) and 1 <= n <= p and 1 <= m <= p, f"{item}.n/m")
        via = e["via"]
        _require(isinstance(via, list) and len(via) == 2, f"{item}.via")
        _require(via[0] in member_of[i] and via[1] in member_of[j], f"{item}.via")
        ga, gb = member_of[i][via[0]], member_of[j][via[1]]
        f, b = commutation_images(generator_power(G, ga, 1), generator_power(G, gb, 1), n, m)
        _require(f == b, f"{item} witness does not commute")
        _require(_edge_witness(nodes[i], nodes[j], p)[0] == (n, m), f"{item}.n/m not least")
        parsed.append(Edge(i, j, n, m, (ga, gb)))
    _require(
        [(nodes[e.a].name, nodes[e.b].name) for e in parsed] == sorted((nodes[e.a].name, nodes[e.b].name) for e in parsed),
        "edges order",
    )
    # completeness: every commuting pair is listed
    for i, j in itertools.combinations(range(len(nodes)), 2):
        if (i, j) not in seen:
            _require(_edge_witness(nodes[i], nodes[j], p) is None, f"edges: missing {nodes[i].name} -- {nodes[j].name}")

    # forest and components
    forest = cert["forest"]
    _require(isinstance(forest, list) and all(_is_int(x) and 0 <= x < len(parsed) for x in forest), "forest")
    _require(len(set(forest)) == len(forest), "forest duplicate")
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx in forest:
        ra, rb = find(parsed[idx].a), find(parsed[idx].b)
        _require(ra != rb, f"forest: edge {idx} closes a cycle")
        parent[ra] = rb
    comps = len(nodes) - len(forest)
    _require(cert["components"] == comps, "components")
    for e in parsed:
        _require(find(e.a) == find(e.b), "forest does not span its components")

    # audit images
    audit = cert["audit"]
    _require(isinstance(audit, list) and len(audit) == len(forest), "audit")
    for idx, rec in zip(forest, audit):
        _require(isinstance(rec, dict) and rec.get("edge") == idx, f"audit[{idx}]")
        f, b = _witness_images(G, parsed[idx])
        _require(rec.get("forward") == f.image_strings() and rec.get("backward") == b.image_strings(), f"audit[{idx}] images")
        _require(set(rec) == {"edge", "forward", "backward"}, f"audit[{idx}] fields")

    # rank-2 evidence
    r2 = cert["rank2"]
    if len(nodes) < 2 or not parsed:
        _require(r2 is None, "rank2")
    else:
        _require(isinstance(r2, dict), "rank2")
        _check_rank2(G, r2, target, nodes, index, member_of, {(e.a, e.b) for e in parsed})

    _require(cert["digest"] == _digest(cert), "digest")


def _check_rank2(G, r2, target, nodes, index, member_of, edge_set) -> None:
    _require(set(r2) == {"pair", "via", "strategy", "exponents", "sound", "data"}, "rank2 fields")
    pair, via = r2["pair"], r2["via"]
    _require(isinstance(pair, list) and len(pair) == 2 and all(x in index for x in pair), "rank2.pair")
    i, j = index[pair[0]], index[pair[1]]
    _require(i != j and (min(i, j), max(i, j)) in edge_set, "rank2.pair")
    _require(isinstance(via, list) and len(via) == 2 and via[0] in member_of[i] and via[1] in member_of[j], "rank2.via")
    ex = r2["exponents"]
    _require(isinstance(ex, list) and len(ex) == 2 and all(_is_int(x) and x >= 1 for x in ex), "rank2.exponents")
    strategy = r2["strategy"]
    _require(strategy in STRATEGIES, "rank2.strategy")
    _require(r2["sound"] is (strategy != "grid_heuristic"), "rank2.sound")
    try:
        fresh = certify_rank2(G, member_of[i][via[0]], member_of[j][via[1]], strategy, tuple(ex), target)
    except Rank2Error as exc:
        raise _Fail(f"rank2: {exc}") from None
    _require(fresh.data == r2["data"], "rank2.data")
    if strategy in ("conjugation_exponent", "abelianization_conjugation"):
        _check_conjugation_data(G, member_of[i][via[0]], member_of[j][via[1]], strategy, r2["data"], target)


def _check_conjugation_data(G, ga, gb, strategy, data, target) -> None:
    """Structural conditions behind the conjugation arguments, checked directly."""
    sides = [(gb, ga, "u2", "z2")]
    if strategy == "conjugation_exponent":
        sides.insert(0, (ga, gb, "u", "z"))
    for g, other, ukey, zkey in sides:
        C = set(g.component)
        u = data.get(ukey)
        _require(u in C and u not in _moved(other) and u not in star(G, g.vertex), f"rank2.data.{ukey}")
        if target == "out":
            z = data.get(zkey)
            fixed = z in G and z not in C and z not in star(G, g.vertex)
            if strategy == "conjugation_exponent":
                fixed = fixed and z not in _moved(other)
            _require(fixed, f"rank2.data.{zkey}")
