"""Replay of the commutation chains used in the connectivity arguments.

Each case pairs a small witness graph with the generators its argument names.
The case hypotheses are checked on the graph before the chain: every link
[x, y] = 1 of a chain must hold as a genuine commutation in Aut(A_Γ), and
image identities are compared after normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .automorphisms import (
    Automorphism,
    AutomorphismError,
    compose,
    inverse,
    is_inner_bounded,
    make_partial_conjugation,
    make_transvection,
)
from .graph import (
    Graph,
    components,
    dominates,
    edgeless_graph,
    equivalent,
    figure_right,
    is_complete,
    link,
    path_graph,
    star,
    star_complement_components,
)
from .words import Word


def gen(G: Graph, token: str) -> Automorphism:
    """``R a b``, ``L a b`` or ``P v c,d`` (component listed by its vertices)."""
    kind, v, rest = token.split()
    if kind in ("R", "L"):
        return make_transvection(G, kind, v, rest)
    if kind == "P":
        return make_partial_conjugation(G, v, rest.split(","))
    raise ValueError(f"bad generator token {token!r}")


def _label(token: str) -> str:
    kind, v, rest = token.split()
    if kind == "P":
        return f"P_{v}^{{{rest}}}"
    return f"{kind}_{v}{rest}"


@dataclass
class Case:
    case_id: str
    graph: Graph
    chains: list[list[str]] = field(default_factory=list)
    hypotheses: list[tuple[str, Callable[[Graph], bool]]] = field(default_factory=list)
    # (outer, inner, vertex, expected): outer(inner(vertex)) == expected
    images: list[tuple[str, str, str, str]] = field(default_factory=list)
    # R/L pairs that must be equal in Aut (same) or in Out (inner quotient)
    equal_aut: list[tuple[str, str]] = field(default_factory=list)
    equal_out: list[tuple[str, str]] = field(default_factory=list)

    def identities(self) -> list[str]:
        out = [" = ".join(f"[{_label(x)}, {_label(y)}]" for x, y in zip(c, c[1:])) + " = 1" for c in self.chains]
        out += [f"{_label(o)}({_label(i)}({v})) = {w}" for o, i, v, w in self.images]
        out += [f"{_label(x)} = {_label(y)}" for x, y in self.equal_aut]
        out += [f"{_label(x)} = {_label(y)} in Out" for x, y in self.equal_out]
        return out


@dataclass
class ReplayResult:
    case_id: str
    identity: str
    passed: bool
    detail: str = ""


def _E(*names: str) -> Graph:
    return edgeless_graph(list(names))


def _G(names: str, edges: str = "") -> Graph:
    return Graph(names.split(), [tuple(e.split("-")) for e in edges.split()])


def _dom(v, w):
    return (f"{v} <= {w}", lambda G: dominates(G, v, w))


def _adj(v, w, yes=True):
    return (f"{v}{'' if yes else ' not'} adjacent to {w}", lambda G: (w in link(G, v)) == yes)


def _full_star(v, yes=True):
    return (f"st({v}) {'=' if yes else '!='} Γ", lambda G: (len(star(G, v)) == G.n) == yes)


def _n_components_minus_star(v, k):
    return (f"Γ - st({v}) has {k} components", lambda G: len(star_complement_components(G, v)) == k)


def _nontrivial_out(v):
    return (f"Γ - st({v}) has at least two components", lambda G: len(star_complement_components(G, v)) >= 2)


def _graph_components(k):
    return (f"Γ has {k} components", lambda G: len(components(G)) == k)


def _no_full_star():
    return ("no vertex has st = Γ", lambda G: all(len(star(G, v)) < G.n for v in G.vertices))


def _complete_piece(vs, yes=True):
    return (f"{{{','.join(vs)}}} {'is' if yes else 'is not'} complete",
            lambda G: is_complete(G.induced(vs)) == yes)


def _disjoint_components(first, second):
    (v, x), (w, y) = first, second

    def check(G):
        C = next((set(c) for c in star_complement_components(G, v) if x in c), set())
        D = next((set(c) for c in star_complement_components(G, w) if y in c), set())
        return bool(C) and bool(D) and not C & D and w not in C and v not in D

    return (f"components of Γ - st({v}) at {x} and of Γ - st({w}) at {y} are disjoint and avoid {w}, {v}", check)


def _distinct(x, y):
    return (f"{_label(x)} != {_label(y)}", lambda G: gen(G, x) != gen(G, y))


def _equiv(a, b):
    return (f"{a} ~ {b}", lambda G: equivalent(G, a, b))


CASES: list[Case] = [
    # -- Aut, transvections -------------------------------------------------
    Case("aut.transvections.adjacent-R=L", _G("a b c", "a-b b-c a-c"),
         hypotheses=[_dom("a", "b"), _adj("a", "b")], equal_aut=[("R a b", "L a b")]),
    Case("aut.transvections.nonadjacent-R,L", _E("a", "b", "c"), [["R a b", "L a b"]],
         [_dom("a", "b"), _adj("a", "b", False), _distinct("R a b", "L a b")]),
    Case("aut.transvections.case1", _E("a", "b", "d"), [["R a b", "L a d"]], [_dom("a", "b"), _dom("a", "d")]),
    Case("aut.transvections.case2", _E("a", "b", "c", "d"), [["R a b", "R c d"]], [_dom("a", "b"), _dom("c", "d")]),
    Case("aut.transvections.case3", _E("a", "b", "c"), [["R a b", "R c b", "L c a"]],
         [_dom("c", "a"), _dom("a", "b")]),
    Case("aut.transvections.case4", _E("a", "b", "d"), [["R a b", "L a d", "R b d"]],
         [_dom("a", "b"), _dom("b", "d")]),
    Case("aut.transvections.case5.adjacent.partial", _G("a b v", "a-b"),
         [["R a b", "P b v", "P a v", "R b a"]],
         [_equiv("a", "b"), _adj("a", "b"), _full_star("a", False)]),
    Case("aut.transvections.case5.adjacent.full-star", _G("a b w x y", "a-b w-x x-y a-w a-x a-y b-w b-x b-y"),
         [["R a b", "R w b", "L w a", "R w a", "R b a"]],
         [_equiv("a", "b"), _adj("a", "b"), _full_star("a"), _dom("w", "a")]),
    Case("aut.transvections.case5.nonadjacent.empty-link", _E("a", "b", "w"),
         [["R a b", "L a w", "R b w", "L b a"]],
         [_equiv("a", "b"), _adj("a", "b", False), ("lk(a) is empty", lambda G: not link(G, "a"))]),
    Case("aut.transvections.case5.nonadjacent.partial", _G("a b w x", "a-w b-w"),
         [["R a b", "P b a", "P w x", "P a b", "L b a"]],
         [_equiv("a", "b"), _adj("a", "b", False), _adj("a", "w"), _full_star("w", False)]),
    Case("aut.transvections.case5.nonadjacent.full-star", path_graph(["a", "w", "b"]),
         [["R a b", "L a w", "R b w", "L b a"]],
         [_equiv("a", "b"), _adj("a", "b", False), _adj("a", "w"), _full_star("w")]),
    # -- Aut, partial conjugations --------------------------------------------
    Case("aut.partials.same-vertex", _E("a", "b", "c"), [["P a b", "P a c"]], [_n_components_minus_star("a", 2)]),
    Case("aut.partials.connected.commuting", path_graph(["p", "a", "b", "q"]), [["P a q", "P b p"]],
         [_graph_components(1), _no_full_star(), _adj("a", "b")]),
    Case("aut.partials.connected.full-star", _G("a b x y", "a-b b-x b-y"), [["P a x", "R a b"], ["P a y", "R a b"]],
         [_graph_components(1), _full_star("b"), _dom("a", "b")]),
    Case("aut.partials.disconnected.case1.proper-star", _G("a b x y", "b-x x-y"), [["P a b,x,y", "P b y"]],
         [_graph_components(2), ("st(b) is a proper subset of its component", lambda G: len(star(G, "b")) < 3)],
         images=[("P a b,x,y", "P b y", "y", "a b y b^-1 a^-1"), ("P b y", "P a b,x,y", "y", "a b y b^-1 a^-1")]),
    Case("aut.partials.disconnected.case1.star-noncomplete", _G("a b b1 y", "b-b1 b-y"),
         [["P b a", "P b1 y", "P a b,b1,y"]],
         [_graph_components(2), ("st(b) is its component", lambda G: len(star(G, "b")) == 3),
          _complete_piece(["b", "b1", "y"], False), _adj("b", "b1")]),
    Case("aut.partials.disconnected.case1.complete", _G("a b b1", "b-b1"), [["P b a", "R b1 b", "P a b,b1"]],
         [_graph_components(2), _complete_piece(["b", "b1"]), _dom("b1", "b")]),
    Case("aut.partials.disconnected.case2.a-is-a1", _G("a x y b", "a-x x-y"), [["P a y", "P b a,x,y"]],
         [_graph_components(2), _complete_piece(["a", "x", "y"], False),
          ("st(a) is a proper subset of its component", lambda G: len(star(G, "a")) < 3)]),
    Case("aut.partials.disconnected.case2.a-ne-a1", _G("a1 a y b", "a1-a a-y"), [["P b a1,a,y", "P a1 y", "P a b"]],
         [_graph_components(2), _complete_piece(["a1", "a", "y"], False),
          ("st(a) is its component", lambda G: len(star(G, "a")) == 3)]),
    Case("aut.partials.disconnected.case2.complete", _G("a a1 b", "a-a1"), [["P a b", "R a1 a", "P b a,a1"]],
         [_graph_components(2), _complete_piece(["a", "a1"]), _dom("a1", "a")],
         images=[("R a1 a", "P b a,a1", "a1", "b a1 a b^-1"), ("P b a,a1", "R a1 a", "a1", "b a1 a b^-1")]),
    Case("aut.partials.disconnected.case2.single-vertex", _E("a", "b", "c"),
         [["P a b", "R b a"], ["R a b", "P b a"]],
         [_equiv("a", "b"), _dom("b", "c")]),
    # -- Aut, transvection next to a partial conjugation ----------------------
    Case("aut.mixed.case1", _E("a", "b", "c"), [["R a b", "P b c"], ["R a b", "P b a"]],
         [_dom("a", "b"), _full_star("b", False)]),
    Case("aut.mixed.case2", _G("a b c d", "a-b b-c b-d"), [["R a b", "P c a"], ["R a b", "P c d"], ["R a b", "P a c"]],
         [_dom("a", "b"), _full_star("b"), _full_star("c", False)]),
    # -- Out, partial conjugations --------------------------------------------
    Case("out.partials.disjoint-components", _E("a", "b", "c", "d"), [["P a b", "P a c", "P b d", "P b a"]],
         [_nontrivial_out("a"), _nontrivial_out("b"), _adj("a", "b", False),
          _disjoint_components(("a", "c"), ("b", "d"))]),
    # -- Out, transvection and partial conjugation ----------------------------
    Case("out.mixed.case1", _E("a", "b", "c"), [["R a b", "P b c"]], [_dom("a", "b"), _nontrivial_out("b")]),
    Case("out.mixed.case2", _G("a b w0 x", "a-b b-w0"), [["R a b", "R w0 b", "P a x"]],
         [_dom("a", "b"), _nontrivial_out("a"), _n_components_minus_star("b", 1), _dom("w0", "b")]),
    Case("out.mixed.case3.same-component", _G("a b c d", "a-b"), [["R a b", "P c a,b"]],
         [_dom("a", "b"), _nontrivial_out("c")],
         images=[("P c a,b", "R a b", "a", "c a b c^-1"), ("R a b", "P c a,b", "a", "c a b c^-1")]),
    Case("out.mixed.case3.different-components", _E("a", "b", "c", "d"), [["R a b", "L a c", "R a c"]],
         [_dom("a", "b"), _dom("a", "c"), _nontrivial_out("c")]),
    # -- Out, the four-transvection configuration -----------------------------
    Case("out.transvections.four", figure_right(),
         hypotheses=[_equiv("a", "b"), _adj("a", "b", False)],
         equal_out=[("R a b", "L a b"), ("R b a", "L b a")]),
]


def _commute(x: Automorphism, y: Automorphism) -> bool:
    return compose(x, y) == compose(y, x)


def run_case(case: Case) -> list[ReplayResult]:
    G = case.graph
    failed_hyp = [d for d, check in case.hypotheses if not check(G)]
    results = []
    for ident in case.identities():
        if failed_hyp:
            results.append(ReplayResult(case.case_id, ident, False, "hypothesis fails: " + "; ".join(failed_hyp)))
    if failed_hyp:
        return results
    labels = iter(case.identities())
    try:
        for chain in case.chains:
            autos = [gen(G, t) for t in chain]
            bad = [f"[{_label(x)}, {_label(y)}]" for (x, y), (p, q) in
                   zip(zip(chain, chain[1:]), zip(autos, autos[1:])) if not _commute(p, q)]
            results.append(ReplayResult(case.case_id, next(labels), not bad, "nontrivial: " + ", ".join(bad) if bad else ""))
        for outer, inner, v, want in case.images:
            got = gen(G, outer)(gen(G, inner)(Word.parse(G, v)))
            ok = got.letters == G.word_kernel.normal_form(Word.parse(G, want).letters)
            results.append(ReplayResult(case.case_id, next(labels), ok, "" if ok else f"got {got}"))
        for x, y in case.equal_aut:
            ok = gen(G, x) == gen(G, y)
            results.append(ReplayResult(case.case_id, next(labels), ok))
        for x, y in case.equal_out:
            g = is_inner_bounded(G, compose(gen(G, x), inverse(gen(G, y))))
            results.append(ReplayResult(case.case_id, next(labels), g is not None, "" if g is not None else "no conjugator found"))
    except AutomorphismError as exc:
        results.append(ReplayResult(case.case_id, "generators", False, str(exc)))
    return results


def replay(cases: list[Case] | None = None) -> list[ReplayResult]:
    return [r for case in (CASES if cases is None else cases) for r in run_case(case)]
