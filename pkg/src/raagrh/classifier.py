"""Verdicts on relative hyperbolicity of Aut(A_Γ) and Out(A_Γ)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from .commgraph import (
    DEFAULT_INNER_BOUND,
    Node,
    build_commutativity_graph,
    certificate_to_dict,
    check_certificate,
    connectivity_certificate,
    find_rank2,
    out_image_generators,
)
from .graph import Graph, equivalent

log = logging.getLogger(__name__)

AUT_LABELS = ("Finite", "HyperbolicGL2Z", "NotRelHypAutF2", "NotRelHyp")
OUT_LABELS = ("Finite", "VirtuallyZ", "VirtuallyGL2Z", "NotRelativelyHyperbolic")

AUT_THEOREM = "aut-commutativity-connected"
AUT_SMALL = "aut-small-graphs"
OUT_THEOREM = "out-exceptional-or-not-relhyp"


class TheoremContradiction(RuntimeError):
    """Certificate construction failed where the theorems guarantee success."""

    def __init__(self, message: str, diagnostics: dict[str, Any]):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass
class Verdict:
    graph: Graph
    target: str
    label: str
    rule: str
    justification: str
    generators: list[Any] = field(default_factory=list)
    certificate: dict | None = None
    paper_ref: str = ""

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "target": self.target,
            "label": self.label,
            "rule": self.rule,
            "justification": self.justification,
            "generators": self.generators,
            "certificate": self.certificate,
            "paper_ref": self.paper_ref,
        }


AutVerdict = Verdict
OutVerdict = Verdict


def _certify(G: Graph, target: str, max_power: int, inner_bound: int, verify: bool) -> dict:
    K = build_commutativity_graph(G, target, max_power, inner_bound)
    conn = connectivity_certificate(K)
    rank2 = find_rank2(K)
    cert = certificate_to_dict(K, conn, rank2)
    problems = []
    if not conn.connected:
        problems.append(f"commutativity graph has {conn.components} components")
    if rank2 is None or not rank2.sound:
        problems.append("no exact rank-2 certificate")
    if not problems and verify:
        problems += check_certificate(G, cert)
    if problems:
        raise TheoremContradiction(
            f"{target} certificate failed on {G!r}: {'; '.join(problems)}",
            {"graph": G.to_dict(), "target": target, "problems": problems, "certificate": cert},
        )
    return cert


def classify_aut(G: Graph, max_power: int = 1, verify: bool = True) -> Verdict:
    n = G.n
    if n == 0:
        raise ValueError("empty graph")
    if n == 1:
        return Verdict(G, "aut", "Finite", "one-vertex", "A_Γ = Z, so Aut(A_Γ) = Z/2 is finite", paper_ref=AUT_SMALL)
    if n == 2:
        if G.edges:
            return Verdict(G, "aut", "HyperbolicGL2Z", "two-vertices-edge",
                           "A_Γ = Z^2, so Aut(A_Γ) = GL_2(Z), virtually free hence hyperbolic", paper_ref=AUT_SMALL)
        return Verdict(G, "aut", "NotRelHypAutF2", "two-vertices-no-edge",
                       "A_Γ = F_2; Aut^+(F_2) is a pure mapping class group of a twice punctured torus, "
                       "not relatively hyperbolic (cited result, no certificate from S)", paper_ref=AUT_SMALL)
    cert = _certify(G, "aut", max_power, DEFAULT_INNER_BOUND, verify)
    return Verdict(G, "aut", "NotRelHyp", "connected-commutativity-graph",
                   "K(Aut*, S) is connected and carries an exact rank-2 pair; Aut* has finite index",
                   generators=list(cert["nodes"]), certificate=cert, paper_ref=AUT_THEOREM)


def _class_inventory(classes) -> list[dict]:
    return [{"name": c.name, "members": c.member_names()} for c in classes]


def _gl2_pattern(G: Graph, classes: tuple[Node, ...]) -> bool:
    """Two transvection classes for one equivalent pair a ~ b, in both directions,
    each class holding both its R and L transvection."""
    if len(classes) != 2:
        return False
    pairs = []
    for c in classes:
        if not c.is_transvection_class:
            return False
        vw = {(g.vertex, g.acting) for g, _ in c.members}
        kinds = {g.kind for g, _ in c.members}
        if len(vw) != 1 or kinds != {"R", "L"}:
            return False
        pairs.append(vw.pop())
    (a, b), (c, d) = pairs
    return (c, d) == (b, a) and equivalent(G, a, b)


def classify_out(G: Graph, max_power: int = 1, inner_bound: int = DEFAULT_INNER_BOUND, verify: bool = True) -> Verdict:
    if G.n == 0:
        raise ValueError("empty graph")
    classes = out_image_generators(G, inner_bound)
    inventory = _class_inventory(classes)
    if not classes:
        return Verdict(G, "out", "Finite", "no-nontrivial-generators",
                       "S' is empty: Out* is trivial, so Out(A_Γ) is finite", inventory, paper_ref=OUT_THEOREM)
    if len(classes) == 1:
        return Verdict(G, "out", "VirtuallyZ", "single-generator-class",
                       f"S' is the single class {classes[0].name}: Out* is cyclic", inventory, paper_ref=OUT_THEOREM)
    if _gl2_pattern(G, classes):
        just = "S' is the four transvections of one equivalent pair, identified R = L in Out: Out* = Out*(F_2)"
        if G.n == 2 and G.edges:
            just += "; here A_Γ = Z^2 and Out = GL_2(Z) exactly"
        return Verdict(G, "out", "VirtuallyGL2Z", "four-transvection-pair", just, inventory, paper_ref=OUT_THEOREM)
    if len(classes) == 2 and all(c.is_transvection_class for c in classes):
        pairs = {(g.vertex, g.acting) for c in classes for g, _ in c.members}
        if len(pairs) == 1:
            log.warning("S' is an unidentified R/L pair %s on %r; using the general branch", pairs.pop(), G)
    cert = _certify(G, "out", max_power, inner_bound, verify)
    return Verdict(G, "out", "NotRelativelyHyperbolic", "connected-commutativity-graph",
                   "K(Out*, S') is connected and carries an exact rank-2 pair; Out* has finite index",
                   inventory, cert, paper_ref=OUT_THEOREM)


def classify(G: Graph, target: str, **kw) -> Verdict:
    if target == "aut":
        kw.pop("inner_bound", None)
        return classify_aut(G, **kw)
    if target == "out":
        return classify_out(G, **kw)
    raise ValueError(f"unknown target {target!r}")
