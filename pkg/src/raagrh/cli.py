"""raagrh command line: analyze, certificate, verify, survey, dot, replay.

Exit codes: 0 success, 1 verification or replay failure, 2 unreadable input
or graph/certificate mismatch, 3 a certificate the theorems promise could not
be built.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections import Counter
from multiprocessing import Pool

from .classifier import TheoremContradiction, classify
from .commgraph import (
    DEFAULT_INNER_BOUND,
    CertificateMismatch,
    aut_nodes,
    build_certificate,
    build_commutativity_graph,
    certificate_json,
    check_certificate,
    connectivity_certificate,
    out_image_generators,
)
from .graph import Graph, GraphError, canonical_encoding, enumerate_graphs
from .replay import replay

SURVEY_COLUMNS = ("canonical", "n_vertices", "n_edges", "S_size", "Sprime_size",
                  "aut_label", "out_label", "min_power", "cert_hash")
MAX_POWER_PROBE = 3

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CONTRADICTION = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def load_graph(path: str) -> Graph:
    try:
        return Graph.from_dict(_read_json(path))
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _contradiction(exc: TheoremContradiction) -> int:
    print(f"theorem contradiction: {exc}", file=sys.stderr)
    print(json.dumps(exc.diagnostics, sort_keys=True, indent=2), file=sys.stderr)
    return EXIT_CONTRADICTION


def _verdict_text(v) -> str:
    lines = [f"target: {v.target}", f"label: {v.label}", f"rule: {v.rule}", f"justification: {v.justification}",
             f"ref: {v.paper_ref}"]
    if v.generators:
        names = [g["name"] if isinstance(g, dict) else g for g in v.generators]
        lines.append(f"generators ({len(names)}): {', '.join(names)}")
    if v.certificate:
        c = v.certificate
        r2 = c["rank2"]
        lines.append(f"certificate: {len(c['nodes'])} nodes, {len(c['edges'])} edges, "
                     f"{c['components']} component(s), digest {c['digest'][:16]}")
        lines.append(f"rank-2: {r2['pair'][0]}, {r2['pair'][1]} via {r2['strategy']} exponents {r2['exponents']}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    G = load_graph(args.graph)
    try:
        v = classify(G, args.target, max_power=args.max_power, inner_bound=args.inner_bound)
    except TheoremContradiction as exc:
        return _contradiction(exc)
    if args.format == "json":
        _emit(json.dumps(v.to_dict(), sort_keys=True, indent=2) + "\n", args.out)
    else:
        _emit(_verdict_text(v), args.out)
    return EXIT_OK


def cmd_certificate(args) -> int:
    G = load_graph(args.graph)
    cert = build_certificate(G, args.target, args.max_power, args.inner_bound)
    _emit(certificate_json(cert), args.out)
    if cert["components"] != 1 or not (cert["rank2"] and cert["rank2"]["sound"]):
        print(f"warning: certificate is incomplete ({cert['components']} components, "
              f"rank-2 {'missing' if not cert['rank2'] else cert['rank2']['strategy']})", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    G = load_graph(args.graph)
    cert = _read_json(args.certificate)
    try:
        problems = check_certificate(G, cert)
    except CertificateMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if problems:
        print(f"REJECTED: {problems[0]}")
        return EXIT_FAIL
    if cert["components"] != 1 or not (cert["rank2"] and cert["rank2"]["sound"]):
        print("REJECTED: certificate is internally consistent but does not establish the criterion")
        return EXIT_FAIL
    print("OK")
    return EXIT_OK


def _min_power(G: Graph) -> int | None:
    for p in range(1, MAX_POWER_PROBE + 1):
        if connectivity_certificate(build_commutativity_graph(G, "aut", p)).connected:
            return p
    return None


def survey_row(args: tuple[Graph, int, int]) -> tuple[dict, list[str]]:
    G, max_power, inner_bound = args
    errors = []
    row = {"canonical": canonical_encoding(G), "n_vertices": G.n, "n_edges": len(G.edges),
           "S_size": len(aut_nodes(G)), "Sprime_size": len(out_image_generators(G, inner_bound)),
           "min_power": "", "cert_hash": ""}
    try:
        av = classify(G, "aut", max_power=max_power)
        row["aut_label"] = av.label
        if av.certificate:
            row["cert_hash"] = av.certificate["digest"]
    except TheoremContradiction as exc:
        row["aut_label"] = "CONTRADICTION"
        errors.append(f"aut {row['canonical']}: {exc}")
    try:
        row["out_label"] = classify(G, "out", max_power=max_power, inner_bound=inner_bound).label
    except TheoremContradiction as exc:
        row["out_label"] = "CONTRADICTION"
        errors.append(f"out {row['canonical']}: {exc}")
    if G.n >= 3:
        p = _min_power(G)
        row["min_power"] = "" if p is None else p
    return row, errors


def run_survey(n: int, up_to_iso: bool, max_power: int = 1, inner_bound: int = DEFAULT_INNER_BOUND,
               jobs: int = 1) -> tuple[list[dict], list[str]]:
    work = [(G, max_power, inner_bound) for G in enumerate_graphs(n, up_to_iso)]
    if jobs > 1:
        with Pool(jobs) as pool:
            results = pool.map(survey_row, work, chunksize=4)
    else:
        results = [survey_row(w) for w in work]
    rows = [r for r, _ in results]
    errors = [e for _, errs in results for e in errs]
    if up_to_iso:
        rows.sort(key=lambda r: r["canonical"])
    return rows, errors


def survey_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, SURVEY_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def survey_summary(rows: list[dict]) -> str:
    counts = Counter(r["out_label"] for r in rows)
    parts = ", ".join(f"{k}={counts[k]}" for k in sorted(counts))
    return f"rows={len(rows)} out: {parts}"


def cmd_survey(args) -> int:
    if not 1 <= args.n <= 8:
        raise InputError("survey size must be between 1 and 8")
    rows, errors = run_survey(args.n, args.up_to_iso, args.max_power, args.inner_bound, args.jobs)
    _emit(survey_csv(rows), args.out)
    for e in errors:
        print(f"contradiction: {e}", file=sys.stderr)
    print(survey_summary(rows), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_CONTRADICTION if errors else EXIT_OK


def cmd_dot(args) -> int:
    G = load_graph(args.graph)
    K = build_commutativity_graph(G, args.target, args.max_power, args.inner_bound)
    _emit(K.to_dot(connectivity_certificate(K).forest), args.out)
    return EXIT_OK


def cmd_replay(args) -> int:
    results = replay()
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.case_id}: {r.identity}" + (f" ({r.detail})" if r.detail else "")
             for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} identities hold")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="raagrh", description="Relative hyperbolicity certificates for Aut/Out of RAAGs")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True, target=True):
        if graph:
            sp.add_argument("--graph", required=True, help="graph JSON: {\"vertices\": [...], \"edges\": [[u, v], ...]}")
        if target:
            sp.add_argument("--target", choices=("aut", "out"), default="aut")
        sp.add_argument("--max-power", type=int, default=1)
        sp.add_argument("--inner-bound", type=int, default=DEFAULT_INNER_BOUND)
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("analyze", help="classify Aut or Out")
    common(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("certificate", help="emit a certificate JSON")
    common(sp)
    sp.set_defaults(func=cmd_certificate)

    sp = sub.add_parser("verify", help="check a certificate against a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--certificate", required=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("survey", help="classify every graph on n vertices")
    sp.add_argument("n", type=int)
    sp.add_argument("--up-to-iso", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    common(sp, graph=False, target=False)
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("dot", help="DOT drawing of the commutativity graph, spanning forest in red")
    common(sp)
    sp.set_defaults(func=cmd_dot)

    sp = sub.add_parser("replay", help="check the commutation chains of the connectivity proofs")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_replay)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    for name in ("max_power", "inner_bound"):
        if getattr(args, name, 1) < 1:
            print(f"error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
