"""Command-line front end.

Subcommands: betti, mult, bounds, reduce, check-cm, verify, report.
Exit codes: 0 success, 1 a proved check failed, 2 usage/parse/cap errors.
Identical input and configuration produce byte-identical JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import verify
from .betti import betti_table, format_table, is_pure, is_quasi_pure
from .digraph import (antichain_multiplicity, build_digraph, collapse_sequence,
                      bipartite_graph_of, is_cm_bipartite, kappa_of_digraph,
                      transitive_closure)
from .errors import EdgemultError
from .graphs import (from_edge_list, graph_to_json,
                     enumerate_minimal_vertex_covers, induced_matching_number,
                     is_perfectly_matched)
from .ideals import (check_standing_hypothesis, edge_ideal, from_generators,
                     graph_of, height, multiplicity, polarize, taylor_twists)


@dataclass
class Config:
    characteristic: int = 0
    cap_n: int = 20
    cap_m: int = 20
    enum_cap: int = 24
    jobs: int = 1
    json_out: bool = False
    out: str | None = None

    def validate(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise EdgemultError("--char must be 0 or a prime")
        for cap in (self.cap_n, self.cap_m, self.enum_cap, self.jobs):
            if cap <= 0:
                raise EdgemultError("caps and jobs must be positive")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_subject(path: str, as_ideal: bool):
    """Returns (ideal, graph-or-None)."""
    text = _read_input(path)
    if as_ideal:
        i = from_generators(text)
        g = None
        if i.is_squarefree() and i.is_quadratic():
            g = graph_of(i)
        return i, g
    g = from_edge_list(text)
    return edge_ideal(g), g


def _emit(args, payload: dict, text: str):
    out = json.dumps(payload, sort_keys=True, indent=2) + "\n" if args.json else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _config_from_args(args) -> Config:
    cfg = Config()
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        for k, v in loaded.items():
            if hasattr(cfg, k):
                setattr(cfg, k, v)
    # explicit flags win over the config file
    if args.char is not None:
        cfg.characteristic = args.char
    if getattr(args, "cap_n", None) is not None:
        cfg.cap_n = args.cap_n
    if getattr(args, "cap_m", None) is not None:
        cfg.cap_m = args.cap_m
    if getattr(args, "jobs", None) is not None:
        cfg.jobs = args.jobs
    cfg.json_out = bool(getattr(args, "json", False))
    cfg.out = getattr(args, "out", None)
    cfg.validate()
    return cfg


def cmd_betti(args) -> int:
    cfg = _config_from_args(args)
    i, _ = _load_subject(args.input, args.ideal)
    sf = polarize(i)
    t = betti_table(sf, char=cfg.characteristic, cap_n=cfg.cap_n)
    payload = t.to_json_obj()
    payload["pure"] = is_pure(t)
    payload["quasi_pure"] = is_quasi_pure(t)
    lines = [format_table(t),
             f"M: {t.M_list()}",
             f"m: {t.m_list()}",
             f"pure {is_pure(t)}, quasi-pure {is_quasi_pure(t)}"]
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_mult(args) -> int:
    cfg = _config_from_args(args)
    i, g = _load_subject(args.input, args.ideal)
    sf = polarize(i)
    e = multiplicity(sf)
    c = height(sf)
    payload = {"e": e, "height": c}
    text = f"height {c}\ne(R/I) = {e}\n"
    if g is not None:
        covers = enumerate_minimal_vertex_covers(g, cap=cfg.enum_cap)
        payload["minimal_covers"] = sorted(sorted(s) for s in covers)
        text += f"minimal covers: {len(covers)} (size-{c}: {e})\n"
    _emit(args, payload, text)
    return 0


def cmd_bounds(args) -> int:
    cfg = _config_from_args(args)
    i, g = _load_subject(args.input, args.ideal)
    report = _bounds_report(i, g, cfg)
    lines = []
    for b in report.bounds:
        lines.append(f"{b.name:34s} {b.verdict:9s} "
                     f"lhs={verify._frac_str(b.lhs)} rhs={verify._frac_str(b.rhs)} [{b.status}]")
    _emit(args, report.to_json_obj(), "\n".join(lines) + "\n")
    return 1 if report.failed_proved() else 0


def _bounds_report(i, g, cfg) -> verify.VerdictReport:
    sf = polarize(i)
    char = cfg.characteristic
    table = betti_table(sf, char=char, cap_n=cfg.cap_n)
    e = multiplicity(sf)
    tw = taylor_twists(i, cap=cfg.cap_m)
    bounds = [
        verify.check_hhsu(sf, char=char, table=table, e=e),
        verify.check_taylor(i, e=e, twists=tw.values),
    ]
    quantities = {
        "e": e,
        "c": height(sf),
        "rho": tw.rho,
        "reg": table.reg,
        "projdim": table.projdim,
        "M": table.M_list(),
        "m": table.m_list(),
        "T": list(tw.values),
    }
    if g is not None and g.is_bipartite():
        bounds.append(verify.check_equality_characterization(g, char=char,
                                                             table=table, e=e))
        cm = is_cm_bipartite(g)
        quantities["cm"] = bool(cm)
        quantities["r"] = induced_matching_number(g)
        if cm:
            bounds.append(verify.check_hhsl_spot(g, char=char, table=table, e=e))
            bounds.append(verify.check_quasipure_classification(g, char=char,
                                                                table=table))
    return verify.VerdictReport(args_subject(g, i), quantities, bounds, {}, (char,))


def args_subject(g, i) -> str:
    if g is not None:
        return "graph:" + ",".join(sorted("-".join(e) for e in g.edges))
    return "ideal:" + ";".join("*".join(t) for t in sorted(i.generators))


def cmd_reduce(args) -> int:
    cfg = _config_from_args(args)
    i, g = _load_subject(args.input, args.ideal)
    if g is None or not g.is_bipartite():
        print("error: reduction needs a bipartite graph", file=sys.stderr)
        return 2
    if not is_perfectly_matched(g):
        hyp = check_standing_hypothesis(edge_ideal(g))
        print("error: not perfectly matched; standing hypothesis fails at "
              f"{hyp.witness}", file=sys.stderr)
        return 2
    d0 = build_digraph(g)
    steps = collapse_sequence(d0)
    closed = transitive_closure(steps[-1])
    ghat = bipartite_graph_of(closed)
    ihat = edge_ideal(ghat)
    e0 = multiplicity(edge_ideal(g))
    ledger = {
        "e_before": e0,
        "e_after": multiplicity(ihat),
        "height_before": height(edge_ideal(g)),
        "height_after": height(ihat),
        "kappa_before": kappa_of_digraph(d0),
        "kappa_after": kappa_of_digraph(closed),
        "antichains": antichain_multiplicity(closed),
    }
    payload = {
        "digraph": json.loads(d0.to_json()),
        "collapse_steps": [json.loads(s.to_json()) for s in steps[1:]],
        "closure": json.loads(closed.to_json()),
        "graph_hat": json.loads(graph_to_json(ghat)),
        "ledger": ledger,
    }
    lines = [f"d_G: vertices {list(d0.vertices)}, arcs {sorted(d0.arcs)}"]
    for k, s in enumerate(steps[1:], 1):
        lines.append(f"collapse {k}: vertices {list(s.vertices)}, arcs {sorted(s.arcs)}")
    lines.append(f"closure: arcs {sorted(closed.arcs)}")
    lines.append(f"G_hat edges: {sorted(ghat.edges)}")
    lines.append("ledger: " + ", ".join(f"{k}={v}" for k, v in sorted(ledger.items())))
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_check_cm(args) -> int:
    from edgemult.digraph import cm_matching_survey

    _config_from_args(args)
    i, g = _load_subject(args.input, args.ideal)
    if g is None or not g.is_bipartite():
        print("error: check-cm needs a bipartite graph", file=sys.stderr)
        return 2
    w = is_cm_bipartite(g)
    survey = cm_matching_survey(g)
    payload = {"cohen_macaulay": w.is_cm,
               "matching": None if w.matching is None else [list(p) for p in w.matching],
               "order": None if w.order is None else list(w.order),
               "matching_survey": survey}
    text = f"Cohen-Macaulay: {w.is_cm}\n"
    if w.is_cm:
        text += f"labeling: {list(w.matching)}\n"
    text += (f"perfect matchings: {survey['matchings']}, "
             f"poset digraphs: {survey['poset_matchings']}\n")
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    checks = tuple(args.checks.split(",")) if args.checks else None
    try:
        res = verify.sweep_small_graphs(args.max_vertices, checks=checks,
                                        char=cfg.characteristic, jobs=cfg.jobs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as fh:
            for rep in res.reports:
                fh.write(json.dumps(rep.to_json_obj(), sort_keys=True) + "\n")
    payload = res.to_json_obj()
    if not args.full_reports:
        payload.pop("reports")
    text_lines = [f"classes: {res.classes}",
                  f"proved failures: {len(res.failures)}",
                  f"findings: {len(res.findings)}",
                  f"hhsu equalities: {res.summary['hhsu_equalities']}"]
    for f in res.failures[:20]:
        text_lines.append(f"FAIL {f}")
    _emit(args, payload, "\n".join(text_lines) + "\n")
    return 0 if res.ok() else 1


def cmd_report(args) -> int:
    cfg = _config_from_args(args)
    i, g = _load_subject(args.input, args.ideal)
    report = _bounds_report(i, g, cfg)
    payload = report.to_json_obj()
    oq = verify.search_colon_height_counterexample(trials=200)
    payload["colon_height_search"] = oq
    _emit(args, payload, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 1 if report.failed_proved() else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="edgemult",
        description="edge-ideal invariants and multiplicity bound checks",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("input", help="edge-list file, monomial file with --ideal, or - for stdin")
            sp.add_argument("--ideal", action="store_true",
                            help="parse the input as a monomial list")
        sp.add_argument("--char", type=int, default=None,
                        help="coefficient field characteristic (0 or prime)")
        sp.add_argument("--cap-n", type=int, default=None, dest="cap_n")
        sp.add_argument("--cap-m", type=int, default=None, dest="cap_m")
        sp.add_argument("--jobs", type=int, default=None)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--out", default=None)
        sp.add_argument("--config", default=None, help="JSON config file; flags win")

    sp = sub.add_parser("betti", help="Betti table, M/m, reg, projdim")
    common(sp)
    sp.set_defaults(func=cmd_betti)
    sp = sub.add_parser("mult", help="multiplicity and minimal covers")
    common(sp)
    sp.set_defaults(func=cmd_mult)
    sp = sub.add_parser("bounds", help="multiplicity bound checks")
    common(sp)
    sp.set_defaults(func=cmd_bounds)
    sp = sub.add_parser("reduce", help="digraph reduction trace")
    common(sp)
    sp.set_defaults(func=cmd_reduce)
    sp = sub.add_parser("check-cm", help="Cohen-Macaulay bipartite test")
    common(sp)
    sp.set_defaults(func=cmd_check_cm)
    sp = sub.add_parser("verify", help="exhaustive small-graph sweep")
    sp.add_argument("--max-vertices", type=int, default=8)
    sp.add_argument("--checks", default=None,
                    help="comma list of " + ",".join(verify.CHECK_NAMES))
    sp.add_argument("--full-reports", action="store_true")
    sp.add_argument("--jsonl", default=None,
                    help="stream one report per line to this file")
    common(sp, needs_input=False)
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("report", help="full per-input report")
    common(sp)
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EdgemultError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
