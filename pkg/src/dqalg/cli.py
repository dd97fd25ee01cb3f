"""Command-line front end (``dq``).

Exit status: 0 on success, 1 when the mathematics says no (a failed check,
a rejected order), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .dims import (
    KeepSet,
    elimination_certificate,
    eliminate,
    find_elimination_order,
    gk_dim_quotient,
    hilbert_series,
    quotient_hilbert_function,
)
from .freealg import BadDimension, format_word, generate_relations, verify_gsb
from .leftgb import IdealPresentation, OrderNotSolvable, ReductionDiverged, buchberger
from .parsing import ExpressionSyntaxError, IndexOutOfRange, split_top_level
from .pbw import (
    DEG_PAPER_LEX,
    DEG_PAPER_LEX_INDEX_SORTED,
    NATURAL_LEX,
    PAPER_LEX,
    DqAlgebra,
    OrderSpec,
    validate_ordering,
)
from .scalarfield import SYMBOLIC, FieldConfig, FieldError
from .textio import element_to_json, format_element, parse_element

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_NAMED_ORDERS = {
    "paper-lex": PAPER_LEX,
    "deg-paper-lex": DEG_PAPER_LEX,
    "deg-paper-lex-index-sorted": DEG_PAPER_LEX_INDEX_SORTED,
    "natural-lex": NATURAL_LEX,
}


class UsageError(ValueError):
    pass


@dataclass
class SessionConfig:
    n: int
    field: FieldConfig
    order: OrderSpec
    output: str = "text"

    @property
    def algebra(self) -> DqAlgebra:
        return _algebra(self.n, self.field)


_ALGEBRAS: dict = {}


def _algebra(n: int, field: FieldConfig) -> DqAlgebra:
    key = (n, field)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = DqAlgebra(n, field)
    return _ALGEBRAS[key]


def parse_keep(src: str, n: int) -> KeepSet:
    gens = []
    for part in split_top_level(src):
        p = part.replace(" ", "")
        if not (p.startswith("d[") and p.endswith("]")):
            raise UsageError(f"keep entry {part!r} is not a generator d[i,j]")
        try:
            i, j = (int(x) for x in p[2:-1].split(","))
        except ValueError:
            raise UsageError(f"keep entry {part!r} is not a generator d[i,j]") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexOutOfRange(f"generator d[{i},{j}] out of range for n={n}")
        gens.append((i, j))
    try:
        return KeepSet(tuple(gens), n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_order(name: str, n: int, field: FieldConfig = SYMBOLIC) -> OrderSpec:
    """Named order, or ``elim:<keep-list>`` resolved to a validated block order when one exists."""
    if name in _NAMED_ORDERS:
        return _NAMED_ORDERS[name]
    if name.startswith("elim:"):
        keep = parse_keep(name[len("elim:") :], n)
        return find_elimination_order(_algebra(n, field), keep) or OrderSpec.block(keep.U)
    choices = ", ".join(list(_NAMED_ORDERS) + ["elim:<keep-list>"])
    raise UsageError(f"unknown order {name!r} (choose from {choices})")


def _parse_gens(src: str, alg: DqAlgebra) -> list:
    gens = [parse_element(p, alg) for p in split_top_level(src)]
    gens = [g for g in gens if g]
    if not gens:
        raise UsageError("--gens needs at least one nonzero generator")
    return gens


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _fmt_gen(g) -> str:
    return f"d[{g[0]},{g[1]}]"


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_gsb(args, cfg: SessionConfig) -> int:
    rep = verify_gsb(cfg.n, field=cfg.field)
    lines = [f"relations: {rep.relation_count}", rep.summary()]
    for amb, nf in rep.failures[:10]:
        lines.append(f"  {amb}: {nf}")
    payload = {
        "n": cfg.n,
        "relations": rep.relation_count,
        "ambiguities": rep.ambiguity_count,
        "passed": rep.passed,
        "failures": [{"word": format_word(a.w), "case": a.case, "normal_form": str(nf)} for a, nf in rep.failures],
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_relations(args, cfg: SessionConfig) -> int:
    rels = generate_relations(cfg.n, cfg.field)
    payload = {
        "n": cfg.n,
        "relations": [
            {"name": r.name, "kind": r.kind, "lead": format_word(r.lead), "poly": str(r.poly)} for r in rels
        ],
    }
    _emit(args, "\n".join(str(r) for r in rels), payload)
    return EXIT_OK


def cmd_nf(args, cfg: SessionConfig) -> int:
    f = parse_element(args.expr, cfg.algebra)
    _emit(args, format_element(f, cfg.order), element_to_json(f, cfg.order))
    return EXIT_OK


def cmd_mul(args, cfg: SessionConfig) -> int:
    alg = cfg.algebra
    f = parse_element(args.lhs, alg) * parse_element(args.rhs, alg)
    _emit(args, format_element(f, cfg.order), element_to_json(f, cfg.order))
    return EXIT_OK


def cmd_gb(args, cfg: SessionConfig) -> int:
    gens = _parse_gens(args.gens, cfg.algebra)
    G = buchberger(IdealPresentation(gens, cfg.order), trace=args.trace)
    lines = [f"order: {cfg.order.name()}", "basis:"]
    lines += [f"  [{k}] {format_element(g, cfg.order)}" for k, g in enumerate(G.elements)]
    payload = {
        "n": cfg.n,
        "order": cfg.order.name(),
        "generators": [format_element(g, cfg.order) for g in gens],
        "basis": [format_element(g, cfg.order) for g in G.elements],
        "basis_terms": [element_to_json(g, cfg.order) for g in G.elements],
    }
    if args.trace:
        lines.append("trace:")
        lines += [f"  {t.describe()}" for t in G.trace]
        payload["trace"] = [{"pair": [t.i, t.j], "result": t.result, "index": t.index} for t in G.trace]
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_gkdim(args, cfg: SessionConfig) -> int:
    gens = _parse_gens(args.gens, cfg.algebra)
    G = buchberger(IdealPresentation(gens, cfg.order), certificates=False)
    rep = gk_dim_quotient(G)
    text = "\n".join(
        [
            f"gk_dim: {rep.gk_dim}",
            "witness: " + (",".join(_fmt_gen(g) for g in rep.witness_variable_set) or "(none)"),
            "hilbert: " + " ".join(str(v) for v in rep.hilbert_values),
            f"cross-check: {'ok' if rep.cross_check else 'MISMATCH'} (growth degree {rep.growth_degree})",
        ]
    )
    _emit(args, text, rep.to_json())
    if args.plot:
        from .plotting import plot_hilbert

        plot_hilbert(args.plot, rep.hilbert_values, hilbert_series(cfg.n).values(len(rep.hilbert_values) - 1))
    return EXIT_OK if rep.cross_check else EXIT_FAIL


def cmd_hilbert(args, cfg: SessionConfig) -> int:
    hs = hilbert_series(cfg.n)
    full = hs.values(args.upto)
    payload = {"n": cfg.n, "series": str(hs), "values": full}
    lines = [f"series: {hs}"]
    values = full
    if args.gens:
        gens = _parse_gens(args.gens, cfg.algebra)
        G = buchberger(IdealPresentation(gens, cfg.order), certificates=False)
        values = [quotient_hilbert_function(G, k) for k in range(args.upto + 1)]
        payload.update(order=cfg.order.name(), quotient_values=values)
        lines.append("k  h_quotient(k)  h(k)")
        lines += [f"{k}  {v}  {h}" for k, (v, h) in enumerate(zip(values, full))]
    else:
        lines.append("k  h(k)")
        lines += [f"{k}  {h}" for k, h in enumerate(full)]
    _emit(args, "\n".join(lines), payload)
    if args.plot:
        from .plotting import plot_hilbert

        plot_hilbert(args.plot, values, full if args.gens else None, title=f"n = {cfg.n}")
    return EXIT_OK


def cmd_eliminate(args, cfg: SessionConfig) -> int:
    gens = _parse_gens(args.gens, cfg.algebra)
    L = IdealPresentation(gens, DEG_PAPER_LEX)
    if args.certificate:
        cert = elimination_certificate(L)
        lines = [f"t: {cert.t}", f"holds: {cert.holds}"]
        for v in cert.verdicts:
            body = "; ".join(str(e) for e in v.elements)
            lines.append(f"  {{{','.join(map(_fmt_gen, v.keep))}}} {v.status} {body} {v.note}".rstrip())
        _emit(args, "\n".join(lines), cert.to_json())
        return EXIT_OK if cert.holds else EXIT_FAIL
    if not args.keep:
        raise UsageError("eliminate needs --keep (or --certificate)")
    keep = parse_keep(args.keep, cfg.n)
    res = eliminate(L, keep)
    order = res.order.name() if res.order else "none validated"
    lines = [f"keep: {keep.name()}", f"elimination order: {order}", f"method: {res.method}"]
    if res.zero:
        lines.append("intersection: zero")
    else:
        lines.append("intersection: nonzero")
        lines += [f"  {format_element(e, res.order or DEG_PAPER_LEX)}" for e in res.elements]
    payload = {
        "n": cfg.n,
        "keep": keep.name(),
        "order": res.order.name() if res.order else None,
        "method": res.method,
        "zero": res.zero,
        "elements": [str(e) for e in res.elements],
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_check_order(args, cfg: SessionConfig) -> int:
    rep = validate_ordering(cfg.order, cfg.algebra, degree_cap=args.max_degree)
    bad = rep.failing_pairs()
    lines = [
        f"order: {cfg.order.name()}",
        f"generator pairs: {len(rep.generator_pair_results) - len(bad)}/{len(rep.generator_pair_results)} solvable",
    ]
    for r in bad:
        lines.append(f"  fails: {_fmt_gen(r.high)}*{_fmt_gen(r.low)} = {r.lam}*{_fmt_gen(r.low)}*{_fmt_gen(r.high)} + {r.tail}")
    alg = cfg.algebra
    fm = alg.format_monomial
    lines.append(f"condition (2): {rep.axiom2_failures} violations in {rep.axiom2_checks} checks")
    for v in rep.axiom2_violations:
        lines.append(f"  alpha={fm(v['alpha'])} beta={fm(v['beta'])} eta={fm(v['eta'])} gamma={fm(v['gamma'])}")
    lines.append(f"condition (3): {rep.axiom3_failures} violations in {rep.axiom3_checks} checks")
    for v in rep.axiom3_violations:
        lines.append(
            f"  gamma={fm(v['gamma'])} alpha={fm(v['alpha'])} beta={fm(v['beta'])} eta={fm(v['eta'])}"
            f" LM={fm(v['lm_a'])} vs {fm(v['lm_b'])}"
        )
    lines.append("verdict: " + ("solvable" if rep.passed else "not solvable"))
    payload = {
        "n": cfg.n,
        "order": cfg.order.name(),
        "max_degree": args.max_degree,
        "pairs_passed": rep.pairs_passed,
        "failing_pairs": [[_fmt_gen(r.high), _fmt_gen(r.low)] for r in bad],
        "axiom2": {"checks": rep.axiom2_checks, "violations": rep.axiom2_failures},
        "axiom3": {"checks": rep.axiom3_checks, "violations": rep.axiom3_failures},
        "passed": rep.passed,
    }
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    dflt = argparse.SUPPRESS if suppress else None
    p.add_argument("--q", dest="q", default=dflt, metavar="VALUE", help="specialize q to an exact nonzero rational")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False, help="JSON output")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dq",
        description="Exact computation in the quantized matrix algebra D_q(n).",
        parents=[_global_flags(False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _global_flags(True)

    def add(name, func, help_, order_default=None):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("--n", type=int, required=True, help="matrix size (>= 2)")
        if order_default is not None:
            sp.add_argument("--order", default=order_default, help=f"monomial order (default {order_default})")
        sp.set_defaults(func=func, order=order_default)
        return sp

    add("verify-gsb", cmd_verify_gsb, "check that all compositions of the relations reduce to 0")
    add("relations", cmd_relations, "list the defining relations")
    sp = add("nf", cmd_nf, "PBW normal form of an expression", "paper-lex")
    sp.add_argument("--expr", required=True)
    sp = add("mul", cmd_mul, "product of two expressions", "paper-lex")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp = add("gb", cmd_gb, "reduced left Groebner basis", "deg-paper-lex")
    sp.add_argument("--gens", required=True, help="comma-separated generators")
    sp.add_argument("--trace", action="store_true", help="show the completion log")
    sp = add("gkdim", cmd_gkdim, "GK dimension of D_q(n)/L", "deg-paper-lex")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--plot", metavar="PATH", help="write a Hilbert-growth figure")
    sp = add("hilbert", cmd_hilbert, "Hilbert function of D_q(n) or of D_q(n)/L", "deg-paper-lex")
    sp.add_argument("--upto", type=int, default=6)
    sp.add_argument("--gens")
    sp.add_argument("--plot", metavar="PATH", help="write a Hilbert-growth figure")
    sp = add("eliminate", cmd_eliminate, "intersect L with the span of monomials on a keep set")
    sp.add_argument("--gens", required=True)
    sp.add_argument("--keep", help='e.g. "d[1,1],d[2,2]"')
    sp.add_argument("--certificate", action="store_true", help="check every keep set of size GK.dim + 1")
    sp = add("check-order", cmd_check_order, "validate a monomial order", "paper-lex")
    sp.add_argument("--max-degree", type=int, default=3)
    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        field = SYMBOLIC if args.q is None else FieldConfig.specialized(args.q)
        if args.n < 2:
            raise BadDimension(f"n must be >= 2, got {args.n}")
        order = parse_order(args.order, args.n, field) if args.order else PAPER_LEX
        cfg = SessionConfig(args.n, field, order, "json" if args.json else "text")
        return args.func(args, cfg)
    except (OrderNotSolvable, ReductionDiverged) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ExpressionSyntaxError, IndexOutOfRange, UsageError, BadDimension, FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
