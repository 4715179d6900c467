"""Command-line front end.

Every analysis command reads a metric-group or category file (``-`` or no
argument reads stdin), so constructors can be piped into analyses::

    modcat metric cyclic --n 4 --sigma 1/8 | modcat charge
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Any, Callable

from . import catalog, io, metric
from .abelian import AbelianGroup, format_element, present
from .cyclotomic import CycNumber, RootOfUnity
from .errors import ModcatError, NotModular, NotNilpotent, PreconditionFailed, TooLarge
from .fusion import Subring
from .metric import MetricGroup
from .premodular import PremodularData, from_metric_group

EXIT_OK, EXIT_INVALID, EXIT_USAGE = 0, 1, 2


# -----------------------------------------------------------------------------
# value rendering


def cyc_json(x: CycNumber) -> dict:
    return {"exact": str(x), "approx": x.approx(), **x.to_json()}


def cyc_text(x: CycNumber) -> str:
    return f"{x} ≈ {x.approx()}"


def root_json(r: RootOfUnity) -> dict:
    return {"exponent": str(r), "pretty": r.pretty(), "approx": r.embed().approx()}


def root_text(r: RootOfUnity) -> str:
    return f"{r.pretty()}, exponent {r} ≈ {r.embed().approx()}"


def sub_json(C: PremodularData, K: Subring) -> dict:
    return {"simples": list(K.sorted_labels), "dim": C.sub_dim(K)}


def pointed_group(C: PremodularData, K: Subring) -> AbelianGroup | None:
    """The group of simples of a pointed abelian subcategory, else ``None``."""
    if any(C.dim[x] != 1 for x in K.labels):
        return None
    R = C.ring
    if any(R.fuse(x, y) != R.fuse(y, x) for x in K.labels for y in K.labels):
        return None
    op = lambda x, y: next(iter(R.fuse(x, y)))  # noqa: E731
    return present(list(K.sorted_labels), op, R.unit).group


# -----------------------------------------------------------------------------
# input


def load_input(path: str) -> tuple[MetricGroup | None, PremodularData]:
    obj = io.load(path)
    if isinstance(obj, MetricGroup):
        bad = obj.validate()
        if bad is not None:
            raise ModcatError(f"not a quadratic form: {bad}")
        return obj, from_metric_group(obj)
    return None, obj


def load_category(args) -> tuple[MetricGroup | None, PremodularData]:
    M, C = load_input(args.file)
    if M is None:
        C.validate(args.deep_validate or None)
    return M, C


# -----------------------------------------------------------------------------
# reports (dict for JSON, lines for text)


def charge_section(C: PremodularData) -> tuple[dict, list[str]]:
    tp, tm = C.gauss_sums()
    data: dict[str, Any] = {"dim": C.total_dim(), "modular": C.is_modular(), "tau_plus": cyc_json(tp), "tau_minus": cyc_json(tm)}
    lines = [f"dim: {C.total_dim()}", f"modular: {'yes' if C.is_modular() else 'no'}", f"tau+: {cyc_text(tp)}", f"tau-: {cyc_text(tm)}"]
    if C.is_modular():
        xi = C.central_charge()
        data["central_charge"] = root_json(xi)
        lines.append(f"central charge: {root_text(xi)}")
    else:
        data["central_charge"] = None
        lines.append("central charge: n/a (not modular)")
    return data, lines


def subcats_section(C: PremodularData) -> tuple[list, list[str]]:
    rows = []
    lines = ["subcategories:", "  #   dim  sym  iso  lag  simples  ->  centralizer"]
    for i, info in enumerate(C.classify_subcategories()):
        rows.append(
            {
                **sub_json(C, info.sub),
                "symmetric": info.symmetric,
                "isotropic": info.isotropic,
                "lagrangian": info.lagrangian,
                "centralizer": list(info.centralizer.sorted_labels),
            }
        )
        flag = lambda b: "yes" if b else "no"  # noqa: E731
        lines.append(
            f"  {i:<3} {info.dim:<4} {flag(info.symmetric):<4} {flag(info.isotropic):<4} "
            f"{flag(info.lagrangian):<4} {info.sub}  ->  {info.centralizer}"
        )
    return rows, lines


def lagrangian_section(C: PremodularData) -> tuple[list, list[str]]:
    found = C.lagrangian_subcategories()
    rows, lines = [], []
    for K in found:
        G = pointed_group(C, K)
        rows.append({**sub_json(C, K), "order": C.sub_dim(K), "group": None if G is None else list(G.orders)})
        desc = f"group {G}" if G is not None else "not pointed"
        lines.append(f"  order {C.sub_dim(K)} ({desc}): {K}")
    head = f"lagrangian subcategories: {len(found)}" if found else "lagrangian subcategories: none"
    return rows, [head] + lines


def witness_section(C: PremodularData) -> tuple[dict | None, list[str]]:
    if not C.is_modular():
        return None, ["group-theoretical witness: n/a (not modular)"]
    E = C.is_group_theoretical()
    if E is None:
        return None, ["group-theoretical witness: none found"]
    return sub_json(C, E), [f"group-theoretical witness: {E} (dim {C.sub_dim(E)})"]


def sylow_section(C: PremodularData) -> tuple[list | None, list[str]]:
    try:
        factors = C.sylow_decompose()
    except NotNilpotent:
        return None, ["sylow factors: n/a (not nilpotent)"]
    rows = [{"prime": p, **sub_json(C, K)} for p, K in factors]
    lines = ["sylow factors:"] + [f"  p={p}: dim {C.sub_dim(K)} {K}" for p, K in factors]
    if not factors:
        lines = ["sylow factors: none (trivial category)"]
    return rows, lines


def analyze_report(C: PremodularData) -> tuple[dict, list[str]]:
    data: dict[str, Any] = {"rank": C.rank, "dims": C.dim, "twists": {x: str(C.twist[x]) for x in C.labels}}
    lines = [
        f"rank: {C.rank}",
        "dims: " + " ".join(f"{x}={C.dim[x]}" for x in C.labels),
        "twists: " + " ".join(f"{x}={C.twist[x]}" for x in C.labels),
    ]
    ch, ch_lines = charge_section(C)
    data.update(ch)
    lines += ch_lines
    ncls = C.nilpotency_class()
    data["nilpotent"] = ncls is not None
    data["nilpotency_class"] = ncls
    lines.append("nilpotent: no" if ncls is None else f"nilpotent: yes (class {ncls})")
    series = C.upper_central_series()
    data["upper_central_series"] = [list(K.sorted_labels) for K in series]
    lines.append("upper central series: " + " > ".join(str(K) for K in series))
    gr = C.universal_grading()
    G = gr.group()
    data["grading_group"] = None if G is None else list(G.orders)
    data["grading_components"] = [list(c) for c in gr.components]
    k = len(gr.components)
    name = "nonabelian" if G is None else ("trivial" if k == 1 else str(G))
    lines.append(f"universal grading group: {name} ({k} component{'s' if k != 1 else ''})")
    rows, sub_lines = subcats_section(C)
    data["subcategories"] = rows
    lines += sub_lines
    lag, lag_lines = lagrangian_section(C)
    data["lagrangians"] = lag
    lines += lag_lines
    wit, wit_lines = witness_section(C)
    data["group_theoretical_witness"] = wit
    lines += wit_lines
    syl, syl_lines = sylow_section(C)
    data["sylow"] = syl
    lines += syl_lines
    return data, lines


# -----------------------------------------------------------------------------
# commands


def emit(args, data: Any, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))


def cmd_validate(args) -> int:
    obj = io.load(args.file)
    if isinstance(obj, MetricGroup):
        bad = obj.validate()
        if bad is not None:
            emit(args, {"valid": False, "error": f"not a quadratic form: {bad}"}, [f"invalid: not a quadratic form: {bad}"])
            return EXIT_INVALID
        nd = obj.is_nondegenerate()
        emit(
            args,
            {"valid": True, "kind": "metric", "order": obj.order, "nondegenerate": nd},
            [f"valid: metric group {obj.group}, order {obj.order}, {'nondegenerate' if nd else 'degenerate'}"],
        )
        return EXIT_OK
    try:
        obj.validate(args.deep_validate or None)
    except ModcatError as exc:
        emit(args, {"valid": False, "error": str(exc)}, [f"invalid: {exc}"])
        return EXIT_INVALID
    emit(
        args,
        {"valid": True, "kind": "category", "rank": obj.rank, "dim": obj.total_dim()},
        [f"valid: premodular category, rank {obj.rank}, dim {obj.total_dim()}"],
    )
    return EXIT_OK


def cmd_analyze(args) -> int:
    _, C = load_category(args)
    data, lines = analyze_report(C)
    emit(args, data, lines)
    return EXIT_OK


def cmd_charge(args) -> int:
    _, C = load_category(args)
    data, lines = charge_section(C)
    emit(args, data, lines)
    return EXIT_OK


def cmd_subcats(args) -> int:
    _, C = load_category(args)
    rows, lines = subcats_section(C)
    emit(args, rows, lines)
    return EXIT_OK


def cmd_lagrangian(args) -> int:
    _, C = load_category(args)
    rows, lines = lagrangian_section(C)
    emit(args, rows, lines)
    return EXIT_OK


def cmd_grouptheoretical(args) -> int:
    _, C = load_category(args)
    if not C.is_modular():
        raise NotModular("group-theoreticality test needs a modular category")
    wit, lines = witness_section(C)
    emit(args, {"witness": wit}, lines)
    return EXIT_OK


def cmd_decompose(args) -> int:
    _, C = load_category(args)
    rows, lines = sylow_section(C)
    if rows is None:
        raise NotNilpotent("Sylow decomposition needs a nilpotent category")
    emit(args, rows, lines)
    return EXIT_OK


def cmd_complement(args) -> int:
    _, C = load_category(args)
    E = C.is_group_theoretical() if C.is_modular() else None
    if E is None:
        raise PreconditionFailed("no group-theoreticality witness; complement is undefined")
    H = C.grading_metric(E)
    P, K = C.adjoin_pointed_complement()
    if args.emit:
        sys.stdout.write(io.dumps(P))
        return EXIT_OK
    xi = P.central_charge()
    data = {
        "witness": sub_json(C, E),
        "complement_group": list(H.group.orders),
        "complement_q_inverse": {format_element(g): str(H.q(g).inverse()) for g in H.group.elements()},
        "product_dim": P.total_dim(),
        "lagrangian": sub_json(P, K),
        "central_charge": root_json(xi),
    }
    lines = [
        f"witness E: {E} (dim {C.sub_dim(E)})",
        f"complement: C(H, q^-1) with H = {H.group}, q^-1 = [{', '.join(str(H.q(g).inverse()) for g in H.group.elements())}]",
        f"enlarged category: rank {P.rank}, dim {P.total_dim()}",
        f"lagrangian: {K} (dim {P.sub_dim(K)})",
        f"central charge: {root_text(xi)}",
    ]
    emit(args, data, lines)
    return EXIT_OK


def _orders(values: list[int]) -> AbelianGroup:
    return AbelianGroup(tuple(values))


def cmd_metric(args) -> int:
    if args.kind == "cyclic":
        M = metric.cyclic(args.n, RootOfUnity(args.sigma))
    elif args.kind == "hyperbolic":
        M = metric.hyperbolic(_orders(args.orders))
    elif args.kind == "direct-sum":
        parts = [io.load(f) for f in args.files]
        if not all(isinstance(p, MetricGroup) for p in parts):
            raise ModcatError("direct-sum takes metric-group files")
        M = parts[0]
        for P in parts[1:]:
            M = metric.direct_sum(M, P)
    else:  # gram
        off = {}
        for item in args.off or []:
            key, val = item.split("=")
            i, j = (int(a) for a in key.split(","))
            off[(i, j)] = Fraction(val)
        M = metric.from_gram(_orders(args.orders), [Fraction(d) for d in args.diagonal], off)
    sys.stdout.write(io.dumps_metric(M))
    return EXIT_OK


def cmd_double(args) -> int:
    C = catalog.double_of_abelian(_orders(args.orders))
    sys.stdout.write(io.dumps_category(C))
    return EXIT_OK


def cmd_fixtures(args) -> int:
    if args.action == "list":
        fixtures = catalog.all_fixtures()
        data = [{"name": f.name, "description": f.description} for f in fixtures]
        emit(args, data, [f"{f.name:<28} {f.description}" for f in fixtures])
        return EXIT_OK
    if args.action == "check":
        fixtures = [catalog.fixture(args.name)] if args.name else catalog.all_fixtures()
        bad = [b for fx in fixtures for b in catalog.check(fx)]
        lines = bad + [f"{len(fixtures) - len({b.split(':')[0] for b in bad})}/{len(fixtures)} fixtures match their expected values"]
        emit(args, {"checked": len(fixtures), "mismatches": bad}, lines)
        return EXIT_INVALID if bad else EXIT_OK
    if not args.name:
        raise UsageError("fixtures dump needs a fixture name")
    fx = catalog.fixture(args.name)
    sys.stdout.write(io.dumps(fx.payload))
    return EXIT_OK


def sweep_checks(M: MetricGroup) -> list[str]:
    """Property checks for one nondegenerate metric group; returns failures."""
    fails = []
    n = M.order
    tp, tm = M.gauss_sum(1), M.gauss_sum(-1)
    if tp * tm != CycNumber.rational(n):
        fails.append("tau+ tau- != |G|")
    xi = M.central_charge()
    if (xi.exponent * 8).denominator != 1:
        fails.append(f"charge {xi} is not an 8th root of unity")
    square = math.isqrt(n) ** 2 == n
    if square and n % 2 == 1 and xi.exponent not in (0, Fraction(1, 2)):
        fails.append(f"odd square order with charge {xi}")
    if square and xi.is_one():
        L = M.find_lagrangian()
        if L is None or not M.is_lagrangian(L):
            fails.append("no Lagrangian subgroup although charge is 1")
    for H in M.isotropic_subgroups():
        if M.reduce(H).central_charge() != xi:
            fails.append(f"charge changes under reduction by {H}")
            break
    return fails


def cmd_sweep(args) -> int:
    rows, lines, failed = [], [], False
    lines.append("order  classes  lagrangian-checked  failures")
    for n in range(1, args.order_max + 1):
        classes = catalog.nondegenerate_classes(n)
        fails = []
        lag = 0
        for M in classes:
            f = sweep_checks(M)
            fails += [f"{M.describe()}: {x}" for x in f]
            if math.isqrt(n) ** 2 == n and M.central_charge().is_one():
                lag += 1
        failed |= bool(fails)
        rows.append({"order": n, "classes": len(classes), "lagrangian_checked": lag, "failures": fails})
        lines.append(f"{n:<6} {len(classes):<8} {lag:<19} {len(fails)}")
        lines += [f"  FAIL {x}" for x in fails]
    lines.append("all checks passed" if not failed else "some checks FAILED")
    emit(args, {"orders": rows, "ok": not failed}, lines)
    return EXIT_INVALID if failed else EXIT_OK


# -----------------------------------------------------------------------------
# parser


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    common.add_argument("--deep-validate", action="store_true", help="check associativity at any rank")

    parser = argparse.ArgumentParser(prog="modcat", description="Metric groups and integral premodular categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    file_cmds: dict[str, tuple[Callable, str]] = {
        "validate": (cmd_validate, "check a metric-group or category file"),
        "analyze": (cmd_analyze, "full report for a file"),
        "charge": (cmd_charge, "Gauss sums and central charge"),
        "subcats": (cmd_subcats, "subcategories with symmetric/isotropic/Lagrangian flags"),
        "lagrangian": (cmd_lagrangian, "Lagrangian subcategories"),
        "grouptheoretical": (cmd_grouptheoretical, "isotropic E with (E')_ad inside E"),
        "decompose": (cmd_decompose, "prime-power (Sylow) decomposition"),
        "complement": (cmd_complement, "adjoin a pointed complement with a Lagrangian"),
    }
    for name, (fn, help_text) in file_cmds.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", nargs="?", default="-", help="input file (default: stdin)")
        if name == "complement":
            p.add_argument("--emit", action="store_true", help="write the enlarged category file instead")
        p.set_defaults(func=fn)

    pm = sub.add_parser("metric", parents=[common], help="construct a metric-group file")
    kinds = pm.add_subparsers(dest="kind", required=True)
    pc = kinds.add_parser("cyclic", help="Z/n with q(a) = sigma^(a^2)")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--sigma", required=True, help="exponent r/s of sigma = exp(2πi r/s)")
    ph = kinds.add_parser("hyperbolic", help="G x G^ with the evaluation form")
    ph.add_argument("--orders", type=int, nargs="+", required=True)
    pd = kinds.add_parser("direct-sum", help="orthogonal sum of metric-group files")
    pd.add_argument("files", nargs="+")
    pg = kinds.add_parser("gram", help="form given on generators")
    pg.add_argument("--orders", type=int, nargs="+", required=True)
    pg.add_argument("--diagonal", nargs="+", required=True, help="exponents of q(e_i)")
    pg.add_argument("--off", nargs="*", help="entries i,j=r/s for b(e_i, e_j)")
    pm.set_defaults(func=cmd_metric)

    pdbl = sub.add_parser("double", parents=[common], help="pointed double of an abelian group")
    pdbl.add_argument("--orders", type=int, nargs="+", required=True)
    pdbl.set_defaults(func=cmd_double)

    pf = sub.add_parser("fixtures", parents=[common], help="list, dump or check named fixtures")
    pf.add_argument("action", choices=("list", "dump", "check"))
    pf.add_argument("name", nargs="?")
    pf.set_defaults(func=cmd_fixtures)

    ps = sub.add_parser("sweep", parents=[common], help="property sweep over nondegenerate metric groups")
    ps.add_argument("--order-max", type=int, required=True)
    ps.set_defaults(func=cmd_sweep)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLarge as exc:
        print(f"error: cap {exc.cap_name} exceeded ({exc.value} > {exc.limit}); raise it via the environment", file=sys.stderr)
        return EXIT_INVALID
    except ModcatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
