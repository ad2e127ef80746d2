"""Command-line front end: model ingestion, reports, catalog, sweeps.

Exit codes: 0 success, 1 domain rejection (invalid model or constants),
2 usage error.  Output is deterministic for deterministic inputs; --json
switches every report to a stable machine format whose keys are frozen
(new keys may be added, existing ones are never renamed).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import fibertrans, intersect, linsys, model as model_mod, rigidity, singular
from .errors import DpfibError
from .exactpoly import to_text

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _parse_constants(degree: int, text: str) -> model_mod.StructureConstants:
    parts = [int(v) for v in text.replace(",", " ").split()]
    if degree == 1:
        if len(parts) != 4:
            raise ValueError("degree 1 takes constants eps,n1,n2,n3")
        return model_mod.StructureConstants.d1(*parts)
    if len(parts) != 3:
        raise ValueError("degree 2 takes constants a,n1,n2")
    return model_mod.StructureConstants.d2(*parts)


def _emit(payload, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _cmd_validate(args) -> int:
    mdl = model_mod.load_model(args.model)
    report = model_mod.validate(mdl)
    payload = {
        "valid": report.is_valid,
        "violations": list(report.violations),
        "notes": list(report.notes),
    }
    lines = ["valid" if report.is_valid else "invalid:"]
    lines += [f"  violation: {v}" for v in report.violations]
    lines += [f"  note: {n}" for n in report.notes]
    _emit(payload, args.json, lines)
    return EXIT_OK if report.is_valid else EXIT_DOMAIN


def _cmd_table(args) -> int:
    sc = _parse_constants(args.degree, args.constants)
    table = intersect.intersection_table(sc)
    rows = [f"constants: {sc.as_tuple()}  [degree {sc.degree}]"] + table.rows()
    payload = {
        "degree": sc.degree,
        "constants": list(sc.as_tuple()),
        "minus_k_cubed": table.minus_k_cubed,
        "k_squared": [str(table.k_squared.sigma), str(table.k_squared.phi)],
        "s0_dot_gv": str(table.s0_dot_gv),
        "rows": table.rows(),
    }
    _emit(payload, args.json, rows)
    return EXIT_OK


def _cmd_classify(args) -> int:
    sc = _parse_constants(args.degree, args.constants)
    verdict = rigidity.classify(sc)
    payload = {
        "status": verdict.status,
        "case_id": verdict.case_id,
        "citation": verdict.notes,
    }
    text = verdict.status
    if verdict.case_id:
        text += f" (case {verdict.case_id})"
    _emit(payload, args.json, [text, f"  {verdict.notes}"])
    return EXIT_OK


def _cmd_linsys(args) -> int:
    if args.model:
        subject = model_mod.load_model(args.model)
        degree = subject.degree
        constants = None
    elif args.degree and args.constants:
        subject = _parse_constants(args.degree, args.constants)
        degree = subject.degree
        constants = list(subject.as_tuple())
    else:
        raise ValueError("linsys needs --model or --degree with --constants")
    statuses, verdict = linsys.conjecture_status(subject, n_max=args.nmax)
    lines = []
    rows = []
    for status in statuses:
        comp = to_text(status.base_component) if status.base_component else "none"
        lines.append(f"n={status.n} h0={status.dim_h0} base_component={comp}")
        rows.append(
            {"n": status.n, "h0": status.dim_h0, "base_component": comp}
        )
    lines.append(f"verdict: {verdict}")
    payload = {"degree": degree, "constants": constants, "systems": rows,
               "verdict": verdict}
    _emit(payload, args.json, lines)
    return EXIT_OK


def _cmd_transform(args) -> int:
    model_v = model_mod.load_model(args.model_v)
    model_u = model_mod.load_model(args.model_u)
    forward = tuple(int(v) for v in args.forward.replace(",", " ").split())
    mm = fibertrans.solve_constraints(model_v.degree, forward)
    result = fibertrans.uniqueness_check(model_v, model_u, mm)
    lines = [
        f"map: forward={mm.forward} backward={mm.backward} m={mm.m}",
    ]
    details = {}
    for tag, res in (("V", result.forward), ("U", result.backward)):
        if res is None:
            continue
        lines.append(f"transported {tag}: {to_text(res.equation)}")
        lines.append(f"  integral: {str(res.integral).lower()}")
        if res.forced_singularity is not None:
            lines.append(
                f"  forced singularity: {res.forced_singularity} [verified]"
            )
        details[tag] = {
            "equation": to_text(res.equation),
            "integral": res.integral,
            "forced_singularity": list(res.forced_singularity)
            if res.forced_singularity
            else None,
        }
    lines.append(f"consistent: {str(result.consistent).lower()}")
    lines.append(f"verdict: {result.verdict}")
    payload = {
        "forward": list(mm.forward),
        "backward": list(mm.backward),
        "m": mm.m,
        "transported": details,
        "consistent": result.consistent,
        "verdict": result.verdict,
    }
    _emit(payload, args.json, lines)
    return EXIT_OK


def _cmd_smooth(args) -> int:
    mdl = model_mod.load_model(args.model)
    if args.fp:
        t_range = None
        if args.t_range:
            t_range = [int(v) for v in args.t_range.replace(",", " ").split()]
        points = singular.singular_search_fp(mdl, args.fp, t_range)
        lines = [
            f"chart={pt.chart} coords={pt.coords}" for pt in points
        ]
        lines.append(f"singular points over F_{args.fp}: {len(points)}")
        payload = {
            "prime": args.fp,
            "points": [
                {"chart": pt.chart, "coords": list(pt.coords)} for pt in points
            ],
        }
        _emit(payload, args.json, lines)
        return EXIT_OK
    if not args.chart or args.coords is None:
        raise ValueError("point mode needs --chart and --coords t,u1,u2,u3")
    coords = tuple(int(v) for v in args.coords.replace(",", " ").split())
    pt = singular.ChartPoint(args.chart, coords)
    smooth = singular.is_smooth_at(mdl, pt)
    lines = [f"smooth: {str(smooth).lower()}"]
    payload = {"smooth": smooth, "chart": args.chart, "coords": list(coords)}
    if not smooth:
        report = singular.local_report(mdl, pt)
        lines.append(f"quadratic rank: {report.quadratic_rank}")
        lines.append(f"corank: {report.corank}")
        if report.brieskorn_exponents:
            lines.append(
                f"brieskorn exponents: {report.brieskorn_exponents}"
            )
            lines.append(f"milnor number: {report.milnor_number}")
        if report.label_hint:
            lines.append(f"hint: {report.label_hint}")
        payload.update(
            {
                "quadratic_rank": report.quadratic_rank,
                "corank": report.corank,
                "brieskorn_exponents": list(report.brieskorn_exponents)
                if report.brieskorn_exponents
                else None,
                "milnor_number": report.milnor_number,
                "label_hint": report.label_hint,
            }
        )
    _emit(payload, args.json, lines)
    return EXIT_OK


def _cmd_catalog(args) -> int:
    sc = _parse_constants(args.degree, args.constants)
    verdict = rigidity.classify(sc)
    records = rigidity.mori_structures(sc)
    lines = [f"constants: {sc.as_tuple()}  [degree {sc.degree}]",
             f"classification: {verdict.status}"]
    payload_records = []
    for i, record in enumerate(records, start=1):
        lines.append(f"structure {i} [{record.link_type}, {record.status}]:")
        lines.append(f"  {record.description}")
        for fact in record.numeric_facts:
            lines.append(f"  fact ({fact.source}): {fact.name} = {fact.value}")
        if record.note:
            lines.append(f"  note: {record.note}")
        payload_records.append(
            {
                "description": record.description,
                "link_type": record.link_type,
                "status": record.status,
                "facts": [
                    {"name": f.name, "value": str(f.value), "source": f.source}
                    for f in record.numeric_facts
                ],
                "note": record.note,
            }
        )
    payload = {
        "constants": list(sc.as_tuple()),
        "degree": sc.degree,
        "classification": verdict.status,
        "structures": payload_records,
    }
    _emit(payload, args.json, lines)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.bound > 12:
        raise ValueError("sweep bound is capped at 12 (desk scale)")
    rows = []
    lines = []
    for sc in rigidity.enumerate_constants(args.degree, args.bound):
        verdict = rigidity.classify(sc)
        k2 = intersect.k2_condition(sc)
        if verdict.status == rigidity.OUT_OF_CLASSIFICATION:
            conjecture = "n/a"
            agree = None
        else:
            _, conjecture = linsys.conjecture_status(sc, n_max=args.nmax)
            expected = (
                linsys.VERDICT_NON_RIGID
                if verdict.status == rigidity.NON_RIGID
                else linsys.VERDICT_RIGID
            )
            agree = conjecture == expected
        rows.append(
            {
                "constants": list(sc.as_tuple()),
                "classify": verdict.status,
                "k2_condition": k2,
                "conjecture": conjecture,
                "agree": agree,
            }
        )
        agree_text = "n/a" if agree is None else str(agree).lower()
        lines.append(
            f"{sc.as_tuple()} | {verdict.status} | k2={str(k2).lower()} | "
            f"{conjecture} | agree={agree_text}"
        )
    lines.append(f"rows: {len(rows)}")
    payload = {"degree": args.degree, "bound": args.bound, "rows": rows}
    _emit(payload, args.json, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpfib",
        description=(
            "exact-arithmetic workbench for del Pezzo fibrations of degree 1 "
            "and 2 over a rational curve"
        ),
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for randomized property tooling (reserved; reports are "
        "deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("model")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("table", help="intersection table for constants")
    p.add_argument("--degree", type=int, required=True, choices=(1, 2))
    p.add_argument("--constants", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("classify", help="rigidity classification")
    p.add_argument("--degree", type=int, required=True, choices=(1, 2))
    p.add_argument("--constants", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("linsys", help="linear systems |n(-K) - F|")
    p.add_argument("--degree", type=int, choices=(1, 2))
    p.add_argument("--constants")
    p.add_argument("--model")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_linsys)

    p = sub.add_parser("transform", help="fiber transformation analysis")
    p.add_argument("model_v")
    p.add_argument("model_u")
    p.add_argument("--forward", required=True, help="a,b,c,d")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("smooth", help="smoothness check or F_p search")
    p.add_argument("model")
    p.add_argument("--chart")
    p.add_argument("--coords", help="t,u1,u2,u3")
    p.add_argument("--fp", type=int, help="prime field search mode")
    p.add_argument("--t-range", dest="t_range")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("catalog", help="Mori structure catalog for constants")
    p.add_argument("--degree", type=int, required=True, choices=(1, 2))
    p.add_argument("--constants", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("sweep", help="classification/conjecture sweep")
    p.add_argument("--degree", type=int, required=True, choices=(1, 2))
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sweep)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (DpfibError, ValueError, OSError) as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": str(exc)}, sort_keys=True))
        else:
            print(f"error: {exc}")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
