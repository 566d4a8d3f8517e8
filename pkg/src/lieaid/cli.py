"""Command-line front end.

Subcommands take a catalog name or a structure-constant JSON file, run the
requested computation and print a text or JSON report.  Exit codes: 0 on
success, 1 on input errors, 2 when certification is inconclusive (the
answer is only bracketed).

JSON reports contain no wall-clock data, so identical (input, seed,
config) produce byte-identical output for any thread count; timings are
printed in text mode only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import aidcert, derivations, liealg, sha
from .aidcert import AidConfig
from .liealg import LieAlgebraError, StructureTable
from .scalars import ScalarError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONCLUSIVE = 2


def _load_input(text: str, skip_validate: bool) -> StructureTable:
    if os.path.exists(text):
        return liealg.load_file(text, skip_validate=skip_validate)
    try:
        return liealg.catalog(text)
    except LieAlgebraError:
        if any(ch in text for ch in "/\\.") :
            raise LieAlgebraError(f"no such file: {text}")
        raise


def _config(args) -> AidConfig:
    return AidConfig(
        seed=args.seed,
        probe_budget=args.probe_budget,
        patience=args.patience,
        minors_dim_limit=args.minors_limit,
        scan_budget=args.scan_budget,
        witness_height=args.witness_height,
        witness_budget=args.witness_budget,
        threads=args.threads,
    )


def _emit(report: dict, args, elapsed: float) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        return
    _emit_text(report, elapsed)


def _emit_text(report: dict, elapsed: float) -> None:
    out = sys.stdout
    out.write(f"algebra     : {report['algebra']}\n")
    field = report["field"]
    if field["kind"] == "finite":
        fdesc = f"GF({field['p']}^{field['k']})" if field.get("k", 1) > 1 else f"GF({field['p']})"
    else:
        fdesc = "Q" if field["kind"] == "rational" else "Q(i)"
    out.write(f"field       : {fdesc}\n")
    out.write(f"dim         : {report['dim']}\n")
    if "dims" in report:
        d = report["dims"]
        out.write(
            f"dim Der     : {d['der']}\n"
            f"dim Inn     : {d['inn']}\n"
            f"dim U       : {d['complement']}\n"
        )
        if report.get("exact"):
            out.write(f"dim AID     : {d['aid_lower']}\n")
        else:
            out.write(f"dim AID     : in [{d['aid_lower']}, {d['aid_upper']}] (inconclusive)\n")
    if "refinement" in report:
        r = report["refinement"]
        out.write(
            f"refinement  : dim V = {r['dim_v']} after {r['probes']} probes"
            f"{' (stabilized)' if r['stabilized'] else ''}\n"
        )
    for rnd in report.get("rounds", []):
        out.write(f"round       : method={rnd['method']} dim V={rnd['dim_v']}")
        if rnd.get("points_scanned"):
            out.write(f" points={rnd['points_scanned']}")
        out.write("\n")
        for c in rnd["candidates"]:
            line = f"  candidate {c['index']}: {c['verdict']}"
            if c.get("method"):
                line += f" [{c['method']}]"
            if c.get("containments"):
                rs = ",".join(
                    f"r={lv['r']}:{'ok' if lv['holds'] else 'FAIL'}"
                    for lv in c["containments"]
                )
                line += f" ({rs})"
            if c.get("witness"):
                line += f" witness z=({', '.join(c['witness'])})"
            if c.get("reason"):
                line += f" -- {c['reason']}"
            out.write(line + "\n")
            if c.get("obstruction_basis"):
                out.write("    obstruction basis:\n")
                for g in c["obstruction_basis"]:
                    out.write(f"      {g}\n")
    if "caid" in report:
        out.write(f"dim CAID    : {report['caid']['dim']}\n")
    if "sha" in report:
        s = report["sha"]
        out.write(
            f"dim Sha     : {s['dim']}\n"
            f"Sha abelian : {s['abelian']}\n"
        )
    if "out" in report:
        s = report["out"]
        out.write(
            f"dim Out     : {s['dim']}\n"
            f"Out abelian : {s['abelian']}\n"
        )
    if "center_dim" in report:
        out.write(f"dim center  : {report['center_dim']}\n")
    out.write(f"seed        : {report.get('seed', 0)}\n")
    if "config" in report:
        cfg = " ".join(f"{k}={v}" for k, v in sorted(report["config"].items()))
        out.write(f"config      : {cfg}\n")
    out.write(f"elapsed     : {elapsed:.2f}s\n")


def _basic_report(t: StructureTable) -> dict:
    return {
        "algebra": t.name,
        "field": t.spec.to_json(),
        "dim": t.dim,
    }


def _cmd_validate(t, args):
    report = _basic_report(t)
    report["valid"] = True
    _emit(report, args, 0.0)
    return EXIT_OK


def _cmd_der(t, args):
    t0 = time.time()
    report = _basic_report(t)
    der = derivations.compute_der(t).dim
    inn = derivations.compute_inn(t).dim
    report["dims"] = {"der": der, "inn": inn, "complement": der - inn}
    _emit(report, args, time.time() - t0)
    return EXIT_OK


def _cmd_center(t, args):
    t0 = time.time()
    report = _basic_report(t)
    report["center_dim"] = liealg.center(t).dim
    _emit(report, args, time.time() - t0)
    return EXIT_OK


def _aid_report(t, args):
    cfg = _config(args)
    result = aidcert.compute_aid(t, cfg)
    return result, result.report()


def _cmd_aid(t, args):
    t0 = time.time()
    result, report = _aid_report(t, args)
    _emit(report, args, time.time() - t0)
    return EXIT_OK if result.exact else EXIT_INCONCLUSIVE


def _cmd_caid(t, args):
    t0 = time.time()
    result, report = _aid_report(t, args)
    if result.exact:
        caid = aidcert.compute_caid(t, result.aid)
        report["caid"] = {"dim": caid.dim}
    _emit(report, args, time.time() - t0)
    return EXIT_OK if result.exact else EXIT_INCONCLUSIVE


def _quotient_json(q):
    return {
        "dim": q.dim,
        "abelian": sha.is_abelian(q),
        "complement_closed": q.complement_closed,
        "table": liealg.to_json(q.table),
    }


def _cmd_sha(t, args):
    t0 = time.time()
    result, report = _aid_report(t, args)
    if result.exact:
        quotient = sha.build_quotient(
            result.aid,
            result.spaces.inn,
            t,
            name=f"Sha({t.name})",
            coset_reps=aidcert.candidate_vectors(result),
        )
        report["sha"] = _quotient_json(quotient)
    _emit(report, args, time.time() - t0)
    return EXIT_OK if result.exact else EXIT_INCONCLUSIVE


def _cmd_out(t, args):
    t0 = time.time()
    spaces = derivations.compute_spaces(t)
    quotient = sha.build_quotient(spaces.der, spaces.inn, t, name=f"Out({t.name})")
    report = _basic_report(t)
    report["dims"] = {
        "der": spaces.der.dim,
        "inn": spaces.inn.dim,
        "complement": spaces.complement_u.dim,
    }
    report["out"] = _quotient_json(quotient)
    _emit(report, args, time.time() - t0)
    return EXIT_OK


def _cmd_certify(t, args):
    return _cmd_aid(t, args)


def _cmd_extend(t, args):
    new_spec = liealg.parse_field_name(args.to)
    ext = liealg.extend_scalars(t, new_spec)
    if args.output:
        liealg.save_file(ext, args.output)
        sys.stdout.write(f"wrote {args.output}\n")
    else:
        sys.stdout.write(json.dumps(liealg.to_json(ext), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_catalog(args):
    if args.action == "list":
        for name in liealg.catalog_names():
            sys.stdout.write(name + "\n")
        return EXIT_OK
    t = liealg.catalog(args.name)
    sys.stdout.write(json.dumps(liealg.to_json(t), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieaid",
        description="Derivations, almost-inner derivations and Sha(g) of "
        "structure-constant Lie algebras, in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, pipeline=True):
        p.add_argument("input", help="catalog name or structure-constant JSON file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--skip-validate", action="store_true")
        if pipeline:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--probe-budget", type=int, default=5000)
            p.add_argument("--patience", type=int, default=25)
            p.add_argument("--minors-limit", type=int, default=8)
            p.add_argument("--scan-budget", type=int, default=10**8)
            p.add_argument("--witness-height", type=int, default=3)
            p.add_argument("--witness-budget", type=int, default=2_000_000)
            p.add_argument("--threads", type=int, default=1)

    for name, fn, pipeline in (
        ("validate", _cmd_validate, False),
        ("der", _cmd_der, False),
        ("inn", _cmd_der, False),
        ("center", _cmd_center, False),
        ("aid", _cmd_aid, True),
        ("caid", _cmd_caid, True),
        ("sha", _cmd_sha, True),
        ("out", _cmd_out, False),
        ("certify", _cmd_certify, True),
    ):
        p = sub.add_parser(name)
        add_common(p, pipeline)
        p.set_defaults(func=fn)

    p = sub.add_parser("extend", help="materialize a scalar extension")
    add_common(p, pipeline=False)
    p.add_argument("--to", required=True, help="target field, e.g. gf(27) or qi")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("catalog")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; keep exit code 2 reserved for
        # inconclusive certification
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        if args.command == "catalog":
            if args.action == "show" and not args.name:
                sys.stderr.write("error: catalog show requires a name\n")
                return EXIT_INPUT
            return _cmd_catalog(args)
        t = _load_input(args.input, getattr(args, "skip_validate", False))
        return args.func(t, args)
    except (LieAlgebraError, ScalarError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
