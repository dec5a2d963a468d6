"""Command-line surface.

Commands: info, normal-subgroups, decompose, code, verify, search.
Reports render as an aligned table, JSON, or CSV; all output is
deterministic for a fixed seed.  Exit codes: 0 success / all checks pass,
1 usage error, 2 computation failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import cyclo
from .errors import CliffError, TheoremViolation, UsageError
from .group import DEFAULT_NORMAL_CAP, normal_subgroups
from .rep import (DEFAULT_CLOSURE_CAP, UnitaryRep, rep_from_spec,
                  subgroup_from_tokens, verify_error_group)
from .chartab import Character
from .clifford import (codes_for_subgroup, decompose_cached, detects,
                       detects_by_projector, correctable, distance,
                       make_clifford_code, stabilizer_reduction,
                       verify_dimension_identities, verify_lemma_suite)
from .checks import CheckReport
from .search import CSV_COLUMNS, best_codes_report, enumerate_codes

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_VERIFY = 3


@dataclass
class RunConfig:
    group_spec: str
    command: str
    format: str = "table"
    seed: int = 0
    tol: float = 1e-8
    closure_cap: int = DEFAULT_CLOSURE_CAP
    normal_cap: int = DEFAULT_NORMAL_CAP
    subgroup: list[str] | None = None
    component: int = 0
    sigma: str | None = None
    jobs: int = 1
    min_dim: int | None = None
    min_distance: int | None = None
    only_nonabelian_N: bool = False
    detection_table: bool = False
    show_projector: bool = False


def _env_int(name: str, default: int) -> int:
    v = os.environ.get(name)
    try:
        return int(v) if v else default
    except ValueError:
        return default


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cliffcode", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--group", required=True,
                        help="pauli:n | weyl:d:n | file:PATH")
        sp.add_argument("--format", choices=["table", "json", "csv"],
                        default="table")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for the eigenspace splitting vector")
        sp.add_argument("--tol", type=float, default=1e-8,
                        help="float tolerance for eigenvalue clustering only")
        sp.add_argument("--closure-cap", type=int,
                        default=_env_int("CLIFFCODE_CLOSURE_CAP", DEFAULT_CLOSURE_CAP))
        sp.add_argument("--normal-cap", type=int,
                        default=_env_int("CLIFFCODE_NORMAL_CAP", DEFAULT_NORMAL_CAP))
        sp.add_argument("--conductor-cap", type=int,
                        default=_env_int("CLIFFCODE_CONDUCTOR_CAP",
                                         cyclo.DEFAULT_CONDUCTOR_CAP))
        sp.add_argument("--jobs", type=int, default=1,
                        help="worker threads for sweeps (output is identical "
                             "for any value)")

    sp = sub.add_parser("info", help="group facts and error-group checks")
    common(sp)

    sp = sub.add_parser("normal-subgroups", help="enumerate normal subgroups")
    common(sp)

    sp = sub.add_parser("decompose", help="isotypic components for one subgroup")
    common(sp)
    sp.add_argument("--subgroup", required=True,
                    help="comma-separated generator labels, e.g. Z,-1")

    sp = sub.add_parser("code", help="build one code and report its parameters")
    common(sp)
    sp.add_argument("--subgroup", required=True)
    sp.add_argument("--component", type=int, default=0)
    sp.add_argument("--sigma", default=None,
                    help="error set: weight:k or comma-separated labels")
    sp.add_argument("--detection-table", action="store_true")
    sp.add_argument("--show-projector", action="store_true")

    sp = sub.add_parser("verify", help="run the full lemma/theorem sweep")
    common(sp)
    sp.add_argument("--subgroup", default=None,
                    help="restrict the sweep to one subgroup")

    sp = sub.add_parser("search", help="enumerate and rank all codes")
    common(sp)
    sp.add_argument("--min-dim", type=int, default=None)
    sp.add_argument("--min-distance", type=int, default=None)
    sp.add_argument("--only-nonabelian-N", action="store_true")
    sp.add_argument("--subgroup", default=None,
                    help="search only this subgroup instead of enumerating")
    return p


# ---------------------------------------------------------------------------
# rendering


def _render_table(columns: list[str], rows: list[list[str]]) -> str:
    widths = [len(c) for c in columns]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _render_csv(columns: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _emit(doc: dict, columns: list[str], rows: list[list[str]], fmt: str,
          out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        out.write(_render_csv(columns, rows))
    else:
        out.write(_render_table(columns, rows))


def _check_rows(report: CheckReport) -> list[list[str]]:
    return [[l.name, "ok" if l.passed else "FAIL", l.detail] for l in report.lines]


# ---------------------------------------------------------------------------
# commands


def _load_rep(args) -> UnitaryRep:
    cyclo.set_conductor_cap(args.conductor_cap)
    return rep_from_spec(args.group, cap=args.closure_cap)


def cmd_info(args, out) -> int:
    rep = _load_rep(args)
    report = verify_error_group(rep)
    g = rep.group
    doc = {
        "group": rep.name,
        "order": rep.order,
        "degree": rep.degree,
        "conductor": rep.conductor,
        "center_order": g.center.order,
        "commutator_order": g.commutator_subgroup.order,
        "conjugacy_classes": len(g.conjugacy_classes),
        "abelian_index": report.abelian_index,
        "checks": [l.as_dict() for l in report.lines],
        "ok": report.ok,
    }
    rows = [[k, str(doc[k])] for k in ("group", "order", "degree", "conductor",
                                       "center_order", "commutator_order",
                                       "conjugacy_classes", "abelian_index")]
    rows += [[l.name, ("ok" if l.passed else "FAIL")
              + (f" ({l.detail})" if l.detail else "")] for l in report.lines]
    _emit(doc, ["field", "value"], rows, args.format, out)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_normal_subgroups(args, out) -> int:
    rep = _load_rep(args)
    subs = normal_subgroups(rep.group, cap=args.normal_cap)
    entries = []
    for i, N in enumerate(subs):
        gens = [rep.label(g) for g in N.generators()] or ["I"]
        entries.append({"index": i, "order": N.order, "abelian": N.is_abelian,
                        "generators": gens})
    doc = {"group": rep.name, "count": len(subs), "subgroups": entries}
    rows = [[str(e["index"]), str(e["order"]), str(e["abelian"]),
             ",".join(e["generators"])] for e in entries]
    _emit(doc, ["index", "order", "abelian", "generators"], rows, args.format, out)
    return EXIT_OK


def _subgroup_from_arg(rep: UnitaryRep, arg: str):
    tokens = [t for t in arg.split(",") if t.strip()]
    if not tokens:
        raise UsageError("empty --subgroup")
    return subgroup_from_tokens(rep, tokens)


def cmd_decompose(args, out) -> int:
    rep = _load_rep(args)
    N = _subgroup_from_arg(rep, args.subgroup)
    comps = decompose_cached(rep, N, seed=args.seed, tol=args.tol)
    entries = []
    for i, c in enumerate(comps):
        entries.append({
            "index": i,
            "chi_degree": c.chi.degree_int(),
            "multiplicity": c.multiplicity,
            "dim": c.dim,
            "projector_trace": str(c.projector.trace()),
            "chi_values": {rep.label(g): str(v)
                           for g, v in zip(N.members, c.chi.values)},
        })
    doc = {"group": rep.name, "subgroup_order": N.order,
           "subgroup_generators": [rep.label(g) for g in N.generators()] or ["I"],
           "components": entries}
    rows = [[str(e["index"]), str(e["chi_degree"]), str(e["multiplicity"]),
             str(e["dim"]), e["projector_trace"]] for e in entries]
    _emit(doc, ["index", "chi(1)", "mult", "dim", "trace"], rows, args.format, out)
    return EXIT_OK


def _parse_sigma(rep: UnitaryRep, spec: str) -> list[int]:
    if spec.startswith("weight:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError as e:
            raise UsageError(f"bad sigma spec {spec!r}") from e
        weights = rep.element_weights
        if weights is None:
            raise UsageError("weight-based sigma needs tensor metadata")
        return [g for g in range(rep.order) if weights[g] <= k]
    from .rep import parse_element
    return [parse_element(rep, t) for t in spec.split(",") if t.strip()]


def cmd_code(args, out) -> int:
    rep = _load_rep(args)
    N = _subgroup_from_arg(rep, args.subgroup)
    code = make_clifford_code(rep, N, args.component, seed=args.seed, tol=args.tol)
    red = stabilizer_reduction(code)
    doc = {
        "group": rep.name,
        "N_order": N.order,
        "N_generators": [rep.label(g) for g in N.generators()] or ["I"],
        "component": args.component,
        "chi_degree": code.chi.degree_int(),
        "multiplicity": code.multiplicity,
        "dim": code.dim,
        "distance": distance(code),
        "inertia_order": code.T.order,
        "ztheta_order": code.Ztheta.order,
        "inertia_equals_centralizer": code.inertia.agree,
        "theta_irreducible": code.theta_irreducible,
        "stabilizer_equal": (red.form.is_equal_to_e_chi if red.applicable
                             else "inapplicable"),
    }
    if args.show_projector:
        doc["projector"] = {"conductor": rep.conductor,
                            "entries": [[i, j, v.to_terms()]
                                        for i, j, v in code.e_chi.entries()]}
    if args.sigma:
        sigma = _parse_sigma(rep, args.sigma)
        res = correctable(code, sigma)
        doc["sigma_size"] = len(sigma)
        doc["correctable"] = res.ok
        doc["witness"] = ([rep.label(res.witness[0]), rep.label(res.witness[1])]
                          if res.witness else None)
    if args.detection_table:
        table = []
        for w in range(rep.order):
            table.append({"element": rep.label(w), "detectable": detects(code, w),
                          "in_T": code.T.contains(w),
                          "in_Ztheta": code.Ztheta.contains(w)})
        doc["detection"] = table
    rows = [[k, str(v)] for k, v in doc.items()
            if k not in ("projector", "detection")]
    _emit(doc, ["field", "value"], rows, args.format, out)
    return EXIT_OK


def _verify_subgroup(rep: UnitaryRep, N, seed: int, tol: float,
                     detection_scan: bool) -> CheckReport:
    report = CheckReport()
    report.extend(verify_lemma_suite(rep, N, seed=seed, tol=tol))
    for code in codes_for_subgroup(rep, N, seed=seed, tol=tol):
        tag = f"N#{N.order}.{code.component_index}"
        e = code.e_chi
        report.add(f"{tag} projector laws",
                   (e @ e) == e and e.is_hermitian()
                   and e.trace() == code.multiplicity * code.chi.degree_int())
        report.add(f"{tag} inertia = centralizer of Z(N)", code.inertia.agree)
        report.add(f"{tag} theta irreducible", code.theta_irreducible)
        red = stabilizer_reduction(code)
        if red.applicable:
            report.add(f"{tag} stabilizer form equals e_chi",
                       red.form.is_equal_to_e_chi)
        dim_rep = verify_dimension_identities(code)
        report.add(f"{tag} dimension identities", dim_rep.ok)
        if detection_scan:
            ok = all(detects(code, w) == detects_by_projector(code, w)
                     for w in range(rep.order))
            report.add(f"{tag} detection routes agree on all elements", ok)
    return report


def cmd_verify(args, out) -> int:
    rep = _load_rep(args)
    overall = CheckReport(f"verify {rep.name}")
    eg = verify_error_group(rep)
    for l in eg.lines:
        overall.add(f"error group: {l.name}", l.passed, l.detail)
    if args.subgroup:
        sweep = [_subgroup_from_arg(rep, args.subgroup)]
    else:
        sweep = normal_subgroups(rep.group, cap=args.normal_cap)
    detection_scan = rep.order <= 256

    def one(N):
        return _verify_subgroup(rep, N, args.seed, args.tol, detection_scan)

    if args.jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(one, sweep))
    else:
        reports = [one(N) for N in sweep]

    sweep_rows = []
    for N, rp in zip(sweep, reports):
        overall.extend(rp)
        p, f = rp.counts
        gens = ",".join(rep.label(g) for g in N.generators()) or "I"
        sweep_rows.append([str(N.order), gens, f"{p}/{p + f}",
                           "ok" if rp.ok else "FAIL"])
    passed, failed = overall.counts
    doc = {
        "group": rep.name,
        "subgroups_swept": len(sweep),
        "checks_passed": passed,
        "checks_failed": failed,
        "ok": overall.ok,
        "lines": [l.as_dict() for l in overall.lines],
    }
    if args.format == "table":
        out.write(_render_table(["N_order", "N_gens", "checks", "status"],
                                sweep_rows))
        for l in overall.failures():
            out.write(f"FAIL {l.name} {l.detail}\n")
        out.write(f"{'all checks passed' if overall.ok else 'CHECKS FAILED'}: "
                  f"{passed} passed, {failed} failed, "
                  f"{len(sweep)}-line sweep\n")
    else:
        _emit(doc, [], [], "json", out)
    return EXIT_OK if overall.ok else EXIT_VERIFY


def cmd_search(args, out) -> int:
    rep = _load_rep(args)
    subgroups = None
    if args.subgroup:
        subgroups = [_subgroup_from_arg(rep, args.subgroup)]
    records = enumerate_codes(
        rep, min_dim=args.min_dim, min_distance=args.min_distance,
        only_nonabelian_N=args.only_nonabelian_N, subgroups=subgroups,
        seed=args.seed, tol=args.tol, normal_cap=args.normal_cap,
        jobs=args.jobs)
    doc = {"group": rep.name, "seed": args.seed, **best_codes_report(records)}
    rows = [r.csv_row() for r in records]
    _emit(doc, CSV_COLUMNS, rows, args.format, out)
    return EXIT_OK


COMMANDS = {
    "info": cmd_info,
    "normal-subgroups": cmd_normal_subgroups,
    "decompose": cmd_decompose,
    "code": cmd_code,
    "verify": cmd_verify,
    "search": cmd_search,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except CliffError as e:
        print(f"computation failed: {e}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
