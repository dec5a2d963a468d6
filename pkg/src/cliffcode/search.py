"""Exhaustive code search over a given error group.

Enumerates every (normal subgroup, component) pair, bundles the per-code
facts and theorem checks into flat records, collapses duplicate codes (same
projector reached from different subgroups), and reports Pareto-optimal
(dimension, distance) combinations.  All ordering is canonical so repeated
runs emit byte-identical reports.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .group import Subgroup, normal_subgroups, DEFAULT_NORMAL_CAP
from .rep import UnitaryRep
from .clifford import (CliffordCode, codes_for_subgroup, distance,
                       stabilizer_reduction, verify_dimension_identities,
                       verify_lemma_suite, detects, detects_by_projector)
from .checks import CheckReport

CSV_COLUMNS = ["group", "N_order", "N_gens", "chi_deg", "mult", "dim",
               "distance", "abelian_N", "stab_equal", "checks_passed"]


@dataclass
class CodeRecord:
    group_spec: str
    N_generators: tuple[str, ...]
    N_order: int
    chi_degree: int
    multiplicity: int
    dim: int
    distance: int | None
    abelian_N: bool
    stabilizer_equal: bool | str      # True/False or "inapplicable"
    theorem_checks: str               # "passed/total"
    checks_ok: bool
    provenance: tuple[str, ...] = field(default_factory=tuple)

    def distance_rank(self) -> int:
        return self.distance if self.distance is not None else -1

    def sort_key(self):
        return (-self.dim, -self.distance_rank(), self.N_order, self.N_generators)

    def as_dict(self) -> dict:
        return {
            "group": self.group_spec,
            "N_order": self.N_order,
            "N_gens": ",".join(self.N_generators),
            "chi_deg": self.chi_degree,
            "mult": self.multiplicity,
            "dim": self.dim,
            "distance": self.distance,
            "abelian_N": self.abelian_N,
            "stab_equal": self.stabilizer_equal,
            "checks_passed": self.theorem_checks,
            "provenance": list(self.provenance),
        }

    def csv_row(self) -> list[str]:
        d = self.as_dict()
        return [str(d[c] if d[c] is not None else "")
                for c in ["group", "N_order", "N_gens", "chi_deg", "mult", "dim",
                          "distance", "abelian_N", "stab_equal", "checks_passed"]]


def _theorem_checks_for(code: CliffordCode, lemma_report: CheckReport,
                        detection_scan: bool) -> tuple[CheckReport, bool | str]:
    rep = code.rep
    report = CheckReport("per-code checks")
    e = code.e_chi
    report.add("projector idempotent hermitian", (e @ e) == e and e.is_hermitian())
    report.add("trace = m*chi(1)",
               e.trace() == code.multiplicity * code.chi.degree_int())
    report.add("inertia = centralizer of Z(N)", code.inertia.agree)
    report.add("theta irreducible over T", code.theta_irreducible)
    red = stabilizer_reduction(code)
    if red.applicable:
        stab_equal: bool | str = red.form.is_equal_to_e_chi
        report.add("stabilizer projector equals e_chi", red.form.is_equal_to_e_chi)
    else:
        stab_equal = "inapplicable"
    dim_rep = verify_dimension_identities(code)
    report.add("dimension identities", dim_rep.ok)
    if detection_scan:
        ok = all(detects(code, w) == detects_by_projector(code, w)
                 for w in range(rep.order))
        report.add("detection predicate matches projector route", ok)
    report.add("lemma suite", lemma_report.ok)
    return report, stab_equal


def enumerate_codes(rep: UnitaryRep, min_dim: int | None = None,
                    min_distance: int | None = None,
                    only_nonabelian_N: bool = False,
                    subgroups: list[Subgroup] | None = None,
                    seed: int = 0, tol: float = 1e-8,
                    normal_cap: int = DEFAULT_NORMAL_CAP,
                    detection_scan: bool = False,
                    jobs: int = 1) -> list[CodeRecord]:
    """One record per (normal subgroup, component), deduplicated by exact
    projector, canonically ordered."""
    if subgroups is None:
        subgroups = normal_subgroups(rep.group, cap=normal_cap)

    def records_for(N: Subgroup) -> list[tuple]:
        out = []
        lemma_report = verify_lemma_suite(rep, N, seed=seed, tol=tol)
        gens = tuple(rep.label(g) for g in N.generators()) or ("I",)
        for code in codes_for_subgroup(rep, N, seed=seed, tol=tol):
            checks, stab_equal = _theorem_checks_for(code, lemma_report,
                                                     detection_scan)
            p, f = checks.counts
            rec = CodeRecord(
                group_spec=rep.name,
                N_generators=gens,
                N_order=N.order,
                chi_degree=code.chi.degree_int(),
                multiplicity=code.multiplicity,
                dim=code.dim,
                distance=distance(code),
                abelian_N=N.is_abelian,
                stabilizer_equal=stab_equal,
                theorem_checks=f"{p}/{p + f}",
                checks_ok=checks.ok,
            )
            out.append((code.e_chi.key(), rec))
        return out

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(records_for, subgroups))
    else:
        chunks = [records_for(N) for N in subgroups]

    by_projector: dict = {}
    for chunk in chunks:
        for key, rec in chunk:
            prev = by_projector.get(key)
            if prev is None:
                by_projector[key] = rec
            else:
                tag = f"N=<{','.join(rec.N_generators)}> chi(1)={rec.chi_degree}"
                merged = sorted(set(prev.provenance) | {tag})
                by_projector[key] = CodeRecord(**{
                    **prev.__dict__, "provenance": tuple(merged)})

    records = sorted(by_projector.values(), key=CodeRecord.sort_key)
    if min_dim is not None:
        records = [r for r in records if r.dim >= min_dim]
    if min_distance is not None:
        records = [r for r in records
                   if r.distance is not None and r.distance >= min_distance]
    if only_nonabelian_N:
        records = [r for r in records if not r.abelian_N]
    return records


def pareto_front(records: list[CodeRecord]) -> list[tuple[int, int | None]]:
    """The non-dominated (dim, distance) pairs, best dimension first."""
    pairs = {(r.dim, r.distance) for r in records}

    def rank(p):
        return (p[0], p[1] if p[1] is not None else -1)

    front = [p for p in pairs
             if not any(q != p and rank(q)[0] >= rank(p)[0]
                        and rank(q)[1] >= rank(p)[1] for q in pairs)]
    return sorted(front, key=lambda p: (-rank(p)[0], -rank(p)[1]))


def best_codes_report(records: list[CodeRecord]) -> dict:
    """Records grouped by (dim, distance), with the Pareto-optimal pairs."""
    if not records:
        return {"status": "empty", "records": [], "pareto": []}
    groups: dict[tuple, list[CodeRecord]] = {}
    for r in records:
        groups.setdefault((r.dim, r.distance), []).append(r)
    pareto = []
    for dim, dist in pareto_front(records):
        members = sorted(groups[(dim, dist)], key=CodeRecord.sort_key)
        pareto.append({"dim": dim, "distance": dist, "count": len(members),
                       "example_N": ",".join(members[0].N_generators)})
    return {
        "status": "ok",
        "records": [r.as_dict() for r in records],
        "pareto": pareto,
    }
