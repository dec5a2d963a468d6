"""Quantum codes carved out of an error group by a normal subgroup.

A code is a homogeneous component of the restriction of the defining
representation to a normal subgroup N.  Everything that decides code
quality (the inertia group T, the scalar-acting subgroup Z inside it,
detectability, distance, the reduction to a joint-eigenspace code when the
index group is abelian) is computed exactly and, where two independent
routes exist, both are exposed so tests can cross-check them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .cyclo import CycNum, ONE, ZERO
from .matrices import CycMatrix
from .group import FiniteGroup, Subgroup, Subgroup as _Sub, centralizer, subgroup_generate
from .chartab import (Character, IsotypicComponent, inner_product,
                      isotypic_decomposition, extract_linear_on_center,
                      char_predicates, projector_from_character,
                      restricted_character)
from .checks import CheckReport
from .errors import DomainError, TheoremViolation
from .rep import UnitaryRep


class InertiaResult(NamedTuple):
    from_character: Subgroup       # {g : chi(g x g^{-1}) = chi(x) for all x in N}
    from_centralizer: Subgroup     # C_E(Z(N))
    agree: bool


class CliffordCode:
    """Bundle of one code: the component data plus its inertia structure."""

    def __init__(self, rep: UnitaryRep, N: Subgroup, component: IsotypicComponent,
                 component_index: int, inertia: InertiaResult,
                 theta: Character, Ztheta: Subgroup, theta_irreducible: bool):
        self.rep = rep
        self.N = N
        self.component = component
        self.component_index = component_index
        self.chi = component.chi
        self.multiplicity = component.multiplicity
        self.e_chi = component.projector
        self.dim = component.dim
        self.inertia = inertia
        self.T = inertia.from_character
        self.theta = theta
        self.Ztheta = Ztheta
        self.theta_irreducible = theta_irreducible

    @property
    def undetectable(self) -> tuple[int, ...]:
        """Elements of T - Ztheta (errors the code cannot detect)."""
        zmask = self.Ztheta.mask
        return tuple(g for g in self.T.members if not zmask[g])

    def __repr__(self) -> str:
        return (f"CliffordCode(N order {self.N.order}, dim {self.dim}, "
                f"|T| {self.T.order}, |Z(theta)| {self.Ztheta.order})")


def make_clifford_code(rep: UnitaryRep, N: Subgroup, which: int | Character = 0,
                       seed: int = 0, tol: float = 1e-8) -> CliffordCode:
    """Build the code for one homogeneous component of the restriction to N.

    `which` selects a component by canonical index or by its character.
    The projector is recomputed from the character sum formula and must
    agree with the decomposition's projector exactly.
    """
    comps = decompose_cached(rep, N, seed=seed, tol=tol)
    if isinstance(which, Character):
        idx = next((i for i, c in enumerate(comps) if c.chi == which), None)
        if idx is None:
            raise DomainError("no component affords the given character")
    else:
        idx = int(which)
        if not (0 <= idx < len(comps)):
            raise DomainError(
                f"component index {idx} out of range (found {len(comps)})")
    comp = comps[idx]
    e_chi = projector_from_character(rep, comp.chi)
    if not e_chi == comp.projector:
        raise TheoremViolation(
            "character-sum projector differs from the decomposition projector")
    inertia = inertia_group(rep, N, comp.chi)
    theta, ztheta, theta_irr = _theta_and_zw(rep, inertia.from_character, e_chi,
                                             comp.dim)
    code = CliffordCode(rep, N, comp, idx, inertia, theta, ztheta, theta_irr)
    _check_structural_invariants(code)
    return code


def decompose_cached(rep: UnitaryRep, N: Subgroup, seed: int = 0,
                     tol: float = 1e-8) -> list[IsotypicComponent]:
    key = (N.members, seed, tol)
    comps = rep._decomp_cache.get(key)
    if comps is None:
        comps = isotypic_decomposition(rep, N, seed=seed, tol=tol)
        rep._decomp_cache[key] = comps
    return comps


def codes_for_subgroup(rep: UnitaryRep, N: Subgroup, seed: int = 0,
                       tol: float = 1e-8) -> list[CliffordCode]:
    comps = decompose_cached(rep, N, seed=seed, tol=tol)
    return [make_clifford_code(rep, N, i, seed=seed, tol=tol)
            for i in range(len(comps))]


def _check_structural_invariants(code: CliffordCode) -> None:
    if not all(code.T.contains(g) for g in code.N.members):
        raise TheoremViolation("N is not contained in its inertia group")
    zn = code.N.center_of()
    ze = code.rep.group.center
    prod = ze.product_set(zn)
    if not all(code.Ztheta.contains(g) for g in prod.members):
        raise TheoremViolation("Z(E)*Z(N) is not inside Z(theta)")


def inertia_group(rep: UnitaryRep, N: Subgroup, chi: Character) -> InertiaResult:
    """The stabilizer of chi under conjugation, computed two ways.

    The definitional set is compared against the centralizer C_E(Z(N));
    the two agree whenever the index group is abelian and the big character
    is faithful on the center, and the disagreement is surfaced otherwise.
    """
    G = rep.group
    if chi.domain != N:
        raise DomainError("character domain is not N")
    phi_res = restricted_character(rep, N)
    if inner_product(phi_res, chi).is_zero():
        raise DomainError("chi is not a constituent of the restriction")

    support = [x for i, x in enumerate(N.members) if not chi.values[i].is_zero()]
    members = []
    for g in range(G.order):
        ok = True
        for x in N.members:
            if chi.value(G.conj(g, x)) != chi.value(x):
                ok = False
                break
        if ok:
            members.append(g)
    t_def = Subgroup(G, members)
    t_cent = centralizer(G, N.center_of())
    agree = t_def.members == t_cent.members

    commutator = G.commutator_subgroup
    center = G.center
    abelian_index = all(center.contains(g) for g in commutator.members)
    if abelian_index and not agree:
        raise TheoremViolation(
            f"inertia group ({t_def.order}) != centralizer of Z(N) "
            f"({t_cent.order}) despite abelian index group")
    return InertiaResult(t_def, t_cent, agree)


def _theta_and_zw(rep: UnitaryRep, T: Subgroup, e_chi: CycMatrix, dim: int
                  ) -> tuple[Character, Subgroup, bool]:
    G = rep.group
    theta_vals = tuple(e_chi.trace_product(rep.matrices[t]) for t in T.members)
    theta = Character(T, theta_vals)
    deg_sq = CycNum.from_rational(dim * dim)
    members = [t for t, v in zip(T.members, theta_vals)
               if v * v.conj() == deg_sq]
    ztheta = Subgroup(G, members)
    theta_irr = inner_product(theta, theta) == ONE
    return theta, ztheta, theta_irr


def theta_and_zw(code: CliffordCode) -> tuple[Character, Subgroup]:
    """The character of the code space as a T-module and its scalar-acting
    subgroup (recomputed; matches the values stored on the code)."""
    theta, ztheta, _ = _theta_and_zw(code.rep, code.T, code.e_chi, code.dim)
    return theta, ztheta


# ---------------------------------------------------------------------------
# detection / correction


def detects(code: CliffordCode, w: int) -> bool:
    """Group-theoretic detection predicate: w outside T - Z(theta)."""
    if not (0 <= w < code.rep.order):
        raise DomainError(f"element index {w} out of range")
    return (not code.T.contains(w)) or code.Ztheta.contains(w)


def detects_by_projector(code: CliffordCode, w: int) -> bool:
    """Matrix route: e_chi rho(w) e_chi is a scalar multiple of e_chi,
    decided exactly (the zero matrix counts, with scalar 0)."""
    e = code.e_chi
    m = (e @ code.rep.matrices[w]) @ e
    return m.scalar_multiple_of(e)


class CorrectableResult(NamedTuple):
    ok: bool
    witness: tuple[int, int] | None

    def __bool__(self) -> bool:
        return self.ok


def correctable(code: CliffordCode, sigma: Iterable[int]) -> CorrectableResult:
    """True iff every quotient e1^{-1} e2 of errors in sigma is detectable."""
    elems = sorted(set(int(x) for x in sigma))
    inv = code.rep.group.inv
    cay = code.rep.group.cayley
    tmask = code.T.mask
    zmask = code.Ztheta.mask
    for e1 in elems:
        row = cay[inv[e1]]
        for e2 in elems:
            q = int(row[e2])
            if tmask[q] and not zmask[q]:
                return CorrectableResult(False, (e1, e2))
    return CorrectableResult(True, None)


# ---------------------------------------------------------------------------
# stabilizer (joint eigenspace) form


def stabilizer_code(rep: UnitaryRep, A: Subgroup, lam: Character) -> CycMatrix:
    """Projector onto the joint eigenspace {v : rho(a) v = lam(a) v}.

    A must be abelian; the zero projector is a legitimate result (empty
    eigenvalue pattern).
    """
    if not A.is_abelian:
        raise DomainError("joint eigenspaces need an abelian subgroup")
    if lam.domain != A:
        raise DomainError("eigenvalue character must live on A")
    if lam.degree != ONE:
        raise DomainError("eigenvalue character must be linear")
    G = rep.group
    acc = CycMatrix.zeros(rep.degree)
    scale = Fraction(1, A.order)
    for a in A.members:
        c = lam.value(int(G.inv[a]))
        acc = acc + rep.matrices[a].scaled(c.scaled(scale))
    return acc


class StabilizerForm(NamedTuple):
    Zn: Subgroup
    phi: Character             # linear on Z(N)
    e_phi: CycMatrix
    is_equal_to_e_chi: bool


class ReductionResult(NamedTuple):
    status: str                # "ok" or "inapplicable"
    form: StabilizerForm | None

    @property
    def applicable(self) -> bool:
        return self.status == "ok"


def _has_abelian_index(rep: UnitaryRep) -> bool:
    center = rep.group.center
    return all(center.contains(g) for g in rep.group.commutator_subgroup.members)


def _phi_faithful_on_center(rep: UnitaryRep) -> bool:
    phi = rep.character
    deg = phi.values[0]
    return all(phi.values[z] != deg for z in rep.group.center.members if z != 0)


def stabilizer_reduction(code: CliffordCode) -> ReductionResult:
    """Rewrite the code over the center of N.

    When the index group is abelian, Z(N) is normal in the whole group, the
    restriction of chi to Z(N) is chi(1) times a linear character, and the
    joint-eigenspace projector of that character equals e_chi entrywise --
    certifying that the code is a stabilizer code.  For nonabelian index
    groups the reduction does not apply and "inapplicable" is returned.
    """
    rep = code.rep
    if not _has_abelian_index(rep):
        return ReductionResult("inapplicable", None)
    if not _phi_faithful_on_center(rep):
        return ReductionResult("inapplicable", None)
    zn = code.N.center_of()
    if not zn.is_normal():
        raise TheoremViolation("Z(N) failed to be normal despite abelian index")
    phi_lin = extract_linear_on_center(code.chi, zn)
    e_phi = stabilizer_code(rep, zn, phi_lin)
    equal = e_phi == code.e_chi
    if not equal:
        raise TheoremViolation(
            f"stabilizer projector over Z(N) (order {zn.order}) differs from "
            f"e_chi for N of order {code.N.order}, chi(1)={code.chi.degree}, "
            f"m={code.multiplicity}")
    return ReductionResult("ok", StabilizerForm(zn, phi_lin, e_phi, equal))


def verify_dimension_identities(code: CliffordCode) -> CheckReport:
    """Trace identities tying the code dimension to group data.

    dim = m*chi(1) = |Y| phi(1) chi(1)^2 / |N| with Y the central elements
    inside N, and tr(e_phi e_chi) = tr(e_chi); both need the abelian-index
    vanishing of the big character off the center.
    """
    report = CheckReport("dimension identities")
    rep = code.rep
    if not _has_abelian_index(rep):
        report.add("dimension identities", True, "inapplicable: nonabelian index group")
        return report
    n_ord = code.N.order
    y = rep.group.center.intersection(code.N)
    chi1 = code.chi.degree_int()
    formula = Fraction(y.order * rep.degree * chi1 * chi1, n_ord)
    tr = code.e_chi.trace()
    dim = code.multiplicity * chi1
    report.add("trace(e_chi) = m*chi(1)",
               tr == CycNum.from_rational(dim), f"trace {tr}, m*chi(1) {dim}")
    report.add("m*chi(1) = |Y| phi(1) chi(1)^2 / |N|",
               Fraction(dim) == formula,
               f"{dim} vs {y.order}*{rep.degree}*{chi1}^2/{n_ord} = {formula}")
    red = stabilizer_reduction(code)
    if red.applicable:
        tr_mix = red.form.e_phi.trace_product(code.e_chi)
        report.add("trace(e_phi e_chi) = trace(e_chi)", tr_mix == tr,
                   f"{tr_mix} vs {tr}")
    return report


# ---------------------------------------------------------------------------
# lemma suite


def _scalar_of_central(rep: UnitaryRep, z: int) -> CycNum:
    s = rep.matrices[z].is_scalar()
    if s is None:
        raise DomainError(f"element {rep.label(z)} is not represented by a scalar")
    return s


def verify_lemma_suite(rep: UnitaryRep, N: Subgroup, seed: int = 0,
                       tol: float = 1e-8) -> CheckReport:
    """Character-value facts for every constituent of the restriction to N.

    For each constituent chi: faithfulness on Y = Z(E) meet N (given the
    big character is faithful on Z(E)); the twist chi(z n) = omega chi(n)
    with omega the scalar of z, omega != 1, for central z != 1; and, for
    abelian index groups, support(chi) = Z(N).
    """
    report = CheckReport(f"lemma suite N order {N.order}")
    G = rep.group
    y = G.center.intersection(N)
    phi_faithful = _phi_faithful_on_center(rep)
    abelian_index = _has_abelian_index(rep)
    zn = N.center_of()
    comps = decompose_cached(rep, N, seed=seed, tol=tol)
    for ci, comp in enumerate(comps):
        chi = comp.chi
        tag = f"N#{N.order}.{ci}"
        support, kernel, _ = char_predicates(chi, y)
        if phi_faithful:
            faithful = all(g == 0 or g not in kernel for g in y.members)
            report.add(f"{tag} chi faithful on Z(E) meet N", faithful,
                       f"|Y| = {y.order}")
        twist_ok = True
        witness = ""
        for z in y.members:
            if z == 0:
                continue
            omega = _scalar_of_central(rep, z)
            if omega == ONE:
                twist_ok, witness = False, f"scalar of {G.label(z)} is 1"
                break
            for x in N.members:
                if chi.value(G.mul(z, x)) != omega * chi.value(x):
                    twist_ok = False
                    witness = f"z = {G.label(z)}, n = {G.label(x)}"
                    break
            if not twist_ok:
                break
        report.add(f"{tag} chi(z n) = omega chi(n), omega != 1", twist_ok, witness)
        if abelian_index:
            eq = support == set(zn.members)
            report.add(f"{tag} support(chi) = Z(N)", eq,
                       f"|support| = {len(support)}, |Z(N)| = {zn.order}")
    return report


# ---------------------------------------------------------------------------
# distance


def distance(code: CliffordCode) -> int | None:
    """Minimum tensor weight of an undetectable error.

    When every group error is detectable (for instance any one-dimensional
    code: its T-character is linear, so Z(theta) = T), the convention for
    zero-logical-qubit codes applies instead: the minimum weight of a
    non-phase element acting as a scalar on the code space.  None means the
    rep carries no tensor metadata, or no element qualifies under either
    rule.
    """
    weights = code.rep.element_weights
    if weights is None:
        return None
    bad = code.undetectable
    if bad:
        return min(weights[g] for g in bad)
    candidates = [weights[g] for g in code.Ztheta.members if weights[g] > 0]
    if candidates:
        return min(candidates)
    return None
