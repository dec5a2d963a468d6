"""Class functions and the exact isotypic decomposition.

Splitting a restricted representation into homogeneous components uses
floating point only to locate the eigenspace clusters of a random central
element; every emitted object (characters, multiplicities, projectors) is
snapped to exact cyclotomic values and then certified by exact identities.
A failed certificate triggers a retry with a fresh seed, so the output
never depends on the splitting tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
import math

import numpy as np

from .cyclo import CycNum, ONE, ZERO
from .matrices import CycMatrix
from .group import FiniteGroup, Subgroup
from .errors import DomainError, SnapFailure


class Character:
    """A class function on a subgroup, with exact values.

    Values are aligned with ``domain.members``; the domain may be the whole
    group (as a full Subgroup).
    """

    def __init__(self, domain: Subgroup, values: tuple[CycNum, ...]):
        if len(values) != domain.order:
            raise DomainError("one value per subgroup element required")
        self.domain = domain
        self.values = tuple(values)

    def value(self, parent_index: int) -> CycNum:
        return self.values[self.domain.index_of[parent_index]]

    @property
    def degree(self) -> CycNum:
        return self.values[0]

    def degree_int(self) -> int:
        d = self.degree.as_rational()
        if d.denominator != 1:
            raise DomainError(f"character degree {d} is not an integer")
        return int(d)

    def is_class_function(self) -> bool:
        sub, parents = self.domain.to_group()
        for ci in sub.conjugacy_classes:
            ref = self.values[ci[0]]
            if any(self.values[i] != ref for i in ci[1:]):
                return False
        return True

    def __eq__(self, other) -> bool:
        return (isinstance(other, Character) and self.domain == other.domain
                and self.values == other.values)

    def __hash__(self) -> int:
        return hash((self.domain.members, self.values))

    def sort_key(self):
        return tuple(v.sort_key() for v in self.values)

    def __repr__(self) -> str:
        return f"Character(deg={self.degree}, |domain|={self.domain.order})"


def inner_product(a: Character, b: Character) -> CycNum:
    """<a,b> = (1/|N|) sum a(n) b(n^{-1}), exact."""
    if a.domain != b.domain:
        raise DomainError("characters live on different domains")
    N = a.domain
    inv = N.parent.inv
    total = ZERO
    for i, g in enumerate(N.members):
        total = total + a.values[i] * b.value(int(inv[g]))
    return total.scaled(Fraction(1, N.order))


def conjugate_character(chi: Character, g: int) -> Character:
    """chi^g(x) = chi(g x g^{-1}); requires the domain to be g-invariant."""
    N = chi.domain
    G = N.parent
    vals = []
    for x in N.members:
        y = G.conj(g, x)
        if not N.contains(y):
            raise DomainError("domain is not normalized by the conjugating element")
        vals.append(chi.value(y))
    return Character(N, tuple(vals))


def char_predicates(chi: Character, H: Subgroup) -> tuple[set[int], set[int], bool]:
    """(support, kernel, faithful_on_H); sets hold parent element indices."""
    support = {g for i, g in enumerate(chi.domain.members)
               if not chi.values[i].is_zero()}
    deg = chi.degree
    kernel = {g for i, g in enumerate(chi.domain.members) if chi.values[i] == deg}
    faithful = all(not (h in kernel) for h in H.members if h != 0)
    return support, kernel, faithful


def extract_linear_on_center(chi: Character, Z: Subgroup) -> Character:
    """The linear character lam on Z with chi(z) = chi(1) * lam(z).

    Exists whenever chi is irreducible and Z acts by scalars on the module
    affording chi; verified here by exact division and a unit-modulus check.
    """
    deg = chi.degree_int()
    vals = []
    for z in Z.members:
        lam = chi.value(z).scaled(Fraction(1, deg))
        if not (lam * lam.conj()) == ONE:
            raise DomainError(
                f"chi({z})/chi(1) = {lam} is not a root of unity; "
                f"the element does not act as a scalar")
        vals.append(lam)
    out = Character(Z, tuple(vals))
    # linearity cross-check (cheap; guaranteed by Schur on valid inputs)
    G = Z.parent
    for a in Z.members:
        for b in Z.members:
            if not out.value(G.mul(a, b)) == out.value(a) * out.value(b):
                raise DomainError("extracted values are not multiplicative")
    return out


class IsotypicComponent:
    """One homogeneous component of a restriction: its irreducible
    character, multiplicity, and exact orthogonal projector."""

    def __init__(self, chi: Character, multiplicity: int, projector: CycMatrix):
        self.chi = chi
        self.multiplicity = multiplicity
        self.projector = projector

    @property
    def dim(self) -> int:
        return self.multiplicity * self.chi.degree_int()

    def __repr__(self) -> str:
        return (f"IsotypicComponent(chi(1)={self.chi.degree}, "
                f"m={self.multiplicity}, dim={self.dim})")


def restricted_character(rep, N: Subgroup) -> Character:
    """The big character restricted to N (traces of the representing
    matrices)."""
    return Character(N, tuple(rep.matrices[g].trace() for g in N.members))


def _snap_nonneg_int(x: complex, tol: float, what: str) -> int:
    r = round(x.real)
    if abs(x.real - r) > tol or abs(x.imag) > tol or r < 0:
        raise SnapFailure(f"{what} = {x} does not snap to a nonnegative integer")
    return int(r)


def _exact_psi(rep, N: Subgroup, p_num: np.ndarray, snap_tol: float
               ) -> tuple[CycNum, ...]:
    """Exact trace function of the candidate component.

    For each class representative x of order d, the restriction of the
    element to the component has eigenvalues among the d-th roots of unity;
    their multiplicities are recovered as an inverse DFT of the numeric
    traces along <x> and snapped to nonnegative integers.
    """
    G = N.parent
    tau: dict[int, complex] = {}

    def trace_with(g: int) -> complex:
        t = tau.get(g)
        if t is None:
            t = complex(np.trace(p_num @ rep.embed_matrix(g)))
            tau[g] = t
        return t

    sub, parents = N.to_group()
    exact_by_class: list[CycNum] = []
    for cls in sub.conjugacy_classes:
        x = parents[cls[0]]
        powers = [0]  # powers[t] = x^t
        y = x
        while y != 0:
            powers.append(y)
            y = G.mul(y, x)
        d = len(powers)
        traces = np.array([trace_with(g) for g in powers])
        ks = np.arange(d)
        mu = (np.exp(-2j * np.pi * np.outer(ks, ks) / d) @ traces) / d
        mults = [_snap_nonneg_int(m, snap_tol, "eigenvalue multiplicity") for m in mu]
        val = ZERO
        for k, mk in enumerate(mults):
            if mk:
                val = val + CycNum.root_of_unity(d, k).scaled(mk)
        exact_by_class.append(val)
    # spread class values over all members of N
    vals: list[CycNum] = [ZERO] * N.order
    for ci, cls in enumerate(sub.conjugacy_classes):
        for i in cls:
            vals[i] = exact_by_class[ci]
    return tuple(vals)


def _class_sums_numeric(rep, N: Subgroup) -> list[np.ndarray]:
    sub, parents = N.to_group()
    sums = []
    for cls in sub.conjugacy_classes:
        s = np.zeros((rep.degree, rep.degree), dtype=np.complex128)
        for i in cls:
            s += rep.embed_matrix(parents[i])
        sums.append(s)
    return sums


def projector_from_character(rep, chi: Character) -> CycMatrix:
    """e_chi = (chi(1)/|N|) sum_n chi(n^{-1}) rho(n), exact."""
    N = chi.domain
    G = N.parent
    scale = Fraction(chi.degree_int(), N.order)
    acc = CycMatrix.zeros(rep.degree)
    for g in N.members:
        c = chi.value(int(G.inv[g]))
        if c.is_zero():
            continue
        acc = acc + rep.matrices[g].scaled(c.scaled(scale))
    return acc


def isotypic_decomposition(rep, N: Subgroup, seed: int = 0, tol: float = 1e-8,
                           retries: int = 5) -> list[IsotypicComponent]:
    """Homogeneous components of the restriction of rep to a normal
    subgroup N, with exact projectors summing to the identity.

    Components are returned in a canonical order independent of the seed.
    """
    if N.parent is not rep.group:
        raise DomainError("N is not a subgroup of the represented group")
    if not N.is_normal():
        raise DomainError("N is not normal in the represented group")
    last_err: Exception | None = None
    for attempt in range(retries):
        try:
            comps = _decompose_once(rep, N, seed + attempt, tol)
        except SnapFailure as e:
            last_err = e
            continue
        return comps
    raise SnapFailure(
        f"isotypic decomposition of |N|={N.order} failed after {retries} seeds: "
        f"{last_err}")


def _decompose_once(rep, N: Subgroup, seed: int, tol: float
                    ) -> list[IsotypicComponent]:
    n = rep.degree
    sums = _class_sums_numeric(rep, N)
    rng = np.random.default_rng(seed)
    m_num = np.zeros((n, n), dtype=np.complex128)
    for s in sums:
        a, b = rng.uniform(-1.0, 1.0, size=2)
        m_num += a * (s + s.conj().T) / 2
        m_num += b * (s - s.conj().T) / 2j
    m_num = (m_num + m_num.conj().T) / 2
    evals, evecs = np.linalg.eigh(m_num)
    order = np.argsort(evals)
    evals, evecs = evals[order], evecs[:, order]
    clusters: list[list[int]] = [[0]]
    for i in range(1, n):
        if evals[i] - evals[i - 1] > max(tol, tol * abs(evals[i])):
            clusters.append([])
        clusters[-1].append(i)

    snap_tol = 1e-6
    components = []
    for cl in clusters:
        v = evecs[:, cl]
        p_num = v @ v.conj().T
        psi = _exact_psi(rep, N, p_num, snap_tol)
        psi_char = Character(N, psi)
        norm = inner_product(psi_char, psi_char)
        if not norm.is_rational():
            raise SnapFailure(f"<psi,psi> = {norm} not rational")
        nq = norm.as_rational()
        if nq.denominator != 1:
            raise SnapFailure(f"<psi,psi> = {nq} not integral")
        m = math.isqrt(int(nq))
        if m * m != int(nq) or m == 0:
            raise SnapFailure(f"<psi,psi> = {nq} is not a positive square")
        chi = Character(N, tuple(v.scaled(Fraction(1, m)) for v in psi))
        if inner_product(chi, chi) != ONE:
            raise SnapFailure("snapped character is not irreducible")
        if chi.degree_int() <= 0:
            raise SnapFailure("snapped character has nonpositive degree")
        proj = projector_from_character(rep, chi)
        if not (proj @ proj) == proj:
            raise SnapFailure("snapped projector is not idempotent")
        if not proj.is_hermitian():
            raise SnapFailure("snapped projector is not hermitian")
        tr = proj.trace()
        if not tr == CycNum.from_rational(m * chi.degree_int()):
            raise SnapFailure("projector trace != m * chi(1)")
        diff = np.abs(proj.embed() - p_num).max()
        if diff > 1e-5:
            raise SnapFailure(f"exact projector drifted from the float split ({diff})")
        components.append(IsotypicComponent(chi, m, proj))

    # cross-component certificates
    total = reduce(lambda a, b: a + b, (c.projector for c in components),
                   CycMatrix.zeros(n))
    if not total.is_identity():
        raise SnapFailure("projectors do not resolve the identity")
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            if not (components[i].projector @ components[j].projector).is_zero():
                raise SnapFailure("projectors are not pairwise orthogonal")
    if sum(c.dim for c in components) != n:
        raise SnapFailure("component dimensions do not sum to the degree")

    components.sort(key=lambda c: (c.chi.degree_int(), c.multiplicity,
                                   c.chi.sort_key()))
    return components
