"""Error groups as explicit finite groups of exact unitary matrices.

A UnitaryRep bundles a FiniteGroup (Cayley table) with one exact matrix per
element.  Closure from generators hash-conses matrices, so the group law is
exact by construction: the Cayley row of each element is obtained by
composing generator rows, which mirrors associativity of matrix products.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import cached_property

import numpy as np

from .cyclo import CycNum, ONE, ZERO, MINUS_ONE
from .matrices import CycMatrix
from .group import FiniteGroup, Subgroup, subgroup_generate
from .chartab import Character, inner_product, restricted_character
from .checks import CheckLine
from .errors import (ClosureCapError, DomainError, NonUnitaryError, UsageError)

DEFAULT_CLOSURE_CAP = 100_000

_I2 = CycMatrix.identity(2)
_X2 = CycMatrix.from_dense([[0, 1], [1, 0]])
_Z2 = CycMatrix.from_dense([[1, 0], [0, -1]])
_Y2 = CycMatrix.from_entries(2, {(0, 1): -CycNum.root_of_unity(4),
                                 (1, 0): CycNum.root_of_unity(4)})


class UnitaryRep:
    """A faithful matrix presentation of a finite group.

    Faithfulness is structural: elements *are* the distinct matrices found
    by closure.  Irreducibility and the error-group degree law are checked
    by :func:`verify_error_group`, not assumed.
    """

    def __init__(self, group: FiniteGroup, matrices: tuple[CycMatrix, ...],
                 conductor: int, tensor_factors: list[int] | None = None,
                 name: str = "group"):
        self.group = group
        self.matrices = matrices
        self.degree = matrices[0].n
        self.conductor = conductor
        self.tensor_factors = list(tensor_factors) if tensor_factors else None
        self.name = name
        self._embed_cache: dict[int, np.ndarray] = {}
        self._index_by_key = {m.key(): i for i, m in enumerate(matrices)}
        self._decomp_cache: dict = {}

    @property
    def order(self) -> int:
        return self.group.order

    def embed_matrix(self, g: int) -> np.ndarray:
        m = self._embed_cache.get(g)
        if m is None:
            m = self.matrices[g].embed()
            self._embed_cache[g] = m
        return m

    def index_of_matrix(self, m: CycMatrix) -> int | None:
        return self._index_by_key.get(m.key())

    @cached_property
    def phase_subgroup(self) -> Subgroup:
        """Elements represented by scalar matrices."""
        members = [g for g, m in enumerate(self.matrices)
                   if m.is_scalar() is not None]
        return Subgroup(self.group, members)

    @cached_property
    def character(self) -> Character:
        """The big character: traces over the whole group."""
        return restricted_character(self, self.group.full_subgroup())

    def restrict(self, N: Subgroup) -> "RestrictedRep":
        return rep_restrict(self, N)

    @cached_property
    def element_weights(self) -> tuple[int, ...] | None:
        """Per-element tensor weight; None without tensor metadata."""
        if not self.tensor_factors or len(self.tensor_factors) < 1:
            return None
        return tuple(_tensor_weight(m, self.tensor_factors)
                     for m in self.matrices)

    @cached_property
    def element_labels(self) -> list[str] | None:
        return self.group.labels

    def label(self, g: int) -> str:
        return self.group.label(g)

    def __repr__(self) -> str:
        return (f"UnitaryRep({self.name}: order={self.order}, "
                f"degree={self.degree}, conductor={self.conductor})")


class RestrictedRep:
    """A view of a UnitaryRep on a subgroup; same parent element indices."""

    def __init__(self, rep: UnitaryRep, N: Subgroup):
        if N.parent is not rep.group:
            raise DomainError("subgroup belongs to a different group")
        self.rep = rep
        self.N = N

    def matrix(self, parent_index: int) -> CycMatrix:
        if not self.N.contains(parent_index):
            raise DomainError("element outside the restricted subgroup")
        return self.rep.matrices[parent_index]

    @cached_property
    def character(self) -> Character:
        return restricted_character(self.rep, self.N)


def rep_restrict(rep: UnitaryRep, N: Subgroup) -> RestrictedRep:
    return RestrictedRep(rep, N)


# ---------------------------------------------------------------------------
# closure


def group_closure(generators: list[CycMatrix], cap: int = DEFAULT_CLOSURE_CAP,
                  tensor_factors: list[int] | None = None,
                  name: str = "group") -> UnitaryRep:
    """BFS closure of exactly-unitary generators into a UnitaryRep."""
    if not generators:
        raise UsageError("at least one generator required")
    n = generators[0].n
    for i, g in enumerate(generators):
        if g.n != n:
            raise NonUnitaryError("generators have mismatched sizes")
        if not g.is_unitary():
            raise NonUnitaryError(f"generator {i} is not exactly unitary")

    ident = CycMatrix.identity(n)
    elements: list[CycMatrix] = [ident]
    index: dict = {ident.key(): 0}
    parent: list[tuple[int, int]] = [(-1, -1)]  # (generator idx, source element)
    gen_rows: list[list[int]] = [[] for _ in generators]

    frontier = [0]
    while frontier:
        nxt = []
        for e in frontier:
            me = elements[e]
            for gi, g in enumerate(generators):
                prod = g @ me
                k = prod.key()
                j = index.get(k)
                if j is None:
                    j = len(elements)
                    if j >= cap:
                        raise ClosureCapError(
                            f"closure exceeded cap {cap} elements", partial_size=j)
                    index[k] = j
                    elements.append(prod)
                    parent.append((gi, e))
                    nxt.append(j)
                while len(gen_rows[gi]) <= e:
                    gen_rows[gi].append(-1)
                gen_rows[gi][e] = j
        frontier = nxt

    order = len(elements)
    # every element enters the frontier exactly once, so each generator row
    # is complete
    assert all(len(r) == order for r in gen_rows)
    gen_perm = [np.array(r, dtype=np.int32) for r in gen_rows]

    cayley = np.empty((order, order), dtype=np.int32)
    cayley[0] = np.arange(order)
    for e in range(1, order):
        gi, src = parent[e]
        cayley[e] = gen_perm[gi][cayley[src]]

    conductor = 1
    for g in generators:
        for _, _, v in g.entries():
            conductor = conductor * v.conductor // math.gcd(conductor, v.conductor)

    group = FiniteGroup(cayley)
    rep = UnitaryRep(group, tuple(elements), conductor,
                     tensor_factors=tensor_factors, name=name)
    if tensor_factors:
        labels = [element_label(rep, g) for g in range(order)]
        if all(l is not None for l in labels):
            group.labels = labels
    return rep


# ---------------------------------------------------------------------------
# built-in groups


def _tensor_at(local: CycMatrix, position: int, dims: list[int]) -> CycMatrix:
    m = CycMatrix.identity(1)
    for i, d in enumerate(dims):
        m = m.kron(local if i == position else CycMatrix.identity(d))
    return m


def _clock_shift(d: int) -> tuple[CycMatrix, CycMatrix]:
    shift = CycMatrix.from_entries(d, {((j + 1) % d, j): ONE for j in range(d)})
    clock = CycMatrix.from_entries(
        d, {(j, j): CycNum.root_of_unity(d, j) for j in range(d)})
    return shift, clock


def builtin_group(spec: str, cap: int = DEFAULT_CLOSURE_CAP) -> UnitaryRep:
    """pauli:n or weyl:d:n.

    pauli:n closes the four single-qubit error matrices (identity, bit
    flip, phase flip and their product with the i phase) on each tensor
    position; the result has order 4*4^n with center of order 4.
    weyl:d:n closes per-position clock and shift matrices at conductor d.
    """
    parts = spec.split(":")
    try:
        if parts[0] == "pauli" and len(parts) == 2:
            n = int(parts[1])
            if n < 1:
                raise ValueError
            dims = [2] * n
            gens = []
            for i in range(n):
                gens.append(_tensor_at(_X2, i, dims))
                gens.append(_tensor_at(_Z2, i, dims))
            gens.append(_tensor_at(_Y2, 0, dims))
            return group_closure(gens, cap=cap, tensor_factors=dims, name=spec)
        if parts[0] == "weyl" and len(parts) == 3:
            d, n = int(parts[1]), int(parts[2])
            if d < 2 or n < 1:
                raise ValueError
            dims = [d] * n
            shift, clock = _clock_shift(d)
            gens = []
            for i in range(n):
                gens.append(_tensor_at(shift, i, dims))
                gens.append(_tensor_at(clock, i, dims))
            return group_closure(gens, cap=cap, tensor_factors=dims, name=spec)
    except ValueError:
        pass
    raise UsageError(f"malformed group spec {spec!r}; "
                     f"expected pauli:n or weyl:d:n or file:PATH")


def load_group_file(path: str, cap: int | None = None) -> UnitaryRep:
    """Group definition document: conductor, degree, generator matrices as
    nested term lists [num, den, k]."""
    try:
        with open(path) as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read group file {path}: {e}") from e
    try:
        conductor = int(doc["conductor"])
        degree = int(doc["degree"])
        gens_raw = doc["generators"]
        name = str(doc.get("name", path))
        tensor_factors = doc.get("tensor_factors")
        file_cap = int(doc.get("cap", DEFAULT_CLOSURE_CAP))
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed group file {path}: {e}") from e
    gens = []
    for gm in gens_raw:
        if len(gm) != degree or any(len(r) != degree for r in gm):
            raise UsageError(f"group file {path}: generator is not {degree}x{degree}")
        entries = {}
        for i, row in enumerate(gm):
            for j, terms in enumerate(row):
                v = CycNum.from_term_list(conductor, terms)
                if not v.is_zero():
                    entries[(i, j)] = v
        gens.append(CycMatrix.from_entries(degree, entries))
    return group_closure(gens, cap=cap if cap is not None else file_cap,
                         tensor_factors=tensor_factors, name=name)


def rep_from_spec(spec: str, cap: int = DEFAULT_CLOSURE_CAP) -> UnitaryRep:
    if spec.startswith("file:"):
        return load_group_file(spec[5:], cap=cap)
    return builtin_group(spec, cap=cap)


# ---------------------------------------------------------------------------
# tensor structure: weights and labels


def _digits(x: int, dims: list[int]) -> list[int]:
    out = []
    for d in reversed(dims):
        out.append(x % d)
        x //= d
    return list(reversed(out))


def _tensor_weight(m: CycMatrix, dims: list[int]) -> int:
    """Number of tensor positions whose local factor is not a scalar.

    Position i is scalar iff every entry couples equal i-th digits and the
    diagonal blocks over that digit coincide; phases are ignored because a
    scalar local factor multiplies all blocks alike.
    """
    k = len(dims)
    strides = [1] * k
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    weight = 0
    for pos in range(k):
        s, d = strides[pos], dims[pos]
        blocks: dict[tuple[int, int], list] = {}
        scalar = True
        for i, j, v in m.entries():
            di = (i // s) % d
            dj = (j // s) % d
            if di != dj:
                scalar = False
                break
            ri = i - di * s
            rj = j - dj * s
            blocks.setdefault((ri, rj), []).append(v)
        if scalar:
            for vals in blocks.values():
                if len(vals) != d or any(v != vals[0] for v in vals[1:]):
                    scalar = False
                    break
        if not scalar:
            weight += 1
    return weight


def _monomial_form(m: CycMatrix) -> tuple[list[int], list[CycNum]] | None:
    """(sigma, vals) with M|x> = vals[x] |sigma(x)>, or None if not monomial."""
    n = m.n
    sigma = [-1] * n
    vals: list[CycNum] = [ZERO] * n
    count = 0
    for i, j, v in m.entries():
        if sigma[j] != -1:
            return None
        sigma[j] = i
        vals[j] = v
        count += 1
    if count != n:
        return None
    return sigma, vals


def tensor_components(rep: UnitaryRep, g: int) -> tuple[CycNum, list[tuple[int, int]]] | None:
    """(phase, [(a_i, b_i)]) with rho(g) = phase * tensor of X^a Z^b per
    position, for monomial tensor groups; None when no such form exists."""
    dims = rep.tensor_factors
    if not dims:
        return None
    mono = _monomial_form(rep.matrices[g])
    if mono is None:
        return None
    sigma, vals = mono
    k = len(dims)
    a = [(x + y) for x, y in zip(_digits(sigma[0], dims), [0] * k)]
    # verify sigma is digitwise addition by a
    n = rep.matrices[g].n
    for x in range(n):
        dx = _digits(x, dims)
        expect = 0
        for (xi, ai, d) in zip(dx, a, dims):
            expect = expect * d + (xi + ai) % d
        if sigma[x] != expect:
            return None
    phase = vals[0]
    b = []
    strides = [1] * k
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * dims[i + 1]
    for pos in range(k):
        d = dims[pos]
        e_j = strides[pos]  # basis state with digit 1 at pos
        ratio = vals[e_j] * phase.conj()  # phases are unit modulus
        bk = None
        for cand in range(d):
            if ratio == CycNum.root_of_unity(d, cand):
                bk = cand
                break
        if bk is None:
            return None
        b.append(bk)
    # confirm the full phase pattern val(x) = phase * prod zeta_d^{b_i x_i}
    for x in range(n):
        dx = _digits(x, dims)
        acc = phase
        for (xi, bi, d) in zip(dx, b, dims):
            if bi and xi:
                acc = acc * CycNum.root_of_unity(d, (bi * xi) % d)
        if vals[x] != acc:
            return None
    return phase, list(zip(a, b))


_PHASE_STR = {1: "", -1: "-"}


def _phase_token(phase: CycNum, conductor: int) -> str | None:
    if phase == ONE:
        return ""
    if phase == MINUS_ONE:
        return "-"
    if phase == CycNum.root_of_unity(4):
        return "i"
    if phase == -CycNum.root_of_unity(4):
        return "-i"
    for k in range(1, conductor):
        if phase == CycNum.root_of_unity(conductor, k):
            return f"w{k}" if k > 1 else "w"
    return None


def element_label(rep: UnitaryRep, g: int) -> str | None:
    """Readable tensor-word label, e.g. '-iXZ' (qubits) or 'w.XZ2' (qudits)."""
    comp = tensor_components(rep, g)
    if comp is None:
        return None
    phase, ab = comp
    dims = rep.tensor_factors
    qubits = all(d == 2 for d in dims)
    if qubits:
        word = ""
        for (a, b) in ab:
            if (a, b) == (0, 0):
                word += "I"
            elif (a, b) == (1, 0):
                word += "X"
            elif (a, b) == (0, 1):
                word += "Z"
            else:
                # X Z = -i Y, so displaying Y folds a -i into the phase
                word += "Y"
                phase = phase * CycNum.root_of_unity(4, 3)
        tok = _phase_token(phase, 4)
        if tok is None:
            return None
        return tok + word
    toks = []
    for (a, b), d in zip(ab, dims):
        if (a, b) == (0, 0):
            toks.append("I")
        else:
            t = ""
            if a:
                t += "X" if a == 1 else f"X{a}"
            if b:
                t += "Z" if b == 1 else f"Z{b}"
            toks.append(t)
    tok = _phase_token(phase, rep.conductor)
    if tok is None:
        return None
    word = ".".join(toks)
    return f"{tok}.{word}" if tok else word


def parse_element(rep: UnitaryRep, token: str) -> int:
    """Inverse of element_label for built-in tensor groups.

    Accepts pure phase tokens (-1, i, -i, w, w2, ...), qubit words with an
    optional phase prefix (XZZXI, -iY, ...), and dotted qudit words
    (w2.X.Z2).
    """
    token = token.strip()
    if not token:
        raise UsageError("empty element token")
    dims = rep.tensor_factors
    if dims is None:
        raise UsageError("symbolic element labels need a built-in tensor group")
    mat = _matrix_from_token(token, dims, rep.conductor)
    idx = rep.index_of_matrix(mat)
    if idx is None:
        raise UsageError(f"element {token!r} is not in group {rep.name}")
    return idx


def _phase_from_token(tok: str, conductor: int) -> CycNum:
    if tok in ("", "+"):
        return ONE
    if tok == "-" or tok == "-1":
        return MINUS_ONE
    if tok == "i":
        return CycNum.root_of_unity(4)
    if tok == "-i":
        return -CycNum.root_of_unity(4)
    if tok.startswith("w"):
        k = 1 if tok == "w" else int(tok[1:])
        return CycNum.root_of_unity(conductor, k)
    raise UsageError(f"unknown phase token {tok!r}")


_QUBIT_LOCAL = {"I": _I2, "X": _X2, "Z": _Z2, "Y": _Y2}


def _local_from_token(tok: str, d: int) -> CycMatrix:
    if d == 2 and tok in _QUBIT_LOCAL:
        return _QUBIT_LOCAL[tok]
    shift, clock = _clock_shift(d)
    m = CycMatrix.identity(d)
    i = 0
    while i < len(tok):
        ch = tok[i]
        i += 1
        num = ""
        while i < len(tok) and tok[i].isdigit():
            num += tok[i]
            i += 1
        e = int(num) if num else 1
        if ch == "I":
            base = CycMatrix.identity(d)
        elif ch == "X":
            base = shift
        elif ch == "Z":
            base = clock
        else:
            raise UsageError(f"unknown local symbol {ch!r} in {tok!r}")
        for _ in range(e):
            m = m @ base
    return m


def _matrix_from_token(token: str, dims: list[int], conductor: int) -> CycMatrix:
    phase = ONE
    body = token
    if "." in token:
        chunks = token.split(".")
        first = chunks[0]
        if first and first[0] in "-iw+" or first in ("-1",):
            phase = _phase_from_token(first, conductor)
            chunks = chunks[1:]
        if len(chunks) != len(dims):
            raise UsageError(
                f"{token!r}: expected {len(dims)} tensor positions, got {len(chunks)}")
        locals_ = [_local_from_token(c, d) for c, d in zip(chunks, dims)]
    else:
        # phase prefix then single-letter qubit word; or a pure phase token
        i = 0
        if body.startswith("-i") or body.startswith("-1"):
            phase, i = _phase_from_token(body[:2], conductor), 2
        elif body.startswith("-"):
            phase, i = MINUS_ONE, 1
        elif body.startswith("i"):
            phase, i = _phase_from_token("i", conductor), 1
        elif body.startswith("w"):
            j = 1
            while j < len(body) and body[j].isdigit():
                j += 1
            phase, i = _phase_from_token(body[:j], conductor), j
        word = body[i:]
        if not word:
            locals_ = [CycMatrix.identity(d) for d in dims]
        elif len(dims) == 1:
            locals_ = [_local_from_token(word, dims[0])]
        else:
            if not all(d == 2 for d in dims):
                raise UsageError(
                    f"{token!r}: multi-position qudit words need dots")
            if len(word) != len(dims):
                raise UsageError(
                    f"{token!r}: expected {len(dims)} letters, got {len(word)}")
            try:
                locals_ = [_QUBIT_LOCAL[ch] for ch in word]
            except KeyError as e:
                raise UsageError(f"unknown letter {e.args[0]!r} in {token!r}") from e
    m = CycMatrix.identity(1)
    for loc in locals_:
        m = m.kron(loc)
    return m.scaled(phase)


def subgroup_from_tokens(rep: UnitaryRep, tokens: list[str]) -> Subgroup:
    gens = [parse_element(rep, t) for t in tokens]
    return subgroup_generate(rep.group, gens)


# ---------------------------------------------------------------------------
# verification


class ErrorGroupReport:
    """Outcome of the abstract-error-group axioms on a concrete rep."""

    def __init__(self, rep: UnitaryRep):
        self.rep = rep
        self.lines: list[CheckLine] = []
        self.abelian_index = False
        self.degree = rep.degree
        self.center_index = 0

    @property
    def ok(self) -> bool:
        return all(l.passed for l in self.lines)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.lines.append(CheckLine(name, passed, detail))


def verify_error_group(rep: UnitaryRep, hom_check_limit: int = 256,
                       hom_samples: int = 10_000, seed: int = 0) -> ErrorGroupReport:
    report = ErrorGroupReport(rep)
    G = rep.group
    n = rep.degree

    distinct = len({m.key() for m in rep.matrices}) == G.order
    report.add("faithful", distinct,
               "" if distinct else "duplicate matrices for distinct elements")

    bad_unitary = next((g for g, m in enumerate(rep.matrices)
                        if not m.is_unitary()), None)
    report.add("unitary", bad_unitary is None,
               "" if bad_unitary is None else f"element {G.label(bad_unitary)}")

    if G.order <= hom_check_limit:
        witness = None
        for a in range(G.order):
            ma = rep.matrices[a]
            for b in range(G.order):
                if not (ma @ rep.matrices[b]) == rep.matrices[G.mul(a, b)]:
                    witness = (a, b)
                    break
            if witness:
                break
        report.add("homomorphism (full)", witness is None,
                   "" if witness is None else f"pair {witness}")
    else:
        rng = np.random.default_rng(seed)
        witness = None
        for _ in range(hom_samples):
            a, b = (int(x) for x in rng.integers(0, G.order, size=2))
            if not (rep.matrices[a] @ rep.matrices[b]) == rep.matrices[G.mul(a, b)]:
                witness = (a, b)
                break
        report.add(f"homomorphism (sampled {hom_samples})", witness is None,
                   "" if witness is None else f"pair {witness}")

    phi = rep.character
    ip = inner_product(phi, phi)
    report.add("irreducible <phi,phi>=1", ip == ONE, f"<phi,phi> = {ip}")

    center = G.center
    index = G.order // center.order
    report.add("degree law deg^2 = (E:Z(E))", n * n == index,
               f"deg^2 = {n * n}, index = {index}")

    commutator = G.commutator_subgroup
    abelian_index = all(center.contains(g) for g in commutator.members)
    report.abelian_index = abelian_index
    report.center_index = index
    report.add("abelian index group", True,
               f"{'yes' if abelian_index else 'no'} "
               f"(commutator order {commutator.order})")

    if abelian_index:
        witness = next((g for g in range(G.order)
                        if not center.contains(g)
                        and not phi.values[g].is_zero()), None)
        report.add("phi vanishes off the center", witness is None,
                   "" if witness is None else f"element {G.label(witness)}")
    return report
