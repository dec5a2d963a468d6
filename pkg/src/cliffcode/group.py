"""Finite groups as dense Cayley tables, with the derived structure the
code constructions need: center, centralizers, commutator subgroup,
conjugacy classes, normal-subgroup enumeration and cosets.

Element 0 is always the identity.  Groups and subgroups are immutable;
every Subgroup validates closure on construction, so downstream code can
trust membership sets.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, EnumerationCapError

DEFAULT_NORMAL_CAP = 4096


class FiniteGroup:
    def __init__(self, cayley: np.ndarray, labels: Sequence[str] | None = None):
        cayley = np.asarray(cayley, dtype=np.int32)
        n = cayley.shape[0]
        if cayley.shape != (n, n):
            raise ValueError("cayley table must be square")
        if not (np.array_equal(cayley[0], np.arange(n)) and
                np.array_equal(cayley[:, 0], np.arange(n))):
            raise ValueError("element 0 must act as identity")
        self.order = n
        self.cayley = cayley
        self.cayley.setflags(write=False)
        inv = np.argmax(cayley == 0, axis=1).astype(np.int32)
        if not np.array_equal(cayley[np.arange(n), inv], np.zeros(n, dtype=np.int32)):
            raise ValueError("table has no two-sided inverses")
        self.inv = inv
        self.inv.setflags(write=False)
        self.labels = list(labels) if labels is not None else None

    # -- basic operations ------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def conj(self, g: int, x: int) -> int:
        """g x g^{-1}."""
        return int(self.cayley[self.cayley[g, x], self.inv[g]])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def label(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return f"g{g}"

    def check_associativity(self, sample: int = 0, seed: int = 0) -> bool:
        """Full check for order <= 512, else `sample` random triples."""
        n = self.order
        if n <= 512 and sample == 0:
            c = self.cayley
            lhs = c[c, :]            # (a,b,x) -> (ab)x
            rhs = c[:, c]            # (a,b,x) -> a(bx)
            return bool(np.array_equal(lhs, rhs))
        rng = np.random.default_rng(seed)
        for _ in range(max(sample, 10000)):
            a, b, x = rng.integers(0, n, size=3)
            if self.mul(self.mul(a, b), x) != self.mul(a, self.mul(b, x)):
                return False
        return True

    # -- derived structure --------------------------------------------------------

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        n = self.order
        seen = np.zeros(n, dtype=bool)
        classes = []
        all_idx = np.arange(n)
        for g in range(n):
            if seen[g]:
                continue
            conj = self.cayley[self.cayley[all_idx, g], self.inv[all_idx]]
            members = np.unique(conj)
            seen[members] = True
            classes.append(tuple(int(x) for x in members))
        return tuple(classes)

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int32)
        for ci, cls in enumerate(self.conjugacy_classes):
            for g in cls:
                out[g] = ci
        out.setflags(write=False)
        return out

    @cached_property
    def center(self) -> "Subgroup":
        c = self.cayley
        members = [g for g in range(self.order) if np.array_equal(c[g], c[:, g])]
        return Subgroup(self, members, _trusted=True)

    @cached_property
    def commutator_subgroup(self) -> "Subgroup":
        n = self.order
        c, inv = self.cayley, self.inv
        comms = set()
        for g in range(n):
            # [g,h] = g^{-1} h^{-1} g h, vectorized over h
            t = c[c[inv[g], inv], g]
            comms.update(int(x) for x in np.unique(c[t, np.arange(n)]))
        return subgroup_generate(self, comms)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [0], _trusted=True)

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, range(self.order), _trusted=True)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


class Subgroup:
    """A subgroup given by its sorted member set (indices into the parent)."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int],
                 _trusted: bool = False):
        self.parent = parent
        self.members = tuple(sorted({int(m) for m in members}))
        if not self.members or self.members[0] != 0:
            raise DomainError("subgroup must contain the identity")
        if not _trusted:
            idx = np.array(self.members, dtype=np.int32)
            prods = parent.cayley[np.ix_(idx, idx)]
            ok = np.isin(prods, idx).all() and np.isin(parent.inv[idx], idx).all()
            if not ok:
                raise DomainError("member set is not closed under the group law")

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        m.setflags(write=False)
        return m

    @cached_property
    def index_of(self) -> dict[int, int]:
        return {g: i for i, g in enumerate(self.members)}

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, g: int) -> bool:
        return bool(self.mask[g])

    def __contains__(self, g: int) -> bool:
        return self.contains(g)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.members))

    @cached_property
    def is_abelian(self) -> bool:
        idx = np.array(self.members, dtype=np.int32)
        sub = self.parent.cayley[np.ix_(idx, idx)]
        return bool(np.array_equal(sub, sub.T))

    def is_normal(self) -> bool:
        g = self.parent
        for x in self.members:
            cls = g.conjugacy_classes[g.class_of[x]]
            if not all(self.mask[y] for y in cls):
                return False
        return True

    def generators(self) -> tuple[int, ...]:
        """A small deterministic generating set (greedy over members)."""
        gens: list[int] = []
        have = {0}
        for m in self.members:
            if m in have:
                continue
            gens.append(m)
            have = set(subgroup_generate(self.parent, gens).members)
            if len(have) == self.order:
                break
        return tuple(gens)

    def centralizer_in_parent(self) -> "Subgroup":
        return centralizer(self.parent, self)

    def center_of(self) -> "Subgroup":
        """Center of this subgroup, as a Subgroup of the same parent."""
        c = self.parent.cayley
        idx = list(self.members)
        members = [g for g in idx
                   if all(c[g, h] == c[h, g] for h in idx)]
        return Subgroup(self.parent, members, _trusted=True)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, sorted(set(self.members) & set(other.members)),
                        _trusted=True)

    def product_set(self, other: "Subgroup") -> "Subgroup":
        """The set product A*B, valid as a subgroup when one side is normal."""
        a = np.array(self.members, dtype=np.int32)
        b = np.array(other.members, dtype=np.int32)
        prods = np.unique(self.parent.cayley[np.ix_(a, b)])
        return Subgroup(self.parent, (int(x) for x in prods))

    def to_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """This subgroup as a standalone FiniteGroup plus the parent indices."""
        idx = self.index_of
        n = self.order
        table = np.empty((n, n), dtype=np.int32)
        for i, a in enumerate(self.members):
            row = self.parent.cayley[a, list(self.members)]
            table[i] = [idx[int(x)] for x in row]
        return FiniteGroup(table), self.members

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.order})"


# ---------------------------------------------------------------------------
# free functions


def subgroup_generate(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing `gens` (BFS closure)."""
    members = {0}
    frontier = [0]
    gen_list = sorted({int(g) for g in gens})
    for g in gen_list:
        if g < 0 or g >= G.order:
            raise DomainError(f"generator index {g} out of range")
    if not gen_list:
        return G.trivial_subgroup()
    members.update(gen_list)
    frontier = sorted(members)
    c = G.cayley
    while frontier:
        new = []
        for x in frontier:
            for g in gen_list:
                y = int(c[x, g])
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(G, members, _trusted=True)


def group_invariants(G: FiniteGroup) -> tuple[Subgroup, Subgroup, tuple[tuple[int, ...], ...]]:
    """(center, commutator subgroup, conjugacy classes)."""
    return G.center, G.commutator_subgroup, G.conjugacy_classes


def centralizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Elements of G commuting with every element of H.

    Computed against a generating set of H; that equals the definitional
    pointwise set since centralizing generators centralizes products.
    """
    if H.parent is not G:
        raise DomainError("H must be a subgroup of G")
    gens = H.generators() or (0,)
    ok = np.ones(G.order, dtype=bool)
    c = G.cayley
    for h in gens:
        ok &= c[:, h] == c[h, :]
    return Subgroup(G, (int(g) for g in np.nonzero(ok)[0]), _trusted=True)


def normal_subgroups(G: FiniteGroup, cap: int = DEFAULT_NORMAL_CAP) -> list[Subgroup]:
    """All normal subgroups, each exactly once, sorted by (order, members).

    BFS over class-closed subgroups: a normal subgroup is a union of
    conjugacy classes, and adjoining a class to a normal subgroup generates
    a normal subgroup again, so the search is complete.
    """
    if G.order > cap:
        raise EnumerationCapError(
            f"group order {G.order} exceeds enumeration cap {cap}; "
            f"pass explicit subgroup generators instead")
    classes = G.conjugacy_classes
    trivial = G.trivial_subgroup()
    seen = {trivial.members: trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for cls in classes:
                if H.mask[cls[0]]:
                    continue
                K = subgroup_generate(G, set(H.members) | set(cls))
                if K.members not in seen:
                    seen[K.members] = K
                    nxt.append(K)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (s.order, s.members))


def cosets(G: FiniteGroup, H: Subgroup) -> tuple[tuple[int, ...], np.ndarray]:
    """Left cosets of H in G: (transversal, coset index per element).

    transversal[0] is the identity; representatives are the smallest
    uncovered element index, so the output is deterministic.
    """
    if H.parent is not G:
        raise DomainError("H must be a subgroup of G")
    coset_index = np.full(G.order, -1, dtype=np.int32)
    transversal = []
    hm = np.array(H.members, dtype=np.int32)
    for g in range(G.order):
        if coset_index[g] >= 0:
            continue
        members = G.cayley[g, hm]
        coset_index[members] = len(transversal)
        transversal.append(g)
    return tuple(transversal), coset_index
