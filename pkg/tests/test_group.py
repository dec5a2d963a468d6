import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliffcode.errors import DomainError, EnumerationCapError
from cliffcode.group import (FiniteGroup, Subgroup, centralizer, cosets,
                             group_invariants, normal_subgroups,
                             subgroup_generate)
from cliffcode.rep import parse_element, subgroup_from_tokens


# --- independent brute-force oracle -----------------------------------------
# Enumerates every subgroup by closing subsets one element at a time, and
# filters normal ones by the definition g h g^{-1} in H.  Shares no code
# with the class-closure enumeration under test.

def _close_set(G: FiniteGroup, seed: frozenset) -> frozenset:
    members = set(seed) | {0}
    while True:
        idx = np.fromiter(members, dtype=np.int32)
        prods = np.unique(G.cayley[np.ix_(idx, idx)])
        new = set(int(x) for x in prods) | members
        if len(new) == len(members):
            return frozenset(members)
        members = new


def all_subgroups_bruteforce(G: FiniteGroup) -> set[frozenset]:
    triv = frozenset([0])
    subs = {triv}
    frontier = [triv]
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(G.order):
                if g in H:
                    continue
                K = _close_set(G, H | {g})
                if K not in subs:
                    subs.add(K)
                    nxt.append(K)
        frontier = nxt
    return subs


def is_normal_definitional(G: FiniteGroup, H: frozenset) -> bool:
    return all(G.conj(g, h) in H for g in range(G.order) for h in H)


def normal_subgroups_oracle(G: FiniteGroup) -> set[frozenset]:
    return {H for H in all_subgroups_bruteforce(G) if is_normal_definitional(G, H)}


# --- a small abelian reference group ----------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(np.array(table))


class TestSubgroupGenerate:
    def test_generators_xz_close_to_dihedral_not_full(self, pauli1):
        # brute-force closure: products of X and Z only reach the eight
        # real matrices; the i phases need the fourth error matrix
        x = parse_element(pauli1, "X")
        z = parse_element(pauli1, "Z")
        H = subgroup_generate(pauli1.group, [x, z])
        assert H.order == len(_close_set(pauli1.group, frozenset([x, z]))) == 8

    def test_empty_generators(self, pauli1):
        assert subgroup_generate(pauli1.group, []).order == 1

    def test_z_and_minus_identity(self, pauli1):
        H = subgroup_from_tokens(pauli1, ["Z", "-1"])
        assert H.order == 4
        assert sorted(pauli1.label(g) for g in H.members) == ["-I", "-Z", "I", "Z"]

    @given(gens=st.lists(st.integers(0, 15), max_size=3))
    @settings(max_examples=40)
    def test_closure_and_lagrange(self, gens):
        G = _PAULI1_GROUP
        H = subgroup_generate(G, gens)
        assert H.members == tuple(sorted(_close_set(G, frozenset(gens))))
        assert 16 % H.order == 0


class TestInvariants:
    def test_pauli1_center_commutator_classes(self, pauli1):
        center, commutator, classes = group_invariants(pauli1.group)
        assert center.order == 4
        assert sorted(pauli1.label(g) for g in center.members) == \
            ["-I", "-iI", "I", "iI"]
        assert commutator.order == 2
        assert len(classes) == 10

    def test_abelian_group(self):
        G = cyclic_group(6)
        center, commutator, classes = group_invariants(G)
        assert center.order == 6
        assert commutator.order == 1
        assert all(len(c) == 1 for c in classes)

    def test_pauli2(self, pauli2):
        assert pauli2.group.center.order == 4
        assert pauli2.group.commutator_subgroup.order == 2

    def test_cayley_is_associative(self, pauli1):
        assert pauli1.group.check_associativity()


class TestCentralizer:
    def test_of_plus_minus_z(self, pauli1):
        H = subgroup_from_tokens(pauli1, ["Z", "-1"])
        C = centralizer(pauli1.group, H)
        assert C.order == 8
        assert sorted(pauli1.label(g) for g in C.members) == \
            sorted(["I", "-I", "iI", "-iI", "Z", "-Z", "iZ", "-iZ"])

    def test_of_trivial_subgroup(self, pauli1):
        C = centralizer(pauli1.group, pauli1.group.trivial_subgroup())
        assert C.order == 16

    def test_of_whole_group_is_center(self, pauli1):
        C = centralizer(pauli1.group, pauli1.group.full_subgroup())
        assert C.members == pauli1.group.center.members

    def test_generator_route_equals_definition(self, pauli1):
        G = pauli1.group
        H = subgroup_from_tokens(pauli1, ["X", "-1"])
        C = centralizer(G, H)
        definitional = [g for g in range(G.order)
                        if all(G.mul(g, h) == G.mul(h, g) for h in H.members)]
        assert list(C.members) == definitional


class TestNormalSubgroups:
    def test_pauli1_seventeen(self, pauli1):
        subs = normal_subgroups(pauli1.group)
        oracle = normal_subgroups_oracle(pauli1.group)
        assert {frozenset(s.members) for s in subs} == oracle
        assert len(subs) == 17

    def test_cyclic4_all_subgroups_normal(self):
        G = cyclic_group(4)
        subs = normal_subgroups(G)
        assert [s.order for s in subs] == [1, 2, 4]

    def test_pauli2_matches_oracle(self, pauli2):
        subs = normal_subgroups(pauli2.group)
        oracle = normal_subgroups_oracle(pauli2.group)
        assert {frozenset(s.members) for s in subs} == oracle
        assert len(subs) == 375

    def test_full_conjugation_closure(self, pauli1):
        G = pauli1.group
        for N in normal_subgroups(G):
            for g in range(G.order):
                for x in N.members:
                    assert N.contains(G.conj(g, x))

    def test_subgroups_above_commutator_are_normal(self, pauli1):
        # commutator inside the center: every subgroup containing it is normal
        G = pauli1.group
        comm = set(G.commutator_subgroup.members)
        enumerated = {frozenset(s.members) for s in normal_subgroups(G)}
        for H in all_subgroups_bruteforce(G):
            if comm <= H:
                assert H in enumerated

    def test_cap(self, pauli1):
        with pytest.raises(EnumerationCapError):
            normal_subgroups(pauli1.group, cap=4)

    def test_deterministic_order(self, pauli2):
        a = [s.members for s in normal_subgroups(pauli2.group)]
        b = [s.members for s in normal_subgroups(pauli2.group)]
        assert a == b


class TestCosets:
    def test_center_cosets(self, pauli1):
        tr, idx = cosets(pauli1.group, pauli1.group.center)
        assert len(tr) == 4
        assert tr[0] == 0
        counts = np.bincount(idx)
        assert list(counts) == [4, 4, 4, 4]

    def test_whole_group(self, pauli1):
        tr, idx = cosets(pauli1.group, pauli1.group.full_subgroup())
        assert tr == (0,)
        assert set(int(i) for i in idx) == {0}

    def test_four_cosets_of_size_four(self, pauli1):
        H = subgroup_from_tokens(pauli1, ["Z", "-1"])
        tr, idx = cosets(pauli1.group, H)
        assert len(tr) == 4
        assert all(int(c) == 4 for c in np.bincount(idx))

    def test_partition(self, pauli1):
        H = subgroup_from_tokens(pauli1, ["X"])
        tr, idx = cosets(pauli1.group, H)
        assert len(tr) * H.order == 16
        assert (idx >= 0).all()


class TestSubgroupValidation:
    def test_rejects_non_closed(self, pauli1):
        x = parse_element(pauli1, "X")
        z = parse_element(pauli1, "Z")
        with pytest.raises(DomainError):
            Subgroup(pauli1.group, [0, x, z])

    def test_rejects_missing_identity(self, pauli1):
        with pytest.raises(DomainError):
            Subgroup(pauli1.group, [1, 2])

    def test_to_group_round_trip(self, pauli1):
        H = subgroup_from_tokens(pauli1, ["Z", "-1"])
        sub, parents = H.to_group()
        assert sub.order == 4
        for i, a in enumerate(parents):
            for j, b in enumerate(parents):
                assert parents[sub.mul(i, j)] == pauli1.group.mul(a, b)


_PAULI1_GROUP = None


def pytest_configure():
    pass


@pytest.fixture(autouse=True, scope="module")
def _stash_pauli1(pauli1):
    global _PAULI1_GROUP
    _PAULI1_GROUP = pauli1.group
    yield
