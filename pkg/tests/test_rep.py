import json
from fractions import Fraction

import pytest

from cliffcode.cyclo import CycNum, ONE
from cliffcode.matrices import CycMatrix
from cliffcode.errors import ClosureCapError, NonUnitaryError, UsageError
from cliffcode.rep import (builtin_group, element_label, group_closure,
                           load_group_file, parse_element, rep_restrict,
                           subgroup_from_tokens, tensor_components,
                           verify_error_group, _X2, _Y2, _Z2)

I2 = CycMatrix.identity(2)


class TestClosure:
    def test_xz_alone_is_order_eight(self):
        # closure of the two real generators: the i phases never appear
        rep = group_closure([_X2, _Z2])
        assert rep.order == 8

    def test_identity_generator(self):
        rep = group_closure([I2])
        assert rep.order == 1

    def test_qutrit_clock_shift_order_27(self):
        rep = builtin_group("weyl:3:1")
        assert rep.order == 27
        assert rep.conductor == 3
        phases = [g for g in range(27)
                  if rep.matrices[g].is_scalar() is not None]
        assert len(phases) == 3

    def test_cayley_consistent_with_matrices(self, pauli1):
        G = pauli1.group
        for a in range(G.order):
            for b in range(G.order):
                prod = pauli1.matrices[a] @ pauli1.matrices[b]
                assert prod == pauli1.matrices[G.mul(a, b)]

    def test_non_unitary_rejected(self):
        with pytest.raises(NonUnitaryError):
            group_closure([I2 + _X2])

    def test_cap(self):
        with pytest.raises(ClosureCapError) as e:
            builtin_group("pauli:1", cap=5)
        assert e.value.partial_size == 5


class TestBuiltin:
    def test_pauli1(self, pauli1):
        assert (pauli1.order, pauli1.degree) == (16, 2)
        assert pauli1.group.center.order == 4
        assert pauli1.conductor == 4

    def test_pauli2(self, pauli2):
        assert (pauli2.order, pauli2.degree) == (64, 4)

    def test_weyl31(self, weyl31):
        assert (weyl31.order, weyl31.degree) == (27, 3)
        assert weyl31.group.center.order == 3

    def test_malformed_specs(self):
        for bad in ["pauli", "pauli:0", "weyl:1:1", "weyl:3", "nope:2"]:
            with pytest.raises(UsageError):
                builtin_group(bad)

    def test_phase_subgroup_is_center(self, pauli1):
        assert pauli1.phase_subgroup.members == pauli1.group.center.members


class TestVerify:
    def test_pauli1_report(self, pauli1):
        r = verify_error_group(pauli1)
        assert r.ok
        assert r.abelian_index
        assert r.degree == 2 and r.center_index == 4

    def test_pauli2_degree_law(self, pauli2):
        r = verify_error_group(pauli2)
        assert r.ok
        assert r.center_index == 16 and r.degree == 4

    def test_weyl31_degree_law(self, weyl31):
        r = verify_error_group(weyl31)
        assert r.ok
        assert r.degree ** 2 == r.center_index == 9

    def test_reducible_input_fails_irreducibility(self):
        # two copies of the qubit rep: <phi,phi> = 4
        x = _X2.kron(I2) @ I2.kron(_X2)  # X (+) X as a tensor trick won't do;
        # build the direct sum explicitly instead
        def dsum(m):
            entries = {}
            for i, j, v in m.entries():
                entries[(i, j)] = v
                entries[(i + 2, j + 2)] = v
            return CycMatrix.from_entries(4, entries)

        rep = group_closure([dsum(_X2), dsum(_Z2), dsum(_Y2)])
        r = verify_error_group(rep)
        assert not r.ok
        line = next(l for l in r.lines if "irreducible" in l.name)
        assert not line.passed
        assert "4" in line.detail

    def test_phi_class_function_and_conj_symmetry(self, pauli2):
        phi = pauli2.character
        G = pauli2.group
        for g in range(G.order):
            assert phi.values[g] == phi.values[G.class_of.tolist()[g] and
                                               G.conjugacy_classes[G.class_of[g]][0]]
            assert phi.values[int(G.inv[g])] == phi.values[g].conj()

    def test_phi_vanishes_off_center(self, pauli2):
        phi = pauli2.character
        center = pauli2.group.center
        for g in range(pauli2.order):
            if not center.contains(g):
                assert phi.values[g].is_zero()


class TestRestrict:
    def test_center_restriction_is_scalars(self, pauli1):
        view = rep_restrict(pauli1, pauli1.group.center)
        for g in pauli1.group.center.members:
            assert view.matrix(g).is_scalar() is not None

    def test_character_degree(self, pauli2):
        N = subgroup_from_tokens(pauli2, ["XI", "ZI"])
        assert N.order == 8
        view = rep_restrict(pauli2, N)
        assert view.character.degree == CycNum.from_rational(4)

    def test_trivial_restriction(self, pauli1):
        view = rep_restrict(pauli1, pauli1.group.trivial_subgroup())
        assert view.matrix(0).is_identity()


class TestTensorStructure:
    def test_reconstruction_pauli1(self, pauli1):
        from cliffcode.rep import _clock_shift
        shift, clock = _clock_shift(2)
        for g in range(pauli1.order):
            phase, ab = tensor_components(pauli1, g)
            m = CycMatrix.identity(1)
            for a, b in ab:
                local = CycMatrix.identity(2)
                for _ in range(a):
                    local = local @ shift
                for _ in range(b):
                    local = local @ clock
                m = m.kron(local)
            assert m.scaled(phase) == pauli1.matrices[g]

    def test_reconstruction_pauli2(self, pauli2):
        from cliffcode.rep import _clock_shift
        shift, clock = _clock_shift(2)
        for g in range(pauli2.order):
            phase, ab = tensor_components(pauli2, g)
            m = CycMatrix.identity(1)
            for a, b in ab:
                local = CycMatrix.identity(2)
                for _ in range(a):
                    local = local @ shift
                for _ in range(b):
                    local = local @ clock
                m = m.kron(local)
            assert m.scaled(phase) == pauli2.matrices[g]

    def test_weights_match_labels(self, pauli2):
        weights = pauli2.element_weights
        for g in range(pauli2.order):
            label = pauli2.label(g)
            word = label.lstrip("-i")
            if not word:
                word = "II"  # pure phase tokens like -1, i
            if label in ("-1", "i", "-i"):
                word = "II"
            expected = sum(1 for ch in word if ch in "XYZ")
            assert weights[g] == expected, label

    def test_labels_round_trip(self, pauli2, weyl31):
        for rep in (pauli2, weyl31):
            for g in range(rep.order):
                assert parse_element(rep, rep.label(g)) == g

    def test_parse_errors(self, pauli1):
        for bad in ["Q", "XYZ", "X.Z", ""]:
            with pytest.raises(UsageError):
                parse_element(pauli1, bad)


class TestGroupFile:
    def test_round_trip(self, tmp_path, pauli1):
        doc = {
            "name": "qubit-errors",
            "conductor": 4,
            "degree": 2,
            "tensor_factors": [2],
            "generators": [
                [[v.to_terms() for v in (m.entry(i, 0), m.entry(i, 1))]
                 for i in range(2)]
                for m in (_X2, _Z2, _Y2)
            ],
        }
        path = tmp_path / "group.json"
        path.write_text(json.dumps(doc))
        rep = load_group_file(str(path))
        assert rep.order == 16
        assert rep.name == "qubit-errors"
        assert verify_error_group(rep).ok

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(UsageError):
            load_group_file(str(path))
        path.write_text(json.dumps({"conductor": 4}))
        with pytest.raises(UsageError):
            load_group_file(str(path))
        path.write_text(json.dumps({
            "conductor": 4, "degree": 2,
            "generators": [[[[1, 1, 0]]]]}))
        with pytest.raises(UsageError):
            load_group_file(str(path))
