import itertools

import numpy as np
import pytest

from nmrcnot import catalog
from nmrcnot.errors import NotCnotLike
from nmrcnot.linalg import Operator4, eigen_decompose, match_multisets
from nmrcnot.similarity import check_similarity
from nmrcnot.synthesis import (
    AxisConstraint,
    SequenceTemplate,
    all_templates,
    classify_cnot_like,
    enumerate_family,
    phase_classes,
    rejection_reasons,
    select_realizable,
)
from oracles import random_unitary


@pytest.fixture(scope="module")
def family():
    return enumerate_family()


def test_family_size_and_order(family):
    assert len(family) == 16
    keys = [(t.sandwich_axis, t.spin, t.coupling_sign, t.z_sign) for t, _ in family]
    assert keys == sorted(keys)
    assert len(set(keys)) == 16


def test_family_pairwise_distinct(family):
    for (_, a), (_, b) in itertools.combinations(family, 2):
        assert a.max_abs_diff(b) > 1e-9


def test_family_equals_declared_set(family):
    declared = [e.declared_matrix for e in catalog.family_entries()]
    for _, m in family:
        assert sum(m.isclose(d, 1e-12) for d in declared) == 1
    for d in declared:
        assert sum(m.isclose(d, 1e-12) for _, m in family) == 1


def test_template_for_spin2_x_sandwich(family):
    lookup = {t: m for t, m in family}
    assert lookup[SequenceTemplate("x", 2, 1, -1)] == catalog.lookup("C_c1").declared_matrix
    assert lookup[SequenceTemplate("x", 1, 1, -1)] == catalog.lookup("C_c2").declared_matrix


def test_template_expansion():
    t = SequenceTemplate("y", 1, -1, 1)
    assert t.sequence().to_text() == "Ry1(-pi/4) Rzz(-pi/4) Rz1(pi/4) Ry1(pi/4)"
    assert len(t.sequence()) == 4
    with pytest.raises(ValueError):
        SequenceTemplate("z", 1, 1, 1)
    with pytest.raises(ValueError):
        SequenceTemplate("x", 1, 0, 1)


def test_family_common_spectrum(family):
    for _, m in family:
        vals = eigen_decompose(m).eigenvalues
        assert match_multisets(vals, [1, 1, 1j, -1j])[1] <= 1e-9


def test_family_pairwise_similar(family):
    mats = [m for _, m in family]
    for a, b in itertools.combinations(mats, 2):
        assert check_similarity(a, b).similar


def test_gershenfeld_similar_to_none(family):
    c_g = catalog.lookup("C_g").declared_matrix
    for _, m in family:
        assert not check_similarity(c_g, m).similar


def test_phase_classes(family):
    classes = phase_classes(family)
    # every member fixes two basis states with phase 1, so no two differ by a phase
    assert len(classes) == 16
    assert sorted(t for cls in classes for t in cls) == all_templates()


def test_phase_classes_merges_phase_multiples(family):
    t0, m0 = family[0]
    t1 = SequenceTemplate("y", 2, 1, 1)
    groups = phase_classes([(t0, m0), (t1, 1j * m0)])
    assert groups == [[t0, t1]]


def test_classify_c_c1():
    cls = classify_cnot_like(catalog.lookup("C_c1").declared_matrix)
    assert (cls.control_spin, cls.control_polarity, cls.target_spin) == (1, "down", 2)
    assert np.allclose(cls.basis_phases, [1, 1, 1, -1])


def test_classify_c_c41():
    cls = classify_cnot_like(catalog.lookup("C_c41").declared_matrix)
    assert (cls.control_spin, cls.control_polarity, cls.target_spin) == (2, "up", 1)


def test_classify_rejects_identity():
    with pytest.raises(NotCnotLike):
        classify_cnot_like(Operator4.identity())


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],  # swap
        [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]],  # both spins flip
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],  # unconditional flip
    ],
)
def test_classify_rejects_other_permutations(rows):
    with pytest.raises(NotCnotLike):
        classify_cnot_like(Operator4(rows))


def test_classify_whole_family(family):
    for t, m in family:
        cls = classify_cnot_like(m)
        assert cls.control_spin != cls.target_spin
        assert cls.target_spin == t.spin  # the sandwiched spin is the one flipped
        assert np.allclose(np.abs(cls.basis_phases), 1)


def test_classify_rejects_random_unitaries(rng):
    for _ in range(100):
        with pytest.raises(NotCnotLike):
            classify_cnot_like(Operator4(random_unitary(rng)))


def test_select_examples(family):
    everything = select_realizable(AxisConstraint.everything())
    assert everything == [t for t, _ in family]

    only_z = select_realizable(AxisConstraint({"z"}, {"z"}, True))
    assert only_z == []

    spin2_xz = select_realizable(AxisConstraint(set(), {"x", "z"}, True))
    assert spin2_xz == [t for t in all_templates() if t.sandwich_axis == "x" and t.spin == 2]
    ids = {
        e.id
        for e in catalog.family_entries()
        for t in spin2_xz
        if t.unitary().isclose(e.declared_matrix, 1e-12)
    }
    assert ids == {"C_c1", "C_c42", "C_c62", "C_c71"}


def test_select_without_coupling_is_empty():
    assert select_realizable(AxisConstraint(coupling_available=False)) == []
    reasons = rejection_reasons(AxisConstraint(coupling_available=False))
    assert len(reasons) == 16
    assert all("coupling evolution unavailable" in r for r in reasons.values())


def test_select_subsets_are_sound():
    for ax1 in itertools.chain.from_iterable(itertools.combinations("xyz", k) for k in range(4)):
        for ax2 in itertools.chain.from_iterable(itertools.combinations("xyz", k) for k in range(4)):
            c = AxisConstraint(set(ax1), set(ax2), True)
            chosen = select_realizable(c)
            for t in chosen:
                assert t.axes_on(t.spin) <= c.allowed(t.spin)
            for t in set(all_templates()) - set(chosen):
                assert not t.axes_on(t.spin) <= c.allowed(t.spin)


def test_constraint_validation():
    with pytest.raises(ValueError):
        AxisConstraint({"w"}, set(), True)
