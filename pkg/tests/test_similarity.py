import cmath
import json
import math

import numpy as np
import pytest

from nmrcnot import catalog
from nmrcnot.errors import NotNormal, SingularInput
from nmrcnot.linalg import Operator4
from nmrcnot.similarity import check_similarity, find_conjugator, substitution_residual
from oracles import random_unitary


@pytest.fixture
def c_g():
    return catalog.lookup("C_g").declared_matrix


@pytest.fixture
def c1():
    return catalog.lookup("C_c1").declared_matrix


@pytest.fixture
def c2():
    return catalog.lookup("C_c2").declared_matrix


def test_cory_pair_is_similar(c1, c2):
    report = check_similarity(c1, c2)
    assert report.verdict == "similar"
    assert all(p.passed for p in report.properties)
    assert substitution_residual(c1, c2, report.conjugator) <= 1e-9


def test_gershenfeld_vs_cory(c_g, c1):
    report = check_similarity(c_g, c1)
    assert report.verdict == "not-similar"
    assert report.conjugator is None
    assert set(report.failed()) >= {2, 4, 5, 6}
    assert report[1].passed  # both determinants are 1
    assert report[2].lhs == pytest.approx(2 * cmath.exp(-1j * math.pi / 4), abs=1e-12)
    assert report[2].rhs == pytest.approx(2, abs=1e-12)
    # the inverse traces differ as well, so property 3 is measured as failing
    assert report[3].passed is False
    assert "inverses" in report[3].note


def test_self_similarity_random(rng):
    a = Operator4(random_unitary(rng))
    report = check_similarity(a, a)
    assert report.similar
    assert all(p.passed for p in report.properties)
    ident = Operator4.identity()
    assert substitution_residual(a, a, ident) <= 1e-12


def test_find_conjugator_examples(c_g, c1, c2):
    p = find_conjugator(c1, c2)
    assert p is not None
    assert np.max(np.abs(np.asarray(c1) - np.asarray(p @ c2 @ p.inverse()))) <= 1e-9
    assert find_conjugator(c_g, c1) is None


def test_conjugator_is_unitary(c1, c2):
    assert find_conjugator(c1, c2).is_unitary(1e-12)


def test_random_conjugates_are_similar(rng):
    for _ in range(100):
        a = Operator4(random_unitary(rng))
        p = Operator4(random_unitary(rng))
        b = p.dagger() @ a @ p
        report = check_similarity(a, b, check_inverses=False)
        assert report.verdict == "similar"
        assert report[5].passed and report[1].passed and report[2].passed
        assert substitution_residual(a, b, report.conjugator) <= 1e-9


def test_degenerate_spectra_conjugate(rng):
    # eigenvalue 1 with multiplicity 3: eigenvectors are far from unique
    for _ in range(50):
        v = random_unitary(rng)
        w = random_unitary(rng)
        a = Operator4(v @ np.diag([1, 1, 1, -1]) @ v.conj().T)
        b = Operator4(w @ np.diag([-1, 1, 1, 1]) @ w.conj().T)
        p = find_conjugator(a, b)
        assert p is not None
        assert substitution_residual(a, b, p) <= 1e-9


def test_random_unitaries_are_not_similar(rng):
    for _ in range(50):
        a, b = Operator4(random_unitary(rng)), Operator4(random_unitary(rng))
        report = check_similarity(a, b)
        assert not report.similar
        assert not report[5].passed


def test_consistency_invariant(rng):
    mats = [e.declared_matrix for e in catalog.builtin_catalog()]
    mats += [Operator4(random_unitary(rng)) for _ in range(5)]
    for a in mats:
        for b in mats[:6]:
            r = check_similarity(a, b)
            if r.similar:
                assert r[1].passed and r[2].passed and r[5].passed
            if not r[5].passed:
                assert not r.similar


def test_non_normal_rejected():
    m = np.eye(4)
    m[0, 3] = 2.0
    with pytest.raises(NotNormal):
        check_similarity(Operator4(m), Operator4.identity())
    with pytest.raises(NotNormal):
        find_conjugator(Operator4.identity(), Operator4(m))


def test_singular_input_for_inverse_property():
    z = Operator4(np.diag([1, 1, 1, 0]))
    with pytest.raises(SingularInput):
        check_similarity(z, z)
    report = check_similarity(z, z, check_inverses=False)
    assert report.similar
    assert report[3].passed is None


def test_report_json(c_g, c1):
    obj = json.loads(json.dumps(check_similarity(c_g, c1).to_json()))
    assert obj["verdict"] == "not-similar"
    assert [p["property"] for p in obj["properties"]] == [1, 2, 3, 4, 5, 6]
    for p in obj["properties"]:
        assert set(p) >= {"property", "pass", "lhs", "rhs", "residual"}
    assert obj["properties"][1]["rhs"] == [2.0, 0.0]
    assert obj["conjugator"] is None
