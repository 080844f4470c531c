"""Gender and feature-structure unification against a hand truth table."""

import pytest

from acekit.features import FeatureStructure, unify, unify_gender

# independent oracle: common subsumes masc and fem but is disjoint from neut;
# None is the free value
GENDER_TABLE = {
    ("masc", "masc"): "masc",
    ("masc", "fem"): None,
    ("masc", "common"): "masc",
    ("masc", "neut"): None,
    ("fem", "fem"): "fem",
    ("fem", "common"): "fem",
    ("fem", "neut"): None,
    ("common", "common"): "common",
    ("common", "neut"): None,
    ("neut", "neut"): "neut",
}


@pytest.mark.parametrize("a,b", sorted(GENDER_TABLE))
def test_gender_table(a, b):
    expected = GENDER_TABLE[(a, b)]
    assert unify_gender(a, b) == expected
    assert unify_gender(b, a) == expected


@pytest.mark.parametrize("g", ["masc", "fem", "common", "neut", None])
def test_gender_none_is_identity(g):
    assert unify_gender(None, g) == g
    assert unify_gender(g, None) == g


def test_unify_merges_disjoint_features():
    a = FeatureStructure(agr="third-sg")
    b = FeatureStructure(gender="masc")
    u = unify(a, b)
    assert u.get("agr") == "third-sg"
    assert u.get("gender") == "masc"


def test_unify_atomic_clash_fails():
    assert unify(FeatureStructure(agr="third-sg"),
                 FeatureStructure(agr="third-pl")) is None


def test_unify_gender_uses_subsumption():
    u = unify(FeatureStructure(gender="common"), FeatureStructure(gender="fem"))
    assert u is not None and u.get("gender") == "fem"
    assert unify(FeatureStructure(gender="common"),
                 FeatureStructure(gender="neut")) is None


def test_unify_does_not_mutate_inputs():
    a = FeatureStructure(agr="third-sg")
    b = FeatureStructure(agr=None, gender="neut")
    unify(a, b)
    assert a == FeatureStructure(agr="third-sg")
    assert b.get("gender") == "neut" and b.get("agr") is None


def test_unify_nested_structures():
    a = FeatureStructure(head=FeatureStructure(agr="third-sg"))
    b = FeatureStructure(head=FeatureStructure(gender="masc"))
    u = unify(a, b)
    assert u.get("head").get("agr") == "third-sg"
    assert u.get("head").get("gender") == "masc"


def test_display_is_sorted_and_marks_unbound():
    fs = FeatureStructure(gender=None, agr="third-sg")
    assert fs.display() == "{agr:third-sg gender:_}"
