import json

import pytest

from famenum import (DATASET_PATH, DatasetError, IrrationalTag, ShapeRule, SingularCaseError, UnknownFamilyError,
                     UnknownParameterError, WrongDegreeError, classify_candidate, coefficient_form, enumerate_families,
                     family_by_number, family_by_weights, instantiate, irrational_families, load_dataset, parse_params,
                     same_member, same_params, search_families, spade_families, use_dataset)
from quasismooth import member_quasismooth
from wps import WeightSystem

SPADE = {104: ((1, 1, 1, 1, 1), 2, 3), 105: ((1, 1, 1, 1, 2), 3, 3), 106: ((1, 1, 1, 2, 2), 4, 3),
         111: ((1, 1, 1, 2, 3), 4, 4), 112: ((1, 1, 2, 3, 3), 6, 4), 113: ((1, 1, 2, 2, 3), 4, 5),
         114: ((1, 1, 2, 3, 4), 6, 5), 115: ((1, 2, 2, 3, 3), 6, 5), 118: ((1, 1, 2, 3, 5), 6, 6),
         119: ((1, 2, 2, 3, 5), 6, 7), 120: ((1, 2, 3, 3, 4), 6, 7), 121: ((1, 2, 3, 4, 5), 8, 7),
         123: ((1, 2, 3, 3, 5), 6, 8), 124: ((1, 2, 3, 5, 7), 10, 8), 125: ((1, 3, 4, 5, 7), 12, 8),
         126: ((1, 2, 3, 4, 5), 6, 9), 127: ((2, 3, 4, 5, 7), 12, 9), 128: ((1, 4, 5, 6, 7), 12, 11),
         129: ((2, 3, 4, 5, 7), 10, 11), 130: ((3, 4, 5, 6, 7), 12, 13)}


@pytest.fixture(scope="module")
def families():
    return enumerate_families()


def test_full_enumeration_count(families):
    assert len(families) == 130


def test_index_one_count(families):
    assert len([r for r in families if r.fano_index == 1]) == 95
    assert len([r for r in families if r.fano_index >= 2]) == 35


def test_highest_index_is_unique(families):
    top = [r for r in families if r.fano_index == 13]
    assert [(r.ws.weights, r.ws.degree) for r in top] == [((3, 4, 5, 6, 7), 12)]


def test_spade_rows_appear_in_the_enumeration(families):
    numbered = {r.family_no: r for r in families if r.family_no is not None}
    assert set(numbered) == set(SPADE)
    for no, (weights, degree, index) in SPADE.items():
        assert numbered[no].ws == WeightSystem(weights, degree)
        assert numbered[no].fano_index == index


def test_enumeration_is_sorted(families):
    keys = [r.sort_key() for r in families]
    assert keys == sorted(keys)


def test_small_bounds_report_boundary_hits():
    records, hits = search_families(max_weight=3, max_degree=6)
    assert WeightSystem((1, 1, 1, 1, 1), 2) in [r.ws for r in records]
    assert hits and all(r.ws.weights[-1] == 3 or r.ws.degree == 6 for r in hits)


def test_partitioning_does_not_change_the_result():
    serial, _ = search_families(max_weight=7, max_degree=14)
    pooled, _ = search_families(max_weight=7, max_degree=14, processes=2)
    assert [r.ws for r in serial] == [r.ws for r in pooled]


@pytest.mark.parametrize("weights,degree,accepted", [((1, 1, 2, 3, 5), 6, True),
                                                     ((1, 1, 1, 1, 1), 3, True),
                                                     ((1, 1, 1, 1, 1), 4, True),
                                                     ((1, 1, 1, 2, 4), 5, False),
                                                     ((2, 2, 3, 3, 3), 7, False)])
def test_classify_candidate(weights, degree, accepted):
    assert (classify_candidate(weights, degree) is None) == accepted


def test_spade_dataset():
    records = spade_families()
    assert [r.family_no for r in records] == sorted(SPADE)
    for record in records:
        weights, degree, index = SPADE[record.family_no]
        assert record.ws == WeightSystem(weights, degree)
        assert record.fano_index == index


def test_spade_table_one_rows():
    record = family_by_number(118)
    assert record.expected.contains_a3
    assert (record.expected.unipotent_dim, record.expected.torus_rank) == (7, 1)
    record = family_by_number(130)
    assert not record.expected.contains_a3
    assert (record.expected.unipotent_dim, record.expected.torus_rank) == (0, 1)
    record = family_by_number(104)
    assert record.expected.nonsolvable and record.expected.dim_aut == 10


def test_a3_column():
    yes = {r.family_no for r in spade_families() if r.expected.contains_a3}
    assert yes == {104, 105, 111, 113, 118, 119, 123, 126}
    assert {r.family_no for r in spade_families() if r.expected.ga3_structure} == yes
    assert [r.family_no for r in spade_families() if r.expected.heisenberg_structure] == [104]


def test_default_members_are_quasi_smooth():
    for record in spade_families():
        F = instantiate(record)
        assert member_quasismooth(record.ws, F).is_quasi_smooth, record


def test_every_parameter_case_is_a_quasi_smooth_member():
    for record in spade_families():
        for case in record.expected.finite_parts:
            F = instantiate(record, case.params, case.poly)
            assert member_quasismooth(record.ws, F).is_quasi_smooth, (record, case.description)


def test_instantiate_with_parameters():
    record = family_by_number(121)
    F = instantiate(record, {"a": "0", "b": "0"})
    assert F == instantiate(record, poly="z*w + t^2 + y^4 + x^8")


def test_instantiate_errors():
    record = family_by_number(121)
    with pytest.raises(UnknownParameterError):
        instantiate(record, {"q": "1"})
    with pytest.raises(WrongDegreeError):
        instantiate(record, poly="x^7")


def test_parse_params():
    assert parse_params(["a=0", "b = 1/2"]) == {"a": "0", "b": "1/2"}
    with pytest.raises(UnknownParameterError):
        parse_params(["a"])
    with pytest.raises(UnknownParameterError):
        parse_params(["a=x"])


def test_lookups():
    assert family_by_weights(WeightSystem((3, 4, 5, 6, 7), 12)).family_no == 130
    assert family_by_weights(WeightSystem((1, 1, 1, 1, 1), 3)) is None
    with pytest.raises(UnknownFamilyError):
        family_by_number(96)


def test_irrational_families():
    tags = {f.family_no: f.tag for f in irrational_families()}
    assert len(tags) == 15
    assert all(tags[no] == IrrationalTag.CLASSICAL for no in (96, 97, 98))
    assert all(tags[no] == IrrationalTag.SOLID for no in (100, 101, 102, 103, 110))
    assert all(tags[no] == IrrationalTag.OPEN for no in (99, 108, 109, 117, 122))
    assert not set(tags) & set(SPADE)


def test_missing_dataset(tmp_path):
    with pytest.raises(DatasetError):
        load_dataset(str(tmp_path / "missing.json"))


def test_case_for():
    record = family_by_number(121)
    assert record.case_for().description == "general (a, b, c)"
    assert record.case_for({"a": "0", "b": "0/5"}).description == "a = b = 0"
    assert record.case_for({"a": "2"}) is None


def test_same_params():
    assert same_params({"a": "1/2"}, {"a": "2/4"})
    assert not same_params({"a": "1"}, {"a": "1", "b": "0"})


def test_use_dataset(tmp_path):
    with pytest.raises(DatasetError):
        use_dataset(str(tmp_path / "missing.json"))
    assert family_by_number(130).ws == WeightSystem((3, 4, 5, 6, 7), 12)
    use_dataset(DATASET_PATH)
    assert len(spade_families()) == 20


def test_use_dataset_rejects_a_singular_case(tmp_path):
    with open(DATASET_PATH) as stream:
        dataset = json.load(stream)
    entry = next(e for e in dataset["spade"] if e["family_no"] == 115)
    case = next(c for c in entry["expected"]["finite_parts"] if c["case"] == "(a, b, c) = (a, b, b)")
    case["params"] = {"a": "1", "b": "1", "c": "1", "d": "1"}
    path = tmp_path / "families.json"
    path.write_text(json.dumps(dataset))
    with pytest.raises(SingularCaseError, match="No.115"):
        use_dataset(str(path))
    assert family_by_number(115).case_for({"a": "1", "b": "2", "c": "2"}).description == "(a, b, c) = (a, b, b)"


def test_same_member():
    record = family_by_number(112)
    F = instantiate(record)
    assert same_member(F * 3, F)
    assert not same_member(F + instantiate(record, poly="x^6"), F)


@pytest.mark.parametrize("text, form", [
    ("t*w + z^3 + x^6 + y^6", ShapeRule.ABSENT),
    ("t*w + z^3 + x^3*y*z + y^6", ShapeRule.MONOMIAL),
    ("t*w + z^3 + (x^4 + y^4)*z + y^6", ShapeRule.GENERAL),
])
def test_coefficient_form(text, form):
    assert coefficient_form(instantiate(family_by_number(112), poly=text), "z") == form


def test_shape_for_prefers_a_stored_case():
    record = family_by_number(112)
    F = instantiate(record, poly="2*t*w + 2*z^3 + 2*x^6 + 2*y^6")
    assert record.shape_for(F)["lattice"] == ["z"]
    case = next(c for c in record.expected.finite_parts if c.description == "general f4 and f6")
    assert record.shape_for(instantiate(record, poly=case.poly)) == case.shape


def test_shape_for_falls_back_to_the_rules_and_the_family_shape():
    record = family_by_number(112)
    absent, general = record.shape_rules
    assert record.shape_for(instantiate(record, poly="t*w + z^3 + x^6 - y^6")) == absent.shape
    assert record.shape_for(instantiate(record, poly="t*w + z^3 + (x^4 + 2*y^4)*z + y^6")) == general.shape
    assert record.shape_for(instantiate(record, poly="t*w + z^3 + x^3*y*z + x^6 + y^6")) == record.shape
    assert family_by_number(130).shape_for(instantiate(family_by_number(130))) == family_by_number(130).shape


def test_every_shape_states_its_argument():
    for record in spade_families():
        shapes = [record.shape] + [rule.shape for rule in record.shape_rules]
        shapes += [case.shape for case in record.expected.finite_parts if case.shape]
        assert all(shape.get("argument") for shape in shapes), record


def test_shape_rules_need_a_known_form():
    with pytest.raises(DatasetError):
        ShapeRule("z", "quadratic", {"swap": True})
