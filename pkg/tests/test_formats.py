import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmkit import all_congruences, make_chain, make_product
from lmkit.checks import bundled_specs, default_corpus
from lmkit.errors import InvalidInput, InvalidN, ParseError, ValidationError
from lmkit.formats import FORMAT, algebra_from_dict, algebra_to_dict, dump_algebra, load_algebra, parse_spec

C3_EXPLICIT = {
    "format": FORMAT,
    "kind": "explicit",
    "n": 3,
    "elements": ["0", "e", "1"],
    "leq": [["0", "e"], ["e", "1"]],
    "phi": {"1": {"0": "0", "e": "0", "1": "1"}, "2": {"0": "0", "e": "1", "1": "1"}},
}


def test_chain_spec():
    A = parse_spec('{"format": "lmkit-algebra/1", "kind": "chain", "n": 3}')
    assert A.phi == make_chain(3).phi


def test_subchain_spec():
    A = parse_spec('{"format": "lmkit-algebra/1", "kind": "chain", "n": 5, "values": [0, 2, 4]}')
    assert A.names == ("0", "1/2", "1")


def test_product_spec_with_untagged_factors():
    text = json.dumps({"format": FORMAT, "kind": "product", "factors": [{"kind": "chain", "n": 3}] * 2})
    A = parse_spec(text)
    B = make_product(make_chain(3), make_chain(3))
    assert A.names == B.names and A.phi == B.phi


def test_explicit_spec_and_name():
    A = algebra_from_dict(dict(C3_EXPLICIT, name="three"))
    assert A.name == "three"
    assert A.phi == make_chain(3).phi


def test_swapped_phi_tables_fail_l4():
    spec = dict(C3_EXPLICIT, phi={"1": C3_EXPLICIT["phi"]["2"], "2": C3_EXPLICIT["phi"]["1"]})
    with pytest.raises(ValidationError) as info:
        algebra_from_dict(spec)
    assert "L4" in str(info.value)
    assert info.value.violations[0].axiom == "L4"


@pytest.mark.parametrize(
    "spec, fragment",
    [
        ({"kind": "chain", "n": 3}, '"format"'),
        ({"format": "lmkit-algebra/2", "kind": "chain", "n": 3}, '"format"'),
        ({"format": FORMAT, "kind": "ring", "n": 3}, "unknown kind"),
        ({"format": FORMAT, "kind": "chain", "n": 3, "colour": "red"}, "colour"),
        ({"format": FORMAT, "kind": "chain"}, "missing"),
        ({"format": FORMAT, "kind": "chain", "n": "3"}, '"n"'),
        ({"format": FORMAT, "kind": "chain", "n": True}, '"n"'),
        ({"format": FORMAT, "kind": "product", "factors": []}, '"factors"'),
        (dict(C3_EXPLICIT, phi={"one": {}}), "phi index"),
        (dict(C3_EXPLICIT, leq=[["0"]]), '"leq"'),
        ([1, 2], "JSON object"),
    ],
)
def test_malformed_specs(spec, fragment):
    with pytest.raises(ParseError, match=fragment):
        algebra_from_dict(spec)


def test_bad_json():
    with pytest.raises(ParseError, match="invalid JSON"):
        parse_spec("{not json")


def test_structural_errors_are_input_errors():
    with pytest.raises(InvalidN):
        parse_spec('{"format": "lmkit-algebra/1", "kind": "chain", "n": 1}')
    spec = dict(C3_EXPLICIT, leq=[["0", "e"], ["0", "1"]])  # e and 1 both maximal
    with pytest.raises(InvalidInput):
        algebra_from_dict(spec)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_algebra(tmp_path / "absent.json")


@pytest.mark.parametrize("entry", default_corpus(), ids=lambda e: e.label)
def test_dump_round_trip(entry, tmp_path):
    A = entry.build()
    path = tmp_path / "a.json"
    path.write_text(dump_algebra(A))
    B = load_algebra(path)
    assert (B.names, B.phi, B.poset.covers, B.n) == (A.names, A.phi, A.poset.covers, A.n)


def test_bundled_specs_parse():
    specs = bundled_specs()
    assert len(specs) == 4
    for entry in specs:
        A = algebra_from_dict(entry.spec)
        assert A.n == 3 and entry.label


def test_corrupted_fixture_fails_l2(data_dir):
    with pytest.raises(ValidationError) as info:
        load_algebra(data_dir / "staircase_not_closed.json")
    assert "L2" in {v.axiom for v in info.value.violations}


def test_serialisation_is_stable(c3xc3):
    assert dump_algebra(c3xc3) == dump_algebra(algebra_from_dict(algebra_to_dict(c3xc3)))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 5), st.data())
def test_generated_chain_specs(n, data):
    inner = data.draw(st.lists(st.integers(1, n - 2), unique=True)) if n > 2 else []
    values = sorted({0, n - 1, *inner})
    A = parse_spec(json.dumps({"format": FORMAT, "kind": "chain", "n": n, "values": values}))
    assert A.size == len(values)
    assert len(all_congruences(A)) == 2
