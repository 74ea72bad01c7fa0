import re

import pytest

from lmkit import all_congruences, dual_space, emit_dot, make_chain
from lmkit.congruence import THETA


def nodes(text):
    return re.findall(r"^  n\d+ \[label=", text, re.M)


def hasse_edges(text):
    return re.findall(r"^  n(\d+) -> n(\d+) \[arrowhead=none\];", text, re.M)


def test_chain_dot(c3):
    text = emit_dot(c3)
    assert text.startswith('digraph "C3" {')
    assert len(nodes(text)) == 3
    assert hasse_edges(text) == [("0", "1"), ("1", "2")]


def test_space_dot(c3):
    text = emit_dot(dual_space(c3))
    assert len(nodes(text)) == 2
    assert hasse_edges(text) == [("0", "1")]
    dashed = re.findall(r'style=dashed, constraint=false, label="(f\d)"', text)
    assert sorted(dashed) == ["f1", "f2"]


def test_congruence_lattice_dot(c3xc3):
    text = emit_dot(all_congruences(c3xc3))
    assert len(nodes(text)) == 4
    assert sorted(hasse_edges(text)) == [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3")]
    assert "shape=box" in text
    assert emit_dot(all_congruences(c3xc3, THETA)).startswith('digraph "Con_theta(')


def test_output_is_deterministic(c3xc3):
    for obj in (c3xc3, dual_space(c3xc3), all_congruences(c3xc3)):
        assert emit_dot(obj) == emit_dot(obj)
    assert emit_dot(make_chain(4)) == emit_dot(make_chain(4))


def test_names_are_quoted():
    text = emit_dot(make_chain(3))
    assert 'label="1/2"' in text


def test_unsupported_object():
    with pytest.raises(TypeError):
        emit_dot(42)
