import json

import pytest

from setchoose.formats import (
    from_edgelist,
    lists_from_json,
    lists_to_json,
    to_dot,
    to_edgelist,
)
from setchoose.gadgets import build
from setchoose.model import StructuralError


def test_dot_contains_nodes_lists_and_edges():
    pentagon = build("pentagon")
    dot = to_dot(pentagon.graph, pentagon.base_lists)
    assert dot.startswith("graph ")
    assert '"v1" [lists="1,2,5,6"];' in dot
    assert '"v1" -- "v2";' in dot
    assert dot.rstrip().endswith("}")


def test_dot_without_lists():
    pentagon = build("pentagon")
    dot = to_dot(pentagon.graph)
    assert "lists=" not in dot
    assert '"v3";' in dot


def test_edgelist_roundtrip_preserves_labels_and_edges():
    g3 = build("g3")
    text = to_edgelist(g3.graph)
    assert text.splitlines()[0] == "p edge 23 36"
    parsed = from_edgelist(text)
    assert parsed == g3.graph


def test_edgelist_without_labels_gets_numeric_names():
    pentagon = build("pentagon")
    parsed = from_edgelist(to_edgelist(pentagon.graph, include_labels=False))
    assert parsed.labels == ("1", "2", "3", "4", "5")
    assert parsed.edge_list == pentagon.graph.edge_list


@pytest.mark.parametrize(
    "text",
    [
        "1 2\n",  # edge before header
        "p edge 2 1\np edge 2 1\n1 2\n",  # duplicate header
        "p edge 2 2\n1 2\n",  # edge count mismatch
        "p edge 2 1\n1 3\n",  # vertex out of range
        "p foo 2 1\n1 2\n",  # bad problem type
    ],
)
def test_edgelist_parse_errors(text):
    with pytest.raises(StructuralError):
        from_edgelist(text)


def test_lists_json_roundtrip():
    g2 = build("g2")
    text = lists_to_json(g2.graph, g2.base_lists)
    data = json.loads(text)
    assert data["y3"] == [1, 2, 3, 4]
    assert lists_from_json(g2.graph, text) == g2.base_lists


def test_lists_json_domain_mismatch():
    g1 = build("g1")
    g2 = build("g2")
    text = lists_to_json(g1.graph, g1.base_lists)
    with pytest.raises(StructuralError):
        lists_from_json(g2.graph, text)
