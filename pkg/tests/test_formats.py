import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monorep.builders import builtin
from monorep.formats import ParseError, format_table_text, load_monoid, parse_generator_json, parse_table_text


@given(st.sampled_from(["sing2x2", "T2", "C6", "Mp(2)"]))
def test_table_roundtrip(name):
    M = builtin(name)
    N = parse_table_text(format_table_text(M))
    assert (N.table == M.table).all() and N.identity == M.identity


def test_comments_and_blank_lines():
    M = parse_table_text("# two element\n\n2 0\n0 1\n# row two\n1 1\n")
    assert M.size == 2


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("2 0\n0 1\n1 x\n", 3, 3),
        ("2\n0 1\n1 1\n", 1, 1),
        ("2 0\n0 1\n", 3, 1),
        ("2 0\n0 1 1\n1 1\n", 2, 5),
        ("2 5\n0 1\n1 1\n", 1, 3),
    ],
)
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as ei:
        parse_table_text(text)
    assert (ei.value.line, ei.value.col) == (line, col)
    assert f"line {line}, column {col}" in str(ei.value)


def test_generator_json_kinds():
    assert parse_generator_json({"kind": "transformations", "degree": 3, "generators": [[1, 2, 0], [1, 0, 2], [0, 0, 2]]}).size == 27
    assert parse_generator_json({"kind": "gf_matrices", "n": 1, "q": 4, "generators": [[[2]], [[0]]]}).size == 4
    assert parse_generator_json({"kind": "table", "table": [[0, 1], [1, 1]]}).size == 2
    assert parse_generator_json({"kind": "builtin", "name": "T2"}).size == 4
    with pytest.raises(ParseError):
        parse_generator_json({"kind": "transformations"})
    with pytest.raises(ParseError):
        parse_generator_json([1, 2])


def test_load_monoid_paths(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text(format_table_text(builtin("sing2x2")))
    assert load_monoid(str(p)).size == 11
    j = tmp_path / "g.json"
    j.write_text(json.dumps({"kind": "transformations", "degree": 2, "generators": [[1, 0], [0, 0]]}))
    assert load_monoid(str(j)).size == 4
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": \n  oops}')
    with pytest.raises(ParseError) as ei:
        load_monoid(str(bad))
    assert ei.value.line == 2
