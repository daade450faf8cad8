import pytest
from hypothesis import given, strategies as st

from almostfisher.constructions import hadamard_sylvester, k3_family
from almostfisher.errors import FamilyError, FormatError
from almostfisher.family import SetFamily
from almostfisher.formats import (
    CSV_COLUMNS,
    load_family,
    parse_family,
    parse_graph,
    parse_hadamard,
    parse_search_csv,
    search_csv,
    serialize_family,
    serialize_hadamard,
)
from almostfisher.search import brute_force_max_family

H4_DOC = """{
  "n": 4,
  "lambda": 1,
  "k": 1,
  "sets": [
    [1, 2],
    [3, 4],
    [1, 3],
    [2, 4],
    [1, 4],
    [2, 3]
  ]
}
"""


def test_serialize_is_canonical(h4):
    assert serialize_family(h4, 1, 1) == H4_DOC
    assert serialize_family(SetFamily(3, ()), None, None) == '{\n  "n": 3,\n  "sets": []\n}\n'


def test_parse_round_trip(h4, tmp_path):
    doc = parse_family(H4_DOC)
    assert doc.family == h4 and doc.lam == 1 and doc.k == 1
    path = tmp_path / "h4.json"
    path.write_text(H4_DOC)
    assert load_family(str(path)).family == h4


@given(st.integers(1, 10).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), unique=True, max_size=12))))
def test_round_trip_property(data):
    n, masks = data
    fam = SetFamily(n, tuple(masks))
    text = serialize_family(fam, 2, 1)
    assert parse_family(text).family == fam
    assert serialize_family(parse_family(text).family, 2, 1) == text


def test_parse_reports_json_position():
    with pytest.raises(FormatError) as exc:
        parse_family('{\n  "n": 4,\n  "sets": [[1, 2],,]\n}')
    assert exc.value.line == 3 and exc.value.column == 19
    assert "(line 3, column 19)" in str(exc.value)


@pytest.mark.parametrize("text,match", [
    ('[1, 2]', "JSON object"),
    ('{"n": 0, "sets": []}', '"n"'),
    ('{"n": 3}', '"sets"'),
    ('{"n": 3, "sets": [[1, "a"]]}', "set 0"),
    ('{"n": 3, "sets": [[1, 1]]}', "repeats"),
    ('{"n": 3, "sets": [], "lambda": -1}', '"lambda"'),
    ('{"n": 3, "sets": [], "extra": 1}', "unknown field"),
])
def test_parse_format_errors(text, match):
    with pytest.raises(FormatError, match=match):
        parse_family(text)


def test_parse_family_errors_name_indices():
    with pytest.raises(FamilyError, match="indices 0 and 2") as exc:
        parse_family('{"n": 3, "sets": [[1], [2], [1]]}')
    assert exc.value.indices == (0, 2)
    with pytest.raises(FamilyError, match="out of range"):
        parse_family('{"n": 3, "sets": [[0]]}')


def test_hadamard_round_trip():
    h = hadamard_sylvester(8)
    text = serialize_hadamard(h)
    assert text.splitlines()[1] == "+1 -1 +1 -1 +1 -1 +1 -1"
    assert parse_hadamard(text) == h
    assert parse_hadamard("1 1\n\n1 -1\n") == hadamard_sylvester(2)


@pytest.mark.parametrize("text,line,column", [
    ("+1 +1\n+1 2\n", 2, 4),
    ("+1 x\n", 1, 4),
])
def test_hadamard_token_errors(text, line, column):
    with pytest.raises(FormatError) as exc:
        parse_hadamard(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_hadamard_shape_errors():
    with pytest.raises(FormatError, match="square"):
        parse_hadamard("1 1\n1\n")
    with pytest.raises(FormatError, match="not a Hadamard"):
        parse_hadamard("1 1\n1 1\n")
    with pytest.raises(FormatError, match="empty"):
        parse_hadamard("\n\n")


def test_parse_graph():
    g = parse_graph('{"vertex_count": 3, "edges": [[0, 1], [1, 2]]}')
    assert g.vertex_count == 3 and g.max_degree == 2
    with pytest.raises(FormatError):
        parse_graph('{"vertex_count": 3, "edges": [[0, 1, 2]]}')
    with pytest.raises(FormatError):
        parse_graph('{"edges": []}')
    with pytest.raises(FormatError):
        parse_graph('{"vertex_count": 2, "edges": [[0, 5]]}')


def test_search_csv_round_trip():
    results = [brute_force_max_family(2, 0, 0), brute_force_max_family(4, 1, 1)]
    text = search_csv(results)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    rows = parse_search_csv(text)
    assert [(r["n"], r["f"], r["certified"]) for r in rows] == [(2, 3, True), (4, 6, True)]
    assert rows[1]["witness_id"] == results[1].witness_id


def test_search_csv_errors():
    with pytest.raises(FormatError):
        parse_search_csv("a,b\n1,2\n")
    with pytest.raises(FormatError) as exc:
        parse_search_csv(",".join(CSV_COLUMNS) + "\n1,2,3,x,true,ff\n")
    assert exc.value.line == 2


def test_large_family_serializes():
    fam = k3_family(2, 7)
    assert parse_family(serialize_family(fam, 2, 3)).family == fam
