import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schurlike.eigen_num import LambdaMatrix
from schurlike.errors import ParseError
from schurlike.exact_ring import QQ, GaussianRational, RingMatrix
from schurlike.io import (
    RING_NAMES, matrix_from_dict, matrix_to_dict, parse_annihilator, parse_poly_string, read_graph,
    read_lambda_matrix, read_matrix, write_graph, write_lambda_matrix, write_matrix,
)
from schurlike.srg import PETERSEN_PARAMS, petersen

SAMPLES = {
    "int": [[1, -2], [0, 7]],
    "rat": [[1, "1/2"], ["-3/4", 0]],
    "gauss-rat": [[[1, 2], [0, "1/3"]], [[-1, 0], [5, -5]]],
    "poly-rat": [[[0, 1], [1]], [[2, 0, "1/2"], [0]]],
    "ratfunc-rat": [[{"num": [1], "den": [-1, 1]}, [1]], [[0, 1], {"num": [3], "den": [2]}]],
    "complex64": [[[1.5, -2.0], 0.25], [[0, 1], 3]],
}


@pytest.mark.parametrize("name", sorted(RING_NAMES))
def test_round_trip(name, tmp_path):
    doc = {"ring": name, "rows": 2, "cols": 2, "entries": SAMPLES[name]}
    M = matrix_from_dict(doc)
    assert M.ring == RING_NAMES[name]
    path = tmp_path / "m.json"
    write_matrix(M, path)
    assert read_matrix(path) == M
    assert matrix_from_dict(json.loads(path.read_text())) == M


def test_flat_entries():
    M = matrix_from_dict({"ring": "rat", "rows": 2, "cols": 3, "entries": [1, 2, 3, "4/5", 5, 6]})
    assert M.shape == (2, 3)
    assert M[1, 0] == QQ.convert(Fraction(4, 5))


def test_entry_values():
    M = matrix_from_dict({"ring": "gauss-rat", "rows": 1, "cols": 2, "entries": [[1, 2], 3]})
    assert M.to_lists() == [[GaussianRational(1, 2), GaussianRational(3, 0)]]
    d = matrix_to_dict(M)
    assert d["entries"] == [[[1, 2], [3, 0]]]


@settings(max_examples=40)
@given(st.lists(st.fractions(max_denominator=50), min_size=4, max_size=4))
def test_rational_round_trip_property(vals):
    M = RingMatrix(QQ, [[QQ.convert(v) for v in vals[:2]], [QQ.convert(v) for v in vals[2:]]])
    assert matrix_from_dict(json.loads(json.dumps(matrix_to_dict(M)))) == M


@pytest.mark.parametrize("doc", [
    {"ring": "int", "rows": 1, "cols": 2, "entries": [1]},
    {"ring": "int", "rows": 1, "cols": 1, "entries": ["1/2"]},
    {"ring": "nope", "rows": 1, "cols": 1, "entries": [1]},
    {"ring": "rat", "rows": 1, "cols": 1, "entries": ["x"]},
    {"ring": "rat", "rows": 1, "cols": 1, "entries": [True]},
    {"ring": "ratfunc-rat", "rows": 1, "cols": 1, "entries": [{"num": [1], "den": [0]}]},
    {"ring": "gauss-rat", "rows": 1, "cols": 1, "entries": [[1, 2, 3]]},
    {"rows": 1, "cols": 1, "entries": [1]},
    {"ring": "int", "rows": 1, "cols": 1, "entries": 5},
])
def test_bad_matrix_documents(doc):
    with pytest.raises(ParseError):
        matrix_from_dict(doc)


def test_unreadable_files(tmp_path):
    with pytest.raises(ParseError):
        read_matrix(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        read_matrix(bad)


def test_lambda_matrix_round_trip(tmp_path):
    L = LambdaMatrix([[[1 + 2j, 0], [0, 1]], [[0, -1], [3, 0]], np.eye(2)])
    path = tmp_path / "L.json"
    write_lambda_matrix(L, path)
    assert read_lambda_matrix(path).allclose(L)
    with pytest.raises(ParseError):
        read_lambda_matrix({"nothing": 1})


class TestGraphs:
    def test_edges(self):
        A, params = read_graph({"n": 3, "edges": [[0, 1], [1, 2]]})
        assert A.tolist() == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
        assert params is None

    def test_directed_edges(self):
        A, _ = read_graph({"n": 2, "edges": [[0, 1]], "directed": True})
        assert A.tolist() == [[0, 1], [0, 0]]

    def test_round_trip(self, tmp_path):
        path = tmp_path / "g.json"
        write_graph(petersen(), path, PETERSEN_PARAMS)
        A, params = read_graph(path)
        assert np.array_equal(A, petersen())
        assert params == PETERSEN_PARAMS

    def test_params_as_object(self):
        doc = {"n": 2, "edges": [[0, 1]], "srg_params": {"n": 2, "k": 1, "mu": 0, "alpha": 0, "t": 1}}
        assert read_graph(doc)[1].as_tuple() == (2, 1, 0, 0, 1)

    @pytest.mark.parametrize("doc", [
        {"edges": [[0, 1]]},
        {"n": 2, "edges": [[0, 5]]},
        {"n": 3, "adjacency": [[0, 1], [1, 0]]},
        {"n": 2, "edges": [[0, 1]], "srg_params": [1, 2]},
        [1, 2],
    ])
    def test_bad(self, doc):
        with pytest.raises(ParseError):
            read_graph(doc)


class TestAnnihilators:
    def test_poly_strings(self):
        assert parse_poly_string("x^3-2*x^2-5*x+6") == [6, -5, -2, 1]
        assert parse_poly_string("2x - 1/2") == [Fraction(-1, 2), 2]
        assert parse_poly_string("lam**2 - 1") == [-1, 0, 1]
        assert parse_poly_string("5") == [5]
        assert parse_poly_string("x^2 + x^2") == [0, 0, 2]

    @pytest.mark.parametrize("text", ["", "x^2 + y", "x x", "3 4", "x^^2", "*x"])
    def test_bad_strings(self, text):
        with pytest.raises(ParseError):
            parse_poly_string(text)

    def test_forms(self, tmp_path):
        want = [-1, 0, 1]
        assert parse_annihilator("auto") == "auto"
        assert list(parse_annihilator("[-1, 0, 1]").coeffs) == want
        assert list(parse_annihilator("-1, 0, 1").coeffs) == want
        assert list(parse_annihilator("x^2 - 1").coeffs) == want
        f1 = tmp_path / "a.json"
        f1.write_text(json.dumps({"coefficients": want}))
        assert list(parse_annihilator(str(f1)).coeffs) == want
        f2 = tmp_path / "a.txt"
        f2.write_text("x^2 - 1\n")
        assert list(parse_annihilator(str(f2)).coeffs) == want
        f3 = tmp_path / "b.json"
        f3.write_text('"x^2-1"')
        assert list(parse_annihilator(str(f3)).coeffs) == want

    @pytest.mark.parametrize("src", ["[0, 0]", "[]", "[1, ", "0"])
    def test_bad_annihilators(self, src):
        with pytest.raises(ParseError):
            parse_annihilator(src)
