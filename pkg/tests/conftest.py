import json

import pytest

from genpos import Configuration, Subspace


@pytest.fixture
def triangle():
    return Configuration(2, ((0, 0), (1, 0), (0, 1)))


@pytest.fixture
def square():
    return Configuration(2, ((0, 0), (0, 1), (1, 0), (1, 1)))


@pytest.fixture
def collinear3():
    return Configuration(2, ((0, 0), (1, 0), (2, 0)))


@pytest.fixture
def xaxis():
    return Subspace(2, ((1, 0),))


@pytest.fixture
def yaxis():
    return Subspace(2, ((0, 1),))


@pytest.fixture
def fixture_files(tmp_path):
    """Write the standard fixture JSON files and return their paths."""
    paths = {}
    docs = {
        "triangle": {"dimension": 2, "points": [["0", "0"], ["1", "0"], ["0", "1"]]},
        "square": {
            "dimension": 2,
            "points": [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]],
        },
        "collinear3": {
            "dimension": 2,
            "points": [["0", "0"], ["1", "0"], ["2", "0"]],
        },
        "xaxis": {"ambient_dimension": 2, "generators": [["1", "0"]]},
        "yaxis": {"ambient_dimension": 2, "generators": [["0", "1"]]},
    }
    for name, doc in docs.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        paths[name] = str(path)
    return paths
