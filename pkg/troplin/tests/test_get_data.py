"""
This module contains tests for the worked example matrices in troplin.utils.get_data.

Contains tests: test_example_matrix, test_get_example_data
"""

import pytest

from troplin.backend.documents import read_matrix
from troplin.core.nimatrix import is_ni
from troplin.utils.get_data import EXAMPLES, example_matrix, get_example_data


def test_example_matrix():
    A = example_matrix("example54")
    assert A.shape == (7, 7)
    assert list(A[:, 0]) == [0, -15, -17, -16, -20, -18, -27]
    assert list(A[:, 1]) == [-19, 0, -14, -14, -21, -17, -15]
    assert A[2, 3] == -14
    assert is_ni(A)
    with pytest.raises(KeyError):
        example_matrix("example99")


def test_get_example_data(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    written = get_example_data()
    assert sorted(p.name for p in written) == sorted(name + ".json" for name in EXAMPLES)
    for path in written:
        assert path.parent == tmp_path.resolve() / "data" / "example_data"
        assert read_matrix(path).tolist() == example_matrix(path.stem).tolist()
