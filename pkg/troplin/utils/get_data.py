"""
This script/module contains the function get_example_data which writes the worked example matrices (4 x 4 and 7 x 7) as matrix documents.

If using as a script, you can simply run: `python -m troplin.utils.get_data`.
"""

import logging
import os
from pathlib import Path

import numpy as np

from ..backend.documents import dumps, matrix_document
from ..core.maxplus import as_matrix

logger = logging.getLogger(__name__)

# columns 1, 2 as printed, the remaining entries chosen in [-20, -10]
EXAMPLE45 = [
    [0, -12, -10, -10],
    [-10, 0, -10, -10],
    [-11, -14, 0, -15],
    [-15, -13, -15, 0],
]

_COLUMN1 = (0, -15, -17, -16, -20, -18, -27)
_COLUMN2 = (-19, 0, -14, -14, -21, -17, -15)


def _example54():
    rows = [[-14] * 7 for _ in range(7)]
    for r in range(7):
        rows[r][r] = 0
        rows[r][0] = _COLUMN1[r]
        rows[r][1] = _COLUMN2[r]
    return rows


EXAMPLES = {"example45": EXAMPLE45, "example54": _example54()}


def example_matrix(name: str) -> np.ndarray:
    """
    One of the worked example matrices.

    Parameters
    ----------
    name : str
        "example45" (4 x 4, line of type {13,24}) or "example54" (7 x 7, line with four
        spine edges; the entries outside columns 1 and 2 are -14 off the diagonal).

    Returns
    ----------
    np.ndarray
        Fresh object array of exact scalars.

    Raises
    ----------
    KeyError
        If the name is unknown.
    """
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}, choose from {', '.join(EXAMPLES)}")
    return as_matrix(EXAMPLES[name])


def get_example_data():
    """
    Write the example matrices to data/example_data under the current directory.

    Returns
    ----------
    list of Path
        The files written, one JSON matrix document per example.
    """
    cwd = Path(os.getcwd()).resolve()
    example_data_dir = Path(cwd, "data", "example_data")
    example_data_dir.mkdir(parents=True, exist_ok=True)

    written = []
    for name in EXAMPLES:
        target_loc = Path(example_data_dir, name + ".json")
        target_loc.write_text(dumps(matrix_document(example_matrix(name))) + "\n")
        logger.info("%s --> %s", name, target_loc)
        written.append(target_loc)
    return written


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    get_example_data()
