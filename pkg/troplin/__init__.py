from .backend.documents import (
    DocumentError,
    parse_matrix,
    read_matrix,
    tree_document,
    tree_from_document,
)
from .backend.newick import parse_newick, to_newick
from .core.builder import LineBuilder, build_tree, trace_line
from .core.differences import build_F, find_fracture
from .core.lines4 import classify_type4, line4, pluecker, vertices4
from .core.maxplus import (
    canonicalize,
    primitive_direction,
    rank2_membership,
    tconv,
    trop_det,
    trop_distance,
    trop_matmul,
)
from .core.nimatrix import (
    check_ni,
    closure,
    complete_two_columns,
    is_ni,
    random_ni,
    validate_ni,
)
from .core.oracle import cross_check_n4, run_sweep, verify_tree
from .utils.config import read_config
from .utils.get_data import example_matrix, get_example_data
