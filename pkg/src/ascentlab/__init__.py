"""Exact enumeration, bijections and first-ascent laws for 123-avoiding permutations."""
from .bijections import (
    check_mu_structure,
    krattenthaler_from_path,
    krattenthaler_to_path,
    path_shift,
    phi_inverse,
    phi_max_position,
)
from .catalan import (
    CountTable,
    catalan,
    catalan_convolution,
    convolution_by_definition,
    convolution_table_recursive,
    count_good_paths,
)
from .core import (
    LatticePath,
    Permutation,
    RlmDecomposition,
    first_ascent_position,
    is_123_avoiding,
    parse_permutation,
    position_of_max,
    right_to_left_maxima,
)
from .oracle import Census, census, enumerate_avoiders_bruteforce, grow_avoiders

__version__ = "0.1.0"
