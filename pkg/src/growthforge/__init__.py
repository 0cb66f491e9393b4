"""Exact growth computations for abelian-by-cyclic and integer matrix groups."""

__version__ = "0.1.0"

from .exact import IntMatrix, IntPolynomial, Lattice, hnf_saturate, matrix_arithmetic, poly_divide
from .groups import (
    GeneratingSet,
    GroupSpec,
    Word,
    canonical_encode,
    commutator,
    element_compose,
    element_invert,
    evaluate_word,
    finite_index_generators,
)
from .growth import GrowthReport, enumerate_ball, rate_bounds
from .spectra import (
    annihilator_poly,
    char_poly,
    has_modulus_ge,
    kronecker_all_roots_of_unity,
    power_for_threshold,
    roots_in_open_disk,
    spectrum_all_roots_of_unity,
)
from .specfile import parse_group_spec, serialize_group_spec
from .witness import (
    Classification,
    FreeSemigroupWitness,
    classify_split_extension,
    free_pair_standard,
    verify_free_semigroup,
    witness_search,
)
