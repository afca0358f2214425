"""Finite-section laboratory for Toeplitz and Hankel operators on the
Hardy and Bergman spaces of a concentric annulus."""

from .errors import (
    AliasingError,
    GridMismatchError,
    IllConditionedError,
    WindowTooSmallError,
    ZeroProfileError,
)
from .geometry import (
    AnnulusGeometry,
    BoundaryData,
    bergman_norm_const,
    boundary_inner_product,
    gram_matrix,
    hardy_norm_const,
)
from .symbols import (
    ExactCircle,
    ExactSymbol,
    PolarSymbol,
    PolyProfile,
    SampledCircle,
    SampledProfile,
    SampledSymbol,
    conjugate_symbol,
    constant_symbol,
    fourier_pair,
    laurent_symbol,
    multiply_symbols,
    pullback_symbols,
    read_symbol,
    sample_symbol,
    single_band,
    write_symbol,
)
from .mellin import (
    mellin_poly_reconstruct,
    mellin_quadrature,
    mellin_transform,
    mellin_zero_locate,
    monomial_moment,
)
from .hardy import (
    HardyZeroProductReport,
    TruncatedOperator,
    apply_multiplier_coeffs,
    build_hankel_annulus,
    build_section_quadrature,
    build_toeplitz_hardy,
    column_zero_recover,
    find_n0_hardy,
    semicommutator_residual_annulus,
    toeplitz_entry,
    zero_product_experiment_hardy,
)
from .reduction import (
    DecayProfile,
    ReducedZeroProductReport,
    build_disc_hankel,
    build_disc_toeplitz,
    conjugate_basis_coeffs,
    diagram_residual,
    hankel_compactness_indicator,
    semicommutator_residual_disc,
    split_relation_residual,
    t_diag,
    zero_product_experiment_reduced,
)
from .bergman import (
    BergmanOperatorSection,
    BergmanZeroProductReport,
    build_bergman_toeplitz,
    find_n0_bergman,
    quasi_homogeneous_apply,
    zero_product_experiment_bergman,
)
from .randgen import Lcg, random_boundary_symbol, random_polar_symbol
from .reference import (
    conjugated_singular_inner_symbol,
    reference_symbol,
    singular_inner_coeffs,
    smooth_decay_symbol,
)

__version__ = "0.1.0"
