"""Rank-2 Cohen-Macaulay modules over the boundary algebra B_{k,n} for tight profiles."""

from .series import DEFAULT_TRUNCATION, Matrix, SeriesRing, TruncatedSeries
from .combinat import (
    InterlacingReport,
    ModelReduction,
    Rim,
    height_profile,
    interlacing,
    model_reduction,
    peaks,
    valleys,
)
from .cmmod import QuiverRep, RankTwoSpec, build_rank1, build_rank2, direct_sum, verify_relations
from .classify import (
    DecompositionResult,
    EndoCorner,
    EndoFamily,
    PairPattern,
    PeakSubset,
    decompose,
    endo_from_corner,
    enumerate_decomposables,
    is_indecomposable,
    pair_pattern,
    pattern_for_peaks,
    peaks_for_pattern,
    rims_from_peaks,
    sample_b,
)
from .oracle import HomSpace, decompose_exhaustive, hom_space, is_split_summand
from .render import emit, layout_decomposition, layout_profile, layout_rim

__version__ = "0.1.0"
