"""Algebraic analysis of ordinal symbol series through transcripts.

The package maps real time series to ordinal patterns in Sym(L), relates
pairs of symbol series through transcripts ``T(a, b) = b . a^-1``, and
measures coupling with entropies, mutual informations and the Cayley and
Kendall distances.  :mod:`transcripta.henon` holds the coupled Hénon
experiments.
"""

__version__ = "0.1.0"

from .groups import (  # noqa: E402
    METRICS,
    Admissible,
    DistanceMatrix,
    FiniteGroup,
    GroupAxiomError,
    GroupElement,
    Permutation,
    admissible_distances,
    cayley_distance,
    cayley_embed,
    compose_right,
    conjugate_transcript,
    cycle_count,
    cyclic_group,
    distance_matrix,
    element_order,
    group_norms,
    inversion_count,
    invert,
    kendall_distance,
    klein_group,
    load_group,
    order_classes,
    permutation_transcript,
    symmetric_group,
    transcript,
)
from .symbolization import (  # noqa: E402
    RealSeries,
    SymbolSeries,
    TranscriptSeries,
    from_permutations,
    index_to_permutation,
    ordinal_pattern,
    pairwise_transcriptions,
    permutation_index,
    symbolize,
    transcribe,
)
from .entropy import (  # noqa: E402
    JointDist,
    ProbDist,
    estimate_dist,
    estimate_joint,
    independent_product_dist,
    js_distance,
    js_divergence,
    kl_divergence,
    normalized_entropy,
    shannon_entropy,
    statistical_complexity,
    symmetrized_kl,
    transcript_dist_from_joint,
)
from .coupling import (  # noqa: E402
    CouplingReport,
    ccc,
    coupling_report,
    directionality_indicator,
    mutual_information,
    symbolic_transfer_entropy,
    transcript_mutual_information,
)
from .metrics import (  # noqa: E402
    DistanceSeries,
    OrderClassDist,
    distance_distribution,
    distance_series,
    lump_by_order_class,
    similarity_distance,
    sliding_lp_series,
    window_lp_distance,
)
