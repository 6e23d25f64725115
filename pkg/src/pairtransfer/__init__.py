"""Laplacian pair state transfer on graphs with twin-vertex edge perturbations."""

from .errors import GraphError, NumericalError, PreconditionError
from .graph import (
    Graph,
    PairState,
    Perturbation,
    all_twin_pairs,
    are_twins,
    laplacian,
    neighbors,
    perturb,
)
from .spectral import (
    SpectralDecomposition,
    decompose,
    decompose_graph,
    evolve,
    pair_fidelity,
    verify_lemma1,
)
from .transfer import (
    SearchConfig,
    TransferCertificate,
    apply_lpst_preservation,
    apply_periodicity_to_lpst,
    apply_pgst_preservation,
    check_no_lpst_twin_pair,
    check_pair_lpst,
    construct_kn_minus_edge,
    construct_kn_minus_matching,
    scan_fidelity,
    search_pgst,
)

__version__ = "0.1.0"
