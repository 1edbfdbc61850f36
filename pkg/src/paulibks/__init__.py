"""Exact rays of the multi-qubit Pauli groups, parity-proof censuses and Barnes-Wall cross-checks."""

from .errors import CapabilityError, DimensionError, PauliBKSError, PreconditionError, VerificationError
from .pauli import (
    MagicContext,
    MaximalCommutingSet,
    PauliOperator,
    commutes,
    enumerate_mcs,
    is_hermitian,
    mcs_count,
    mermin_pentagram,
    mermin_square,
    pauli_product,
    verify_magic,
)
from .rays import GaussianInteger, Ray, RayCatalog, all_rays, eigenbasis, overlap2, real_rays
from .graph import OrthoGraph, build_graph, enumerate_bases
from .automorphism import automorphism_order, graph_certificate
from .census import (
    Census,
    IncidenceMatrix,
    ParityProof,
    criticality,
    enumerate_parity_proofs,
    incidence,
    is_ks_colorable,
    parity_kernel,
)
from .geometry import bengtsson_d2, pair_identity, proof_histogram, structure_signature
from .lattice import (
    LatticeBasis,
    OrthogonalTransform,
    bw_generator,
    clifford_order,
    is_lattice_automorphism,
    kissing_number,
    minimal_vectors,
)

__version__ = "0.1.0"
