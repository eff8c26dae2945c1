"""Exact graph curves and their maximal-Mumford first-order deformations.

The package builds the canonical curve of a trivalent planar graph over Q,
computes the adapted basis of the Hilbert-scheme tangent space at it, and
emits and certifies first-order deformations whose lifts are maximal
Mumford curves.  All arithmetic is exact.
"""

from .graphs import (TrivalentGraph, EdgePairing, CoverGraph, validate,
                     cycle_basis, cover_graph, face_double_cover,
                     face_cover_from_faces, pairing_count, orientability,
                     search_max_covers, SearchBudgetExceeded)
from .model import (GraphCurveModel, build_model, ingest_model,
                    interpolate_ideal, edge_local_data, hilbert_check,
                    DegenerateConfiguration, NotAGraphCurve,
                    GenerationCheckFailed)
from .tangent import (TangentVector, AdaptedBasis, pgl_basis, eta_edge,
                      eta_edge_method2, hom_space, sign_data, normalize_eta,
                      adapted_basis, decompose, family_tangent,
                      hyperplanes_on_family, DimensionMismatch)
from .epsfield import EpsScalar, eps_val, eps_sign
from .mpoly import MPoly
from .unipoly import UniPoly, isolate_min_positive_root

__version__ = "0.1.0"

__all__ = [
    "TrivalentGraph", "EdgePairing", "CoverGraph", "validate", "cycle_basis",
    "cover_graph", "face_double_cover", "face_cover_from_faces",
    "pairing_count", "orientability", "search_max_covers",
    "SearchBudgetExceeded",
    "GraphCurveModel", "build_model", "ingest_model", "interpolate_ideal",
    "edge_local_data", "hilbert_check", "DegenerateConfiguration",
    "NotAGraphCurve", "GenerationCheckFailed",
    "TangentVector", "AdaptedBasis", "pgl_basis", "eta_edge",
    "eta_edge_method2", "hom_space", "sign_data", "normalize_eta",
    "adapted_basis", "decompose", "family_tangent", "hyperplanes_on_family",
    "DimensionMismatch",
    "EpsScalar", "eps_val", "eps_sign", "MPoly", "UniPoly",
    "isolate_min_positive_root",
]
