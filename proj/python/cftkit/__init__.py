from ._cftkit import (
    ConsistencyError,
    catalog,
    character,
    classify_affine,
    classify_invariant,
    classify_preunitary,
    conformal_embedding,
    coset_commutant_extension,
    enumerate_invariants,
    expected_invariants,
    gko_decomposition,
    mirror_extension,
    modular_data,
    run_cli,
    verify_gko,
    verify_invariant,
)

__all__ = [
    "ConsistencyError",
    "catalog",
    "character",
    "classify_affine",
    "classify_invariant",
    "classify_preunitary",
    "conformal_embedding",
    "coset_commutant_extension",
    "enumerate_invariants",
    "expected_invariants",
    "gko_decomposition",
    "mirror_extension",
    "modular_data",
    "run_cli",
    "verify_gko",
    "verify_invariant",
]
