"""Order obstructions for satellite knots in the concordance group.

The package computes Casson-Gordon style sliceness obstructions for
satellite knots built from twisted doubles, certifies that specific
knots have infinite order in the concordance group, and exhibits
infinite families whose members are linearly independent.  Certificates
are plain JSON files that can be stored, shared, and re-verified.
"""

from .branched_cover import (
    CoverHomology,
    DeckAction,
    EigenvalueCollisionError,
    PTorsionModule,
    build_p_torsion,
    cover_homology,
    deck_action,
    presentation_matrix,
    twisted_cover_order,
)
from .exact_linalg import (
    FpMatrix,
    IntMatrix,
    SmithForm,
    SubspaceBudgetError,
    gaussian_binomial,
    smith_normal_form,
)
from .number_theory import (
    F,
    PreconditionError,
    PrimeWitness,
    SearchBoundError,
    exponent_of,
    factorize,
    is_prime,
    is_prime_power,
    primes_up_to,
    select_independent_family,
    solve_F_mod_p,
)
from .obstruction import (
    IndependenceCertificate,
    InfiniteOrderCertificate,
    Metabolizer,
    MetabolizerRecord,
    ObstructionCertificate,
    PrimeCollisionError,
    VerifyReport,
    canonical_json,
    certify_infinite_order,
    certify_nonslice,
    enumerate_metabolizers,
    independence_certificate,
    load_certificate,
    metabolizer_count,
    verify_certificate,
    write_certificate,
)
from .satellite import (
    Character,
    SatelliteSum,
    Summand,
    amphicheiral_block,
    amphicheiral_sum,
    cg_delta,
    character_from_vector,
    mirror_sum,
    mirror_summand,
    obstruction_sum,
)
from .seifert import (
    SeifertMatrix,
    SignatureValue,
    alexander_polynomial,
    connected_sum,
    is_alexander_root,
    knot_spec,
    parse_knot,
    signature_profile,
    trefoil,
    tristram_levine_signature,
    twisted_double,
    unknot,
)

__version__ = "0.1.0"

__all__ = [
    "Character",
    "CoverHomology",
    "F",
    "DeckAction",
    "EigenvalueCollisionError",
    "FpMatrix",
    "IndependenceCertificate",
    "InfiniteOrderCertificate",
    "IntMatrix",
    "Metabolizer",
    "MetabolizerRecord",
    "ObstructionCertificate",
    "PTorsionModule",
    "PreconditionError",
    "PrimeCollisionError",
    "PrimeWitness",
    "SatelliteSum",
    "SearchBoundError",
    "SeifertMatrix",
    "SignatureValue",
    "SmithForm",
    "SubspaceBudgetError",
    "Summand",
    "VerifyReport",
    "alexander_polynomial",
    "amphicheiral_block",
    "amphicheiral_sum",
    "build_p_torsion",
    "canonical_json",
    "certify_infinite_order",
    "certify_nonslice",
    "cg_delta",
    "character_from_vector",
    "connected_sum",
    "cover_homology",
    "deck_action",
    "enumerate_metabolizers",
    "exponent_of",
    "factorize",
    "gaussian_binomial",
    "independence_certificate",
    "is_alexander_root",
    "is_prime",
    "is_prime_power",
    "knot_spec",
    "load_certificate",
    "metabolizer_count",
    "mirror_sum",
    "mirror_summand",
    "obstruction_sum",
    "parse_knot",
    "presentation_matrix",
    "primes_up_to",
    "select_independent_family",
    "signature_profile",
    "smith_normal_form",
    "solve_F_mod_p",
    "trefoil",
    "tristram_levine_signature",
    "twisted_cover_order",
    "twisted_double",
    "unknot",
    "verify_certificate",
    "write_certificate",
]
