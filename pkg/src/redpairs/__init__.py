"""Exact character computations for reductive pairs in types A1 and A2.

The package decides, by exact arithmetic in the character ring, when the
image of SL2 or SL3 inside the general linear group of a simple module
(or a Weyl symmetric power, in rank one) sits inside a reductive pair.
Everything is integer-exact: no floats, no truncated series.

Layout:

- ``charlat``: Laurent-polynomial characters on the weight lattice,
  base-p digits, primality helpers.
- ``sl2chars``: rank-1 Weyl / simple / tilting characters, greedy
  decompositions with positivity alarms, the y-family identities.
- ``sl2verdict``: rank-1 digit and congruence classifiers plus the
  character-level oracles that certify them.
- ``a2lat``: rank-2 weight geometry (Weyl group, Weyl characters,
  linkage, alcove tests).
- ``sl3verdict``: rank-2 Steinberg factorization, composition factors,
  the extension mask, and the certified-example machine.
- ``cache``: optional on-disk character store.
- ``cli``: the ``redpairs`` command.
"""

from .a2lat import (
    A2Weight,
    AlcoveClass,
    alcove_class,
    dim_a2,
    linked_a2,
    weyl_char_a2,
    weyl_orbit,
)
from .charlat import (
    BasePDigits,
    FormalCharacter,
    NegativeMultiplicityError,
    RankMismatchError,
    digits,
    is_prime,
    require_prime,
)
from .sl2chars import (
    CompFactorMultiset,
    TiltingDecomposition,
    comp_factors,
    nabla_char,
    nabla_decomposition,
    peel_tilting,
    simple_char,
    simple_dimension,
    tilting_char,
    tilting_dimension,
    y_char,
    y_identity_check,
    y_identity_form,
    y_identity_sides,
)
from .sl2verdict import (
    Verdict,
    VerdictKind,
    divisibility_obstruction,
    linked_a1,
    normalize_frobenius,
    simple_verdict,
    sufficiency_oracle_simple,
    weyl_oracle,
    weyl_verdict,
)
from .sl3verdict import (
    AdaptationFailureError,
    CertifiedExample,
    FactorStatus,
    MaskReport,
    SteinbergFactorization,
    comp_factors_a2,
    example_machine,
    ext_mask,
    load_character_table,
    simple_char_a2,
    sl3_verdict,
    steinberg_digits_a2,
)

__version__ = "0.1.0"

__all__ = [
    "A2Weight",
    "AdaptationFailureError",
    "AlcoveClass",
    "BasePDigits",
    "CertifiedExample",
    "CompFactorMultiset",
    "FactorStatus",
    "FormalCharacter",
    "MaskReport",
    "NegativeMultiplicityError",
    "RankMismatchError",
    "SteinbergFactorization",
    "TiltingDecomposition",
    "Verdict",
    "VerdictKind",
    "alcove_class",
    "comp_factors",
    "comp_factors_a2",
    "digits",
    "dim_a2",
    "divisibility_obstruction",
    "example_machine",
    "ext_mask",
    "is_prime",
    "linked_a1",
    "linked_a2",
    "load_character_table",
    "nabla_char",
    "nabla_decomposition",
    "normalize_frobenius",
    "peel_tilting",
    "require_prime",
    "simple_char",
    "simple_char_a2",
    "simple_dimension",
    "simple_verdict",
    "sl3_verdict",
    "steinberg_digits_a2",
    "sufficiency_oracle_simple",
    "tilting_char",
    "tilting_dimension",
    "weyl_char_a2",
    "weyl_oracle",
    "weyl_orbit",
    "weyl_verdict",
    "y_char",
    "y_identity_check",
    "y_identity_form",
    "y_identity_sides",
]
