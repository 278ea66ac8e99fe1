"""Classifiers deciding which rank-1 modules give reductive pairs.

Two exact classifiers (digit rule for simple modules, congruence rule for
symmetric-power Weyl modules), an independent character-level oracle for the
second, and a one-sided sufficiency oracle for the first.  Verdict kinds:

  Yes / No         from the exact rules (if-and-only-if statements),
  ProvenYes        from a one-sided oracle that certifies success,
  Inconclusive     when a one-sided oracle cannot decide.

Every verdict carries machine-readable reason codes so front ends can explain
a result without recomputing it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .charlat import digits, require_prime
from .sl2chars import comp_factors, peel_tilting, simple_char, nabla_char

__all__ = [
    "VerdictKind",
    "Verdict",
    "normalize_frobenius",
    "simple_verdict",
    "weyl_verdict",
    "weyl_oracle",
    "divisibility_obstruction",
    "linked_a1",
    "sufficiency_oracle_simple",
]


class VerdictKind(str, Enum):
    Yes = "Yes"
    No = "No"
    ProvenYes = "ProvenYes"
    Inconclusive = "Inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    reasons: tuple

    @property
    def affirmative(self) -> bool:
        return self.kind in (VerdictKind.Yes, VerdictKind.ProvenYes)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind.value, "reasons": list(self.reasons)}


def normalize_frobenius(p: int, weight: int) -> int:
    """Strip trailing zero base-p digits: the untwisted weight with a0 != 0."""
    require_prime(p)
    if not isinstance(weight, int) or weight < 1:
        raise ValueError(f"weight must be a positive integer, got {weight!r}")
    while weight % p == 0:
        weight //= p
    return weight


def simple_verdict(p: int, weight: int) -> Verdict:
    """Exact digit-rule classification of the simple module L(weight).

    Characteristic 2 is always No; p = 3 allows only digits 0 and 1 apart
    from the lowest nonzero digit, which may be 1 or 2; for p > 3 every digit
    must be at most p-2 and the lowest nonzero digit at most p-3.
    """
    require_prime(p)
    if not isinstance(weight, int) or weight < 1:
        raise ValueError(
            "weight must be a positive integer: the classification "
            f"excludes the trivial module, got {weight!r}"
        )
    if p == 2:
        return Verdict(VerdictKind.No, ("char-2:no-reductive-pairs",))
    ds = digits(p, weight)
    lead = ds.lead_index
    reasons = []
    verdict = VerdictKind.Yes
    if p == 3:
        for i, a in enumerate(ds.digits):
            if i == lead:
                continue
            if a > 1:
                verdict = VerdictKind.No
                reasons.append(f"digit-rule:digit[{i}]={a}:exceeds-1")
        if verdict is VerdictKind.Yes:
            reasons.append(f"digit-rule:lead-digit[{lead}]={ds.digits[lead]}:allowed")
            reasons.append("digit-rule:other-digits<=1")
    else:
        for i, a in enumerate(ds.digits):
            if a > p - 2:
                verdict = VerdictKind.No
                reasons.append(f"digit-rule:digit[{i}]={a}:exceeds-p-2")
        if ds.digits[lead] > p - 3:
            verdict = VerdictKind.No
            reasons.append(f"digit-rule:lead-digit[{lead}]={ds.digits[lead]}:exceeds-p-3")
        if verdict is VerdictKind.Yes:
            reasons.append("digit-rule:all-digits<=p-2")
            reasons.append(f"digit-rule:lead-digit[{lead}]={ds.digits[lead]}<=p-3")
    return Verdict(verdict, tuple(reasons))


def weyl_verdict(p: int, n: int) -> Verdict:
    """Exact congruence-rule classification of the n-th symmetric power."""
    require_prime(p)
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    reasons = []
    if n == 0:
        reasons.append("degenerate:n=0:trivial-module")
    if p == 2:
        reasons.append("char-2:no-reductive-pairs")
        return Verdict(VerdictKind.No, tuple(reasons))
    if p == 3:
        r = n % 9
        ok = 1 <= r <= 6
        reasons.append(f"congruence:n%9={r}:{'allowed' if ok else 'excluded'}")
    else:
        r = n % p
        ok = r not in (0, p - 2, p - 1)
        reasons.append(f"congruence:n%p={r}:{'allowed' if ok else 'excluded'}")
    return Verdict(VerdictKind.Yes if ok else VerdictKind.No, tuple(reasons))


def weyl_oracle(p: int, n: int) -> Verdict:
    """Character-level test for the same question weyl_verdict answers.

    Decomposes chi(n)^2 into indecomposable tilting characters and looks for
    the summand with label 2 (the adjoint module, which is tilting for
    p >= 3).  Entirely independent of the congruence rule.
    """
    require_prime(p)
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a nonnegative integer, got {n!r}")
    if p == 2:
        return Verdict(VerdictKind.No, ("char-2:adjoint-not-tilting",))
    square = nabla_char(n) * nabla_char(n)
    dec = peel_tilting(p, square)
    present = dec.multiplicity(2) >= 1
    reason = f"oracle:tilting-summand-2:{'present' if present else 'absent'}"
    return Verdict(VerdictKind.Yes if present else VerdictKind.No, (reason,))


def divisibility_obstruction(p: int, lie_dim: int, factor_dims) -> bool:
    """Dimension obstruction: true when the pair is impossible on dimensions.

    factor_dims lists (dimension, indecomposable?) for the summands of some
    decomposition of the module the subgroup acts on.  The obstruction fires
    iff p does not divide lie_dim while some indecomposable summand has
    dimension divisible by p.
    """
    require_prime(p)
    if not isinstance(lie_dim, int) or lie_dim < 1:
        raise ValueError(f"lie_dim must be a positive integer, got {lie_dim!r}")
    if lie_dim % p == 0:
        return False
    for dim, indecomposable in factor_dims:
        if not isinstance(dim, int) or dim < 1:
            raise ValueError(f"factor dimensions must be positive integers, got {dim!r}")
        if indecomposable and dim % p == 0:
            return True
    return False


def linked_a1(p: int, mu: int, nu: int) -> bool:
    """Affine-Weyl linkage of two rank-1 highest weights (dot action)."""
    require_prime(p)
    return (mu + 1 - (nu + 1)) % (2 * p) == 0 or (mu + 1 + (nu + 1)) % (2 * p) == 0


def sufficiency_oracle_simple(p: int, weight: int) -> Verdict:
    """One-sided certificate that L(weight) gives a reductive pair.

    Works out the composition factors of ch L(weight)^2; if the adjoint
    factor 2 occurs and no other factor is linked to 2, the adjoint splits
    off (self-extensions of simples vanish) and the answer is ProvenYes.
    Anything else is Inconclusive; this oracle never says No.
    """
    require_prime(p)
    if p == 2:
        raise ValueError("the sufficiency oracle needs p >= 3 (adjoint factor 2)")
    if not isinstance(weight, int) or weight < 1:
        raise ValueError(f"weight must be a positive integer, got {weight!r}")
    c = simple_char(p, weight)
    factors = comp_factors(p, c * c)
    reasons = []
    if factors.multiplicity(2) < 1:
        reasons.append("factor-2:absent")
        return Verdict(VerdictKind.Inconclusive, tuple(reasons))
    reasons.append("factor-2:present")
    linked = [mu for mu in factors.entries if mu != 2 and linked_a1(p, mu, 2)]
    if linked:
        for mu in sorted(linked):
            reasons.append(f"linkage:factor-{mu}:linked-to-2")
        return Verdict(VerdictKind.Inconclusive, tuple(reasons))
    reasons.append("linkage:other-factors-unlinked")
    reasons.append("self-ext:factor-2:zero")
    return Verdict(VerdictKind.ProvenYes, tuple(reasons))
