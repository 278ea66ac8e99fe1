"""Rank-2 (SL3) reductive-pair analysis at the character level.

The pipeline: factor a dominant weight into base-p digit weights, build the
simple character as a product of twisted digit characters, decompose
ch L(lambda) * dual(ch L(lambda)) into composition factors, then classify
every factor by whether its extensions with the adjoint factor (1,1) are
forced to split.  Splitting evidence comes from two independent sources:
affine-Weyl linkage, and a restricted-part rule listing the only three
restricted weights that can pair with a bottom-alcove weight.

The method is one-sided: it can certify a reductive pair (ProvenYes) but
never refute one, so the only other outcome is Inconclusive.

Digit characters are known exactly when the digit lies in the closed bottom
alcove (a+b+2 <= p, where simple equals induced); anything else must be
supplied by the user in a character table, or the analysis stops with
AdaptationFailureError naming the digit it is missing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .a2lat import A2Weight, AlcoveClass, alcove_class, linked_a2, weyl_char_a2
from .charlat import FormalCharacter, NegativeMultiplicityError, digits, require_prime
from .sl2chars import CompFactorMultiset
from .sl2verdict import Verdict, VerdictKind

__all__ = [
    "AdaptationFailureError",
    "FactorStatus",
    "SteinbergFactorization",
    "MaskReport",
    "CertifiedExample",
    "steinberg_digits_a2",
    "simple_char_a2",
    "comp_factors_a2",
    "ext_mask",
    "sl3_verdict",
    "example_machine",
    "load_character_table",
]

_ADJOINT = A2Weight(1, 1)

_A2_SIMPLE_MEMO: dict = {}
_A2_MEMO_SUM_LIMIT = 200


class AdaptationFailureError(ValueError):
    """A needed simple character lies outside the supported region.

    The offending restricted digit weight is in .weight; supplying a user
    character-table entry for it (at .p) unblocks the computation.
    """

    def __init__(self, p: int, weight: A2Weight):
        self.p = p
        self.weight = A2Weight(*weight)
        super().__init__(
            f"no simple character available for digit weight {tuple(self.weight)} "
            f"at p={p}: outside the closed bottom alcove (a+b+2 <= p) and not in "
            "the supplied character table"
        )


class FactorStatus(str, Enum):
    SelfFactor = "self-factor"
    ExtZeroByLinkage = "ext-zero-linkage"
    ExtZeroByPartnerRule = "ext-zero-partner-rule"
    PossiblyNonzero = "possibly-nonzero"


def _coerce(w) -> A2Weight:
    if isinstance(w, A2Weight):
        return w
    if isinstance(w, (tuple, list)) and len(w) == 2 and all(isinstance(c, int) for c in w):
        return A2Weight(*w)
    raise TypeError(f"rank-2 weights are integer pairs, got {w!r}")


def _require_dominant(w: A2Weight, who: str) -> A2Weight:
    if w.a < 0 or w.b < 0:
        raise ValueError(f"{who} needs a dominant weight, got {tuple(w)}")
    return w


@dataclass(frozen=True)
class SteinbergFactorization:
    """Digit weights of lambda = sum p^i * lambda_i with restricted lambda_i."""

    p: int
    digit_weights: tuple

    @property
    def value(self) -> A2Weight:
        a = sum(w.a * self.p**i for i, w in enumerate(self.digit_weights))
        b = sum(w.b * self.p**i for i, w in enumerate(self.digit_weights))
        return A2Weight(a, b)


def steinberg_digits_a2(p: int, w) -> SteinbergFactorization:
    """Coordinatewise base-p digit weights of a dominant rank-2 weight."""
    require_prime(p)
    w = _require_dominant(_coerce(w), "steinberg_digits_a2")
    da = digits(p, w.a).digits
    db = digits(p, w.b).digits
    k = max(len(da), len(db))
    da = da + (0,) * (k - len(da))
    db = db + (0,) * (k - len(db))
    return SteinbergFactorization(p, tuple(A2Weight(x, y) for x, y in zip(da, db)))


def _digit_char(p: int, digit: A2Weight, table) -> "tuple[FormalCharacter, bool]":
    """Character of one restricted digit, and whether the table supplied it."""
    if table:
        got = table.get((p, digit))
        if got is not None:
            return got, True
    if digit.a + digit.b + 2 <= p:
        return weyl_char_a2(digit), False
    raise AdaptationFailureError(p, digit)


def simple_char_a2(p: int, w, table: "Mapping | None" = None) -> FormalCharacter:
    """Character of the rank-2 simple module with highest weight w.

    Product over digit weights of twisted digit characters.  Digits inside
    the closed bottom alcove use the induced-module character; other digits
    must appear in the table (keyed by (p, (a, b))), else
    AdaptationFailureError identifies the missing one.
    """
    require_prime(p)
    w = _require_dominant(_coerce(w), "simple_char_a2")
    memoizable = w.a + w.b <= _A2_MEMO_SUM_LIMIT
    if memoizable:
        got = _A2_SIMPLE_MEMO.get((p, w))
        if got is not None:
            return got
    fact = steinberg_digits_a2(p, w)
    char = None
    used_table = False
    for i, digit in enumerate(fact.digit_weights):
        dc, from_table = _digit_char(p, digit, table)
        used_table = used_table or from_table
        dc = dc.frobenius_twist(p, i)
        char = dc if char is None else char * dc
    if memoizable and not used_table:
        char = _A2_SIMPLE_MEMO.setdefault((p, w), char)
    return char


def _peel_key(w) -> tuple:
    a, b = w
    return (a + b, a, b)


def comp_factors_a2(p: int, x: FormalCharacter, table: "Mapping | None" = None) -> CompFactorMultiset:
    """Composition-factor multiset of a rank-2 character in characteristic p.

    Greedy peel: the support weight maximizing (a+b, a, b) is always the
    highest weight of some factor, because every simple character strictly
    drops a+b off its top.  Raises NegativeMultiplicityError if the input is
    not a nonnegative integer combination of simple characters, and
    propagates AdaptationFailureError when a needed character is missing.
    """
    require_prime(p)
    if x.rank != 2:
        raise ValueError("rank-2 peel applied to a rank-1 character")
    terms = dict(x.items())
    out: dict = {}
    budget = max(sum(terms.values()), 1) + 1
    while terms:
        top = max(terms, key=_peel_key)
        mult = terms[top]
        if top[0] < 0 or top[1] < 0:
            raise NegativeMultiplicityError(
                f"composition series: leading weight {top} is not dominant"
            )
        if mult < 0:
            raise NegativeMultiplicityError(
                f"composition series: multiplicity {mult} at {top} is negative"
            )
        top = A2Weight(*top)
        piece = simple_char_a2(p, top, table)
        for ww, c in piece.items():
            c = terms.get(ww, 0) - mult * c
            if c:
                terms[ww] = c
            else:
                terms.pop(ww, None)
        out[top] = out.get(top, 0) + mult
        budget -= 1
        if budget < 0:
            raise NegativeMultiplicityError("composition series: peel failed to terminate")
    return CompFactorMultiset(p, out)


def _partner_weights(p: int, target: A2Weight) -> tuple:
    r, s = target
    return (
        A2Weight(p - s - 2, p - r - 2),
        A2Weight(r + s + 1, p - s - 2),
        A2Weight(p - r - 2, r + s + 1),
    )


def ext_mask(p: int, target, mu, strict: bool = False) -> FactorStatus:
    """Classify whether extensions between L(mu) and L(target) must split.

    target must lie strictly inside the bottom alcove.  Order of tests:
    equality (self-extensions of simples vanish), affine-Weyl linkage of the
    restricted parts and of the full weights (unlinked means split), then the
    restricted-part rule: the only restricted weights that can pair with
    (r,s) are (p-s-2,p-r-2), (r+s+1,p-s-2), (p-r-2,r+s+1).  A factor whose
    restricted part equals the target itself but whose full weight differs is
    split under the default reading; strict=True refuses to use the rule
    there and reports PossiblyNonzero.
    """
    require_prime(p)
    target = _require_dominant(_coerce(target), "ext_mask")
    mu = _require_dominant(_coerce(mu), "ext_mask")
    if alcove_class(p, target) is not AlcoveClass.BottomAlcoveInterior:
        raise ValueError(
            f"ext_mask target {tuple(target)} must lie strictly inside the "
            f"bottom alcove for p={p}"
        )
    if mu == target:
        return FactorStatus.SelfFactor
    mu0 = steinberg_digits_a2(p, mu).digit_weights[0]
    if not linked_a2(p, mu0, target) or not linked_a2(p, mu, target):
        return FactorStatus.ExtZeroByLinkage
    if mu0 != target:
        if mu0 not in _partner_weights(p, target):
            return FactorStatus.ExtZeroByPartnerRule
        return FactorStatus.PossiblyNonzero
    if strict:
        return FactorStatus.PossiblyNonzero
    return FactorStatus.ExtZeroByPartnerRule


@dataclass(frozen=True)
class MaskReport:
    """Full per-factor analysis of one rank-2 simple module."""

    p: int
    weight: A2Weight
    strict: bool
    factors: CompFactorMultiset
    statuses: dict
    verdict: Verdict

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "weight": list(self.weight),
            "strict": self.strict,
            "factors": [
                [list(w), c] for w, c in sorted(self.factors.entries.items())
            ],
            "statuses": [
                [list(w), s.value] for w, s in sorted(self.statuses.items())
            ],
            "verdict": self.verdict.to_json_dict(),
        }


def sl3_verdict(
    p: int,
    w,
    table: "Mapping | None" = None,
    strict: bool = False,
) -> MaskReport:
    """Analyze whether L(w) gives a reductive pair for the rank-2 group.

    Peels ch L(w) * dual(ch L(w)) into composition factors and applies
    ext_mask with the adjoint target (1,1) to each.  ProvenYes iff the
    adjoint occurs as a factor and every factor's status rules out a
    non-split extension; otherwise Inconclusive.  Never No: the character
    method cannot refute.
    """
    require_prime(p)
    if p == 3:
        raise ValueError(
            "p=3 is unsupported: the adjoint module is not simple there"
        )
    if p == 2:
        raise ValueError(
            "p=2 is unsupported: the adjoint weight (1,1) is not inside the "
            "bottom alcove"
        )
    w = _require_dominant(_coerce(w), "sl3_verdict")
    c = simple_char_a2(p, w, table)
    x = c * c.dual()
    factors = comp_factors_a2(p, x, table)
    statuses = {
        mu: ext_mask(p, _ADJOINT, mu, strict) for mu in factors.entries
    }
    reasons = []
    adjoint_present = factors.multiplicity(_ADJOINT) >= 1
    reasons.append(f"adjoint-factor:{'present' if adjoint_present else 'absent'}")
    blockers = sorted(
        mu for mu, s in statuses.items() if s is FactorStatus.PossiblyNonzero
    )
    for mu in blockers:
        reasons.append(f"mask:possibly-nonzero:{mu.a},{mu.b}")
    if adjoint_present and not blockers:
        reasons.append("mask:all-other-factors-split")
        reasons.append("self-ext:adjoint:zero")
        verdict = Verdict(VerdictKind.ProvenYes, tuple(reasons))
    else:
        verdict = Verdict(VerdictKind.Inconclusive, tuple(reasons))
    return MaskReport(p, w, strict, factors, statuses, verdict)


@dataclass(frozen=True)
class CertifiedExample:
    """A weight base + p^n * bump whose simple module provably works."""

    p: int
    base: A2Weight
    bump: A2Weight
    n: int
    weight: A2Weight
    bump_dimension: int
    rule: str = "certified-base-times-coprime-twist"

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "base": list(self.base),
            "bump": list(self.bump),
            "n": self.n,
            "weight": list(self.weight),
            "bump_dimension": self.bump_dimension,
            "rule": self.rule,
        }


def example_machine(
    p: int,
    base,
    bump,
    n: int,
    table: "Mapping | None" = None,
    strict: bool = False,
) -> CertifiedExample:
    """Certify the weight base + p^n * bump as giving a reductive pair.

    Needs base restricted with a ProvenYes analysis, n >= 1, and the bump
    module's dimension coprime to p (dimension from the induced module when
    the bump is closure-adapted, else from the table).
    """
    require_prime(p)
    base = _require_dominant(_coerce(base), "example_machine")
    bump = _require_dominant(_coerce(bump), "example_machine")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"twist exponent n must be an integer >= 1, got {n!r}")
    if base.a > p - 1 or base.b > p - 1:
        raise ValueError(f"base weight {tuple(base)} is not restricted for p={p}")
    report = sl3_verdict(p, base, table, strict)
    if report.verdict.kind is not VerdictKind.ProvenYes:
        raise ValueError(
            f"base weight {tuple(base)} is not certified: analysis says "
            f"{report.verdict.kind.value}"
        )
    dim = simple_char_a2(p, bump, table).dimension()
    if dim % p == 0:
        raise ValueError(
            f"bump weight {tuple(bump)} has dimension {dim} divisible by p={p}"
        )
    weight = A2Weight(base.a + p**n * bump.a, base.b + p**n * bump.b)
    return CertifiedExample(p, base, bump, n, weight, dim)


def load_character_table(path) -> dict:
    """Read a JSON-lines character table: {"p": …, "weight": [a,b], "character": …}.

    Returns a dict keyed by (p, A2Weight).  Each entry is validated to be a
    plausible simple character: rank 2, declared weight on top with
    multiplicity one, dominant declared weight.
    """
    table: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: bad JSON: {exc}") from exc
            try:
                p = row["p"]
                w = _coerce(list(row["weight"]))
                char = FormalCharacter.from_json_dict(row["character"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad table row: {exc}") from exc
            require_prime(p)
            _require_dominant(w, f"{path}:{lineno}")
            if char.rank != 2:
                raise ValueError(f"{path}:{lineno}: table characters must be rank 2")
            if char.coefficient(tuple(w)) != 1:
                raise ValueError(
                    f"{path}:{lineno}: declared weight {tuple(w)} must carry "
                    "multiplicity 1"
                )
            top = max(char.support(), key=_peel_key)
            if A2Weight(*top) != w:
                raise ValueError(
                    f"{path}:{lineno}: declared weight {tuple(w)} is not the "
                    f"character's leading weight (found {top})"
                )
            table[(p, w)] = char
    return table
