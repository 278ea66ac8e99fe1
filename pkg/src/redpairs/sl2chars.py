"""Characters of rank-1 modules: Weyl, simple, tilting, and their decompositions.

Weights for the rank-1 group are nonnegative integers (the highest weight in
the fundamental-weight basis).  chi(n) denotes the Weyl character with highest
weight n: the symmetric character with support {n, n-2, ..., -n} and all
multiplicities 1.

Simple characters in characteristic p are built from the base-p digit
expansion of the highest weight: the character of L(sum a_i p^i) is the
product of the twisted restricted factors L(a_i)^(p^i), and each restricted
L(a) with 0 <= a <= p-1 equals chi(a).

Tilting characters follow the standard recursion: for m >= p the weight
splits as m = m0 + p*m' with m0 in [p-1, 2p-2] congruent to m mod p, and
T(m) = T(m0) (x) T(m')^(p).  Fundamental tilting characters are chi(u) for
u <= p-1 and chi(u) + chi(2p-2-u) for p <= u <= 2p-2.

Decomposing an arbitrary character into Weyl or tilting pieces is a greedy
peel from the top weight down; it raises NegativeMultiplicityError if the
input is not a nonnegative combination, which doubles as a consistency alarm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .charlat import (
    FormalCharacter,
    NegativeMultiplicityError,
    digits,
    require_prime,
)

__all__ = [
    "nabla_char",
    "simple_char",
    "simple_dimension",
    "fundamental_tilting_char",
    "tilting_char",
    "tilting_dimension",
    "CompFactorMultiset",
    "TiltingDecomposition",
    "comp_factors",
    "peel_tilting",
    "nabla_decomposition",
    "y_char",
    "y_identity_form",
    "y_identity_sides",
    "y_identity_check",
]

# Memoize simple/tilting characters only up to this weight; the rare huge
# weight is cheaper to recompute than to keep alive.
_MEMO_WEIGHT_LIMIT = 20000

_SIMPLE_MEMO: dict = {}
_TILTING_MEMO: dict = {}


def nabla_char(n: int) -> FormalCharacter:
    """Weyl character chi(n): weights n, n-2, ..., -n, all with multiplicity 1."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"highest weight must be a nonnegative integer, got {n!r}")
    return FormalCharacter(1, {n - 2 * k: 1 for k in range(n + 1)})


def simple_char(p: int, weight: int) -> FormalCharacter:
    """Character of the simple module with the given highest weight."""
    require_prime(p)
    if not isinstance(weight, int) or weight < 0:
        raise ValueError(f"highest weight must be a nonnegative integer, got {weight!r}")
    memoized = weight <= _MEMO_WEIGHT_LIMIT
    if memoized:
        got = _SIMPLE_MEMO.get((p, weight))
        if got is not None:
            return got
    ds = digits(p, weight).digits
    # Horner from the top digit down keeps intermediate supports dense, so
    # every multiplication stays inside the packed fast path.
    char = nabla_char(ds[-1])
    for a in reversed(ds[:-1]):
        char = nabla_char(a) * char.frobenius_twist(p, 1)
    if memoized:
        char = _SIMPLE_MEMO.setdefault((p, weight), char)
    return char


def simple_dimension(p: int, weight: int) -> int:
    """Dimension of the simple module, as the product of (digit + 1)."""
    require_prime(p)
    if not isinstance(weight, int) or weight < 0:
        raise ValueError(f"highest weight must be a nonnegative integer, got {weight!r}")
    out = 1
    for a in digits(p, weight).digits:
        out *= a + 1
    return out


def fundamental_tilting_char(p: int, u: int) -> FormalCharacter:
    """Tilting character for weights in the fundamental range [0, 2p-2]."""
    require_prime(p)
    if not isinstance(u, int) or not 0 <= u <= 2 * p - 2:
        raise ValueError(f"fundamental tilting weights lie in [0, {2 * p - 2}], got {u!r}")
    if u <= p - 1:
        return nabla_char(u)
    return nabla_char(u) + nabla_char(2 * p - 2 - u)


def tilting_char(p: int, m: int) -> FormalCharacter:
    """Character of the indecomposable tilting module with highest weight m."""
    require_prime(p)
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"highest weight must be a nonnegative integer, got {m!r}")
    memoized = m <= _MEMO_WEIGHT_LIMIT
    if memoized:
        got = _TILTING_MEMO.get((p, m))
        if got is not None:
            return got
    if m <= 2 * p - 2:
        char = fundamental_tilting_char(p, m)
    else:
        m0 = (p - 1) + ((m - (p - 1)) % p)
        rest = (m - m0) // p
        char = fundamental_tilting_char(p, m0) * tilting_char(p, rest).frobenius_twist(p, 1)
    if memoized:
        char = _TILTING_MEMO.setdefault((p, m), char)
    return char


def tilting_dimension(p: int, m: int) -> int:
    """Dimension of the indecomposable tilting module with highest weight m."""
    require_prime(p)
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"highest weight must be a nonnegative integer, got {m!r}")
    if m <= 2 * p - 2:
        return m + 1 if m <= p - 1 else 2 * p
    m0 = (p - 1) + ((m - (p - 1)) % p)
    return tilting_dimension(p, m0) * tilting_dimension(p, (m - m0) // p)


@dataclass(frozen=True)
class CompFactorMultiset:
    """Composition-factor multiplicities of a rank-1 character, by highest weight."""

    p: int
    entries: dict = field(default_factory=dict)

    def sorted_pairs(self) -> tuple:
        return tuple(sorted(self.entries.items()))

    def multiplicity(self, weight: int) -> int:
        return self.entries.get(weight, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def to_json(self) -> dict:
        return {str(w): c for w, c in sorted(self.entries.items())}


@dataclass(frozen=True)
class TiltingDecomposition:
    """Multiplicities of indecomposable tilting summands, by highest weight.

    residual is whatever part of the input the peel could not express; a
    successful decomposition always has the zero character there.
    """

    p: int
    summands: dict = field(default_factory=dict)
    residual: FormalCharacter = field(default_factory=lambda: FormalCharacter.zero(1))

    def sorted_pairs(self) -> tuple:
        return tuple(sorted(self.summands.items()))

    def multiplicity(self, weight: int) -> int:
        return self.summands.get(weight, 0)

    def to_json(self) -> dict:
        return {str(w): c for w, c in sorted(self.summands.items())}


# -- packed greedy peel ------------------------------------------------------
#
# Peeling subtracts c * basis(h) from the residual for the top weight h with
# multiplicity c, repeatedly.  Doing this on dicts costs O(support) per step;
# for the big acceptance workloads that is quadratic.  Instead the whole
# residual lives in one signed big integer with 64-bit digits, so each step is
# a shifted big-int subtraction, and the basis characters are packed once and
# cached.  The alarm conditions (negative multiplicity, residual not hitting
# zero, runaway width) carry over exactly.

_PEEL_NBYTES = 8
_PEEL_HALF = 1 << 63
_PEEL_FULL = 1 << 64


def _pack_terms(terms, lo: int, stride: int) -> int:
    hi = max(terms)
    width = (hi - lo) // stride + 1
    pos = bytearray(width * _PEEL_NBYTES)
    neg = None
    for w, c in terms.items():
        off = ((w - lo) // stride) * _PEEL_NBYTES
        if c > 0:
            pos[off : off + _PEEL_NBYTES] = c.to_bytes(_PEEL_NBYTES, "little")
        else:
            if neg is None:
                neg = bytearray(width * _PEEL_NBYTES)
            neg[off : off + _PEEL_NBYTES] = (-c).to_bytes(_PEEL_NBYTES, "little")
    z = int.from_bytes(pos, "little")
    if neg is not None:
        z -= int.from_bytes(neg, "little")
    return z


def _basis_char(kind: str, p: int, h: int) -> FormalCharacter:
    if kind == "tilting":
        return tilting_char(p, h)
    if kind == "simple":
        return simple_char(p, h)
    return nabla_char(h)


@lru_cache(maxsize=4096)
def _packed_basis(kind: str, p: int, h: int, stride: int) -> "tuple[int, int]":
    """Basis character packed at 64-bit digits, anchored at weight -h.

    Returns (packed value, top digit index).  The top coefficient of every
    basis character is 1, which the caller's division-free peel relies on.
    """
    char = _basis_char(kind, p, h)
    terms = dict(char.items())
    assert terms.get(h) == 1
    z = _pack_terms(terms, -h, stride)
    return z, (h - (-h)) // stride


def _top_digit_index(z: int) -> int:
    return (z.bit_length() - 1) // 64


def _digit_at(z: int, idx: int) -> int:
    return (z >> (64 * idx)) & (_PEEL_FULL - 1)


def _greedy_peel(
    x: FormalCharacter,
    kind: str,
    p: int,
    *,
    what: str,
    basis_override=None,
) -> dict:
    """Peel x greedily into basis characters from the top weight down.

    kind is "tilting" or "nabla"; basis_override, when given, replaces the
    packed basis lookup (used by the self-test to prove the alarm fires).
    Raises NegativeMultiplicityError unless x is a nonnegative integer
    combination of the basis.
    """
    if x.rank != 1:
        raise ValueError(f"{what} decomposition applies to rank-1 characters")
    terms = dict(x.items())
    if not terms:
        return {}
    if not x.is_weyl_symmetric():
        raise NegativeMultiplicityError(
            f"{what}: character is not Weyl-symmetric, so it is no module character"
        )
    hi = max(terms)
    lo = min(min(terms), -hi)
    g = 0
    for w in terms:
        g = math.gcd(g, w - lo)
    stride = math.gcd(g, 2) or 1
    maxc = max(abs(c) for c in terms.values())
    if maxc >= _PEEL_HALF - 1:
        raise OverflowError(f"{what}: multiplicities exceed the packed 64-bit budget")
    z = _pack_terms(terms, lo, stride)
    width0 = _top_digit_index(z) + 1 if z > 0 else 0
    out: dict = {}
    steps = 0
    max_steps = width0 + 2
    lookup = basis_override if basis_override is not None else _packed_basis
    while z:
        if z < 0:
            raise NegativeMultiplicityError(
                f"{what}: residual went negative at its top weight"
            )
        idx = _top_digit_index(z)
        if idx >= width0 + 2:
            raise NegativeMultiplicityError(f"{what}: residual support ran away")
        h = lo + idx * stride
        if h < 0:
            raise NegativeMultiplicityError(
                f"{what}: residual is supported only below weight zero"
            )
        c = _digit_at(z, idx)
        if c >= _PEEL_HALF:
            raise NegativeMultiplicityError(
                f"{what}: top multiplicity of the residual is negative"
            )
        if c > maxc:
            raise NegativeMultiplicityError(
                f"{what}: top multiplicity {c} exceeds the input bound {maxc}"
            )
        zb, idx_b = lookup(kind, p, h, stride)
        z -= c * (zb << (64 * (idx - idx_b)))
        out[h] = out.get(h, 0) + c
        steps += 1
        if steps > max_steps:
            raise NegativeMultiplicityError(f"{what}: peel failed to terminate")
    return out


def comp_factors(p: int, x: FormalCharacter) -> CompFactorMultiset:
    """Composition-factor multiset of a character in characteristic p."""
    require_prime(p)
    out = _greedy_peel(x, "simple", p, what="composition series")
    return CompFactorMultiset(p, out)


def peel_tilting(p: int, x: FormalCharacter) -> TiltingDecomposition:
    """Decompose a character into indecomposable tilting characters."""
    require_prime(p)
    out = _greedy_peel(x, "tilting", p, what="tilting decomposition")
    return TiltingDecomposition(p, out)


def nabla_decomposition(x: FormalCharacter) -> dict:
    """Express a character in the Weyl-character basis (characteristic-free)."""
    return _greedy_peel(x, "nabla", 0, what="Weyl-basis expansion")


# -- the auxiliary two-parameter character family ----------------------------


def y_char(r: int) -> FormalCharacter:
    """Auxiliary family: products of adjacent Weyl characters, by parity.

    Even index 2m gives chi(m)^2, odd index 2m+1 gives chi(m+1) chi(m), and
    negative indices give the zero character.
    """
    if not isinstance(r, int):
        raise ValueError(f"index must be an integer, got {r!r}")
    if r < 0:
        return FormalCharacter.zero(1)
    m, odd = divmod(r, 2)
    if odd:
        return nabla_char(m + 1) * nabla_char(m)
    return nabla_char(m) * nabla_char(m)


def y_identity_form(p: int, a: int) -> str:
    """Which recursion shape the even residue a of 2pm+a falls into.

    "low" for a <= p-3, "mid" for p-1 <= a <= 2p-4, "top" for a = 2p-2.
    """
    require_prime(p)
    if p == 2:
        raise ValueError("the recursion needs an odd prime")
    if not isinstance(a, int) or a % 2 or not 0 <= a <= 2 * p - 2:
        raise ValueError(f"residue must be even in [0, {2 * p - 2}], got {a!r}")
    if a <= p - 3:
        return "low"
    if a <= 2 * p - 4:
        return "mid"
    return "top"


def y_identity_sides(p: int, m: int, a: int) -> "tuple[FormalCharacter, FormalCharacter]":
    """Both sides of the recursion for y_char(2pm + a), as characters.

    p must be an odd prime, m >= 0, and a an even residue in [0, 2p-2].
    The recursion has three shapes depending on where a falls:

      a <= p-3:          chi(p-1) chi(a+1) y(2m-1)^F
                         + chi(p-1) chi(p-a-3) y(2m-2)^F + y(a)
      p-1 <= a <= 2p-4:  with a = (p-1) + a', 0 <= a' <= p-3:
                         chi(p-1) chi(a') y(2m)^F
                         + chi(p-1) chi(p-2-a') y(2m-1)^F + y(p-a'-3)
      a = 2p-2:          chi(p-1)^2 y(2m)^F
    """
    form = y_identity_form(p, a)
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"m must be a nonnegative integer, got {m!r}")
    left = y_char(2 * p * m + a)
    st = nabla_char(p - 1)

    def tw(r: int) -> FormalCharacter:
        return y_char(r).frobenius_twist(p, 1)

    if form == "low":
        right = st * nabla_char(a + 1) * tw(2 * m - 1)
        right = right + st * nabla_char(p - a - 3) * tw(2 * m - 2)
        right = right + y_char(a)
    elif form == "mid":
        aa = a - (p - 1)
        right = st * nabla_char(aa) * tw(2 * m)
        right = right + st * nabla_char(p - 2 - aa) * tw(2 * m - 1)
        right = right + y_char(p - aa - 3)
    else:
        right = st * st * tw(2 * m)
    return left, right


def y_identity_check(p: int, m: int, a: int) -> bool:
    """True iff the recursion for y_char(2pm + a) holds exactly."""
    left, right = y_identity_sides(p, m, a)
    return left == right
