"""Exact arithmetic on formal characters over rank-1 and rank-2 weight lattices.

A formal character is a finitely supported integer-valued function on Z
(rank 1) or on Z^2 (rank 2, coordinates in the fundamental-weight basis).
Rank-1 weights are plain ints, rank-2 weights are (a, b) tuples.  Characters
are immutable after construction and every operation returns a fresh value,
so they can be shared freely across threads.

Multiplication is exact integer convolution of supports.  Large rank-1
products are routed through a coefficient-packing fast path (one big-integer
multiplication instead of a quadratic dict loop); the fast path is exact and
is property-tested against the naive convolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, ItemsView, Mapping

Weight = int | tuple[int, int]

__all__ = [
    "Weight",
    "FormalCharacter",
    "BasePDigits",
    "RankMismatchError",
    "NegativeMultiplicityError",
    "digits",
    "is_prime",
    "require_prime",
]

# Rank-1 products with more coefficient pairs than this go through packing.
_PACKED_CUTOFF = 1024


class RankMismatchError(ValueError):
    """Raised when characters over different weight lattices are combined."""


class NegativeMultiplicityError(ArithmeticError):
    """Raised when a greedy peel drives some multiplicity below zero.

    This is the consistency alarm: the peeled character is not a nonnegative
    integer combination of the basis characters supplied to the peel.  For
    module characters it means the input was not actually a module character,
    or that a supplied character-table entry is wrong.
    """


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"p must be a prime number, got {p!r}")
    return p


def _normalize_weight(rank: int, w) -> "int | tuple[int, int]":
    if rank == 1:
        if isinstance(w, bool) or not isinstance(w, int):
            raise TypeError(f"rank-1 weights are plain integers, got {w!r}")
        return w
    if isinstance(w, (tuple, list)) and len(w) == 2:
        a, b = w
        if isinstance(a, int) and isinstance(b, int):
            return (a, b)
    raise TypeError(f"rank-2 weights are integer pairs, got {w!r}")


class FormalCharacter:
    """Immutable finitely supported Z-valued function on the weight lattice."""

    __slots__ = ("_rank", "_terms")

    def __init__(self, rank: int, terms: "Mapping | Iterable[tuple]" = ()):
        if rank not in (1, 2):
            raise ValueError(f"rank must be 1 or 2, got {rank!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for w, c in items:
            w = _normalize_weight(rank, w)
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"multiplicities are integers, got {c!r}")
            c = acc.get(w, 0) + c
            if c:
                acc[w] = c
            else:
                acc.pop(w, None)
        self._rank = rank
        self._terms = acc

    # -- construction helpers -------------------------------------------

    @classmethod
    def zero(cls, rank: int) -> "FormalCharacter":
        return cls(rank)

    @classmethod
    def unit(cls, rank: int) -> "FormalCharacter":
        """The character of the one-dimensional trivial module."""
        return cls(rank, {0 if rank == 1 else (0, 0): 1})

    # -- inspection ------------------------------------------------------

    @property
    def rank(self) -> int:
        return self._rank

    def items(self) -> ItemsView:
        return self._terms.items()

    def coefficient(self, w) -> int:
        return self._terms.get(_normalize_weight(self._rank, w), 0)

    def support(self) -> tuple:
        """Weights with nonzero multiplicity, sorted (lexicographically)."""
        return tuple(sorted(self._terms))

    def dimension(self) -> int:
        """Sum of all multiplicities."""
        return sum(self._terms.values())

    def is_weyl_symmetric(self) -> bool:
        """Invariance under the Weyl group of the corresponding lattice."""
        t = self._terms
        if self._rank == 1:
            return all(t.get(-w, 0) == c for w, c in t.items())
        for (a, b), c in t.items():
            if t.get((-a, a + b), 0) != c or t.get((a + b, -b), 0) != c:
                return False
        return True

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    __hash__ = None  # mutable-free but we do not promise hashability

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {c}" for w, c in sorted(self._terms.items()))
        return f"FormalCharacter(rank={self._rank}, {{{body}}})"

    # -- ring operations -------------------------------------------------

    def _check_rank(self, other: "FormalCharacter") -> None:
        if self._rank != other._rank:
            raise RankMismatchError(
                f"cannot combine rank-{self._rank} with rank-{other._rank} characters"
            )

    def __add__(self, other) -> "FormalCharacter":
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        self._check_rank(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            c = out.get(w, 0) + c
            if c:
                out[w] = c
            else:
                del out[w]
        return self._wrap(out)

    def __sub__(self, other) -> "FormalCharacter":
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "FormalCharacter":
        return self._wrap({w: -c for w, c in self._terms.items()})

    def __mul__(self, other) -> "FormalCharacter":
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            if other == 0:
                return FormalCharacter(self._rank)
            return self._wrap({w: c * other for w, c in self._terms.items()})
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        self._check_rank(other)
        if not self._terms or not other._terms:
            return FormalCharacter(self._rank)
        if self._rank == 1:
            if len(self._terms) * len(other._terms) > _PACKED_CUTOFF:
                packed = _convolve_rank1_packed(self._terms, other._terms)
                if packed is not None:
                    return self._wrap(packed)
            return self._wrap(_convolve_rank1(self._terms, other._terms))
        return self._wrap(_convolve_rank2(self._terms, other._terms))

    __rmul__ = __mul__

    def _wrap(self, terms: dict) -> "FormalCharacter":
        out = FormalCharacter.__new__(FormalCharacter)
        out._rank = self._rank
        out._terms = terms
        return out

    # -- lattice operations ----------------------------------------------

    def frobenius_twist(self, p: int, i: int = 1) -> "FormalCharacter":
        """Scale every weight by p**i (the character of the i-fold twist)."""
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"twist base must be an integer >= 2, got {p!r}")
        if not isinstance(i, int) or i < 0:
            raise ValueError(f"twist exponent must be a nonnegative integer, got {i!r}")
        if i == 0 or not self._terms:
            return self
        s = p**i
        if self._rank == 1:
            return self._wrap({w * s: c for w, c in self._terms.items()})
        return self._wrap({(a * s, b * s): c for (a, b), c in self._terms.items()})

    def dual(self) -> "FormalCharacter":
        """Negate the support (the character of the dual module)."""
        if self._rank == 1:
            return self._wrap({-w: c for w, c in self._terms.items()})
        return self._wrap({(-a, -b): c for (a, b), c in self._terms.items()})

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        """Canonical form: {"rank": r, "terms": [[[c1..cr], mult], ...]}, sorted."""
        if self._rank == 1:
            terms = [[[w], c] for w, c in sorted(self._terms.items())]
        else:
            terms = [[list(w), c] for w, c in sorted(self._terms.items())]
        return {"rank": self._rank, "terms": terms}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "FormalCharacter":
        rank = data.get("rank")
        if rank not in (1, 2):
            raise ValueError(f"bad character payload: rank {rank!r}")
        raw = data.get("terms")
        if not isinstance(raw, list):
            raise ValueError("bad character payload: terms must be a list")
        pairs = []
        for entry in raw:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise ValueError(f"bad character term {entry!r}")
            coords, mult = entry
            if not (isinstance(coords, list) and len(coords) == rank):
                raise ValueError(f"bad character coordinates {coords!r}")
            w = coords[0] if rank == 1 else tuple(coords)
            pairs.append((w, mult))
        return cls(rank, pairs)


# -- convolution kernels ---------------------------------------------------


def _convolve_rank1(xt: Mapping[int, int], yt: Mapping[int, int]) -> dict:
    out: dict = {}
    get = out.get
    for w1, c1 in xt.items():
        for w2, c2 in yt.items():
            w = w1 + w2
            c = get(w, 0) + c1 * c2
            if c:
                out[w] = c
            else:
                del out[w]
    return out


def _convolve_rank2(xt: Mapping, yt: Mapping) -> dict:
    out: dict = {}
    get = out.get
    for (a1, b1), c1 in xt.items():
        for (a2, b2), c2 in yt.items():
            w = (a1 + a2, b1 + b2)
            c = get(w, 0) + c1 * c2
            if c:
                out[w] = c
            else:
                del out[w]
    return out


def _support_stride(terms: Mapping[int, int], lo: int) -> int:
    g = 0
    for w in terms:
        g = math.gcd(g, w - lo)
    return g or 1


def _pack_rank1(terms: Mapping[int, int], lo: int, stride: int, nbytes: int) -> int:
    """Scatter coefficients into byte buffers; exact for any signed ints < 2^(8*nbytes)."""
    hi = max(terms)
    width = (hi - lo) // stride + 1
    pos_buf = bytearray(width * nbytes)
    neg_buf = None
    for w, c in terms.items():
        off = ((w - lo) // stride) * nbytes
        if c > 0:
            pos_buf[off : off + nbytes] = c.to_bytes(nbytes, "little")
        else:
            if neg_buf is None:
                neg_buf = bytearray(width * nbytes)
            neg_buf[off : off + nbytes] = (-c).to_bytes(nbytes, "little")
    z = int.from_bytes(pos_buf, "little")
    if neg_buf is not None:
        z -= int.from_bytes(neg_buf, "little")
    return z


_CAST_CODE = {1: "B", 2: "H", 4: "I", 8: "Q"}


def _unpack_rank1(z: int, lo: int, stride: int, nbytes: int) -> dict:
    """Decode signed base-2^(8*nbytes) digits back into a term dict."""
    if z == 0:
        return {}
    sign = 1
    if z < 0:
        sign = -1
        z = -z
    raw = z.to_bytes(-(-z.bit_length() // (8 * nbytes)) * nbytes + nbytes, "little")
    view = memoryview(raw).cast(_CAST_CODE[nbytes])
    half = 1 << (8 * nbytes - 1)
    full = half << 1
    out: dict = {}
    carry = 0
    for idx, d in enumerate(view):
        v = d + carry
        if v >= half:
            v -= full
            carry = 1
        else:
            carry = 0
        if v:
            out[lo + idx * stride] = sign * v
    if carry:
        raise AssertionError("packed decode ended with a dangling borrow")
    return out


def _convolve_rank1_packed(xt: Mapping[int, int], yt: Mapping[int, int]) -> "dict | None":
    """Exact convolution via one big-integer multiply, or None if coefficients
    are too large for a 64-bit digit."""
    xlo, ylo = min(xt), min(yt)
    sum_x = max_x = 0
    for c in xt.values():
        c = abs(c)
        sum_x += c
        if c > max_x:
            max_x = c
    sum_y = max_y = 0
    for c in yt.values():
        c = abs(c)
        sum_y += c
        if c > max_y:
            max_y = c
    bound = min(sum_x * max_y, sum_y * max_x)
    bits = bound.bit_length() + 2
    if bits > 64:
        return None
    nbytes = 1
    while nbytes * 8 < bits:
        nbytes *= 2
    stride = math.gcd(_support_stride(xt, xlo), _support_stride(yt, ylo))
    zx = _pack_rank1(xt, xlo, stride, nbytes)
    zy = _pack_rank1(yt, ylo, stride, nbytes)
    return _unpack_rank1(zx * zy, xlo + ylo, stride, nbytes)


# -- base-p digit expansions -------------------------------------------------


@dataclass(frozen=True)
class BasePDigits:
    """Base-p expansion of a nonnegative integer, least significant digit first.

    The zero value is represented by the single digit tuple (0,); otherwise
    the last digit is nonzero.
    """

    p: int
    digits: tuple

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise ValueError(f"base must be an integer >= 2, got {self.p!r}")
        ds = self.digits
        if not isinstance(ds, tuple) or not ds:
            raise ValueError("digits must be a nonempty tuple")
        if any(not isinstance(d, int) or d < 0 or d >= self.p for d in ds):
            raise ValueError(f"digits out of range for base {self.p}: {ds}")
        if len(ds) > 1 and ds[-1] == 0:
            raise ValueError("leading zero digit in a base-p expansion")

    @property
    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.p + d
        return v

    @property
    def lead_index(self) -> "int | None":
        """Index of the first nonzero digit, or None for the zero value."""
        for i, d in enumerate(self.digits):
            if d:
                return i
        return None


def digits(p: int, value: int) -> BasePDigits:
    """Base-p expansion of a nonnegative integer."""
    if not isinstance(p, int) or p < 2:
        raise ValueError(f"base must be an integer >= 2, got {p!r}")
    if not isinstance(value, int) or value < 0:
        raise ValueError(f"value must be a nonnegative integer, got {value!r}")
    if value == 0:
        return BasePDigits(p, (0,))
    ds = []
    while value:
        value, d = divmod(value, p)
        ds.append(d)
    return BasePDigits(p, tuple(ds))
