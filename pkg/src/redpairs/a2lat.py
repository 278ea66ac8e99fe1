"""Rank-2 (A2) weight-lattice geometry: Weyl group, characters, linkage, alcoves.

Weights are (a, b) pairs in fundamental-weight coordinates.  The Weyl group
has six elements, generated by s1(a,b) = (-a, a+b) and s2(a,b) = (a+b, -b).
The simple roots are alpha1 = (2,-1) and alpha2 = (-1,2) in these
coordinates, and rho = (1,1).

Weyl characters are computed by an exact alternating sum of Kostant
partition counts over the six Weyl elements; no floating point anywhere.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

from .charlat import FormalCharacter, require_prime

__all__ = [
    "A2Weight",
    "AlcoveClass",
    "weyl_orbit",
    "weyl_char_a2",
    "dim_a2",
    "linked_a2",
    "alcove_class",
]


class A2Weight(NamedTuple):
    a: int
    b: int


class AlcoveClass(str, Enum):
    BottomAlcoveInterior = "bottom-alcove-interior"
    BottomAlcoveClosureWall = "bottom-alcove-closure-wall"
    Outside = "outside"


# The six Weyl elements as (determinant sign, row-major 2x2 matrix) acting on
# column vectors of fundamental coordinates: e, s1, s2, s1 s2, s2 s1, w0.
_WEYL = (
    (1, (1, 0, 0, 1)),
    (-1, (-1, 0, 1, 1)),
    (-1, (1, 1, 0, -1)),
    (1, (-1, -1, 1, 0)),
    (1, (0, 1, -1, -1)),
    (-1, (0, -1, -1, 0)),
)


def _coerce(w) -> A2Weight:
    if isinstance(w, A2Weight):
        return w
    if isinstance(w, (tuple, list)) and len(w) == 2:
        a, b = w
        if isinstance(a, int) and isinstance(b, int):
            return A2Weight(a, b)
    raise TypeError(f"rank-2 weights are integer pairs, got {w!r}")


def _require_dominant(w: A2Weight, who: str) -> A2Weight:
    if w.a < 0 or w.b < 0:
        raise ValueError(f"{who} needs a dominant weight, got {tuple(w)}")
    return w


def _apply(mat, w: A2Weight) -> A2Weight:
    m00, m01, m10, m11 = mat
    return A2Weight(m00 * w.a + m01 * w.b, m10 * w.a + m11 * w.b)


def weyl_orbit(w) -> set:
    """Orbit of a weight under the six-element Weyl group."""
    w = _coerce(w)
    return {_apply(mat, w) for _, mat in _WEYL}


def dim_a2(w) -> int:
    """Weyl dimension formula for a dominant weight: (a+1)(b+1)(a+b+2)/2."""
    w = _require_dominant(_coerce(w), "dim_a2")
    return (w.a + 1) * (w.b + 1) * (w.a + w.b + 2) // 2


def _kostant(v: A2Weight) -> int:
    """Number of ways to write v as x*alpha1 + y*alpha2 with x, y >= 0.

    In fundamental coordinates v = (2x-y, 2y-x), so x = (2a+b)/3 and
    y = (a+2b)/3; for A2 the positive roots are alpha1, alpha2, alpha1+alpha2
    and the count is min(x,y)+1 when both are nonnegative integers.
    """
    t = 2 * v.a + v.b
    u = v.a + 2 * v.b
    if t % 3 or u % 3:
        return 0
    x, y = t // 3, u // 3
    if x < 0 or y < 0:
        return 0
    return min(x, y) + 1


_WEYL_CHAR_MEMO: dict = {}
_WEYL_CHAR_MEMO_LIMIT = 400


def weyl_char_a2(w) -> FormalCharacter:
    """Exact Weyl character of a dominant rank-2 weight.

    Multiplicity of weight mu is the alternating sum over the Weyl group of
    Kostant counts of w(lambda+rho) - (mu+rho); support is scanned over the
    box of weights dominated by lambda.
    """
    lam = _require_dominant(_coerce(w), "weyl_char_a2")
    small = lam.a + lam.b <= _WEYL_CHAR_MEMO_LIMIT
    if small:
        got = _WEYL_CHAR_MEMO.get(lam)
        if got is not None:
            return got
    rho = A2Weight(1, 1)
    shifted = A2Weight(lam.a + 1, lam.b + 1)
    images = [(sign, _apply(mat, shifted)) for sign, mat in _WEYL]
    terms = {}
    # Any weight of the module is lambda minus a nonnegative root sum whose
    # fundamental coordinates stay within this box.
    span = lam.a + lam.b
    for ca in range(-span, span + 1):
        for cb in range(-span, span + 1):
            mu_sh = A2Weight(ca + rho.a, cb + rho.b)
            mult = 0
            for sign, im in images:
                mult += sign * _kostant(A2Weight(im.a - mu_sh.a, im.b - mu_sh.b))
            if mult:
                terms[(ca, cb)] = mult
    char = FormalCharacter(2, terms)
    if small:
        char = _WEYL_CHAR_MEMO.setdefault(lam, char)
    return char


def linked_a2(p: int, mu, lam) -> bool:
    """Affine-Weyl linkage (dot action) of two rank-2 weights.

    True iff mu+rho equals some Weyl image of lam+rho plus p times a root
    lattice element.  In fundamental coordinates the root lattice is the
    integer span of (2,-1) and (-1,2), i.e. the pairs with a = b (mod 3).
    """
    require_prime(p)
    mu = _coerce(mu)
    lam = _coerce(lam)
    target = A2Weight(mu.a + 1, mu.b + 1)
    shifted = A2Weight(lam.a + 1, lam.b + 1)
    for _, mat in _WEYL:
        im = _apply(mat, shifted)
        da, db = target.a - im.a, target.b - im.b
        if da % p == 0 and db % p == 0 and (da // p - db // p) % 3 == 0:
            return True
    return False


def alcove_class(p: int, w) -> AlcoveClass:
    """Where a dominant weight sits relative to the bottom alcove."""
    require_prime(p)
    w = _require_dominant(_coerce(w), "alcove_class")
    s = w.a + w.b + 2
    if s < p:
        return AlcoveClass.BottomAlcoveInterior
    if s == p:
        return AlcoveClass.BottomAlcoveClosureWall
    return AlcoveClass.Outside
