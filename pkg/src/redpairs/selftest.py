"""Golden fixtures and invariant sweeps runnable from the CLI.

Each check appends one line to the report; the suite passes only if every
check does.  Includes deliberate failure injections (corrupted peel basis,
poisoned user table) proving the consistency alarms actually fire.
"""

from __future__ import annotations

import random

from . import charlat, sl2chars
from .a2lat import A2Weight, AlcoveClass, alcove_class, dim_a2, linked_a2, weyl_char_a2, weyl_orbit
from .charlat import FormalCharacter, NegativeMultiplicityError
from .sl2chars import (
    comp_factors,
    nabla_char,
    peel_tilting,
    simple_char,
    tilting_char,
    y_char,
    y_identity_check,
)
from .sl2verdict import (
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
    FactorStatus,
    comp_factors_a2,
    example_machine,
    simple_char_a2,
    sl3_verdict,
    steinberg_digits_a2,
)

_SEED = 20260821

# The nine restricted base weights and twelve bump weights of the p=7 family.
SET_A = ((1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 0), (0, 3))
SET_B = SET_A + ((2, 2), (3, 1), (1, 3))


def _second_alcove_char(p: int, a: int, b: int) -> FormalCharacter:
    """ch of the simple module at a p-regular weight one wall reflection up:
    induced character minus the induced character of the reflected weight."""
    return weyl_char_a2((a, b)) - weyl_char_a2((p - b - 2, p - a - 2))


def table_p7() -> dict:
    return {(7, A2Weight(3, 3)): _second_alcove_char(7, 3, 3)}


def table_p5() -> dict:
    return {(5, A2Weight(2, 2)): _second_alcove_char(5, 2, 2)}


class _Report:
    def __init__(self):
        self.lines = []
        self.failures = 0

    def check(self, name: str, ok: bool, detail: str = ""):
        if ok:
            self.lines.append(f"ok   {name}")
        else:
            self.failures += 1
            self.lines.append(f"FAIL {name}{': ' + detail if detail else ''}")

    def expect_raises(self, name: str, exc_type, fn):
        try:
            got = fn()
        except exc_type:
            self.check(name, True)
        except Exception as exc:
            self.check(name, False, f"raised {type(exc).__name__} instead: {exc}")
        else:
            self.check(name, False, f"no error raised, got {got!r}")


def _rank1_goldens(r: _Report):
    r.check("chi(2) support", nabla_char(2).support() == (-2, 0, 2))
    r.check("chi(4) dimension", nabla_char(4).dimension() == 5)
    r.check(
        "simple p=3 weight 3 is twisted line pair",
        simple_char(3, 3) == FormalCharacter(1, {3: 1, -3: 1}),
    )
    r.check("simple p=3 weight 8 dimension", simple_char(3, 8).dimension() == 9)
    r.check(
        "dimension of L(1 + p(p-1)/2) at p=5 is p+1",
        simple_char(5, 11).dimension() == 6,
    )
    r.check(
        "fundamental tilting p=3 u=3",
        tilting_char(3, 3) == nabla_char(3) + nabla_char(1),
    )
    r.check(
        "tilting recursion p=3 m=6 gives chi(6)+chi(4), dim 12",
        tilting_char(3, 6) == nabla_char(6) + nabla_char(4)
        and tilting_char(3, 6).dimension() == 12,
    )
    r.check(
        "comp factors of chi(3) at p=3",
        comp_factors(3, nabla_char(3)).entries == {3: 1, 1: 1},
    )
    r.check(
        "comp factors of L(2)^2 at p=3",
        comp_factors(3, simple_char(3, 2) * simple_char(3, 2)).entries
        == {4: 1, 2: 1, 0: 2},
    )
    r.check(
        "comp factors of T(3) at p=3",
        comp_factors(3, tilting_char(3, 3)).entries == {3: 1, 1: 2},
    )
    r.check(
        "comp factors of T(4) at p=3",
        comp_factors(3, tilting_char(3, 4)).entries == {4: 1, 0: 2},
    )
    r.check(
        "tilting peel of chi(2)^2 at p=3",
        peel_tilting(3, nabla_char(2) * nabla_char(2)).summands == {4: 1, 2: 1},
    )
    r.check(
        "tilting peel of chi(2)^2 at p=5",
        peel_tilting(5, nabla_char(2) * nabla_char(2)).summands
        == {4: 1, 2: 1, 0: 1},
    )
    r.check(
        "simple characters are peel atoms",
        all(
            comp_factors(p, simple_char(p, lam)).entries == {lam: 1}
            for p in (2, 3, 5)
            for lam in range(0, 40)
        ),
    )


def _rank1_verdicts(r: _Report):
    cases = [
        (5, 1, VerdictKind.Yes),
        (5, 4, VerdictKind.No),
        (3, 5, VerdictKind.Yes),
        (3, 8, VerdictKind.No),
        (2, 3, VerdictKind.No),
        (5, 11, VerdictKind.Yes),
    ]
    r.check(
        "simple verdict fixtures",
        all(simple_verdict(p, lam).kind is want for p, lam, want in cases),
    )
    cases = [
        (5, 7, VerdictKind.Yes),
        (5, 4, VerdictKind.No),
        (3, 7, VerdictKind.No),
        (3, 3, VerdictKind.Yes),
        (2, 6, VerdictKind.No),
    ]
    r.check(
        "weyl verdict fixtures",
        all(weyl_verdict(p, n).kind is want for p, n, want in cases),
    )
    r.check(
        "frobenius normalization fixtures",
        normalize_frobenius(5, 50) == 2
        and normalize_frobenius(3, 9) == 1
        and normalize_frobenius(5, 7) == 7,
    )
    r.check(
        "frobenius invariance of the digit rule",
        all(
            simple_verdict(p, lam).kind is simple_verdict(p, p * lam).kind
            for p in (3, 5, 7)
            for lam in range(1, 200)
        ),
    )
    r.check(
        "divisibility obstruction fixtures",
        divisibility_obstruction(5, 3, [(5, True)]) is True
        and divisibility_obstruction(3, 3, [(3, True)]) is False
        and divisibility_obstruction(7, 3, [(3, True), (4, True)]) is False,
    )
    r.check(
        "rank-1 linkage fixtures",
        linked_a1(5, 2, 2) and linked_a1(5, 2, 12) and not linked_a1(5, 2, 4),
    )
    oracle = [
        (5, 1, VerdictKind.ProvenYes),
        (5, 2, VerdictKind.ProvenYes),
        (5, 4, VerdictKind.Inconclusive),
    ]
    r.check(
        "sufficiency oracle fixtures",
        all(sufficiency_oracle_simple(p, lam).kind is want for p, lam, want in oracle),
    )
    sound = True
    for lam in range(1, 200):
        if sufficiency_oracle_simple(5, lam).kind is VerdictKind.ProvenYes:
            sound = sound and simple_verdict(5, lam).kind is VerdictKind.Yes
    r.check("sufficiency oracle soundness sweep (p=5)", sound)


def _oracle_agreement(r: _Report):
    bad = []
    for p in (2, 3, 5, 7):
        for n in range(0, 121):
            if weyl_oracle(p, n).kind is not weyl_verdict(p, n).kind:
                bad.append((p, n))
    r.check("weyl oracle agreement n<=120", not bad, f"disagreements {bad[:5]}")


def _y_identities(r: _Report):
    bad = []
    for p in (3, 5):
        for m in range(0, 9):
            for a in range(0, 2 * p - 1, 2):
                if not y_identity_check(p, m, a):
                    bad.append((p, m, a))
    r.check("y recursion sweep p in {3,5}, m<=8", not bad, f"failures {bad[:5]}")
    left, right = sl2chars.y_identity_sides(5, 1, 0)
    r.check(
        "y recursion low-form dimensions 36 = 20+15+1",
        left.dimension() == 36 and right.dimension() == 36 and left == right,
    )
    left, right = sl2chars.y_identity_sides(5, 0, 4)
    r.check(
        "y recursion mid-form dimensions 9 = 5+0+4",
        left.dimension() == 9 and left == right,
    )
    left, right = sl2chars.y_identity_sides(5, 0, 8)
    r.check(
        "y recursion top-form both sides chi(4)^2",
        left == right and left == nabla_char(4) * nabla_char(4),
    )
    r.check("y negative index is zero", not y_char(-1) and not y_char(-2))


def _clebsch_gordan(r: _Report):
    ok = True
    for mu in range(0, 26):
        for nu in range(0, mu + 1):
            want = FormalCharacter.zero(1)
            for i in range(nu + 1):
                want = want + nabla_char(mu + nu - 2 * i)
            if nabla_char(mu) * nabla_char(nu) != want:
                ok = False
    r.check("clebsch-gordan products mu,nu <= 25", ok)


def _random_dimensions(r: _Report):
    rng = random.Random(_SEED)
    ok = True
    for _ in range(300):
        p = rng.choice((2, 3, 5, 7, 11, 13))
        lam = rng.randrange(0, p**4)
        want = 1
        for d in charlat.digits(p, lam).digits:
            want *= d + 1
        if simple_char(p, lam).dimension() != want:
            ok = False
    r.check("random simple dimensions match digit product", ok)


def _packed_vs_naive(r: _Report):
    rng = random.Random(_SEED + 1)
    ok = True
    for _ in range(60):
        stride = rng.choice((1, 2, 3))
        base = rng.randrange(-30, 5)
        xt = {
            base + stride * k: rng.randrange(-9, 10)
            for k in rng.sample(range(0, 80), rng.randrange(3, 60))
        }
        yt = {
            -10 + 2 * k: rng.randrange(-9, 10)
            for k in rng.sample(range(0, 60), rng.randrange(3, 40))
        }
        xt = {w: c for w, c in xt.items() if c}
        yt = {w: c for w, c in yt.items() if c}
        if not xt or not yt:
            continue
        naive = charlat._convolve_rank1(xt, yt)
        packed = charlat._convolve_rank1_packed(xt, yt)
        if packed is not None and packed != naive:
            ok = False
    r.check("packed convolution equals naive on random signed data", ok)


def _reconstruction(r: _Report):
    rng = random.Random(_SEED + 2)
    ok_simple = ok_tilt = True
    for _ in range(20):
        p = rng.choice((3, 5))
        # nabla x nabla is a module character: simple multiplicities >= 0
        x = nabla_char(rng.randrange(0, 30)) * nabla_char(rng.randrange(0, 30))
        total = FormalCharacter.zero(1)
        for lam, c in comp_factors(p, x).entries.items():
            total = total + c * simple_char(p, lam)
        ok_simple = ok_simple and total == x
        # only tensor products of tiltings are guaranteed tilting
        t = tilting_char(p, rng.randrange(0, 30)) * tilting_char(p, rng.randrange(0, 30))
        total = FormalCharacter.zero(1)
        for m, c in peel_tilting(p, t).summands.items():
            total = total + c * tilting_char(p, m)
        ok_tilt = ok_tilt and total == t
    r.check("composition factors reconstruct the character", ok_simple)
    r.check("tilting summands reconstruct the character", ok_tilt)


def _a2_geometry(r: _Report):
    r.check("orbit of the zero weight", weyl_orbit((0, 0)) == {A2Weight(0, 0)})
    r.check(
        "orbit of a minuscule weight",
        weyl_orbit((1, 0)) == {A2Weight(1, 0), A2Weight(-1, 1), A2Weight(0, -1)},
    )
    r.check("orbit of a regular weight has size 6", len(weyl_orbit((1, 1))) == 6)
    r.check(
        "induced character fixtures",
        weyl_char_a2((0, 0)).to_json_dict() == {"rank": 2, "terms": [[[0, 0], 1]]}
        and weyl_char_a2((1, 0)).support() == ((-1, 1), (0, -1), (1, 0))
        and weyl_char_a2((1, 1)).dimension() == 8
        and weyl_char_a2((1, 1)).coefficient((0, 0)) == 2,
    )
    ok = True
    for a in range(0, 9):
        for b in range(0, 9):
            c = weyl_char_a2((a, b))
            ok = ok and c.dimension() == dim_a2((a, b)) and c.is_weyl_symmetric()
    r.check("induced character dimensions and symmetry a,b <= 8", ok)
    r.check(
        "linkage fixtures",
        linked_a2(5, (6, 6), (1, 1))
        and linked_a2(5, (1, 1), (1, 1))
        and not linked_a2(5, (1, 0), (0, 0))
        and not linked_a2(5, (0, 0), (1, 1)),
    )
    r.check(
        "alcove fixtures",
        alcove_class(5, (1, 1)) is AlcoveClass.BottomAlcoveInterior
        and alcove_class(7, (2, 2)) is AlcoveClass.BottomAlcoveInterior
        and alcove_class(5, (3, 0)) is AlcoveClass.BottomAlcoveClosureWall
        and alcove_class(5, (4, 4)) is AlcoveClass.Outside,
    )


def _rank2_analysis(r: _Report):
    r.check(
        "steinberg digit fixtures",
        steinberg_digits_a2(5, (5, 1)).digit_weights
        == (A2Weight(0, 1), A2Weight(1, 0))
        and steinberg_digits_a2(5, (6, 6)).digit_weights
        == (A2Weight(1, 1), A2Weight(1, 1))
        and steinberg_digits_a2(7, (2, 2)).digit_weights == (A2Weight(2, 2),),
    )
    r.check(
        "rank-2 simple character dimensions",
        simple_char_a2(5, (1, 1)).dimension() == 8
        and simple_char_a2(5, (5, 1)).dimension() == 9,
    )
    r.expect_raises(
        "adaptation guard for (4,4) at p=5",
        AdaptationFailureError,
        lambda: simple_char_a2(5, (4, 4)),
    )

    report = sl3_verdict(5, (5, 1))
    r.check(
        "p=5 flagship analysis factors",
        report.factors.entries
        == {
            A2Weight(6, 6): 1,
            A2Weight(5, 5): 1,
            A2Weight(1, 1): 1,
            A2Weight(0, 0): 1,
        },
    )
    r.check(
        "p=5 flagship analysis verdict",
        report.verdict.kind is VerdictKind.ProvenYes,
    )
    r.check(
        "p=5 flagship statuses",
        report.statuses[A2Weight(1, 1)] is FactorStatus.SelfFactor
        and report.statuses[A2Weight(6, 6)] is FactorStatus.ExtZeroByPartnerRule
        and report.statuses[A2Weight(5, 5)] is FactorStatus.ExtZeroByLinkage
        and report.statuses[A2Weight(0, 0)] is FactorStatus.ExtZeroByLinkage,
    )
    strict_report = sl3_verdict(5, (5, 1), strict=True)
    r.check(
        "strict mode refuses the equal-restricted-part shortcut",
        strict_report.verdict.kind is VerdictKind.Inconclusive
        and strict_report.statuses[A2Weight(6, 6)] is FactorStatus.PossiblyNonzero,
    )

    adj7 = sl3_verdict(7, (1, 1))
    r.check(
        "p=7 adjoint tensor-square factors",
        adj7.factors.entries
        == {
            A2Weight(2, 2): 1,
            A2Weight(3, 0): 1,
            A2Weight(0, 3): 1,
            A2Weight(1, 1): 2,
            A2Weight(0, 0): 1,
        }
        and adj7.verdict.kind is VerdictKind.ProvenYes,
    )

    t5 = table_p5()
    rep5 = sl3_verdict(5, (1, 1), table=t5)
    r.check(
        "p=5 adjoint analysis is honestly inconclusive",
        rep5.verdict.kind is VerdictKind.Inconclusive
        and rep5.statuses[A2Weight(2, 2)] is FactorStatus.PossiblyNonzero
        and rep5.factors.entries
        == {
            A2Weight(2, 2): 1,
            A2Weight(3, 0): 1,
            A2Weight(0, 3): 1,
            A2Weight(1, 1): 3,
            A2Weight(0, 0): 1,
        },
    )

    t7 = table_p7()
    ok_verdicts = all(
        sl3_verdict(7, lam, table=t7).verdict.kind is VerdictKind.ProvenYes
        for lam in SET_A
    )
    r.check("p=7 family: all nine base weights certified", ok_verdicts)
    r.check(
        "p=7 family: all bump dimensions coprime to 7",
        all(dim_a2(mu) % 7 != 0 for mu in SET_B),
    )
    ok_pairs = True
    for lam in SET_A:
        for mu in SET_B:
            for n in (1, 2):
                cert = example_machine(7, lam, mu, n, table=t7)
                la, lb = lam
                ma, mb = mu
                ok_pairs = ok_pairs and tuple(cert.weight) == (
                    la + 7**n * ma,
                    lb + 7**n * mb,
                )
    r.check("p=7 family: example machine certifies every pair", ok_pairs)
    cert = example_machine(7, (1, 1), (3, 1), 1, table=t7)
    r.check(
        "example machine fixture (22, 8)",
        tuple(cert.weight) == (22, 8) and cert.bump_dimension == 24,
    )
    r.expect_raises(
        "example machine refuses an uncertified base",
        ValueError,
        lambda: example_machine(5, (1, 1), (1, 1), 2, table=t5),
    )
    r.expect_raises(
        "example machine refuses a p-divisible bump dimension",
        ValueError,
        lambda: example_machine(7, (1, 1), (5, 0), 1, table=t7),
    )
    r.expect_raises(
        "p=3 is rejected outright",
        ValueError,
        lambda: sl3_verdict(3, (1, 1)),
    )
    r.expect_raises(
        "p=2 is rejected outright",
        ValueError,
        lambda: sl3_verdict(2, (1, 1)),
    )

    ok_dimsum = True
    for lam in SET_A:
        rep = sl3_verdict(7, lam, table=t7)
        total = 0
        for mu, c in rep.factors.entries.items():
            total += c * simple_char_a2(7, mu, t7).dimension()
        want = simple_char_a2(7, lam).dimension() ** 2
        ok_dimsum = ok_dimsum and total == want
    r.check("p=7 family: factor dimensions sum to dim^2", ok_dimsum)


def _alarm_paths(r: _Report):
    def corrupt_lookup(kind, p, h, stride):
        z, idx = sl2chars._packed_basis(kind, p, h, stride)
        if idx >= 1:
            z += 3 << (64 * (idx - 1))
        return z, idx

    r.expect_raises(
        "corrupted tilting basis trips the peel alarm",
        NegativeMultiplicityError,
        lambda: sl2chars._greedy_peel(
            nabla_char(12) * nabla_char(12),
            "tilting",
            5,
            what="selftest",
            basis_override=corrupt_lookup,
        ),
    )
    poisoned = {
        (5, A2Weight(2, 2)): weyl_char_a2((2, 2))
        + 5 * weyl_char_a2((0, 0))
    }
    adj = simple_char_a2(5, (1, 1))
    r.expect_raises(
        "poisoned user table trips the rank-2 peel alarm",
        NegativeMultiplicityError,
        lambda: comp_factors_a2(5, adj * adj, table=poisoned),
    )
    r.expect_raises(
        "non-symmetric character is rejected by the rank-1 peel",
        NegativeMultiplicityError,
        lambda: comp_factors(5, FormalCharacter(1, {3: 1})),
    )


def run() -> "tuple[bool, list]":
    r = _Report()
    _rank1_goldens(r)
    _rank1_verdicts(r)
    _oracle_agreement(r)
    _y_identities(r)
    _clebsch_gordan(r)
    _random_dimensions(r)
    _packed_vs_naive(r)
    _reconstruction(r)
    _a2_geometry(r)
    _rank2_analysis(r)
    _alarm_paths(r)
    total = len(r.lines)
    r.lines.append(
        f"selftest: {'PASS' if r.failures == 0 else 'FAIL'} "
        f"({total - r.failures}/{total} checks)"
    )
    return r.failures == 0, r.lines
