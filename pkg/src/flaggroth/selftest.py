"""Desk-scale property suites behind the `selftest` CLI command.

Each check re-derives expected values through an independent route (brute
force, direct operator application, exhaustive enumeration) and compares
against the production code path.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

from .algebra import Ring, determinant, gen_binomial
from . import fock
from .genfun import GVariant, g_series, jt_determinant
from .groth import flagged_groth_fermionic, g_n_fermionic
from .shapes import SkewFlagged, is_vexillary
from .tableaux import tableaux_polynomial


def _random_poly(rng, ring, max_terms=4):
    p = ring.zero()
    for _ in range(rng.randrange(max_terms + 1)):
        bdeg = rng.randrange((ring.beta_cap or 3) + 1)
        degs = [rng.randrange(3) for _ in range(ring.n_vars)]
        p = p + ring.monomial(bdeg, degs, rng.randrange(-4, 5) or 1)
    return p


def check_ring_laws(log) -> bool:
    rng = random.Random(20240517)
    ring = Ring(2, 3, 5)
    ok = True
    for _ in range(25):
        a, b, c = (_random_poly(rng, ring) for _ in range(3))
        ok &= (a + b) + c == a + (b + c)
        ok &= a * b == b * a
        ok &= (a * b) * c == a * (b * c)
        ok &= a * (b + c) == a * b + a * c
    log("ring laws (assoc/comm/distrib)", ok)
    return ok


def check_truncation_homomorphism(log) -> bool:
    rng = random.Random(987)
    big = Ring(2, 4, 8)
    small = Ring(2, 2, 4)
    ok = True
    for _ in range(25):
        a, b = _random_poly(rng, big), _random_poly(rng, big)
        ok &= (a * b).truncate(small) == \
            a.truncate(small) * b.truncate(small)
    log("truncation is a ring homomorphism", ok)
    return ok


def check_determinant_brute(log) -> bool:
    ring = Ring(2, 2, 6)
    pool = [ring.one(), ring.x(1), ring.x(2), ring.beta(), -ring.x(1)]
    rng = random.Random(7)
    ok = True
    for _ in range(12):
        rows = [[rng.choice(pool) for _ in range(3)] for _ in range(3)]
        brute = ring.zero()
        for perm in permutations(range(3)):
            sgn = 1
            for i in range(3):
                for j in range(i + 1, 3):
                    if perm[i] > perm[j]:
                        sgn = -sgn
            term = ring.one()
            for i in range(3):
                term = term * rows[i][perm[i]]
            brute = brute + term.scale(sgn)
        ok &= determinant(rows) == brute
    log("determinant vs permutation expansion", ok)
    return ok


def check_gen_binomial(log) -> bool:
    ok = True
    for a in range(-5, 6):
        # coefficients of (1+t)^a via series division, independent of the
        # falling-factorial formula
        if a >= 0:
            series = [gen_binomial_reference_nonneg(a, s) for s in range(9)]
        else:
            series = _invert_binomial_series(-a, 9)
        for s in range(9):
            ok &= gen_binomial(a, s) == series[s]
    log("gen_binomial vs (1+t)^a expansion", ok)
    return ok


def gen_binomial_reference_nonneg(a: int, s: int) -> int:
    import math
    return math.comb(a, s) if s <= a else 0


def _invert_binomial_series(k: int, order: int):
    import math
    denom = [math.comb(k, s) if s <= k else 0 for s in range(order)]
    inv = [Fraction(1)]
    for n in range(1, order):
        acc = Fraction(0)
        for i in range(1, n + 1):
            acc += denom[i] * inv[n - i]
        inv.append(-acc)
    assert all(c.denominator == 1 for c in inv)
    return [int(c) for c in inv]


def check_vexillary_pattern(log) -> bool:
    ok = True
    for n in range(1, 6):
        for w in permutations(range(1, n + 1)):
            # pattern 2143: positions i<j<k<l with w(j)<w(i)<w(l)<w(k)
            has_2143 = any(
                w[j] < w[i] < w[l] < w[k]
                for i, j, k, l in _quadruples(n))
            ok &= is_vexillary(w) == (not has_2143)
    log("vexillary == 2143-avoiding (n <= 5)", ok)
    return ok


def _quadruples(n):
    return ((i, j, k, l)
            for i in range(n) for j in range(i + 1, n)
            for k in range(j + 1, n) for l in range(k + 1, n))


def check_anticommutators(log) -> bool:
    ring = Ring(1, 2, 2)
    ok = True
    for charge in range(-2, 3):
        for st in fock.enumerate_basis_states(charge, 3):
            v = fock.FockVector.basis(ring, st)
            for m in range(-3, 3):
                for n in range(-3, 3):
                    pp = fock.apply_fermion(fock.PSI, m,
                                            fock.apply_fermion(fock.PSI, n, v))
                    pp2 = fock.apply_fermion(fock.PSI, n,
                                             fock.apply_fermion(fock.PSI, m, v))
                    ok &= pp.add(pp2).is_zero()
                    mixed = fock.apply_fermion(
                        fock.PSI, m,
                        fock.apply_fermion(fock.PSI_STAR, n, v)).add(
                        fock.apply_fermion(
                            fock.PSI_STAR, n,
                            fock.apply_fermion(fock.PSI, m, v)))
                    expect = v if m == n else fock.FockVector(ring, {})
                    ok &= mixed.terms == expect.terms
    log("fermion anticommutation relations", ok)
    return ok


def check_current_relations(log) -> bool:
    ring = Ring(1, 2, 2)
    ok = True
    for charge in range(-2, 3):
        for st in fock.enumerate_basis_states(charge, 3):
            v = fock.FockVector.basis(ring, st)
            for m in range(-2, 3):
                for n in range(-2, 3):
                    lhs = fock.apply_current(m, fock.apply_current(n, v)).add(
                        fock.apply_current(n, fock.apply_current(m, v))
                        .scale(-1))
                    expect = v.scale(m) if m + n == 0 else \
                        fock.FockVector(ring, {})
                    ok &= lhs.terms == expect.terms
                for n in range(-3, 3):
                    comm = fock.apply_current(
                        m, fock.apply_fermion(fock.PSI, n, v)).add(
                        fock.apply_fermion(
                            fock.PSI, n, fock.apply_current(m, v)).scale(-1))
                    ok &= comm.terms == fock.apply_fermion(
                        fock.PSI, n - m, v).terms
    log("current commutation relations", ok)
    return ok


def check_wick(log) -> bool:
    ring = Ring(1, 0, 0)
    ok = True
    idx = range(-3, 3)
    for k in (1, 2):
        for ms in product(idx, repeat=k):
            for ns in product(idx, repeat=k):
                v = fock.FockVector.vacuum(ring, 0)
                for n in ns:
                    v = fock.apply_fermion(fock.PSI_STAR, n, v)
                for m in reversed(ms):
                    v = fock.apply_fermion(fock.PSI, m, v)
                direct = fock.pair_with_bra(0, v)
                expect = fock.wick_expectation(ms, ns)
                ok &= direct == ring.const(expect)
    log("Wick determinant vs direct evaluation", ok)
    return ok


def check_one_row(log) -> bool:
    ring = Ring(2, 3, 7)
    ok = True
    for f in range(0, 3):
        for g in range(1, 3):
            series = g_series(f, g, GVariant.DOUBLE_BRACKET, ring)
            for n in range(-2, 4):
                ok &= g_n_fermionic(n, f, g, ring) == series.coefficient(n)
    log("one-row fermionic formula vs series", ok)
    return ok


def check_cross_methods(log) -> bool:
    ok = True
    cases = [
        SkewFlagged.make((1,), f=(2,), g=(1,), n_vars=2),
        SkewFlagged.make((1, 1), f=(1, 2), g=(1, 1), n_vars=2),
        SkewFlagged.make((2, 1), mu=(1,), f=(2, 3), g=(1, 1), n_vars=3),
        SkewFlagged.make((2,), f=(2,), g=(2,), n_vars=2,
                         beta_cap=3, x_cap=6),
        SkewFlagged.make((2, 2), mu=(1,), f=(2, 2), g=(1, 2), n_vars=2,
                         beta_cap=3, x_cap=6),
    ]
    for inst in cases:
        det = jt_determinant(inst, GVariant.DOUBLE_BRACKET)
        ferm = flagged_groth_fermionic(inst)
        ok &= det == ferm
        if inst.is_g_trivial():
            ok &= det == tableaux_polynomial(inst)
    log("determinant vs fermionic vs tableaux", ok)
    return ok


ALL_CHECKS = (
    check_ring_laws,
    check_truncation_homomorphism,
    check_determinant_brute,
    check_gen_binomial,
    check_vexillary_pattern,
    check_anticommutators,
    check_current_relations,
    check_wick,
    check_one_row,
    check_cross_methods,
)


def run_selftest(emit=print) -> bool:
    passed = True

    def log(name, ok):
        emit(f"{'ok' if ok else 'FAIL'}: {name}")

    for check in ALL_CHECKS:
        passed &= check(log)
    emit("selftest: all checks passed" if passed
         else "selftest: FAILURES detected")
    return passed
