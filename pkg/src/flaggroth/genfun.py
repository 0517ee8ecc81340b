"""One-row generating-function expansions and the Jacobi-Trudi determinant
built from them.

Two series variants exist.  Writing geom = 1/(1 + beta z^-1) =
sum_{s>=0} (-beta)^s z^-s:

  double_bracket (three cases):
      p >= q     : geom * prod_{k=q}^{p} (1 + beta x_k) / (1 - x_k z)
      p == q - 1 : geom
      p <  q - 1 : geom * prod_{k=p+1}^{q-1} (1 - x_k z) / (1 + beta x_k)

  matsumura (two cases):
      p >= q     : same as above
      p <  q     : geom

Every factor emits z-degree d only together with beta-degree >= max(-d, 0)
and x-degree >= max(d, 0), and products inherit that weighting; hence, in
the quotient ring with caps (B, D), every series built from these factors
is supported inside [-B, D] and the finite windows below are complete.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from .algebra import Poly, Ring, SeriesWindow, cap_min, determinant, \
    gen_binomial
from .errors import UsageError
from .shapes import SkewFlagged


class GVariant(enum.Enum):
    DOUBLE_BRACKET = "double_bracket"
    MATSUMURA = "matsumura"


def _require_finite(cap, what):
    if cap is None:
        raise UsageError(
            f"expanding {what} needs a finite cap: an infinite cap cannot "
            "guarantee an exact finite window")
    return cap


def _geom_beta(ring: Ring) -> SeriesWindow:
    """1/(1 + beta z^-1): z^-s carries (-beta)^s, complete within beta_cap."""
    bcap = _require_finite(ring.beta_cap, "1/(1 + beta/z)")
    coeffs = {-s: ring.monomial(s, (0,) * ring.n_vars, (-1) ** s)
              for s in range(bcap + 1)}
    return SeriesWindow(ring, -bcap, 0, coeffs)


def _inv_one_minus_xz(ring: Ring, k: int) -> SeriesWindow:
    """1/(1 - x_k z): z^m carries x_k^m, complete within x_cap."""
    xcap = _require_finite(ring.x_cap, "1/(1 - x z)")
    degs = [0] * ring.n_vars
    coeffs = {}
    for m in range(xcap + 1):
        degs[k - 1] = m
        coeffs[m] = ring.monomial(0, tuple(degs))
    return SeriesWindow(ring, 0, xcap, coeffs)


def _one_minus_xz(ring: Ring, k: int) -> SeriesWindow:
    return SeriesWindow(ring, 0, 1, {0: ring.one(), 1: -ring.x(k)})


def _one_plus_beta_x(ring: Ring, k: int) -> SeriesWindow:
    return SeriesWindow(ring, 0, 0, {0: ring.one() + ring.beta() * ring.x(k)})


def _inv_one_plus_beta_x(ring: Ring, k: int) -> SeriesWindow:
    """1/(1 + beta x_k) = sum_t (-beta x_k)^t, a z-degree-0 factor; the sum
    is finite in the quotient ring because each step costs beta and x."""
    tmax = cap_min(ring.beta_cap, ring.x_cap)
    _require_finite(tmax, "1/(1 + beta x)")
    degs = [0] * ring.n_vars
    acc = ring.zero()
    for t in range(tmax + 1):
        degs[k - 1] = t
        acc = acc + ring.monomial(t, tuple(degs), (-1) ** t)
    return SeriesWindow(ring, 0, 0, {0: acc})


@lru_cache(maxsize=None)
def g_series(p: int, q: int, variant: GVariant, ring: Ring) -> SeriesWindow:
    """Complete window of the one-row series for the given variant.

    Coefficients are exact in ring's quotient for every exponent: inside
    the window they are stored, outside they are provably zero.
    """
    if q < 1:
        raise UsageError(f"g_series needs q >= 1, got q={q}")
    if p < 0:
        raise UsageError(f"g_series needs p >= 0, got p={p}")
    factors = [_geom_beta(ring)]
    if p >= q:
        if p > ring.n_vars:
            raise UsageError(f"series [{p}/{q}] uses x_{p} but n_vars="
                             f"{ring.n_vars}")
        for k in range(q, p + 1):
            factors.append(_one_plus_beta_x(ring, k))
            factors.append(_inv_one_minus_xz(ring, k))
    elif p < q - 1 and variant is GVariant.DOUBLE_BRACKET:
        if q - 1 > ring.n_vars:
            raise UsageError(f"series [[{p}/{q}]] uses x_{q - 1} but n_vars="
                             f"{ring.n_vars}")
        for k in range(p + 1, q):
            factors.append(_one_minus_xz(ring, k))
            factors.append(_inv_one_plus_beta_x(ring, k))
    # p == q - 1, and p < q for matsumura: the geometric factor alone
    support = (None if ring.beta_cap is None else -ring.beta_cap, ring.x_cap)
    window = factors[0]
    for factor in factors[1:]:
        window = window.multiply(factor, asserted_support=support)
    return window.trimmed()


@lru_cache(maxsize=None)
def _jt_entry(fi: int, gj: int, d: int, i_minus_j: int, variant: GVariant,
              ring: Ring) -> Poly:
    series = g_series(fi, gj, variant, ring)
    if i_minus_j >= 0:
        smax = i_minus_j
        if ring.beta_cap is not None:
            smax = min(smax, ring.beta_cap)
    else:
        smax = _require_finite(
            ring.beta_cap, f"the infinite s-sum of entry (i-j={i_minus_j})")
    beta = ring.beta()
    beta_pow = ring.one()
    acc = ring.zero()
    for s in range(smax + 1):
        if d + s > series.hi:
            break
        coeff = gen_binomial(i_minus_j, s)
        if coeff != 0:
            acc = acc + series.coefficient(d + s).scale(coeff) * beta_pow
        beta_pow = beta_pow * beta
        if beta_pow.is_zero():
            break
    return acc


def jt_entry(inst: SkewFlagged, i: int, j: int,
             variant: GVariant = GVariant.DOUBLE_BRACKET) -> Poly:
    """Entry (i, j) of the Jacobi-Trudi matrix:
    sum_{s>=0} C(i-j, s) beta^s G^{[f_i/g_j]}_{lam_i - mu_j - i + j + s}.

    The sum is finite: for i >= j the binomial vanishes past i-j, and for
    i < j each summand carries beta^s so truncation at beta_cap is exact.
    """
    if not (1 <= i <= inst.r and 1 <= j <= inst.r):
        raise UsageError(f"entry index ({i}, {j}) outside 1..{inst.r}")
    d = inst.lam[i - 1] - inst.mu[j - 1] - i + j
    return _jt_entry(inst.f[i - 1], inst.g[j - 1], d, i - j, variant,
                     inst.ring())


def jt_determinant(inst: SkewFlagged,
                   variant: GVariant = GVariant.DOUBLE_BRACKET) -> Poly:
    """The flagged skew Grothendieck polynomial as the r x r determinant of
    one-row series entries, computed exactly in the instance's quotient
    ring.  The result carries its ring so callers can compare or rerun at
    other caps."""
    ring = inst.ring()
    if inst.r == 0:
        return ring.one()
    rows = [[jt_entry(inst, i, j, variant) for j in range(1, inst.r + 1)]
            for i in range(1, inst.r + 1)]
    return determinant(rows).require_integer_coefficients()
