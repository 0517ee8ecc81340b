"""Combinatorial oracles: flagged skew set-valued tableaux (the g = 1
Grothendieck case) and flagged semistandard tableaux (the beta = 0 Schur
case).

Tableau rules (Knutson--Miller--Yong convention): each cell of lambda/mu
holds a nonempty finite set of positive integers; along rows max(left) <=
min(right), down columns max(upper) < min(lower); every entry in row i is
<= f_i.  A tableau T contributes beta^(|T| - #cells) * prod_k x_k^(mult of k).
"""

from __future__ import annotations

from .algebra import Poly
from .errors import UsageError
from .shapes import SkewFlagged, skew_cells


def _check_oracle_applies(inst: SkewFlagged, need_g_one: bool):
    if need_g_one and not inst.is_g_trivial():
        raise UsageError(
            "the set-valued tableau oracle is only defined for g = (1,...,1)")
    for fi in inst.f:
        if fi > inst.n_vars:
            raise UsageError(
                f"flag {fi} exceeds n_vars={inst.n_vars}: tableau entries "
                "would have no matching variable")


def _subsets_in_colex(flag: int):
    """Nonempty subsets of {1..flag} as sorted tuples, in colexicographic
    order (= increasing bitmask order, bit k-1 for element k)."""
    out = []
    for mask in range(1, 1 << flag):
        out.append(tuple(k + 1 for k in range(flag) if mask >> k & 1))
    return out


def enumerate_fsvt(inst: SkewFlagged):
    """Yield every flagged set-valued tableau of inst (g must be all ones)
    as a dict cell -> sorted tuple of entries.  Cells are filled in
    row-major reading order, candidate sets tried in colex order, so the
    stream is deterministic and duplicate-free."""
    _check_oracle_applies(inst, need_g_one=True)
    cells = skew_cells(inst.lam, inst.mu)
    candidates = {fi: _subsets_in_colex(fi) for fi in set(inst.f)}
    filling: dict = {}

    def fill(pos: int):
        if pos == len(cells):
            yield dict(filling)
            return
        i, j = cells[pos]
        left = filling.get((i, j - 1))
        up = filling.get((i - 1, j))
        min_allowed = 1
        if left is not None:
            min_allowed = max(min_allowed, left[-1])      # weak along rows
        if up is not None:
            min_allowed = max(min_allowed, up[-1] + 1)    # strict down cols
        for cand in candidates[inst.f[i - 1]]:
            if cand[0] >= min_allowed:
                filling[(i, j)] = cand
                yield from fill(pos + 1)
        filling.pop((i, j), None)

    yield from fill(0)


def tableaux_polynomial(inst: SkewFlagged) -> Poly:
    """Generating function of flagged set-valued tableaux:
    sum over T of beta^(|T| - #cells) x^T.  A genuine polynomial."""
    ring = inst.ring()
    ncells = inst.skew_size()
    acc: dict = {}
    for tab in enumerate_fsvt(inst):
        xdegs = [0] * inst.n_vars
        total = 0
        for entries in tab.values():
            total += len(entries)
            for v in entries:
                xdegs[v - 1] += 1
        key = (total - ncells, tuple(xdegs))
        acc[key] = acc.get(key, 0) + 1
    poly = ring.zero()
    for (bdeg, xdegs), count in acc.items():
        poly = poly + ring.monomial(bdeg, xdegs, count)
    return poly.require_integer_coefficients()


def enumerate_flagged_ssyt(inst: SkewFlagged):
    """Yield flagged semistandard tableaux (single entries per cell) as
    dict cell -> value, in reading order with entries tried increasingly."""
    _check_oracle_applies(inst, need_g_one=False)
    cells = skew_cells(inst.lam, inst.mu)
    filling: dict = {}

    def fill(pos: int):
        if pos == len(cells):
            yield dict(filling)
            return
        i, j = cells[pos]
        lo = 1
        left = filling.get((i, j - 1))
        up = filling.get((i - 1, j))
        if left is not None:
            lo = max(lo, left)
        if up is not None:
            lo = max(lo, up + 1)
        for v in range(lo, inst.f[i - 1] + 1):
            filling[(i, j)] = v
            yield from fill(pos + 1)
        filling.pop((i, j), None)

    yield from fill(0)


def ssyt_polynomial(inst: SkewFlagged) -> Poly:
    """Flagged skew Schur polynomial: the beta = 0 slice of the set-valued
    generating function, enumerated independently over singleton fillings."""
    ring = inst.ring()
    acc: dict = {}
    for tab in enumerate_flagged_ssyt(inst):
        xdegs = [0] * inst.n_vars
        for v in tab.values():
            xdegs[v - 1] += 1
        key = tuple(xdegs)
        acc[key] = acc.get(key, 0) + 1
    poly = ring.zero()
    for xdegs, count in acc.items():
        poly = poly + ring.monomial(0, xdegs, count)
    return poly.require_integer_coefficients()
