"""Truncated free-fermion Fock space on the exact semi-infinite wedge.

A basis state of charge m is the vacuum sea {..., m-2, m-1} with finitely
many holes below m ("removed") and finitely many particles at or above m
("added"), |added| = |removed|.  Fermion modes act by insert/remove with the
wedge sign (parity of occupied indices above the touched one), currents move
single particles, and vertex-operator exponentials terminate either by
energy (lowering) or by cap-weighted raising (every unit of raised energy
carries a unit of beta- or x-degree).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, Ring, determinant
from .errors import InternalError, UsageError

PSI = "psi"
PSI_STAR = "psi*"


# ---------------------------------------------------------------------------
# states

@dataclass(frozen=True)
class FockState:
    charge: int
    added: frozenset
    removed: frozenset

    def __post_init__(self):
        if any(a < self.charge for a in self.added):
            raise InternalError("added indices must be >= charge")
        if any(b >= self.charge for b in self.removed):
            raise InternalError("removed indices must be < charge")
        if len(self.added) != len(self.removed):
            raise InternalError("|added| != |removed| at fixed charge")

    def occupied(self, n: int) -> bool:
        if n < self.charge:
            return n not in self.removed
        return n in self.added

    def energy(self) -> int:
        m = self.charge
        return sum(a - m + 1 for a in self.added) + \
            sum(m - b for b in self.removed) - len(self.added)

    def __repr__(self):
        return (f"|{self.charge}; +{sorted(self.added)} "
                f"-{sorted(self.removed)}>")


def vacuum_state(m: int) -> FockState:
    return FockState(m, frozenset(), frozenset())


def _insert(state: FockState, n: int):
    """psi_n on a basis state: None if occupied, else (sign, new state)."""
    if state.occupied(n):
        return None
    above = sum(1 for a in state.added if a > n)
    if n < state.charge:
        above += max(0, state.charge - 1 - n) - \
            sum(1 for b in state.removed if b > n)
        removed = state.removed - {n}
        added = state.added
    else:
        removed = state.removed
        added = state.added | {n}
    # charge grows by one: index `charge` joins the sea
    c = state.charge
    if c in added:
        added = added - {c}
    else:
        removed = removed | {c}
    return (-1) ** above, FockState(c + 1, added, removed)


def _remove(state: FockState, n: int):
    """psi*_n on a basis state: None if vacant, else (sign, new state)."""
    if not state.occupied(n):
        return None
    above = sum(1 for a in state.added if a > n)
    if n >= state.charge:
        added = state.added - {n}
        removed = state.removed
    else:
        above += max(0, state.charge - 1 - n) - \
            sum(1 for b in state.removed if b > n)
        added = state.added
        removed = state.removed | {n}
    # charge drops by one: index charge-1 leaves the sea
    c = state.charge
    if c - 1 in removed:
        removed = removed - {c - 1}
    else:
        added = added | {c - 1}
    return (-1) ** above, FockState(c - 1, added, removed)


def partitions_up_to(max_size: int):
    """All partitions of every size <= max_size (decreasing tuples)."""
    def exact(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in exact(n - first, first):
                yield (first,) + rest

    for size in range(max_size + 1):
        yield from exact(size, size)


def partition_to_state(charge: int, lam) -> FockState:
    """Basis state of the given charge whose excitation is the partition."""
    occ = [charge - i + lam[i - 1] for i in range(1, len(lam) + 1)]
    added = frozenset(s for s in occ if s >= charge)
    removed = frozenset(charge - i for i in range(1, len(lam) + 1)) - set(occ)
    return FockState(charge, added, removed)


def state_to_partition(state: FockState) -> tuple:
    low = min(state.removed, default=state.charge)
    occ = sorted(state.added, reverse=True) + \
        [s for s in range(state.charge - 1, low - 1, -1)
         if s not in state.removed]
    lam = [s - state.charge + i for i, s in enumerate(occ, start=1)]
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


def enumerate_basis_states(charge: int, max_energy: int):
    for lam in partitions_up_to(max_energy):
        yield partition_to_state(charge, lam)


# ---------------------------------------------------------------------------
# vectors

class FockVector:
    """Finite linear combination of basis states with Poly coefficients.
    Immutable by convention; all states share one charge unless zero."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = {st: c for st, c in terms.items() if not c.is_zero()}

    @classmethod
    def basis(cls, ring: Ring, state: FockState) -> "FockVector":
        return cls(ring, {state: ring.one()})

    @classmethod
    def vacuum(cls, ring: Ring, m: int) -> "FockVector":
        return cls.basis(ring, vacuum_state(m))

    def is_zero(self) -> bool:
        return not self.terms

    def charges(self) -> set:
        return {st.charge for st in self.terms}

    def max_energy(self) -> int:
        return max((st.energy() for st in self.terms), default=0)

    def add(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for st, c in other.terms.items():
            cur = out.get(st)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(st, None)
            else:
                out[st] = s
        return FockVector(self.ring, out)

    def scale(self, c) -> "FockVector":
        return FockVector(self.ring,
                          {st: p.scale(c) for st, p in self.terms.items()})

    def scale_poly(self, p: Poly) -> "FockVector":
        return FockVector(self.ring,
                          {st: q * p for st, q in self.terms.items()})

    def __repr__(self):
        items = ", ".join(f"{st!r}: {p.to_text()}"
                          for st, p in self.terms.items())
        return f"FockVector({items})"


# ---------------------------------------------------------------------------
# operators

def apply_fermion(kind: str, n: int, vec: FockVector) -> FockVector:
    """psi_n (kind 'psi') or psi*_n (kind 'psi*'), extended linearly."""
    if kind not in (PSI, PSI_STAR):
        raise UsageError(f"unknown fermion kind {kind!r}")
    action = _insert if kind == PSI else _remove
    out: dict = {}
    for st, coeff in vec.terms.items():
        hit = action(st, n)
        if hit is None:
            continue
        sign, st2 = hit
        contrib = coeff if sign == 1 else -coeff
        cur = out.get(st2)
        out[st2] = contrib if cur is None else cur + contrib
    return FockVector(vec.ring, out)


def is_annihilator(kind: str, n: int) -> bool:
    return n < 0 if kind == PSI else n >= 0


def normal_order_pair(first, second):
    """Normal ordering of a two-mode monomial: annihilators move right, one
    sign per transposition.  Modes are (kind, index) pairs; returns
    (sign, (left, right))."""
    for kind, _ in (first, second):
        if kind not in (PSI, PSI_STAR):
            raise UsageError(f"unknown fermion kind {kind!r}")
    if is_annihilator(*first) and not is_annihilator(*second):
        return -1, (second, first)
    return 1, (first, second)


def apply_current(m: int, vec: FockVector) -> FockVector:
    """a_m = sum_k :psi_k psi*_{k+m}:.  For m != 0 this moves one particle
    from t to t-m in every possible way; a_0 multiplies by the charge."""
    out: dict = {}
    for st, coeff in vec.terms.items():
        if m == 0:
            if st.charge != 0:
                contrib = coeff.scale(st.charge)
                cur = out.get(st)
                out[st] = contrib if cur is None else cur + contrib
            continue
        cands = set(st.added) | {b + m for b in st.removed}
        if m < 0:
            cands.update(range(st.charge + m, st.charge))
        for t in cands:
            if not st.occupied(t) or st.occupied(t - m):
                continue
            sign1, st1 = _remove(st, t)
            sign2, st2 = _insert(st1, t - m)
            contrib = coeff if sign1 * sign2 == 1 else -coeff
            cur = out.get(st2)
            out[st2] = contrib if cur is None else cur + contrib
    return FockVector(vec.ring, out)


# ---------------------------------------------------------------------------
# alphabets and vertex-operator exponentials

@dataclass(frozen=True)
class Alphabet:
    """Signed formal sum of variable lists entering a Hamiltonian weight.
    Summands: ('x', sign, lo, hi) for the block x_lo..x_hi (inclusive,
    1-based) and ('beta', sign) for the single value -beta."""

    blocks: tuple

    @classmethod
    def empty(cls) -> "Alphabet":
        return cls(())

    @classmethod
    def x_range(cls, lo: int, hi: int, sign: int = 1) -> "Alphabet":
        if lo > hi:
            return cls(())
        return cls((("x", sign, lo, hi),))

    @classmethod
    def x_prefix(cls, f: int) -> "Alphabet":
        return cls.x_range(1, f)

    @classmethod
    def prefix_difference(cls, a: int, b: int) -> "Alphabet":
        """x^[a] minus x^[b], simplified to one signed contiguous block."""
        if a >= b:
            return cls.x_range(b + 1, a, 1)
        return cls.x_range(a + 1, b, -1)

    @classmethod
    def minus_beta(cls) -> "Alphabet":
        return cls((("beta", 1),))

    def is_empty(self) -> bool:
        return not self.blocks

    def has_x(self) -> bool:
        return any(b[0] == "x" for b in self.blocks)

    def has_beta(self) -> bool:
        return any(b[0] == "beta" for b in self.blocks)

    def power_sum(self, n: int, ring: Ring) -> Poly:
        """p_n of the alphabet: sum of x_k^n over blocks, (-beta)^n for the
        beta point, with signs."""
        acc = ring.zero()
        for block in self.blocks:
            if block[0] == "x":
                _, sign, lo, hi = block
                for k in range(lo, hi + 1):
                    if k > ring.n_vars:
                        raise UsageError(
                            f"alphabet uses x_{k} but n_vars={ring.n_vars}")
                    degs = [0] * ring.n_vars
                    degs[k - 1] = n
                    acc = acc + ring.monomial(0, tuple(degs), sign)
            else:
                _, sign = block
                acc = acc + ring.monomial(n, (0,) * ring.n_vars,
                                          sign * (-1) ** n)
        return acc

    def describe(self) -> str:
        if not self.blocks:
            return "0"
        parts = []
        for block in self.blocks:
            if block[0] == "x":
                _, sign, lo, hi = block
                s = f"x[{lo}..{hi}]"
            else:
                sign = block[1]
                s = "(-beta)"
            parts.append(("-" if sign < 0 else "+") + s)
        return "".join(parts)


_EXP_SAFETY = 10_000


def apply_exp_h(direction: str, alphabet: Alphabet, sign: int,
                vec: FockVector, order_sink=None) -> FockVector:
    """e^{sign * H(alphabet)} (direction 'H', currents a_n with n > 0) or
    e^{sign * H*(alphabet)} (direction 'H*', currents a_{-n}) applied to a
    ket.

    Lowering terminates by energy.  Raising terminates because each unit of
    raised energy multiplies the coefficient by one unit of beta-degree
    (beta alphabets) or x-degree (x alphabets), so the series dies at the
    caps; an H* call whose relevant cap is infinite is rejected rather than
    silently diverging.  The termination order is appended to order_sink
    when given, making the truncation auditable.
    """
    if direction not in ("H", "H*"):
        raise UsageError(f"unknown exponential direction {direction!r}")
    if sign not in (1, -1):
        raise UsageError("sign must be +1 or -1")
    if alphabet.is_empty() or vec.is_zero():
        if order_sink is not None:
            order_sink.append(0)
        return vec
    ring = vec.ring
    if direction == "H*":
        if alphabet.has_beta() and ring.beta_cap is None:
            raise UsageError(
                "raising with a beta-weighted alphabet needs a finite "
                "beta_cap")
        if alphabet.has_x() and ring.x_cap is None:
            raise UsageError(
                "raising with an x-block alphabet needs a finite x_cap")
    total = vec
    term = vec
    k = 0
    while not term.is_zero():
        k += 1
        if k > _EXP_SAFETY:
            raise InternalError("vertex-operator exponential failed to "
                                "terminate (broken caps?)")
        term = _apply_h(direction, alphabet, term).scale(Fraction(sign, k))
        total = total.add(term)
    if order_sink is not None:
        order_sink.append(k)
    return total


def _apply_h(direction: str, alphabet: Alphabet, vec: FockVector):
    ring = vec.ring
    if direction == "H":
        n_bound = vec.max_energy()
    else:
        n_bound = 0
        if alphabet.has_beta():
            n_bound = max(n_bound, ring.beta_cap)
        if alphabet.has_x():
            n_bound = max(n_bound, ring.x_cap)
    out = FockVector(ring, {})
    for n in range(1, n_bound + 1):
        pn = alphabet.power_sum(n, ring)
        if pn.is_zero():
            continue
        moved = apply_current(n if direction == "H" else -n, vec)
        if moved.is_zero():
            continue
        out = out.add(moved.scale_poly(pn).scale(Fraction(1, n)))
    return out


# ---------------------------------------------------------------------------
# pairings

def pair_with_bra(r: int, vec: FockVector) -> Poly:
    """<-r| v: the coefficient of the shifted vacuum |-r> in v (zero when
    the charge does not match)."""
    if r < 0:
        raise UsageError("pair_with_bra expects r >= 0 (the bra <-r|)")
    return vec.terms.get(vacuum_state(-r), vec.ring.zero())


def two_point(r: int, m: int, n: int) -> int:
    """<-r| psi*_n psi_m |-r> = delta_{m,n} [m >= -r]."""
    if r < 0:
        raise UsageError("two_point expects r >= 0")
    return 1 if m == n and m >= -r else 0


def contraction(m: int, n: int) -> int:
    """<psi_m psi*_n> = delta_{m,n} [m < 0]."""
    return 1 if m == n and m < 0 else 0


def wick_expectation(creators, annihilators) -> int:
    """<psi_{m_1}..psi_{m_k} psi*_{n_k}..psi*_{n_1}> as the determinant of
    pairwise contractions (Wick's theorem)."""
    ms = list(creators)
    ns = list(annihilators)
    if len(ms) != len(ns):
        raise UsageError("wick_expectation needs equal-length mode lists")
    if not ms:
        return 1
    rows = [[contraction(m, n) for n in ns] for m in ms]
    return determinant(rows)
