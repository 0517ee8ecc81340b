"""Problem-instance data: partitions, flagged skew shapes, and the
inversion-set combinatorics of vexillary permutations."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .algebra import Ring
from .errors import UsageError


# ---------------------------------------------------------------------------
# partitions

def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(a >= b for a, b in zip(parts, parts[1:])) and \
        all(p >= 0 for p in parts)


def check_partition(parts, name: str) -> tuple:
    parts = tuple(int(p) for p in parts)
    if not is_partition(parts):
        raise UsageError(f"{name}={parts} is not weakly decreasing >= 0")
    return parts


def skew_cells(lam, mu):
    """Cells of lambda/mu in row-major reading order, 1-based (row, col)."""
    return [(i, j)
            for i in range(1, len(lam) + 1)
            for j in range(mu[i - 1] + 1, lam[i - 1] + 1)]


def tableau_excess_bound(lam, mu, f) -> int:
    """Upper bound on the total excess (extra entries beyond one per cell)
    of any flagged set-valued tableau of shape lambda/mu with row flags f.

    Two provable bounds are combined.  Column sets are pairwise disjoint
    (column-strictness), so per column the total entry count is at most the
    best packing of disjoint increasing nonempty sets S_i <= f_i down the
    column, computed by a small DP.  Along a row, horizontally adjacent sets
    share at most one value (max(left) <= min(right)), so a nonempty row
    contributes excess at most f_i - 1.  The min of the two bounds caps the
    beta-degree of the tableau generating function.
    """
    if not lam:
        return 0
    row_excess = sum(f[i] - 1 for i in range(len(lam)) if lam[i] > mu[i])
    total = 0
    ncells = 0
    for c in range(1, lam[0] + 1):
        rows = [i for i in range(1, len(lam) + 1)
                if mu[i - 1] < c <= lam[i - 1]]
        if not rows:
            continue
        ncells += len(rows)
        memo = {}

        def best(idx: int, vmin: int) -> int:
            # max total size of disjoint sets for rows[idx:], values >= vmin
            if idx == len(rows):
                return 0
            key = (idx, vmin)
            if key in memo:
                return memo[key]
            cap = f[rows[idx] - 1]
            top = -1
            for size in range(1, cap - vmin + 2):
                if vmin + size - 1 > cap:
                    break
                rest = best(idx + 1, vmin + size)
                if rest >= 0:
                    top = max(top, size + rest)
            memo[key] = top
            return top

        col_max = best(0, 1)
        if col_max < 0:
            # column-strictness cannot be met at all: no tableaux exist,
            # the generating function is 0 and any cap is safe
            return 0
        total += col_max
    return min(total - ncells, row_excess)


# ---------------------------------------------------------------------------
# flagged skew instances

@dataclass(frozen=True)
class SkewFlagged:
    """A problem instance: partitions mu <= lam (mu zero-padded to
    r = len(lam)), row flags f and g of length r, the variable count, and
    the truncation caps of the working quotient ring."""

    lam: tuple[int, ...]
    mu: tuple[int, ...]
    f: tuple[int, ...]
    g: tuple[int, ...]
    n_vars: int
    beta_cap: int | None
    x_cap: int | None

    def __post_init__(self):
        check_partition(self.lam, "lambda")
        check_partition(self.mu, "mu")
        r = len(self.lam)
        if len(self.mu) != r:
            raise UsageError("mu must be padded to len(lambda)")
        if any(m > l for m, l in zip(self.mu, self.lam)):
            raise UsageError(f"mu={self.mu} not contained in lambda={self.lam}")
        if len(self.f) != r or len(self.g) != r:
            raise UsageError("f and g must have length len(lambda)")
        if any(v < 1 for v in self.f) or any(v < 1 for v in self.g):
            raise UsageError("flags must be positive integers")
        need = max([1] + [max(self.f, default=0),
                          max(self.g, default=1) - 1])
        if self.n_vars < need:
            raise UsageError(
                f"n_vars={self.n_vars} < max(max f, max g - 1)={need}")

    @classmethod
    def make(cls, lam, mu=None, f=(), g=None, n_vars=None,
             beta_cap=None, x_cap=None) -> "SkewFlagged":
        """Build an instance with defaults: mu = empty, g = all ones,
        n_vars = smallest legal count, caps = the tableau-derived degree
        bounds (beta: excess bound; x: |lambda/mu| + beta_cap)."""
        lam = check_partition(lam, "lambda")
        r = len(lam)
        f = tuple(int(v) for v in f)
        mu = tuple(int(v) for v in (mu or ()))
        mu = mu + (0,) * (r - len(mu))
        if g is None:
            g = (1,) * r
        g = tuple(int(v) for v in g)
        if len(f) != r or len(g) != r or len(mu) != r:
            raise UsageError("lambda, mu, f and g must all have length "
                             f"r = {r} (after padding mu)")
        if n_vars is None:
            n_vars = max([1] + [max(f, default=0), max(g, default=1) - 1])
        if beta_cap is None:
            beta_cap = tableau_excess_bound(lam, mu, f)
        if x_cap is None:
            size = sum(lam) - sum(mu)
            x_cap = size + beta_cap
        return cls(lam, mu, f, g, n_vars, beta_cap, x_cap)

    @property
    def r(self) -> int:
        return len(self.lam)

    def skew_size(self) -> int:
        return sum(self.lam) - sum(self.mu)

    def ring(self) -> Ring:
        return Ring(self.n_vars, self.beta_cap, self.x_cap)

    def with_caps(self, beta_cap, x_cap) -> "SkewFlagged":
        return replace(self, beta_cap=beta_cap, x_cap=x_cap)

    def bumped(self, by: int = 1) -> "SkewFlagged":
        bc = None if self.beta_cap is None else self.beta_cap + by
        xc = None if self.x_cap is None else self.x_cap + by
        return self.with_caps(bc, xc)

    def is_g_trivial(self) -> bool:
        return all(v == 1 for v in self.g)


def coincidence_condition(inst: SkewFlagged) -> bool:
    """True iff for every pair (i, j) with f_i < g_j - 1 we have
    f_i + lam_i - i >= g_j + mu_j - j; under this condition the two
    determinant variants produce the same polynomial.  Vacuously true when
    no pair qualifies (e.g. g = (1,...,1))."""
    for i in range(1, inst.r + 1):
        for j in range(1, inst.r + 1):
            if inst.f[i - 1] < inst.g[j - 1] - 1:
                if inst.f[i - 1] + inst.lam[i - 1] - i < \
                        inst.g[j - 1] + inst.mu[j - 1] - j:
                    return False
    return True


# ---------------------------------------------------------------------------
# permutations

def check_permutation(w) -> tuple:
    w = tuple(int(v) for v in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise UsageError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def inversion_sets(w) -> tuple:
    """I_i(w) = { j : i < j and w(i) > w(j) }, for i = 1..n."""
    w = check_permutation(w)
    n = len(w)
    return tuple(
        frozenset(j for j in range(i + 1, n + 1) if w[i - 1] > w[j - 1])
        for i in range(1, n + 1))


def is_vexillary(w) -> bool:
    """True iff the inversion sets form a chain under inclusion."""
    sets = sorted(inversion_sets(w), key=len)
    return all(a <= b for a, b in zip(sets, sets[1:]))


def shape_and_flag(w):
    """The partition lambda(w) (inversion-set sizes, decreasing, zeros
    dropped) and the flagging (min I_i(w) - 1 over nonempty I_i, increasing).
    Only defined for vexillary w."""
    if not is_vexillary(w):
        raise UsageError(f"{tuple(w)} is not vexillary")
    sets = [s for s in inversion_sets(w) if s]
    lam = tuple(sorted((len(s) for s in sets), reverse=True))
    flag = tuple(sorted(min(s) - 1 for s in sets))
    return lam, flag
