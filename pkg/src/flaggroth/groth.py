"""The headline pipelines: the one-row fermionic formula, the full
flagged-skew expectation value, and the multi-method comparison harness.

The expectation value

  <-r| prod_{j: r->1} psi*_{mu_j - j} e^{H*(-beta)} e^{-H(x^[g_j-1 / g_{j-1}])}
       prod_{i: 1->r} e^{H(x^[f_i / f_{i-1}+1])} psi_{lam_i - i} e^{-H*(-beta)}
  |-r>

is evaluated strictly right to left: tokens are applied to the ket |-r> one
at a time and the result is paired with <-r| at the end.  No operator is
ever commuted past another, so this route stays independent of the
determinant evaluator it is checked against.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .algebra import Poly, Ring
from .errors import UsageError
from . import fock
from .fock import Alphabet, FockVector, apply_exp_h, apply_fermion, \
    pair_with_bra
from .genfun import GVariant, jt_determinant
from .shapes import SkewFlagged, coincidence_condition
from . import tableaux


# ---------------------------------------------------------------------------
# operator programs

@dataclass(frozen=True)
class Fermion:
    kind: str          # fock.PSI or fock.PSI_STAR
    index: int


@dataclass(frozen=True)
class ExpH:
    alphabet: Alphabet
    sign: int


@dataclass(frozen=True)
class ExpHStarBeta:
    sign: int


@dataclass(frozen=True)
class OperatorProgram:
    """Tokens in application order (first token hits the ket first), to be
    evaluated between <-r| and |-r>."""

    tokens: tuple
    r: int

    def __post_init__(self):
        charge = 0
        for tok in self.tokens:
            if isinstance(tok, Fermion):
                charge += 1 if tok.kind == fock.PSI else -1
        if charge != 0:
            raise UsageError("program does not conserve charge")

    def without_identity_exponentials(self) -> "OperatorProgram":
        kept = tuple(tok for tok in self.tokens
                     if not (isinstance(tok, ExpH) and tok.alphabet.is_empty()))
        return OperatorProgram(kept, self.r)


def build_program(inst: SkewFlagged) -> OperatorProgram:
    """Transcribe the flagged-skew expectation value into tokens.

    Application order: for i = r..1 the ket-side block
    [e^{-H*(-beta)}, psi_{lam_i - i}, e^{+H(x^[f_i/f_{i-1}+1])}], then for
    j = 1..r the block
    [e^{-H(x^[g_j-1/g_{j-1}])}, e^{+H*(-beta)}, psi*_{mu_j - j}].
    Telescoping alphabets use f_0 = 0 and g_0 = 1, so the first factors see
    the full prefixes x^[f_1] and x^[g_1 - 1]."""
    r = inst.r
    tokens = []
    for i in range(r, 0, -1):
        prev = inst.f[i - 2] if i >= 2 else 0
        tokens.append(ExpHStarBeta(-1))
        tokens.append(Fermion(fock.PSI, inst.lam[i - 1] - i))
        tokens.append(ExpH(Alphabet.prefix_difference(inst.f[i - 1], prev), 1))
    for j in range(1, r + 1):
        prev = inst.g[j - 2] if j >= 2 else 1
        tokens.append(ExpH(
            Alphabet.prefix_difference(inst.g[j - 1] - 1, prev - 1), -1))
        tokens.append(ExpHStarBeta(1))
        tokens.append(Fermion(fock.PSI_STAR, inst.mu[j - 1] - j))
    return OperatorProgram(tuple(tokens), r)


def apply_tokens(tokens, vec: FockVector, order_sink=None) -> FockVector:
    for tok in tokens:
        if isinstance(tok, Fermion):
            vec = apply_fermion(tok.kind, tok.index, vec)
        elif isinstance(tok, ExpH):
            vec = apply_exp_h("H", tok.alphabet, tok.sign, vec, order_sink)
        elif isinstance(tok, ExpHStarBeta):
            vec = apply_exp_h("H*", Alphabet.minus_beta(), tok.sign, vec,
                              order_sink)
        else:
            raise UsageError(f"unknown program token {tok!r}")
    return vec


def evaluate_program(program: OperatorProgram, ring: Ring,
                     order_sink=None) -> Poly:
    vec = FockVector.vacuum(ring, -program.r)
    vec = apply_tokens(program.tokens, vec, order_sink)
    return pair_with_bra(program.r, vec)


def flagged_groth_fermionic(inst: SkewFlagged, order_sink=None,
                            ket_cache: dict | None = None) -> Poly:
    """The flagged skew Grothendieck polynomial via direct Fock-space
    evaluation of the operator program.  ket_cache, when given, memoizes
    the state after the ket-side (lambda, f) half, which is shared by all
    (mu, g) with the same shape; it never shortcuts across cap settings
    because the ring is part of the key."""
    ring = inst.ring()
    program = build_program(inst)
    split = 3 * inst.r          # ket-side tokens come first
    if ket_cache is None:
        vec = apply_tokens(program.tokens,
                           FockVector.vacuum(ring, -inst.r), order_sink)
    else:
        key = (inst.lam, inst.f, ring)
        seed = ket_cache.get(key)
        if seed is None:
            seed = apply_tokens(program.tokens[:split],
                                FockVector.vacuum(ring, -inst.r))
            ket_cache[key] = seed
        vec = apply_tokens(program.tokens[split:], seed, order_sink)
    return pair_with_bra(inst.r, vec).require_integer_coefficients()


def g_n_fermionic(n: int, f: int, g: int, ring: Ring,
                  order_sink=None) -> Poly:
    """One-row series coefficient via <0| e^{H(x^[f/g])} psi_{n-1}
    e^{-H*(-beta)} |-1>."""
    if f < 0 or g < 1:
        raise UsageError("g_n_fermionic needs f >= 0 and g >= 1")
    vec = FockVector.vacuum(ring, -1)
    vec = apply_exp_h("H*", Alphabet.minus_beta(), -1, vec, order_sink)
    vec = apply_fermion(fock.PSI, n - 1, vec)
    vec = apply_exp_h("H", Alphabet.prefix_difference(f, g - 1), 1, vec,
                      order_sink)
    return pair_with_bra(0, vec).require_integer_coefficients()


# ---------------------------------------------------------------------------
# multi-method comparison

METHOD_JT = "jt_double_bracket"
METHOD_JT_MATSUMURA = "jt_matsumura"
METHOD_FERMIONIC = "fermionic"
METHOD_TABLEAU = "tableau"


@dataclass
class MethodReport:
    """Results of evaluating one instance by every applicable method,
    compared pairwise in the common quotient ring."""

    instance: SkewFlagged
    results: dict = field(default_factory=dict)        # method -> Poly
    caps_used: dict = field(default_factory=dict)      # method -> (B, D)
    agreements: dict = field(default_factory=dict)     # "a=b" -> bool
    stabilization: dict = field(default_factory=dict)  # method -> bool
    timings_ms: dict = field(default_factory=dict)

    def all_agree(self) -> bool:
        return all(self.agreements.values())

    def stable(self) -> bool:
        return all(self.stabilization.values())


def _method_runners(inst: SkewFlagged):
    runners = {
        METHOD_JT: lambda i: jt_determinant(i, GVariant.DOUBLE_BRACKET),
        METHOD_FERMIONIC: lambda i: flagged_groth_fermionic(i),
    }
    if inst.is_g_trivial() and all(fi <= inst.n_vars for fi in inst.f):
        runners[METHOD_TABLEAU] = tableaux.tableaux_polynomial
    if coincidence_condition(inst):
        runners[METHOD_JT_MATSUMURA] = \
            lambda i: jt_determinant(i, GVariant.MATSUMURA)
    return runners


def compare(inst: SkewFlagged, stabilize: bool = True,
            threads: int = 1) -> MethodReport:
    """Evaluate the instance by every applicable method and report pairwise
    equality in the common quotient ring, plus cap stabilization (rerun at
    caps+1 and compare below the original caps).  Disagreements are report
    content, never exceptions."""
    report = MethodReport(inst)
    runners = _method_runners(inst)

    def run_one(args):
        name, instance = args
        t0 = time.perf_counter()
        value = runners[name](instance)
        return name, value, (time.perf_counter() - t0) * 1000.0

    jobs = [(name, inst) for name in runners]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run_one, jobs))
    else:
        outcomes = [run_one(job) for job in jobs]
    for name, value, ms in outcomes:
        report.results[name] = value
        report.caps_used[name] = (inst.beta_cap, inst.x_cap)
        report.timings_ms[name] = ms

    ring = inst.ring()
    names = sorted(report.results)
    for a_idx in range(len(names)):
        for b_idx in range(a_idx + 1, len(names)):
            a, b = names[a_idx], names[b_idx]
            same = report.results[a].truncate(ring) == \
                report.results[b].truncate(ring)
            report.agreements[f"{a}={b}"] = same

    if stabilize:
        bumped = inst.bumped(1)
        bumped_runners = _method_runners(bumped)
        for name in report.results:
            if name == METHOD_TABLEAU:
                # a finite sum over tableaux never touches the caps
                report.stabilization[name] = True
                continue
            redone = bumped_runners[name](bumped)
            report.stabilization[name] = \
                redone.truncate(ring) == report.results[name]
    return report
