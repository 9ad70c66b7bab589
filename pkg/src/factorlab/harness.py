"""Semiprime generators, the partial-residue factoring pipeline, the general
auto-factor driver, and batch experiment runners.

All randomness is seeded and splittable (splitmix64 over the user seed), so
every run is bit-for-bit reproducible except for elapsed_ms fields.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import fermat, lattice, ntheory, polybuild
from .polybuild import BilinearPoly, FactorCenter, PartialResidue, RootBounds


class GenerationExhausted(RuntimeError):
    """The semiprime generator hit its retry cap."""


class PipelineFailure(RuntimeError):
    """Both the lattice stage and the sweep fallback failed."""


class Balance(Enum):
    BALANCED = "balanced"  # p < q < beta*p
    UNBALANCED = "unbalanced"  # (alpha*N)^(1/3) < p < N^(1/3)


class Method(str, Enum):
    FERMAT = "FERMAT"
    SHIFTED_FERMAT = "SHIFTED_FERMAT"
    COPPERSMITH = "COPPERSMITH"
    X_SWEEP = "X_SWEEP"
    TRIAL_DIVISION = "TRIAL_DIVISION"


@dataclass(frozen=True)
class SemiprimeSpec:
    """Parameters for one reproducible semiprime draw."""

    bits: int
    balance: Balance = Balance.BALANCED
    seed: int = 0
    alpha: Fraction = Fraction(1, 2)
    beta: Fraction = Fraction(2, 1)

    def __post_init__(self) -> None:
        if self.bits < 16:
            raise ValueError("bits must be >= 16")
        if not 0 < self.alpha < 1 < self.beta:
            raise ValueError("need 0 < alpha < 1 < beta")


@dataclass
class TrialRecord:
    """One experiment outcome; integer fields serialize as decimal strings."""

    N: int
    p: int
    q: int
    B: int
    x0: int
    y0: int
    method: Method
    steps: int
    margin_bits: float
    success: bool
    elapsed_ms: float

    def to_json(self) -> str:
        payload = {}
        for name in ("N", "p", "q", "B", "x0", "y0"):
            payload[name] = str(getattr(self, name))
        payload["method"] = self.method.value
        payload["steps"] = str(self.steps)
        payload["margin_bits"] = self.margin_bits
        payload["success"] = self.success
        payload["elapsed_ms"] = self.elapsed_ms
        return json.dumps(payload)

    @classmethod
    def from_json(cls, line: str) -> "TrialRecord":
        raw = json.loads(line)
        return cls(
            N=int(raw["N"]),
            p=int(raw["p"]),
            q=int(raw["q"]),
            B=int(raw["B"]),
            x0=int(raw["x0"]),
            y0=int(raw["y0"]),
            method=Method(raw["method"]),
            steps=int(raw["steps"]),
            margin_bits=float(raw["margin_bits"]),
            success=bool(raw["success"]),
            elapsed_ms=float(raw["elapsed_ms"]),
        )


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = x
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & 0xFFFFFFFFFFFFFFFF
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def _rng_for(seed: int, stream: int) -> random.Random:
    return random.Random(_splitmix64(seed ^ _splitmix64(stream)))


_GEN_RETRY_CAP = 4096


def gen_semiprime(spec: SemiprimeSpec) -> tuple[int, int, int]:
    """Deterministic (N, p, q) with N.bit_length() == spec.bits, p < q primes,
    and the declared balance-class predicate holding exactly.

    BALANCED: p < q < beta*p.  UNBALANCED: alpha*N < p**3 <= N (p near the
    cube root, q near the two-thirds power).  Raises GenerationExhausted
    after a fixed retry cap.
    """
    rng = _rng_for(spec.seed, 0xBA1A)
    lo_n, hi_n = 1 << (spec.bits - 1), (1 << spec.bits) - 1
    for _ in range(_GEN_RETRY_CAP):
        if spec.balance is Balance.BALANCED:
            half = spec.bits // 2
            p = ntheory.next_prime(rng.randrange(1 << (half - 1), 1 << half))
        else:
            third = max(spec.bits // 3, 4)
            p = ntheory.next_prime(rng.randrange(1 << (third - 1), 1 << third))
        lo_q = max(p + 1, -(-lo_n // p))
        hi_q = hi_n // p
        if spec.balance is Balance.BALANCED:
            # q < beta*p, exactly: q*beta.den < p*beta.num
            hi_q = min(hi_q, (p * spec.beta.numerator - 1) // spec.beta.denominator)
        if lo_q > hi_q:
            continue
        q = ntheory.next_prime(rng.randrange(lo_q, hi_q + 1))
        if q > hi_q or q <= p:
            continue
        N = p * q
        if N.bit_length() != spec.bits:
            continue
        if spec.balance is Balance.BALANCED:
            if not q * spec.beta.denominator < p * spec.beta.numerator:
                continue
        else:
            # (alpha*N)^(1/3) < p < N^(1/3), exactly via cubes
            if not (
                p**3 * spec.alpha.denominator > N * spec.alpha.numerator
                and p**3 <= N
            ):
                continue
        return N, p, q
    raise GenerationExhausted(f"no {spec.balance.value} semiprime after cap: {spec}")


def _oracle_stage(N: int, p_hint: int) -> tuple[int, int]:
    """The only stage allowed to see p_hint: returns (B, x0) and nothing else."""
    modulus, x0 = ntheory.select_modulus(N, p_hint)
    return modulus.value, x0


def _x_sweep(
    N: int, center: FactorCenter, pr: PartialResidue, limit: int
) -> tuple[int, int] | None:
    """Divisibility sweep over x = 0, +1, -1, ... up to |x| <= limit.

    Returns (factor, steps) or None."""
    steps = 0
    for k in range(limit + 1):
        for x in (k, -k) if k else (0,):
            steps += 1
            hit = polybuild.recover_factor(N, center, pr, x)
            if hit is not None:
                return hit, steps
    return None


def run_pipeline(
    N: int, p_hint: int, *, lattice_depth: int = 0
) -> TrialRecord:
    """Factor N using only the residue oracle derived from p_hint.

    Stages: modulus selection -> residue oracle (p_hint is discarded) ->
    companion-residue congruence -> bilinear polynomial -> bound margin ->
    lattice small roots -> factor recovery; on lattice failure falls back to
    an x-sweep, which always terminates on balanced instances.
    """
    t0 = time.perf_counter()
    if N < 4 or p_hint <= 1 or N % p_hint != 0:
        raise ValueError("need N >= 4 and p_hint a nontrivial divisor")
    center = FactorCenter.balanced(N)
    bounds = RootBounds.balanced(N)

    def finish(p: int, method: Method, steps: int, B: int, x0: int, y0: int,
               margin: float) -> TrialRecord:
        q = N // p
        p, q = min(p, q), max(p, q)
        return TrialRecord(
            N=N, p=p, q=q, B=B, x0=x0, y0=y0, method=method, steps=steps,
            margin_bits=margin, success=True,
            elapsed_ms=(time.perf_counter() - t0) * 1000.0,
        )

    # degenerate center: isqrt(N) itself divides N (covers p = q and the
    # residue-free case where every modulus would give x0 = 0)
    if N % center.P0 == 0 and center.P0 > 1:
        return finish(center.P0, Method.X_SWEEP, 1, 0, 0, 0, 0.0)

    B, x0 = _oracle_stage(N, p_hint)
    del p_hint  # the remaining stages operate on (N, B, x0) only
    pr = PartialResidue(ntheory.PrimeModulus(B), x0)
    y0 = polybuild.solve_companion_residue(N, center, pr)
    f = polybuild.build_polynomial(N, center, pr, y0)
    margin = polybuild.bound_margin(f, bounds)

    try:
        result = lattice.coppersmith_bivariate(
            f, bounds, recenter_depth=lattice_depth
        )
        for i, (x, _y) in enumerate(result.roots, start=1):
            hit = polybuild.recover_factor(N, center, pr, x)
            if hit is not None:
                return finish(hit, Method.COPPERSMITH, i, B, x0, y0, margin)
    except lattice.LatticeFailure:
        pass

    sweep = _x_sweep(N, center, pr, bounds.X)
    if sweep is not None:
        hit, steps = sweep
        return finish(hit, Method.X_SWEEP, steps, B, x0, y0, margin)
    raise PipelineFailure(f"lattice and sweep both failed for N={N}")


@dataclass(frozen=True)
class FactorCaps:
    """Budgets for factor_auto stages."""

    trial_limit: int = 10_000
    fermat_cap: int = fermat.DEFAULT_STEP_CAP
    modulus_candidates: int = 8
    sweep_cap: int | None = None  # None: the full balanced bound
    # lattice effort per enumerated residue; 0 keeps the residue loop cheap
    # (the per-residue sweep is what guarantees termination anyway)
    lattice_depth: int = 0


@dataclass
class Factorization:
    """Prime factors with multiplicity; cofactor > 1 flags an incomplete run."""

    factors: list[int] = field(default_factory=list)
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def product(self) -> int:
        out = self.cofactor
        for f in self.factors:
            out *= f
        return out


_TRIAL_CACHE: tuple[int, list[int]] = (0, [])


def _trial_primes(limit: int) -> list[int]:
    global _TRIAL_CACHE
    if _TRIAL_CACHE[0] < limit:
        _TRIAL_CACHE = (limit, ntheory.sieve_primes(limit))
    if _TRIAL_CACHE[0] == limit:
        return _TRIAL_CACHE[1]
    return [p for p in _TRIAL_CACHE[1] if p <= limit]


def _pipeline_without_oracle(
    n: int, caps: FactorCaps
) -> tuple[int, Method] | None:
    """Enumerate candidate residues x0 in [0, B) for a few moduli B and run
    the lattice-plus-sweep pipeline on each; B is about n**(1/6), so this
    realizes the residue-enumeration outer loop literally."""
    center = FactorCenter.balanced(n)
    if n % center.P0 == 0 and center.P0 > 1:
        return center.P0, Method.X_SWEEP
    bounds = RootBounds.balanced(n)
    sweep_limit = bounds.X if caps.sweep_cap is None else min(bounds.X, caps.sweep_cap)
    B = ntheory.next_prime(max(ntheory.iroot(n, 6), 2))
    for _ in range(caps.modulus_candidates):
        if math.gcd(center.P0, B) == 1:
            for x0 in range(1, B):
                if math.gcd(center.P0 + x0, B) != 1:
                    continue
                pr = PartialResidue(ntheory.PrimeModulus(B), x0)
                y0 = polybuild.solve_companion_residue(n, center, pr)
                f = polybuild.build_polynomial(n, center, pr, y0)
                try:
                    result = lattice.coppersmith_bivariate(
                        f, bounds, recenter_depth=caps.lattice_depth
                    )
                    for (x, _y) in result.roots:
                        hit = polybuild.recover_factor(n, center, pr, x)
                        if hit is not None:
                            return hit, Method.COPPERSMITH
                except (lattice.LatticeFailure, lattice.ReducibleInput):
                    pass
                sweep = _x_sweep(n, center, pr, sweep_limit)
                if sweep is not None:
                    return sweep[0], Method.X_SWEEP
        B = ntheory.next_prime(B + 1)
    return None


def factor_auto(N: int, caps: FactorCaps | None = None) -> Factorization:
    """Full factorization into certified primes: trial division, perfect-power
    detection, the capped difference-of-squares search, then the
    residue-enumeration pipeline.  product() always equals N; cofactor > 1
    (with complete = False) reports the unfactored remainder when caps are
    exhausted.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    caps = caps or FactorCaps()
    result = Factorization()
    stack = [N]
    while stack:
        n = stack.pop()
        if n == 1:
            continue
        if ntheory.is_prime(n):
            result.factors.append(n)
            continue
        reduced = False
        for p in _trial_primes(caps.trial_limit):
            if p * p > n:
                break
            while n % p == 0:
                result.factors.append(p)
                n //= p
                reduced = True
        if n == 1:
            continue
        if reduced:
            stack.append(n)
            continue
        # perfect power: n = r**k
        for k in range(2, n.bit_length() + 1):
            r = ntheory.iroot(n, k)
            if r >= 2 and r**k == n:
                stack.extend([r] * k)
                reduced = True
                break
        if reduced:
            continue
        try:
            report = fermat.fermat_factor(n, caps.fermat_cap)
            if report.p > 1:
                stack.extend([report.p, report.q])
                continue
        except fermat.Exhausted:
            pass
        found = _pipeline_without_oracle(n, caps)
        if found is not None:
            stack.extend([found[0], n // found[0]])
            continue
        result.cofactor *= n
    result.factors.sort()
    return result


def experiment_run(spec: SemiprimeSpec, count: int) -> list[TrialRecord]:
    """Generate count instances from seeds spec.seed, spec.seed+1, ... and run
    the pipeline on each.  Records are emitted in trial order; a generator
    failure skips that trial without aborting the batch."""
    records: list[TrialRecord] = []
    for i in range(count):
        trial_spec = SemiprimeSpec(
            bits=spec.bits,
            balance=spec.balance,
            seed=spec.seed + i,
            alpha=spec.alpha,
            beta=spec.beta,
        )
        try:
            N, p, _q = gen_semiprime(trial_spec)
        except GenerationExhausted:
            continue
        records.append(run_pipeline(N, p))
    return records


@dataclass(frozen=True)
class BoundScanRow:
    """Aggregate bound-margin statistics for one modulus size."""

    bits: int
    trials: int
    mean_margin_bits: float
    min_margin_bits: float
    max_margin_bits: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "bits": self.bits,
                "trials": self.trials,
                "mean_margin_bits": self.mean_margin_bits,
                "min_margin_bits": self.min_margin_bits,
                "max_margin_bits": self.max_margin_bits,
            }
        )


def bound_scan(
    bits_min: int,
    bits_max: int,
    step: int,
    trials_per_size: int,
    seed: int = 0,
) -> list[BoundScanRow]:
    """Measure the bound margin of the generated polynomial with the default
    box X = Y = floor(N**(1/3)) across modulus sizes.

    The margin is the solvability headroom of the lattice stage; this scan
    is the lab's instrument for how much slack the construction actually
    leaves (empirically: almost none, at every size).
    """
    if not 16 <= bits_min <= bits_max:
        raise ValueError("need 16 <= bits_min <= bits_max")
    if step < 1 or trials_per_size < 1:
        raise ValueError("step and trials_per_size must be >= 1")
    rows = []
    for bits in range(bits_min, bits_max + 1, step):
        margins = []
        attempts = 0
        while len(margins) < trials_per_size and attempts < 8 * trials_per_size:
            spec = SemiprimeSpec(bits=bits, seed=seed + attempts)
            attempts += 1
            try:
                N, p, _q = gen_semiprime(spec)
                modulus, x0 = ntheory.select_modulus(N, p)
            except (GenerationExhausted, ntheory.SelectionExhausted):
                continue
            center = FactorCenter.balanced(N)
            pr = PartialResidue(modulus, x0)
            y0 = polybuild.solve_companion_residue(N, center, pr)
            f = polybuild.build_polynomial(N, center, pr, y0)
            margins.append(polybuild.bound_margin(f, RootBounds.balanced(N)))
        if not margins:
            continue
        rows.append(
            BoundScanRow(
                bits=bits,
                trials=len(margins),
                mean_margin_bits=sum(margins) / len(margins),
                min_margin_bits=min(margins),
                max_margin_bits=max(margins),
            )
        )
    return rows
