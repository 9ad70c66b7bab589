"""Difference-of-squares factorization: the classic ascending search and the
shifted-center variant with exact cycle accounting.

Both searches count every square test performed ("steps"), so measured costs
can be compared against the predicted cycle counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ntheory import iroot, isqrt

DEFAULT_STEP_CAP = 1 << 20

# u*u stays inside int64 for the vectorized window as long as u < 2**31.
_VECTOR_U_LIMIT = 1 << 31
_WINDOW_START = 256
_WINDOW_MAX = 1 << 16

# squares mod 64 (bitmask filter: only ~19% of residues survive)
_SQ64 = np.zeros(64, dtype=bool)
for _i in range(64):
    _SQ64[(_i * _i) & 63] = True
_SQ64_PY = bytes(1 if _SQ64[_i] else 0 for _i in range(64))


class Exhausted(RuntimeError):
    """Search hit its step cap before finding a square."""

    def __init__(self, message: str, steps: int):
        super().__init__(message)
        self.steps = steps


class DegenerateDenominator(ValueError):
    """The center estimate's denominator is <= 0: x is out of range."""


@dataclass(frozen=True)
class FermatReport:
    """Outcome of one difference-of-squares search.

    p, q: the recovered factor pair (p <= q, p*q = N).
    steps: number of square tests performed.
    start_u: first center value probed (u for the classic search, U = p+q
    scale for the shifted search).
    """

    p: int
    q: int
    steps: int
    start_u: int


def _scan_classic(N: int, u0: int, step_cap: int) -> tuple[int, int] | None:
    """Scan u = u0, u0+1, ... testing u*u - N for squareness.

    Returns (u_hit, steps) or None when step_cap tests all fail.  Uses an
    int64 numpy window while safe, then an exact big-int loop.  Every hit is
    re-verified in exact integer arithmetic.
    """
    steps = 0
    u = u0
    window = _WINDOW_START
    while steps < step_cap and u + window < _VECTOR_U_LIMIT:
        w = min(window, step_cap - steps)
        us = np.arange(u, u + w, dtype=np.int64)
        ts = us * us - N
        pos = np.flatnonzero(_SQ64[ts & 63])
        if pos.size:
            cand = ts[pos]
            ss = np.rint(np.sqrt(cand.astype(np.float64))).astype(np.int64)
            ok = (ss * ss == cand) | ((ss + 1) ** 2 == cand) | ((ss - 1) ** 2 == cand)
            hits = pos[ok]
            if hits.size:
                i = int(hits[0])
                u_hit = u + i
                t = u_hit * u_hit - N  # exact big-int recheck of the vector hit
                s = math.isqrt(t)
                assert s * s == t
                return u_hit, steps + i + 1
        steps += w
        u += w
        window = min(window * 2, _WINDOW_MAX)
    # big-int fallback (u no longer fits the int64 window)
    t = u * u - N
    inc = 2 * u + 1
    while steps < step_cap:
        steps += 1
        if _SQ64_PY[t & 63]:
            s = math.isqrt(t)
            if s * s == t:
                return u, steps
        t += inc
        inc += 2
        u += 1
    return None


def fermat_factor(N: int, step_cap: int = DEFAULT_STEP_CAP) -> FermatReport:
    """Classic ascending search: u = ceil(sqrt(N)), u+1, ... until u*u - N is
    a perfect square v*v; then N = (u-v)(u+v).

    N must be odd and >= 3 (strip factors of 2 first).  steps counts square
    tests, so the first probe is step 1.  Raises Exhausted after step_cap
    tests.
    """
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be an odd integer >= 3")
    if step_cap < 1:
        raise ValueError("step_cap must be positive")
    u0 = math.isqrt(N - 1) + 1  # ceil(sqrt(N)); isqrt(N)^2 - N < 0 is never a square
    hit = _scan_classic(N, u0, step_cap)
    if hit is None:
        raise Exhausted(f"no square within {step_cap} tests for N={N}", step_cap)
    u, steps = hit
    v = math.isqrt(u * u - N)
    return FermatReport(p=u - v, q=u + v, steps=steps, start_u=u0)


def compute_initial_u(N: int, x: int) -> int:
    """Estimate of U = p + q for factors offset by roughly x * N**(1/4).

    Evaluates 2*r + 2*f*x - (2*r*x + f*x*x) / (f + x) with r = isqrt(N),
    the unknown residual term in the denominator dropped, and f a fixed-point
    fourth root of N carrying 16 fractional bits.  Flooring f instead would
    leak an error that grows like 4|x| into the estimate and blow the
    shifted search's cycle bound; flooring r costs at most 2 and keeps
    compute_initial_u(N, 0) == 2*isqrt(N) exact.  The rational value is
    rounded to nearest and then moved to the nearest even integer (p + q is
    even for odd p, q).
    """
    if N < 16:
        raise ValueError("N must be >= 16 so that iroot(N, 4) >= 2")
    r = isqrt(N)
    if iroot(N, 4) + x <= 0:
        raise DegenerateDenominator(f"iroot(N,4) + x = {iroot(N, 4) + x} <= 0")
    f = Fraction(isqrt(isqrt(N << 64)), 1 << 16)
    value = 2 * r + 2 * f * x - (2 * r * x + f * x * x) / (f + x)
    u0 = _round_nearest(value)
    if u0 % 2:
        u0 += 1 if value >= u0 else -1
    return u0


def _round_nearest(value: Fraction) -> int:
    n, d = value.numerator, value.denominator
    if n >= 0:
        return (2 * n + d) // (2 * d)
    return -((-2 * n + d) // (2 * d))


def shifted_fermat(N: int, x: int, step_cap: int = DEFAULT_STEP_CAP) -> FermatReport:
    """Search for U with U*U - 4N square, starting from the shifted center
    estimate compute_initial_u(N, x) and probing U0, U0+1, U0-1, U0+2, ...

    Candidates with odd U or U*U < 4N are skipped without a square test;
    steps counts tests actually performed.
    """
    if N < 16 or N % 2 == 0:
        raise ValueError("N must be an odd integer >= 16")
    if step_cap < 1:
        raise ValueError("step_cap must be positive")
    u0 = compute_initial_u(N, x)
    four_n = 4 * N
    # smallest even U with U*U >= 4N
    u_min = math.isqrt(four_n - 1) + 1
    u_min += u_min % 2

    def candidates():
        if u0 < u_min:  # one-sided: everything below u_min is infeasible
            U = u_min
            while True:
                yield U
                U += 2
        else:
            # expanding alternation u0, u0+1, u0-1, ... restricted to even U
            up = u0 if u0 % 2 == 0 else u0 + 1
            down = u0 - 2 if u0 % 2 == 0 else u0 - 1
            if u0 % 2 == 0:
                yield u0
                up = u0 + 2
            while True:
                yield up
                up += 2
                if down >= u_min:
                    yield down
                    down -= 2

    steps = 0
    start_u = None
    for U in candidates():
        if start_u is None:
            start_u = U
        steps += 1
        t = U * U - four_n
        s = math.isqrt(t)
        if s * s == t:
            return FermatReport(
                p=(U - s) // 2, q=(U + s) // 2, steps=steps, start_u=start_u
            )
        if steps >= step_cap:
            break
    raise Exhausted(f"no square within {step_cap} tests for N={N}, x={x}", step_cap)
