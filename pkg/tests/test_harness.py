import json
import math

import pytest

from factorlab import ntheory
from factorlab.harness import (
    Balance,
    FactorCaps,
    GenerationExhausted,
    Method,
    SemiprimeSpec,
    TrialRecord,
    bound_scan,
    experiment_run,
    factor_auto,
    gen_semiprime,
    run_pipeline,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        SemiprimeSpec(bits=8)
    SemiprimeSpec(bits=16)


def test_gen_balanced_properties():
    for seed in range(10):
        N, p, q = gen_semiprime(SemiprimeSpec(bits=20, seed=seed))
        assert p * q == N
        assert ntheory.is_prime(p) and ntheory.is_prime(q)
        assert p < q < 2 * p
        assert N.bit_length() == 20


def test_gen_deterministic():
    spec = SemiprimeSpec(bits=16, seed=99)
    assert gen_semiprime(spec) == gen_semiprime(spec)
    other = gen_semiprime(SemiprimeSpec(bits=16, seed=100))
    assert other != gen_semiprime(spec)


def test_gen_unbalanced_properties():
    N, p, q = gen_semiprime(SemiprimeSpec(bits=36, balance=Balance.UNBALANCED, seed=7))
    assert p * q == N and N.bit_length() == 36
    # p sits strictly inside ((N/2)^(1/3), N^(1/3)]
    assert 2 * p**3 > N and p**3 <= N
    assert p.bit_length() in (11, 12)
    assert q.bit_length() in (24, 25)


def test_run_pipeline_worked_instance():
    rec = run_pipeline(11639, 103)
    assert rec.success
    assert (rec.p, rec.q) == (103, 113)
    assert rec.method in (Method.COPPERSMITH, Method.X_SWEEP)
    assert abs(rec.margin_bits - 0.123) < 5e-3
    assert (rec.B, rec.x0, rec.y0) == (5, 1, 1)


def test_run_pipeline_minimal_case():
    rec = run_pipeline(35, 5)
    assert rec.success and (rec.p, rec.q) == (5, 7)


def test_run_pipeline_rejects_bad_hint():
    with pytest.raises(ValueError):
        run_pipeline(35, 4)


def test_run_pipeline_40bit_sweep_bound():
    N, p, q = gen_semiprime(SemiprimeSpec(bits=40, seed=3))
    rec = run_pipeline(N, p)
    assert rec.success
    assert {rec.p, rec.q} == {p, q}
    if rec.method is Method.X_SWEEP:
        assert rec.steps <= 2 * ntheory.iroot(N, 3) + 1


def test_trial_record_roundtrip():
    rec = run_pipeline(11639, 103)
    line = rec.to_json()
    parsed = json.loads(line)
    # integers travel as decimal strings
    for key in ("N", "p", "q", "B", "x0", "y0", "steps"):
        assert isinstance(parsed[key], str)
    back = TrialRecord.from_json(line)
    assert back == rec


def test_factor_auto_examples():
    assert factor_auto(60).factors == [2, 2, 3, 5]
    assert factor_auto(5959).factors == [59, 101]
    assert factor_auto(11639).factors == [103, 113]


def test_factor_auto_prime_powers_and_primes():
    assert factor_auto(2**20).factors == [2] * 20
    assert factor_auto(3**7).factors == [3] * 7
    p = ntheory.next_prime(10**7)
    assert factor_auto(p).factors == [p]
    assert factor_auto(p * p).factors == [p, p]


def test_factor_auto_product_invariant_sampled():
    for n in range(2, 500):
        res = factor_auto(n)
        assert res.complete
        assert res.product() == n
        assert all(ntheory.is_prime(f) for f in res.factors)


def test_factor_auto_pipeline_stage():
    # both factors beyond the trial-division limit and too far apart for the
    # capped square search: forces the residue-enumeration pipeline
    p = ntheory.next_prime(104729)  # > 10^4
    q = ntheory.next_prime(2 * p + 10)
    res = factor_auto(p * q, FactorCaps(fermat_cap=4))
    assert res.complete
    assert res.factors == sorted([p, q])


def test_factor_auto_incomplete_flagged():
    p = ntheory.next_prime(1 << 15)
    q = ntheory.next_prime(1 << 19)  # far from balanced
    caps = FactorCaps(fermat_cap=4, modulus_candidates=1, sweep_cap=4)
    res = factor_auto(p * q, caps)
    assert not res.complete
    assert res.product() == p * q
    assert res.factors == []


def test_factor_auto_rejects_small():
    with pytest.raises(ValueError):
        factor_auto(1)


def test_experiment_run_count_and_determinism():
    spec = SemiprimeSpec(bits=20, seed=5)
    records = experiment_run(spec, 10)
    assert len(records) == 10
    assert all(r.success for r in records)
    again = experiment_run(spec, 10)
    for a, b in zip(records, again):
        assert (a.N, a.p, a.q, a.B, a.x0, a.y0, a.method, a.steps) == (
            b.N, b.p, b.q, b.B, b.x0, b.y0, b.method, b.steps
        )
        assert a.margin_bits == b.margin_bits and a.success == b.success


def test_experiment_run_empty():
    assert experiment_run(SemiprimeSpec(bits=20, seed=1), 0) == []


def test_experiment_run_unbalanced_instances():
    # the balanced-center sweep still reaches cube-root-scale factors:
    # B*X is about sqrt(N), which covers any factor offset
    spec = SemiprimeSpec(bits=36, balance=Balance.UNBALANCED, seed=0)
    records = experiment_run(spec, 3)
    assert len(records) == 3
    for rec in records:
        assert rec.success
        assert rec.p * rec.q == rec.N
        assert rec.method is Method.X_SWEEP


def test_bound_scan_rows():
    rows = bound_scan(20, 28, 4, 3, seed=2)
    assert [r.bits for r in rows] == [20, 24, 28]
    for row in rows:
        assert row.trials == 3
        assert row.min_margin_bits <= row.mean_margin_bits <= row.max_margin_bits
        payload = json.loads(row.to_json())
        assert payload["bits"] == row.bits


def test_bound_scan_margin_definition_identity():
    # the scan's margin is (2/3)log2(W) - log2(XY) by construction: recompute
    # one instance end to end
    from factorlab.polybuild import (
        FactorCenter,
        PartialResidue,
        RootBounds,
        bound_margin,
        build_polynomial,
        poly_height,
        solve_companion_residue,
    )

    N, p, _q = gen_semiprime(SemiprimeSpec(bits=24, seed=0))
    B, x0 = ntheory.select_modulus(N, p)
    center = FactorCenter.balanced(N)
    pr = PartialResidue(B, x0)
    y0 = solve_companion_residue(N, center, pr)
    f = build_polynomial(N, center, pr, y0)
    b = RootBounds.balanced(N)
    W = poly_height(f, b)
    assert abs(
        bound_margin(f, b) - ((2 / 3) * math.log2(W) - math.log2(b.X * b.Y))
    ) < 1e-9


def test_bound_scan_validation():
    with pytest.raises(ValueError):
        bound_scan(8, 20, 4, 3)
    with pytest.raises(ValueError):
        bound_scan(20, 24, 0, 3)
