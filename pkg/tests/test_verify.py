"""Theorem verification: hypothesis predicates, unit witnesses, exactness of
the reported orders, scans, the published table, and the contrast families."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polya.arith import jacobi, sieve_primes, squarefree_part
from polya.biquad import biquadratic_field, polya_report
from polya.quadratic import fundamental_unit
from polya.verify import (TABLE_ROWS, THEOREMS, ContrastReport, EpsilonWitness,
                          TheoremReport, WitnessInapplicableError,
                          admissible_triples, check_hypotheses,
                          contrast_rajaei, epsilon_witness, hypotheses_t1,
                          hypotheses_t2, hypotheses_t3, pollack_search, scan,
                          smallest_admissible, verify_table, verify_theorem)


def test_hypotheses_t1_examples():
    assert hypotheses_t1(3, 17, 41)
    assert not hypotheses_t1(3, 17, 29)   # (17/29) = +1
    assert not hypotheses_t1(3, 17, 17)   # repeated prime


def test_hypotheses_t2_examples():
    assert hypotheses_t2(19, 3, 17)
    assert not hypotheses_t2(3, 7, 13)    # r = 13 is 5 mod 8
    assert not hypotheses_t2(19, 3, 2)


def test_hypotheses_t3_examples():
    assert hypotheses_t3(5, 17)
    assert hypotheses_t3(5, 13)           # (5/13) = -1
    assert not hypotheses_t3(5, 5)
    assert not hypotheses_t3(2, 5)


def test_hypothesis_reports_carry_labeled_checks():
    rep = hypotheses_t1(3, 17, 29)
    failed = [label for label, ok in rep.checks if not ok]
    assert failed and all(isinstance(label, str) for label, _ in rep.checks)
    assert rep.ok is False and bool(rep) is False


def test_hypotheses_t1_oracle_against_direct_congruences():
    primes = sieve_primes(60)
    for p in primes:
        for q in primes:
            for r in primes:
                expected = (len({p, q, r}) == 3 and p % 4 == 3
                            and q % 8 == 1 and r % 8 == 1
                            and q != 2 and r != 2 and jacobi(q, r) == -1)
                assert hypotheses_t1(p, q, r).ok == expected, (p, q, r)


def test_epsilon_witness_examples():
    w = epsilon_witness(105)
    assert (w.delta, w.g, w.epsilon, w.eta) == (1, 2, 21, 5)
    assert (w.m, w.n) == (1, 2)
    assert w.case_label == "gcd = 2"
    w = epsilon_witness(15)
    assert (w.delta, w.g, w.epsilon, w.eta) == (1, 1, 5, 3)
    assert w.case_label == "gcd = 1"
    with pytest.raises(WitnessInapplicableError):
        epsilon_witness(85)   # norm -1, no positive-unit decomposition


def test_epsilon_witness_identities_and_unit_reconstruction():
    for d in (15, 21, 33, 34, 35, 51, 105, 161, 210, 221):
        try:
            w = epsilon_witness(d)
        except WitnessInapplicableError:
            continue
        u = fundamental_unit(d)
        assert w.epsilon * w.eta == d
        assert w.g * w.m**2 * w.epsilon - w.delta == u.z
        assert w.g * w.n**2 * w.eta + w.delta == u.z
        assert w.g * w.m * w.n == u.t
        assert w.z == u.z and w.t == u.t


def test_epsilon_witness_frozen_validation():
    with pytest.raises(ValueError):
        EpsilonWitness(d=15, delta=3, g=1, m=1, n=1, epsilon=5, eta=3,
                       case_label="gcd = 1")
    with pytest.raises(ValueError):
        EpsilonWitness(d=15, delta=1, g=1, m=2, n=1, epsilon=5, eta=3,
                       case_label="gcd = 1")


def test_verify_theorem_t3_worked_example():
    rep = verify_theorem("T3", (5, 17))
    assert rep.hypotheses.ok
    f = rep.field_report
    assert (f.po_order, f.h1_order, f.profile.product) == (2, 4, 8)
    assert f.unit_norms == (-1, -1, -1)
    assert rep.epsilon_witness is None
    assert rep.claim_matches is True
    assert rep.anomalies == ()


def test_verify_theorem_t1_example_with_witness():
    rep = verify_theorem("T1", (3, 17, 41))
    assert rep.claim_matches is True
    w = rep.epsilon_witness
    assert w is not None and w.epsilon == 2091
    assert rep.epsilon_in_allowed_set is True


def test_verify_theorem_t2_proof_step_anomaly():
    rep = verify_theorem("T2", (19, 3, 17))
    assert rep.claim_matches is True
    assert rep.field_report.po_order == 2
    assert len(rep.anomalies) == 1
    assert "a2 step" in rep.anomalies[0]
    assert "asserted -1, computed 1" in rep.anomalies[0]


def test_verify_theorem_skips_field_work_without_force():
    rep = verify_theorem("T1", (3, 17, 29))
    assert not rep.hypotheses.ok
    assert rep.field_report is None and rep.claim_matches is None
    forced = verify_theorem("T1", (3, 17, 29), force=True)
    assert forced.field_report is not None


def test_verify_theorem_rejects_wrong_arity():
    with pytest.raises(ValueError):
        verify_theorem("T3", (5, 17, 3))
    with pytest.raises(ValueError):
        verify_theorem("T9", (5, 17))


def test_admissible_triples_examples():
    t3 = admissible_triples("T3", 20)
    # (13, 17) is excluded: 13 is a square mod 17
    assert t3 == ((5, 13), (5, 17), (13, 5), (17, 5))
    assert admissible_triples("T3", 16) == ((5, 13), (13, 5))
    assert admissible_triples("T1", 13) == ()
    assert admissible_triples("T2", 3) == ()
    with pytest.raises(ValueError):
        admissible_triples("T3", 2)


def test_admissible_triples_respects_bound_and_hypotheses():
    for theorem in THEOREMS:
        triples = admissible_triples(theorem, 60)
        assert triples == tuple(sorted(triples))
        for t in triples:
            assert max(t) <= 60
            assert check_hypotheses(theorem, t).ok


def test_scan_reports_each_admissible_triple():
    reports = scan("T3", 20)
    assert tuple(r.triple for r in reports) == admissible_triples("T3", 20)
    assert all(r.claim_matches for r in reports)


def test_smallest_admissible_ordering():
    t2 = smallest_admissible("T2", 5)
    assert t2[0] == (19, 3, 17)
    keys = [(max(t), t) for t in t2]
    assert keys == sorted(keys)
    assert len(smallest_admissible("T3", 7)) == 7


def test_table_rows_are_fixed_and_verified():
    assert len(TABLE_ROWS) == 20
    assert TABLE_ROWS[0] == (2, 5, 17)
    assert (2, 17, 5) in TABLE_ROWS
    reports = verify_table()
    assert len(reports) == 20
    assert all(r.field_report.po_order == 2 for r in reports)
    # permuted odd primes name the same field
    primed = {tuple(sorted(row)) for row in TABLE_ROWS}
    a = verify_theorem("T3", (5, 17)).field_report
    b = verify_theorem("T3", (17, 5)).field_report
    assert (a.po_order, a.h1_order) == (b.po_order, b.h1_order)
    assert len(primed) == 18   # (2,5,17)/(2,17,5) and (2,17,29)/(2,29,17) collapse


def test_contrast_examples():
    rep = contrast_rajaei(3, 7, 13)
    assert rep.field_report.po_order == 1 and rep.matches
    rep = contrast_rajaei(3, 7, 5)
    assert rep.field_report.po_order == 1 and rep.matches
    with pytest.raises(ValueError):
        contrast_rajaei(3, 7, 17)    # r = 17 is 1 mod 8, not 5
    with pytest.raises(ValueError):
        contrast_rajaei(3, 5, 13)    # q = 5 not 3 mod 4


def test_pollack_examples():
    assert pollack_search(13) == (7, 5)
    assert pollack_search(17) == (3, 5)
    with pytest.raises(ValueError):
        pollack_search(11)
    with pytest.raises(ValueError):
        pollack_search(14)


def test_pollack_pairs_satisfy_all_side_conditions():
    for r in (13, 17, 29, 37, 41):
        p, q = pollack_search(r)
        assert p % 4 == 3 and q % 4 == 1
        assert p < r and q < r
        assert jacobi(p, r) == jacobi(q, r) == -1
        assert squarefree_part(p * q * r) == p * q * r


triples_t1 = st.sampled_from(admissible_triples("T1", 80))


@given(triples_t1)
@settings(max_examples=15, deadline=None)
def test_t1_reports_are_exact_and_claims_hold(triple):
    rep = verify_theorem("T1", triple)
    f = rep.field_report
    assert f.profile.product == 16 and f.profile.e2 == 2
    assert f.po_order * f.h1_order == 16
    assert rep.claim_matches is True
    assert rep.epsilon_in_allowed_set is True
    # independent recomputation through the generic field pipeline
    p, q, r = triple
    again = polya_report(biquadratic_field(p, q * r))
    assert again.po_order == f.po_order
