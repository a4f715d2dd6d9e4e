import pytest

from lapsnf import enumeration as en
from lapsnf import graph as gc
from lapsnf.analysis import S3Class
from lapsnf.matrix import smith_normal_form, unchained_diagonal

import oracles


@pytest.mark.parametrize("n, want", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
def test_class_counts(n, want):
    assert len(en.connected_masks(n)) == want


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_labeled_dedup_oracle(n):
    assert len(en.connected_masks(n)) == oracles.labeled_connected_class_count(n)


def test_counts_match_polya_oracle():
    counts = oracles.connected_class_counts(7)
    assert [len(en.connected_masks(n)) for n in range(1, 8)] == [counts[n] for n in range(1, 8)]


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_is_sorted_connected_duplicate_free(n):
    graphs = list(en.enumerate_connected(n))
    masks = [gc.canonical_form(g) for g in graphs]
    assert masks == sorted(set(masks))
    assert masks == list(en.connected_masks(n))
    assert all(gc.is_connected(g) for g in graphs)


def test_enumeration_deterministic_across_workers():
    parents = en.connected_masks(6)
    one = en.generate_connected_masks(7, jobs=1, parents=parents)
    two = en.generate_connected_masks(7, jobs=2, parents=parents)
    assert one == two == en.connected_masks(7)


def test_range_checks():
    with pytest.raises(ValueError):
        en.connected_masks(9)
    with pytest.raises(ValueError):
        en.verify_theorem(4)
    with pytest.raises(ValueError):
        en.verify_side_claims(2)


def test_verify_n5():
    s = en.verify_theorem(5)
    assert s.violations == []
    c = s.witness_counts()
    assert c[S3Class.EQ_N] == 1 and c[S3Class.EQ_N_MINUS_2] == 2
    assert sum(s.s3_histogram.values()) == s.total_connected - 1


def test_verify_n6_sporadic():
    s = en.verify_theorem(6)
    assert s.violations == []
    got = set(s.witnesses[S3Class.EQ_N_MINUS_3])
    assert got == {gc.canonical_form(gc.family("complete_minus_triangle", 6)),
                   gc.canonical_form(gc.complete_bipartite(3, 3))}


def test_verify_n7_parallel_matches_serial():
    a = en.verify_theorem(7, jobs=1, include_side_claims=True)
    b = en.verify_theorem(7, jobs=2, include_side_claims=True)
    assert a == b
    assert a.violations == []


@pytest.mark.parametrize("n", range(3, 8))
def test_side_claims_hold(n):
    assert en.verify_side_claims(n) == []


def test_side_claims_n3_only_triangle_has_big_s2():
    records = en.graph_records(3)
    assert len(records) == 2
    assert [r.factors[1] != 1 for r in records] == [r.is_complete for r in records]
    assert sum(r.is_complete for r in records) == 1


def test_histogram_sanity():
    for n in range(5, 8):
        records = en.graph_records(n)
        ones = sum(1 for r in records if r.factors[2] == 1)
        far = sum(1 for r in records if r.diameter > 2)
        assert ones >= far


def test_fault_injection_chain():
    violations = en.verify_side_claims(6, factor_fn=unchained_diagonal)
    assert violations
    assert {v.claim for v in violations} == {en.Claim.CHAIN}


def test_fault_injection_matrix_tree():
    def doubled(m):
        f = list(smith_normal_form(m).factors)
        f[-2] *= 2
        return f

    claims = {v.claim for v in en.verify_side_claims(4, factor_fn=doubled)}
    assert en.Claim.MATRIX_TREE in claims


def test_theorem_violation_detection():
    # move K5-e out of EQ_N by faking its class; both directions of the set check should fire
    records = en.graph_records(5)
    target = gc.canonical_form(gc.complete_minus_edge(5))
    fake = [r if r.canonical != target else en.ClassRecord(r.canonical, (1, 1, 4, 15, 0), r.cofactor, r.diameter,
                                                            S3Class.EQ_N_MINUS_1, None, False, False)
            for r in records]
    _, violations = en.theorem_violations(5, fake)
    claims = sorted(v.claim.value for v in violations)
    assert claims == ["EQ_N1_SET", "EQ_N_SET"]
