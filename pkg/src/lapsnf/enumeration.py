"""Exhaustive connected-graph generation and verification of the s2/s3 claims.

Graphs on n vertices are grown from the classes on n - 1 vertices by adding
one vertex with every non-empty neighborhood, deduplicated by canonical form.
Every connected graph has a non-cut vertex, so this reaches every class.

Work is split into contiguous shards of the sorted canonical forms; shard
results are merged in shard order, so output never depends on worker count.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Callable, Iterator, Sequence

from . import graph as gc
from .analysis import CHARACTERIZED, InvariantProfile, S3Class, _family_key, classify_profile, theorem_families
from .graph import Graph
from .matrix import IntMatrix, determinant, is_divisibility_chain, smith_normal_form, submatrix

MAX_N = 8
SLOW_MAX_N = 9
JOBS_ENV = "LAPSNF_JOBS"


class Claim(str, enum.Enum):
    S3_BOUND = "S3_BOUND"
    EQ_N_SET = "EQ_N_SET"
    EQ_N1_SET = "EQ_N1_SET"
    EQ_N2_SET = "EQ_N2_SET"
    EQ_N3_SET = "EQ_N3_SET"
    LEMMA_S2 = "LEMMA_S2"
    DIAMETER_S3 = "DIAMETER_S3"
    CHAIN = "CHAIN"
    MATRIX_TREE = "MATRIX_TREE"


_SET_CLAIM = {
    S3Class.EQ_N: Claim.EQ_N_SET,
    S3Class.EQ_N_MINUS_1: Claim.EQ_N1_SET,
    S3Class.EQ_N_MINUS_2: Claim.EQ_N2_SET,
    S3Class.EQ_N_MINUS_3: Claim.EQ_N3_SET,
}


@dataclass(frozen=True)
class ViolationRecord:
    canonical: int
    claim: Claim
    details: str


@dataclass
class EnumerationSummary:
    n: int
    total_connected: int
    s3_histogram: dict[int, int] = field(default_factory=dict)
    witnesses: dict[S3Class, list[int]] = field(default_factory=dict)
    violations: list[ViolationRecord] = field(default_factory=list)

    def witness_counts(self) -> dict[S3Class, int]:
        return {cls: len(self.witnesses.get(cls, [])) for cls in CHARACTERIZED}


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _check_range(n: int, low: int, allow_slow: bool) -> None:
    top = SLOW_MAX_N if allow_slow else MAX_N
    if not low <= n <= top:
        hint = " (n = 9 needs allow_slow)" if n == SLOW_MAX_N else ""
        raise ValueError(f"n must be in {low}..{top}, got {n}{hint}")


def _shards(items: Sequence, jobs: int) -> list[Sequence]:
    k = max(1, min(len(items), jobs * 4))
    size = -(-len(items) // k)
    return [items[i:i + size] for i in range(0, len(items), size)]


def _run_sharded(fn: Callable, items: Sequence, jobs: int, *args) -> list:
    shards = _shards(items, jobs)
    if jobs <= 1 or len(shards) <= 1:
        return [fn(s, *args) for s in shards]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, shards, *[[a] * len(shards) for a in args]))


# Generation

def _augment(parents: Sequence[int], m: int) -> set[int]:
    """Canonical masks of all (m+1)-vertex extensions of the given m-vertex classes."""
    out = set()
    top = m  # the new vertex
    for mask in parents:
        base = list(gc.from_mask(m, mask).adj) + [0]
        for nbrs in range(1, 1 << m):
            adj = base[:]
            adj[top] = nbrs
            r = nbrs
            while r:
                low = r & -r
                adj[low.bit_length() - 1] |= 1 << top
                r ^= low
            out.add(gc._canonical_mask(Graph(m + 1, tuple(adj))))
    return out


def generate_connected_masks(n: int, jobs: int = 1, parents: Sequence[int] | None = None) -> tuple[int, ...]:
    """Sorted canonical masks of connected classes on n vertices, built fresh.

    ``parents`` may supply the (n-1)-vertex classes; they are otherwise taken
    from the cache.
    """
    if n == 1:
        return (0,)
    if parents is None:
        parents = connected_masks(n - 1, jobs, allow_slow=True)
    found: set[int] = set()
    for part in _run_sharded(_augment, list(parents), jobs, n - 1):
        found |= part
    return tuple(sorted(found))


_CACHE: dict[int, tuple[int, ...]] = {}


def connected_masks(n: int, jobs: int | None = None, allow_slow: bool = False) -> tuple[int, ...]:
    """Cached ``generate_connected_masks``; the result does not depend on ``jobs``."""
    _check_range(n, 1, allow_slow)
    if n not in _CACHE:
        _CACHE[n] = generate_connected_masks(n, jobs or default_jobs())
    return _CACHE[n]


def enumerate_connected(n: int, jobs: int | None = None, allow_slow: bool = False) -> Iterator[Graph]:
    """One graph per isomorphism class of connected graphs on n vertices,
    in ascending canonical-mask order."""
    for mask in connected_masks(n, jobs, allow_slow):
        yield gc.from_mask(n, mask)


# Verification

@dataclass(frozen=True)
class ClassRecord:
    canonical: int
    factors: tuple[int, ...]
    cofactor: int
    diameter: float
    s3_class: S3Class
    matched_family: str | None
    structural_check_passed: bool
    is_complete: bool


def _record(mask: int, n: int, factor_fn: Callable[[IntMatrix], Sequence[int]] | None) -> ClassRecord:
    g = gc.from_mask(n, mask)
    lap = gc.laplacian(g)
    factors = tuple(factor_fn(lap)) if factor_fn else smith_normal_form(lap).factors
    idx = list(range(1, n))
    cofactor = determinant(submatrix(lap, idx, idx))
    diam = gc.diameter(g)
    profile = InvariantProfile(
        n=n, factors=factors, deltas=None, tree_count=prod(factors[:n - 1]), diameter=diam,
        s2=factors[1] if n >= 2 else 0, s3=factors[2] if n >= 3 else None)
    if n >= 3:
        report = classify_profile(g, profile, canonical=mask)
        cls, fam, ok = report.s3_class, report.matched_family, report.structural_check_passed
    else:
        cls, fam, ok = S3Class.NOT_APPLICABLE, None, True
    return ClassRecord(mask, factors, cofactor, diam, cls, fam, ok, g.num_edges == n * (n - 1) // 2)


def _record_shard(masks: Sequence[int], n: int, factor_fn=None) -> list[ClassRecord]:
    return [_record(m, n, factor_fn) for m in masks]


def graph_records(n: int, jobs: int | None = None, allow_slow: bool = False,
                  factor_fn: Callable[[IntMatrix], Sequence[int]] | None = None) -> list[ClassRecord]:
    jobs = jobs or default_jobs()
    masks = connected_masks(n, jobs, allow_slow)
    out: list[ClassRecord] = []
    for part in _run_sharded(_record_shard, masks, jobs, n, factor_fn):
        out.extend(part)
    return out


def theorem_violations(n: int, records: Sequence[ClassRecord]) -> tuple[EnumerationSummary, list[ViolationRecord]]:
    summary = EnumerationSummary(n=n, total_connected=len(records))
    summary.witnesses = {cls: [] for cls in CHARACTERIZED}
    violations = []
    for r in records:
        if r.is_complete:
            continue
        s3 = r.factors[2]
        summary.s3_histogram[s3] = summary.s3_histogram.get(s3, 0) + 1
        if s3 > n:
            violations.append(ViolationRecord(r.canonical, Claim.S3_BOUND, f"s3 = {s3} > n = {n}"))
        if r.s3_class in summary.witnesses:
            summary.witnesses[r.s3_class].append(r.canonical)
    summary.s3_histogram = dict(sorted(summary.s3_histogram.items()))

    for cls, names in theorem_families(n).items():
        expected = {_family_key(name, n)[2]: name for name in names}
        got = set(summary.witnesses[cls])
        for mask in sorted(got - set(expected)):
            violations.append(ViolationRecord(mask, _SET_CLAIM[cls], f"s3 puts this graph in {cls.value} "
                                                                     "but it is not a listed family"))
        for mask in sorted(set(expected) - got):
            violations.append(ViolationRecord(mask, _SET_CLAIM[cls], f"{expected[mask]} is missing from "
                                                                     f"{cls.value}"))
    return summary, violations


def side_claim_violations(n: int, records: Sequence[ClassRecord]) -> list[ViolationRecord]:
    out = []
    for r in records:
        f = r.factors
        if not is_divisibility_chain(f):
            out.append(ViolationRecord(r.canonical, Claim.CHAIN, f"factors {f} break the divisibility chain"))
        product = prod(f[:n - 1])
        if product != r.cofactor:
            out.append(ViolationRecord(r.canonical, Claim.MATRIX_TREE,
                                       f"product of factors {product} != cofactor {r.cofactor}"))
        if n >= 3 and (f[1] != 1) != r.is_complete:
            out.append(ViolationRecord(r.canonical, Claim.LEMMA_S2,
                                       f"s2 = {f[1]} but graph {'is' if r.is_complete else 'is not'} complete"))
        if n >= 3 and r.diameter > 2 and f[2] != 1:
            out.append(ViolationRecord(r.canonical, Claim.DIAMETER_S3,
                                       f"diameter {r.diameter} but s3 = {f[2]}"))
    return out


def verify_theorem(n: int, jobs: int | None = None, allow_slow: bool = False,
                   include_side_claims: bool = False) -> EnumerationSummary:
    """Check the s3 bound and all four characterizations over every class at order n."""
    _check_range(n, 5, allow_slow)
    records = graph_records(n, jobs, allow_slow)
    summary, violations = theorem_violations(n, records)
    if include_side_claims:
        violations += side_claim_violations(n, records)
    summary.violations = violations
    return summary


def verify_side_claims(n: int, jobs: int | None = None, allow_slow: bool = False,
                       factor_fn: Callable[[IntMatrix], Sequence[int]] | None = None) -> list[ViolationRecord]:
    """Lemma, diameter, divisibility and matrix-tree checks over every class.

    ``factor_fn`` replaces the SNF routine (fault injection).
    """
    _check_range(n, 3, allow_slow)
    return side_claim_violations(n, graph_records(n, jobs, allow_slow, factor_fn))


def verify_all(n: int, jobs: int | None = None, allow_slow: bool = False) -> EnumerationSummary:
    """Theorem checks (n >= 5) plus the side claims (n >= 3) from one pass over the classes."""
    _check_range(n, 3, allow_slow)
    records = graph_records(n, jobs, allow_slow)
    if n >= 5:
        summary, violations = theorem_violations(n, records)
    else:
        summary, violations = EnumerationSummary(n=n, total_connected=len(records)), []
    summary.violations = violations + side_claim_violations(n, records)
    return summary
