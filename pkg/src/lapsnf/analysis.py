"""Laplacian invariant profiles and the third-invariant-factor classifier."""

from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass
from math import prod

from . import graph as gc
from .graph import Graph
from .matrix import DIVISOR_MAX_N, determinant, determinantal_divisors, smith_normal_form, submatrix


class InvariantError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""


class S3Class(str, enum.Enum):
    EQ_N = "EQ_N"
    EQ_N_MINUS_1 = "EQ_N_MINUS_1"
    EQ_N_MINUS_2 = "EQ_N_MINUS_2"
    EQ_N_MINUS_3 = "EQ_N_MINUS_3"
    OTHER = "OTHER"
    COMPLETE_GRAPH = "COMPLETE_GRAPH"
    NOT_APPLICABLE = "NOT_APPLICABLE"


CHARACTERIZED = (S3Class.EQ_N, S3Class.EQ_N_MINUS_1, S3Class.EQ_N_MINUS_2, S3Class.EQ_N_MINUS_3)


@dataclass(frozen=True)
class InvariantProfile:
    n: int
    factors: tuple[int, ...]
    deltas: tuple[int, ...] | None
    tree_count: int
    diameter: float
    s2: int
    s3: int | None


@dataclass(frozen=True)
class ClassificationReport:
    profile: InvariantProfile
    s3_class: S3Class
    matched_family: str | None
    structural_check_passed: bool


def _require_connected(g: Graph) -> None:
    if not gc.is_connected(g):
        raise gc.GraphError("graph is disconnected")


def reduced_laplacian_determinant(g: Graph) -> int:
    idx = list(range(1, g.n))
    return determinant(submatrix(gc.laplacian(g), idx, idx))


def _tree_count(g: Graph, factors) -> int:
    by_factors = prod(factors[:g.n - 1])
    by_cofactor = reduced_laplacian_determinant(g)
    if by_factors != by_cofactor:
        raise InvariantError(
            f"tree count mismatch: invariant factors give {by_factors}, cofactor gives {by_cofactor}")
    return by_factors


def spanning_tree_count(g: Graph) -> int:
    _require_connected(g)
    return _tree_count(g, smith_normal_form(gc.laplacian(g)).factors)


def invariant_profile(g: Graph, with_deltas: bool = True) -> InvariantProfile:
    """Invariant factors, tree count and diameter of a connected graph.

    ``deltas`` is filled by minor enumeration when requested and ``n <= 9``.
    """
    if g.n < 2:
        raise gc.GraphError("profiles need at least 2 vertices")
    _require_connected(g)
    lap = gc.laplacian(g)
    factors = smith_normal_form(lap).factors
    deltas = None
    if with_deltas and g.n <= DIVISOR_MAX_N:
        deltas = determinantal_divisors(lap).deltas
    return InvariantProfile(
        n=g.n,
        factors=factors,
        deltas=deltas,
        tree_count=_tree_count(g, factors),
        diameter=gc.diameter(g),
        s2=factors[1],
        s3=factors[2] if g.n >= 3 else None,
    )


def s2_is_nontrivial(g: Graph) -> bool:
    if g.n < 3:
        raise gc.GraphError("s2 check needs n >= 3")
    _require_connected(g)
    return smith_normal_form(gc.laplacian(g)).factors[1] != 1


def theorem_families(n: int) -> dict[S3Class, tuple[str, ...]]:
    """Family names the characterization assigns to each class at order n."""
    sporadic = {
        5: ("complete_bipartite_2_3", "complete_minus_triangle"),
        6: ("complete_minus_triangle", "complete_bipartite_3_3"),
        7: ("complete_minus_2triangles", "complete_minus_k33"),
    }
    return {
        S3Class.EQ_N: ("complete_minus_edge",),
        S3Class.EQ_N_MINUS_1: ("pendant_complete",),
        S3Class.EQ_N_MINUS_2: ("complete_minus_2e", "complete_minus_c4") if n == 5 else (),
        S3Class.EQ_N_MINUS_3: sporadic.get(n, ()),
    }


@lru_cache(maxsize=None)
def _family_key(name: str, n: int) -> tuple[int, tuple[int, ...], int]:
    h = gc.family(name, n)
    # uncapped on purpose: twin pruning keeps family members cheap at any n
    return h.num_edges, gc.degree_sequence(h), gc._canonical_mask(h)


def structural_match(g: Graph, canonical: int | None = None) -> tuple[S3Class, str] | None:
    """Which characterized family ``g`` is isomorphic to, decided without any SNF.

    ``canonical`` may carry a precomputed canonical mask of ``g``.
    """
    if g.n < 5:
        return None
    m, degs = g.num_edges, gc.degree_sequence(g)
    for cls, names in theorem_families(g.n).items():
        for name in names:
            fm, fdegs, fmask = _family_key(name, g.n)
            if fm != m or fdegs != degs:
                continue
            if canonical is None:
                canonical = gc._canonical_mask(g)
            if canonical == fmask:
                return cls, name
    return None


def _value_class(n: int, s3: int) -> S3Class:
    return {
        n: S3Class.EQ_N,
        n - 1: S3Class.EQ_N_MINUS_1,
        n - 2: S3Class.EQ_N_MINUS_2,
        n - 3: S3Class.EQ_N_MINUS_3,
    }.get(s3, S3Class.OTHER)


def classify_profile(g: Graph, profile: InvariantProfile, canonical: int | None = None) -> ClassificationReport:
    n = g.n
    if g.num_edges == n * (n - 1) // 2:
        return ClassificationReport(profile, S3Class.COMPLETE_GRAPH, None, True)
    if n < 5:
        return ClassificationReport(profile, S3Class.NOT_APPLICABLE, None, True)
    cls = _value_class(n, profile.s3)
    found = structural_match(g, canonical)
    if cls is S3Class.OTHER:
        return ClassificationReport(profile, cls, None, found is None)
    if found is None:
        return ClassificationReport(profile, cls, None, False)
    return ClassificationReport(profile, cls, found[1], found[0] is cls)


def classify_s3(g: Graph, with_deltas: bool = False) -> ClassificationReport:
    return classify_profile(g, invariant_profile(g, with_deltas=with_deltas))


def expected_snf_for_family(name: str, n: int) -> tuple[int, ...]:
    """Closed-form invariant factors for the infinite families."""
    if n < 5:
        raise ValueError(f"closed forms are stated for n >= 5, got {n}")
    if name == "complete":
        return (1,) + (n,) * (n - 2) + (0,)
    if name == "complete_minus_edge":
        return (1, 1) + (n,) * (n - 4) + (n * (n - 2), 0)
    if name == "pendant_complete":
        return (1, 1) + (n - 1,) * (n - 3) + (0,)
    if name == "case7_family":
        return (1, 1, 1) + (n - 1,) * (n - 5) + (2 * (n - 1) * (n - 2), 0)
    raise ValueError(f"family {name!r} has no closed-form Smith normal form")
