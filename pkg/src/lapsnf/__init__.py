"""Exact Smith normal forms of graph Laplacians and the third invariant factor."""

from .analysis import (
    ClassificationReport,
    InvariantProfile,
    S3Class,
    classify_s3,
    expected_snf_for_family,
    invariant_profile,
    s2_is_nontrivial,
    spanning_tree_count,
)
from .graph import Graph, are_isomorphic, canonical_form, family, from_edges, laplacian
from .matrix import IntMatrix, SnfResult, determinant, determinantal_divisors, invariant_factors, smith_normal_form

__version__ = "0.1.0"
