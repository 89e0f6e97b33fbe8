"""Exact classification of divisorial neighbourhoods of a curve over a cA
threefold point, from the weighted dual graph of the contracted surface."""
from .classify import (
    NONNORMAL,
    NORMAL,
    SEMISTABLE,
    ClassificationError,
    NeighborhoodVerdict,
    classify,
    classify_nonnormal,
    classify_normal_nss,
    classify_semistable,
    classify_semistable_germ,
)
from .enumeration import SemistableDatum, enumerate_normal_nss, enumerate_semistable
from .exact import hj_expand, hj_recognize, pell_solve
from .graph import Vertex, WeightedDualGraph, analyze_germ
from .quotient import CyclicQuotient, TDecomposition, cusp_class, t_decompositions

__version__ = "0.1.0"
