"""Exact toolkit for metric groups and integral premodular categories."""

from .cyclotomic import CycNumber, RootOfUnity, is_root_of_unity, sqrt_int
from .abelian import AbelianGroup, Subgroup
from .metric import MetricGroup
from .fusion import FusionRing, Subring
from .premodular import PremodularData, from_metric_group, reverse, deligne_product

__all__ = [
    "CycNumber",
    "RootOfUnity",
    "is_root_of_unity",
    "sqrt_int",
    "AbelianGroup",
    "Subgroup",
    "MetricGroup",
    "FusionRing",
    "Subring",
    "PremodularData",
    "from_metric_group",
    "reverse",
    "deligne_product",
]
