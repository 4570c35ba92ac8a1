"""Decomposable subsets of abelian groups and their zero-sum subsets."""

from .core import (
    ElementSet,
    LineReduction,
    WeightFunction,
    ZeroSumWitness,
    boolean_zero_sum,
    decomposable_core,
    decomposition_table,
    is_decomposable,
    is_minimal_decomposable,
    min_zero_sum,
    minimal_decomposable_subset,
    reduce_to_line,
    weight_function,
)
from .errors import ZeroSumError
from .groups import GroupContext, Kind, element_add, set_sum

__version__ = "0.1.0"
