"""Combinatorial solver for Conway's wizards puzzles and their variants."""

from .enumeration import (Partition, PartitionConstraints, append_one, count_partitions,
                          enumerate_partitions)
from .engine import (AmbiguityClass, BudgetExceeded, BudgetExhausted, BusAnalysis, Certified,
                     Realism, SolveOutcome, analyze_bus, is_valid_bus, solve,
                     verify_append_one_monotonicity)
from .statistics import COUNT, PRODUCT, StatDescriptor, evaluate, power_sum
from .variants import VariantSpec, builtin_variant, custom_variant

__all__ = [
    "AmbiguityClass", "BudgetExceeded", "BudgetExhausted", "BusAnalysis", "COUNT", "Certified",
    "PRODUCT", "Partition", "PartitionConstraints", "Realism", "SolveOutcome", "StatDescriptor",
    "VariantSpec", "analyze_bus", "append_one", "builtin_variant", "count_partitions",
    "custom_variant", "enumerate_partitions", "evaluate", "is_valid_bus", "power_sum", "solve",
    "verify_append_one_monotonicity",
]
