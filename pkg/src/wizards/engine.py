"""Ambiguity analysis per bus and the certified solve loop."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Union

from .enumeration import Partition, append_one, iter_parts
from .statistics import PRODUCT, evaluate, key_function
from .variants import VariantSpec

log = logging.getLogger(__name__)


class BudgetExceeded(RuntimeError):
    """Raised instead of returning a truncated analysis."""


class AnalysisError(RuntimeError):
    def __init__(self, bus: int, cause: BaseException):
        super().__init__(f"analysis of bus {bus} failed: {cause}")
        self.bus = bus
        self.cause = cause


@dataclass(frozen=True)
class Realism:
    """Optional post-filter on partitions. Off unless passed explicitly.

    Both rules survive appending a child of age one, so certification
    stays sound with the filter on.
    """

    min_age: Optional[int] = None
    children_younger: bool = False

    def admits(self, parts: tuple[int, ...], age: int) -> bool:
        if self.min_age is not None and age < self.min_age:
            return False
        if self.children_younger and parts[-1] >= age:
            return False
        return True


@dataclass(frozen=True)
class AmbiguityClass:
    key: tuple[int, ...]
    target: int
    partitions: tuple[Partition, ...]


@dataclass(frozen=True)
class BusAnalysis:
    bus: int
    variant: VariantSpec
    partition_total: int
    classes: tuple[AmbiguityClass, ...]

    @property
    def ambiguous_targets(self) -> tuple[int, ...]:
        """Distinct target values over all classes, ascending."""
        return tuple(sorted({c.target for c in self.classes}))

    @property
    def valid(self) -> bool:
        return is_valid_bus(self)


def is_valid_bus(analysis: BusAnalysis) -> bool:
    # No classes: A could not have said "No". Two or more targets: B is stuck.
    return len(analysis.ambiguous_targets) == 1


def analyze_bus(bus: int, variant: VariantSpec, *, max_partitions: Optional[int] = None,
                realism: Optional[Realism] = None) -> BusAnalysis:
    if not isinstance(bus, int) or bus < 1:
        raise ValueError(f"bus must be a positive integer, got {bus!r}")
    keyf = key_function(variant.key_stats)
    age = key_function([PRODUCT]) if realism is not None else None
    first: dict[tuple, tuple] = {}
    shared: dict[tuple, list] = {}
    total = 0
    for parts in iter_parts(variant.constraints(bus)):
        if realism is not None and not realism.admits(parts, age(parts)[0]):
            continue
        total += 1
        if max_partitions is not None and total > max_partitions:
            raise BudgetExceeded(
                f"bus {bus} has more than {max_partitions} admissible partitions")
        key = keyf(parts)
        seen = first.setdefault(key, parts)
        if seen is not parts:
            members = shared.get(key)
            if members is None:
                shared[key] = [seen, parts]
            else:
                members.append(parts)
    t = variant.target_index
    classes = tuple(
        AmbiguityClass(key, key[t], tuple(Partition(p) for p in shared[key]))
        for key in sorted(shared)
    )
    return BusAnalysis(bus, variant, total, classes)


@dataclass(frozen=True)
class Certified:
    stop_bus: int


@dataclass(frozen=True)
class BudgetExhausted:
    max_bus: int


Termination = Union[Certified, BudgetExhausted]


@dataclass
class SolveOutcome:
    variant: VariantSpec
    analyses: list[BusAnalysis]
    termination: Termination

    @property
    def valid_buses(self) -> list[BusAnalysis]:
        return [a for a in self.analyses if a.valid]

    @property
    def certified(self) -> bool:
        return isinstance(self.termination, Certified)


def _analyze_star(args):
    bus, variant, max_partitions, realism = args
    try:
        return analyze_bus(bus, variant, max_partitions=max_partitions, realism=realism)
    except Exception as exc:
        raise AnalysisError(bus, exc) from exc


def _batches(start: int, stop: int, size: int) -> Iterator[list[int]]:
    for lo in range(start, stop + 1, size):
        yield list(range(lo, min(lo + size, stop + 1)))


def solve(variant: VariantSpec, max_bus: int, *, jobs: int = 1, stop_early: bool = True,
          cache=None, checkpoint: Optional[Callable[[], None]] = None,
          max_partitions: Optional[int] = None,
          realism: Optional[Realism] = None) -> SolveOutcome:
    """Analyze buses 1..max_bus in order.

    With ``stop_early`` the loop ends at the first bus carrying two or more
    ambiguous targets; appending a child of age one carries both targets to
    every larger bus, so none of them can be valid. Variants with an upper
    count bound break that argument and always run to ``max_bus``.

    ``cache`` needs ``get(variant, bus)`` and ``put(analysis)``; ``checkpoint``
    is called after each batch of fresh results.
    """
    if not isinstance(max_bus, int) or max_bus < 1:
        raise ValueError(f"max_bus must be a positive integer, got {max_bus!r}")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    can_certify = variant.monotone
    analyses: list[BusAnalysis] = []
    stop: Optional[int] = None
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for batch in _batches(1, max_bus, jobs):
            results: dict[int, BusAnalysis] = {}
            todo = []
            for bus in batch:
                hit = cache.get(variant, bus) if cache is not None and realism is None else None
                if hit is not None:
                    results[bus] = hit
                else:
                    todo.append((bus, variant, max_partitions, realism))
            if pool is not None and len(todo) > 1:
                fresh = list(pool.map(_analyze_star, todo))
            else:
                fresh = [_analyze_star(args) for args in todo]
            for a in fresh:
                results[a.bus] = a
                if cache is not None and realism is None:
                    cache.put(a)
            if fresh and checkpoint is not None:
                checkpoint()
            for bus in batch:
                a = results[bus]
                analyses.append(a)
                log.debug("bus %d: %d partitions, %d ambiguous targets",
                          bus, a.partition_total, len(a.ambiguous_targets))
                if stop is None and can_certify and len(a.ambiguous_targets) >= 2:
                    stop = bus
                    if stop_early:
                        break
            if stop is not None and stop_early:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    termination = Certified(stop) if stop is not None else BudgetExhausted(max_bus)
    return SolveOutcome(variant, analyses, termination)


@dataclass
class WitnessReport:
    bus: int
    variant: VariantSpec
    mapping: dict[int, int] = field(default_factory=dict)
    witnesses: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _shift(stat) -> int:
    # product is unchanged by an extra 1; count and every power sum grow by one
    return 0 if stat.kind == "product" else 1


def verify_append_one_monotonicity(bus: int, variant: VariantSpec,
                                   analysis: Optional[BusAnalysis] = None,
                                   next_analysis: Optional[BusAnalysis] = None) -> WitnessReport:
    """Check that every class at ``bus`` lifts to a class at ``bus + 1``.

    Returns the target injection; any failure lands in ``counterexamples``
    and indicates an engine defect.
    """
    here = analysis or analyze_bus(bus, variant)
    there = next_analysis or analyze_bus(bus + 1, variant)
    report = WitnessReport(bus, variant)
    by_key = {c.key: c for c in there.classes}
    shifts = tuple(_shift(s) for s in variant.key_stats)
    for cls in here.classes:
        images = [append_one(p) for p in cls.partitions]
        expected = tuple(v + s for v, s in zip(cls.key, shifts))
        keys = {evaluate(p, variant.key_stats) for p in images}
        if keys != {expected}:
            report.counterexamples.append(
                f"class {cls.key}: images have keys {sorted(keys)}, expected {expected}")
            continue
        target = by_key.get(expected)
        if target is None or not set(images) <= set(target.partitions):
            report.counterexamples.append(
                f"class {cls.key}: no class at bus {bus + 1} holds its images")
            continue
        report.witnesses.append((cls.key, expected))
        image_target = expected[variant.target_index]
        previous = report.mapping.setdefault(cls.target, image_target)
        if previous != image_target:
            report.counterexamples.append(
                f"target {cls.target} maps to both {previous} and {image_target}")
    if len(set(report.mapping.values())) != len(report.mapping):
        report.counterexamples.append("target map is not injective")
    return report


def analyze_many(buses: Iterable[int], variant: VariantSpec, jobs: int = 1) -> list[BusAnalysis]:
    """Analyze an arbitrary set of buses; results come back in input order."""
    args = [(b, variant, None, None) for b in buses]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_analyze_star, args))
    return [_analyze_star(a) for a in args]
