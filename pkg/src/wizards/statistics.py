"""Exact statistics of a partition: count, product and power sums.

Python integers are unbounded, so products never wrap around no matter
how large the bus number gets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from math import prod
from typing import Callable, Iterable, Sequence

_KIND_ORDER = {"count": 0, "product": 1, "power_sum": 2}


@total_ordering
@dataclass(frozen=True)
class StatDescriptor:
    kind: str
    k: int = 0

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown statistic kind {self.kind!r}")
        if self.kind == "power_sum":
            if not isinstance(self.k, int) or self.k < 1:
                raise ValueError(f"power sum exponent must be a positive integer, got {self.k!r}")
        elif self.k != 0:
            raise ValueError(f"{self.kind} takes no exponent")

    def _order(self):
        return (_KIND_ORDER[self.kind], self.k)

    def __lt__(self, other: "StatDescriptor") -> bool:
        return self._order() < other._order()

    def __str__(self) -> str:
        return f"power_sum:{self.k}" if self.kind == "power_sum" else self.kind

    @classmethod
    def parse(cls, text: str) -> "StatDescriptor":
        text = text.strip()
        if text.startswith("power_sum:"):
            try:
                k = int(text.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad power sum descriptor {text!r}") from None
            return cls("power_sum", k)
        if text in ("count", "product"):
            return cls(text)
        raise ValueError(f"unknown statistic {text!r}; expected count, product or power_sum:k")

    @property
    def label(self) -> str:
        """Puzzle-flavoured name used in prose output."""
        if self.kind == "count":
            return "children"
        if self.kind == "product":
            return "age"
        return {1: "bus", 2: "dolls", 3: "sum of cubes"}.get(self.k, f"power sum {self.k}")

    def __call__(self, parts: Sequence[int]) -> int:
        if self.kind == "count":
            return len(parts)
        if self.kind == "product":
            return prod(parts)
        k = self.k
        return sum(x ** k for x in parts)


COUNT = StatDescriptor("count")
PRODUCT = StatDescriptor("product")


def power_sum(k: int) -> StatDescriptor:
    return StatDescriptor("power_sum", k)


KeyValue = tuple  # ordered tuple of exact ints, one per descriptor


def evaluate(p, descriptors: Sequence[StatDescriptor]) -> tuple[int, ...]:
    if not descriptors:
        raise ValueError("at least one statistic is required")
    parts = p.parts if hasattr(p, "parts") else tuple(p)
    return tuple(d(parts) for d in descriptors)


def key_function(descriptors: Iterable[StatDescriptor]) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
    """Specialised evaluator for the hot loop of the analysis engine."""
    descriptors = tuple(descriptors)
    if not descriptors:
        raise ValueError("at least one statistic is required")
    getters = []
    for d in descriptors:
        if d.kind == "count":
            getters.append(len)
        elif d.kind == "product":
            getters.append(prod)
        elif d.k == 1:
            getters.append(sum)
        else:
            getters.append(lambda parts, k=d.k: sum([x ** k for x in parts]))
    if descriptors == (PRODUCT, COUNT):
        return lambda parts: (prod(parts), len(parts))
    if len(getters) == 1:
        g = getters[0]
        return lambda parts: (g(parts),)
    return lambda parts: tuple([g(parts) for g in getters])
