"""Integer partitions of a bus number, in canonical nondecreasing form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional


@dataclass(frozen=True, order=True)
class Partition:
    """A multiset of children's ages, stored as a nondecreasing tuple."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if any(not isinstance(x, int) or x < 1 for x in parts):
            raise ValueError(f"parts must be positive integers: {parts!r}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be nondecreasing: {parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build a partition from parts in any order."""
        return cls(tuple(sorted(parts)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class PartitionConstraints:
    sum: int
    min_count: Optional[int] = None
    max_count: Optional[int] = None
    max_part: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.sum, int) or self.sum < 1:
            raise ValueError(f"sum must be a positive integer, got {self.sum!r}")
        for name in ("min_count", "max_count", "max_part"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, int) or value < 1):
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if (self.min_count is not None and self.max_count is not None
                and self.min_count > self.max_count):
            raise ValueError(
                f"min_count ({self.min_count}) exceeds max_count ({self.max_count})")

    @property
    def unconstrained(self) -> bool:
        return self.min_count is None and self.max_count is None and self.max_part is None

    def admits(self, parts) -> bool:
        """Post-filter semantics: the definition of which partitions are admissible."""
        n = len(parts)
        if self.min_count is not None and n < self.min_count:
            return False
        if self.max_count is not None and n > self.max_count:
            return False
        if self.max_part is not None and max(parts) > self.max_part:
            return False
        return sum(parts) == self.sum


def _ascending(n: int) -> Iterator[tuple[int, ...]]:
    # Kelleher's accelerated ascending-composition generator; lexicographic order.
    a = [0] * (n + 1)
    k = 1
    y = n - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        l = k + 1
        while x <= y:
            a[k] = x
            a[l] = y
            yield tuple(a[:k + 2])
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield tuple(a[:k + 1])


def _constrained(c: PartitionConstraints) -> Iterator[tuple[int, ...]]:
    lo_count = c.min_count or 1
    hi_count = c.max_count if c.max_count is not None else c.sum
    top = c.max_part if c.max_part is not None else c.sum
    prefix: list[int] = []

    def rec(remaining: int, smallest: int) -> Iterator[tuple[int, ...]]:
        used = len(prefix)
        slots = hi_count - used
        x = smallest
        # first of at least two more parts, each >= x and <= top
        while slots >= 2 and 2 * x <= remaining and x <= top:
            rest = remaining - x
            # too few parts possible even if all remaining parts equal x
            if used + 1 + rest // x < lo_count:
                break
            # fewest parts needed for the rest under the part-size cap
            if used + 1 + -(-rest // top) <= hi_count:
                prefix.append(x)
                yield from rec(rest, x)
                prefix.pop()
            x += 1
        # a single final part sorts after every longer continuation
        if smallest <= remaining <= top and lo_count <= used + 1 <= hi_count:
            yield (*prefix, remaining)

    yield from rec(c.sum, 1)


def iter_parts(constraints: PartitionConstraints) -> Iterator[tuple[int, ...]]:
    """Yield admissible partitions as bare nondecreasing tuples, lexicographically."""
    if constraints.unconstrained:
        if constraints.sum == 1:
            yield (1,)
            return
        yield from _ascending(constraints.sum)
    else:
        yield from _constrained(constraints)


def enumerate_partitions(constraints: PartitionConstraints) -> Iterator[Partition]:
    for parts in iter_parts(constraints):
        yield Partition(parts)


def count_partitions(n: int) -> int:
    """Number of partitions of n via Euler's pentagonal-number recurrence."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            j += 1
        p[m] = total
    return p[n]


def append_one(p: Partition) -> Partition:
    """Add a child of age one: sum and count grow by one, product is unchanged."""
    return Partition((1,) + p.parts)
