"""Puzzle variants: what wizard B is told and what B claims to deduce."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .enumeration import PartitionConstraints
from .statistics import COUNT, PRODUCT, StatDescriptor, power_sum


class VariantError(ValueError):
    pass


@dataclass(frozen=True)
class VariantSpec:
    name: str
    key_stats: tuple[StatDescriptor, ...]
    target_index: int
    min_count: Optional[int] = None
    max_count: Optional[int] = None

    @property
    def target(self) -> StatDescriptor:
        return self.key_stats[self.target_index]

    def constraints(self, bus: int) -> PartitionConstraints:
        return PartitionConstraints(bus, min_count=self.min_count, max_count=self.max_count)

    @property
    def monotone(self) -> bool:
        """Whether appending a child of age one keeps every partition admissible."""
        return self.max_count is None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "key": [str(d) for d in self.key_stats],
            "target_index": self.target_index,
            "constraints": {"min_count": self.min_count, "max_count": self.max_count},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "VariantSpec":
        try:
            constraints = data.get("constraints") or {}
            return custom_variant(
                [StatDescriptor.parse(s) for s in data["key"]],
                data["target_index"],
                min_count=constraints.get("min_count"),
                max_count=constraints.get("max_count"),
                name=data.get("name", "custom"),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise VariantError(f"malformed variant definition: {exc!r}") from None

    def fingerprint(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    def with_counts(self, min_count=None, max_count=None) -> "VariantSpec":
        return custom_variant(
            self.key_stats, self.target_index,
            min_count=self.min_count if min_count is None else min_count,
            max_count=self.max_count if max_count is None else max_count,
            name=self.name,
        )


def custom_variant(key_stats: Sequence[StatDescriptor], target_index: int,
                   min_count: Optional[int] = None, max_count: Optional[int] = None,
                   name: str = "custom") -> VariantSpec:
    """Validate and build a variant; every violated rule is listed in the error."""
    key_stats = tuple(key_stats)
    problems = []
    if not key_stats:
        problems.append("key must contain at least one statistic")
    if len(set(key_stats)) != len(key_stats):
        problems.append("key contains duplicate statistics")
    if power_sum(1) in key_stats:
        problems.append("power_sum:1 is the bus number itself and may not be part of the key")
    if not isinstance(target_index, int) or not 0 <= target_index < len(key_stats):
        problems.append(f"target_index {target_index!r} out of range for key of length {len(key_stats)}")
    for label, v in (("min_count", min_count), ("max_count", max_count)):
        if v is not None and (not isinstance(v, int) or v < 1):
            problems.append(f"{label} must be a positive integer")
    if (isinstance(min_count, int) and isinstance(max_count, int)
            and min_count > max_count):
        problems.append("min_count exceeds max_count")
    if not name or not isinstance(name, str):
        problems.append("name must be a nonempty string")
    if problems:
        raise VariantError("; ".join(problems))
    return VariantSpec(name, key_stats, target_index, min_count, max_count)


_BUILTINS = {
    "original": dict(key_stats=(PRODUCT, COUNT), target_index=0),
    "simplified": dict(key_stats=(COUNT,), target_index=0),
    "generalized": dict(key_stats=(PRODUCT, COUNT, power_sum(2)), target_index=0),
    "cubes": dict(key_stats=(PRODUCT, COUNT, power_sum(2), power_sum(3)), target_index=0),
    "original_c3": dict(key_stats=(PRODUCT, COUNT), target_index=0, min_count=3, max_count=3),
}

BUILTIN_NAMES = tuple(_BUILTINS)


def builtin_variant(name: str) -> VariantSpec:
    try:
        spec = _BUILTINS[name]
    except KeyError:
        raise VariantError(
            f"unknown variant {name!r}; available: {', '.join(BUILTIN_NAMES)}") from None
    return custom_variant(name=name, **spec)


def load_variant_file(path) -> VariantSpec:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise VariantError(f"cannot read variant file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise VariantError(f"variant file {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise VariantError(f"variant file {path} must hold a JSON object")
    return VariantSpec.from_dict(data)
