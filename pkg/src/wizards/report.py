"""JSON, CSV and prose renderings of analyses and solve outcomes.

Statistic values go out as decimal strings so they stay exact at any size;
counts and bus numbers stay native integers.
"""

from __future__ import annotations

import csv
import io
import json
from math import prod
from typing import Optional

from .engine import (AmbiguityClass, BudgetExhausted, BusAnalysis, Certified,
                     SolveOutcome)
from .enumeration import Partition
from .variants import VariantSpec

SCHEMA_VERSION = 1

FORMATS = ("text", "json", "csv")


def to_record(a: BusAnalysis) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "variant": a.variant.to_dict(),
        "bus": a.bus,
        "partition_total": a.partition_total,
        "classes": [
            {
                "key": [str(v) for v in c.key],
                "target": str(c.target),
                "partitions": [list(p.parts) for p in c.partitions],
            }
            for c in a.classes
        ],
        "ambiguous_target_count": len(a.ambiguous_targets),
    }


def from_record(record: dict, variant: Optional[VariantSpec] = None) -> BusAnalysis:
    if record.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {record.get('schema_version')!r}")
    if variant is None:
        variant = VariantSpec.from_dict(record["variant"])
    classes = []
    for c in record["classes"]:
        key = tuple(int(v) for v in c["key"])
        target = int(c["target"])
        if target != key[variant.target_index]:
            raise ValueError(f"class target {target} disagrees with key {key}")
        classes.append(AmbiguityClass(key, target, tuple(Partition(tuple(p)) for p in c["partitions"])))
    a = BusAnalysis(int(record["bus"]), variant, int(record["partition_total"]), tuple(classes))
    if len(a.ambiguous_targets) != record["ambiguous_target_count"]:
        raise ValueError("ambiguous_target_count does not match the classes")
    return a


def termination_dict(outcome: SolveOutcome) -> dict:
    t = outcome.termination
    if isinstance(t, Certified):
        return {"kind": "certified", "stop_bus": t.stop_bus}
    return {"kind": "budget_exhausted", "max_bus": t.max_bus}


def outcome_to_dict(outcome: SolveOutcome) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "variant": outcome.variant.to_dict(),
        "valid_buses": [
            {"bus": a.bus, "target": str(a.ambiguous_targets[0])}
            for a in outcome.valid_buses
        ],
        "termination": termination_dict(outcome),
        "records": [to_record(a) for a in outcome.analyses],
    }


def outcome_from_dict(data: dict) -> SolveOutcome:
    variant = VariantSpec.from_dict(data["variant"])
    analyses = [from_record(r, variant) for r in data["records"]]
    t = data["termination"]
    if t["kind"] == "certified":
        termination = Certified(t["stop_bus"])
    else:
        termination = BudgetExhausted(t["max_bus"])
    return SolveOutcome(variant, analyses, termination)


def _dumps(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def _csv(analyses) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bus", "partition_total", "ambiguous_target_count", "valid"])
    for a in analyses:
        w.writerow([a.bus, a.partition_total, len(a.ambiguous_targets), str(a.valid).lower()])
    return buf.getvalue()


def _ages(parts) -> str:
    return ", ".join(map(str, parts))


def _describe_key(variant: VariantSpec, key) -> str:
    return ", ".join(f"{d.label} {v}" for d, v in zip(variant.key_stats, key))


def _class_lines(a: BusAnalysis, max_classes: Optional[int]) -> list[str]:
    lines = []
    shown = a.classes if max_classes is None else a.classes[:max_classes]
    for c in shown:
        lines.append(f"  {_describe_key(a.variant, c.key)}:")
        for p in c.partitions:
            lines.append(f"    {_ages(p.parts)}")
        lines.extend(_side_targets(a.variant, c))
    hidden = len(a.classes) - len(shown)
    if hidden:
        lines.append(f"  ... {hidden} more class(es) not shown")
    return lines


def _side_targets(variant: VariantSpec, c: AmbiguityClass) -> list[str]:
    # When the age is not part of the key it may still vary inside a class.
    if any(d.kind == "product" for d in variant.key_stats):
        return []
    ages = sorted({prod(p.parts) for p in c.partitions})
    return [f"    candidate ages: {_ages(ages)}"]


def render_analysis(a: BusAnalysis, fmt: str = "text", max_classes: Optional[int] = None) -> str:
    if fmt == "json":
        return _dumps(to_record(a))
    if fmt == "csv":
        return _csv([a])
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}; choose one of {', '.join(FORMATS)}")
    target = a.variant.target.label
    lines = [f"bus {a.bus} ({a.variant.name}): {a.partition_total} partitions, "
             f"{len(a.classes)} ambiguity class(es)"]
    if a.classes:
        lines.append(f"ambiguous {target}: {_ages(a.ambiguous_targets)}")
        lines.extend(_class_lines(a, max_classes))
    lines.append(f"valid: {str(a.valid).lower()}")
    return "\n".join(lines) + "\n"


def render_report(outcome: SolveOutcome, fmt: str = "text", max_classes: Optional[int] = None,
                  per_bus: bool = False) -> str:
    if fmt == "json":
        return _dumps(outcome_to_dict(outcome))
    if fmt == "csv":
        return _csv(outcome.analyses)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}; choose one of {', '.join(FORMATS)}")
    v = outcome.variant
    target = v.target.label
    lines = [f"variant {v.name}: key ({', '.join(d.label for d in v.key_stats)}), "
             f"target {target}"]
    valid = outcome.valid_buses
    if not valid:
        lines.append("no valid bus found")
    for a in valid:
        lines.append(f"bus {a.bus}: {target} {a.ambiguous_targets[0]}")
        lines.extend(_class_lines(a, max_classes))
    t = outcome.termination
    if isinstance(t, Certified):
        stop = next(a for a in outcome.analyses if a.bus == t.stop_bus)
        lines.append(f"certified at bus {t.stop_bus}: {target} already ambiguous between "
                     f"{_ages(stop.ambiguous_targets)}; no larger bus can be valid")
    else:
        lines.append(f"budget exhausted at bus {t.max_bus} without a certificate")
    if per_bus or not isinstance(t, Certified):
        counts = " ".join(f"{a.bus}:{len(a.ambiguous_targets)}" for a in outcome.analyses)
        lines.append(f"ambiguous {target} counts per bus: {counts}")
    return "\n".join(lines) + "\n"


def explain(a: BusAnalysis, max_classes: Optional[int] = None) -> str:
    """Narrative account of one bus: can A say "No", and can B then deduce the target?"""
    v = a.variant
    target = v.target.label
    told = ", ".join(d.label for d in v.key_stats)
    out = [f"Bus {a.bus}, {v.name} variant: {a.partition_total} ways to split {a.bus} into children's ages."]
    if not a.classes:
        out.append(f"Every combination of ({told}) pins down the ages, so A could not have answered \"No\".")
        out.append("This bus is impossible.")
        return "\n".join(out) + "\n"
    n = len(a.classes)
    out.append(f"A can answer \"No\" in {n} way{'s' if n > 1 else ''}:")
    shown = a.classes if max_classes is None else a.classes[:max_classes]
    for c in shown:
        options = " or ".join("{" + _ages(p.parts) + "}" for p in c.partitions)
        out.append(f"- with {_describe_key(v, c.key)} the ages could be {options}.")
        out.extend(s.strip() for s in _side_targets(v, c))
    if len(shown) < len(a.classes):
        out.append(f"- ... and {len(a.classes) - len(shown)} more.")
    if a.valid:
        out.append(f"Every such case has {target} {a.ambiguous_targets[0]}, so B can deduce it.")
    else:
        out.append(f"The {target} could be any of {_ages(a.ambiguous_targets)}, so B cannot deduce it.")
    return "\n".join(out) + "\n"
