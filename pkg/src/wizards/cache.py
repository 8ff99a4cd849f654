"""Line-oriented on-disk cache of per-bus analyses for resumable scans."""

from __future__ import annotations

import json
import logging
import os
import tempfile
import threading
from pathlib import Path
from typing import Optional

from .engine import BusAnalysis
from .report import SCHEMA_VERSION, from_record, to_record
from .variants import VariantSpec

log = logging.getLogger(__name__)


class CacheError(OSError):
    pass


class ScanCache:
    """Maps (variant fingerprint, bus) to a serialized analysis.

    Entries are only trusted when both the fingerprint and the schema
    version match; anything else is treated as a miss.
    """

    def __init__(self):
        self._entries: dict[tuple[str, int], dict] = {}
        self._lock = threading.Lock()
        self.warnings: list[str] = []

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, ScanCache) and self._entries == other._entries

    def keys(self):
        return sorted(self._entries)

    def put(self, analysis: BusAnalysis) -> None:
        with self._lock:
            self._entries[(analysis.variant.fingerprint(), analysis.bus)] = to_record(analysis)

    def get(self, variant: VariantSpec, bus: int) -> Optional[BusAnalysis]:
        record = self._entries.get((variant.fingerprint(), bus))
        if record is None:
            return None
        try:
            return from_record(record, variant)
        except (ValueError, KeyError, TypeError) as exc:
            self._warn(f"discarding cached bus {bus}: {exc}")
            return None

    def usable(self, variant: VariantSpec) -> int:
        fp = variant.fingerprint()
        return sum(1 for f, _ in self._entries if f == fp)

    def _warn(self, msg: str) -> None:
        self.warnings.append(msg)
        log.warning(msg)

    def save(self, location) -> None:
        save_cache(self, location)


def save_cache(cache: ScanCache, location) -> None:
    """Write atomically: a crash mid-write leaves the previous file intact."""
    path = Path(location)
    with cache._lock:
        lines = [
            json.dumps({"fingerprint": fp, "schema_version": SCHEMA_VERSION, "bus": bus,
                        "record": cache._entries[(fp, bus)]}, sort_keys=True)
            for fp, bus in sorted(cache._entries)
        ]
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write("".join(line + "\n" for line in lines))
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except OSError as exc:
        raise CacheError(f"cannot write cache {path}: {exc.strerror or exc}") from exc


def load_cache(location, variant: Optional[VariantSpec] = None) -> ScanCache:
    """Read a cache file, skipping malformed, stale or foreign lines with a warning.

    A missing file yields an empty cache. With ``variant`` given, entries for
    any other fingerprint are dropped.
    """
    path = Path(location)
    cache = ScanCache()
    if not path.exists():
        return cache
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    want = variant.fingerprint() if variant is not None else None
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            entry = json.loads(line)
            fp, bus, record = entry["fingerprint"], int(entry["bus"]), entry["record"]
            version = entry["schema_version"]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            cache._warn(f"{path}:{lineno}: malformed cache line skipped")
            continue
        if version != SCHEMA_VERSION or record.get("schema_version") != SCHEMA_VERSION:
            cache._warn(f"{path}:{lineno}: schema version {version} ignored")
            continue
        if want is not None and fp != want:
            cache._warn(f"{path}:{lineno}: variant fingerprint mismatch, entry skipped")
            continue
        try:
            rebuilt = from_record(record)
        except (ValueError, KeyError, TypeError) as exc:
            cache._warn(f"{path}:{lineno}: invalid record skipped ({exc})")
            continue
        if rebuilt.variant.fingerprint() != fp or rebuilt.bus != bus:
            cache._warn(f"{path}:{lineno}: record does not match its fingerprint")
            continue
        cache._entries[(fp, bus)] = record
    return cache
