"""In-memory memo (L1) + persistent JSON disk cache (L2).

L1 = in-process dict, lost on exit.
L2 = JSON files under ``~/.cache/qsu2/`` (or ``QSU2_CACHE_DIR``), survives restarts.

Usage:
    store = LayeredStore(get_disk_cache())
    value = store.get_or_create("corep:0.5:3", builder)
"""
import hashlib
import json
import logging
import shutil
import threading
import time
from pathlib import Path
from typing import Any, Callable

logger = logging.getLogger(__name__)

_MAX_DISK_ENTRIES = 5000


# ---------------------------------------------------------------------------
# L2: persistent disk cache
# ---------------------------------------------------------------------------
class DiskCache:
    """One JSON file per key, named by the SHA-256 of the key.

    Cached values are deterministic functions of their key, so entries never
    expire. Each file records the encoding ``FORMAT`` it was written with; a file
    from another format is treated as missing and removed.
    """

    FORMAT = 1

    def __init__(self, cache_dir: str | Path, max_entries: int = _MAX_DISK_ENTRIES):
        self.cache_dir = Path(cache_dir)
        self.max_entries = max_entries
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.cache_dir / f"{hashlib.sha256(key.encode()).hexdigest()}.json"

    def get(self, key: str):
        """Cached value, or ``None`` if missing, unreadable or of another format."""
        path = self._path(key)
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, OSError):
            path.unlink(missing_ok=True)
            return None
        if payload.get("format") != self.FORMAT or "value" not in payload:
            path.unlink(missing_ok=True)
            return None
        # a hash collision would hand back another key's value
        if payload.get("key") != key:
            return None
        return payload["value"]

    def set(self, key: str, value) -> None:
        """Write ``value`` (JSON-serialisable) atomically through a temp file."""
        path = self._path(key)
        payload = {"key": key, "format": self.FORMAT, "stored_at": time.time(), "value": value}
        tmp = path.with_suffix(f".{threading.get_ident()}.tmp")
        try:
            tmp.write_text(json.dumps(payload), encoding="utf-8")
            tmp.replace(path)
        except OSError:
            tmp.unlink(missing_ok=True)
            logger.warning("disk cache write failed for %s", key)
            return
        self._evict_oldest()

    def delete(self, key: str) -> None:
        self._path(key).unlink(missing_ok=True)

    def clear(self) -> None:
        if self.cache_dir.exists():
            shutil.rmtree(self.cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)

    def _evict_oldest(self) -> None:
        entries = list(self.cache_dir.glob("*.json"))
        excess = len(entries) - self.max_entries
        if excess <= 0:
            return
        entries.sort(key=lambda p: p.stat().st_mtime)
        for path in entries[: max(excess, len(entries) // 10)]:
            path.unlink(missing_ok=True)

    def size(self) -> int:
        return sum(1 for _ in self.cache_dir.glob("*.json"))


# ---------------------------------------------------------------------------
# Per-key locking
# ---------------------------------------------------------------------------
class KeyedLocks:
    """One lock per key so builders for different keys run concurrently."""

    def __init__(self):
        self._guard = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}

    def __call__(self, key: str) -> threading.Lock:
        with self._guard:
            lock = self._locks.get(key)
            if lock is None:
                lock = self._locks[key] = threading.Lock()
            return lock


# ---------------------------------------------------------------------------
# L1 + L2 store
# ---------------------------------------------------------------------------
class LayeredStore:
    """Memo dict in front of an optional DiskCache.

    ``get_or_create`` serializes creation per key; concurrent readers of an
    already-built key never take the key lock.
    """

    def __init__(self, disk: DiskCache | None = None):
        self.disk = disk
        self._memory: dict[str, Any] = {}
        self._locks = KeyedLocks()

    def get_or_create(self, key: str, build: Callable[[], Any],
                      encode: Callable[[Any], Any] = lambda v: v,
                      decode: Callable[[Any], Any] = lambda v: v):
        if key in self._memory:
            return self._memory[key]
        with self._locks(key):
            if key in self._memory:
                return self._memory[key]
            value = None
            if self.disk is not None:
                raw = self.disk.get(key)
                if raw is not None:
                    try:
                        value = decode(raw)
                        logger.debug("disk cache hit %s", key)
                    except (KeyError, TypeError, ValueError):
                        logger.warning("discarding unreadable cache entry %s", key)
                        value = None
            if value is None:
                value = build()
                if self.disk is not None:
                    self.disk.set(key, encode(value))
            self._memory[key] = value
            return value

    def clear(self):
        self._memory.clear()
        if self.disk is not None:
            self.disk.clear()


# Shared singleton instance
_disk_cache: DiskCache | None = None
_disk_lock = threading.Lock()


def get_disk_cache() -> DiskCache | None:
    """Return the shared DiskCache, or ``None`` when caching is disabled."""
    global _disk_cache
    from qsu2.config import get_config

    cfg = get_config().cache
    if not cfg.enabled:
        return None
    with _disk_lock:
        if _disk_cache is None or _disk_cache.cache_dir != Path(cfg.directory):
            _disk_cache = DiskCache(cfg.directory)
        return _disk_cache
