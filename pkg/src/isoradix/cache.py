"""On-disk a_p cache, one file per curve key.

File layout (little-endian)::

    b"ISORADIX1" | B_max: u64 | (p: u64, a_p: i64) * n | checksum: u64

The checksum is an 8-byte BLAKE2b digest of everything before it. Files are
only ever replaced whole (write to a temp file, then rename), and writers for
one key are serialised by a lock file.
"""
from __future__ import annotations

import hashlib
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from filelock import FileLock

from .batch import SweepConfig, compute_traces, good_primes
from .curve import RationalCurve

log = logging.getLogger(__name__)

MAGIC = b"ISORADIX1"
RECORD = np.dtype([("p", "<u8"), ("a", "<i8")])
_HEADER = len(MAGIC) + 8


class CorruptCache(ValueError):
    pass


@dataclass
class CacheEntry:
    curve_key: str
    B_max: int
    primes: np.ndarray
    traces: np.ndarray

    def rows(self):
        return list(zip(self.primes.tolist(), self.traces.tolist()))

    def validate(self):
        if self.primes.size and np.any(np.diff(self.primes) <= 0):
            raise CorruptCache("rows are not strictly ascending in p")
        if np.any(self.traces.astype(object) ** 2 > 4 * self.primes.astype(object)):
            raise CorruptCache("a cached trace violates the Hasse bound")
        if self.primes.size and int(self.primes[-1]) > self.B_max:
            raise CorruptCache("row beyond B_max")


def _checksum(data: bytes) -> bytes:
    return hashlib.blake2b(data, digest_size=8).digest()


def encode(entry: CacheEntry) -> bytes:
    records = np.empty(entry.primes.size, dtype=RECORD)
    records["p"] = entry.primes
    records["a"] = entry.traces
    body = MAGIC + int(entry.B_max).to_bytes(8, "little") + records.tobytes()
    return body + _checksum(body)


def decode(data: bytes, curve_key: str) -> CacheEntry:
    if len(data) < _HEADER + 8 or not data.startswith(MAGIC):
        raise CorruptCache("bad magic")
    body, digest = data[:-8], data[-8:]
    if _checksum(body) != digest:
        raise CorruptCache("checksum mismatch")
    if (len(body) - _HEADER) % RECORD.itemsize:
        raise CorruptCache("truncated record")
    B_max = int.from_bytes(body[len(MAGIC):_HEADER], "little")
    records = np.frombuffer(body, dtype=RECORD, offset=_HEADER)
    entry = CacheEntry(curve_key, B_max, records["p"].astype(np.int64), records["a"].astype(np.int64))
    entry.validate()
    return entry


class TraceCache:
    """Directory of per-curve trace files with compute-or-extend semantics."""

    def __init__(self, root):
        self.root = Path(root)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise OSError(f"cannot create cache directory {self.root}: {exc}") from exc
        if not os.access(self.root, os.R_OK | os.W_OK):
            raise PermissionError(f"cache directory {self.root} is not readable and writable")
        self.computed = 0  # primes computed by this instance; handy for tests

    def path(self, E: RationalCurve) -> Path:
        return self.root / f"{E.key}.isr"

    def load(self, E: RationalCurve) -> CacheEntry | None:
        path = self.path(E)
        if not path.exists():
            return None
        try:
            return decode(path.read_bytes(), E.key)
        except CorruptCache as exc:
            self._quarantine(path, exc)
            return None

    def _quarantine(self, path: Path, why):
        for n in range(1000):
            dest = path.with_name(f"{path.name}.corrupt{n}")
            if not dest.exists():
                break
        log.warning("quarantining corrupt cache file %s (%s) -> %s", path, why, dest)
        os.replace(path, dest)

    def _write(self, path: Path, entry: CacheEntry):
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(encode(entry))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def sweep(self, E: RationalCurve, B: int, config: SweepConfig = SweepConfig()) -> CacheEntry:
        """Entry holding every good p <= max(B, cached B_max)."""
        if B < 5:
            raise ValueError(f"sweep bound must be >= 5, got {B}")
        path = self.path(E)
        with FileLock(str(path) + ".lock"):
            entry = self.load(E)
            if entry is not None and entry.B_max >= B:
                return entry
            start = entry.B_max + 1 if entry else 5
            new_primes = good_primes(E, B, lo=start)
            new_traces = compute_traces(E, new_primes, config)
            self.computed += int(new_primes.size)
            if entry is None:
                entry = CacheEntry(E.key, B, new_primes, new_traces)
            else:
                entry = CacheEntry(E.key, B, np.concatenate([entry.primes, new_primes]),
                                   np.concatenate([entry.traces, new_traces]))
            entry.validate()
            self._write(path, entry)
            return entry
