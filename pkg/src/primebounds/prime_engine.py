"""Exact prime infrastructure: segmented sieve, pi(x), p_n, gap iteration.

The engine sieves odd numbers in fixed-span windows with base primes up to
sqrt(limit).  Two operating modes share the same sieve core:

* prime-backed (default): all primes up to the limit are kept as one int64
  array; pi(x) is a binary search, p_n an index, and the bulk verification
  scans borrow read-only views of the array.

* counts-only: only the pi checkpoint table (one 64-bit count per
  ``checkpoint_stride`` of integers) is resident, and point queries re-sieve
  the single window they touch.  This is the mode a checkpoint cache file
  restores, skipping the full counting pass.

The checkpoint table can be written to / restored from disk; the format is a
little-endian header (magic, version, limit, stride, entry count) followed by
the 64-bit counts.

Query speed is secondary to sequential throughput by design: verification
scans touch every prime exactly once.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import DomainError, EngineRangeError, ParameterError, ResourceBudgetError

__all__ = ["PrimeGap", "PrimeEngine", "simple_sieve"]

DEFAULT_SEGMENT_SIZE = 1 << 23          # integers per sieve window
DEFAULT_CHECKPOINT_STRIDE = 1 << 16
DEFAULT_MEMORY_BUDGET = 2 << 30         # bytes

_CACHE_MAGIC = b"PBCK"
_CACHE_VERSION = 1
_CACHE_HEADER = struct.Struct("<4sIQQQ")


@dataclass(frozen=True)
class PrimeGap:
    """One consecutive-prime interval [p_n, p_{n+1})."""

    index: int   # n
    lower: int   # p_n
    upper: int   # p_{n+1}


def simple_sieve(limit: int) -> np.ndarray:
    """One-shot sieve of Eratosthenes; primes <= limit as int64."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _sieve_window(lo: int, hi: int, odd_base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi) for odd lo >= 3, using odd-only masking."""
    n_odds = (hi - lo + 1) // 2
    if n_odds <= 0:
        return np.zeros(0, dtype=np.int64)
    mask = np.ones(n_odds, dtype=bool)
    for p in odd_base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start < hi:
            mask[(start - lo) // 2 :: p] = False
    idx = np.flatnonzero(mask)
    return lo + 2 * idx.astype(np.int64)


class PrimeEngine:
    """Immutable queryable store of primes / pi checkpoints up to ``limit``.

    Construct with :meth:`build` or :meth:`from_checkpoint_cache`.  After
    construction the engine is read-only and safe for concurrent use.
    """

    def __init__(self, limit, stride, segment_size, base, primes, checkpoints):
        self.limit = int(limit)
        self.checkpoint_stride = int(stride)
        self.segment_size = int(segment_size)
        self._base = base                       # primes <= sqrt(limit)
        self._odd_base = base[base > 2]
        self._primes = primes                   # int64 array or None (counts-only)
        if primes is not None:
            primes.flags.writeable = False      # engine is immutable after build
        self._checkpoints = checkpoints         # uint64, pi(j * stride), j = 0..
        self._pi_limit = int(checkpoints[-1]) if primes is None else int(len(primes))

    # -- construction -------------------------------------------------------

    @classmethod
    def build(
        cls,
        limit: int,
        segment_size: int = DEFAULT_SEGMENT_SIZE,
        checkpoint_stride: int = DEFAULT_CHECKPOINT_STRIDE,
        store_primes: bool = True,
        memory_budget: int = DEFAULT_MEMORY_BUDGET,
        cache_path: str | Path | None = None,
    ) -> "PrimeEngine":
        """Sieve up to ``limit`` and return a queryable engine.

        With ``cache_path`` set, a valid existing checkpoint cache is loaded
        instead of sieving when ``store_primes`` is False, and a fresh cache
        is written after any full sieve.
        """
        limit = int(limit)
        if limit < 100:
            raise ParameterError(f"engine limit must be >= 100, got {limit}")
        if segment_size % 64:
            raise ParameterError("segment_size must be a multiple of 64")
        if checkpoint_stride < 2:
            raise ParameterError("checkpoint_stride must be >= 2")

        # refuse rather than degrade: estimated resident bytes for the prime
        # array (pi(x) < 1.26 x / ln x for x >= 17) plus one sieve window
        est = segment_size // 2 + (limit // checkpoint_stride + 2) * 8
        if store_primes:
            est += int(1.26 * limit / math.log(limit)) * 8
        if est > memory_budget:
            raise ResourceBudgetError(
                f"limit {limit} needs ~{est / 2**20:.0f} MiB, "
                f"budget is {memory_budget / 2**20:.0f} MiB"
            )

        if cache_path is not None and not store_primes:
            path = Path(cache_path)
            if path.exists():
                eng = cls.from_checkpoint_cache(path, segment_size=segment_size)
                if eng.limit == limit and eng.checkpoint_stride == checkpoint_stride:
                    return eng

        base = simple_sieve(math.isqrt(limit))
        odd_base = base[base > 2]
        chunks = [np.array([2], dtype=np.int64)]
        lo = 3
        while lo <= limit:
            hi = min(lo + segment_size, limit + 1)
            chunks.append(_sieve_window(lo, hi, odd_base))
            lo = hi if hi % 2 == 1 else hi + 1
        primes = np.concatenate(chunks)
        primes = primes[primes <= limit]

        boundaries = np.arange(0, limit + checkpoint_stride, checkpoint_stride)
        boundaries[-1] = min(boundaries[-1], limit)
        checkpoints = np.searchsorted(primes, boundaries, side="right").astype(np.uint64)

        eng = cls(limit, checkpoint_stride, segment_size, base, primes if store_primes else None, checkpoints)
        if cache_path is not None:
            eng.save_checkpoints(cache_path)
        return eng

    @classmethod
    def from_checkpoint_cache(
        cls, path: str | Path, segment_size: int = DEFAULT_SEGMENT_SIZE
    ) -> "PrimeEngine":
        """Restore a counts-only engine from a checkpoint cache file."""
        raw = Path(path).read_bytes()
        if len(raw) < _CACHE_HEADER.size:
            raise ValueError(f"checkpoint cache {path} is truncated")
        magic, version, limit, stride, count = _CACHE_HEADER.unpack_from(raw)
        if magic != _CACHE_MAGIC:
            raise ValueError(f"{path} is not a checkpoint cache (bad magic {magic!r})")
        if version != _CACHE_VERSION:
            raise ValueError(f"unsupported checkpoint cache version {version}")
        expected = _CACHE_HEADER.size + 8 * count
        if len(raw) != expected:
            raise ValueError(f"checkpoint cache {path}: {len(raw)} bytes, expected {expected}")
        checkpoints = np.frombuffer(raw, dtype="<u8", offset=_CACHE_HEADER.size).copy()
        base = simple_sieve(math.isqrt(limit))
        return cls(limit, stride, segment_size, base, None, checkpoints)

    def save_checkpoints(self, path: str | Path) -> None:
        """Write the checkpoint table (header + little-endian u64 counts)."""
        header = _CACHE_HEADER.pack(
            _CACHE_MAGIC, _CACHE_VERSION, self.limit, self.checkpoint_stride,
            len(self._checkpoints),
        )
        Path(path).write_bytes(header + self._checkpoints.astype("<u8").tobytes())

    # -- queries ------------------------------------------------------------

    @property
    def prime_backed(self) -> bool:
        return self._primes is not None

    @property
    def pi_limit(self) -> int:
        """pi(limit): the number of primes the engine knows."""
        return self._pi_limit

    def prime_count(self, x) -> int:
        """Exact pi(x) for 1 <= x <= limit."""
        x = int(x)
        if x < 1 or x > self.limit:
            raise EngineRangeError(f"prime_count: x={x} outside [1, {self.limit}]")
        if self._primes is not None:
            return int(np.searchsorted(self._primes, x, side="right"))
        j = x // self.checkpoint_stride
        lo = j * self.checkpoint_stride
        count = int(self._checkpoints[j])
        if x > lo:
            count += int(self._primes_between(lo + 1, x + 1).size)
        return count

    def nth_prime(self, n) -> int:
        """Exact p_n for 1 <= n <= pi(limit)."""
        n = int(n)
        if n < 1 or n > self._pi_limit:
            raise EngineRangeError(f"nth_prime: n={n} outside [1, {self._pi_limit}]")
        if self._primes is not None:
            return int(self._primes[n - 1])
        j = int(np.searchsorted(self._checkpoints, n, side="left"))
        lo = (j - 1) * self.checkpoint_stride
        block = self._primes_between(lo + 1, min(j * self.checkpoint_stride, self.limit) + 1)
        return int(block[n - int(self._checkpoints[j - 1]) - 1])

    def iter_gaps(self, from_n: int, to_n: int) -> Iterator[PrimeGap]:
        """Yield (n, p_n, p_{n+1}) for n = from_n .. to_n in order."""
        from_n, to_n = int(from_n), int(to_n)
        if not (1 <= from_n <= to_n <= self._pi_limit - 1):
            raise EngineRangeError(
                f"iter_gaps: need 1 <= {from_n} <= {to_n} <= pi(limit)-1 = {self._pi_limit - 1}"
            )
        ps = self.primes_slice(from_n, to_n + 1)
        for i in range(len(ps) - 1):
            yield PrimeGap(from_n + i, int(ps[i]), int(ps[i + 1]))

    def primes_slice(self, from_n: int, to_n: int) -> np.ndarray:
        """p_from_n .. p_to_n as an int64 array (read-only view when prime-backed)."""
        from_n, to_n = int(from_n), int(to_n)
        if not (1 <= from_n <= to_n <= self._pi_limit):
            raise EngineRangeError(
                f"primes_slice: need 1 <= {from_n} <= {to_n} <= {self._pi_limit}"
            )
        if self._primes is not None:
            return self._primes[from_n - 1 : to_n]
        # counts-only: materialize the covering blocks
        lo_x = self.nth_prime(from_n)
        chunks = []
        got = 0
        lo = lo_x
        while got < to_n - from_n + 1 and lo <= self.limit:
            hi = min(lo + self.segment_size, self.limit + 1)
            block = self._primes_between(lo, hi)
            chunks.append(block)
            got += block.size
            lo = hi
        out = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int64)
        return out[: to_n - from_n + 1]

    def _primes_between(self, lo: int, hi: int) -> np.ndarray:
        """Primes in [lo, hi) by re-sieving (counts-only query path)."""
        lo = max(lo, 2)
        if lo >= hi:
            return np.zeros(0, dtype=np.int64)
        parts = []
        if lo <= 2 < hi:
            parts.append(np.array([2], dtype=np.int64))
        start = max(lo, 3)
        if start % 2 == 0:
            start += 1
        if start < hi:
            parts.append(_sieve_window(start, hi, self._odd_base))
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def __repr__(self):
        mode = "primes" if self.prime_backed else "counts-only"
        return f"PrimeEngine(limit={self.limit:,}, pi={self._pi_limit:,}, {mode})"
