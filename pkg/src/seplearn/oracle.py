"""Conditional-independence oracles with query accounting and budgets.

A query is a triple (S, u, v). An oracle answers Connected when u and v share
a component of G \\ S and Disconnected otherwise. Every oracle counts distinct
tests (with {u, v} unordered) overall, per conditioning-set size and per
caller-chosen bucket, and separately tallies raw calls.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import BudgetExceeded, InvalidTest
from .graph import Graph, VertexSet, component_labels, to_mask

DEFAULT_BUCKET = "default"


class Answer(enum.Enum):
    CONNECTED = "Connected"
    DISCONNECTED = "Disconnected"


@dataclass(frozen=True)
class IndependenceTest:
    s: VertexSet
    u: int
    v: int

    def __post_init__(self) -> None:
        s = tuple(sorted(set(self.s)))
        object.__setattr__(self, "s", s)
        if self.u == self.v:
            raise InvalidTest("test endpoints coincide")
        if self.u in s or self.v in s:
            raise InvalidTest("test endpoint inside the conditioning set")

    @property
    def size(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class Budget:
    max_test_size: int | None = None
    max_test_count: int | None = None


@dataclass
class BucketStats:
    count: int = 0
    max_size: int = 0
    raw_calls: int = 0


@dataclass
class OracleStats:
    total_tests: int = 0
    raw_calls: int = 0
    max_size_seen: int = 0
    per_size_counts: dict[int, int] = field(default_factory=dict)
    per_bucket_counts: dict[str, BucketStats] = field(default_factory=dict)

    def bucket(self, label: str) -> BucketStats:
        return self.per_bucket_counts.get(label, BucketStats())

    def to_dict(self) -> dict:
        return {
            "total_tests": self.total_tests,
            "raw_calls": self.raw_calls,
            "max_size_seen": self.max_size_seen,
            "per_size_counts": {str(k): c for k, c in sorted(self.per_size_counts.items())},
            "per_bucket": {
                label: {"count": b.count, "max_size": b.max_size, "raw_calls": b.raw_calls}
                for label, b in sorted(self.per_bucket_counts.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> OracleStats:
        return cls(
            total_tests=data["total_tests"],
            raw_calls=data["raw_calls"],
            max_size_seen=data["max_size_seen"],
            per_size_counts={int(k): c for k, c in data["per_size_counts"].items()},
            per_bucket_counts={label: BucketStats(**b) for label, b in data["per_bucket"].items()},
        )


class Oracle:
    """Instrumented oracle over the vertex universe ``0..n-1``.

    Subclasses implement :meth:`_connected`. Learners use :meth:`connected`
    (bitmask fast path); :meth:`query` is the typed front door.
    """

    def __init__(self, n: int, budget: Budget | None = None) -> None:
        self.n = n
        self.budget = budget or Budget()
        self._full = (1 << n) - 1
        self._seen: dict[int, int] = {}
        self._bucket_seen: dict[tuple[str, int], int] = {}
        self._total = 0
        self._raw = 0
        self._per_size: dict[int, int] = {}
        self._buckets: dict[str, BucketStats] = {}

    def _connected(self, smask: int, u: int, v: int) -> bool:
        raise NotImplementedError

    def connected(self, smask: int, u: int, v: int, bucket: str = DEFAULT_BUCKET) -> bool:
        """Answer the test (S, u, v) given S as a bitmask; True means Connected."""
        n = self.n
        if not (0 <= u < n and 0 <= v < n) or u == v or smask & ~self._full:
            raise InvalidTest(f"malformed test over universe of size {n}: ({smask:#x}, {u}, {v})")
        if smask >> u & 1 or smask >> v & 1:
            raise InvalidTest("test endpoint inside the conditioning set")
        size = smask.bit_count()
        budget = self.budget
        if budget.max_test_size is not None and size > budget.max_test_size:
            raise BudgetExceeded("size", budget.max_test_size, size)
        if u > v:
            u, v = v, u
        bit = 1 << (u * n + v)
        seen = self._seen.get(smask, 0)
        fresh = not seen & bit
        if fresh:
            if budget.max_test_count is not None and self._total >= budget.max_test_count:
                raise BudgetExceeded("count", budget.max_test_count, self._total + 1)
            self._seen[smask] = seen | bit
            self._total += 1
            self._per_size[size] = self._per_size.get(size, 0) + 1
        self._raw += 1

        stats = self._buckets.get(bucket)
        if stats is None:
            stats = self._buckets[bucket] = BucketStats()
        stats.raw_calls += 1
        key = (bucket, smask)
        bseen = self._bucket_seen.get(key, 0)
        if not bseen & bit:
            self._bucket_seen[key] = bseen | bit
            stats.count += 1
            if size > stats.max_size:
                stats.max_size = size
        return self._connected(smask, u, v)

    def query(self, test: IndependenceTest, bucket: str = DEFAULT_BUCKET) -> Answer:
        for x in test.s:
            if not 0 <= x < self.n:
                raise InvalidTest(f"conditioning vertex {x} outside 0..{self.n - 1}")
        if self.connected(to_mask(test.s), test.u, test.v, bucket):
            return Answer.CONNECTED
        return Answer.DISCONNECTED

    def stats(self) -> OracleStats:
        return OracleStats(
            total_tests=self._total,
            raw_calls=self._raw,
            max_size_seen=max((s for s, c in self._per_size.items() if c), default=0),
            per_size_counts=dict(sorted(self._per_size.items())),
            per_bucket_counts={
                label: BucketStats(b.count, b.max_size, b.raw_calls) for label, b in sorted(self._buckets.items())
            },
        )


class ExactOracle(Oracle):
    """Answers from a hidden ground-truth graph."""

    def __init__(self, graph: Graph, budget: Budget | None = None) -> None:
        super().__init__(graph.n, budget)
        self._adj = graph.adjacency
        self._cached_mask = -1
        self._labels: list[int] = []

    def _connected(self, smask: int, u: int, v: int) -> bool:
        if smask != self._cached_mask:
            self._labels = component_labels(self._adj, smask)
            self._cached_mask = smask
        return self._labels[u] == self._labels[v]


class AdversaryOracle(Oracle):
    """Answers Connected to every well-formed test."""

    def _connected(self, smask: int, u: int, v: int) -> bool:
        return True


def make_exact_oracle(g: Graph, budget: Budget | None = None) -> ExactOracle:
    return ExactOracle(g, budget)


def make_adversary_oracle(n: int, budget: Budget | None = None) -> AdversaryOracle:
    return AdversaryOracle(n, budget)


def query(o: Oracle, t: IndependenceTest, bucket: str = DEFAULT_BUCKET) -> Answer:
    return o.query(t, bucket)


def snapshot_stats(o: Oracle) -> OracleStats:
    return o.stats()

