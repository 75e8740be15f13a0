"""Demand classes, transmission types, and decomposition-pattern enumeration.

Everything here is exact integer combinatorics on small instances: demand
vectors are grouped into relabeling classes with one canonical representative
each, every (t+1)-sized multicast group gets a per-file requester-count vector
(its transmission type), and a decomposition pattern assigns each transmission
type a set partition of the files it touches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator


class EnumerationOverflow(Exception):
    """Pattern-set enumeration would exceed the requested cap."""


@dataclass(frozen=True, order=True)
class DemandVector:
    """Per-user file requests: entries[k-1] is the file index user k asks for."""

    entries: tuple[int, ...]
    num_files: int

    def __post_init__(self):
        if self.num_files < 1 or not self.entries:
            raise ValueError("need at least one file and one user")
        bad = [e for e in self.entries if not 1 <= e <= self.num_files]
        if bad:
            raise ValueError(f"file indices must lie in 1..{self.num_files}: {bad}")

    @property
    def num_users(self) -> int:
        return len(self.entries)

    def file_of(self, user: int) -> int:
        return self.entries[user - 1]


@dataclass(frozen=True)
class DemandSummary:
    """Derived per-demand bookkeeping shared by cost formulas and delivery.

    multiplicities[n-1] counts requesters of file n; requester_sets[n-1] lists
    them in increasing user order; leaders[n-1] is the smallest requester (None
    for unrequested files).  n_star counts distinct requested files, n_tilde is
    min(num_files, num_users).
    """

    multiplicities: tuple[int, ...]
    requester_sets: tuple[tuple[int, ...], ...]
    leaders: tuple[int | None, ...]
    n_star: int
    n_tilde: int

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n + 1 for n, m in enumerate(self.multiplicities) if m)

    def requesters(self, file: int) -> tuple[int, ...]:
        return self.requester_sets[file - 1]

    def leader(self, file: int) -> int:
        led = self.leaders[file - 1]
        if led is None:
            raise ValueError(f"file {file} has no requesters")
        return led


@lru_cache(maxsize=None)
def summarize(d: DemandVector) -> DemandSummary:
    sets: list[list[int]] = [[] for _ in range(d.num_files)]
    for user, file in enumerate(d.entries, start=1):
        sets[file - 1].append(user)
    requester_sets = tuple(tuple(s) for s in sets)
    multiplicities = tuple(len(s) for s in sets)
    leaders = tuple(s[0] if s else None for s in sets)
    return DemandSummary(
        multiplicities=multiplicities,
        requester_sets=requester_sets,
        leaders=leaders,
        n_star=sum(1 for m in multiplicities if m),
        n_tilde=min(d.num_files, d.num_users),
    )


@dataclass(frozen=True, order=True)
class TransmissionType:
    """Per-file requester counts inside one (t+1)-sized multicast group."""

    counts: tuple[int, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(n + 1 for n, c in enumerate(self.counts) if c)

    def count_for(self, file: int) -> int:
        return self.counts[file - 1]


Blocks = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PatternSet:
    """One decomposition choice per transmission type of a demand.

    per_type maps each type to a set partition of its file support (blocks are
    sorted tuples ordered by first element).  The special all-uncoded strategy
    carries no partitions and is tagged with is_uncoded.
    """

    per_type: tuple[tuple[TransmissionType, Blocks], ...]
    is_uncoded: bool = False

    def __post_init__(self):
        if self.is_uncoded and self.per_type:
            raise ValueError("the uncoded pattern carries no partitions")
        for ttype, blocks in self.per_type:
            flat = [f for block in blocks for f in block]
            if sorted(flat) != sorted(set(flat)) or set(flat) != set(ttype.support):
                raise ValueError(f"blocks {blocks} do not partition {ttype.support}")

    def partition_for(self, ttype: TransmissionType) -> Blocks:
        for tt, blocks in self.per_type:
            if tt == ttype:
                return blocks
        raise KeyError(ttype)

    @classmethod
    def uncoded(cls) -> "PatternSet":
        return cls(per_type=(), is_uncoded=True)

    @classmethod
    def from_partitions(cls, mapping: dict[tuple[int, ...], Iterable[Iterable[int]]]) -> "PatternSet":
        per_type = []
        for counts, blocks in mapping.items():
            canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
            per_type.append((TransmissionType(tuple(counts)), canon))
        per_type.sort(key=lambda item: item[0].counts)
        return cls(per_type=tuple(per_type))


def subsets_of_size(ground: int, size: int) -> Iterator[tuple[int, ...]]:
    """All size-subsets of {1..ground} in lexicographic order."""
    if not 0 <= size <= ground:
        raise ValueError(f"size must lie in 0..{ground}")
    return combinations(range(1, ground + 1), size)


def _partitions_into_parts(total: int, max_parts: int, max_value: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing positive integer tuples summing to total, at most max_parts long."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(total, max_value), 0, -1):
        for rest in _partitions_into_parts(total - first, max_parts - 1, first):
            yield (first,) + rest


def representative_demands(num_files: int, num_users: int) -> list[DemandVector]:
    """One canonical demand vector per relabeling class.

    Canonical form: requester multiplicities sorted non-increasing and mapped
    onto the lowest file indices, users requesting the same file contiguous in
    increasing user order.  Output sorted lexicographically.
    """
    if num_files < 1 or num_users < 1:
        raise ValueError("need at least one file and one user")
    reps = []
    for parts in _partitions_into_parts(num_users, num_files, num_users):
        entries: list[int] = []
        for file_idx, count in enumerate(parts, start=1):
            entries.extend([file_idx] * count)
        reps.append(DemandVector(tuple(entries), num_files))
    return sorted(reps, key=lambda d: d.entries)


def canonical_representative(d: DemandVector) -> DemandVector:
    """The representative of d's relabeling class."""
    mult = sorted((m for m in summarize(d).multiplicities if m), reverse=True)
    entries: list[int] = []
    for file_idx, count in enumerate(mult, start=1):
        entries.extend([file_idx] * count)
    return DemandVector(tuple(entries), d.num_files)


def demand_class_size(d: DemandVector) -> int:
    """Number of demand vectors sharing d's sorted multiplicity vector."""
    mult = summarize(d).multiplicities
    value_counts: dict[int, int] = {}
    for m in mult:
        value_counts[m] = value_counts.get(m, 0) + 1
    file_ways = math.factorial(d.num_files)
    for c in value_counts.values():
        file_ways //= math.factorial(c)
    user_ways = math.factorial(d.num_users)
    for m in mult:
        user_ways //= math.factorial(m)
    return file_ways * user_ways


def transmission_types(d: DemandVector, t: int) -> list[TransmissionType]:
    """All per-file count vectors with sum t+1 capped by the demand multiplicities.

    Ascending lexicographic order; empty when t+1 exceeds the user count.
    """
    if not 0 <= t <= d.num_users:
        raise ValueError(f"t must lie in 0..{d.num_users}")
    mult = summarize(d).multiplicities
    target = t + 1
    out: list[TransmissionType] = []

    def rec(idx: int, remaining: int, prefix: list[int]):
        if idx == len(mult):
            if remaining == 0:
                out.append(TransmissionType(tuple(prefix)))
            return
        if remaining > sum(mult[idx:]):
            return
        for v in range(0, min(mult[idx], remaining) + 1):
            prefix.append(v)
            rec(idx + 1, remaining - v, prefix)
            prefix.pop()

    rec(0, target, [])
    return out


def type_of_group(d: DemandVector, users: Iterable[int]) -> TransmissionType:
    counts = [0] * d.num_files
    for user in users:
        counts[d.file_of(user) - 1] += 1
    return TransmissionType(tuple(counts))


def set_partitions(items: Iterable[int]) -> Iterator[Blocks]:
    """All set partitions of items via restricted-growth strings in lex order."""
    elems = tuple(items)
    n = len(elems)
    if n == 0:
        yield ()
        return
    rgs = [0] * n
    while True:
        nblocks = max(rgs) + 1
        blocks: list[list[int]] = [[] for _ in range(nblocks)]
        for pos, b in enumerate(rgs):
            blocks[b].append(elems[pos])
        yield tuple(tuple(b) for b in blocks)
        # lexicographic successor of the restricted-growth string
        i = n - 1
        while i > 0 and rgs[i] > max(rgs[:i]):
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        for j in range(i + 1, n):
            rgs[j] = 0


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    if n == 0:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[-1]


def pattern_sets(d: DemandVector, t: int, cap: int = 100_000) -> list[PatternSet]:
    """Every decomposition-pattern set for (d, t): the uncoded one first, then
    the Cartesian product over transmission types of all support partitions.

    Raises EnumerationOverflow (before materializing anything) when the total
    would exceed cap; such instances need a restricted pattern family.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    types = transmission_types(d, t)
    total = 1
    for tt in types:
        total *= bell_number(len(tt.support))
    if total + 1 > cap:
        raise EnumerationOverflow(
            f"{total + 1} pattern sets for demand {d.entries} at t={t} exceed cap {cap}"
        )
    result = [PatternSet.uncoded()]
    per_type_choices = [list(set_partitions(tt.support)) for tt in types]
    for choice in product(*per_type_choices):
        result.append(PatternSet(per_type=tuple(zip(types, choice))))
    return result


def no_decomposition_pattern(d: DemandVector, t: int) -> PatternSet:
    """Each type kept whole: one block spanning the full support."""
    return PatternSet(
        per_type=tuple((tt, (tt.support,)) for tt in transmission_types(d, t))
    )


def singleton_pattern(d: DemandVector, t: int) -> PatternSet:
    """Each type fully split: one block per supported file."""
    return PatternSet(
        per_type=tuple(
            (tt, tuple((f,) for f in tt.support)) for tt in transmission_types(d, t)
        )
    )
