"""Finite abelian groups as mixed-radix index spaces with bitset subsets.

A group Z_{n1} + ... + Z_{nk} is described by its tuple of cyclic orders.
Elements are indexed 0..order-1 in mixed radix, last coordinate fastest,
and subsets are immutable bitmasks over those indices. Keeping the hot
operations (translation, union, popcount) on Python big ints makes the
search engines fast enough for exhaustive runs without native code.

No isomorphism detection is attempted: Z_6 and Z_2 x Z_3 are distinct
specs on purpose, so results always name the presentation they ran on.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_GROUP_ORDER = 10**6
MAX_SUBGROUP_ENUM_ORDER = 10**4

_SPEC_RE = re.compile(r"^z(\d+)(?:xz(\d+))*$", re.IGNORECASE)


class GroupTooLargeError(ValueError):
    pass


class GroupSpec:
    """A finite abelian group presented as a direct sum of cyclic factors.

    Immutable after construction. Lazily built lookup tables (negation,
    coordinate slab masks, subgroup list) are initialized exactly once
    under a lock, so instances are safe to share across threads.
    """

    __slots__ = (
        "cyclic_orders",
        "order",
        "full_mask",
        "_strides",
        "_lock",
        "_neg_table",
        "_cum_masks",
        "_subgroups",
        "_units",
    )

    def __init__(self, cyclic_orders: tuple[int, ...]):
        self.cyclic_orders = tuple(int(n) for n in cyclic_orders)
        order = 1
        for n in self.cyclic_orders:
            order *= n
        self.order = order
        self.full_mask = (1 << order) - 1
        strides = []
        acc = 1
        for n in reversed(self.cyclic_orders):
            strides.append(acc)
            acc *= n
        self._strides = tuple(reversed(strides))
        # Reentrant: all_subgroups holds the lock while its closure loop
        # calls translate_bits, which may build _cum_masks under it.
        self._lock = threading.RLock()
        self._neg_table: tuple[int, ...] | None = None
        self._cum_masks: list[list[int]] | None = None
        self._subgroups: list[SubgroupHandle] | None = None
        self._units: tuple[int, ...] | None = None

    # -- identity ----------------------------------------------------------

    @property
    def spec_string(self) -> str:
        return "x".join(f"Z{n}" for n in self.cyclic_orders)

    @property
    def is_cyclic_spec(self) -> bool:
        return len(self.cyclic_orders) == 1

    def __repr__(self) -> str:
        return f"GroupSpec({self.spec_string})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupSpec) and self.cyclic_orders == other.cyclic_orders

    def __hash__(self) -> int:
        return hash(self.cyclic_orders)

    # -- elements ----------------------------------------------------------

    def coords_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.order:
            raise ValueError(f"element index {index} out of range for {self.spec_string}")
        coords = []
        for n, stride in zip(self.cyclic_orders, self._strides):
            c, index = divmod(index, stride)
            coords.append(c)
        return tuple(coords)

    def index_of(self, coords: Iterable[int]) -> int:
        coords = tuple(coords)
        if len(coords) != len(self.cyclic_orders):
            raise ValueError(f"expected {len(self.cyclic_orders)} coordinates, got {len(coords)}")
        idx = 0
        for c, n, stride in zip(coords, self.cyclic_orders, self._strides):
            idx += (c % n) * stride
        return idx

    def element(self, index: int) -> "Element":
        return Element(self, self.coords_of(index))

    @property
    def identity(self) -> "Element":
        return Element(self, (0,) * len(self.cyclic_orders))

    def add(self, i: int, j: int) -> int:
        if len(self.cyclic_orders) == 1:
            return (i + j) % self.order
        return self.index_of(a + b for a, b in zip(self.coords_of(i), self.coords_of(j)))

    def neg(self, i: int) -> int:
        if len(self.cyclic_orders) == 1:
            return (-i) % self.order
        return self.index_of(-c for c in self.coords_of(i))

    def element_order(self, i: int) -> int:
        out = 1
        for c, n in zip(self.coords_of(i), self.cyclic_orders):
            out = math.lcm(out, n // math.gcd(c, n))
        return out

    # -- lazy tables -------------------------------------------------------

    def neg_table(self) -> tuple[int, ...]:
        tab = self._neg_table
        if tab is None:
            with self._lock:
                tab = self._neg_table
                if tab is None:
                    tab = tuple(self.neg(i) for i in range(self.order))
                    self._neg_table = tab
        return tab

    def _coordinate_masks(self) -> list[list[int]]:
        masks = self._cum_masks
        if masks is None:
            with self._lock:
                masks = self._cum_masks
                if masks is None:
                    masks = []
                    for n, stride in zip(self.cyclic_orders, self._strides):
                        period = n * stride
                        reps = self.order // period
                        # one bit at the base of each superblock
                        replicator = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
                        per = []
                        for c in range(n + 1):
                            per.append(((1 << (c * stride)) - 1) * replicator)
                        masks.append(per)
                    self._cum_masks = masks
        return masks

    # -- bitset kernels ----------------------------------------------------

    def translate_bits(self, bits: int, a: int) -> int:
        """Image of a subset bitmask under x -> x + a."""
        if a == 0 or bits == 0:
            return bits
        if len(self.cyclic_orders) == 1:
            n = self.order
            return ((bits << a) | (bits >> (n - a))) & self.full_mask
        masks = self._coordinate_masks()
        for j, (n, stride) in enumerate(zip(self.cyclic_orders, self._strides)):
            v, a = divmod(a, stride)
            if v == 0:
                continue
            low = bits & masks[j][n - v]
            bits = ((low << (v * stride)) | ((bits ^ low) >> ((n - v) * stride)))
        return bits

    def negate_bits(self, bits: int) -> int:
        neg = self.neg_table()
        out = 0
        while bits:
            low = bits & -bits
            out |= 1 << neg[low.bit_length() - 1]
            bits ^= low
        return out

    def iter_bits(self, bits: int) -> Iterator[int]:
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    # -- unit scaling (single-factor specs only) ----------------------------

    def units(self) -> tuple[int, ...]:
        if not self.is_cyclic_spec:
            raise ValueError("unit scaling is defined for single-factor specs only")
        tab = self._units
        if tab is None:
            with self._lock:
                tab = self._units
                if tab is None:
                    n = self.order
                    tab = tuple(u for u in range(1, n) if math.gcd(u, n) == 1)
                    self._units = tab
        return tab

    def scale_bits(self, bits: int, u: int) -> int:
        n = self.order
        out = 0
        while bits:
            low = bits & -bits
            out |= 1 << ((low.bit_length() - 1) * u % n)
            bits ^= low
        return out

    def canonical_bits_under_units(self, bits: int) -> int:
        return min(self.scale_bits(bits, u) for u in self.units())

    def unit_orbit_size(self, bits: int) -> int:
        return len({self.scale_bits(bits, u) for u in self.units()})


@dataclass(frozen=True)
class Element:
    group: GroupSpec
    coords: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.group.index_of(self.coords)

    def __add__(self, other: "Element") -> "Element":
        if self.group != other.group:
            raise ValueError("elements from mismatched groups")
        return Element(self.group, tuple((a + b) % n for a, b, n in
                                         zip(self.coords, other.coords, self.group.cyclic_orders)))

    def __neg__(self) -> "Element":
        return Element(self.group, tuple((-a) % n for a, n in
                                         zip(self.coords, self.group.cyclic_orders)))

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def order(self) -> int:
        return self.group.element_order(self.index)


@dataclass(frozen=True)
class ElementSet:
    """Immutable subset of a group, stored as a bitmask over element indices."""

    group: GroupSpec
    bits: int

    @classmethod
    def from_indices(cls, group: GroupSpec, indices: Iterable[int]) -> "ElementSet":
        bits = 0
        for i in indices:
            if not 0 <= i < group.order:
                raise ValueError(f"element index {i} out of range for {group.spec_string}")
            bits |= 1 << i
        return cls(group, bits)

    @classmethod
    def empty(cls, group: GroupSpec) -> "ElementSet":
        return cls(group, 0)

    @classmethod
    def full(cls, group: GroupSpec) -> "ElementSet":
        return cls(group, group.full_mask)

    def indices(self) -> tuple[int, ...]:
        return tuple(self.group.iter_bits(self.bits))

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        return self.group.iter_bits(self.bits)

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.group.order and (self.bits >> index) & 1 == 1

    def _check(self, other: "ElementSet") -> None:
        if self.group != other.group:
            raise ValueError("element sets from mismatched groups")

    def union(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.group, self.bits | other.bits)

    def intersection(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.group, self.bits & other.bits)

    def difference(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.group, self.bits & ~other.bits)

    def complement(self) -> "ElementSet":
        return ElementSet(self.group, self.bits ^ self.group.full_mask)

    def issubset(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def translate(self, a: int | Element) -> "ElementSet":
        if isinstance(a, Element):
            a = a.index
        return ElementSet(self.group, self.group.translate_bits(self.bits, a % self.group.order))

    def negate(self) -> "ElementSet":
        return ElementSet(self.group, self.group.negate_bits(self.bits))

    @property
    def is_full(self) -> bool:
        return self.bits == self.group.full_mask

    def serialize(self) -> list[int]:
        return list(self.indices())

    def __repr__(self) -> str:
        return f"ElementSet({self.group.spec_string}, {list(self.indices())})"


@dataclass(frozen=True)
class SubgroupHandle:
    elements: ElementSet
    order: int
    index: int

    @property
    def bits(self) -> int:
        return self.elements.bits


def make_group(cyclic_orders: Iterable[int], max_order: int = MAX_GROUP_ORDER) -> GroupSpec:
    orders = tuple(int(n) for n in cyclic_orders)
    if not orders:
        raise ValueError("a group needs at least one cyclic factor")
    for n in orders:
        if n < 2:
            raise ValueError(f"cyclic factor {n} is not a valid order (need >= 2)")
    total = 1
    for n in orders:
        total *= n
        if total > max_order:
            raise GroupTooLargeError(f"group order exceeds cap {max_order}")
    return GroupSpec(orders)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse "Z15" or "Z2xZ4" (case-insensitive) into a GroupSpec."""
    cleaned = text.strip()
    if not _SPEC_RE.match(cleaned):
        raise ValueError(f"malformed group spec {text!r}; expected forms like Z15 or Z2xZ4")
    orders = [int(part[1:]) for part in cleaned.lower().split("x")]
    return make_group(orders)


def smallest_prime_divisor(n: int) -> int:
    if n < 2:
        raise ValueError(f"{n} has no prime divisor")
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def divisors(n: int) -> list[int]:
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def _closure_extend(g: GroupSpec, sub_bits: int, x: int) -> int:
    # union of sub_bits + k*x over all k; doubles coverage each pass
    cur = sub_bits
    while True:
        nxt = cur | g.translate_bits(cur, x)
        if nxt == cur:
            return cur
        cur = nxt


def generated_subgroup(s: ElementSet) -> SubgroupHandle:
    """Smallest subgroup containing s. Additive closure suffices in a finite group."""
    g = s.group
    bits = 1  # identity
    for x in s:
        if not (bits >> x) & 1:
            bits = _closure_extend(g, bits, x)
    order = bits.bit_count()
    return SubgroupHandle(ElementSet(g, bits), order, g.order // order)


def all_subgroups(g: GroupSpec, max_order: int = MAX_SUBGROUP_ENUM_ORDER) -> list[SubgroupHandle]:
    """Every subgroup, sorted by (order, element tuple). Cached on the group."""
    cached = g._subgroups
    if cached is not None:
        return cached
    if g.order > max_order:
        raise GroupTooLargeError(f"subgroup enumeration capped at order {max_order}")
    with g._lock:
        if g._subgroups is not None:
            return g._subgroups
        found = {1}
        frontier = [1]
        while frontier:
            s = frontier.pop()
            for x in range(1, g.order):
                if not (s >> x) & 1:
                    t = _closure_extend(g, s, x)
                    if t not in found:
                        found.add(t)
                        frontier.append(t)
        handles = []
        for bits in found:
            order = bits.bit_count()
            handles.append(SubgroupHandle(ElementSet(g, bits), order, g.order // order))
        handles.sort(key=lambda h: (h.order, h.elements.indices()))
        g._subgroups = handles
    return g._subgroups


def subgroups_of_order(g: GroupSpec, order: int) -> list[SubgroupHandle]:
    return [h for h in all_subgroups(g) if h.order == order]


def cosets(h: SubgroupHandle) -> list[ElementSet]:
    """Cosets of h in its ambient group; the subgroup itself comes first,
    the rest ordered by smallest representative."""
    g = h.elements.group
    seen = 0
    out = [h.elements]
    seen |= h.bits
    for i in range(g.order):
        if not (seen >> i) & 1:
            c = g.translate_bits(h.bits, i)
            out.append(ElementSet(g, c))
            seen |= c
    return out


def _partitions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def rec(remaining: int, cap: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, cap), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def abelian_groups_of_order(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor presentations (ascending) of all abelian groups of order n."""
    if n < 2:
        raise ValueError("order must be at least 2")
    factors: dict[int, int] = {}
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            factors[f] = factors.get(f, 0) + 1
            m //= f
        f += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1

    primes = sorted(factors)
    choices = [_partitions(factors[p]) for p in primes]
    out = []

    def rec(i: int, chosen: list[tuple[int, ...]]) -> None:
        if i == len(primes):
            depth = max(len(c) for c in chosen)
            invariant = []
            for level in range(depth):
                d = 1
                for p, parts in zip(primes, chosen):
                    if level < len(parts):
                        d *= p ** parts[level]
                invariant.append(d)
            out.append(tuple(sorted(invariant)))
            return
        for parts in choices[i]:
            rec(i + 1, chosen + [parts])

    rec(0, [])
    return sorted(out)
