"""Subset-sum objects over finite abelian groups.

Sigma(A) is the set of sums of nonempty subsets of A (for a sequence,
nonempty subsequences); Sigma_circ adds 0; Sigma_h keeps only sums of
exactly h distinct terms. All three run as bitset dynamic programs, one
translate per term, so a full Sigma costs |A| big-int shifts.

Convention: Sigma(empty) = {0}, Sigma_0 = {0}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .groups import ElementSet, GroupSpec, SubgroupHandle, generated_subgroup


@dataclass(frozen=True)
class SequenceOverGroup:
    """A finite multiset of group elements, stored as a sorted tuple of indices."""

    group: GroupSpec
    terms: tuple[int, ...]

    @classmethod
    def from_indices(cls, group: GroupSpec, indices: Iterable[int]) -> "SequenceOverGroup":
        terms = tuple(sorted(int(i) for i in indices))
        for i in terms:
            if not 0 <= i < group.order:
                raise ValueError(f"element index {i} out of range for {group.spec_string}")
        return cls(group, terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def support(self) -> ElementSet:
        return ElementSet.from_indices(self.group, set(self.terms))


Summable = Union[ElementSet, SequenceOverGroup]


def _terms_of(x: Summable) -> tuple[GroupSpec, tuple[int, ...]]:
    if isinstance(x, SequenceOverGroup):
        return x.group, x.terms
    if isinstance(x, ElementSet):
        return x.group, x.indices()
    raise TypeError(f"expected ElementSet or SequenceOverGroup, got {type(x).__name__}")


def subset_sums_bits(group: GroupSpec, terms: Iterable[int]) -> int:
    """Bitmask of Sigma over the given terms; 0 for an empty term list."""
    translate = group.translate_bits
    acc = 0
    for a in terms:
        acc |= translate(acc | 1, a)
    return acc


def subset_sums(x: Summable) -> ElementSet:
    """Sigma(x): sums over nonempty subsets (subsequences). Sigma(empty) = {0}."""
    group, terms = _terms_of(x)
    if not terms:
        return ElementSet(group, 1)
    return ElementSet(group, subset_sums_bits(group, terms))


def subset_sums_with_zero(x: Summable) -> ElementSet:
    """Sigma_circ(x) = Sigma(x) together with 0."""
    group, terms = _terms_of(x)
    return ElementSet(group, subset_sums_bits(group, terms) | 1)


def restricted_sums(x: Summable, h: int) -> ElementSet:
    """Sigma_h(x): sums of exactly h distinct terms. Sigma_0 = {0}."""
    group, terms = _terms_of(x)
    if not 0 <= h <= len(terms):
        raise ValueError(f"h = {h} out of range for a sequence of length {len(terms)}")
    translate = group.translate_bits
    layers = [0] * (h + 1)
    layers[0] = 1
    for seen, a in enumerate(terms):
        for j in range(min(h, seen + 1), 0, -1):
            prev = layers[j - 1]
            if prev:
                layers[j] |= translate(prev, a)
    return ElementSet(group, layers[h])


def sumset(a: ElementSet, b: ElementSet) -> ElementSet:
    """A + B = {x + y : x in A, y in B}."""
    if a.group != b.group:
        raise ValueError("sumset over mismatched groups")
    if a.bits == 0 or b.bits == 0:
        raise ValueError("sumset of an empty set is undefined here")
    group = a.group
    big, small = (a.bits, b.bits) if a.cardinality >= b.cardinality else (b.bits, a.bits)
    out = 0
    translate = group.translate_bits
    for x in group.iter_bits(small):
        out |= translate(big, x)
        if out == group.full_mask:
            break
    return ElementSet(group, out)


def spans(a: Summable) -> bool:
    """True when Sigma(a) is the whole group."""
    group, terms = _terms_of(a)
    if not terms:
        return group.order == 1
    return subset_sums_bits(group, terms) == group.full_mask


def is_complete(a: ElementSet) -> bool:
    """A is complete when Sigma(A) equals the subgroup A generates."""
    if a.bits == 0:
        raise ValueError("completeness is defined for nonempty sets")
    return subset_sums_bits(a.group, a.indices()) == generated_subgroup(a).bits


def complete_subgroup_witnesses(a: ElementSet) -> list[SubgroupHandle]:
    """Nontrivial subgroups K with Sigma(A intersect K) = K, in canonical order.

    Sigma is monotone under supersets, so a complete subset generating K
    exists inside A exactly when A's full trace on K is complete.
    """
    from .groups import all_subgroups

    group = a.group
    out = []
    for h in all_subgroups(group):
        if h.order == 1:
            continue
        trace = a.bits & h.bits
        if trace and subset_sums_bits(group, tuple(group.iter_bits(trace))) == h.bits:
            out.append(h)
    return out


def contains_complete_subset(a: ElementSet) -> SubgroupHandle | None:
    """Smallest subgroup K (by order, then elements) completed inside A, if any."""
    if a.bits == 0 or (a.bits & 1):
        raise ValueError("expects a nonempty subset of G \\ {0}")
    witnesses = complete_subgroup_witnesses(a)
    return witnesses[0] if witnesses else None
