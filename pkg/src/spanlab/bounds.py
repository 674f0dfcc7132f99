"""Executable lower-bound checks for subset sums and sumsets.

Each check evaluates one classical inequality on a concrete instance and
returns a small report: whether the hypothesis applied, the computed
left-hand side, the bound, and whether the instance satisfies it. A check
whose hypothesis does not apply reports holds=True with applied=False
(no claim is made), never a violation.

Difference witnesses for arithmetic progressions are canonicalized to the
representative in [1, (p-1)/2], so d and -d never disagree across calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .groups import ElementSet, all_subgroups, is_prime
from .sums import (
    SequenceOverGroup,
    restricted_sums,
    subset_sums,
    subset_sums_with_zero,
    sumset,
)


def epsilon(ell: int) -> int:
    """2 for ell=0, 1 for ell=1, 0 for ell>=2."""
    if ell < 0:
        raise ValueError("epsilon is defined for nonnegative arguments")
    return 2 if ell == 0 else (1 if ell == 1 else 0)


def delta(m: int) -> int:
    """0 for m=0, 1 for m>0."""
    if m < 0:
        raise ValueError("delta is defined for nonnegative arguments")
    return 0 if m == 0 else 1


def two_sqrt_floor(n: int) -> int:
    """floor(2*sqrt(n)) computed exactly in integers."""
    if n < 0:
        raise ValueError("needs a nonnegative argument")
    return math.isqrt(4 * n)


# -- arithmetic progression detection ---------------------------------------


@dataclass(frozen=True)
class APWitness:
    is_ap: bool
    first: int | None = None
    difference: int | None = None
    size: int = 0

    def to_dict(self) -> dict:
        return {"is_ap": self.is_ap, "first": self.first,
                "difference": self.difference, "size": self.size}


def _prime_cyclic_order(b: ElementSet) -> int:
    g = b.group
    if not g.is_cyclic_spec or not is_prime(g.order):
        raise ValueError("arithmetic progression detection runs over prime-order Z_p specs")
    return g.order


def detect_ap(b: ElementSet) -> APWitness:
    """Decide whether b is an arithmetic progression in Z_p.

    Sets of size 1, p-1 and p are progressions for every difference; the
    canonical witness difference reported is 1. Otherwise the witness is
    the smallest valid difference in [1, (p-1)/2], with first chosen as
    the endpoint that makes stepping by +difference cover the set.
    """
    p = _prime_cyclic_order(b)
    n = b.cardinality
    if n == 0:
        raise ValueError("empty set has no progression structure")
    idx = b.indices()
    if n == 1:
        return APWitness(True, idx[0], 1, 1)
    if n == p:
        return APWitness(True, 0, 1, n)
    if n == p - 1:
        missing = next(i for i in range(p) if i not in b)
        return APWitness(True, (missing + 1) % p, 1, n)
    if n == 2:
        x, y = idx
        d = (y - x) % p
        if d > p - d:
            d, first = p - d, y
        elif d == p - d:
            first = x  # p = 2d impossible for odd p; guard stays for p = 2
        else:
            first = x
        return APWitness(True, first, d, 2)
    present = set(idx)
    for d in range(1, p // 2 + 1):
        inv = pow(d, -1, p)
        scaled = sorted((inv * e) % p for e in present)
        gap_at = -1
        gaps = 0
        for i in range(n):
            nxt = scaled[(i + 1) % n]
            if (nxt - scaled[i]) % p != 1:
                gaps += 1
                gap_at = i
        if gaps == 1:
            start = scaled[(gap_at + 1) % n]
            return APWitness(True, (d * start) % p, d, n)
    return APWitness(False, None, None, n)


def is_ap_brute(b: ElementSet) -> bool:
    """Quadratic reference check used by tests: try every (first, difference)."""
    p = _prime_cyclic_order(b)
    n = b.cardinality
    if n in (1, p):
        return True
    present = set(b.indices())
    for d in range(1, p):
        for first in present:
            if (first - d) % p in present:
                continue  # not a start for this difference
            x = first
            length = 0
            while x in present and length < n:
                length += 1
                x = (x + d) % p
            if length == n:
                return True
    return False


# -- report types ------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    check: str
    applied: bool
    holds: bool
    actual: int | None = None
    bound: int | None = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"check": self.check, "applied": self.applied, "holds": self.holds,
                "actual": self.actual, "bound": self.bound, "detail": dict(self.detail)}


# -- the checks ---------------------------------------------------------------


def check_folk_lemma(a: ElementSet, b: ElementSet) -> BoundReport:
    """|A|+|B| >= |G|+1 forces A+B = G."""
    if a.bits == 0 or b.bits == 0:
        raise ValueError("folk lemma needs nonempty sets")
    g = a.group
    applied = a.cardinality + b.cardinality >= g.order + 1
    if not applied:
        return BoundReport("folk_lemma", False, True,
                           detail={"sizes": [a.cardinality, b.cardinality], "order": g.order})
    s = sumset(a, b)
    return BoundReport("folk_lemma", True, s.is_full, actual=s.cardinality, bound=g.order,
                       detail={"sizes": [a.cardinality, b.cardinality], "order": g.order})


def check_hamidoune_dichotomy(a: ElementSet) -> BoundReport:
    """0 not in A, |A| >= 14: either |Sigma_circ(A)| >= min(|G|-3, 3|A|-3)
    or some proper subgroup H has |A intersect H| >= |A|-1."""
    if a.bits == 0 or (a.bits & 1):
        raise ValueError("expects a nonempty subset of G \\ {0}")
    if a.cardinality < 14:
        raise ValueError("dichotomy needs |A| >= 14")
    g = a.group
    size = a.cardinality
    sigma0 = subset_sums_with_zero(a).cardinality
    bound = min(g.order - 3, 3 * size - 3)
    branch_i = sigma0 >= bound
    branch_ii = False
    concentrated = None
    for h in all_subgroups(g):
        if h.order == g.order:
            continue
        if (a.bits & h.bits).bit_count() >= size - 1:
            branch_ii = True
            concentrated = h.elements.serialize()
            break
    return BoundReport("hamidoune_dichotomy", True, branch_i or branch_ii,
                       actual=sigma0, bound=bound,
                       detail={"branch_i": branch_i, "branch_ii": branch_ii,
                               "subgroup": concentrated})


def _iterated_sumset(sets: Sequence[ElementSet]) -> ElementSet:
    acc = sets[0]
    for s in sets[1:]:
        acc = sumset(acc, s)
    return acc


def check_cauchy_davenport(sets: Sequence[ElementSet]) -> BoundReport:
    """|A_1 + ... + A_h| >= min(p, sum |A_i| - h + 1) over Z_p."""
    if not sets:
        raise ValueError("needs at least one set")
    p = _prime_cyclic_order(sets[0])
    for s in sets:
        if s.group != sets[0].group:
            raise ValueError("sets from mismatched groups")
        if s.bits == 0:
            raise ValueError("needs nonempty sets")
    total = sum(s.cardinality for s in sets)
    bound = min(p, total - len(sets) + 1)
    actual = _iterated_sumset(sets).cardinality
    return BoundReport("cauchy_davenport", True, actual >= bound, actual=actual, bound=bound,
                       detail={"sizes": [s.cardinality for s in sets], "p": p})


def _distinct_sign_assignment(diffs: Sequence[int], p: int) -> list[int] | None:
    """A tuple theta_i in {d_i, -d_i} with pairwise distinct directions, or None.

    A progression of difference d is the same point set read in the other
    direction as one of difference -d, so theta_i and theta_j clash
    whenever they agree up to sign: two parallel lines add with
    Cauchy-Davenport equality no matter which ends they are read from
    (in Z13, {2,6,11} + {7,11} - both difference-4 lines - has 4
    elements, the bare minimum). Sign flips therefore cannot rescue a
    collision; the assignment exists exactly when the difference classes
    {d_i, -d_i} are pairwise distinct, and the canonical representatives
    are returned as the witness tuple.
    """
    seen: set[int] = set()
    for d in diffs:
        key = min(d % p, (-d) % p)
        if key in seen:
            return None
        seen.add(key)
    return list(diffs)


def check_diderrich(sets: Sequence[ElementSet]) -> BoundReport:
    """All but at most one set an AP with a well-defined nonzero difference,
    those differences pairwise distinct under some sign choice:
    |A_1 + ... + A_h| >= min(p, sum |A_i| - 1).

    A progression only carries a difference once it has two elements, so
    singletons count toward the single allowed exception just like
    non-progressions; letting two singletons pick "free" distinct
    differences would make the bound false (in Z13, {2} + {1} + {3, 8}
    sums to just {6, 11}, below 1 + 1 + 2 - 1 = 3).
    """
    if not sets:
        raise ValueError("needs at least one set")
    p = _prime_cyclic_order(sets[0])
    for s in sets:
        if s.group != sets[0].group:
            raise ValueError("sets from mismatched groups")
        if s.bits == 0:
            raise ValueError("needs nonempty sets")
    witnesses = [detect_ap(s) for s in sets]
    exceptions = 0
    diffs: list[int] = []
    for s, w in zip(sets, witnesses):
        size = s.cardinality
        if not w.is_ap or size == 1:
            exceptions += 1
        elif size <= p - 2:
            diffs.append(w.difference)
        # size p-1 and p sets are progressions for *every* difference, so
        # they can always dodge a clash and never constrain the assignment
    assignment = _distinct_sign_assignment(diffs, p)
    applied = exceptions <= 1 and assignment is not None
    total = sum(s.cardinality for s in sets)
    actual = _iterated_sumset(sets).cardinality
    if not applied:
        return BoundReport("diderrich", False, True, actual=actual, bound=None,
                           detail={"exception_count": exceptions, "p": p,
                                   "sign_assignment": None})
    bound = min(p, total - 1)
    return BoundReport("diderrich", True, actual >= bound, actual=actual, bound=bound,
                       detail={"exception_count": exceptions, "p": p,
                               "sign_assignment": assignment})


@dataclass(frozen=True)
class VosperReport:
    p: int
    sizes: tuple[int, int]
    sumset_size: int
    triggered: bool
    holds: bool
    b1_witness: APWitness | None = None
    b2_witness: APWitness | None = None
    differences_match: bool | None = None

    def to_dict(self) -> dict:
        return {"p": self.p, "sizes": list(self.sizes), "sumset_size": self.sumset_size,
                "triggered": self.triggered, "holds": self.holds,
                "b1_witness": self.b1_witness.to_dict() if self.b1_witness else None,
                "b2_witness": self.b2_witness.to_dict() if self.b2_witness else None,
                "differences_match": self.differences_match}


def check_vosper(b1: ElementSet, b2: ElementSet) -> VosperReport:
    """Critical pair structure in Z_p: when |B1+B2| < min(p, |B1|+|B2|)
    and |B1+B2| <= p-2, both sets must be progressions with the same
    canonical difference.

    The sumset cap is part of the underlying theorem, not a convenience:
    pairs whose sumset misses exactly one element form a genuine
    exceptional family that need not be progressions (B1 = {1,2,3,5},
    B2 = {0,1,3} in Z7 has |B1+B2| = 6 = p-1 with neither set an AP), so
    such pairs report triggered=False.
    """
    p = _prime_cyclic_order(b1)
    if p == 2 or not is_prime(p):
        raise ValueError("needs an odd prime order")
    if b2.group != b1.group:
        raise ValueError("sets from mismatched groups")
    for b in (b1, b2):
        if not 2 <= b.cardinality <= p - 2:
            raise ValueError("needs 2 <= |B_i| <= p-2")
    s = sumset(b1, b2).cardinality
    triggered = s < min(p, b1.cardinality + b2.cardinality) and s <= p - 2
    if not triggered:
        return VosperReport(p, (b1.cardinality, b2.cardinality), s, False, True)
    w1, w2 = detect_ap(b1), detect_ap(b2)
    # canonical differences live in [1,(p-1)/2], so {d,-d} classes compare equal
    match = bool(w1.is_ap and w2.is_ap and w1.difference == w2.difference)
    return VosperReport(p, (b1.cardinality, b2.cardinality), s, True,
                        w1.is_ap and w2.is_ap and match, w1, w2, match)


def check_three_facts(a: ElementSet, h: int) -> BoundReport:
    """Restricted-sum growth in Z_p.

    (i)   |Sigma_h(A)| >= min(p, h|A| - h^2 + 1) for 1 <= h <= |A|;
    (ii)  with m = floor(sqrt(4p-7)) and 0 not in A, |A| = m forces
          |Sigma_t(A U {0})| = p at t = floor((m+1)/2);
    (iii) 0 not in A and |A| >= floor(2 sqrt(p-2)) force |Sigma(A)| = p.

    Clause (ii) is stated here in the zero-adjoined form, which is the one
    that follows from (i); the bare form without adjoining 0 is false
    (witness {1,...,6} in Z_13) and is reported by the fuzz campaigns as an
    observational count instead.
    """
    p = _prime_cyclic_order(a)
    size = a.cardinality
    if size == 0:
        raise ValueError("needs a nonempty set")
    if not 1 <= h <= size:
        raise ValueError(f"h = {h} out of range [1, {size}]")
    detail: dict = {"p": p, "size": size, "h": h}

    actual_i = restricted_sums(a, h).cardinality
    bound_i = min(p, h * size - h * h + 1)
    clause_i = actual_i >= bound_i
    detail["clause_i"] = {"actual": actual_i, "bound": bound_i, "holds": clause_i}

    holds = clause_i
    m = math.isqrt(4 * p - 7)
    zero_free = (a.bits & 1) == 0
    if zero_free and size == m:
        t = (m + 1) // 2
        adjoined = ElementSet(a.group, a.bits | 1)
        actual_ii = restricted_sums(adjoined, t).cardinality
        clause_ii = actual_ii == p
        detail["clause_ii"] = {"t": t, "actual": actual_ii, "bound": p, "holds": clause_ii}
        holds = holds and clause_ii

    if zero_free and size >= two_sqrt_floor(p - 2):
        actual_iii = subset_sums(a).cardinality
        clause_iii = actual_iii == p
        detail["clause_iii"] = {"actual": actual_iii, "bound": p, "holds": clause_iii}
        holds = holds and clause_iii

    return BoundReport("three_facts", True, holds, actual=actual_i, bound=bound_i,
                       detail=detail)


def check_growth_bound(a: ElementSet) -> BoundReport:
    """|Sigma(A)| >= min(|<A>|, 2|A|-1) for nonempty A with 0 not in A."""
    if a.bits == 0 or (a.bits & 1):
        raise ValueError("expects a nonempty subset of G \\ {0}")
    from .groups import generated_subgroup

    gen = generated_subgroup(a)
    actual = subset_sums(a).cardinality
    bound = min(gen.order, 2 * a.cardinality - 1)
    return BoundReport("growth_bound", True, actual >= bound, actual=actual, bound=bound,
                       detail={"generated_order": gen.order, "size": a.cardinality})


def check_prime_growth_bound(a: ElementSet) -> BoundReport:
    """|Sigma_circ(A)| >= min(p, 2l - 1 + epsilon(l)) for A in Z_p \\ {0}."""
    p = _prime_cyclic_order(a)
    if a.bits & 1:
        raise ValueError("expects a subset of Z_p \\ {0}")
    ell = a.cardinality
    actual = subset_sums_with_zero(a).cardinality
    bound = min(p, 2 * ell - 1 + epsilon(ell))
    return BoundReport("prime_growth_bound", True, actual >= bound, actual=actual, bound=bound,
                       detail={"p": p, "ell": ell})


def check_sequence_growth(t: SequenceOverGroup) -> BoundReport:
    """|Sigma_circ(T)| >= min(p, |T|+1) for sequences over Z_p \\ {0} of length
    >= 2, and at equality with |T| <= p-2 the support is {g, -g} or {g}."""
    g = t.group
    if not g.is_cyclic_spec or not is_prime(g.order):
        raise ValueError("needs a prime-order Z_p spec")
    p = g.order
    if len(t) < 2:
        raise ValueError("needs a sequence of length >= 2")
    if any(x == 0 for x in t.terms):
        raise ValueError("terms must avoid 0")
    actual = subset_sums_with_zero(t).cardinality
    bound = min(p, len(t) + 1)
    holds = actual >= bound
    detail: dict = {"p": p, "length": len(t)}
    if holds and actual == bound:
        support = sorted(set(t.terms))
        pm_pair = len(support) == 1 or (
            len(support) == 2 and (support[0] + support[1]) % p == 0)
        structure_ok = len(t) >= p - 1 or pm_pair
        detail["equality"] = {"support": support, "long": len(t) >= p - 1,
                              "pm_pair": pm_pair, "holds": structure_ok}
        holds = structure_ok
    return BoundReport("sequence_growth", True, holds, actual=actual, bound=bound,
                       detail=detail)
