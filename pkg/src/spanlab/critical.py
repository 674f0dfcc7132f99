"""Critical numbers of finite abelian groups.

The critical number cr(G) is the least t such that every subset of
G \\ {0} with at least t elements has subset sums covering all of G.
Two independent routes are provided:

* ``critical_number_formula`` -- the closed form, split by |G| prime /
  a short list of small exceptional groups or |G| = p*q with q in a
  window above p / everything else;
* ``critical_number_search`` -- exhaustive branch-and-bound over
  target-avoiding subsets, returning a maximum non-spanning witness,
  which certifies cr(G) = |witness| + 1 with no formula input.

``verify_critical_formula`` runs both on every abelian group up to a
given order and reports agreement row by row.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .bounds import two_sqrt_floor
from .groups import (GroupSpec, abelian_groups_of_order, is_prime, make_group,
                     smallest_prime_divisor)
from .search import SearchBudget, max_avoiding, target_representatives
from .sums import subset_sums_bits

# Isomorphism types (as sorted prime-power elementary divisors) that take
# the larger value |G|/p + p - 1 unconditionally.
_SPECIAL_TYPES = frozenset({
    (2, 2),   # Z2 x Z2
    (3, 3),   # Z3 x Z3
    (4,),     # Z4
    (2, 3),   # Z6
    (2, 4),   # Z2 x Z4
    (8,),     # Z8
})


def _prime_power_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            q = 1
            while n % d == 0:
                n //= d
                q *= d
            out.append(q)
        d += 1
    if n > 1:
        out.append(n)
    return out


def elementary_divisors(group: GroupSpec) -> tuple[int, ...]:
    """Sorted prime-power decomposition; equal tuples <=> isomorphic groups."""
    parts: list[int] = []
    for n in group.cyclic_orders:
        parts.extend(_prime_power_factors(n))
    return tuple(sorted(parts))


def critical_number_case(group: GroupSpec) -> str:
    """Which arm of the closed form applies: 'prime', 'special_case2',
    or 'general_case3'.

    The special arm fires for the six exceptional small groups and
    whenever |G|/p is an odd prime m with 2 < p <= m <= p + floor(2*sqrt(p-2)) + 1.
    The lower comparison is inclusive: for |G| = p*p with p an odd prime
    (so m = p), groups such as Z9 have a non-spanning set of size m + p - 2
    (in Z9: {1, 3, 4, 7}, whose subset sums hit everything except 0), so
    they belong with the m + p - 1 arm; the exhaustive cross-check in
    verify_critical_formula pins this down empirically.
    """
    n = group.order
    if n < 3:
        raise ValueError(f"critical number requires order >= 3, got {n}")
    p = smallest_prime_divisor(n)
    if n == p:
        return "prime"
    m = n // p
    window = (is_prime(m) and m % 2 == 1 and p > 2
              and p <= m <= p + two_sqrt_floor(p - 2) + 1)
    if window or elementary_divisors(group) in _SPECIAL_TYPES:
        return "special_case2"
    return "general_case3"


def critical_number_formula(group: GroupSpec) -> int:
    """Closed-form cr(G) for |G| >= 3."""
    case = critical_number_case(group)
    n = group.order
    p = smallest_prime_divisor(n)
    if case == "prime":
        return two_sqrt_floor(p - 2)
    if case == "special_case2":
        return n // p + p - 1
    return n // p + p - 2


@dataclass(frozen=True)
class CriticalSearchOutcome:
    """Result of the exhaustive search. status is 'complete',
    'budget_exceeded', or 'skipped' (order above max_exact_order)."""

    status: str
    value: int | None
    max_nonspanning_size: int | None
    witness: tuple[int, ...] | None
    nodes: int
    targets_searched: int

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "value": self.value,
            "max_nonspanning_size": self.max_nonspanning_size,
            "witness": list(self.witness) if self.witness is not None else None,
            "nodes": self.nodes,
            "targets_searched": self.targets_searched,
        }


def critical_number_search(group: GroupSpec, budget: SearchBudget | None = None,
                           reduce_orbits: bool = True) -> CriticalSearchOutcome:
    """Certified cr(G) by exhaustive search.

    For each avoided target t, branch and bound finds the largest subset
    whose sums miss t; the floor carried across targets lets later
    searches skip anything not beating the best so far, while ties are
    still revisited, so the reported witness is the lexicographically
    least maximum-size set avoiding any of the searched targets. With
    reduce_orbits=False every target is searched and the witness is the
    global lexicographic minimum over all maximum non-spanning sets;
    with reduction on, the *size* (and hence the value) is still exact,
    because unit scaling carries a set missing t to one missing t's
    representative, but the witness is canonical only up to that
    scaling. The empty set is the size-0 baseline (Sigma(empty) = {0}
    != G).
    """
    n = group.order
    if n < 3:
        raise ValueError(f"critical number requires order >= 3, got {n}")
    budget = budget or SearchBudget()
    if n > budget.max_exact_order and not budget.extended:
        return CriticalSearchOutcome("skipped", None, None, None, 0, 0)
    targets = target_representatives(group, reduce_orbits)
    best_size = 0
    best_wit: tuple[int, ...] = ()
    nodes = 0
    start = time.monotonic()
    for i, t in enumerate(targets):
        rem_nodes = None if budget.max_nodes is None else budget.max_nodes - nodes
        rem_secs = (None if budget.max_seconds is None
                    else budget.max_seconds - (time.monotonic() - start))
        if (rem_nodes is not None and rem_nodes <= 0) or (
                rem_secs is not None and rem_secs <= 0):
            return CriticalSearchOutcome("budget_exceeded", None, None, None, nodes, i)
        res = max_avoiding(group, t, floor=max(best_size - 1, 0),
                           budget=SearchBudget(max_nodes=rem_nodes,
                                               max_seconds=rem_secs))
        nodes += res.nodes
        if not res.complete:
            return CriticalSearchOutcome("budget_exceeded", None, None, None, nodes, i)
        if res.witness is not None and (
                res.size > best_size
                or (res.size == best_size and res.witness < best_wit)):
            best_size, best_wit = res.size, res.witness
    if best_wit and subset_sums_bits(group, best_wit) == group.full_mask:
        raise AssertionError("search returned a spanning witness")  # pragma: no cover
    return CriticalSearchOutcome("complete", best_size + 1, best_size,
                                 best_wit, nodes, len(targets))


@dataclass(frozen=True)
class CriticalRow:
    spec: str
    order: int
    formula: int
    searched: int | None
    agree: bool | None
    witness: tuple[int, ...] | None
    nodes: int
    status: str

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "order": self.order,
            "formula": self.formula,
            "searched": self.searched,
            "agree": self.agree,
            "witness": list(self.witness) if self.witness is not None else None,
            "nodes": self.nodes,
            "status": self.status,
        }


@dataclass
class CriticalTable:
    max_order: int
    rows: list[CriticalRow] = field(default_factory=list)

    @property
    def all_agree(self) -> bool:
        return all(r.agree for r in self.rows if r.agree is not None) and any(
            r.agree is not None for r in self.rows)

    @property
    def disagreements(self) -> list[CriticalRow]:
        return [r for r in self.rows if r.agree is False]

    def to_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "all_agree": self.all_agree,
            "rows": [r.to_dict() for r in self.rows],
        }


def verify_critical_formula(max_order: int, budget: SearchBudget | None = None,
                            reduce_orbits: bool = True) -> CriticalTable:
    """Formula vs exhaustive search on every abelian group of order 3..max_order."""
    budget = budget or SearchBudget(max_exact_order=max_order)
    table = CriticalTable(max_order=max_order)
    for n in range(3, max_order + 1):
        for orders in abelian_groups_of_order(n):
            g = make_group(orders)
            formula = critical_number_formula(g)
            out = critical_number_search(g, budget=budget,
                                         reduce_orbits=reduce_orbits)
            agree = (out.value == formula) if out.status == "complete" else None
            table.rows.append(CriticalRow(
                spec=g.spec_string, order=n, formula=formula,
                searched=out.value, agree=agree, witness=out.witness,
                nodes=out.nodes, status=out.status))
    return table
