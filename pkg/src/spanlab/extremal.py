"""Extremal non-spanning sets: enumeration, classification, campaigns.

An extremal set for a group G is A subset of G \\ {0} with |A| = cr(G) - 1
and Sigma(A) != G: one element short of the guaranteed-spanning size, yet
still missing something. This module enumerates them exhaustively, tags
each against the known structural shapes, profiles them by coset layout,
and runs the conjecture campaigns whose certificates are the point of the
whole exercise.

Shape tags (witness payloads in parentheses):

* SHAPE_I    -- A = H \\ {0} for a subgroup H of index p (H);
* SHAPE_II   -- H \\ {0} <= A <= H + (g+H) + (-g+H) for an index-p H (H, g);
* SHAPE_B    -- synonym of SHAPE_II, emitted alongside it (same witness);
* SHAPE_EX1  -- K \\ {0} <= A <= K + (g+K) + (-g+K) for an order-p K (K, g);
* SHAPE_EX2  -- A = {+-g, +-2g, ..., +-mg} for a generator g, where
                |G| = p*q (odd primes) and m = (p+q-2)/2 (g);
* HAS_COMPLETE_SUBSET -- some subgroup K has Sigma(A intersect K) = K (K);
* UNCLASSIFIED -- none of the SHAPE_* tags matched.

p always denotes the smallest prime divisor of |G|.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .bounds import two_sqrt_floor
from .critical import critical_number_formula
from .groups import (ElementSet, GroupSpec, SubgroupHandle, cosets, is_prime,
                     make_group, smallest_prime_divisor, subgroups_of_order)
from .search import (ENGINE_VERSION, AvoidingEnumerator, CheckpointMismatch,
                     EnumerationPaused, SearchBudget, SearchStats,
                     SizedEnumerator, candidate_count, run_work_unit,
                     target_representatives)
from .sums import complete_subgroup_witnesses, contains_complete_subset, subset_sums_bits

SCHEMA_VERSION = 1

SHAPE_I = "SHAPE_I"
SHAPE_II = "SHAPE_II"
SHAPE_B = "SHAPE_B"
SHAPE_EX1 = "SHAPE_EX1"
SHAPE_EX2 = "SHAPE_EX2"
HAS_COMPLETE_SUBSET = "HAS_COMPLETE_SUBSET"
UNCLASSIFIED = "UNCLASSIFIED"

ALL_TAGS = (SHAPE_I, SHAPE_II, SHAPE_B, SHAPE_EX1, SHAPE_EX2,
            HAS_COMPLETE_SUBSET, UNCLASSIFIED)
_SHAPE_TAGS = frozenset({SHAPE_I, SHAPE_II, SHAPE_B, SHAPE_EX1, SHAPE_EX2})


class EnumerationBudgetError(ValueError):
    """The candidate space is too large for the configured budget."""


# -- coset profiles -------------------------------------------------------------


@dataclass(frozen=True)
class CosetProfile:
    """Layout of a set against a subgroup H: how much of H it fills and how
    its remainder spreads over the nonzero cosets.

    lengths = (l_0, l_1, ..., l_k) with l_0 = |A intersect H| and
    l_1 >= ... >= l_k > 0 the sizes of the nonempty nonzero-coset slices;
    r = (r_1..r_5) with r_u = #{i >= 1 : l_i = u} for u <= 4 and
    r_5 = #{i : l_i >= 5}; m = (m_1..m_5) with m_t = k - sum(r_u, u < t),
    so the slices of size >= t are exactly l_1..l_{m_t}.
    """

    subgroup: SubgroupHandle
    k: int
    lengths: tuple[int, ...]
    r: tuple[int, int, int, int, int]
    m: tuple[int, int, int, int, int]

    def to_dict(self) -> dict:
        return {
            "subgroup": list(self.subgroup.elements.indices()),
            "k": self.k,
            "lengths": list(self.lengths),
            "r": list(self.r),
            "m": list(self.m),
        }


def coset_profile(a: ElementSet, h: SubgroupHandle) -> CosetProfile:
    """Decompose a by the cosets of h (proper, nontrivial)."""
    g = a.group
    if h.elements.group != g:
        raise ValueError("subgroup from a different group")
    if h.order <= 1 or h.order >= g.order:
        raise ValueError("coset profile needs a proper nontrivial subgroup")
    ell0 = (a.bits & h.bits).bit_count()
    nonzero = []
    for coset in cosets(h)[1:]:
        c = (a.bits & coset.bits).bit_count()
        if c:
            nonzero.append(c)
    nonzero.sort(reverse=True)
    k = len(nonzero)
    r = tuple(sum(1 for l in nonzero if l == u) for u in (1, 2, 3, 4))
    r = r + (sum(1 for l in nonzero if l >= 5),)
    m, acc = [], 0
    for t in range(1, 6):
        m.append(k - acc)
        acc += r[t - 1]
    return CosetProfile(h, k, (ell0, *nonzero), r, tuple(m))


# -- extremality and classification ---------------------------------------------


def extremality_failure(a: ElementSet) -> str | None:
    """None when a is extremal; otherwise a human-readable reason."""
    g = a.group
    if g.order < 3:
        return "group order below 3"
    if 0 in a:
        return "contains the identity"
    k = critical_number_formula(g) - 1
    if len(a) != k:
        return f"size {len(a)} != cr - 1 = {k}"
    if subset_sums_bits(g, a.indices()) == g.full_mask:
        return "subset sums cover the whole group"
    return None


def is_extremal(a: ElementSet) -> bool:
    return extremality_failure(a) is None


def _pair_coset_witness(g: GroupSpec, h_bits: int, a_bits: int,
                        residual: int) -> int | None:
    """Smallest x such that residual fits inside (x+H) union (-x+H), or None.

    Any element of either coset generates the same union, so testing the
    pair named by the residual's lowest element is exhaustive.
    """
    if residual == 0:
        spill = (g.full_mask ^ h_bits)
        return (spill & -spill).bit_length() - 1 if spill else None
    c = (residual & -residual).bit_length() - 1
    union = g.translate_bits(h_bits, c) | g.translate_bits(h_bits, g.neg(c))
    if residual & ~union:
        return None
    return (union & -union).bit_length() - 1


def _interval_set_bits(g: GroupSpec, gen: int, m: int) -> int:
    """Bitmask of {+-gen, +-2*gen, ..., +-m*gen}."""
    bits = 0
    cur = 0
    neg = g.neg_table()
    for _ in range(m):
        cur = g.add(cur, gen)
        bits |= (1 << cur) | (1 << neg[cur])
    return bits


@dataclass
class ExtremalRecord:
    group: GroupSpec
    indices: tuple[int, ...]
    tags: tuple[str, ...]
    witnesses: dict[str, dict]
    profile: CosetProfile | None

    @property
    def element_set(self) -> ElementSet:
        return ElementSet.from_indices(self.group, self.indices)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "group": self.group.spec_string,
            "set": list(self.indices),
            "tags": list(self.tags),
            "witnesses": self.witnesses,
            "profile": self.profile.to_dict() if self.profile else None,
        }


def classify(a: ElementSet, *, _assume_extremal: bool = False) -> ExtremalRecord:
    """Full shape classification of an extremal set.

    Every tag is decided by exhaustive scan over its witness space
    (index-p subgroups for SHAPE_I/II, order-p subgroups for SHAPE_EX1,
    generators for SHAPE_EX2), and every recorded witness is the first in
    canonical order, so records are deterministic and re-verifiable.
    """
    g = a.group
    if not _assume_extremal:
        reason = extremality_failure(a)
        if reason:
            raise ValueError(f"not an extremal set: {reason}")
    n = g.order
    p = smallest_prime_divisor(n)
    m_index = n // p
    a_bits = a.bits
    tags: set[str] = set()
    witnesses: dict[str, dict] = {}
    classifying_h: SubgroupHandle | None = None

    if 1 < m_index < n:
        for h in subgroups_of_order(g, m_index):
            h_nz = h.bits ^ 1
            if h_nz & ~a_bits:
                continue  # H \ {0} not contained in a
            if SHAPE_I not in tags and a_bits == h_nz:
                tags.add(SHAPE_I)
                witnesses[SHAPE_I] = {"subgroup": list(h.elements.indices())}
                if classifying_h is None:
                    classifying_h = h
            if SHAPE_II not in tags:
                gx = _pair_coset_witness(g, h.bits, a_bits, a_bits & ~h.bits)
                if gx is not None:
                    tags.update((SHAPE_II, SHAPE_B))
                    w = {"subgroup": list(h.elements.indices()), "g": gx}
                    witnesses[SHAPE_II] = w
                    witnesses[SHAPE_B] = dict(w)
                    if classifying_h is None:
                        classifying_h = h

    if p < n:
        for kh in subgroups_of_order(g, p):
            k_nz = kh.bits ^ 1
            if k_nz & ~a_bits:
                continue
            gx = _pair_coset_witness(g, kh.bits, a_bits, a_bits & ~kh.bits)
            if gx is not None:
                tags.add(SHAPE_EX1)
                witnesses[SHAPE_EX1] = {"subgroup": list(kh.elements.indices()),
                                        "g": gx}
                break

    q = n // p
    if p != q and p % 2 == 1 and is_prime(q) and len(a) == p + q - 2:
        m_half = (p + q - 2) // 2
        for gen in range(1, n):
            if g.element_order(gen) != n:
                continue
            if _interval_set_bits(g, gen, m_half) == a_bits:
                tags.add(SHAPE_EX2)
                witnesses[SHAPE_EX2] = {"generator": gen}
                break

    witness_k = contains_complete_subset(a)
    if witness_k is not None:
        tags.add(HAS_COMPLETE_SUBSET)
        witnesses[HAS_COMPLETE_SUBSET] = {
            "subgroup": list(witness_k.elements.indices())}

    if not tags & _SHAPE_TAGS:
        tags.add(UNCLASSIFIED)

    profile = None
    if classifying_h is not None:
        profile = coset_profile(a, classifying_h)
    elif 1 < m_index < n:
        # no shape picked an H; profile against the index-p subgroup holding
        # the most of a (max returns the first, i.e. canonical, on ties)
        best = max(subgroups_of_order(g, m_index),
                   key=lambda h: (a_bits & h.bits).bit_count())
        profile = coset_profile(a, best)
    return ExtremalRecord(g, a.indices(), tuple(sorted(tags)), witnesses, profile)


# -- observation: complete subsets fill their subgroup --------------------------


@dataclass(frozen=True)
class ObservationReport:
    """For an extremal A: every subgroup K with Sigma(A intersect K) = K
    must satisfy A intersect K = K \\ {0}."""

    holds: bool
    checks: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {"holds": self.holds, "checks": list(self.checks)}


def check_observation_31(a: ElementSet) -> ObservationReport:
    reason = extremality_failure(a)
    if reason:
        raise ValueError(f"not an extremal set: {reason}")
    checks = []
    holds = True
    for k in complete_subgroup_witnesses(a):
        trace = a.bits & k.bits
        ok = trace == (k.bits ^ 1)
        holds = holds and ok
        checks.append({
            "subgroup": list(k.elements.indices()),
            "trace": [i for i in a.indices() if (k.bits >> i) & 1],
            "ok": ok,
        })
    return ObservationReport(holds, tuple(checks))


# -- enumeration ----------------------------------------------------------------


class ExtremalEnumeration:
    """Streams every extremal set of a group exactly once, classified.

    Two engines: "direct" walks all size-k subsets of G \\ {0} with a
    spanning prune (used when C(|G|-1, k) fits the candidate budget);
    "missed_target" runs one target-avoiding DFS per missed value, which
    scales to far larger spaces but revisits sets missing several targets,
    so it deduplicates -- by unit-orbit canonical form when orbit_dedup is
    on (single-factor groups; target list shrinks to one representative
    per divisor class), by raw bitmask otherwise (all targets searched).

    The current position is always exportable via state() and restorable
    via the checkpoint argument; a budget overrun raises EnumerationPaused
    carrying that state. threads > 1 fans missed-target subtrees (split by
    first element) over a process pool; outputs are merged in lexicographic
    order so results are byte-identical to a sequential run, but pausing
    and resuming then happen at target granularity only.
    """

    def __init__(self, group: GroupSpec, budget: SearchBudget | None = None,
                 orbit_dedup: bool | None = None, checkpoint: dict | None = None,
                 threads: int = 1):
        self.group = group
        self.budget = budget or SearchBudget()
        self.k = critical_number_formula(group) - 1
        n_candidates = candidate_count(group, self.k)
        if self.budget.extended:
            self.mode = "missed_target"
        elif n_candidates <= self.budget.max_candidates:
            self.mode = "direct"
        else:
            raise EnumerationBudgetError(
                f"{group.spec_string}: {n_candidates} candidate sets exceed the "
                f"direct-mode budget of {self.budget.max_candidates}; "
                f"rerun with extended search")
        if orbit_dedup is None:
            orbit_dedup = self.mode == "missed_target" and group.is_cyclic_spec
        if orbit_dedup and not group.is_cyclic_spec:
            raise ValueError("orbit dedup requires a single-factor group spec")
        self.orbit_dedup = orbit_dedup
        self.threads = max(1, int(threads))
        self.stats = SearchStats()
        self.done = False
        self._sized: SizedEnumerator | None = None
        self._inner: AvoidingEnumerator | None = None
        self._seen: set[int] = set()
        if self.mode == "missed_target":
            self.targets = target_representatives(group, orbit_dedup)
            self.target_pos = 0
        else:
            self.targets = []
            self.target_pos = 0
        if checkpoint is not None:
            self._load(checkpoint)

    # state round-trip ------------------------------------------------------

    def state(self) -> dict:
        st = {
            "engine": ENGINE_VERSION,
            "kind": "extremal",
            "group": self.group.spec_string,
            "k": self.k,
            "mode": self.mode,
            "orbit_dedup": self.orbit_dedup,
            "emitted": self.stats.emitted,
            "done": self.done,
        }
        if self.mode == "direct":
            st["inner"] = self._sized.state() if self._sized else None
        else:
            st["targets"] = list(self.targets)
            st["target_pos"] = self.target_pos
            st["inner"] = self._inner.state() if self._inner else None
            st["seen"] = sorted(format(x, "x") for x in self._seen)
        return st

    def _load(self, st: dict) -> None:
        for key, want in (("engine", ENGINE_VERSION), ("kind", "extremal"),
                          ("group", self.group.spec_string), ("k", self.k),
                          ("mode", self.mode), ("orbit_dedup", self.orbit_dedup)):
            got = st.get(key)
            if got != want:
                raise CheckpointMismatch(
                    f"checkpoint {key} is {got!r}, this run needs {want!r}")
        self.stats.emitted = int(st.get("emitted", 0))
        self.done = bool(st.get("done", False))
        inner = st.get("inner")
        if self.mode == "direct":
            if inner is not None:
                self._sized = SizedEnumerator.from_state(self.group, inner,
                                                         self.budget)
        else:
            saved_targets = [int(t) for t in st.get("targets", [])]
            if saved_targets != list(self.targets):
                raise CheckpointMismatch("checkpoint target list differs")
            self.target_pos = int(st.get("target_pos", 0))
            self._seen = {int(s, 16) for s in st.get("seen", [])}
            if inner is not None:
                if self.threads > 1:
                    raise CheckpointMismatch(
                        "mid-target checkpoint cannot resume with threads > 1; "
                        "resume single-threaded or restart the target")
                self._inner = AvoidingEnumerator.from_state(self.group, inner,
                                                            self.budget)
                if self._inner.target != self.targets[self.target_pos]:
                    raise CheckpointMismatch("checkpoint target out of step")

    # record construction -----------------------------------------------------

    def _emit(self, indices: tuple[int, ...]) -> ExtremalRecord:
        a = ElementSet.from_indices(self.group, indices)
        reason = extremality_failure(a)
        if reason:  # pragma: no cover - engine invariant
            raise AssertionError(f"enumerated a non-extremal set {indices}: {reason}")
        self.stats.emitted += 1
        return classify(a, _assume_extremal=True)

    def records(self) -> Iterator[ExtremalRecord]:
        if self.done:
            return
        try:
            if self.mode == "direct":
                yield from self._run_direct()
            elif self.threads > 1:
                yield from self._run_missed_parallel()
            else:
                yield from self._run_missed_sequential()
        except EnumerationPaused:
            # re-raise carrying the enumeration-level state, not the raw
            # engine state, so a resume restores dedup and target position
            raise EnumerationPaused(self.state()) from None
        self.done = True

    def _run_direct(self) -> Iterator[ExtremalRecord]:
        if self._sized is None:
            self._sized = SizedEnumerator(self.group, self.k, self.budget)
        eng = self._sized
        canonical = self.group.canonical_bits_under_units if self.orbit_dedup else None
        for indices, _sig in eng.run():
            self.stats.nodes = eng.stats.nodes
            if canonical is not None:
                mask = 0
                for i in indices:
                    mask |= 1 << i
                if canonical(mask) != mask:
                    continue
            yield self._emit(indices)
        self.stats.nodes = eng.stats.nodes

    def _key_and_indices(self, indices: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        mask = 0
        for i in indices:
            mask |= 1 << i
        if self.orbit_dedup:
            mask = self.group.canonical_bits_under_units(mask)
            indices = tuple(i for i in range(self.group.order) if (mask >> i) & 1)
        return mask, indices

    def _run_missed_sequential(self) -> Iterator[ExtremalRecord]:
        while self.target_pos < len(self.targets):
            if self._inner is None:
                self._inner = AvoidingEnumerator(
                    self.group, self.targets[self.target_pos], self.k, self.budget)
            else:
                self._inner.budget = self.budget
            for found, _sig in self._inner.run():
                key, indices = self._key_and_indices(found)
                if key in self._seen:
                    continue
                self._seen.add(key)
                yield self._emit(indices)
            self.stats.nodes += self._inner.stats.nodes
            self._inner = None
            self.target_pos += 1
            self.stats.targets_done = self.target_pos

    def _run_missed_parallel(self) -> Iterator[ExtremalRecord]:
        orders = self.group.cyclic_orders
        firsts = list(range(1, self.group.order))
        deadline = self.budget.deadline()
        nodes_cap = (None if self.budget.max_nodes is None
                     else self.stats.nodes + self.budget.max_nodes)
        with ProcessPoolExecutor(max_workers=self.threads) as pool:
            while self.target_pos < len(self.targets):
                if (nodes_cap is not None and self.stats.nodes >= nodes_cap) or (
                        deadline is not None and time.monotonic() > deadline):
                    raise EnumerationPaused(self.state())
                t = self.targets[self.target_pos]
                futures = [pool.submit(run_work_unit, orders, t, self.k, f)
                           for f in firsts]
                for fut in futures:
                    masks, nodes = fut.result()
                    self.stats.nodes += nodes
                    for mask in masks:
                        indices = tuple(i for i in range(self.group.order)
                                        if (mask >> i) & 1)
                        key, indices = self._key_and_indices(indices)
                        if key in self._seen:
                            continue
                        self._seen.add(key)
                        yield self._emit(indices)
                self.target_pos += 1
                self.stats.targets_done = self.target_pos


def enumerate_extremal(group: GroupSpec, budget: SearchBudget | None = None,
                       orbit_dedup: bool | None = None,
                       checkpoint: dict | None = None,
                       threads: int = 1) -> Iterator[ExtremalRecord]:
    """Convenience wrapper: stream classified extremal records."""
    yield from ExtremalEnumeration(group, budget, orbit_dedup, checkpoint,
                                   threads).records()


# -- named example constructions -------------------------------------------------


def _example_windows(p: int, q: int) -> int:
    if not (is_prime(p) and is_prime(q) and p % 2 == 1 and q % 2 == 1):
        raise ValueError(f"(p, q) = ({p}, {q}): both must be odd primes")
    if p >= q:
        raise ValueError(f"(p, q) = ({p}, {q}): need p < q")
    return two_sqrt_floor(p - 2)


def make_example_1(p: int, q: int, seed: int = 0, retries: int = 64) -> ElementSet:
    """Random extremal set in Z_pq built around an order-p subgroup K:
    all of K \\ {0}, plus q - 2 elements split between the cosets 1 + K
    and -1 + K. Requires p + floor(2*sqrt(p-2)) + 1 < q < 2p + 3.

    Subset sums stay inside coset indices [-b, a] of K where a + b = q - 2,
    so one coset of K is always missed and the construction cannot fail the
    non-spanning re-check; the retry loop is belt and braces.
    """
    w = _example_windows(p, q)
    if not p + w + 1 < q < 2 * p + 3:
        raise ValueError(
            f"(p, q) = ({p}, {q}) outside the window "
            f"{p + w + 1} < q < {2 * p + 3}")
    g = make_group((p * q,))
    k_bits = 0
    for i in range(0, p * q, q):
        k_bits |= 1 << i
    plus = [i for i in range(g.order) if (g.translate_bits(k_bits, 1) >> i) & 1]
    minus = [i for i in range(g.order)
             if (g.translate_bits(k_bits, g.order - 1) >> i) & 1]
    need = q - 2
    rng = random.Random(seed)
    for _ in range(retries):
        a_count = rng.randint(max(0, need - p), min(p, need))
        chosen = rng.sample(plus, a_count) + rng.sample(minus, need - a_count)
        indices = tuple(sorted([i for i in range(g.order)
                                if (k_bits >> i) & 1 and i != 0] + chosen))
        a = ElementSet.from_indices(g, indices)
        if len(a) == p + q - 3 and subset_sums_bits(g, indices) != g.full_mask:
            return a
    raise RuntimeError(
        f"could not build a non-spanning instance for ({p}, {q}) "
        f"after {retries} attempts")  # pragma: no cover


def make_example_2(p: int, q: int, gen: int | None = None,
                   group: GroupSpec | None = None) -> ElementSet:
    """The symmetric interval {+-g, +-2g, ..., +-((p+q-2)/2) g} for a
    generator g of order pq. Requires p < q <= p + floor(2*sqrt(p-2)) + 1.
    The result has size p + q - 2 = cr(Z_pq) - 1 and is verified non-spanning.
    """
    w = _example_windows(p, q)
    if q > p + w + 1:
        raise ValueError(
            f"(p, q) = ({p}, {q}) outside the window q <= {p + w + 1}")
    g = group if group is not None else make_group((p * q,))
    if g.order != p * q:
        raise ValueError(f"group order {g.order} != p*q = {p * q}")
    if gen is None:
        gen = next(x for x in range(1, g.order) if g.element_order(x) == g.order)
    if g.element_order(gen) != g.order:
        raise ValueError(f"element {gen} has order {g.element_order(gen)}, "
                         f"need {g.order}")
    m_half = (p + q - 2) // 2
    bits = _interval_set_bits(g, gen, m_half)
    a = ElementSet(g, bits)
    if len(a) != p + q - 2:
        raise AssertionError("interval set has repeated elements")  # pragma: no cover
    if subset_sums_bits(g, a.indices()) == g.full_mask:
        raise AssertionError(
            f"symmetric interval for ({p}, {q}) unexpectedly spans")
    return a


# -- conjecture campaigns ---------------------------------------------------------


@dataclass
class ConjectureReport:
    which: int
    p: int
    q: int
    group: str
    property_name: str
    outcome: str  # VERIFIED | REFUTED | PARTIAL
    extremal_count: int
    failing_count: int
    counterexamples: list[dict]
    records: list[ExtremalRecord] = field(default_factory=list, repr=False)
    checkpoint: dict | None = None
    orbit_dedup: bool = False

    def to_dict(self) -> dict:
        return {
            "which": self.which,
            "p": self.p,
            "q": self.q,
            "group": self.group,
            "property": self.property_name,
            "outcome": self.outcome,
            "extremal_count": self.extremal_count,
            "failing_count": self.failing_count,
            "counterexamples": self.counterexamples,
            "orbit_dedup": self.orbit_dedup,
        }


def conjecture_window_check(which: int, p: int, q: int) -> None:
    w = _example_windows(p, q)
    if which == 1:
        if not p + w + 1 < q < 2 * p + 3:
            raise ValueError(
                f"conjecture 1 needs {p + w + 1} < q < {2 * p + 3}, got q = {q}")
    elif which == 2:
        if not q <= p + w + 1:
            raise ValueError(
                f"conjecture 2 needs p < q <= {p + w + 1}, got q = {q}")
    else:
        raise ValueError(f"which must be 1 or 2, got {which}")


def check_conjecture(which: int, p: int, q: int,
                     budget: SearchBudget | None = None,
                     checkpoint: dict | None = None,
                     threads: int = 1) -> ConjectureReport:
    """Enumerate every extremal set of Z_pq and test the conjectured property.

    which = 1: |A| = p + q - 3 (the window forces cr = p + q - 2) and the
    claim is that A contains a complete subset -> HAS_COMPLETE_SUBSET.
    which = 2: |A| = p + q - 2 (cr = p + q - 1) and the claim is that A is
    a symmetric generator interval -> SHAPE_EX2.

    The enumeration is literal (no orbit dedup) so the certificate lists
    every extremal set; VERIFIED means all carry the property, REFUTED
    embeds the failing records, PARTIAL means the budget ran out.
    """
    conjecture_window_check(which, p, q)
    required = HAS_COMPLETE_SUBSET if which == 1 else SHAPE_EX2
    prop = ("contains a complete subset" if which == 1
            else "equals a symmetric generator interval")
    group = make_group((p * q,))
    enum = ExtremalEnumeration(group, budget, orbit_dedup=False,
                               checkpoint=checkpoint, threads=threads)
    records: list[ExtremalRecord] = []
    failing: list[ExtremalRecord] = []
    outcome = None
    ck = None
    try:
        for rec in enum.records():
            records.append(rec)
            if required not in rec.tags:
                failing.append(rec)
    except EnumerationPaused as paused:
        outcome = "PARTIAL"
        ck = paused.state
    if outcome is None:
        outcome = "VERIFIED" if not failing else "REFUTED"
    return ConjectureReport(
        which=which, p=p, q=q, group=group.spec_string, property_name=prop,
        outcome=outcome, extremal_count=len(records),
        failing_count=len(failing),
        counterexamples=[r.to_dict() for r in failing],
        records=records, checkpoint=ck, orbit_dedup=False)


# -- main structure theorem --------------------------------------------------------


@dataclass
class TheoremReport:
    group: str
    case: str  # "even" | "odd"
    required_tag: str
    outcome: str  # VERIFIED | REFUTED | PARTIAL
    extremal_count: int
    tag_counts: dict[str, int]
    violations: list[dict]
    orbit_dedup: bool
    records: list[ExtremalRecord] = field(default_factory=list, repr=False)
    checkpoint: dict | None = None

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "case": self.case,
            "required_tag": self.required_tag,
            "outcome": self.outcome,
            "extremal_count": self.extremal_count,
            "tag_counts": self.tag_counts,
            "violations": self.violations,
            "orbit_dedup": self.orbit_dedup,
        }


def theorem_main_hypothesis(group: GroupSpec) -> str:
    """'even' or 'odd' when the structure theorem applies, else ValueError.

    Applies when p = 2 and |G| >= 36, or when |G|/p is prime with
    |G|/p >= 2p + 3.
    """
    n = group.order
    if n < 3:
        raise ValueError("group too small")
    p = smallest_prime_divisor(n)
    m = n // p
    if p == 2 and n >= 36:
        return "even"
    if m > 1 and is_prime(m) and m >= 2 * p + 3:
        return "even" if p == 2 else "odd"
    raise ValueError(
        f"{group.spec_string} meets no structure-theorem hypothesis "
        f"(need p = 2 with |G| >= 36, or |G|/p prime >= 2p + 3); "
        f"use plain enumeration for exploratory reports")


def verify_theorem_main(group: GroupSpec, budget: SearchBudget | None = None,
                        orbit_dedup: bool | None = None,
                        checkpoint: dict | None = None,
                        threads: int = 1) -> TheoremReport:
    """Check that every extremal set has the shape the structure theorem
    demands: SHAPE_I when p = 2, SHAPE_II when p is odd."""
    case = theorem_main_hypothesis(group)
    required = SHAPE_I if case == "even" else SHAPE_II
    enum = ExtremalEnumeration(group, budget, orbit_dedup=orbit_dedup,
                               checkpoint=checkpoint, threads=threads)
    records: list[ExtremalRecord] = []
    violations: list[ExtremalRecord] = []
    tag_counts: dict[str, int] = {}
    outcome = None
    ck = None
    try:
        for rec in enum.records():
            records.append(rec)
            for tag in rec.tags:
                tag_counts[tag] = tag_counts.get(tag, 0) + 1
            if required not in rec.tags:
                violations.append(rec)
    except EnumerationPaused as paused:
        outcome = "PARTIAL"
        ck = paused.state
    if outcome is None:
        outcome = "VERIFIED" if not violations else "REFUTED"
    return TheoremReport(
        group=group.spec_string, case=case, required_tag=required,
        outcome=outcome, extremal_count=len(records),
        tag_counts=dict(sorted(tag_counts.items())),
        violations=[r.to_dict() for r in violations],
        orbit_dedup=enum.orbit_dedup, records=records, checkpoint=ck)
