"""Randomized and exhaustive campaigns over the bound checks.

Each campaign hammers one numbered bound (2.1 through 2.9) with seeded
random instances -- every trial derives its own generator from
``seed * STRIDE + trial`` so any single case replays in isolation -- and
counts hypothesis-applied trials and violations. Several campaigns add an
exhaustive sub-suite over a space small enough to close out completely:

* 2.6: all 924 zero-free 6-subsets of Z_13 \\ {0}. The zero-adjoined
  midpoint clause must hold on every one (violation check), while the
  bare clause |Sigma_3(A)| = 13 demonstrably fails on 462 of them; the
  campaign reports that count as an observation, not a failure. Clause
  (iii) is closed out over Z_11, with the with-zero variant counted
  observationally for contrast (it fails, e.g. on {0,1,2,3,9,10}).
* 2.9: every sequence over Z_p \\ {0} of length 2..6 for p up to 13.

A campaign with zero violations is the deliverable; a nonzero count means
either the bound or the implementation is wrong, and the examples list
carries the first few offending instances for replay.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable

from .bounds import (check_cauchy_davenport, check_diderrich, check_folk_lemma,
                     check_growth_bound, check_hamidoune_dichotomy,
                     check_prime_growth_bound, check_sequence_growth,
                     check_three_facts, check_vosper, two_sqrt_floor)
from .groups import ElementSet, GroupSpec, abelian_groups_of_order, make_group
from .sums import SequenceOverGroup, restricted_sums, subset_sums_bits

_SEED_STRIDE = 1_000_003
_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
_MAX_EXAMPLES = 5

DEFAULT_TRIALS = 10_000


@dataclass
class FuzzReport:
    lemma: str
    description: str
    trials: int
    applied: int
    violations: int
    seed: int
    examples: list[dict] = field(default_factory=list)
    exhaustive: dict | None = None

    @property
    def clean(self) -> bool:
        return self.violations == 0 and (
            self.exhaustive is None or self.exhaustive.get("violations", 0) == 0)

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "description": self.description,
            "trials": self.trials,
            "applied": self.applied,
            "violations": self.violations,
            "seed": self.seed,
            "clean": self.clean,
            "examples": self.examples,
            "exhaustive": self.exhaustive,
        }


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * _SEED_STRIDE + trial)


@lru_cache(maxsize=None)
def _groups_menu(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(abelian_groups_of_order(n))


_group_cache: dict[tuple[int, ...], GroupSpec] = {}


def _cached_group(orders: tuple[int, ...]) -> GroupSpec:
    g = _group_cache.get(orders)
    if g is None:
        g = make_group(orders)
        _group_cache[orders] = g
    return g


def _random_group(rng: random.Random, min_order: int, max_order: int) -> GroupSpec:
    n = rng.randint(min_order, max_order)
    return _cached_group(rng.choice(_groups_menu(n)))


def _prime_group(rng: random.Random, min_p: int = 3, max_p: int = 31) -> GroupSpec:
    p = rng.choice([q for q in _PRIMES if min_p <= q <= max_p])
    return _cached_group((p,))


def _random_subset(rng: random.Random, g: GroupSpec, size: int,
                   zero_free: bool = True) -> ElementSet:
    pop = range(1, g.order) if zero_free else range(g.order)
    return ElementSet.from_indices(g, rng.sample(list(pop), size))


def _note(examples: list[dict], payload: dict) -> None:
    if len(examples) < _MAX_EXAMPLES:
        examples.append(payload)


# -- individual campaigns --------------------------------------------------------


def fuzz_folk(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _random_group(rng, 2, 30)
        n = g.order
        ka = rng.randint(1, n)
        kb = rng.randint(max(1, n + 1 - ka), n) if i % 2 == 0 else rng.randint(1, n)
        a = _random_subset(rng, g, ka, zero_free=False)
        b = _random_subset(rng, g, kb, zero_free=False)
        rep = check_folk_lemma(a, b)
        applied += rep.applied
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string, "a": a.serialize(),
                             "b": b.serialize(), "report": rep.to_dict()})
    return FuzzReport("2.1", "oversized pairs must have spanning sumsets",
                      trials, applied, violations, seed, examples)


def fuzz_hamidoune(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _random_group(rng, 15, 40)
        size = rng.randint(14, min(g.order - 1, 20))
        a = _random_subset(rng, g, size)
        rep = check_hamidoune_dichotomy(a)
        applied += 1
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string, "a": a.serialize(),
                             "report": rep.to_dict()})
    return FuzzReport("2.2", "large zero-free sets: big Sigma or a packed subgroup",
                      trials, applied, violations, seed, examples)


def fuzz_cauchy(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _prime_group(rng)
        p = g.order
        h = rng.randint(1, 4)
        sets = [_random_subset(rng, g, rng.randint(1, p), zero_free=False)
                for _ in range(h)]
        rep = check_cauchy_davenport(sets)
        applied += 1
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string,
                             "sets": [s.serialize() for s in sets],
                             "report": rep.to_dict()})
    return FuzzReport("2.3", "iterated sumset lower bound in Z_p",
                      trials, applied, violations, seed, examples)


def _ap_set(g: GroupSpec, start: int, diff: int, length: int) -> ElementSet:
    p = g.order
    return ElementSet.from_indices(g, [(start + j * diff) % p for j in range(length)])


def fuzz_diderrich(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _prime_group(rng, min_p=11)
        p = g.order
        h = rng.randint(2, min(4, (p - 1) // 2))
        if i % 3 < 2:
            diffs = rng.sample(range(1, (p - 1) // 2 + 1), h)
            sets = [_ap_set(g, rng.randrange(p), d, rng.randint(1, 4))
                    for d in diffs]
            if i % 3 == 1:  # one allowed exception
                sets[rng.randrange(h)] = _random_subset(
                    rng, g, rng.randint(2, 5), zero_free=False)
        else:
            sets = [_random_subset(rng, g, rng.randint(1, 5), zero_free=False)
                    for _ in range(h)]
        rep = check_diderrich(sets)
        applied += rep.applied
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string,
                             "sets": [s.serialize() for s in sets],
                             "report": rep.to_dict()})
    return FuzzReport("2.4", "near-progression families: sumset >= sum of sizes - 1",
                      trials, applied, violations, seed, examples)


def fuzz_vosper(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _prime_group(rng, min_p=5)
        p = g.order
        if i % 2 == 0:
            d = rng.randint(1, p - 1)
            k1 = rng.randint(2, p - 3)
            k2 = rng.randint(2, max(2, min(p - 2, p - k1)))
            b1 = _ap_set(g, rng.randrange(p), d, k1)
            b2 = _ap_set(g, rng.randrange(p), d, k2)
        else:
            b1 = _random_subset(rng, g, rng.randint(2, p - 2), zero_free=False)
            b2 = _random_subset(rng, g, rng.randint(2, p - 2), zero_free=False)
        rep = check_vosper(b1, b2)
        applied += rep.triggered
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string, "b1": b1.serialize(),
                             "b2": b2.serialize(), "report": rep.to_dict()})
    return FuzzReport("2.5", "small sumsets force matching progressions",
                      trials, applied, violations, seed, examples)


def _exhaustive_midpoint_z13() -> dict:
    """Close out the midpoint clause over every zero-free 6-subset of Z_13.

    The zero-adjoined form must always reach p (counted as violations if
    not); the bare form |Sigma_3(A)| = p provably fails on some sets, so
    its failure count is reported as an observation.
    """
    g = _cached_group((13,))
    p, m = 13, 6
    t = (m + 1) // 2
    total = adjoined_failures = bare_failures = 0
    for combo in combinations(range(1, p), m):
        total += 1
        a = ElementSet.from_indices(g, combo)
        adjoined = ElementSet(g, a.bits | 1)
        if restricted_sums(adjoined, t).cardinality != p:
            adjoined_failures += 1
        if restricted_sums(a, m // 2).cardinality != p:
            bare_failures += 1
    return {
        "suite": "midpoint clause, Z_13, all zero-free 6-subsets",
        "sets": total,
        "t": t,
        "violations": adjoined_failures,
        "observed_bare_failures": bare_failures,
    }


def _exhaustive_full_span_z11() -> dict:
    """Close out clause (iii) over Z_11: every zero-free set of size >=
    floor(2 sqrt(p-2)) = 6 must have Sigma covering Z_11. Sets containing
    0 are counted separately -- the clause genuinely fails there, which is
    why it carries the zero-free hypothesis."""
    g = _cached_group((11,))
    p = 11
    threshold = two_sqrt_floor(p - 2)
    zero_free = zf_failures = with_zero = wz_failures = 0
    for size in range(threshold, p):
        for combo in combinations(range(1, p), size):
            zero_free += 1
            if subset_sums_bits(g, combo) != g.full_mask:
                zf_failures += 1
        for combo in combinations(range(1, p), size - 1):
            with_zero += 1
            if subset_sums_bits(g, combo) | 1 != g.full_mask:
                wz_failures += 1
    return {
        "suite": "full-span clause, Z_11, all sets of size >= 6",
        "threshold": threshold,
        "zero_free_sets": zero_free,
        "violations": zf_failures,
        "with_zero_sets": with_zero,
        "observed_with_zero_failures": wz_failures,
    }


def fuzz_three_facts(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _prime_group(rng)
        p = g.order
        size = rng.randint(1, p - 1)
        a = _random_subset(rng, g, size, zero_free=(i % 3 != 0))
        h = rng.randint(1, size)
        rep = check_three_facts(a, h)
        applied += 1
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string, "a": a.serialize(),
                             "h": h, "report": rep.to_dict()})
    report = FuzzReport("2.6", "restricted-sum growth and full-span clauses in Z_p",
                        trials, applied, violations, seed, examples)
    if exhaustive:
        mid = _exhaustive_midpoint_z13()
        full = _exhaustive_full_span_z11()
        report.exhaustive = {
            "suites": [mid, full],
            "violations": mid["violations"] + full["violations"],
        }
    return report


def fuzz_growth(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _random_group(rng, 3, 36)
        size = rng.randint(1, min(g.order - 1, 12))
        a = _random_subset(rng, g, size)
        rep = check_growth_bound(a)
        applied += 1
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string, "a": a.serialize(),
                             "report": rep.to_dict()})
    return FuzzReport("2.7", "Sigma grows to min(subgroup, 2|A|-1)",
                      trials, applied, violations, seed, examples)


def fuzz_prime_growth(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _prime_group(rng)
        size = rng.randint(0, min(g.order - 1, 10))
        a = _random_subset(rng, g, size)
        rep = check_prime_growth_bound(a)
        applied += 1
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string, "a": a.serialize(),
                             "report": rep.to_dict()})
    return FuzzReport("2.8", "Sigma-with-zero growth in Z_p with epsilon boost",
                      trials, applied, violations, seed, examples)


def _exhaustive_sequences() -> dict:
    total = failures = 0
    for p in (3, 5, 7, 11, 13):
        g = _cached_group((p,))
        for length in range(2, 7):
            for terms in combinations_with_replacement(range(1, p), length):
                total += 1
                rep = check_sequence_growth(SequenceOverGroup(g, terms))
                if not rep.holds:
                    failures += 1
    return {
        "suite": "all sequences of length 2..6 over Z_p \\ {0}, p <= 13",
        "sequences": total,
        "violations": failures,
    }


def fuzz_sequence(trials: int, seed: int, exhaustive: bool = True) -> FuzzReport:
    applied = violations = 0
    examples: list[dict] = []
    for i in range(trials):
        rng = _trial_rng(seed, i)
        g = _prime_group(rng)
        p = g.order
        length = rng.randint(2, 8)
        if i % 2 == 0:
            base = rng.randint(1, p - 1)
            terms = tuple(rng.choice((base, p - base)) for _ in range(length))
        else:
            terms = tuple(rng.randint(1, p - 1) for _ in range(length))
        rep = check_sequence_growth(SequenceOverGroup.from_indices(g, terms))
        applied += 1
        if not rep.holds:
            violations += 1
            _note(examples, {"group": g.spec_string, "terms": list(terms),
                             "report": rep.to_dict()})
    report = FuzzReport("2.9", "sequence sums grow past length, equality is rigid",
                        trials, applied, violations, seed, examples)
    if exhaustive:
        report.exhaustive = _exhaustive_sequences()
    return report


# -- campaign registry -------------------------------------------------------------

CAMPAIGNS: dict[str, Callable[[int, int, bool], FuzzReport]] = {
    "2.1": fuzz_folk,
    "2.2": fuzz_hamidoune,
    "2.3": fuzz_cauchy,
    "2.4": fuzz_diderrich,
    "2.5": fuzz_vosper,
    "2.6": fuzz_three_facts,
    "2.7": fuzz_growth,
    "2.8": fuzz_prime_growth,
    "2.9": fuzz_sequence,
}


def run_campaign(lemma: str, trials: int = DEFAULT_TRIALS, seed: int = 0,
                 exhaustive: bool = True) -> FuzzReport:
    try:
        fn = CAMPAIGNS[lemma]
    except KeyError:
        raise ValueError(
            f"unknown bound {lemma!r}; expected one of {', '.join(CAMPAIGNS)}"
        ) from None
    return fn(trials, seed, exhaustive)


def run_all_campaigns(trials: int = DEFAULT_TRIALS, seed: int = 0,
                      lemmas: list[str] | None = None,
                      exhaustive: bool = True) -> list[FuzzReport]:
    return [run_campaign(name, trials, seed, exhaustive)
            for name in (lemmas or list(CAMPAIGNS))]
