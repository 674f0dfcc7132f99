"""Search engines against exhaustive brute force; pause/resume identity."""

from __future__ import annotations

import itertools

import pytest

import reference as ref
import spanlab as S


# ----------------------------------------------------- brute parity


@pytest.mark.parametrize("spec", ["Z5", "Z7", "Z8", "Z9", "Z2xZ4"])
def test_max_avoiding_matches_brute_force_every_target(spec):
    g = S.parse_group_spec(spec)
    for target in range(1, g.order):
        # largest A in G \ {0} with target not in Sigma(A)
        best = 0
        for r in range(1, g.order):
            ok = any(
                target not in ref.subset_sums_brute(g, combo)
                for combo in itertools.combinations(range(1, g.order), r))
            if not ok:
                break
            best = r
        res = S.max_avoiding(g, target)
        assert res.complete
        assert res.size == best, (spec, target)
        assert target not in ref.subset_sums_brute(g, res.witness)
        assert len(res.witness) == res.size


def test_max_avoiding_prune_toggle_agrees():
    g = S.parse_group_spec("Z11")
    for target in range(1, 11):
        fast = S.max_avoiding(g, target, use_prune=True)
        slow = S.max_avoiding(g, target, use_prune=False)
        assert fast.size == slow.size


def test_max_avoiding_floor_reports_only_larger_witnesses():
    g = S.parse_group_spec("Z9")
    baseline = S.max_avoiding(g, 1)
    assert baseline.witness is not None
    # nothing strictly larger exists, so the floor comes back untouched
    at_floor = S.max_avoiding(g, 1, floor=baseline.size)
    assert at_floor.size == baseline.size and at_floor.witness is None
    below = S.max_avoiding(g, 1, floor=baseline.size - 1)
    assert below.size == baseline.size and below.witness == baseline.witness


def test_budget_exhaustion_reports_incomplete():
    g = S.parse_group_spec("Z21")
    res = S.max_avoiding(g, 1, budget=S.SearchBudget(max_nodes=10))
    assert not res.complete


@pytest.mark.parametrize("spec,expected", [("Z7", 3), ("Z9", 4), ("Z15", 6)])
def test_brute_force_max_nonspanning(spec, expected):
    g = S.parse_group_spec(spec)
    size, witness = S.brute_force_max_nonspanning(g)
    assert size == expected
    assert not ref.spans_brute(g, witness)
    ref_size, ref_witness = ref.max_nonspanning_brute(g)
    assert (size, witness) == (ref_size, ref_witness)


# ----------------------------------------------------------- targets


def test_target_representatives_cover_unit_orbits():
    # 0 is a legitimate missing element, so it is always a target
    g = S.parse_group_spec("Z12")
    full = S.target_representatives(g, reduce_orbits=False)
    assert sorted(full) == list(range(12))
    reps = S.target_representatives(g, reduce_orbits=True)
    # orbits of Z12 under units {1,5,7,11}: one representative each
    orbits = set()
    for t in range(12):
        orbits.add(frozenset(t * u % 12 for u in (1, 5, 7, 11)))
    assert len(reps) == len(orbits) == 6
    covered = {frozenset(t * u % 12 for u in (1, 5, 7, 11)) for t in reps}
    assert covered == orbits


# ------------------------------------------------------ enumerators


def test_sized_enumerator_yields_exactly_the_nonspanning_sets():
    g = S.parse_group_spec("Z9")
    got = {idx for idx, _ in S.SizedEnumerator(g, 3).run()}
    want = {combo for combo in itertools.combinations(range(1, 9), 3)
            if not ref.spans_brute(g, combo)}
    assert got == want


def test_avoiding_enumerator_yields_exactly_the_avoiding_sets():
    g = S.parse_group_spec("Z9")
    target = 4
    got = {idx for idx, _ in S.AvoidingEnumerator(g, target, 3).run()}
    want = {combo for combo in itertools.combinations(range(1, 9), 3)
            if target not in ref.subset_sums_brute(g, combo)}
    assert got == want


def test_enumerator_sigma_bits_are_correct():
    g = S.parse_group_spec("Z9")
    for idx, sig in S.SizedEnumerator(g, 3).run():
        assert {i for i in range(9) if sig >> i & 1} == \
            ref.subset_sums_brute(g, idx)


def test_sized_enumerator_rejects_bad_size():
    g = S.parse_group_spec("Z9")
    with pytest.raises(ValueError):
        S.SizedEnumerator(g, 0)
    with pytest.raises(ValueError):
        S.SizedEnumerator(g, 9)


# ---------------------------------------------------- pause/resume


def _drain_with_pauses(make, budget_nodes: int):
    """Run an enumerator in budget-limited slices until it finishes."""
    out = []
    state = None
    for _ in range(10_000):
        enum = make(state)
        try:
            for item in enum.run():
                out.append(item)
        except S.EnumerationPaused as pause:
            state = pause.state
            continue
        return out, enum.state()
    raise AssertionError("enumeration never completed")


def test_sized_enumerator_resume_is_lossless():
    g = S.parse_group_spec("Z15")
    uninterrupted = list(S.SizedEnumerator(g, 6).run())

    def make(state):
        budget = S.SearchBudget(max_nodes=500)
        if state is None:
            return S.SizedEnumerator(g, 6, budget)
        return S.SizedEnumerator.from_state(g, state, budget)

    chunked, final_state = _drain_with_pauses(make, 500)
    assert chunked == uninterrupted
    assert final_state["done"] is True


def test_avoiding_enumerator_resume_is_lossless():
    g = S.parse_group_spec("Z15")
    uninterrupted = list(S.AvoidingEnumerator(g, 2, 6).run())

    def make(state):
        budget = S.SearchBudget(max_nodes=400)
        if state is None:
            return S.AvoidingEnumerator(g, 2, 6, budget)
        return S.AvoidingEnumerator.from_state(g, state, budget)

    chunked, _ = _drain_with_pauses(make, 400)
    assert chunked == uninterrupted


def test_from_state_rejects_foreign_checkpoints():
    g15 = S.parse_group_spec("Z15")
    g9 = S.parse_group_spec("Z9")
    state = S.SizedEnumerator(g15, 6).state()
    with pytest.raises(S.CheckpointMismatch):
        S.SizedEnumerator.from_state(g9, state)
    with pytest.raises(S.CheckpointMismatch):
        S.AvoidingEnumerator.from_state(g15, state)  # wrong kind
    bad = dict(state, engine="bogus-version")
    with pytest.raises(S.CheckpointMismatch):
        S.SizedEnumerator.from_state(g15, bad)
