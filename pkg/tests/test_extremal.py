"""Enumeration and classification of maximal non-spanning sets."""

from __future__ import annotations

from collections import Counter

import pytest

import reference as ref
import spanlab as S


def _g(spec: str) -> S.GroupSpec:
    return S.parse_group_spec(spec)


def _tag_histogram(records) -> Counter:
    hist: Counter = Counter()
    for rec in records:
        hist.update(rec.tags)
    return hist


# ------------------------------------------------------- enumeration


def test_z15_census(z15_records):
    assert len(z15_records) == 28
    hist = _tag_histogram(z15_records)
    assert hist[S.UNCLASSIFIED] == 24
    assert hist[S.SHAPE_EX2] == 4
    assert hist[S.HAS_COMPLETE_SUBSET] == 0
    # literal enumeration: distinct sets, all of the extremal size
    seen = {tuple(sorted(r.indices)) for r in z15_records}
    assert len(seen) == 28
    cr = S.critical_number_formula(_g("Z15"))
    for rec in z15_records:
        assert len(rec.indices) == cr - 1 == 6
        assert 0 not in rec.indices
        assert not ref.spans_brute(rec.group, rec.indices)


def test_z16_census(z16_records):
    assert len(z16_records) == 1
    rec = z16_records[0]
    assert tuple(sorted(rec.indices)) == (2, 4, 6, 8, 10, 12, 14)
    assert set(rec.tags) == {S.SHAPE_I, S.SHAPE_II, S.SHAPE_B,
                             S.HAS_COMPLETE_SUBSET}


def test_z21_census(z21_records):
    assert len(z21_records) == 390
    hist = _tag_histogram(z21_records)
    assert hist[S.UNCLASSIFIED] == 358
    assert hist[S.HAS_COMPLETE_SUBSET] == 32
    assert hist[S.SHAPE_B] == 14
    assert hist[S.SHAPE_II] == 14
    assert hist[S.SHAPE_EX1] == 18
    assert hist[S.SHAPE_I] == 0
    assert hist[S.SHAPE_EX2] == 0


def test_enumeration_is_exhaustive_against_brute_force(z15_records):
    import itertools
    got = {tuple(sorted(r.indices)) for r in z15_records}
    g = _g("Z15")
    want = {combo for combo in itertools.combinations(range(1, 15), 6)
            if not ref.spans_brute(g, combo)}
    assert got == want


def test_enumeration_streams_are_deterministic():
    a = [tuple(r.indices) for r in S.enumerate_extremal(_g("Z15"))]
    b = [tuple(r.indices) for r in S.enumerate_extremal(_g("Z15"))]
    assert a == b


def test_orbit_dedup_keeps_one_representative_per_orbit(z15_records):
    g = _g("Z15")
    reduced = list(S.enumerate_extremal(g, orbit_dedup=True))
    literal_orbits = {g.canonical_bits_under_units(r.element_set.bits)
                      for r in z15_records}
    reduced_bits = [r.element_set.bits for r in reduced]
    assert len(reduced) == len(literal_orbits)
    assert {g.canonical_bits_under_units(b) for b in reduced_bits} == \
        literal_orbits
    assert len(set(reduced_bits)) == len(reduced_bits)


def test_enumeration_pause_and_resume_round_trip():
    g = _g("Z21")
    full = [tuple(r.indices) for r in S.enumerate_extremal(g)]
    enum = S.ExtremalEnumeration(g, budget=S.SearchBudget(max_nodes=3000))
    first = []
    state = None
    try:
        for rec in enum.records():
            first.append(tuple(rec.indices))
    except S.EnumerationPaused as pause:
        state = pause.state
    assert state is not None and 0 < len(first) < len(full)
    rest = [tuple(r.indices)
            for r in S.ExtremalEnumeration(g, checkpoint=state).records()]
    assert first + rest == full


def test_enumeration_rejects_checkpoint_from_other_group():
    enum = S.ExtremalEnumeration(_g("Z21"),
                                 budget=S.SearchBudget(max_nodes=3000))
    try:
        for _ in enum.records():
            pass
    except S.EnumerationPaused as pause:
        state = pause.state
    with pytest.raises(S.CheckpointMismatch):
        list(S.ExtremalEnumeration(_g("Z15"), checkpoint=state).records())


# ------------------------------------------------------ extremality


def test_is_extremal_and_failure_reasons():
    g = _g("Z15")
    good = S.ElementSet.from_indices(g, [1, 2, 3, 12, 13, 14])
    assert S.is_extremal(good)
    assert S.extremality_failure(good) is None
    spanning = S.ElementSet.from_indices(g, [1, 2, 3, 4, 5, 6])
    assert not S.is_extremal(spanning)
    assert "cover" in S.extremality_failure(spanning)
    wrong_size = S.ElementSet.from_indices(g, [1, 2, 3])
    assert "6" in S.extremality_failure(wrong_size)
    with_zero = S.ElementSet.from_indices(g, [0, 1, 2, 3, 12, 13])
    assert S.extremality_failure(with_zero) is not None


def test_classify_rejects_non_extremal_input():
    g = _g("Z15")
    with pytest.raises(ValueError):
        S.classify(S.ElementSet.from_indices(g, [1, 2, 3]))


# ------------------------------------------------------------- tags


def test_tags_match_independent_predicates(z15_records, z16_records,
                                           z21_records):
    sample = list(z15_records) + list(z16_records) + z21_records[::13]
    for rec in sample:
        g = rec.group
        idx = list(rec.indices)
        want = set()
        if ref.shape_subgroup_minus_zero(g, idx):
            want.add(S.SHAPE_I)
        if ref.shape_three_coset(g, idx):
            want.update((S.SHAPE_II, S.SHAPE_B))
        if ref.shape_small_three_coset(g, idx):
            want.add(S.SHAPE_EX1)
        if ref.shape_symmetric_interval(g, idx):
            want.add(S.SHAPE_EX2)
        if ref.contains_complete_subset_brute(g, idx):
            want.add(S.HAS_COMPLETE_SUBSET)
        if not want & {S.SHAPE_I, S.SHAPE_II, S.SHAPE_B, S.SHAPE_EX1,
                       S.SHAPE_EX2}:
            want.add(S.UNCLASSIFIED)
        assert set(rec.tags) == want, idx


def test_witnesses_reverify_by_direct_computation(z15_records, z16_records,
                                                  z21_records):
    for rec in list(z15_records) + list(z16_records) + list(z21_records):
        g = rec.group
        a = set(rec.indices)
        for tag, w in rec.witnesses.items():
            if tag == S.HAS_COMPLETE_SUBSET:
                k = set(w["subgroup"])
                assert ref.is_subgroup(g, k)
                inter = [i for i in a if i in k]
                assert ref.subset_sums_brute(g, inter) == k
                continue
            if tag == S.SHAPE_EX2:
                gen = w["generator"]
                assert g.element_order(gen) == g.order
                half = len(a) // 2
                acc, elems = 0, set()
                for _ in range(half):
                    acc = g.add(acc, gen)
                    elems.update((acc, g.neg(acc)))
                assert elems == a
                continue
            h = set(w["subgroup"])
            assert ref.is_subgroup(g, h)
            assert h - {0} <= a
            if tag == S.SHAPE_I:
                assert a == h - {0}
            else:  # SHAPE_II, SHAPE_B, SHAPE_EX1: three-coset containment
                gen = w["g"]
                cover = set(h)
                cover |= {g.add(gen, y) for y in h}
                cover |= {g.add(g.neg(gen), y) for y in h}
                assert a <= cover


def test_record_serialization_schema(z16_records):
    d = z16_records[0].to_dict()
    assert d["schema_version"] == 1
    assert d["group"] == "Z16"
    assert d["set"] == sorted(z16_records[0].indices)
    assert sorted(d["tags"]) == d["tags"]
    assert set(d) == {"schema_version", "group", "set", "tags",
                      "witnesses", "profile"}


# ---------------------------------------------------- coset profiles


def test_profiles_match_reference_computation(z15_records, z16_records,
                                              z21_records):
    checked = 0
    for rec in list(z15_records) + list(z16_records) + list(z21_records):
        prof = rec.profile
        if prof is None:
            continue
        checked += 1
        g = rec.group
        h_idx = list(prof.subgroup.elements.indices())
        lengths, k, r, m = ref.coset_profile_brute(g, rec.indices, h_idx)
        assert tuple(prof.lengths) == lengths
        assert prof.k == k
        assert tuple(prof.r) == r
        assert tuple(prof.m) == m
        # partition identity and monotonicity
        assert sum(prof.lengths) == len(rec.indices)
        tail = list(prof.lengths[1:])
        assert tail == sorted(tail, reverse=True)
    assert checked > 0


def test_coset_profile_direct_example():
    g = _g("Z15")
    a = S.ElementSet.from_indices(g, [1, 2, 3, 12, 13, 14])
    h = S.generated_subgroup(S.ElementSet.from_indices(g, [3]))  # order 5
    prof = S.coset_profile(a, h)
    assert prof.lengths[0] == 2          # {3, 12}
    assert prof.k == 2
    assert tuple(prof.lengths) == (2, 2, 2)
    assert tuple(prof.r) == (0, 2, 0, 0, 0)
    assert tuple(prof.m) == (2, 2, 0, 0, 0)


def test_coset_profile_of_subgroup_complement_case():
    g = _g("Z16")
    h = S.generated_subgroup(S.ElementSet.from_indices(g, [2]))
    a = S.ElementSet.from_indices(g, [i for i in range(2, 16, 2)])
    prof = S.coset_profile(a, h)
    assert prof.k == 0
    assert tuple(prof.lengths) == (7,)


def test_coset_profile_rejects_trivial_and_full_subgroups():
    g = _g("Z15")
    a = S.ElementSet.from_indices(g, [1, 2, 3, 12, 13, 14])
    with pytest.raises(ValueError):
        S.coset_profile(a, S.generated_subgroup(S.ElementSet.empty(g)))
    with pytest.raises(ValueError):
        S.coset_profile(a, S.generated_subgroup(
            S.ElementSet.from_indices(g, [1])))


# -------------------------------------------------------- observation


def test_observation_holds_for_every_record(z15_records, z16_records,
                                            z21_records):
    total = 0
    for rec in list(z15_records) + list(z16_records) + list(z21_records):
        rep = S.check_observation_31(rec.element_set)
        assert rep.holds
        total += 1
    assert total == 419


def test_observation_checks_are_meaningful(z16_records):
    rep = S.check_observation_31(z16_records[0].element_set)
    assert rep.holds
    assert rep.checks, "the even-elements set completes a subgroup"


# ---------------------------------------------------------- examples


@pytest.mark.parametrize("p,q", [(3, 7), (5, 11), (7, 13)])
def test_example_constructor_coset_variant(p, q):
    a = S.make_example_1(p, q)
    g = a.group
    assert g.order == p * q
    assert a.cardinality == p + q - 3 == S.critical_number_formula(g) - 1
    assert not ref.spans_brute(g, list(a.indices()))
    assert S.is_extremal(a)
    # the order-p subgroup is fully present minus zero
    k = next(h for h in S.all_subgroups(g) if h.order == p)
    inter = set(a.indices()) & set(k.elements.indices())
    assert inter == set(k.elements.indices()) - {0}


def test_example_constructor_coset_variant_rejects_bad_window():
    with pytest.raises(ValueError):
        S.make_example_1(3, 5)   # 5 < 3 + 2 + 1
    with pytest.raises(ValueError):
        S.make_example_1(3, 11)  # 11 > 2*3 + 3


def test_example_constructor_coset_variant_is_seeded():
    a = S.make_example_1(3, 7, seed=5)
    b = S.make_example_1(3, 7, seed=5)
    assert sorted(a.indices()) == sorted(b.indices())


@pytest.mark.parametrize("p,q", [(3, 5), (5, 7)])
def test_example_constructor_interval_variant(p, q):
    a = S.make_example_2(p, q)
    g = a.group
    assert g.order == p * q
    assert a.cardinality == p + q - 2 == S.critical_number_formula(g) - 1
    assert not ref.spans_brute(g, list(a.indices()))
    assert S.is_extremal(a)
    assert ref.shape_symmetric_interval(g, list(a.indices()))


def test_example_constructor_interval_variant_hand_value():
    a = S.make_example_2(3, 5)
    assert sorted(a.indices()) == [1, 2, 3, 12, 13, 14]


def test_example_constructor_interval_variant_rejects_bad_window():
    with pytest.raises(ValueError):
        S.make_example_2(3, 11)  # q > p + floor(2 sqrt(p-2)) + 1
    with pytest.raises(ValueError):
        S.make_example_2(5, 3)   # needs p < q


# -------------------------------------------------------- conjectures


def test_conjecture_certificate_for_interval_shape(z15_records):
    rep = S.check_conjecture(2, 3, 5)
    assert rep.outcome == "REFUTED"
    assert rep.which == 2 and (rep.p, rep.q) == (3, 5)
    assert rep.group == "Z15"
    assert rep.extremal_count == 28
    assert rep.failing_count == 24
    assert len(rep.records) == 28
    assert len(rep.counterexamples) == 24
    assert rep.orbit_dedup is False
    refuting = {tuple(c["set"]) for c in rep.counterexamples}
    want = {tuple(sorted(r.indices)) for r in z15_records
            if S.SHAPE_EX2 not in r.tags}
    assert refuting == want


def test_conjecture_certificate_for_complete_subset(z21_records):
    rep = S.check_conjecture(1, 3, 7)
    assert rep.outcome == "REFUTED"
    assert rep.group == "Z21"
    assert rep.extremal_count == 390
    assert rep.failing_count == 358
    want = {tuple(sorted(r.indices)) for r in z21_records
            if S.HAS_COMPLETE_SUBSET not in r.tags}
    assert {tuple(c["set"]) for c in rep.counterexamples} == want


def test_conjecture_windows_are_enforced():
    with pytest.raises(ValueError):
        S.check_conjecture(1, 3, 5)   # 5 < 6: outside the open window
    with pytest.raises(ValueError):
        S.check_conjecture(2, 3, 7)   # 7 > 6: outside the closed window


# -------------------------------------------------- structure theorem


def test_structure_theorem_hypothesis_detection():
    assert S.theorem_main_hypothesis(_g("Z33")) == "odd"
    assert S.theorem_main_hypothesis(_g("Z36")) == "even"
    for spec in ("Z15", "Z16", "Z21", "Z25"):
        with pytest.raises(ValueError):
            S.theorem_main_hypothesis(_g(spec))


@pytest.mark.extended
@pytest.mark.parametrize("spec,tag", [("Z33", S.SHAPE_II), ("Z36", S.SHAPE_I)])
def test_structure_theorem_extended_runs(spec, tag):
    rep = S.verify_theorem_main(_g(spec), budget=S.SearchBudget(extended=True),
                                orbit_dedup=True)
    assert rep.outcome == "VERIFIED"
    assert rep.required_tag == tag
    assert not rep.violations
    assert rep.extremal_count > 0
    assert rep.tag_counts.get(tag) == rep.extremal_count
