import itertools
import json
import logging
import random

import pytest

from cnotswap.gates import GateKind, as_linear_map, cnot1_perm, cnot2_perm, swap_perm
from cnotswap.perm import CostGuardError, Perm
from cnotswap.synthesis import (
    GateWord,
    GroupCensus,
    GroupTooLarge,
    SearchOutcome,
    apply_word,
    bidirectional_find,
    census_payload,
    enumerate_group,
    find_word,
    group_elements,
)

C1, C2 = GateKind.CNOT1, GateKind.CNOT2


def word(d, *letters):
    return GateWord(d=d, letters=tuple(letters))


def eval_letters(d, letters):
    """Test-local evaluator: explicit left fold of gate tables."""
    gates = {C1: cnot1_perm(d), C2: cnot2_perm(d)}
    acc = Perm.identity(d * d)
    for letter in letters:
        acc = gates[letter] * acc
    return acc


def naive_closure(d):
    """Independent oracle: repeated multiplication until no new elements."""
    gens = [cnot1_perm(d), cnot2_perm(d)]
    elems = {Perm.identity(d * d)}
    while True:
        grown = elems | {g * x for g in gens for x in elems}
        if grown == elems:
            return elems
        elems = grown


def sl2_order(d):
    """Order of SL(2, Z_d): d**3 times prod over prime p | d of (1 - p**-2)."""
    order = d**3
    rest = d
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            order = order * (p * p - 1) // (p * p)
            while rest % p == 0:
                rest //= p
        p += 1
    if rest > 1:
        order = order * (rest * rest - 1) // (rest * rest)
    return order


# -- word evaluation --


def test_empty_word_is_identity():
    assert apply_word(word(3)) == Perm.identity(9)


def test_three_cnot_qubit_swap():
    assert apply_word(word(2, C1, C2, C1)) == swap_perm(2)


@pytest.mark.parametrize("d", range(1, 11))
def test_cnot_repeated_d_times_is_identity(d):
    assert apply_word(word(d, *([C1] * d))) == Perm.identity(d * d)


def test_apply_word_matches_explicit_fold():
    rng = random.Random(7)
    for _ in range(20):
        d = rng.randint(1, 5)
        letters = tuple(rng.choice([C1, C2]) for _ in range(rng.randint(0, 8)))
        assert apply_word(word(d, *letters)) == eval_letters(d, letters)


def test_word_rejects_non_generator_letters():
    with pytest.raises(ValueError):
        GateWord(d=2, letters=(GateKind.SWAP,))


def test_word_rejects_dimension_zero():
    with pytest.raises(ValueError):
        GateWord(d=0, letters=())


def test_word_evaluation_guard():
    with pytest.raises(CostGuardError):
        apply_word(word(65))


# -- group enumeration --


def test_enumerate_degenerate_dimension():
    census = enumerate_group(1)
    assert census == GroupCensus(d=1, order=1, diameter=0, counts_by_depth=(1,))


def test_enumerate_qubit_group():
    census = enumerate_group(2)
    assert census.order == 6
    assert census.diameter == 3
    assert census.counts_by_depth == (1, 2, 2, 1)


def test_enumerate_qutrit_group():
    census = enumerate_group(3)
    assert census.order == 24
    assert census.counts_by_depth[0] == 1
    assert sum(census.counts_by_depth) == census.order
    assert census.diameter == len(census.counts_by_depth) - 1


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_order_matches_naive_closure(d):
    assert enumerate_group(d).order == len(naive_closure(d))


@pytest.mark.parametrize("d", range(1, 11))
def test_order_matches_sl2_formula(d):
    # the generators act as the elementary 2x2 matrices over Z_d
    assert enumerate_group(d).order == sl2_order(d)


def test_element_cap_yields_too_large():
    result = enumerate_group(3, max_elements=10)
    assert isinstance(result, GroupTooLarge)
    assert result.d == 3
    assert result.max_elements == 10
    assert result.elements_found == 10


def test_cap_equal_to_order_still_completes():
    census = enumerate_group(2, max_elements=6)
    assert isinstance(census, GroupCensus)
    assert census.order == 6


def test_dimension_guard_is_overridable():
    with pytest.raises(CostGuardError):
        enumerate_group(5, max_dimension=4)
    assert enumerate_group(5, max_dimension=5).order == 120


def test_group_elements_bfs_order():
    elems = group_elements(2)
    assert len(elems) == 6
    assert elems[0] == Perm.identity(4)
    assert elems[1] == cnot1_perm(2)
    assert elems[2] == cnot2_perm(2)
    assert swap_perm(2) in elems


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_every_element_is_linear_with_unit_determinant(d):
    for p in group_elements(d):
        lm = as_linear_map(p, d)
        assert lm is not None
        assert lm.determinant() == 1 % d


@pytest.mark.parametrize("d", [3, 5, 7])
def test_every_element_is_even_for_odd_dimensions(d):
    for p in group_elements(d):
        assert p.signature() == 1


# -- shortest-word search --


def test_find_word_qubit_swap():
    result = find_word(2, swap_perm(2))
    assert result.outcome is SearchOutcome.FOUND
    assert result.word.letters == (C1, C2, C1)
    assert apply_word(result.word) == swap_perm(2)


def test_find_word_qutrit_swap_unreachable():
    result = find_word(3, swap_perm(3))
    assert result.outcome is SearchOutcome.UNREACHABLE_EXHAUSTED
    assert result.group_order == 24
    assert result.diameter == enumerate_group(3).diameter


def test_find_word_generator_at_depth_one():
    result = find_word(3, cnot1_perm(3))
    assert result.outcome is SearchOutcome.FOUND
    assert result.word.letters == (C1,)


def test_find_word_identity_target():
    result = find_word(3, Perm.identity(9), max_depth=0)
    assert result.outcome is SearchOutcome.FOUND
    assert result.word.letters == ()


def test_find_word_depth_limit():
    result = find_word(3, swap_perm(3), max_depth=0)
    assert result.outcome is SearchOutcome.DEPTH_LIMIT
    assert result.explored_depth == 0
    assert result.frontier_size == 1


def test_find_word_depth_boundary():
    # the qubit swap needs exactly three letters
    capped = find_word(2, swap_perm(2), max_depth=2)
    assert capped.outcome is SearchOutcome.DEPTH_LIMIT
    exact = find_word(2, swap_perm(2), max_depth=3)
    assert exact.outcome is SearchOutcome.FOUND


def test_completed_closure_beats_depth_cap():
    # the d = 2 closure finishes at depth 4 expansion; a larger cap must
    # still certify unreachability for a target outside the group
    odd_target = Perm([1, 0, 2, 3])
    result = find_word(2, odd_target, max_depth=50)
    assert result.outcome is SearchOutcome.UNREACHABLE_EXHAUSTED
    assert result.group_order == 6


def test_find_word_element_cap_is_inconclusive():
    # a truncated closure must never masquerade as an unreachability proof
    result = find_word(3, swap_perm(3), max_elements=5)
    assert result.outcome is SearchOutcome.DEPTH_LIMIT


def test_find_word_size_mismatch():
    with pytest.raises(ValueError):
        find_word(2, Perm.identity(9))


def test_find_word_negative_depth():
    with pytest.raises(ValueError):
        find_word(2, swap_perm(2), max_depth=-1)


def test_qubit_depths_match_brute_force():
    # every d = 2 group element: BFS depth == true shortest word length
    by_perm = {}
    for length in range(0, 7):
        for letters in itertools.product([C1, C2], repeat=length):
            p = eval_letters(2, letters)
            by_perm.setdefault(p, length)
    assert len(by_perm) == 6
    for p, shortest in by_perm.items():
        result = find_word(2, p)
        assert result.outcome is SearchOutcome.FOUND
        assert len(result.word) == shortest
        assert apply_word(result.word) == p


def test_found_words_are_lexicographically_least():
    # recompute the least witness for each d = 2 element by brute force
    order = {C1: 0, C2: 1}
    for p in group_elements(2):
        result = find_word(2, p)
        length = len(result.word)
        witnesses = [
            letters
            for letters in itertools.product([C1, C2], repeat=length)
            if eval_letters(2, letters) == p
        ]
        least = min(witnesses, key=lambda w: [order[l] for l in w])
        assert result.word.letters == least


# -- determinism --


def test_enumerate_is_deterministic_across_runs_and_workers():
    base = enumerate_group(5)
    assert enumerate_group(5) == base
    assert enumerate_group(5, workers=2) == base
    assert enumerate_group(5, workers=3) == base


def test_find_word_deterministic_across_workers():
    base = find_word(4, cnot2_perm(4) * cnot1_perm(4))
    again = find_word(4, cnot2_perm(4) * cnot1_perm(4), workers=2)
    assert base == again


def test_workers_identical_once_chunking_kicks_in():
    # d = 7 frontiers exceed the 64-row threshold, so threads really split
    base = enumerate_group(7)
    assert max(base.counts_by_depth) > 64
    assert enumerate_group(7, workers=3) == base
    serial = find_word(7, swap_perm(7))
    assert find_word(7, swap_perm(7), workers=3) == serial


# -- bidirectional search --


def test_bidirectional_matches_unidirectional_on_swap():
    for d in (1, 2, 3, 4, 5):
        uni = find_word(d, swap_perm(d))
        bi = bidirectional_find(d, swap_perm(d))
        assert bi.outcome is uni.outcome
        assert bi.word == uni.word
        assert bi.group_order == uni.group_order
        assert bi.diameter == uni.diameter


def test_bidirectional_matches_on_group_elements():
    rng = random.Random(20260810)
    for d in (2, 3, 4, 5):
        elems = group_elements(d)
        targets = [elems[0], elems[-1]] + rng.sample(elems, min(10, len(elems)))
        for target in targets:
            uni = find_word(d, target)
            bi = bidirectional_find(d, target)
            assert uni.outcome is SearchOutcome.FOUND
            assert bi.outcome is SearchOutcome.FOUND
            assert bi.word == uni.word
            assert apply_word(bi.word) == target


def test_bidirectional_matches_on_unreachable_targets():
    odd_target = Perm([1, 0] + list(range(2, 9)))
    uni = find_word(3, odd_target)
    bi = bidirectional_find(3, odd_target)
    assert uni.outcome is bi.outcome is SearchOutcome.UNREACHABLE_EXHAUSTED
    assert (bi.group_order, bi.diameter) == (uni.group_order, uni.diameter)


def test_bidirectional_identity_at_depth_zero():
    result = bidirectional_find(3, Perm.identity(9), max_total_depth=0)
    assert result.outcome is SearchOutcome.FOUND
    assert result.word.letters == ()


def test_bidirectional_depth_limit():
    capped = bidirectional_find(2, swap_perm(2), max_total_depth=2)
    assert capped.outcome is SearchOutcome.DEPTH_LIMIT
    exact = bidirectional_find(2, swap_perm(2), max_total_depth=3)
    assert exact.outcome is SearchOutcome.FOUND
    assert exact.word.letters == (C1, C2, C1)


def test_bidirectional_element_cap_is_inconclusive():
    result = bidirectional_find(3, swap_perm(3), max_elements=5)
    assert result.outcome is SearchOutcome.DEPTH_LIMIT


def test_capped_searches_agree_whenever_both_conclude():
    # the two searches split a depth budget differently, so one may be
    # conclusive where the other is not; conclusive answers must coincide
    # and every one of them must be independently true
    rng = random.Random(3141)
    for d in (2, 3):
        elems = group_elements(d)
        true_dist = {}
        for p in elems:
            true_dist[p] = len(find_word(d, p).word.letters)
        odd = Perm([1, 0] + list(range(2, d * d)))
        targets = elems + [odd]
        for target in targets:
            for cap in (0, 1, 2, 3, 5, 8):
                uni = find_word(d, target, max_depth=cap)
                bi = bidirectional_find(d, target, max_total_depth=cap)
                for res in (uni, bi):
                    if res.outcome is SearchOutcome.FOUND:
                        assert target in true_dist
                        assert len(res.word) == true_dist[target] <= cap
                        assert apply_word(res.word) == target
                    elif res.outcome is SearchOutcome.UNREACHABLE_EXHAUSTED:
                        assert target not in true_dist
                if (uni.outcome is not SearchOutcome.DEPTH_LIMIT
                        and bi.outcome is not SearchOutcome.DEPTH_LIMIT):
                    assert uni.outcome is bi.outcome
                    assert uni.word == bi.word


def test_bidirectional_size_mismatch():
    with pytest.raises(ValueError):
        bidirectional_find(2, Perm.identity(9))


# -- census cache --


def test_cache_round_trip(tmp_path):
    first = enumerate_group(3, cache_dir=tmp_path)
    files = list(tmp_path.glob("census-d3-*.json"))
    assert len(files) == 1
    stored = files[0].read_bytes()
    second = enumerate_group(3, cache_dir=tmp_path)
    assert second == first
    assert files[0].read_bytes() == stored
    # a cached census must be bit-identical to recomputation
    assert first == enumerate_group(3)


def test_cache_rewrite_is_byte_stable(tmp_path):
    enumerate_group(3, cache_dir=tmp_path)
    path = next(tmp_path.glob("census-d3-*.json"))
    stored = path.read_bytes()
    path.unlink()
    enumerate_group(3, cache_dir=tmp_path)
    assert path.read_bytes() == stored


def test_corrupt_cache_is_ignored_with_warning(tmp_path, caplog):
    enumerate_group(3, cache_dir=tmp_path)
    path = next(tmp_path.glob("census-d3-*.json"))
    path.write_text("{not json")
    with caplog.at_level(logging.WARNING, logger="cnotswap.synthesis"):
        census = enumerate_group(3, cache_dir=tmp_path)
    assert census.order == 24
    assert any("cache" in rec.message for rec in caplog.records)
    # the bad file was replaced by a fresh valid one
    assert json.loads(path.read_text())["census"]["order"] == 24


def test_version_mismatched_cache_is_ignored(tmp_path, caplog):
    enumerate_group(3, cache_dir=tmp_path)
    path = next(tmp_path.glob("census-d3-*.json"))
    data = json.loads(path.read_text())
    data["version"] = "0.0.0-other"
    path.write_text(json.dumps(data))
    with caplog.at_level(logging.WARNING, logger="cnotswap.synthesis"):
        census = enumerate_group(3, cache_dir=tmp_path)
    assert census.order == 24
    assert any("mismatch" in rec.message for rec in caplog.records)


def test_tampered_census_payload_is_ignored(tmp_path, caplog):
    enumerate_group(3, cache_dir=tmp_path)
    path = next(tmp_path.glob("census-d3-*.json"))
    data = json.loads(path.read_text())
    data["census"]["order"] = 23  # no longer matches the layer counts
    path.write_text(json.dumps(data))
    with caplog.at_level(logging.WARNING, logger="cnotswap.synthesis"):
        census = enumerate_group(3, cache_dir=tmp_path)
    assert census.order == 24


def test_cached_run_with_smaller_cap_recomputes(tmp_path):
    enumerate_group(3, cache_dir=tmp_path)
    result = enumerate_group(3, cache_dir=tmp_path, max_elements=10)
    assert isinstance(result, GroupTooLarge)


def test_census_payload_schema():
    payload = census_payload(enumerate_group(2))
    assert payload == {
        "d": 2,
        "order": 6,
        "diameter": 3,
        "counts_by_depth": [1, 2, 2, 1],
    }
