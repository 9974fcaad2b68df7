"""Exhaustive search engine: exactness against subset enumeration,
determinism, guards and the validation sweep."""

import random
from itertools import combinations, product

import pytest

from basisbound.errors import HypothesisViolationError, ResourceGuardError
from basisbound.families import distance_set, hamming_distance
from basisbound.search import (
    PRED_DIST_CONST,
    PRED_DIST_MOD,
    PRED_DIST_SET,
    PRED_INTERSECT_CONST,
    SearchProblem,
    max_with_distance_count,
    search_max,
    sweep_bound_grid,
)


def brute_max_size(n, q, pair_ok):
    """Largest pairwise-compatible subset by direct subset enumeration."""
    vectors = list(product(range(q), repeat=n))
    count = len(vectors)
    ok = [[pair_ok(vectors[i], vectors[j]) for j in range(count)] for i in range(count)]
    best = 1
    for size in range(2, count + 1):
        found = False
        for combo in combinations(range(count), size):
            if all(ok[a][b] for a, b in combinations(combo, 2)):
                found = True
                break
        if not found:
            break
        best = size
    return best


def test_constant_distance_examples():
    result = search_max(SearchProblem(3, 2, PRED_DIST_CONST, lam=2))
    assert result.max_size == 4
    result = search_max(SearchProblem(3, 2, PRED_DIST_CONST, lam=1))
    assert result.max_size == 2


def test_mod_distance_example_tight_row():
    result = search_max(SearchProblem(4, 2, PRED_DIST_MOD, lam=2, p=3))
    assert result.max_size == 4
    assert result.witness.vectors == (
        (0, 0, 0, 0),
        (0, 0, 1, 1),
        (0, 1, 0, 1),
        (0, 1, 1, 0),
    )


@pytest.mark.parametrize(
    "n,q,predicate,kwargs,pair_ok",
    [
        (3, 2, PRED_DIST_CONST, {"lam": 2}, lambda u, v: hamming_distance(u, v) == 2),
        (3, 2, PRED_DIST_MOD, {"lam": 1, "p": 3}, lambda u, v: hamming_distance(u, v) % 3 == 1),
        (2, 3, PRED_DIST_CONST, {"lam": 2}, lambda u, v: hamming_distance(u, v) == 2),
        (3, 2, PRED_DIST_SET, {"allowed": (1, 3)}, lambda u, v: hamming_distance(u, v) in (1, 3)),
        (
            3,
            2,
            PRED_INTERSECT_CONST,
            {"lam": 1},
            lambda u, v: sum(1 for a, b in zip(u, v) if a and b) == 1,
        ),
    ],
)
def test_search_matches_subset_enumeration(n, q, predicate, kwargs, pair_ok):
    result = search_max(SearchProblem(n, q, predicate, **kwargs))
    assert result.max_size == brute_max_size(n, q, pair_ok)


def test_witness_satisfies_predicate_independently():
    problem = SearchProblem(4, 2, PRED_DIST_MOD, lam=2, p=3)
    witness = search_max(problem).witness
    profile = distance_set(witness)
    assert all(d % 3 == 2 for d in profile.distances)


def test_witness_is_lexicographically_least():
    """Exhaustive cross-check of the witness canon on a small instance."""
    problem = SearchProblem(3, 2, PRED_DIST_CONST, lam=2)
    result = search_max(problem)
    vectors = list(product(range(2), repeat=3))
    best = None
    for combo in combinations(vectors, result.max_size):
        if all(hamming_distance(u, v) == 2 for u, v in combinations(combo, 2)):
            best = combo
            break  # combinations enumerate lexicographically
    assert result.witness.vectors == best


def test_order_permutation_hook_preserves_max_size():
    problem = SearchProblem(4, 2, PRED_DIST_MOD, lam=2, p=3)
    baseline = search_max(problem).max_size
    rng = random.Random(17)
    order = list(range(16))
    for _ in range(5):
        rng.shuffle(order)
        assert search_max(problem, _order=list(order)).max_size == baseline


@pytest.mark.parametrize("jobs", [2, 4])
def test_parallel_matches_serial(jobs):
    for problem in (
        SearchProblem(4, 2, PRED_DIST_MOD, lam=2, p=3),
        SearchProblem(3, 3, PRED_DIST_CONST, lam=2),
        SearchProblem(4, 2, PRED_DIST_SET, allowed=(2, 4)),
    ):
        serial = search_max(problem, jobs=1)
        parallel = search_max(problem, jobs=jobs)
        assert parallel.max_size == serial.max_size
        assert parallel.witness == serial.witness


def test_target_size_early_exit():
    problem = SearchProblem(4, 2, PRED_DIST_MOD, lam=2, p=3, target_size=2)
    result = search_max(problem)
    assert result.max_size >= 2
    assert not result.exhaustive


def test_constant_distance_bound_when_lambda_not_half():
    """Families with constant distance != (n+1)/2 have at most n members."""
    for n in range(1, 5):
        for lam in range(1, n + 1):
            if 2 * lam == n + 1:
                continue
            result = search_max(SearchProblem(n, 2, PRED_DIST_CONST, lam=lam))
            assert result.max_size <= n


def test_exceptional_lambda_reaches_n_plus_1():
    result = search_max(SearchProblem(3, 2, PRED_DIST_CONST, lam=2))
    assert result.max_size == 4


def test_space_guard():
    with pytest.raises(ResourceGuardError):
        search_max(SearchProblem(30, 2, PRED_DIST_CONST, lam=2))
    # explicit override admits the space
    result = search_max(
        SearchProblem(3, 2, PRED_DIST_CONST, lam=2), max_space=8
    )
    assert result.max_size == 4
    with pytest.raises(ResourceGuardError):
        search_max(SearchProblem(3, 2, PRED_DIST_CONST, lam=2), max_space=7)


def test_space_guard_env_override(monkeypatch):
    monkeypatch.setenv("EXTREMAL_MAX_SPACE", "7")
    with pytest.raises(ResourceGuardError):
        search_max(SearchProblem(3, 2, PRED_DIST_CONST, lam=2))
    monkeypatch.setenv("EXTREMAL_MAX_SPACE", "8")
    assert search_max(SearchProblem(3, 2, PRED_DIST_CONST, lam=2)).max_size == 4


def test_problem_validation():
    with pytest.raises(HypothesisViolationError):
        SearchProblem(3, 3, PRED_INTERSECT_CONST, lam=1)  # needs q = 2
    with pytest.raises(HypothesisViolationError):
        SearchProblem(3, 2, PRED_DIST_CONST, lam=0)
    import basisbound.errors as errors

    with pytest.raises(errors.MalformedInputError):
        SearchProblem(3, 2, PRED_DIST_SET, allowed=(0, 1))
    with pytest.raises(errors.MalformedInputError):
        SearchProblem(3, 2, "bogus")


def test_max_with_distance_count_matches_brute_force():
    exact = max_with_distance_count(3, 2, 1)
    by_sets = max(
        brute_max_size(3, 2, lambda u, v, d=d: hamming_distance(u, v) == d)
        for d in (1, 2, 3)
    )
    assert exact == by_sets == 4


def test_sweep_grid_report():
    report = sweep_bound_grid(3, 3, 5)
    assert report["violations"] == 0
    statuses = {row["status"] for row in report["mod_distance_rows"]}
    assert any(s.startswith("excluded(") for s in statuses)
    assert "ok" in statuses
    tight = [r for r in report["mod_distance_rows"] if r.get("tight")]
    assert tight, "expected at least one tight row"
    assert all(row["ok"] for row in report["delsarte_rows"])
