"""Backend selection and pure/compiled kernel equivalence."""

import random
from itertools import product

import pytest

from basisbound import _kernel_py, kernel

try:
    from basisbound import _speedups
except ImportError:
    _speedups = None

needs_compiled = pytest.mark.skipif(
    _speedups is None, reason="compiled kernel not built"
)


def test_backend_reported():
    import os

    assert kernel.BACKEND in ("pure", "compiled")
    forced_pure = os.environ.get("BASISBOUND_PURE", "") not in ("", "0")
    if _speedups is not None and not forced_pure:
        assert kernel.BACKEND == "compiled"


def random_graph(rng, count, density):
    adj = [0] * count
    for i in range(count):
        for j in range(i + 1, count):
            if rng.random() < density:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


@needs_compiled
def test_extend_max_equivalence_on_random_graphs():
    rng = random.Random(424242)
    for _ in range(120):
        count = rng.randint(0, 60)
        adj = random_graph(rng, count, rng.uniform(0, 0.5))
        lower = rng.randint(0, 3)
        target = rng.choice([0, 0, rng.randint(1, 6)])
        assert _kernel_py.extend_max(adj, count, (), lower, target) == \
            _speedups.extend_max(adj, count, (), lower, target)


@needs_compiled
def test_extend_max_equivalence_with_prefix():
    rng = random.Random(7)
    for _ in range(60):
        count = rng.randint(2, 50)
        adj = random_graph(rng, count, 0.4)
        if not adj[0]:
            continue
        j = (adj[0] & -adj[0]).bit_length() - 1
        assert _kernel_py.extend_max(adj, count, (0, j), 0, 0) == \
            _speedups.extend_max(adj, count, (0, j), 0, 0)


@needs_compiled
def test_first_clique_equivalence():
    rng = random.Random(11)
    for _ in range(60):
        count = rng.randint(1, 50)
        adj = random_graph(rng, count, 0.4)
        size = _kernel_py.extend_max(adj, count, (), 0, 0)[0]
        assert _kernel_py.first_clique_of_size(adj, count, size) == \
            _speedups.first_clique_of_size(adj, count, size)
        assert _speedups.first_clique_of_size(adj, count, count + 1) is None


@needs_compiled
def test_complete_graphs_beyond_word_sizes():
    """Counts straddling the 32- and 64-bit boundaries."""
    for count in (31, 32, 33, 63, 64, 65, 100):
        adj = [((1 << count) - 1) ^ (1 << i) for i in range(count)]
        expected = (count, tuple(range(count)))
        for impl in (_kernel_py, _speedups):
            size, witness, _ = impl.extend_max(adj, count, (), 0, 0)
            assert (size, witness) == expected


@needs_compiled
@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 2)])
def test_adjacency_equivalence(q, n):
    vectors = [bytes(v) for v in product(range(q), repeat=n)]
    cases = [
        (kernel.MODE_DIST_EQ, 2, 0, 0),
        (kernel.MODE_DIST_MOD, 1, 3, 0),
        (kernel.MODE_DIST_SET, 0, 0, 0b0110),
    ]
    if q == 2:
        cases.append((kernel.MODE_INTERSECT, 1, 0, 0))
    for mode, m1, m2, mask in cases:
        assert _kernel_py.adjacency(vectors, n, mode, m1, m2, mask) == \
            _speedups.adjacency(vectors, n, mode, m1, m2, mask)


def test_pure_kernel_empty_and_trivial():
    assert _kernel_py.extend_max([], 0, (), 0, 0) == (0, None, 0)
    assert _kernel_py.extend_max([0], 1, (), 0, 0) == (1, (0,), 2)
    assert _kernel_py.first_clique_of_size([0], 1, 1) == (0,)
    assert _kernel_py.first_clique_of_size([0], 1, 2) is None
    assert _kernel_py.first_clique_of_size([], 0, 0) == ()


def test_pure_env_override(monkeypatch):
    import importlib

    monkeypatch.setenv("BASISBOUND_PURE", "1")
    import basisbound.kernel as kernel_module

    reloaded = importlib.reload(kernel_module)
    try:
        assert reloaded.BACKEND == "pure"
    finally:
        monkeypatch.delenv("BASISBOUND_PURE")
        importlib.reload(kernel_module)
