"""Pure-Python search kernel: pairwise compatibility masks and the
lexicographic branch-and-bound clique search.

Semantics match basisbound._speedups exactly; this module is the fallback
selected at import time when the compiled extension is unavailable.
"""

from __future__ import annotations

MODE_DIST_EQ = 0
MODE_DIST_MOD = 1
MODE_DIST_SET = 2
MODE_INTERSECT = 3


def adjacency(vectors, n, mode, m1, m2, allowed_mask):
    """Compatibility bitmask per vector: bit j of row i is set when the
    predicate holds for the pair (i, j).  `vectors` is a list of length-n
    byte strings; `allowed_mask` encodes a distance set for MODE_DIST_SET.
    """
    count = len(vectors)
    binary = all(max(v, default=0) <= 1 for v in vectors)
    if binary:
        packed = [int.from_bytes(v, "little") for v in vectors]
    rows = [0] * count
    for i in range(count):
        vi = vectors[i]
        pi = packed[i] if binary else None
        for j in range(i + 1, count):
            if binary:
                if mode == MODE_INTERSECT:
                    value = (pi & packed[j]).bit_count()
                else:
                    value = (pi ^ packed[j]).bit_count()
            elif mode == MODE_INTERSECT:
                value = sum(1 for a, b in zip(vi, vectors[j]) if a and b)
            else:
                value = sum(1 for a, b in zip(vi, vectors[j]) if a != b)
            if mode == MODE_DIST_EQ or mode == MODE_INTERSECT:
                ok = value == m1
            elif mode == MODE_DIST_MOD:
                ok = value % m2 == m1
            else:
                ok = (allowed_mask >> value) & 1
            if ok:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return rows


def extend_max(adj, count, prefix, lower, target):
    """Best clique extending `prefix` using only indices above its maximum.

    Exploration is depth-first in increasing index order with the standard
    cutoff size + |candidates| <= best, so with lower=0 and empty prefix the
    returned witness is the lexicographically least maximum clique.  Returns
    (best_size, witness or None, nodes); the witness is None when nothing
    beat `lower`.  A positive `target` aborts the search once reached.
    """
    if count == 0:
        return lower, None, 0
    full = (1 << count) - 1
    cand = full
    for v in prefix:
        cand &= adj[v]
    if prefix:
        cand &= full ^ ((1 << (max(prefix) + 1)) - 1)
    state = {"best": lower, "witness": None, "nodes": 0, "stop": False}
    clique = list(prefix)

    def visit(cand_mask):
        state["nodes"] += 1
        size = len(clique)
        if size > state["best"]:
            state["best"] = size
            state["witness"] = tuple(clique)
            if target and size >= target:
                state["stop"] = True
                return
        while cand_mask:
            if state["stop"] or size + cand_mask.bit_count() <= state["best"]:
                return
            low = cand_mask & -cand_mask
            cand_mask ^= low
            v = low.bit_length() - 1
            clique.append(v)
            visit(cand_mask & adj[v])
            clique.pop()

    visit(cand)
    return state["best"], state["witness"], state["nodes"]


def first_clique_of_size(adj, count, size):
    """Lexicographically least clique of exactly `size` vertices, or None.

    Depth-first in increasing index order with the strict cutoff
    current + |candidates| < size, stopping at the first hit.
    """
    if size <= 0:
        return ()
    if count == 0:
        return None
    found = []
    clique = []

    def visit(cand_mask):
        if len(clique) == size:
            found.extend(clique)
            return True
        while cand_mask:
            if len(clique) + cand_mask.bit_count() < size:
                return False
            low = cand_mask & -cand_mask
            cand_mask ^= low
            v = low.bit_length() - 1
            clique.append(v)
            if visit(cand_mask & adj[v]):
                return True
            clique.pop()
        return False

    if visit((1 << count) - 1):
        return tuple(found)
    return None
