# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel; drop-in replacement for basisbound._kernel_py.

Adjacency rows cross the boundary as Python integers (bitmasks) so both
backends share one contract; internally everything runs on uint64 words
with the GIL released.
"""

from libc.stdint cimport int64_t, uint8_t, uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

MODE_DIST_EQ = 0
MODE_DIST_MOD = 1
MODE_DIST_SET = 2
MODE_INTERSECT = 3

cdef extern from *:
    """
    static inline int bb_popcount64(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    static inline int bb_ctz64(unsigned long long x) {
        return __builtin_ctzll(x);
    }
    """
    int bb_popcount64(unsigned long long x) nogil
    int bb_ctz64(unsigned long long x) nogil


def adjacency(vectors, int n, int mode, int m1, int m2, allowed_mask):
    """Compatibility bitmask per vector (see the pure kernel for the mode
    encoding).  `vectors` must be length-n byte strings."""
    cdef Py_ssize_t count = len(vectors)
    if count == 0:
        return []
    cdef Py_ssize_t words = (count + 63) >> 6
    cdef uint8_t* buf = <uint8_t*> calloc(count * n + 1, 1)
    cdef uint64_t* bits = <uint64_t*> calloc(count * words, 8)
    cdef uint8_t* allowed = <uint8_t*> calloc(n + 2, 1)
    if buf == NULL or bits == NULL or allowed == NULL:
        free(buf); free(bits); free(allowed)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef int t, value
    cdef bint ok
    cdef const unsigned char* raw
    try:
        for i in range(count):
            v = vectors[i]
            if len(v) != n:
                raise ValueError("vector length mismatch")
            raw = v
            memcpy(buf + i * n, raw, n)
        for t in range(n + 1):
            if (allowed_mask >> t) & 1:
                allowed[t] = 1
        with nogil:
            for i in range(count):
                for j in range(i + 1, count):
                    value = 0
                    if mode == 3:
                        for t in range(n):
                            if buf[i * n + t] and buf[j * n + t]:
                                value += 1
                    else:
                        for t in range(n):
                            if buf[i * n + t] != buf[j * n + t]:
                                value += 1
                    if mode == 0 or mode == 3:
                        ok = value == m1
                    elif mode == 1:
                        ok = value % m2 == m1
                    else:
                        ok = allowed[value] != 0
                    if ok:
                        bits[i * words + (j >> 6)] |= (<uint64_t> 1) << (j & 63)
                        bits[j * words + (i >> 6)] |= (<uint64_t> 1) << (i & 63)
        rows = []
        for i in range(count):
            row_bytes = (<char*> (bits + i * words))[: words * 8]
            rows.append(int.from_bytes(row_bytes, "little"))
        return rows
    finally:
        free(buf)
        free(bits)
        free(allowed)


cdef struct BestState:
    int size
    int length
    int64_t nodes
    bint stop


cdef void _extend(
    const uint64_t* adj,
    Py_ssize_t words,
    int* clique,
    int size,
    uint64_t* cand_stack,
    Py_ssize_t depth,
    int* best_witness,
    BestState* state,
    int target,
) nogil:
    cdef uint64_t* cand = cand_stack + depth * words
    cdef uint64_t* child = cand_stack + (depth + 1) * words
    cdef Py_ssize_t w
    cdef int remaining = 0
    cdef int v, k
    state.nodes += 1
    if size > state.size:
        state.size = size
        state.length = size
        for k in range(size):
            best_witness[k] = clique[k]
        if target > 0 and size >= target:
            state.stop = True
            return
    for w in range(words):
        remaining += bb_popcount64(cand[w])
    while True:
        if state.stop or size + remaining <= state.size:
            return
        v = -1
        for w in range(words):
            if cand[w]:
                v = (<int> w << 6) + bb_ctz64(cand[w])
                break
        if v < 0:
            return
        cand[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
        remaining -= 1
        for w in range(words):
            child[w] = cand[w] & adj[(<Py_ssize_t> v) * words + w]
        clique[size] = v
        _extend(adj, words, clique, size + 1, cand_stack, depth + 1,
                best_witness, state, target)


cdef bint _first(
    const uint64_t* adj,
    Py_ssize_t words,
    int* clique,
    int size,
    uint64_t* cand_stack,
    Py_ssize_t depth,
    int target,
) nogil:
    cdef uint64_t* cand = cand_stack + depth * words
    cdef uint64_t* child = cand_stack + (depth + 1) * words
    cdef Py_ssize_t w
    cdef int remaining = 0
    cdef int v
    if size == target:
        return True
    for w in range(words):
        remaining += bb_popcount64(cand[w])
    while True:
        if size + remaining < target:
            return False
        v = -1
        for w in range(words):
            if cand[w]:
                v = (<int> w << 6) + bb_ctz64(cand[w])
                break
        if v < 0:
            return False
        cand[v >> 6] &= ~((<uint64_t> 1) << (v & 63))
        remaining -= 1
        for w in range(words):
            child[w] = cand[w] & adj[(<Py_ssize_t> v) * words + w]
        clique[size] = v
        if _first(adj, words, clique, size + 1, cand_stack, depth + 1, target):
            return True


cdef uint64_t* _adj_to_words(adj, Py_ssize_t count, Py_ssize_t words) except NULL:
    cdef uint64_t* out = <uint64_t*> calloc(count * words, 8)
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef bytes row_bytes
    for i in range(count):
        row_bytes = (<object> adj[i]).to_bytes(words * 8, "little")
        memcpy(out + i * words, <const char*> row_bytes, words * 8)
    return out


def extend_max(adj, Py_ssize_t count, prefix, int lower, int target):
    """Best clique extending `prefix`; see the pure kernel for semantics."""
    if count == 0:
        return lower, None, 0
    cdef Py_ssize_t words = (count + 63) >> 6
    # arbitrary-precision Python arithmetic: count may exceed 63
    full = ((<object> 1) << count) - 1
    cand_int = full
    for v in prefix:
        cand_int &= adj[v]
    if prefix:
        cand_int &= full ^ (((<object> 1) << (max(prefix) + 1)) - 1)

    cdef uint64_t* adj_words = _adj_to_words(adj, count, words)
    cdef uint64_t* cand_stack = <uint64_t*> calloc((count + 2) * words, 8)
    cdef int* clique = <int*> calloc(count + 1, sizeof(int))
    cdef int* witness = <int*> calloc(count + 1, sizeof(int))
    if cand_stack == NULL or clique == NULL or witness == NULL:
        free(adj_words); free(cand_stack); free(clique); free(witness)
        raise MemoryError()
    cdef BestState state
    state.size = lower
    state.length = 0
    state.nodes = 0
    state.stop = False
    cdef int base = len(prefix)
    cdef int i
    cdef int ctarget = target
    try:
        for i in range(base):
            clique[i] = prefix[i]
        row_bytes = cand_int.to_bytes(words * 8, "little")
        memcpy(cand_stack, <const char*> row_bytes, words * 8)
        with nogil:
            _extend(adj_words, words, clique, base, cand_stack, 0,
                    witness, &state, ctarget)
        if state.length == 0:
            return lower, None, state.nodes
        return state.size, tuple(witness[i] for i in range(state.length)), state.nodes
    finally:
        free(adj_words)
        free(cand_stack)
        free(clique)
        free(witness)


def first_clique_of_size(adj, Py_ssize_t count, int size):
    """Lexicographically least clique of exactly `size` vertices, or None."""
    if size <= 0:
        return ()
    if count == 0:
        return None
    cdef Py_ssize_t words = (count + 63) >> 6
    cdef uint64_t* adj_words = _adj_to_words(adj, count, words)
    cdef uint64_t* cand_stack = <uint64_t*> calloc((count + 2) * words, 8)
    cdef int* clique = <int*> calloc(count + 1, sizeof(int))
    if cand_stack == NULL or clique == NULL:
        free(adj_words); free(cand_stack); free(clique)
        raise MemoryError()
    cdef bint found
    cdef int i
    try:
        full = ((<object> 1) << count) - 1
        row_bytes = full.to_bytes(words * 8, "little")
        memcpy(cand_stack, <const char*> row_bytes, words * 8)
        with nogil:
            found = _first(adj_words, words, clique, 0, cand_stack, 0, size)
        if not found:
            return None
        return tuple(clique[i] for i in range(size))
    finally:
        free(adj_words)
        free(cand_stack)
        free(clique)
