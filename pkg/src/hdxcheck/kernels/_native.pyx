# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive-scan kernels over multi-word GF(2) bitsets.

Gray-code enumeration of an affine subspace start + span(basis), tracking
the integer weight incrementally: step t flips basis vector ctz(t), and the
weight update only touches that vector's support. Tie-breaking and counting
match kernels._pure exactly.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport calloc, malloc, free

BACKEND = "native"

cdef uint64_t _ALL = <uint64_t>0xFFFFFFFFFFFFFFFF


cdef inline bint _any_above(uint64_t* v, Py_ssize_t w, uint64_t mask_above,
                            Py_ssize_t nwords) noexcept:
    cdef Py_ssize_t w2
    if v[w] & mask_above:
        return True
    for w2 in range(w + 1, nwords):
        if v[w2]:
            return True
    return False


cdef inline bint _lex_less_words(uint64_t* a, uint64_t* b, Py_ssize_t nwords) noexcept:
    # lexicographic order on sorted support tuples; see kernels._pure.lex_less
    cdef Py_ssize_t w
    cdef uint64_t x, low, mask_above
    for w in range(nwords):
        x = a[w] ^ b[w]
        if x:
            low = x & (~x + 1)
            mask_above = ~(low | (low - 1))
            if a[w] & low:
                return _any_above(b, w, mask_above, nwords)
            return not _any_above(a, w, mask_above, nwords)
    return False


cdef void _int_to_words(object mask, uint64_t* out, Py_ssize_t nwords):
    cdef Py_ssize_t w
    for w in range(nwords):
        out[w] = <uint64_t>((mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)


cdef object _words_to_int(uint64_t* words, Py_ssize_t nwords):
    cdef Py_ssize_t w
    out = 0
    for w in range(nwords):
        if words[w]:
            out |= <object>(words[w]) << (64 * w)
    return out


cdef struct _Scan:
    Py_ssize_t nwords
    Py_ssize_t r
    Py_ssize_t total_sup
    uint64_t* cur
    uint64_t* best
    Py_ssize_t* offsets       # r + 1 entries into the support arrays
    Py_ssize_t* sup_word
    uint64_t* sup_bit
    int64_t* sup_weight


cdef int _scan_init(_Scan* s, object start, list basis, object weights, int nbits) except -1:
    cdef Py_ssize_t i, j, pos, n
    s.r = len(basis)
    if s.r >= 48:
        raise OverflowError("scan dimension too large")
    s.nwords = (nbits + 63) // 64
    if s.nwords == 0:
        s.nwords = 1
    s.cur = <uint64_t*>calloc(s.nwords, sizeof(uint64_t))
    s.best = <uint64_t*>calloc(s.nwords, sizeof(uint64_t))
    s.offsets = <Py_ssize_t*>malloc((s.r + 1) * sizeof(Py_ssize_t))
    if s.cur == NULL or s.best == NULL or s.offsets == NULL:
        raise MemoryError()
    sup_positions = []
    for j in range(s.r):
        vec = basis[j]
        positions = []
        while vec:
            low = vec & -vec
            positions.append(low.bit_length() - 1)
            vec ^= low
        sup_positions.append(positions)
    s.total_sup = 0
    for j in range(s.r):
        s.offsets[j] = s.total_sup
        s.total_sup += len(sup_positions[j])
    s.offsets[s.r] = s.total_sup
    n = s.total_sup if s.total_sup > 0 else 1
    s.sup_word = <Py_ssize_t*>malloc(n * sizeof(Py_ssize_t))
    s.sup_bit = <uint64_t*>malloc(n * sizeof(uint64_t))
    s.sup_weight = <int64_t*>malloc(n * sizeof(int64_t))
    if s.sup_word == NULL or s.sup_bit == NULL or s.sup_weight == NULL:
        raise MemoryError()
    i = 0
    for j in range(s.r):
        for pos in sup_positions[j]:
            s.sup_word[i] = pos >> 6
            s.sup_bit[i] = (<uint64_t>1) << (pos & 63)
            s.sup_weight[i] = <int64_t>weights[pos]
            i += 1
    _int_to_words(start, s.cur, s.nwords)
    return 0


cdef void _scan_free(_Scan* s) noexcept:
    free(s.cur)
    free(s.best)
    free(s.offsets)
    free(s.sup_word)
    free(s.sup_bit)
    free(s.sup_weight)


cdef int64_t _start_weight(_Scan* s, object weights, int nbits) except? -1:
    cdef int64_t total = 0
    cdef Py_ssize_t pos
    for pos in range(nbits):
        if s.cur[pos >> 6] & ((<uint64_t>1) << (pos & 63)):
            total += <int64_t>weights[pos]
    return total


def coset_min_weight(object start, list basis, object weights, int nbits):
    """Same contract as kernels._pure.coset_min_weight."""
    cdef _Scan s
    cdef uint64_t t, steps, tmp
    cdef Py_ssize_t j, i, w
    cdef int64_t weight, best_w
    cdef object count
    _scan_init(&s, start, basis, weights, nbits)
    try:
        weight = _start_weight(&s, weights, nbits)
        best_w = weight
        for w in range(s.nwords):
            s.best[w] = s.cur[w]
        count = 1
        if s.r == 0:
            return best_w, _words_to_int(s.best, s.nwords), count
        steps = (<uint64_t>1) << s.r
        for t in range(1, steps):
            tmp = t
            j = 0
            while not (tmp & 1):
                tmp >>= 1
                j += 1
            for i in range(s.offsets[j], s.offsets[j + 1]):
                if s.cur[s.sup_word[i]] & s.sup_bit[i]:
                    weight -= s.sup_weight[i]
                else:
                    weight += s.sup_weight[i]
                s.cur[s.sup_word[i]] ^= s.sup_bit[i]
            if weight < best_w:
                best_w = weight
                for w in range(s.nwords):
                    s.best[w] = s.cur[w]
                count = 1
            elif weight == best_w:
                count = count + 1
                if _lex_less_words(s.cur, s.best, s.nwords):
                    for w in range(s.nwords):
                        s.best[w] = s.cur[w]
        return best_w, _words_to_int(s.best, s.nwords), count
    finally:
        _scan_free(&s)


def coset_elements_of_weight(object start, list basis, object weights, int nbits,
                             object target):
    """Same contract as kernels._pure.coset_elements_of_weight."""
    cdef _Scan s
    cdef uint64_t t, steps, tmp
    cdef Py_ssize_t j, i
    cdef int64_t weight, want
    want = <int64_t>target
    _scan_init(&s, start, basis, weights, nbits)
    hits = []
    try:
        weight = _start_weight(&s, weights, nbits)
        if weight == want:
            hits.append(_words_to_int(s.cur, s.nwords))
        if s.r == 0:
            return hits
        steps = (<uint64_t>1) << s.r
        for t in range(1, steps):
            tmp = t
            j = 0
            while not (tmp & 1):
                tmp >>= 1
                j += 1
            for i in range(s.offsets[j], s.offsets[j + 1]):
                if s.cur[s.sup_word[i]] & s.sup_bit[i]:
                    weight -= s.sup_weight[i]
                else:
                    weight += s.sup_weight[i]
                s.cur[s.sup_word[i]] ^= s.sup_bit[i]
            if weight == want:
                hits.append(_words_to_int(s.cur, s.nwords))
        return hits
    finally:
        _scan_free(&s)
