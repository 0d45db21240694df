# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: subgroup closure and waiting-time sampling.

Both routines work on a Cayley table ``table[i, j] = index(g_i * g_j)`` with
element 0 the identity. Subgroups cross the Python boundary as integer
bitmasks (bit ``i`` set iff element ``i`` belongs to the subgroup).
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t

cnp.import_array()

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t STREAM = 0xD1B54A32D192ED03ULL


cdef inline uint64_t mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef int _bfs(const int32_t[:, ::1] table, uint8_t* mark, int32_t* queue,
              int count, const int32_t* gens, int ngens) nogil:
    cdef int head = 0
    cdef int x, y, s
    while head < count:
        x = queue[head]
        head += 1
        for s in range(ngens):
            y = table[x, gens[s]]
            if not mark[y]:
                mark[y] = 1
                queue[count] = y
                count += 1
    return count


def closure(const int32_t[:, ::1] table, object seed_mask, gens):
    """Bitmask of the subgroup generated by ``gens``.

    ``seed_mask`` lists elements already known to lie in the result (for
    instance a subgroup being extended); it must be contained in the
    subgroup generated by ``gens``.
    """
    cdef int n = table.shape[0]
    cdef int nbytes = (n + 7) // 8
    cdef cnp.ndarray[uint8_t, ndim=1] mark = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[int32_t, ndim=1] queue = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=1] g = np.asarray(gens, dtype=np.int32).reshape(-1)
    cdef const uint8_t[:] seed = int(seed_mask).to_bytes(nbytes, "little")
    cdef int count = 0
    cdef int i, b
    cdef uint8_t byte
    for b in range(nbytes):
        byte = seed[b]
        if byte:
            for i in range(8):
                if byte & (1 << i):
                    mark[8 * b + i] = 1
                    queue[count] = 8 * b + i
                    count += 1
    if not mark[0]:
        mark[0] = 1
        queue[count] = 0
        count += 1
    count = _bfs(table, <uint8_t*> mark.data, <int32_t*> queue.data, count,
                 <int32_t*> g.data, g.shape[0])
    packed = np.packbits(mark, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def sample_tau_batch(const int32_t[:, ::1] table, int64_t trials, uint64_t seed,
                     int64_t first_trial=0):
    """Waiting times for trials ``first_trial .. first_trial + trials - 1``.

    Trial ``t`` draws from its own counter stream keyed by ``(seed, t)``, so
    results do not depend on how trials are batched.
    """
    cdef int n = table.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] out = np.empty(trials, dtype=np.int64)
    cdef cnp.ndarray[uint8_t, ndim=1] mark = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[int32_t, ndim=1] queue = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=1] gens = np.empty(64, dtype=np.int32)
    cdef uint8_t* mk = <uint8_t*> mark.data
    cdef int32_t* qu = <int32_t*> queue.data
    cdef int32_t* gs = <int32_t*> gens.data
    cdef uint64_t un = <uint64_t> n
    cdef uint64_t threshold = (<uint64_t> 0 - un) % un
    cdef uint64_t key, word, counter
    cdef int64_t t, draws
    cdef int count, ngens, i, x
    with nogil:
        for t in range(trials):
            key = mix64(seed + <uint64_t> (first_trial + t + 1) * STREAM)
            counter = 0
            mk[0] = 1
            qu[0] = 0
            count = 1
            ngens = 0
            draws = 0
            while count < n:
                while True:
                    counter += 1
                    word = mix64(key + counter * GOLDEN)
                    if word >= threshold:
                        break
                x = <int> (word % un)
                draws += 1
                if mk[x]:
                    continue
                gs[ngens] = x
                ngens += 1
                count = _bfs(table, mk, qu, count, gs, ngens)
            if n == 1:
                draws = 0
            out[t] = draws
            for i in range(count):
                mk[qu[i]] = 0
    return out
