# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``raagrh._pykernels``.

Same names, same results; see that module for the algorithms.
"""

from libc.stdlib cimport malloc, calloc, free


cdef class WordKernel:
    cdef int n
    cdef int* nc_start
    cdef int* nc
    cdef public tuple noncomm

    def __cinit__(self, noncomm):
        cdef int i, k, total = 0
        rows = tuple(tuple(int(j) for j in row) for row in noncomm)
        self.noncomm = rows
        self.n = len(rows)
        for row in rows:
            total += len(row)
        self.nc_start = <int*>malloc((self.n + 1) * sizeof(int))
        self.nc = <int*>malloc((total + 1) * sizeof(int))
        if self.nc_start == NULL or self.nc == NULL:
            raise MemoryError()
        k = 0
        for i in range(self.n):
            self.nc_start[i] = k
            for j in rows[i]:
                self.nc[k] = j
                k += 1
        self.nc_start[self.n] = k

    def __dealloc__(self):
        free(self.nc_start)
        free(self.nc)

    def __reduce__(self):
        return (WordKernel, (self.noncomm,))

    cdef tuple _nf(self, const int* w, Py_ssize_t length):
        cdef int n = self.n
        cdef Py_ssize_t t, base
        cdef int x, i, j, k, found
        if length == 0:
            return ()
        cdef int* piles = <int*>malloc(n * length * sizeof(int))
        cdef int* top = <int*>calloc(n, sizeof(int))
        cdef int* head = <int*>calloc(n, sizeof(int))
        cdef int* out = <int*>malloc(length * sizeof(int))
        cdef int nout = 0
        if piles == NULL or top == NULL or head == NULL or out == NULL:
            free(piles); free(top); free(head); free(out)
            raise MemoryError()
        for t in range(length):
            x = w[t]
            i = (x if x > 0 else -x) - 1
            base = i * length
            if top[i] > 0 and piles[base + top[i] - 1] == -x:
                top[i] -= 1
                for k in range(self.nc_start[i], self.nc_start[i + 1]):
                    top[self.nc[k]] -= 1
            else:
                piles[base + top[i]] = x
                top[i] += 1
                for k in range(self.nc_start[i], self.nc_start[i + 1]):
                    j = self.nc[k]
                    piles[j * length + top[j]] = 0
                    top[j] += 1
        while True:
            found = -1
            for i in range(n):
                if head[i] < top[i] and piles[i * length + head[i]] != 0:
                    found = i
                    break
            if found < 0:
                break
            out[nout] = piles[found * length + head[found]]
            nout += 1
            head[found] += 1
            for k in range(self.nc_start[found], self.nc_start[found + 1]):
                head[self.nc[k]] += 1
        result = tuple([out[t] for t in range(nout)])
        free(piles); free(top); free(head); free(out)
        return result

    def normal_form(self, letters):
        cdef Py_ssize_t length = len(letters), t = 0
        cdef int* buf = <int*>malloc((length + 1) * sizeof(int))
        if buf == NULL:
            raise MemoryError()
        try:
            for x in letters:
                buf[t] = x
                t += 1
            return self._nf(buf, length)
        finally:
            free(buf)

    def substitute(self, word, images):
        cdef Py_ssize_t length = 0, t = 0
        cdef int x
        for x in word:
            length += len(images[(x if x > 0 else -x) - 1])
        cdef int* buf = <int*>malloc((length + 1) * sizeof(int))
        if buf == NULL:
            raise MemoryError()
        try:
            for x in word:
                if x > 0:
                    for y in images[x - 1]:
                        buf[t] = y
                        t += 1
                else:
                    for y in reversed(images[-x - 1]):
                        buf[t] = -y
                        t += 1
            return self._nf(buf, length)
        finally:
            free(buf)

    def compose(self, outer, inner):
        return tuple([self.substitute(img, outer) for img in inner])


cdef void _search(int n, int k, unsigned long long prefix, int nbits, int total,
                  const unsigned long long* adj, int* order, int* used,
                  unsigned long long* best, int* best_order):
    cdef int v, i
    cdef unsigned long long code, bound, row
    if k == n:
        if prefix < best[0]:
            best[0] = prefix
            for i in range(n):
                best_order[i] = order[i]
        return
    bound = best[0] >> (total - nbits - k)
    for v in range(n):
        if used[v]:
            continue
        code = prefix
        row = adj[v]
        for i in range(k):
            code = (code << 1) | ((row >> order[i]) & 1)
        if code > bound:
            continue
        used[v] = 1
        order[k] = v
        _search(n, k + 1, code, nbits + k, total, adj, order, used, best, best_order)
        used[v] = 0


def canonical_code(int n, adj):
    cdef int v, total
    cdef unsigned long long adjc[16]
    cdef int order[16]
    cdef int used[16]
    cdef int best_order[16]
    cdef unsigned long long best
    if n <= 1:
        return 0, tuple(range(n))
    if n > 11:
        raise ValueError("canonical_code supports at most 11 vertices")
    total = n * (n - 1) // 2
    for v in range(n):
        adjc[v] = adj[v]
        used[v] = 0
    best = (<unsigned long long>1) << total
    for v in range(n):
        used[v] = 1
        order[0] = v
        _search(n, 1, 0, 0, total, adjc, order, used, &best, best_order)
        used[v] = 0
    return int(best), tuple([best_order[v] for v in range(n)])
