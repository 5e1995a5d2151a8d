# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled PBW straightening kernel.

Same algorithm and interface as ``_pbw_py.PbwKernel``; coefficients stay
Python objects (ints or Fractions) so arithmetic remains exact.
"""

from itertools import product


cdef class PbwKernel:
    cdef public int dim
    cdef list _br
    cdef dict _gen_memo
    cdef dict _mono_memo
    cdef public tuple unit
    backend = "cython"

    def __init__(self, int dim, brackets):
        cdef int i, j
        self.dim = dim
        self._br = [[tuple(brackets.get((i, j), ())) for j in range(dim)] for i in range(dim)]
        self._gen_memo = {}
        self._mono_memo = {}
        self.unit = (0,) * dim

    cpdef dict mul_gen(self, tuple mono, int j):
        cdef tuple key = (mono, j)
        cdef object r = self._gen_memo.get(key)
        cdef int k
        cdef list m
        cdef tuple mp, mm, m3
        cdef dict res, inner
        cdef int l
        if r is not None:
            return <dict>r
        k = self.dim - 1
        while k > j and <long>mono[k] == 0:
            k -= 1
        if k <= j:
            m = list(mono)
            m[j] = m[j] + 1
            res = {tuple(m): 1}
        else:
            m = list(mono)
            m[k] = m[k] - 1
            mp = tuple(m)
            res = {}
            for mm, c in self.mul_gen(mp, j).items():
                inner = self.mul_gen(mm, k)
                for m3, c2 in inner.items():
                    res[m3] = res.get(m3, 0) + c * c2
            for l, c in self._br[k][j]:
                for mm, c2 in self.mul_gen(mp, l).items():
                    res[mm] = res.get(mm, 0) + c * c2
            res = {m3: c for m3, c in res.items() if c}
        self._gen_memo[key] = res
        return res

    cpdef dict mul_mono(self, tuple a, tuple b):
        cdef tuple key = (a, b)
        cdef object r = self._mono_memo.get(key)
        cdef int dim = self.dim
        cdef int top, low, i, rep
        cdef dict cur, nxt
        if r is not None:
            return <dict>r
        top = dim - 1
        while top >= 0 and <long>a[top] == 0:
            top -= 1
        low = 0
        while low < dim and <long>b[low] == 0:
            low += 1
        if top <= low:
            cur = {tuple([<long>a[i] + <long>b[i] for i in range(dim)]): 1}
        else:
            cur = {a: 1}
            for i in range(dim):
                for rep in range(<long>b[i]):
                    nxt = {}
                    for m, c in cur.items():
                        for m2, c2 in self.mul_gen(m, i).items():
                            nxt[m2] = nxt.get(m2, 0) + c * c2
                    cur = {m: c for m, c in nxt.items() if c}
        self._mono_memo[key] = cur
        return cur

    def normal_order(self, word):
        cdef dict cur = {self.unit: 1}
        cdef dict nxt
        for i in word:
            nxt = {}
            for m, c in cur.items():
                for m2, c2 in self.mul_gen(m, i).items():
                    nxt[m2] = nxt.get(m2, 0) + c * c2
            cur = {m: c for m, c in nxt.items() if c}
        return cur

    cpdef dict tensor_mul(self, dict a, dict b):
        cdef dict res = {}
        cdef dict p1, p2
        cdef tuple ka, kb, key
        cdef Py_ssize_t n
        for ka, ca in a.items():
            n = len(ka)
            for kb, cb in b.items():
                c = ca * cb
                if n == 2:
                    p1 = self.mul_mono(<tuple>ka[0], <tuple>kb[0])
                    p2 = self.mul_mono(<tuple>ka[1], <tuple>kb[1])
                    for m1, c1 in p1.items():
                        cc = c * c1
                        for m2, c2 in p2.items():
                            key = (m1, m2)
                            res[key] = res.get(key, 0) + cc * c2
                elif n == 1:
                    for m1, c1 in self.mul_mono(<tuple>ka[0], <tuple>kb[0]).items():
                        key = (m1,)
                        res[key] = res.get(key, 0) + c * c1
                elif n == 0:
                    res[()] = res.get((), 0) + c
                else:
                    parts = [list(self.mul_mono(x, y).items()) for x, y in zip(ka, kb)]
                    for combo in product(*parts):
                        cc = c
                        for _, ci in combo:
                            cc = cc * ci
                        key = tuple([mm for mm, _ in combo])
                        res[key] = res.get(key, 0) + cc
        return {k: v for k, v in res.items() if v}

    def cache_size(self):
        return len(self._gen_memo) + len(self._mono_memo)
