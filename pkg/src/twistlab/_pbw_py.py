"""Pure-Python PBW straightening kernel (fallback for ``_pbw_core``).

A PBW monomial is a tuple of exponents in basis order.  ``mul_gen``
right-multiplies a monomial by one generator; everything else is built
from it.  Coefficients are whatever numeric type the structure constants
carry (ints for gl(n), Fractions otherwise).
"""

from itertools import product


class PbwKernel:
    backend = "python"

    def __init__(self, dim, brackets):
        # brackets: {(i, j): [(k, c), ...]} giving [x_i, x_j]
        self.dim = dim
        self._br = [[tuple(brackets.get((i, j), ())) for j in range(dim)] for i in range(dim)]
        self._gen_memo = {}
        self._mono_memo = {}
        self.unit = (0,) * dim

    def mul_gen(self, mono, j):
        key = (mono, j)
        r = self._gen_memo.get(key)
        if r is not None:
            return r
        k = self.dim - 1
        while k > j and mono[k] == 0:
            k -= 1
        if k <= j:
            m = list(mono)
            m[j] += 1
            r = {tuple(m): 1}
        else:
            # mono = m' x_k with k > j:  m' x_k x_j = (m' x_j) x_k + m' [x_k, x_j]
            m = list(mono)
            m[k] -= 1
            mp = tuple(m)
            r = {}
            for mm, c in self.mul_gen(mp, j).items():
                for m3, c2 in self.mul_gen(mm, k).items():
                    r[m3] = r.get(m3, 0) + c * c2
            for l, c in self._br[k][j]:
                for mm, c2 in self.mul_gen(mp, l).items():
                    r[mm] = r.get(mm, 0) + c * c2
            r = {m3: c for m3, c in r.items() if c}
        self._gen_memo[key] = r
        return r

    def mul_mono(self, a, b):
        key = (a, b)
        r = self._mono_memo.get(key)
        if r is not None:
            return r
        dim = self.dim
        top = dim - 1
        while top >= 0 and a[top] == 0:
            top -= 1
        low = 0
        while low < dim and b[low] == 0:
            low += 1
        if top <= low:
            r = {tuple(x + y for x, y in zip(a, b)): 1}
        else:
            cur = {a: 1}
            for i in range(dim):
                for _ in range(b[i]):
                    nxt = {}
                    for m, c in cur.items():
                        for m2, c2 in self.mul_gen(m, i).items():
                            nxt[m2] = nxt.get(m2, 0) + c * c2
                    cur = {m: c for m, c in nxt.items() if c}
            r = cur
        self._mono_memo[key] = r
        return r

    def normal_order(self, word):
        cur = {self.unit: 1}
        for i in word:
            nxt = {}
            for m, c in cur.items():
                for m2, c2 in self.mul_gen(m, i).items():
                    nxt[m2] = nxt.get(m2, 0) + c * c2
            cur = {m: c for m, c in nxt.items() if c}
        return cur

    def tensor_mul(self, a, b):
        """Slotwise product of two sparse tensors keyed by monomial tuples."""
        res = {}
        mul_mono = self.mul_mono
        for ka, ca in a.items():
            n = len(ka)
            for kb, cb in b.items():
                c = ca * cb
                if n == 2:
                    p1 = mul_mono(ka[0], kb[0])
                    p2 = mul_mono(ka[1], kb[1])
                    for m1, c1 in p1.items():
                        cc = c * c1
                        for m2, c2 in p2.items():
                            key = (m1, m2)
                            res[key] = res.get(key, 0) + cc * c2
                elif n == 1:
                    for m1, c1 in mul_mono(ka[0], kb[0]).items():
                        key = (m1,)
                        res[key] = res.get(key, 0) + c * c1
                elif n == 0:
                    res[()] = res.get((), 0) + c
                else:
                    parts = [list(mul_mono(x, y).items()) for x, y in zip(ka, kb)]
                    for combo in product(*parts):
                        cc = c
                        for _, ci in combo:
                            cc = cc * ci
                        key = tuple(m for m, _ in combo)
                        res[key] = res.get(key, 0) + cc
        return {k: v for k, v in res.items() if v}

    def cache_size(self):
        return len(self._gen_memo) + len(self._mono_memo)
