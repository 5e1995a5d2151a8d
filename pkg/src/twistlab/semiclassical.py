"""Classical limits: r-matrices, cobrackets and dual Lie structures.

A ``BiTensor`` is a dict ``{(i, j): Fraction}`` for an element of g (x) g;
the wedge is x ^ y = x (x) y - y (x) x.  Dual algebras use the basis
canonically dual to the generators of g, with the dual bracket read off
the cobracket: [X_i, X_j] = sum_x delta(x)^{ij} X_x.
"""

from fractions import Fraction
from itertools import combinations

from .errors import DimensionMismatch, NotFirstOrder, UnitViolation
from .expr import Gen, parse_expression
from .lie import _clean, adjoint_flow_terms, gl_name, make_gl, rat
from .pbw import mono_degree


def _deg1_index(m):
    if mono_degree(m) != 1:
        return None
    for i, e in enumerate(m):
        if e:
            return i


def wedge(alg, x, y):
    x, y = alg.element(x), alg.element(y)
    out = {}
    for i, a in x.items():
        for j, b in y.items():
            out[(i, j)] = out.get((i, j), 0) + a * b
            out[(j, i)] = out.get((j, i), 0) - a * b
    return _clean(out)


def bitensor_add(*terms):
    out = {}
    for c, t in terms:
        for k, v in t.items():
            out[k] = out.get(k, 0) + c * v
    return _clean(out)


def format_bitensor(alg, t):
    if not t:
        return "0"
    return " + ".join("%s %s (x) %s" % (c, alg.names[i], alg.names[j]) for (i, j), c in sorted(t.items()))


def _first_order_part(series, antisymmetrize):
    d = dict(series.coeffs[1]) if series.order >= 1 else {}
    if antisymmetrize:
        for (a, b), c in list(series.coeffs[1].items()):
            d[(b, a)] = d.get((b, a), 0) - c
    out = {}
    for (a, b), c in d.items():
        if not c:
            continue
        i, j = _deg1_index(a), _deg1_index(b)
        if i is None or j is None:
            raise NotFirstOrder("xi^1 term outside g (x) g")
        out[(i, j)] = out.get((i, j), 0) + Fraction(c)
    return _clean(out)


def classical_r(R):
    """The xi^1 coefficient of a universal R-matrix, as an element of g (x) g."""
    if not R.is_unit_leading():
        raise UnitViolation("R must start with 1 (x) 1")
    return _first_order_part(R, antisymmetrize=False)


def check_cybe(alg, r):
    """[r12, r13] + [r12, r23] + [r13, r23], keyed by index triples."""
    out = {}

    def add(key, c):
        out[key] = out.get(key, 0) + c

    items = list(r.items())
    for (a, b), c1 in items:
        for (c, d), c2 in items:
            w = c1 * c2
            for k, v in alg.bracket_basis(a, c).items():
                add((k, b, d), w * v)
            for k, v in alg.bracket_basis(b, c).items():
                add((a, k, d), w * v)
            for k, v in alg.bracket_basis(b, d).items():
                add((a, c, k), w * v)
    return _clean(out)


def dual_name(name):
    if name.startswith("E_"):
        return "X_" + name[2:]
    return name + "*"


class DualLieTable:
    """Bilinear antisymmetric bracket on a named basis (not validated as Lie)."""

    def __init__(self, names, brackets):
        self.names = tuple(names)
        self.dim = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.brackets = {}
        for (i, j), v in brackets.items():
            v = _clean(dict(v))
            if v and i != j:
                self.brackets[(i, j)] = v
                self.brackets[(j, i)] = {k: -c for k, c in v.items()}

    def bracket_basis(self, i, j):
        return self.brackets.get((i, j), {})

    def bracket(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.brackets.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + a * b * c
        return _clean(out)

    def upper_entries(self):
        """Nonzero brackets [X_i, X_j] with i < j, sorted."""
        return sorted((k, v) for k, v in self.brackets.items() if k[0] < k[1])

    def without(self, i, j):
        b = {k: v for k, v in self.brackets.items() if k not in ((i, j), (j, i))}
        return DualLieTable(self.names, b)

    def scaled_basis(self, c):
        """The same algebra in the basis c X_i: structure constants scale by c."""
        c = rat(c)
        return DualLieTable(self.names, {k: {m: c * v for m, v in val.items()}
                                         for k, val in self.brackets.items()})

    def format_element(self, x):
        if not x:
            return "0"
        return " + ".join("%s %s" % (c, self.names[k]) for k, c in sorted(x.items()))

    def __eq__(self, other):
        return isinstance(other, DualLieTable) and self.names == other.names and self.brackets == other.brackets

    __hash__ = None

    def __repr__(self):
        lines = ["[%s, %s] = %s" % (self.names[i], self.names[j], self.format_element(v))
                 for (i, j), v in self.upper_entries()]
        return "DualLieTable(%s)" % "; ".join(lines)


def parse_dual_table(text, names):
    """Read lines ``X_a X_b = <linear combination>`` into a DualLieTable."""
    index = {n: i for i, n in enumerate(names)}
    brackets = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, rhs = line.split("=", 1)
        a, b = lhs.replace("[", " ").replace("]", " ").replace(",", " ").split()
        val = {}
        for term in parse_expression(rhs).terms:
            (f,), = term.slots
            if not isinstance(f, Gen) or f.power != 1:
                raise ValueError("dual table values must be linear: %r" % rhs)
            val[index[f.name]] = val.get(index[f.name], 0) + term.coeff
        brackets[(index[a], index[b])] = val
    return DualLieTable(names, brackets)


def cobracket_map(table):
    """delta(x) = xi^1 part of Delta_F(x) - Delta_F^op(x), for each basis generator."""
    alg = table.algebra
    out = {}
    for name in alg.names:
        out[alg.index[name]] = _first_order_part(table[name], antisymmetrize=True)
    return out


def dual_from_cobracket(alg, delta):
    brackets = {}
    for x, d in delta.items():
        for (i, j), c in d.items():
            if i < j:
                brackets.setdefault((i, j), {})[x] = c
    return DualLieTable([dual_name(n) for n in alg.names], brackets)


def cobracket(table):
    """Dual Lie structure read off a twisted coproduct table (needs every basis entry)."""
    return dual_from_cobracket(table.algebra, cobracket_map(table))


def check_jacobi(t):
    out = {}
    for i, j, k in combinations(range(t.dim), 3):
        x, y, z = {i: 1}, {j: 1}, {k: 1}
        res = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for m, v in t.bracket(t.bracket(a, b), c).items():
                res[m] = res.get(m, 0) + v
        res = _clean(res)
        if res:
            out[(i, j, k)] = res
    return out


def check_cojacobi(alg, delta):
    """Cyclic sum of (delta (x) id) delta(x) for every generator x."""
    out = {}
    for x, d in delta.items():
        t = {}
        for (a, b), c in d.items():
            for (p, q), c2 in delta.get(a, {}).items():
                t[(p, q, b)] = t.get((p, q, b), 0) + c * c2
        cyc = {}
        for (p, q, r), c in t.items():
            for key in ((p, q, r), (q, r, p), (r, p, q)):
                cyc[key] = cyc.get(key, 0) + c
        cyc = _clean(cyc)
        if cyc:
            out[x] = cyc
    return out


def check_bialgebra_cocycle(alg, delta):
    """delta([x, y]) - x.delta(y) + y.delta(x) on generator pairs."""
    out = {}
    for i, j in combinations(range(alg.dim), 2):
        lhs = {}
        for k, c in alg.bracket_basis(i, j).items():
            for key, v in delta.get(k, {}).items():
                lhs[key] = lhs.get(key, 0) + c * v
        res = bitensor_add((1, lhs), (-1, alg.ad({i: 1}, delta.get(j, {}))),
                           (1, alg.ad({j: 1}, delta.get(i, {}))))
        if res:
            out[(i, j)] = res
    return out


def check_mutual_cocycle(mu1, mu2):
    """Mixed Jacobi sum: cyclic sum of mu1(mu2(x,y),z) + mu2(mu1(x,y),z).

    Zero on every triple iff mu2 is a 2-cocycle of mu1 (equivalently
    mu1 + t mu2 satisfies Jacobi to first order in t).  Returns the
    nonzero triples, in order.
    """
    if mu1.names != mu2.names:
        raise DimensionMismatch("the two brackets live on different bases")
    out = {}
    for i, j, k in combinations(range(mu1.dim), 3):
        x, y, z = {i: 1}, {j: 1}, {k: 1}
        res = {}
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for m, v in mu1.bracket(mu2.bracket(a, b), c).items():
                res[m] = res.get(m, 0) + v
            for m, v in mu2.bracket(mu1.bracket(a, b), c).items():
                res[m] = res.get(m, 0) + v
        res = _clean(res)
        if res:
            out[(i, j, k)] = res
    return out


def make_dual_dj(n):
    """Dual Lie structure of the standard (Drinfeld-Jimbo) bialgebra of gl(n).

    In the basis X_ij dual to E_ij:
      [X_ii, X_kl] = d_ik X_il - d_il X_ki          (k <= l)
      [X_ii, X_kl] = -d_ik X_il + d_il X_ki         (k >= l)
      [X_ij, X_kl] = 2(d_jk X_il - d_il X_kj)       (i < j, k < l)
      [X_ij, X_kl] = -2(d_jk X_il - d_il X_kj)      (i > j, k > l)
    and all other brackets of basis elements vanish.
    """
    names = [dual_name(gl_name(i, j, n)) for i in range(1, n + 1) for j in range(1, n + 1)]
    idx = lambda i, j: (i - 1) * n + (j - 1)
    d = lambda a, b: 1 if a == b else 0

    def rule(i, j, k, l):
        val = {}

        def add(a, b, c):
            if c:
                val[idx(a, b)] = val.get(idx(a, b), 0) + c

        if i == j:
            s = 1 if k <= l else -1
            add(i, l, s * d(i, k))
            add(k, i, -s * d(i, l))
        elif i < j and k < l:
            add(i, l, 2 * d(j, k))
            add(k, j, -2 * d(i, l))
        elif i > j and k > l:
            add(i, l, -2 * d(j, k))
            add(k, j, 2 * d(i, l))
        return _clean(val)

    brackets = {}
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for (i, j) in pairs:
        for (k, l) in pairs:
            a, b = idx(i, j), idx(k, l)
            if a >= b:
                continue
            if i == j:
                v = rule(i, j, k, l)
            elif k == l:
                v = {m: -c for m, c in rule(k, l, i, j).items()}
            else:
                v = rule(i, j, k, l)
            if v:
                brackets[(a, b)] = v
    return DualLieTable(names, brackets)


def cartan_h(n, i):
    """Simple coroot H_i = E_ii - E_{i+1,i+1} of sl(n), as a gl(n) element."""
    return {(i - 1) * n + (i - 1): Fraction(1), i * n + i: Fraction(-1)}


def r_dj(n, t_cartan):
    """sum t_ij H_i (x) H_j + sum_{i<j} E_ij (x) E_ji in gl(n) (x) gl(n)."""
    out = {}
    for a in range(1, n):
        for b in range(1, n):
            t = rat(t_cartan[a - 1][b - 1])
            if not t:
                continue
            for p, c1 in cartan_h(n, a).items():
                for q, c2 in cartan_h(n, b).items():
                    out[(p, q)] = out.get((p, q), 0) + t * c1 * c2
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            key = ((i - 1) * n + (j - 1), (j - 1) * n + (i - 1))
            out[key] = out.get(key, 0) + 1
    return _clean(out)


def r_jordanian(n):
    """-1/2 (H_1n ^ E_1n + 2 sum_{k=2..n-1} E_1k ^ E_kn)."""
    g = make_gl(n)
    h = "H_%d%d" % (1, n) if n < 10 else "H_1_%d" % n
    out = wedge(g, h, gl_name(1, n, n))
    for k in range(2, n):
        out = bitensor_add((1, out), (2, wedge(g, gl_name(1, k, n), gl_name(k, n, n))))
    return {key: -v / 2 for key, v in out.items()}


def r_dj_flow_check(n, t_cartan):
    """Residual of exp(xi ad E_1n)(r_DJ) = r_DJ + xi r_j, one BiTensor per power of xi."""
    g = make_gl(n)
    t = [[rat(c) for c in row] for row in t_cartan]
    for a in range(n - 1):
        for b in range(n - 1):
            if t[a][b] != t[b][a]:
                raise ValueError("t_cartan must be symmetric")
    r = r_dj(n, t)
    terms = adjoint_flow_terms(g, g.element(gl_name(1, n, n)), r)
    res = [bitensor_add((1, term), (-1, r)) if k == 0 else dict(term) for k, term in enumerate(terms)]
    while len(res) < 2:
        res.append({})
    res[1] = bitensor_add((1, res[1]), (-1, r_jordanian(n)))
    return res
