"""Finite-dimensional Lie algebras given by structure constants.

Elements of a Lie algebra are plain dicts ``{generator index: Fraction}``
with no zero values stored; elements of ``g (x) g`` are dicts keyed by
index pairs.  Every concrete algebra used by the package (gl(n), the
four-parameter solvable carrier algebra, the Borel subalgebra of sl(2))
is built here.
"""

from collections import namedtuple
from fractions import Fraction
from itertools import combinations
from math import factorial

from .errors import (BracketMismatch, ConstraintViolation, DuplicateName,
                     JacobiViolation, NotNilpotent, UnknownGenerator)


def rat(value):
    """Coerce an int, Fraction or ``"p/q"`` literal to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError("not an exact rational: %r" % (value,))


def _clean(d):
    return {k: v for k, v in d.items() if v}


def _axpy(acc, coeff, d):
    for k, v in d.items():
        acc[k] = acc.get(k, 0) + coeff * v


def lincomb(*pairs):
    """Sum of ``coeff * element`` over ``(coeff, element)`` pairs."""
    acc = {}
    for c, d in pairs:
        _axpy(acc, c, d)
    return _clean(acc)


class LieAlgebra:
    """Lie algebra with a named, ordered basis.

    ``structure[(i, j)]`` is the element ``[x_i, x_j]``; it is stored for
    both orders and only when nonzero.  ``weight`` is an optional integer
    grading character (one value per generator) and ``aliases`` maps extra
    names such as ``H_12`` to fixed linear combinations.
    """

    def __init__(self, names, structure, weight=None, aliases=None, label=None):
        self.names = tuple(names)
        self.dim = len(self.names)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.structure = {k: dict(v) for k, v in structure.items() if v}
        self.weight = tuple(weight) if weight is not None else None
        self.aliases = dict(aliases or {})
        self.label = label or "explicit(%s)" % ",".join(self.names)

    def __repr__(self):
        return "LieAlgebra(%s)" % self.label

    # -- element helpers ---------------------------------------------------

    def basis(self, i):
        return {i: Fraction(1)}

    def element(self, spec):
        """Resolve a generator name, alias or ``{name: coeff}`` mapping."""
        if isinstance(spec, str):
            if spec in self.index:
                return {self.index[spec]: Fraction(1)}
            if spec in self.aliases:
                return dict(self.aliases[spec])
            raise UnknownGenerator(spec)
        if isinstance(spec, dict):
            acc = {}
            for k, c in spec.items():
                if isinstance(k, str):
                    _axpy(acc, rat(c), self.element(k))
                else:
                    acc[k] = acc.get(k, 0) + rat(c)
            return _clean(acc)
        raise TypeError("cannot interpret %r as a Lie element" % (spec,))

    def has_name(self, name):
        return name in self.index or name in self.aliases

    def format(self, elem):
        if not elem:
            return "0"
        parts = []
        for i in sorted(elem):
            c = elem[i]
            parts.append("%s*%s" % (c, self.names[i]) if c != 1 else self.names[i])
        return " + ".join(parts)

    # -- brackets ----------------------------------------------------------

    def bracket_basis(self, i, j):
        return self.structure.get((i, j), {})

    def bracket(self, x, y):
        acc = {}
        for i, a in x.items():
            for j, b in y.items():
                br = self.structure.get((i, j))
                if br:
                    _axpy(acc, a * b, br)
        return _clean(acc)

    def ad(self, x, target):
        """``ad x`` on an element of g or g (x) g (keys int or index pairs)."""
        if not target:
            return {}
        key = next(iter(target))
        if isinstance(key, tuple):
            acc = {}
            for (i, j), c in target.items():
                for k, v in self.bracket(x, {i: 1}).items():
                    acc[(k, j)] = acc.get((k, j), 0) + c * v
                for k, v in self.bracket(x, {j: 1}).items():
                    acc[(i, k)] = acc.get((i, k), 0) + c * v
            return _clean(acc)
        return self.bracket(x, target)

    def jacobi_residual(self, i, j, k):
        bi, bj, bk = self.basis(i), self.basis(j), self.basis(k)
        return lincomb(
            (1, self.bracket(self.bracket(bi, bj), bk)),
            (1, self.bracket(self.bracket(bj, bk), bi)),
            (1, self.bracket(self.bracket(bk, bi), bj)),
        )

    def first_jacobi_failure(self):
        for i, j, k in combinations(range(self.dim), 3):
            res = self.jacobi_residual(i, j, k)
            if res:
                return (self.names[i], self.names[j], self.names[k]), res
        return None

    def weight_of(self, elem):
        """Weight of a homogeneous element, or None if it is not homogeneous."""
        if self.weight is None:
            raise ValueError("algebra %s has no weight character" % self.label)
        ws = {self.weight[i] for i in elem}
        return ws.pop() if len(ws) == 1 else None

    def with_weight(self, weight):
        return LieAlgebra(self.names, self.structure, weight, self.aliases, self.label)

    def is_eigenvector(self, h, x):
        """Return lam with ``[h, x] = lam x`` or None."""
        br = self.bracket(h, x)
        if not br:
            return Fraction(0)
        i = next(iter(x))
        lam = br.get(i, 0) / x[i]
        if lincomb((1, br), (-lam, x)):
            return None
        return lam


def define_lie_algebra(names, brackets, weight=None, aliases=None, label=None):
    """Build and validate a Lie algebra.

    ``brackets`` maps name pairs ``(x, y)`` to ``{name: coeff}`` dicts giving
    ``[x, y]``; the opposite order is filled in automatically.
    """
    names = list(names)
    seen = set()
    for n in names:
        if n in seen:
            raise DuplicateName(n)
        seen.add(n)
    index = {n: i for i, n in enumerate(names)}

    def lookup(n):
        try:
            return index[n]
        except KeyError:
            raise UnknownGenerator(n) from None

    structure = {}
    for (x, y), val in brackets.items():
        i, j = lookup(x), lookup(y)
        elem = _clean({lookup(k): rat(c) for k, c in val.items()})
        if i == j:
            if elem:
                raise ConstraintViolation("[%s, %s] must vanish" % (x, y))
            continue
        neg = {k: -c for k, c in elem.items()}
        for key, e in (((i, j), elem), ((j, i), neg)):
            if key in structure and structure[key] != e:
                raise ConstraintViolation("inconsistent brackets for (%s, %s)" % (x, y))
            structure[key] = e
    if weight is not None:
        if isinstance(weight, dict):
            weight = [weight[n] for n in names]
        if len(weight) != len(names):
            raise ConstraintViolation("weight table must cover all generators")
    resolved = {}
    for a, spec in (aliases or {}).items():
        resolved[a] = _clean({lookup(k): rat(c) for k, c in spec.items()})
    alg = LieAlgebra(names, structure, weight, resolved, label)
    fail = alg.first_jacobi_failure()
    if fail is not None:
        raise JacobiViolation(*fail)
    return alg


def gl_name(i, j, n):
    return "E_%d%d" % (i, j) if n < 10 else "E_%d_%d" % (i, j)


def make_gl(n, weight=None):
    """gl(n) in the basis E_ij (row-major), [E_ij, E_kl] = d_jk E_il - d_il E_kj.

    sl(n) elements are linear combinations inside gl(n); ``H_ij`` is an
    alias for ``E_ii - E_jj``.  ``weight`` may be a vector lam of length n,
    giving w(E_ij) = lam_j - lam_i.
    """
    if n < 2:
        raise ValueError("gl(n) needs n >= 2")
    names = [gl_name(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1)]
    idx = lambda i, j: (i - 1) * n + (j - 1)
    structure = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    acc = {}
                    if j == k:
                        acc[idx(i, l)] = acc.get(idx(i, l), 0) + 1
                    if i == l:
                        acc[idx(k, j)] = acc.get(idx(k, j), 0) - 1
                    acc = {a: Fraction(b) for a, b in acc.items() if b}
                    if acc:
                        structure[(idx(i, j), idx(k, l))] = acc
    aliases = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                hn = "H_%d%d" % (i, j) if n < 10 else "H_%d_%d" % (i, j)
                aliases[hn] = {idx(i, i): Fraction(1), idx(j, j): Fraction(-1)}
    w = None
    if weight is not None:
        lam = list(weight)
        if len(lam) != n:
            raise ValueError("gl weight vector must have length n")
        w = [lam[j - 1] - lam[i - 1] for i in range(1, n + 1) for j in range(1, n + 1)]
    return LieAlgebra(names, structure, w, aliases, "gl(%d)" % n)


CARRIER_NAMES = ("E", "A", "B", "H")


def make_carrier_L(alpha, beta, gamma, delta, weight=(1, 1, 0, 0)):
    """The solvable carrier algebra with basis (E, A, B, H).

    [H,E] = delta E, [H,A] = alpha A, [H,B] = beta B, [A,B] = gamma E,
    E central in {E, A, B}; requires alpha + beta = delta.
    """
    alpha, beta, gamma, delta = map(rat, (alpha, beta, gamma, delta))
    if alpha + beta != delta:
        raise ConstraintViolation("alpha + beta = %s != delta = %s" % (alpha + beta, delta))
    brackets = {
        ("H", "E"): {"E": delta},
        ("H", "A"): {"A": alpha},
        ("H", "B"): {"B": beta},
        ("A", "B"): {"E": gamma},
    }
    label = "L(%s,%s,%s,%s)" % (alpha, beta, gamma, delta)
    alg = define_lie_algebra(CARRIER_NAMES, brackets, weight=weight, label=label)
    alg.params = dict(alpha=alpha, beta=beta, gamma=gamma, delta=delta)
    return alg


def make_borel2(weight=(1, 0)):
    """B(2) = span(E, H) with [H, E] = 2E."""
    return define_lie_algebra(("E", "H"), {("H", "E"): {"E": 2}}, weight=weight, label="B(2)")


class Morphism:
    """Bracket-preserving linear map, given on generators."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = images  # source index -> target element

    def __call__(self, elem):
        acc = {}
        for i, c in elem.items():
            _axpy(acc, c, self.images[i])
        return _clean(acc)


def check_morphism(src, images, dst):
    """Validate that ``images`` (source name -> target spec) is a Lie morphism."""
    imgs = {}
    for name in src.names:
        if name not in images:
            raise UnknownGenerator("no image given for %s" % name)
        imgs[src.index[name]] = dst.element(images[name])
    phi = Morphism(src, dst, imgs)
    for i, j in combinations(range(src.dim), 2):
        lhs = phi(src.bracket_basis(i, j))
        rhs = dst.bracket(imgs[i], imgs[j])
        if lincomb((1, lhs), (-1, rhs)):
            raise BracketMismatch((src.names[i], src.names[j]), dst.format(lhs), dst.format(rhs))
    return phi


FrobeniusForm = namedtuple("FrobeniusForm", "matrix det rank")


def frobenius_form(alg, functional):
    """The coboundary form b(x_i, x_j) = f([x_i, x_j]) with its determinant and rank."""
    import sympy

    f = [rat(c) for c in functional]
    if len(f) != alg.dim:
        raise ValueError("functional must have one coefficient per generator")
    mat = [[sum((f[k] * c for k, c in alg.bracket_basis(i, j).items()), Fraction(0))
            for j in range(alg.dim)] for i in range(alg.dim)]
    sm = sympy.Matrix(alg.dim, alg.dim,
                      lambda i, j: sympy.Rational(mat[i][j].numerator, mat[i][j].denominator))
    det = sm.det()
    return FrobeniusForm(mat, Fraction(int(det.p), int(det.q)), int(sm.rank()))


def adjoint_flow_terms(alg, x, target):
    """Terms ad(x)^k(target) / k!, stopping at the first zero.

    Raises NotNilpotent if the series does not terminate within dim^2 steps.
    """
    x = alg.element(x) if not isinstance(x, dict) or any(isinstance(k, str) for k in x) else x
    terms = []
    cur = dict(target)
    for k in range(alg.dim ** 2 + 1):
        if not cur:
            return terms
        terms.append({key: c / factorial(k) for key, c in cur.items()})
        cur = alg.ad(x, cur)
    raise NotNilpotent("ad(%s) is not nilpotent on the target" % alg.format(x))


def adjoint_flow(alg, x, t, target):
    """exp(t ad x)(target) for target in g or g (x) g."""
    t = rat(t)
    acc = {}
    for k, term in enumerate(adjoint_flow_terms(alg, x, target)):
        _axpy(acc, t ** k, term)
    return _clean(acc)
