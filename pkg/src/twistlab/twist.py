"""Twist elements, twisted Hopf structures and their verification.

A twist is an invertible element F of U(g) (x) U(g)[[xi]] with constant
term 1 (x) 1.  It deforms a coproduct into Delta_F(a) = F Delta(a) F^-1
and gives the triangular R-matrix F_21 F^-1.  All identities are checked
exactly modulo xi^(N+1): a residual passes iff it is identically zero.

The jordanian factor uses sigma = delta^-1 log(1 + xi gamma E); the
deformation parameter xi multiplies every extension exponent, so that the
weight character w (w(E) = w(A) = 1) makes the xi^k part of every twist
homogeneous of weight k.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (BracketMismatch, ConstraintViolation, DeltaZero,
                     MissingSigma, NonInvertibleV, OrderMismatch)
from .lie import check_morphism, lincomb, make_carrier_L, rat
from .pbw import (Antipode0, ConjugatedMap, Counit, PrimitiveCoproduct,
                  SolvedAntipode, TableCoproduct, XiSeries, apply_morphism,
                  generator, lie_to_uea, multiply_slots, series_exp,
                  series_inverse, series_log, series_pow, unit, weight_defects)


@dataclass(frozen=True)
class SigmaContext:
    """sigma = delta^-1 log(1 + xi gamma E), with H the Cartan partner of E."""

    E: object
    delta: Fraction
    gamma: Fraction
    H: object = None

    def base(self, alg, order):
        return XiSeries.unit(alg, 1, order) + XiSeries.from_tensor(
            generator(alg, self.E), order, 1).scale(self.gamma)

    def sigma(self, alg, order):
        if self.delta == 0:
            raise DeltaZero("sigma is undefined for delta = 0")
        return series_log(self.base(alg, order)).scale(1 / self.delta)

    def esig(self, alg, order, q):
        """e^{q sigma} = (1 + xi gamma E)^(q / delta)."""
        if self.delta == 0:
            raise DeltaZero("sigma is undefined for delta = 0")
        return series_pow(self.base(alg, order), rat(q) / self.delta)


def series_tensor(a, b):
    """a (x) b for two arity-1 series (xi-convolution)."""
    return a.embed((0,), 2) * b.embed((1,), 2)


def _series(alg, order, x):
    if isinstance(x, XiSeries):
        return x
    if isinstance(x, (str, dict)):
        return XiSeries.from_tensor(generator(alg, x), order)
    return XiSeries.from_tensor(x, order)


@dataclass
class Twist:
    element: XiSeries
    inverse: XiSeries
    descriptor: tuple = ()
    sigma: SigmaContext = None
    factors: list = field(default_factory=list)

    @property
    def algebra(self):
        return self.element.algebra

    @property
    def order(self):
        return self.element.order

    @classmethod
    def from_element(cls, element, descriptor=(), sigma=None):
        tw = cls(element, series_inverse(element), tuple(descriptor), sigma)
        tw.factors = [tw]
        return tw

    def normalization_residuals(self):
        eps = Counit(self.algebra, self.order)
        one = XiSeries.unit(self.algebra, 1, self.order)
        return eps.apply(self.element, 0) - one, eps.apply(self.element, 1) - one

    def inverse_residual(self):
        return self.element * self.inverse - 1

    def weight_defects(self):
        return weight_defects(self.element, 0)

    def __repr__(self):
        return "Twist(%s, N=%d)" % (" * ".join(str(d) for d in reversed(self.descriptor)) or "1", self.order)


def identity_twist(alg, order):
    return Twist.from_element(XiSeries.unit(alg, 2, order), (("identity",),))


def jordanian_twist(alg, H, E, delta, gamma, order):
    """Phi_j = exp(H (x) sigma), sigma = delta^-1 log(1 + xi gamma E)."""
    delta, gamma = rat(delta), rat(gamma)
    if delta == 0:
        raise DeltaZero("jordanian twist needs delta != 0")
    h, e = alg.element(H), alg.element(E)
    br = alg.bracket(h, e)
    expected = {k: delta * v for k, v in e.items()}
    if lincomb((1, br), (-1, expected)):
        raise BracketMismatch((H, E), alg.format(br), alg.format(expected))
    ctx = SigmaContext(E, delta, gamma, H)
    hs = XiSeries.from_tensor(generator(alg, H), order)
    phi = series_exp(series_tensor(hs, ctx.sigma(alg, order)))
    desc = ("jordanian", ("H", H), ("E", E), ("delta", delta), ("gamma", gamma))
    return Twist.from_element(phi, (desc,), ctx)


def abelian_twist(alg, X, Y, c, order):
    """exp(xi c X (x) Y) for commuting X, Y (the degenerate jordanian case)."""
    x, y = alg.element(X), alg.element(Y)
    if alg.bracket(x, y):
        raise ConstraintViolation("abelian twist needs [X, Y] = 0")
    arg = series_tensor(_series(alg, order, X), _series(alg, order, Y)).shift(1).scale(rat(c))
    return Twist.from_element(series_exp(arg), (("abelian", ("X", X), ("Y", Y), ("c", rat(c))),))


EXTENSION_KINDS = ("E", "E'", "P", "P'", "heisA", "heisB", "slN")


def _eigenvalue(alg, sigma, x, label):
    if sigma is None or sigma.H is None:
        raise MissingSigma("extension needs a jordanian context with H")
    lam = alg.is_eigenvector(alg.element(sigma.H), alg.element(x))
    if lam is None and alg.element(x):
        raise ConstraintViolation("%s is not an ad(H) eigenvector" % label)
    return lam or Fraction(0)


def _power_of_fe(alg, order, E, gamma_t, q):
    base = XiSeries.unit(alg, 1, order) + XiSeries.from_tensor(generator(alg, E), order, 1).scale(rat(gamma_t))
    return series_pow(base, rat(q))


def extension_factor(kind, alg, bindings, order, sigma=None):
    """Build one extension factor of an extended jordanian twist.

    kind        exponent
    E           xi A (x) B e^{-beta sigma}
    E'          -xi B (x) A e^{-alpha sigma}
    P           xi A (x) B e^{-delta sigma}        (needs beta = delta)
    P'          xi A (x) B
    heisA       xi A (x) B f_B^-1,   f_B = (1 + xi gt E)^qB
    heisB       -xi B (x) A f_A^-1,  f_A = (1 + xi gt E)^qA
    slN         2 xi sum_i E_1i (x) E_iN e^{-sigma}

    ``bindings`` supplies A and B (names or element dicts), or ``pairs``
    (a list of (A, B)) for several disjoint pairs at once.  heisA/heisB
    also need E, gamma_t and qB (resp. qA).
    """
    if kind not in EXTENSION_KINDS:
        raise ValueError("unknown extension kind %r" % kind)
    b = dict(bindings)
    coeff = rat(b.get("coeff", 1))
    if kind == "slN":
        n = int(b.get("n") or round(alg.dim ** 0.5))
        from .lie import gl_name
        pairs = [(gl_name(1, i, n), gl_name(i, n, n)) for i in range(2, n)]
        coeff = rat(b.get("coeff", 2))
        kind_eff = "E"
    else:
        pairs = b.get("pairs") or [(b.get("A"), b.get("B"))]
        kind_eff = kind
    if kind_eff in ("E", "E'", "P") and sigma is None:
        raise MissingSigma("extension %s references sigma but no jordanian twist precedes it" % kind)
    exponent = XiSeries.zero(alg, 2, order)
    for A, B in pairs:
        a_s, b_s = _series(alg, order, A), _series(alg, order, B)
        if kind_eff == "E":
            beta = _eigenvalue(alg, sigma, B, "B")
            term = series_tensor(a_s, b_s * sigma.esig(alg, order, -beta))
        elif kind_eff == "E'":
            alpha = _eigenvalue(alg, sigma, A, "A")
            term = -series_tensor(b_s, a_s * sigma.esig(alg, order, -alpha))
        elif kind_eff == "P":
            beta = _eigenvalue(alg, sigma, B, "B")
            if beta != sigma.delta:
                raise ConstraintViolation("P extension needs [H, B] = delta B")
            term = series_tensor(a_s, b_s * sigma.esig(alg, order, -sigma.delta))
        elif kind_eff == "P'":
            term = series_tensor(a_s, b_s)
        elif kind_eff == "heisA":
            fb_inv = _power_of_fe(alg, order, b["E"], b["gamma_t"], -rat(b["qB"]))
            term = series_tensor(a_s, b_s * fb_inv)
        else:  # heisB
            fa_inv = _power_of_fe(alg, order, b["E"], b["gamma_t"], -rat(b["qA"]))
            term = -series_tensor(b_s, a_s * fa_inv)
        exponent = exponent + term
    element = series_exp(exponent.shift(1).scale(coeff))
    desc = (kind,) + tuple(sorted((k, str(v)) for k, v in b.items()))
    return Twist.from_element(element, (desc,), sigma)


def compose_twists(f2, f1):
    """F = F2 F1: F1 twists the original coproduct, F2 the F1-twisted one."""
    if f1.order != f2.order:
        raise OrderMismatch("orders %d and %d" % (f1.order, f2.order))
    if f1.algebra is not f2.algebra:
        raise ValueError("twists live over different algebras")
    tw = Twist(f2.element * f1.element, f1.inverse * f2.inverse,
               f1.descriptor + f2.descriptor, f1.sigma or f2.sigma)
    tw.factors = f1.factors + f2.factors
    return tw


def compose_chain(twists):
    """Compose twists given in application order (first applied first)."""
    out = twists[0]
    for t in twists[1:]:
        out = compose_twists(t, out)
    return out


class TwistedCoproduct(ConjugatedMap):
    """Delta_F(m) = F Delta(m) F^-1 on monomials."""

    def __init__(self, twist, base=None):
        base = base or PrimitiveCoproduct(twist.algebra, twist.order)
        super().__init__(base, twist.element, twist.inverse)
        self.twist = twist


def twist_coproduct(twist, x, base=None):
    return TwistedCoproduct(twist, base).apply(_series(twist.algebra, twist.order, x))


def twist_antipode(twist, base_antipode=None):
    """Return (v, S_F) with v = sum f1 S(f2) and S_F(a) = v S(a) v^-1."""
    S = base_antipode or Antipode0(twist.algebra, twist.order)
    v = multiply_slots(S.apply(twist.element, 1))
    if not v.is_unit_leading():
        raise NonInvertibleV("v does not start with 1")
    return v, ConjugatedMap(S, v, series_inverse(v))


def universal_R(twist):
    """R = F_21 F^-1 (the untwisted algebra is cocommutative, R = 1)."""
    return twist.element.flip() * twist.inverse


def _e12(x):
    return x.embed((0, 1), 3)


def _e13(x):
    return x.embed((0, 2), 3)


def _e23(x):
    return x.embed((1, 2), 3)


def check_twist_equation(twist, base=None):
    """F_12 (Delta (x) id)(F) - F_23 (id (x) Delta)(F)."""
    F = twist.element
    base = base or PrimitiveCoproduct(twist.algebra, twist.order)
    return _e12(F) * base.apply(F, 0) - _e23(F) * base.apply(F, 1)


FACTORIZED_VARIANTS = ("std_lhs", "std_rhs_twisted", "pprime_lhs_twisted", "pprime_rhs")


def check_factorized(twist, variant, base=None):
    """Residual of one factorized twist equation.

    std_lhs             (Delta (x) id) F   - F_13 F_23
    std_rhs_twisted     (id (x) Delta_F) F - F_12 F_13
    pprime_lhs_twisted  (Delta_F (x) id) F - F_13 F_23
    pprime_rhs          (id (x) Delta) F   - F_12 F_13
    """
    F = twist.element
    base = base or PrimitiveCoproduct(twist.algebra, twist.order)
    if variant == "std_lhs":
        return base.apply(F, 0) - _e13(F) * _e23(F)
    if variant == "std_rhs_twisted":
        return TwistedCoproduct(twist, base).apply(F, 1) - _e12(F) * _e13(F)
    if variant == "pprime_lhs_twisted":
        return TwistedCoproduct(twist, base).apply(F, 0) - _e13(F) * _e23(F)
    if variant == "pprime_rhs":
        return base.apply(F, 1) - _e12(F) * _e13(F)
    raise ValueError("unknown factorized variant %r" % variant)


def check_qybe(R):
    return _e12(R) * _e13(R) * _e23(R) - _e23(R) * _e13(R) * _e12(R)


def check_triangularity(R):
    return R.flip() * R - 1


class CoproductTable:
    """Coproduct images of named generators (or aliases) as arity-2 series."""

    def __init__(self, algebra, order, entries):
        self.algebra = algebra
        self.order = order
        self.entries = dict(entries)

    def __getitem__(self, name):
        return self.entries[name]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def items(self):
        return self.entries.items()

    def coproduct(self):
        return TableCoproduct(self.algebra, self.order, self.entries)

    def __eq__(self, other):
        return (isinstance(other, CoproductTable) and list(self.entries) == list(other.entries)
                and all(self.entries[k] == other.entries[k] for k in self.entries))

    __hash__ = None


def coproduct_table(twist, generators=None, base=None):
    """Apply the twisted coproduct to each listed generator (default: the basis)."""
    alg = twist.algebra
    names = list(generators or alg.names)
    delta = TwistedCoproduct(twist, base)
    return CoproductTable(alg, twist.order, {n: delta.on_generator(n) for n in names})


def base_table(coproduct, generators=None):
    alg = coproduct.algebra
    names = list(generators or alg.names)
    return CoproductTable(alg, coproduct.order, {n: coproduct.on_generator(n) for n in names})


def heisenberg_table(alg, order, qA, qB, qA_prime=0, qB_prime=0, gamma_t=1):
    """The Heisenberg coalgebra with group-likes f = (1 + xi gamma_t E)^q.

    Delta(A) = A (x) f_A + f'_A (x) A,  Delta(B) = B (x) f_B + f'_B (x) B,
    Delta(E) = E (x) f_E + 1 (x) E with f_E = 1 + xi gamma_t E, and, if the
    algebra has a central H, Delta(H) = H (x) f_E^-1 + 1 (x) H.
    """
    f = lambda q: _power_of_fe(alg, order, "E", gamma_t, q)
    one = XiSeries.unit(alg, 1, order)

    def pair(x, right, left):
        xs = _series(alg, order, x)
        return series_tensor(xs, right) + series_tensor(left, xs)

    entries = {
        "E": pair("E", f(1), one),
        "A": pair("A", f(qA), f(qA_prime)),
        "B": pair("B", f(qB), f(qB_prime)),
    }
    if alg.has_name("H"):
        entries["H"] = pair("H", f(-1), one)
    ordered = {n: entries[n] for n in alg.names if n in entries}
    return CoproductTable(alg, order, ordered)


@dataclass
class HopfReport:
    """Residuals of the Hopf axioms, per axiom and per generator (or pair)."""

    residuals: dict = field(default_factory=dict)

    def add(self, axiom, item, series):
        self.residuals.setdefault(axiom, {})[item] = series

    @property
    def passed(self):
        return not self.failures()

    def failures(self):
        out = []
        for axiom, items in self.residuals.items():
            for item, res in items.items():
                if not res.is_zero():
                    out.append((axiom, item, res.first_nonzero()))
        return out

    def axiom_passed(self, axiom):
        return all(r.is_zero() for r in self.residuals.get(axiom, {}).values())


def check_hopf_axioms(coproduct, antipode=None, generators=None):
    """Coassociativity, counit, homomorphism and antipode residuals on generators."""
    alg, order = coproduct.algebra, coproduct.order
    if isinstance(coproduct, CoproductTable):
        coproduct = coproduct.coproduct()
    if antipode is None:
        antipode = SolvedAntipode(coproduct)
    eps = Counit(alg, order)
    names = list(generators or alg.names)
    report = HopfReport()
    images = {}
    for n in names:
        x = XiSeries.from_tensor(generator(alg, n), order)
        d = images[n] = coproduct.apply(x)
        report.add("coassociativity", n, coproduct.apply(d, 0) - coproduct.apply(d, 1))
        report.add("counit_left", n, eps.apply(d, 0) - x)
        report.add("counit_right", n, eps.apply(d, 1) - x)
        report.add("antipode_left", n, multiply_slots(antipode.apply(d, 0)))
        report.add("antipode_right", n, multiply_slots(antipode.apply(d, 1)))
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            br = alg.bracket(alg.element(a), alg.element(b))
            dbr = coproduct.apply(XiSeries.from_tensor(lie_to_uea(alg, br), order))
            lhs = images[a] * images[b] - images[b] * images[a]
            report.add("homomorphism", (a, b), lhs - dbr)
    return report


def substitution_morphism(alg, rule="swap"):
    """The map (A, B, alpha, beta) -> (B, -A, beta, alpha) between carrier algebras.

    Returns a Morphism from L(alpha, beta, gamma, delta) to
    L(beta, alpha, gamma, delta); ``rule="identity"`` gives the identity.
    """
    p = alg.params
    if rule == "identity":
        return check_morphism(alg, {n: n for n in alg.names}, alg)
    if rule != "swap":
        raise ValueError("unknown substitution rule %r" % rule)
    if p["alpha"] == p["beta"]:
        target = alg
    else:
        target = make_carrier_L(p["beta"], p["alpha"], p["gamma"], p["delta"], weight=alg.weight)
    return check_morphism(alg, {"E": "E", "A": "B", "B": {"A": -1}, "H": "H"}, target)


def equivalence_substitution(obj, rule="swap"):
    """Transport a Twist or CoproductTable along the generator substitution.

    A table T becomes T'[y] = (phi (x) phi)(T[phi^-1(y)]); a twist F becomes
    (phi (x) phi)(F) over the target algebra.
    """
    alg = obj.algebra
    phi = substitution_morphism(alg, rule)
    if isinstance(obj, Twist):
        el = apply_morphism(phi, obj.element)
        desc = obj.descriptor + (("substitution", rule),)
        sigma = obj.sigma
        return Twist(el, series_inverse(el), desc, sigma, [])
    inv = {}
    for i in range(alg.dim):
        # phi is a signed permutation of the basis, invert it directly
        (j, c), = phi.images[i].items()
        inv[j] = (i, 1 / c)
    entries = {}
    for name in phi.target.names:
        j = phi.target.index[name]
        i, c = inv[j]
        src = obj.entries[alg.names[i]]
        entries[name] = apply_morphism(phi, src).scale(c)
    return CoproductTable(phi.target, obj.order, entries)


def primitive_residual(coproduct, x):
    """Delta(x) - x (x) 1 - 1 (x) x for an arity-1 series x."""
    x = _series(coproduct.algebra, coproduct.order, x)
    return coproduct.apply(x) - x.embed((0,), 2) - x.embed((1,), 2)


def element_series(alg, order, x):
    return _series(alg, order, x)


def unit_series(alg, arity, order):
    return XiSeries.unit(alg, arity, order)


__all__ = [
    "SigmaContext", "Twist", "CoproductTable", "HopfReport", "TwistedCoproduct",
    "identity_twist", "jordanian_twist", "abelian_twist", "extension_factor",
    "compose_twists", "compose_chain", "twist_coproduct", "twist_antipode",
    "universal_R", "check_twist_equation", "check_factorized", "check_qybe",
    "check_triangularity", "coproduct_table", "base_table", "heisenberg_table",
    "check_hopf_axioms", "substitution_morphism", "equivalence_substitution",
    "primitive_residual", "series_tensor", "unit",
]
