"""Closed-form expression language for coproduct fixtures.

Grammar::

    expr     := [sign] term (('+'|'-') term)*
    term     := [rational] factor* SEP factor* [SEP factor*]
    factor   := genname ['^' int] | 'esig(' rational ')' | 'xi' ['^' int] | '1'
    rational := int ['/' posint]
    SEP      := '(x)' | '⊗'

``esig(q)`` is e^{q sigma} in the ambient jordanian context and ``xi``
multiplies the whole term by the deformation parameter.  A term without
separator is an element of U(g).  The literal ``1`` is dropped from slots
that hold other factors, so an empty slot means the unit.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoSigmaContext, ParseError, UnknownGenerator
from .pbw import XiSeries, generator

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sep>\(x\)|⊗)
  | (?P<esig>esig\s*\()
  | (?P<num>\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9_']*)
  | (?P<op>[-+^/()*])
""", re.VERBOSE)


@dataclass(frozen=True)
class Gen:
    name: str
    power: int = 1


@dataclass(frozen=True)
class ESig:
    q: Fraction


@dataclass(frozen=True)
class Xi:
    power: int = 1


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    slots: tuple  # tuple of tuples of factors


@dataclass(frozen=True)
class Expr:
    terms: tuple

    @property
    def arity(self):
        return len(self.terms[0].slots) if self.terms else None


def tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.take()
        if t[0] != kind or (value is not None and t[1] != value):
            raise ParseError("expected %s, found %r" % (value or kind, t[1] or "end of input"), t[2])
        return t

    def is_op(self, value):
        t = self.peek()
        return t[0] == "op" and t[1] == value

    def integer(self):
        return int(self.expect("num")[1])

    def rational(self):
        sign = 1
        if self.is_op("-"):
            self.take()
            sign = -1
        num = self.integer()
        den = 1
        if self.is_op("/"):
            self.take()
            t = self.peek()
            den = self.integer()
            if den == 0:
                raise ParseError("zero denominator", t[2])
        return sign * Fraction(num, den)

    def expr(self):
        terms = []
        sign = 1
        if self.is_op("-") or self.is_op("+"):
            sign = -1 if self.take()[1] == "-" else 1
        terms.append(self.term(sign))
        while self.is_op("+") or self.is_op("-"):
            sign = -1 if self.take()[1] == "-" else 1
            start = self.peek()[2]
            tm = self.term(sign)
            if len(tm.slots) != len(terms[0].slots):
                raise ParseError("term has %d tensor slots, expected %d"
                                 % (len(tm.slots), len(terms[0].slots)), start)
            terms.append(tm)
        t = self.peek()
        if t[0] != "end":
            raise ParseError("unexpected %r" % t[1], t[2])
        return Expr(tuple(terms))

    def term(self, sign):
        start = self.peek()[2]
        coeff = Fraction(sign)
        if self.peek()[0] == "num":
            coeff *= self.rational()
            if self.is_op("*"):
                self.take()
        slots = [self.factors()]
        while self.peek()[0] == "sep":
            self.take()
            slots.append(self.factors())
        if len(slots) > 3:
            raise ParseError("at most three tensor slots", start)
        return Term(coeff, tuple(slots))

    def factors(self):
        out = []
        while True:
            kind, val, pos = self.peek()
            if kind == "num":
                if val != "1":
                    raise ParseError("only the literal 1 may appear as a factor", pos)
                self.take()
            elif kind == "esig":
                self.take()
                q = self.rational()
                self.expect("op", ")")
                out.append(ESig(q))
            elif kind == "name":
                self.take()
                power = 1
                if self.is_op("^"):
                    self.take()
                    power = self.integer()
                out.append(Xi(power) if val == "xi" else Gen(val, power))
            else:
                return tuple(out)


def parse_expression(text, algebra=None):
    """Parse ``text``; with ``algebra`` given, generator names are validated."""
    tree = _Parser(text).expr()
    if algebra is not None:
        for term in tree.terms:
            for slot in term.slots:
                for f in slot:
                    if isinstance(f, Gen) and not algebra.has_name(f.name):
                        raise UnknownGenerator(f.name)
    return tree


def _fmt_rat(q):
    return str(q)


def emit_expression(tree):
    """Canonical text (ASCII separator) for a parsed expression."""
    parts = []
    for n, term in enumerate(tree.terms):
        c = term.coeff
        sign = "-" if c < 0 else "+"
        c = abs(c)
        slots = []
        for slot in term.slots:
            fs = []
            for f in slot:
                if isinstance(f, Gen):
                    fs.append(f.name if f.power == 1 else "%s^%d" % (f.name, f.power))
                elif isinstance(f, ESig):
                    fs.append("esig(%s)" % _fmt_rat(f.q))
                else:
                    fs.append("xi" if f.power == 1 else "xi^%d" % f.power)
            slots.append(" ".join(fs) if fs else "1")
        body = " (x) ".join(slots)
        if c != 1:
            body = "%s %s" % (_fmt_rat(c), body)
        if n == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append("%s %s" % (sign, body))
    return " ".join(parts) if parts else "0"


def evaluate(tree, algebra, order, sigma=None):
    """Expand an expression to an XiSeries truncated at ``order``."""
    arity = tree.arity or 1
    total = XiSeries.zero(algebra, arity, order)
    for term in tree.terms:
        xi_power = 0
        slot_series = []
        for slot in term.slots:
            s = XiSeries.unit(algebra, 1, order)
            for f in slot:
                if isinstance(f, Gen):
                    if not algebra.has_name(f.name):
                        raise UnknownGenerator(f.name)
                    g = XiSeries.from_tensor(generator(algebra, f.name), order)
                    for _ in range(f.power):
                        s = s * g
                elif isinstance(f, ESig):
                    if sigma is None:
                        raise NoSigmaContext("esig(%s) used outside a jordanian context" % f.q)
                    s = s * sigma.esig(algebra, order, f.q)
                else:
                    xi_power += f.power
            slot_series.append(s)
        prod = slot_series[0].embed((0,), arity)
        for p, s in enumerate(slot_series[1:], start=1):
            prod = prod * s.embed((p,), arity)
        if xi_power:
            prod = prod.shift(xi_power)
        total = total + prod.scale(term.coeff)
    return total
