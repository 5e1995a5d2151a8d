"""Fixture tables: closed-form coproducts in the expression language.

A fixture file has a ``[fixture]`` header (name, algebra, weight, sigma,
free-form metadata) and an ``[entries]`` section mapping generator names
to expressions.  Powers of xi are written explicitly; loading re-checks
them against the weight character and rejects inconsistent files.
"""

import configparser
import os
from dataclasses import dataclass, field
from importlib import resources

from .config import apply_weight, build_algebra, parse_sigma
from .errors import ConfigError, TwistlabError
from .expr import evaluate, parse_expression
from .pbw import key_str, format_coeff, weight_defects
from .twist import CoproductTable

HEADER_KEYS = {"name", "algebra", "weight", "sigma", "convention", "note"}


def bundled_path(name, suffix=".fix"):
    base = resources.files("twistlab") / "data" / "fixtures"
    return str(base / (name if name.endswith(suffix) else name + suffix))


def resolve(ref, suffix=".fix", relative_to=None):
    """A bundled fixture name or a path (relative to the job file if given)."""
    if os.sep in ref or ref.endswith(suffix):
        if relative_to and not os.path.isabs(ref):
            ref = os.path.join(os.path.dirname(relative_to), ref)
        return ref
    return bundled_path(ref, suffix)


@dataclass
class FixtureTable:
    name: str
    algebra: object
    sigma: object
    entries: dict
    meta: dict = field(default_factory=dict)

    def expand(self, order):
        """All entries as a CoproductTable truncated at ``order``."""
        out = {}
        for gen, tree in self.entries.items():
            out[gen] = evaluate(tree, self.algebra, order, self.sigma)
        return CoproductTable(self.algebra, order, out)

    def verify_weights(self, order=3):
        if self.algebra.weight is None:
            return
        table = self.expand(order)
        for gen, series in table.items():
            bad = weight_defects(series, self.algebra.weight_of(self.algebra.element(gen)))
            if bad:
                k, key, _ = bad[0]
                raise ConfigError("fixture %s: entry %s has term %s at xi^%d of the wrong weight"
                                  % (self.name, gen, key_str(self.algebra, key), k))


def parse_fixture(text, source="<string>"):
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("%s: %s" % (source, exc)) from exc
    if "fixture" not in cp or "entries" not in cp:
        raise ConfigError("%s: needs [fixture] and [entries]" % source)
    head = dict(cp["fixture"])
    bad = set(head) - HEADER_KEYS
    if bad:
        raise ConfigError("%s: unknown header keys %s" % (source, ", ".join(sorted(bad))))
    if "algebra" not in head:
        raise ConfigError("%s: header needs algebra" % source)
    alg = apply_weight(build_algebra(head["algebra"]), head.get("weight"))
    sigma = parse_sigma(head["sigma"]) if head.get("sigma") else None
    entries = {}
    for gen, text_ in cp["entries"].items():
        if not alg.has_name(gen):
            raise ConfigError("%s: unknown generator %s" % (source, gen))
        try:
            entries[gen] = parse_expression(" ".join(text_.split()), alg)
        except TwistlabError as exc:
            raise ConfigError("%s: entry %s: %s" % (source, gen, exc)) from exc
        if entries[gen].arity not in (None, 2):
            raise ConfigError("%s: entry %s is not a two-slot expression" % (source, gen))
    fx = FixtureTable(head.get("name", source), alg, sigma, entries, head)
    fx.verify_weights()
    return fx


def load_fixture(ref, relative_to=None):
    path = resolve(ref, ".fix", relative_to)
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_fixture(fh.read(), path)
    except OSError as exc:
        raise ConfigError("cannot read fixture %s: %s" % (ref, exc)) from exc


@dataclass
class FixtureReport:
    residuals: dict
    missing: list

    @property
    def passed(self):
        return not self.missing and all(r.is_zero() for r in self.residuals.values())

    def first_difference(self):
        """(generator, xi power, key, coefficient) of the first mismatch, or None."""
        for gen, res in self.residuals.items():
            hit = res.first_nonzero()
            if hit is not None:
                return (gen,) + tuple(hit)
        return None

    def describe(self, algebra):
        if self.missing:
            return "missing entries: %s" % ", ".join(self.missing)
        hit = self.first_difference()
        if hit is None:
            return "all %d entries agree" % len(self.residuals)
        gen, k, key, c = hit
        return "entry %s differs at xi^%d: %s %s (computed - fixture)" % (
            gen, k, format_coeff(c), key_str(algebra, key))


def compare_fixture(fixture, computed):
    """Compare fixture entries with a computed CoproductTable at its order.

    Names are matched by label; the computed table may use a different
    (but identically named) algebra object, so the fixture is evaluated
    directly over the computed algebra.
    """
    alg, order = computed.algebra, computed.order
    residuals, missing = {}, []
    for gen, tree in fixture.entries.items():
        if gen not in computed.entries:
            missing.append(gen)
            continue
        expected = evaluate(tree, alg, order, fixture.sigma)
        residuals[gen] = computed[gen] - expected
    return FixtureReport(residuals, missing)
