"""Job configuration files.

A job is an INI-style text file::

    [job]
    name = sl4_pet
    algebra = gl 4
    weight = lambda 0 0 1 1
    order = 4

    [twist]
    1 = jordanian H=H_12 E=E_24 delta=-1 gamma=1
    2 = extension P' A=E_23 B=E_34

    [checks]
    1 = twist_eq
    2 = compare fixture=sl4_pet_coproducts

List sections are ordered by their integer keys.  Parameters are exact
rationals written ``p`` or ``p/q``; unknown keys are rejected.
"""

import configparser
import re
import shlex
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, TwistlabError
from .lie import define_lie_algebra, make_borel2, make_carrier_L, make_gl
from .twist import SigmaContext

_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")

JOB_KEYS = {"name", "algebra", "weight", "order", "base", "generators", "note"}
TWIST_KINDS = {"jordanian", "extension", "abelian"}
CHECK_KINDS = {
    "twist_eq", "factorized", "hopf_axioms", "qybe", "triangularity", "coproduct_table",
    "compare", "classical_r", "cybe", "cobracket", "jacobi", "cojacobi",
    "bialgebra_cocycle", "mutual_cocycle", "frobenius", "rdj_flow", "grading",
    "normalization", "primitive", "equivalence",
}


def parse_rational(text):
    text = str(text).strip()
    if not _RAT.match(text):
        raise ConfigError("not an exact rational: %r" % text)
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ConfigError("zero denominator in %r" % text)
    return Fraction(int(num), int(den or 1))


def build_algebra(spec, brackets=None):
    """Algebra from a spec string: ``gl n``, ``carrier_L a b c d``, ``borel2``,
    ``heisenberg gamma`` or ``explicit X Y ...`` (with ``brackets``)."""
    parts = spec.split()
    if not parts:
        raise ConfigError("empty algebra spec")
    kind, args = parts[0], parts[1:]
    try:
        if kind in ("gl", "sl"):
            if len(args) != 1 or not args[0].isdigit():
                raise ConfigError("expected '%s n'" % kind)
            return make_gl(int(args[0]))
        if kind == "carrier_L":
            if len(args) != 4:
                raise ConfigError("carrier_L needs alpha beta gamma delta")
            return make_carrier_L(*map(parse_rational, args))
        if kind == "borel2":
            if args:
                raise ConfigError("borel2 takes no parameters")
            return make_borel2()
        if kind == "heisenberg":
            if len(args) != 1:
                raise ConfigError("heisenberg needs gamma")
            gamma = parse_rational(args[0])
            if gamma == 0:
                raise ConfigError("heisenberg needs gamma != 0")
            alg = make_carrier_L(0, 0, gamma, 0)
            alg.label = "Heis(%s)" % gamma
            return alg
        if kind == "explicit":
            if not args:
                raise ConfigError("explicit algebra needs generator names")
            br = {}
            for key, value in (brackets or {}).items():
                pair = key.split()
                if len(pair) != 2:
                    raise ConfigError("bracket key must be two generator names: %r" % key)
                br[tuple(pair)] = _linear(value)
            return define_lie_algebra(args, br)
    except TwistlabError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError("invalid algebra %r: %s" % (spec, exc)) from exc
    raise ConfigError("unknown algebra kind %r" % kind)


def _linear(text):
    """``2 X - 1/2 Y`` -> {"X": 2, "Y": -1/2}."""
    out = {}
    toks = text.replace("-", " - ").replace("+", " + ").split()
    sign, coeff = 1, None
    for t in toks:
        if t in "+-":
            sign = -1 if t == "-" else 1
        elif _RAT.match(t):
            coeff = parse_rational(t)
        else:
            out[t] = out.get(t, 0) + sign * (coeff if coeff is not None else 1)
            sign, coeff = 1, None
    return out


def apply_weight(alg, spec):
    """``lambda l1 .. ln`` (gl only) or ``values w1 .. wd`` in basis order."""
    if not spec:
        return alg
    parts = spec.split()
    vals = [parse_rational(v) for v in parts[1:]]
    if parts[0] == "lambda":
        n = round(alg.dim ** 0.5)
        if n * n != alg.dim or len(vals) != n or not alg.label.startswith("gl"):
            raise ConfigError("lambda weights need gl(n) and n values")
        w = [vals[j] - vals[i] for i in range(n) for j in range(n)]
    elif parts[0] == "values":
        if len(vals) != alg.dim:
            raise ConfigError("weight needs %d values" % alg.dim)
        w = vals
    else:
        raise ConfigError("unknown weight spec %r" % spec)
    alg.weight = w
    return alg


def parse_keyvals(tokens, where):
    out = {}
    for t in tokens:
        if "=" not in t:
            raise ConfigError("%s: expected key=value, got %r" % (where, t))
        k, v = t.split("=", 1)
        if k in out:
            raise ConfigError("%s: duplicate key %r" % (where, k))
        out[k] = v
    return out


def parse_sigma(spec):
    kv = parse_keyvals(spec.split(), "sigma")
    if set(kv) - {"E", "delta", "gamma", "H"} or "E" not in kv or "delta" not in kv:
        raise ConfigError("sigma spec needs E= delta= [gamma=] [H=]")
    return SigmaContext(kv["E"], parse_rational(kv["delta"]),
                        parse_rational(kv.get("gamma", "1")), kv.get("H"))


@dataclass
class Step:
    kind: str
    args: dict
    sub: str = None  # extension kind


@dataclass
class Check:
    kind: str
    args: dict
    label: str = ""


@dataclass
class JobConfig:
    name: str
    algebra_spec: str
    order: int = 4
    weight: str = None
    base: dict = None
    generators: list = None
    twist: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    brackets: dict = None
    path: str = None

    def build_algebra(self):
        alg = build_algebra(self.algebra_spec, self.brackets)
        return apply_weight(alg, self.weight)


def _ordered(section, where):
    items = []
    for key, value in section.items():
        if not key.isdigit():
            raise ConfigError("[%s]: keys must be integers, got %r" % (where, key))
        items.append((int(key), value))
    return [v for _, v in sorted(items)]


def _split(line, where):
    # only double quotes group tokens: a prime marks kinds like P'
    lex = shlex.shlex(line, posix=True)
    lex.quotes = '"'
    lex.whitespace_split = True
    lex.commenters = ""
    try:
        return list(lex)
    except ValueError as exc:
        raise ConfigError("%s: %s" % (where, exc)) from exc


def parse_job(text, path=None):
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("malformed config: %s" % exc) from exc
    unknown = set(cp.sections()) - {"job", "twist", "checks", "brackets"}
    if unknown:
        raise ConfigError("unknown sections: %s" % ", ".join(sorted(unknown)))
    if "job" not in cp:
        raise ConfigError("missing [job] section")
    job = cp["job"]
    bad = set(job) - JOB_KEYS
    if bad:
        raise ConfigError("unknown [job] keys: %s" % ", ".join(sorted(bad)))
    for key in ("name", "algebra"):
        if key not in job:
            raise ConfigError("[job] needs %s" % key)
    try:
        order = int(job.get("order", "4"))
    except ValueError:
        raise ConfigError("order must be an integer") from None
    if order < 1:
        raise ConfigError("order must be >= 1")
    cfg = JobConfig(job["name"], job["algebra"], order, job.get("weight"), path=path)
    if "brackets" in cp:
        cfg.brackets = dict(cp["brackets"])
    if "base" in job:
        toks = _split(job["base"], "base")
        if toks[0] != "heisenberg":
            raise ConfigError("only 'heisenberg' bases are supported")
        cfg.base = parse_keyvals(toks[1:], "base")
    if "generators" in job:
        cfg.generators = job["generators"].split()
    if "twist" in cp:
        for line in _ordered(cp["twist"], "twist"):
            toks = _split(line, "twist")
            if not toks or toks[0] not in TWIST_KINDS:
                raise ConfigError("unknown twist step %r" % line)
            if toks[0] == "extension":
                if len(toks) < 2:
                    raise ConfigError("extension needs a kind")
                cfg.twist.append(Step("extension", parse_keyvals(toks[2:], line), toks[1]))
            else:
                cfg.twist.append(Step(toks[0], parse_keyvals(toks[1:], line)))
    if "checks" in cp:
        for line in _ordered(cp["checks"], "checks"):
            toks = _split(line, "checks")
            if not toks or toks[0] not in CHECK_KINDS:
                raise ConfigError("unknown check %r" % line)
            args = parse_keyvals(toks[1:], line)
            if args.get("expect", "zero") not in ("zero", "nonzero"):
                raise ConfigError("expect must be zero or nonzero")
            cfg.checks.append(Check(toks[0], args, line))
    # validate the algebra now so that bad parameters are config errors
    cfg.build_algebra()
    return cfg


def load_job(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("cannot read %s: %s" % (path, exc)) from exc
    return parse_job(text, str(path))
