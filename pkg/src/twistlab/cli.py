"""Command-line driver: ``twistlab run <job>`` and ``twistlab verify-all``.

Exit codes: 0 every check passed, 1 some check failed (the report names
the check and a witness), 2 the job could not be parsed or built.
"""

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import semiclassical as sc
from .config import ConfigError, load_job, parse_rational
from .errors import TwistlabError
from .expr import evaluate, parse_expression
from .fixtures import compare_fixture, load_fixture, resolve
from .lie import frobenius_form
from .pbw import (PrimitiveCoproduct, SolvedAntipode, format_coeff,
                  key_str, weight_defects)
from .twist import (CoproductTable, SigmaContext, TwistedCoproduct, abelian_twist,
                    check_factorized, check_hopf_axioms, check_qybe,
                    check_triangularity, check_twist_equation, compose_chain,
                    equivalence_substitution, extension_factor, heisenberg_table,
                    identity_twist, jordanian_twist, primitive_residual,
                    twist_antipode, universal_R)


@dataclass
class CheckResult:
    label: str
    passed: bool
    detail: str = ""

    def line(self):
        return "%s %s%s" % ("PASS" if self.passed else "FAIL", self.label,
                            ": " + self.detail if self.detail else "")


def _series_witness(alg, series):
    hit = series.first_nonzero()
    if hit is None:
        return "residual 0"
    k, key, c = hit
    return "nonzero at xi^%d: %s %s" % (k, format_coeff(c), key_str(alg, key))


# -- building -------------------------------------------------------------------

def _step_twist(step, alg, order, sigma):
    a = dict(step.args)
    if step.kind == "jordanian":
        p = getattr(alg, "params", {})
        delta = parse_rational(a.pop("delta")) if "delta" in a else p.get("delta")
        gamma = parse_rational(a.pop("gamma")) if "gamma" in a else p.get("gamma")
        H, E = a.pop("H", "H"), a.pop("E", "E")
        if a or delta is None or gamma is None:
            raise ConfigError("jordanian step: bad or missing arguments %s" % sorted(a))
        return jordanian_twist(alg, H, E, delta, gamma, order)
    if step.kind == "abelian":
        if set(a) != {"X", "Y", "c"}:
            raise ConfigError("abelian step needs X= Y= c=")
        return abelian_twist(alg, a["X"], a["Y"], parse_rational(a["c"]), order)
    allowed = {"A", "B", "coeff", "pairs", "E", "gamma_t", "qA", "qB"}
    if set(a) - allowed:
        raise ConfigError("extension step: unknown keys %s" % sorted(set(a) - allowed))
    b = {}
    for k, v in a.items():
        if k in ("coeff", "gamma_t", "qA", "qB"):
            b[k] = parse_rational(v)
        elif k == "pairs":
            b[k] = [tuple(p.split(":")) for p in v.split(",")]
        else:
            b[k] = v
    if step.sub in ("heisA", "heisB"):
        b.setdefault("E", "E")
        b.setdefault("gamma_t", Fraction(1))
    return extension_factor(step.sub, alg, b, order, sigma)


class Job:
    """A configured computation: algebra, base coproduct and twist chain."""

    def __init__(self, cfg, order=None):
        self.cfg = cfg
        self.order = order or cfg.order
        self.alg = alg = cfg.build_algebra()
        self.sigma = None
        if cfg.base is not None:
            b = dict(cfg.base)
            bad = set(b) - {"qA", "qB", "qA_prime", "qB_prime", "gamma_t"}
            if bad or "qA" not in b or "qB" not in b:
                raise ConfigError("heisenberg base needs qA= qB= [qA_prime= qB_prime= gamma_t=]")
            vals = {k: parse_rational(v) for k, v in b.items()}
            self.base_table = heisenberg_table(alg, self.order, vals["qA"], vals["qB"],
                                               vals.get("qA_prime", 0), vals.get("qB_prime", 0),
                                               vals.get("gamma_t", 1))
            self.base = self.base_table.coproduct()
            self.sigma = SigmaContext("E", Fraction(1), vals.get("gamma_t", Fraction(1)))
        else:
            self.base_table = None
            self.base = PrimitiveCoproduct(alg, self.order)
        self.factors = []
        for step in cfg.twist:
            tw = _step_twist(step, alg, self.order, self.sigma)
            if tw.sigma is not None:
                self.sigma = tw.sigma
            self.factors.append(tw)
        self.twist = compose_chain(self.factors) if self.factors else identity_twist(alg, self.order)
        self._tables = {}

    def chain(self, upto=None):
        fs = self.factors[:upto] if upto is not None else self.factors
        return compose_chain(fs) if fs else identity_twist(self.alg, self.order)

    def coproduct(self, upto=None):
        if upto == 0 or not self.factors:
            return self.base
        return TwistedCoproduct(self.chain(upto), self.base)

    def table(self, names=None, upto=None):
        names = tuple(names or self.cfg.generators or self.alg.names)
        key = (names, upto)
        if key not in self._tables:
            d = self.coproduct(upto)
            self._tables[key] = CoproductTable(self.alg, self.order, {n: d.on_generator(n) for n in names})
        return self._tables[key]

    def full_table(self):
        return self.table(self.alg.names)

    def antipode(self):
        if self.factors and self.cfg.base is None:
            return twist_antipode(self.twist)[1]
        return SolvedAntipode(self.coproduct())

    def step_context(self, args):
        """(twist, base coproduct) for ``step=k`` (1-based) or the whole chain."""
        if "step" not in args:
            return self.twist, self.base
        k = int(args["step"])
        if not 1 <= k <= len(self.factors):
            raise ConfigError("step=%d out of range" % k)
        return self.factors[k - 1], self.coproduct(k - 1)

    def parse_element(self, text, arity):
        tree = parse_expression(text, self.alg)
        if (tree.arity or arity) != arity:
            raise ConfigError("expected a %d-slot expression: %r" % (arity, text))
        return evaluate(tree, self.alg, self.order, self.sigma)


# -- checks ----------------------------------------------------------------------

def _zero_result(label, alg, series, expect):
    zero = series.is_zero()
    ok = zero if expect == "zero" else not zero
    return CheckResult(label, ok, _series_witness(alg, series))


def _bitensor_from_expr(job, text):
    s = job.parse_element(text, 2)
    out = {}
    for k, key, c in s.terms():
        idx = [sc._deg1_index(m) for m in key]
        if k or None in idx:
            raise ConfigError("r-matrix expression must be a sum of x (x) y terms: %r" % text)
        out[tuple(idx)] = out.get(tuple(idx), 0) + c
    return {k: v for k, v in out.items() if v}


def _fmt_triple(names, triple, res, fmt):
    return "(%s) -> %s" % (", ".join(names[i] for i in triple), fmt(res))


def run_check(job, check, emitted):
    a = dict(check.args)
    expect = a.pop("expect", "zero")
    label = check.label
    alg = job.alg
    kind = check.kind

    if kind == "twist_eq":
        tw, base = job.step_context(a)
        return _zero_result(label, alg, check_twist_equation(tw, base), expect)
    if kind == "factorized":
        tw, base = job.step_context(a)
        return _zero_result(label, alg, check_factorized(tw, a["variant"], base), expect)
    if kind == "normalization":
        l, r = job.twist.normalization_residuals()
        inv = job.twist.inverse_residual()
        bad = [s for s in (l, r, inv) if not s.is_zero()]
        return CheckResult(label, not bad, _series_witness(alg, bad[0]) if bad else "counit and inverse exact")
    if kind == "grading":
        if alg.weight is None:
            raise ConfigError("grading needs a weight character")
        for tw in job.factors + [job.twist]:
            bad = tw.weight_defects()
            if bad:
                k, key, c = bad[0]
                return CheckResult(label, False, "twist term %s at xi^%d" % (key_str(alg, key), k))
        table = job.full_table()
        for gen, series in table.items():
            w = alg.weight_of(alg.element(gen))
            bad = weight_defects(series, w)
            if bad:
                k, key, c = bad[0]
                return CheckResult(label, False, "entry %s: term %s at xi^%d" % (gen, key_str(alg, key), k))
        return CheckResult(label, True, "%d entries homogeneous" % len(table))
    if kind == "hopf_axioms":
        rep = check_hopf_axioms(job.coproduct(), job.antipode(), job.cfg.generators)
        fails = rep.failures()
        ok = not fails if expect == "zero" else bool(fails)
        if fails:
            ax, item, (k, key, c) = fails[0]
            return CheckResult(label, ok, "%s on %s nonzero at xi^%d: %s %s"
                               % (ax, item, k, format_coeff(c), key_str(alg, key)))
        return CheckResult(label, ok, "all axioms exact")
    if kind in ("qybe", "triangularity"):
        R = universal_R(job.twist)
        res = check_qybe(R) if kind == "qybe" else check_triangularity(R)
        return _zero_result(label, alg, res, expect)
    if kind == "coproduct_table":
        table = job.table(upto=int(a["upto"]) if "upto" in a else None)
        emitted.append((job.cfg.name, table, job.sigma))
        return CheckResult(label, True, "%d entries" % len(table))
    if kind == "compare":
        fx = load_fixture(a["fixture"], job.cfg.path)
        table = job.table(list(fx.entries), upto=int(a["upto"]) if "upto" in a else None)
        rep = compare_fixture(fx, table)
        ok = rep.passed if expect == "zero" else not rep.passed
        return CheckResult(label, ok, rep.describe(alg))
    if kind in ("classical_r", "cybe"):
        r = sc.classical_r(universal_R(job.twist))
        if kind == "cybe":
            res = sc.check_cybe(alg, r)
            ok = (not res) == (expect == "zero")
            if res:
                t, c = sorted(res.items())[0]
                return CheckResult(label, ok, "nonzero on (%s): %s" % (", ".join(alg.names[i] for i in t), c))
            return CheckResult(label, ok, "CYBE residual 0")
        if "r" not in a:
            return CheckResult(label, True, sc.format_bitensor(alg, r))
        want = _bitensor_from_expr(job, a["r"])
        diff = sc.bitensor_add((1, r), (-1, want))
        ok = (not diff) == (expect == "zero")
        if diff:
            return CheckResult(label, ok, "computed %s" % sc.format_bitensor(alg, r))
        return CheckResult(label, ok, "r = %s" % sc.format_bitensor(alg, r))
    if kind in ("cobracket", "jacobi", "cojacobi", "bialgebra_cocycle", "mutual_cocycle"):
        delta = sc.cobracket_map(job.full_table())
        dual = sc.dual_from_cobracket(alg, delta)
        if kind == "cobracket":
            if "fixture" not in a:
                return CheckResult(label, True, "%d nonzero brackets" % len(dual.upper_entries()))
            with open(resolve(a["fixture"], ".dual", job.cfg.path), encoding="utf-8") as fh:
                want = sc.parse_dual_table(fh.read(), dual.names)
            diffs = [k for k in set(dual.brackets) | set(want.brackets)
                     if k[0] < k[1] and dual.brackets.get(k) != want.brackets.get(k)]
            ok = (not diffs) == (expect == "zero")
            if diffs:
                i, j = sorted(diffs)[0]
                return CheckResult(label, ok, "[%s, %s]: computed %s, fixture %s" % (
                    dual.names[i], dual.names[j], dual.format_element(dual.bracket_basis(i, j)),
                    want.format_element(want.bracket_basis(i, j))))
            return CheckResult(label, ok, "%d brackets agree" % len(dual.upper_entries()))
        if kind == "jacobi":
            res = sc.check_jacobi(dual)
        elif kind == "cojacobi":
            res = sc.check_cojacobi(alg, delta)
        elif kind == "bialgebra_cocycle":
            res = sc.check_bialgebra_cocycle(alg, delta)
        else:
            other = sc.make_dual_dj(int(a.get("n", round(alg.dim ** 0.5))))
            r1 = sc.check_mutual_cocycle(other, dual)
            r2 = sc.check_mutual_cocycle(dual, other)
            nonzero = bool(r1) and bool(r2)
            ok = nonzero if expect == "nonzero" else (not r1 and not r2)
            if r1:
                t = min(r1)
                return CheckResult(label, ok, "%d nonzero triples, witness %s" % (
                    len(r1), _fmt_triple(dual.names, t, r1[t], dual.format_element)))
            return CheckResult(label, ok, "mixed Jacobi residual 0")
        ok = (not res) == (expect == "zero")
        if res:
            t = min(res)
            return CheckResult(label, ok, "%d nonzero, first at %s" % (len(res), t))
        return CheckResult(label, ok, "residual 0")
    if kind == "frobenius":
        f = [Fraction(0)] * alg.dim
        for k, v in alg.element(a.get("functional", "E")).items():
            f[k] = v
        form = frobenius_form(alg, f)
        if a.get("det", "auto") == "auto":
            p = alg.params
            want = (p["gamma"] * p["delta"]) ** 2
        else:
            want = parse_rational(a["det"])
        ok = (form.det == want) == (expect == "zero")
        return CheckResult(label, ok, "det %s, expected %s, rank %d" % (form.det, want, form.rank))
    if kind == "rdj_flow":
        n = int(a["n"])
        t = [[parse_rational(x) for x in row.split()] for row in a["t"].split(";")]
        res = sc.r_dj_flow_check(n, t)
        bad = [(k, r) for k, r in enumerate(res) if r]
        ok = (not bad) == (expect == "zero")
        if bad:
            k, r = bad[0]
            return CheckResult(label, ok, "nonzero at xi^%d: %s" % (k, sc.format_bitensor(sc.make_gl(n), r)))
        return CheckResult(label, ok, "residual 0")
    if kind == "primitive":
        x = job.parse_element(a["element"], 1)
        return _zero_result(label, alg, primitive_residual(job.coproduct(), x), expect)
    if kind == "equivalence":
        return _equivalence(job, a, label, expect)
    raise ConfigError("unhandled check %s" % kind)


def _equivalence(job, a, label, expect):
    """Transport the table along the substitution and compare with the
    same chain in which the last extension is replaced by ``kind``."""
    from .config import Step

    new_kind = a.get("kind", "E'")
    table = job.full_table()
    moved = equivalence_substitution(table, a.get("rule", "swap"))
    target = moved.algebra
    alt_steps = list(job.cfg.twist)
    for i in range(len(alt_steps) - 1, -1, -1):
        if alt_steps[i].kind == "extension":
            alt_steps[i] = Step("extension", alt_steps[i].args, new_kind)
            break
    else:
        raise ConfigError("equivalence needs an extension step")
    sigma, factors = None, []
    for step in alt_steps:
        tw = _step_twist(step, target, job.order, sigma)
        sigma = tw.sigma or sigma
        factors.append(tw)
    d = TwistedCoproduct(compose_chain(factors))
    alt = CoproductTable(target, job.order, {n: d.on_generator(n) for n in target.names})
    for n in target.names:
        diff = moved[n] - alt[n]
        if not diff.is_zero():
            return CheckResult(label, expect != "zero", "entry %s: %s" % (n, _series_witness(target, diff)))
    return CheckResult(label, expect == "zero", "%d entries agree after substitution" % len(target.names))


# -- emission --------------------------------------------------------------------

def emit_table(table, fmt="structured", title=None):
    alg = table.algebra
    if fmt == "latex":
        return _emit_latex(table)
    lines = ["# coproduct table %s over %s, order %d" % (title or "", alg.label, table.order)]
    for gen in table:
        for k, key, c in table[gen].terms():
            lines.append("%s | xi^%d | %s | %s" % (gen, k, key_str(alg, key), format_coeff(c)))
    return "\n".join(lines) + "\n"


def _tex_mono(alg, m):
    parts = []
    for i, e in enumerate(m):
        if not e:
            continue
        name = alg.names[i]
        if "_" in name:
            head, tail = name.split("_", 1)
            name = "%s_{%s}" % (head, tail)
        parts.append(name if e == 1 else "%s^{%d}" % (name, e))
    return " ".join(parts) if parts else "1"


def _tex_coeff(c, first):
    c = Fraction(c)
    sign = "-" if c < 0 else ("" if first else "+")
    c = abs(c)
    body = "" if c == 1 else (str(c.numerator) if c.denominator == 1
                              else "\\tfrac{%d}{%d}" % (c.numerator, c.denominator))
    return "%s %s" % (sign, body) if body else sign


def _emit_latex(table):
    alg = table.algebra
    out = ["\\begin{array}{lcl}"]
    rows = []
    for gen in table:
        pieces = []
        for k, d in enumerate(table[gen].coeffs):
            if not d:
                continue
            terms = []
            for j, key in enumerate(sorted(d)):
                terms.append("%s %s" % (_tex_coeff(d[key], j == 0),
                                        " \\otimes ".join(_tex_mono(alg, m) for m in key)))
            body = " ".join(terms).strip()
            xi = "\\xi" if k == 1 else "\\xi^{%d}" % k
            pieces.append(body if k == 0 else "%s\\left(%s\\right)" % (xi, body))
        rows.append("\\Delta(%s) & = & %s" % (_tex_name(gen), " + ".join(pieces) or "0"))
    out.append(" \\\\\n".join(rows))
    out.append("\\end{array}")
    return "\n".join(out) + "\n"


def _tex_name(gen):
    head, _, tail = gen.partition("_")
    return "%s_{%s}" % (head, tail) if tail else head


# -- driver ----------------------------------------------------------------------

def run_job(path, order=None, emit="structured", out=None, stream=None, show_tables=True):
    """Run one job file; returns (exit code, report lines)."""
    stream = stream or sys.stdout
    try:
        cfg = load_job(path)
        job = Job(cfg, order)
    except (ConfigError, TwistlabError, KeyError, ValueError) as exc:
        msg = "ERROR %s: %s" % (path, exc)
        print(msg, file=stream)
        return 2, [msg]
    lines = ["job %s (%s, order %d)" % (cfg.name, job.alg.label, job.order)]
    emitted = []
    code = 0
    for check in cfg.checks:
        try:
            res = run_check(job, check, emitted)
        except ConfigError as exc:
            lines.append("ERROR %s: %s" % (check.label, exc))
            code = 2
            continue
        except (TwistlabError, KeyError, ValueError) as exc:
            res = CheckResult(check.label, False, "raised %s: %s" % (type(exc).__name__, exc))
        lines.append(res.line())
        if not res.passed and code == 0:
            code = 1
    for line in lines:
        print(line, file=stream)
    if out:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, cfg.name + ".report.txt"), "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        for name, table, _ in emitted:
            ext = ".table.tex" if emit == "latex" else ".table.txt"
            with open(os.path.join(out, name + ext), "w", encoding="utf-8") as fh:
                fh.write(emit_table(table, emit, name))
    elif emitted and show_tables:
        for name, table, _ in emitted:
            stream.write(emit_table(table, emit, name))
    return code, lines


def bundled_jobs():
    base = resources.files("twistlab") / "data" / "jobs"
    return sorted(str(p) for p in base.iterdir() if p.name.endswith(".cfg"))


def verify_all(order=None, out=None, stream=None):
    stream = stream or sys.stdout
    worst = 0
    for path in bundled_jobs():
        code, _ = run_job(path, order=order, out=out, stream=stream, show_tables=False)
        worst = max(worst, code)
    print("verify-all: %s" % {0: "all checks passed", 1: "some checks failed",
                              2: "configuration errors"}[worst], file=stream)
    return worst


def main(argv=None):
    ap = argparse.ArgumentParser(prog="twistlab", description="Twisted Hopf algebra computations.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one job file")
    r.add_argument("config")
    r.add_argument("--order", type=int)
    r.add_argument("--emit", choices=("structured", "latex"), default="structured")
    r.add_argument("--out")
    v = sub.add_parser("verify-all", help="run every bundled job")
    v.add_argument("--order", type=int)
    v.add_argument("--out")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.command == "run":
        return run_job(args.config, args.order, args.emit, args.out)[0]
    return verify_all(args.order, args.out)


if __name__ == "__main__":
    sys.exit(main())
