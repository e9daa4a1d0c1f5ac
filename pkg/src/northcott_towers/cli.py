"""Command-line interface.

Exit codes: 0 success, 1 a certified constraint failed, 2 a comparison stayed
undecidable at the precision cap, 3 malformed input.

Enclosures are printed as ``[lo, hi]`` decimal pairs rounded outward.  The
``structured`` format is JSON with sorted keys; intervals appear as
``{"lo": "...", "hi": "..."}`` string pairs.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from sympy import factorint

from . import heights, northcott, oracle, polyalg, towers
from .exactnum import CertifiedReal, UndecidableAtCap, log_interval
from .polyalg import PrecisionExhausted

EXIT_OK, EXIT_FAILED, EXIT_UNDECIDABLE, EXIT_BAD_INPUT = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    max_precision_bits: int = 4096
    conjugate_cap: int = 256
    output_format: str = "text"

    def __post_init__(self):
        if self.precision_bits < 8:
            raise InputError("precision must be at least 8 bits")
        if self.precision_bits > self.max_precision_bits:
            raise InputError("precision exceeds the maximum precision")
        if self.output_format not in ("text", "structured", "csv"):
            raise InputError(f"unknown output format {self.output_format!r}")

    @property
    def digits(self) -> int:
        return max(17, int(self.precision_bits * math.log10(2)))


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1/2" and "-12005,0,1" through as values rather than option flags
        self._negative_number_matcher = re.compile(r"^-\d[-\d/.,]*$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _interval(x: CertifiedReal, cfg: RunConfig) -> dict:
    lo, hi = x.decimal_pair(cfg.digits)
    return {"lo": lo, "hi": hi}


def _itext(x: CertifiedReal, cfg: RunConfig) -> str:
    lo, hi = x.decimal_pair(cfg.digits)
    return f"[{lo}, {hi}]"


def _factor_text(n: int) -> str:
    if n == 0:
        return "0"
    parts = [f"{p}^{k}" if k > 1 else str(p) for p, k in sorted(factorint(abs(n)).items())]
    return ("-" if n < 0 else "") + (" * ".join(parts) or "1")


def _emit(cfg: RunConfig, data: dict, text: Callable[[], str], csv_text: Optional[Callable[[], str]] = None) -> None:
    if cfg.output_format == "structured":
        print(json.dumps(data, sort_keys=True, indent=2))
    elif cfg.output_format == "csv" and csv_text is not None:
        sys.stdout.write(csv_text())
    else:
        print(text())


def _read_spec(path: str) -> towers.TowerSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            return towers.TowerSpec.from_text(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_height(args, cfg: RunConfig) -> int:
    r = heights.RadicalRational.parse(args.radical)
    hv = heights.weighted_height(r, args.gamma, cfg.precision_bits)
    h = heights.height(r)
    data = {"command": "height", "radical": str(r), "degree": hv.degree, "gamma": str(args.gamma),
            "height_exact": str(h), "weighted_exact": None if hv.exact is None else str(hv.exact),
            "weighted": _interval(hv.enclosure, cfg)}
    _emit(cfg, data, lambda: "\n".join([
        f"radical: {r}", f"degree: {hv.degree}", f"height: {h}",
        f"h_{args.gamma}: {hv.exact if hv.exact is not None else '(no closed form)'}",
        f"enclosure: {_itext(hv.enclosure, cfg)}"]))
    return EXIT_OK


def cmd_mahler(args, cfg: RunConfig) -> int:
    f = polyalg.IntPolynomial.parse(args.poly)
    m = polyalg.log_mahler(f, cfg.precision_bits, cfg.max_precision_bits)
    data = {"command": "mahler", "poly": f.to_text(), "log_mahler": _interval(m, cfg)}
    _emit(cfg, data, lambda: f"poly: {f}\nlog M: {_itext(m, cfg)}")
    return EXIT_OK


def cmd_disc(args, cfg: RunConfig) -> int:
    f = polyalg.IntPolynomial.parse(args.poly)
    D = polyalg.discriminant(f)
    data = {"command": "disc", "poly": f.to_text(), "discriminant": str(D)}
    _emit(cfg, data, lambda: f"poly: {f}\ndiscriminant: {D}")
    return EXIT_OK


def _case(args) -> towers.WeightCase:
    gamma = args.gamma if args.gamma is not None else Fraction(0)
    return towers.WeightCase(args.case, args.c, gamma)


def cmd_gen_tower(args, cfg: RunConfig) -> int:
    spec = towers.generate_tower(_case(args), args.levels, args.d1, max_bits=args.max_bits,
                                 cap=cfg.max_precision_bits)
    text = spec.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    data = {"command": "gen-tower", "case": spec.case.tag, "gamma": str(spec.case.gamma),
            "c": None if spec.case.c is None else str(spec.case.c),
            "levels": [{"d": lv.d, "p": lv.p, "q": lv.q} for lv in spec.levels]}
    _emit(cfg, data, lambda: text.rstrip("\n"))
    return EXIT_OK


def cmd_verify_tower(args, cfg: RunConfig) -> int:
    spec = _read_spec(args.spec)
    reports = towers.check_tower(spec, cap=cfg.max_precision_bits)
    ok = all(r.all_pass for r in reports)
    data = {"command": "verify-tower", "all_pass": ok, "levels": [
        {"level": r.level, "all_pass": r.all_pass,
         "constraints": [{"name": c.name, "holds": c.holds, "required": c.required, "detail": c.detail}
                         for c in r.constraints]} for r in reports]}

    def text():
        lines = []
        for r in reports:
            lines.append(f"level {r.level}: {'PASS' if r.all_pass else 'FAIL'}")
            for c in r.constraints:
                tag = "ok" if c.holds else ("FAILED" if c.required else "fails (advisory)")
                lines.append(f"  {c.name}: {tag}")
        return "\n".join(lines)

    _emit(cfg, data, text)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_northcott(args, cfg: RunConfig) -> int:
    spec = _read_spec(args.spec)
    g = spec.case.gamma
    deltas = args.delta or [g - Fraction(1, 10), g, g + Fraction(1, 10)]
    reports = [northcott.northcott_sandwich(spec, dl, cfg.precision_bits) for dl in deltas]
    data = {"command": "northcott", "reports": [
        {"delta": str(r.delta), "prediction": str(r.verdict), "consistent": r.consistent,
         "sandwich": _interval(r.sandwich_estimate, cfg),
         "checks": {name: ok for name, ok in r.checks},
         "levels": [{"level": lb.level, "d": lb.d, "p": lb.p, "q": lb.q,
                     "lower": _interval(lb.lower, cfg), "upper": _interval(lb.upper, cfg)}
                    for lb in r.per_level]} for r in reports]}
    _emit(cfg, data,
          lambda: "\n".join(r.summary() + "\n" + r.to_csv(cfg.digits) for r in reports).rstrip("\n"),
          lambda: "".join(f"# delta: {r.delta}\n" + r.to_csv(cfg.digits) for r in reports))
    return EXIT_OK if all(r.consistent for r in reports) else EXIT_FAILED


def cmd_silverman(args, cfg: RunConfig) -> int:
    if (args.log_norm_disc is None) == (args.norm_disc is None):
        raise InputError("give exactly one of --log-norm-disc and --norm-disc")
    if args.norm_disc is not None:
        if args.norm_disc < 1:
            raise InputError("--norm-disc must be a positive integer")
        L = log_interval(args.norm_disc, cfg.precision_bits + 16)
    else:
        L = args.log_norm_disc
    b = northcott.silverman_bound(L, args.d, args.deg_k, cfg.precision_bits)
    data = {"command": "silverman", "d": args.d, "deg_k": args.deg_k, "bound": _interval(b, cfg)}
    _emit(cfg, data, lambda: f"bound: {_itext(b, cfg)}")
    return EXIT_OK


def cmd_corollary_bound(args, cfg: RunConfig) -> int:
    b = northcott.corollary_lower_bound(args.p, args.d, cfg.precision_bits)
    data = {"command": "corollary-bound", "p": args.p, "d": args.d, "bound": _interval(b, cfg)}
    _emit(cfg, data, lambda: f"bound: {_itext(b, cfg)}")
    return EXIT_OK


def cmd_verify_divisibility(args, cfg: RunConfig) -> int:
    r = northcott.divisibility_report(args.p, args.q, args.d)
    data = {"command": "verify-divisibility", "p": r.p, "q": r.q, "d": r.d, "holds": r.holds,
            "discriminant": str(r.discriminant), "factored": _factor_text(r.discriminant),
            "p_divides": r.p_divides, "q_divides": r.q_divides,
            "p_eisenstein": r.p_eisenstein, "q_eisenstein": r.q_eisenstein}
    _emit(cfg, data, lambda: "\n".join([
        f"polynomial: x^{r.d} - {r.p * r.q ** (r.d - 1)}",
        f"discriminant: {r.discriminant} = {_factor_text(r.discriminant)}",
        f"{r.p}^{r.d - 1} divides: {r.p_divides}", f"{r.q}^{r.d - 1} divides: {r.q_divides}",
        f"{r.p}-Eisenstein: {r.p_eisenstein}", f"{r.q}-Eisenstein (x^{r.d} - {r.p ** (r.d - 1) * r.q}): {r.q_eisenstein}",
        f"holds: {r.holds}"]))
    return EXIT_OK if r.holds else EXIT_FAILED


def _nor_text(nor) -> str:
    return "inf" if nor == math.inf else str(nor)


def cmd_classify(args, cfg: RunConfig) -> int:
    cl = towers.classify_intervals(_case(args))
    g = cl.case.gamma
    data = {"command": "classify", "case": cl.case.tag, "gamma": str(g), "conclusion": cl.conclusion,
            "I_B": str(cl.I_B), "I_N": str(cl.I_N), "nor": _nor_text(cl.nor),
            "base_I_N": str(cl.base_I_N), "base_fact_assumed": cl.base_fact_assumed}
    _emit(cfg, data, lambda: "\n".join([
        f"case {cl.case.tag}, gamma = {g}: conclusion ({cl.conclusion})",
        f"I_B = {cl.I_B}", f"I_N = {cl.I_N}", f"Nor_{g} = {_nor_text(cl.nor)}",
        f"base field I_N(K) = {cl.base_I_N} (assumed, not recomputed)"]))
    return EXIT_OK


def cmd_oracle_height(args, cfg: RunConfig) -> int:
    e = oracle.parse_expr(args.expr, cfg.conjugate_cap)
    f = oracle.minimal_poly(e, cfg.precision_bits, cfg.conjugate_cap, cfg.max_precision_bits)
    h = polyalg.height_from_minpoly(f, cfg.precision_bits, cfg.max_precision_bits)
    data = {"command": "oracle-height", "expr": str(e), "minimal_poly": f.to_text(), "degree": f.degree,
            "height": _interval(h, cfg)}
    _emit(cfg, data, lambda: f"expr: {e}\nminimal polynomial: {f}\nheight: {_itext(h, cfg)}")
    return EXIT_OK


def cmd_cross_check(args, cfg: RunConfig) -> int:
    samples = oracle.sample_expressions(args.p, args.q, args.d, args.samples, args.seed)
    rep = oracle.cross_check_corollary(args.p, args.d, samples, cfg.precision_bits, cfg.conjugate_cap)
    data = {"command": "cross-check", "p": args.p, "q": args.q, "d": args.d, "all_hold": rep.all_hold,
            "bound": _interval(rep.bound, cfg),
            "samples": [{"expr": str(r.expr), "degree": r.degree, "height": _interval(r.height, cfg),
                         "holds": r.holds} for r in rep.rows]}

    def text():
        lines = [f"bound: {_itext(rep.bound, cfg)}"]
        lines += [f"{'ok' if r.holds else 'VIOLATION'}  h = {_itext(r.height, cfg)}  {r.expr}" for r in rep.rows]
        lines.append(f"all hold: {rep.all_hold}")
        return "\n".join(lines)

    _emit(cfg, data, text)
    return EXIT_OK if rep.all_hold else EXIT_FAILED


def cmd_demo_negative(args, cfg: RunConfig) -> int:
    b = heights.RadicalRational.parse(args.b) if args.b else northcott.DEFAULT_B
    rows = northcott.demo_nonpositive(args.gamma, args.n, b, cfg.precision_bits)
    dec = northcott.demo_decreasing(rows)
    ok = dec and all(r.chain_holds for r in rows)
    data = {"command": "demo-negative", "gamma": str(args.gamma), "b": str(b), "decreasing": dec, "rows": [
        {"n": r.n, "h_gamma_a": _interval(r.h_gamma_a, cfg), "h_gamma_a_exact": r.h_gamma_a_exact,
         "product_degree": r.product.root_deg, "h_gamma_product": _interval(r.h_gamma_product, cfg),
         "chain_bound": _interval(r.chain_bound, cfg), "chain_holds": r.chain_holds} for r in rows]}

    def csv_text():
        out = ["n,h_gamma_a_lo,h_gamma_a_hi,h_gamma_ba_lo,h_gamma_ba_hi,chain_lo,chain_hi,chain_holds"]
        for r in rows:
            cells = [*r.h_gamma_a.decimal_pair(cfg.digits), *r.h_gamma_product.decimal_pair(cfg.digits),
                     *r.chain_bound.decimal_pair(cfg.digits)]
            out.append(",".join([str(r.n), *cells, str(r.chain_holds).lower()]))
        return "\n".join(out) + "\n"

    def text():
        lines = [f"b = {b}, gamma = {args.gamma}, a_n = 2^(1/3^n)"]
        for r in rows:
            lines.append(f"n={r.n}  h_g(a_n) = {r.h_gamma_a_exact} in {_itext(r.h_gamma_a, cfg)}")
            lines.append(f"      h_g(b a_n) {_itext(r.h_gamma_product, cfg)} <= chain {_itext(r.chain_bound, cfg)}: "
                         f"{r.chain_holds}")
        lines.append(f"h_g(a_n) strictly decreasing: {dec}")
        return "\n".join(lines)

    _emit(cfg, data, text, csv_text)
    return EXIT_OK if ok else EXIT_FAILED


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="northcott-towers", description="Certified heights and Northcott numbers of radical towers.")
    ap.add_argument("--precision", type=int, default=128, help="working precision in bits (default 128)")
    ap.add_argument("--max-precision", type=int, default=4096, help="precision cap in bits (default 4096)")
    ap.add_argument("--conjugate-cap", type=int, default=256, help="oracle conjugate cap (default 256)")
    ap.add_argument("--format", choices=("text", "structured", "csv"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("height", cmd_height, "weighted height of (m/n)^(1/D)")
    p.add_argument("radical")
    p.add_argument("--gamma", type=_rational, default=Fraction(0))

    for name, fn, h in (("mahler", cmd_mahler, "log Mahler measure"), ("disc", cmd_disc, "exact discriminant")):
        p = add(name, fn, h)
        p.add_argument("--poly", required=True, help="integer coefficients, constant term first")

    def case_args(p):
        p.add_argument("--case", required=True, choices=towers.CASES, type=str.upper)
        p.add_argument("--c", type=_rational, default=None)
        p.add_argument("--gamma", type=_rational, default=None)

    p = add("gen-tower", cmd_gen_tower, "greedy tower generation")
    case_args(p)
    p.add_argument("--levels", type=int, required=True)
    p.add_argument("--d1", type=int, default=None, help="lower bound for d_1")
    p.add_argument("--max-bits", type=int, default=1024)
    p.add_argument("--out", default=None)

    p = add("verify-tower", cmd_verify_tower, "check every constraint of a tower spec")
    p.add_argument("--spec", required=True)

    p = add("northcott", cmd_northcott, "per-level Northcott sandwich")
    p.add_argument("--spec", required=True)
    p.add_argument("--delta", type=_rational, action="append")

    p = add("silverman", cmd_silverman, "discriminant height lower bound")
    p.add_argument("--log-norm-disc", type=_rational, default=None)
    p.add_argument("--norm-disc", type=int, default=None, help="the norm itself; its log is taken exactly")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--deg-k", type=int, required=True)

    p = add("corollary-bound", cmd_corollary_bound, "log(p)/d - log(d)/(2(d-1))")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = add("verify-divisibility", cmd_verify_divisibility, "ramified primes divide the discriminant")
    for k in ("--p", "--q", "--d"):
        p.add_argument(k, type=int, required=True)

    p = add("classify", cmd_classify, "I_B / I_N intervals and Nor value")
    case_args(p)

    p = add("oracle-height", cmd_oracle_height, "height of a radical expression by brute force")
    p.add_argument("--expr", required=True)

    p = add("cross-check", cmd_cross_check, "oracle heights against the corollary bound")
    for k in ("--p", "--q", "--d"):
        p.add_argument(k, type=int, required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = add("demo-negative", cmd_demo_negative, "heights at non-positive weight")
    p.add_argument("--gamma", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.precision, args.max_precision, args.conjugate_cap, args.format)
        return args.func(args, cfg)
    except (UndecidableAtCap, PrecisionExhausted) as exc:
        print(f"undecidable: {exc}", file=sys.stderr)
        return EXIT_UNDECIDABLE
    except (ValueError, ZeroDivisionError, towers.GenerationStuck) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
