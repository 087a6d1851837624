"""Command-line front end.

Every command prints a human summary by default and a JSON document with
``--json``.  Reals in JSON are decimal strings that carry only certified
digits, next to an explicit digit count.  Exit codes: 0 success, 1 domain or
certification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import sequences as seqmod
from .bounds import chain
from .congruence_sieve import (
    SieveContext,
    lemma_large_prediction_nu,
    lemma_large_prediction_omega,
    lemma_small_prediction,
    residue_pattern,
    scan_small_n,
)
from .errors import DomainError, PrecisionError, ReductionError, UsageError
from .expr import parse_surd, parse_surd_expr, evaluate
from .intersect import case_forms, small_case, theorem_pipeline
from .intervals import CertifiedReal
from .linear_forms import LinearFormSpec, bw_constant, h_prime, solve_m_logm
from .pell import PellProblem, fundamental_classes, fundamental_unit, nu_sequences, omega_sequences, solve_below
from .quad_ring import verify_tuple
from .reduction import E, ReductionProblem, bd_iterate_outcomes


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by all commands."""

    precision: int = 256
    index_bound: int = 100
    output: str = "human"  # or "json"
    out_path: Path | None = None

    def __post_init__(self) -> None:
        if self.precision < 64:
            raise UsageError(f"precision must be at least 64 bits, got {self.precision}")
        if self.index_bound < 10:
            raise UsageError(f"index bound must be at least 10, got {self.index_bound}")
        if self.output not in ("human", "json"):
            raise UsageError(f"unknown output format {self.output!r}")


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=True)


# --- commands -----------------------------------------------------------------
# each returns (json-able dict, human text)

def cmd_verify(args, cfg: RunConfig) -> tuple[dict, str]:
    rep = verify_tuple(args.elements, args.d)
    lines = [f"{{{', '.join(map(str, rep.elements))}}} in Z[sqrt({rep.ringD})]: "
             f"{'valid' if rep.valid else 'not valid'}"]
    for p in rep.pairResults:
        a, b = rep.elements[p.i], rep.elements[p.j]
        w = "not a square" if p.witness is None else f"({p.witness.u} + {p.witness.v}*sqrt({rep.ringD}))^2"
        lines.append(f"  {a}*{b}+1 = {p.value}: {w}")
    lines += [f"  {r}" for r in rep.reasons]
    return rep.as_dict(), "\n".join(lines)


def cmd_seq(args, cfg: RunConfig) -> tuple[dict, str]:
    if args.count < 1:
        raise UsageError("--count must be positive")
    fam = seqmod.family(args.family)
    vals = [seqmod.term(fam, i) for i in range(args.count)]
    data = {"family": args.family, "terms": [{"index": i, "value": str(v)} for i, v in enumerate(vals)]}
    return data, "\n".join(f"{args.family}_{i} = {v}" for i, v in enumerate(vals))


def cmd_pell(args, cfg: RunConfig) -> tuple[dict, str]:
    p = PellProblem(args.D, args.N)
    unit = fundamental_unit(p.D)
    classes = fundamental_classes(p, unit)
    data: dict = {
        "D": p.D, "N": p.N,
        "unit": [str(unit.u), str(unit.v)],
        "classes": [[str(c.z0), str(c.x0)] for c in classes],
    }
    lines = [f"z^2 - {p.D} x^2 = {p.N}", f"fundamental unit ({unit.u}, {unit.v})",
             f"{len(classes)} class(es)" + (": " + ", ".join(f"({c.z0}, {c.x0})" for c in classes) if classes else "")]
    if args.zmax is not None:
        sols = solve_below(p, args.zmax)
        data["solutions"] = [[str(z), str(x)] for z, x in sols]
        lines.append(f"solutions with z <= {args.zmax}: " + (", ".join(f"({z}, {x})" for z, x in sols) or "none"))
    if args.classes:
        data["class_detail"] = [
            {"z0": str(c.z0), "x0": str(c.x0), "sign": c.sign} for c in classes
        ]
    return data, "\n".join(lines)


def cmd_sieve(args, cfg: RunConfig) -> tuple[dict, str]:
    if args.k < 1:
        raise DomainError("sieve needs k >= 1")
    ctx = SieveContext.from_k(args.k)
    count = args.max_m
    if count < 1:
        raise UsageError("--max-m must be positive")
    patterns = []
    lines = [f"k = {args.k}, d_k = {ctx.d}; moduli {ctx.mod_small} and {ctx.mod_large}"]
    for name, seqs in (("nu", nu_sequences(args.k)), ("omega", omega_sequences(args.k))):
        for s in seqs:
            z0 = s.cls.z0 // s.scale
            x0 = s.cls.x0
            small = residue_pattern(s, ctx.mod_small, count)
            large = residue_pattern(s, ctx.mod_large, count)
            pred_small = [lemma_small_prediction(z0, i, ctx.mod_small) for i in range(count)]
            if name == "nu":
                pred_large = [lemma_large_prediction_nu(ctx, z0, x0, i) for i in range(count)]
            else:
                pred_large = [lemma_large_prediction_omega(ctx, z0, x0, i) for i in range(count)]
            ok = small == pred_small and large == pred_large
            patterns.append({
                "sequence": name, "sign": s.sign, "z0": str(z0),
                "small": [str(v) for v in small], "large": [str(v) for v in large],
                "matches_prediction": ok,
            })
            lines.append(f"{name}{s.sign}: z0 = {z0}, residues mod {ctx.mod_small}: {small[:6]}"
                         f"{'...' if count > 6 else ''} {'match' if ok else 'MISMATCH'}")
    size, survivors = scan_small_n(args.k)
    lines.append(f"small-n scan: {size} (m, n, signs) cases, {len(survivors)} survivor(s)")
    data = {
        "k": args.k, "d_k": str(ctx.d),
        "mod_small": str(ctx.mod_small), "mod_large": str(ctx.mod_large),
        "patterns": patterns,
        "small_n_scan": {"domain": size, "survivors": [[m, n, list(sg)] for m, n, sg, _ in survivors]},
    }
    if not all(p["matches_prediction"] for p in patterns):
        raise DomainError("residue pattern disagrees with the closed-form prediction")
    return data, "\n".join(lines)


def cmd_bounds(args, cfg: RunConfig) -> tuple[dict, str]:
    res = chain(args.k, cfg.precision)
    d = res.as_dict()
    lines = [
        f"gamma = {d['gamma']}",
        f"lambda = {d['lambda']['decimal'] if d['lambda'] else 'n/a'} (below 2: {res.lam_below_two})",
        f"coefficient {d['coefficient']}, c2 {d['c2']}, c3 {d['c3']}",
        f"(-d_k)^(1/4) < {d['quartic_root_bound']['decimal'] if d['quartic_root_bound'] else 'n/a'}",
        f"-d_k <= {res.dk_bound}, k_max = {res.k_max}",
    ]
    lines += [f"  [{'ok' if v else 'FAILS'}] {name}" for name, v in res.premises.items()]
    if not res.applicable:
        raise DomainError("chain premises fail at k = %d: %s" % (
            args.k, ", ".join(n for n, v in res.premises.items() if not v)))
    return d, "\n".join(lines)


def cmd_bw(args, cfg: RunConfig) -> tuple[dict, str]:
    texts = [t for t in args.alphas.split(",")]
    surds = tuple(parse_surd(t) for t in texts)
    spec = LinearFormSpec(tuple(f"b{i + 1}" for i in range(len(surds))), surds, args.degree)
    d = spec.field_degree
    hp = [h_prime(s, d, prec=cfg.precision) for s in surds]
    C = bw_constant(spec, cfg.precision)
    m = solve_m_logm(C, cfg.precision)
    data = {
        "alphas": [str(s) for s in surds],
        "degree": d,
        "h_prime": [h.as_json() for h in hp],
        "C": C.as_json(),
        "M0": str(m.m0),
        "M": str(m.power_of_ten),
    }
    lines = [f"field degree {d}"]
    lines += [f"h'({s}) = {h.decimal()}" for s, h in zip(surds, hp)]
    lines += [f"C = {C.decimal()}", f"m > C log m for m >= {m.m0}; M = {m.power_of_ten}"]
    return data, "\n".join(lines)


def _real(text: str, what: str) -> CertifiedReal:
    if text.strip() == "e":
        return E
    try:
        return evaluate(parse_surd_expr(text))
    except UsageError as exc:
        raise UsageError(f"--{what}: {exc}") from None


def cmd_reduce(args, cfg: RunConfig) -> tuple[dict, str]:
    if args.M < 1:
        raise UsageError("--M must be at least 1")
    prob = ReductionProblem(_real(args.theta, "theta"), _real(args.beta, "beta"),
                            _real(args.alpha, "alpha"), _real(args.base, "base"), args.M)
    outs = bd_iterate_outcomes(prob, 1, args.precision or None)
    traj = [args.M] + [o.new_M for o in outs]
    data = {"M": str(args.M), "trajectory": [str(m) for m in traj], "steps": [o.as_dict() for o in outs]}
    lines = [" -> ".join(map(str, traj))]
    for o in outs:
        lines.append(f"  q = {o.q}, eps = {o.eps.decimal()}, new bound {o.new_M}")
    return data, "\n".join(lines)


def cmd_case(args, cfg: RunConfig) -> tuple[dict, str]:
    res = small_case(args.k, cfg.index_bound)
    forms = case_forms(args.k, cfg.precision)
    certified = max(f.index_bound for f in forms)
    if certified > cfg.index_bound:
        raise DomainError(f"certified index bound {certified} exceeds {cfg.index_bound}")
    data = dict(res.as_dict(), table=res.table(), linear_forms=[f.as_dict() for f in forms])
    lines = [f"k = {args.k}: z^2 - {res.equation.D} {res.form}^2 = {res.equation.N}"]
    lines += [f"  {row}" for row in res.table()]
    lines.append("  extensions: " + ", ".join(res.extension_labels))
    for f in forms:
        lines.append(f"  class {f.cls}: index bound {f.index_bound} ({' -> '.join(map(str, f.trajectory))})")
    return data, "\n".join(lines)


def cmd_reproduce(args, cfg: RunConfig) -> tuple[dict, str]:
    rep = theorem_pipeline(args.max_small_k, cfg.index_bound, cfg.precision)
    if not rep.complete:
        # partial runs are printed but count as failures and write no files
        raise _Incomplete(rep.data, rep.markdown)
    if cfg.out_path is not None:
        out = cfg.out_path
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(rep.json() + "\n")
        (out / "report.md").write_text(rep.markdown)
    return rep.data, rep.markdown.rstrip("\n")


class _Incomplete(DomainError):
    def __init__(self, data: dict, text: str):
        super().__init__("pipeline incomplete")
        self.data, self.text = data, text


COMMANDS: dict[str, Callable] = {
    "verify": cmd_verify,
    "seq": cmd_seq,
    "pell": cmd_pell,
    "sieve": cmd_sieve,
    "bounds": cmd_bounds,
    "bw": cmd_bw,
    "reduce": cmd_reduce,
    "case": cmd_case,
    "reproduce": cmd_reproduce,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{message}\n\n{self.format_help()}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--precision", type=int, default=256, help="working precision in bits (>= 64)")
    common.add_argument("--index-bound", type=int, default=100, help="largest sequence index examined")

    p = _Parser(prog="diophtuple", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")

    s = sub.add_parser("verify", parents=[common], help="check a tuple in Z[sqrt(D)]")
    s.add_argument("--d", type=int, default=-2, help="ring parameter D")
    s.add_argument("elements", nargs="+", type=int)

    s = sub.add_parser("seq", parents=[common], help="terms of a named sequence")
    s.add_argument("--family", required=True, choices=sorted(seqmod.FAMILIES))
    s.add_argument("--count", type=int, default=10)

    s = sub.add_parser("pell", parents=[common], help="fundamental solutions of z^2 - D x^2 = N")
    s.add_argument("--D", type=int, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--zmax", type=int)
    s.add_argument("--classes", action="store_true", help="list class signs")

    s = sub.add_parser("sieve", parents=[common], help="residue patterns and the small-n scan")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--max-m", type=int, default=10, help="number of terms per residue pattern")

    s = sub.add_parser("bounds", parents=[common], help="the approximation chain and k_max")
    s.add_argument("--k", type=int, default=6)

    s = sub.add_parser("bw", parents=[common], help="Baker-Wustholz constant for a linear form")
    s.add_argument("--alphas", required=True, help='comma separated surds, e.g. "2+1*sqrt(3),5+2*sqrt(6),sqrt(2)"')
    s.add_argument("--degree", type=int)

    s = sub.add_parser("reduce", parents=[common], help="iterated Baker-Davenport reduction")
    s.add_argument("--theta", required=True)
    s.add_argument("--beta", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--base", default="e")
    s.add_argument("--M", type=int, required=True)

    s = sub.add_parser("case", parents=[common], help="one small case k = 0..5")
    s.add_argument("--k", type=int, required=True, choices=range(6))

    s = sub.add_parser("reproduce", parents=[common], help="the whole argument")
    s.add_argument("--out", type=Path, help="directory for report.md and report.json")
    s.add_argument("--max-small-k", type=int, default=5)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(f"no command given\n\n{parser.format_help()}")
        cfg = RunConfig(args.precision, args.index_bound, "json" if args.json else "human",
                        getattr(args, "out", None))
        # reduce accepts --precision as a starting point; everything else uses cfg
        if args.command == "reduce":
            args.precision = cfg.precision
        data, text = COMMANDS[args.command](args, cfg)
    except _Incomplete as exc:
        print(dumps(exc.data) if "--json" in argv else exc.text, file=stdout)
        print("error: pipeline incomplete (k_max exceeds --max-small-k)", file=stderr)
        return 1
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except (DomainError, PrecisionError, ReductionError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    print(dumps(data) if cfg.output == "json" else text, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())
