"""Intersections of the Pell-unit sequences with the case sequences, and the full pipeline."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Iterable

from .bounds import chain, index_ratio_bound, min_n_for_sqrt3
from .congruence_sieve import scan_small_n
from .errors import DomainError
from .intervals import CertifiedReal, Enclosure, context
from .linear_forms import AlgebraicSurd, LinearFormSpec, bw_constant, solve_m_logm
from .pell import (PellProblem, PellUnit, SolutionSeq, e120_problem, e121_problem, nu_sequences, omega_sequences,
                   sequences_for)
from .quad_ring import is_square_in_ring, verify_tuple
from .reduction import E, ReductionProblem, bd_iterate_outcomes
from . import sequences as seq

# which coordinate of y^2 - 3x^2 = 1 each small case is matched against
FORMS = {0: "x", 1: "x", 2: "y", 3: "x", 4: "y", 5: "y"}
ROOT3 = AlgebraicSurd.quadratic(2, 1, 3)


@dataclass(frozen=True)
class IntersectionHit:
    m: int
    n: int
    value: int
    signA: str = ""
    signB: str = ""


class MonotonicityError(RuntimeError):
    pass


def _checked(gen: Iterable[int], name: str):
    prev = None
    for i, v in enumerate(gen):
        if prev is not None and v <= prev:
            raise MonotonicityError(f"sequence {name} not strictly increasing at index {i}: {prev} -> {v}")
        prev = v
        yield i, v


def merge_intersect(genA: Iterable[int], genB: Iterable[int], bound: int,
                    signA: str = "", signB: str = "") -> list[IntersectionHit]:
    """Common values <= bound of two strictly increasing sequences (two-pointer merge)."""
    a, b = _checked(genA, "A"), _checked(genB, "B")
    hits = []
    ca, cb = next(a, None), next(b, None)
    while ca is not None and cb is not None and ca[1] <= bound and cb[1] <= bound:
        if ca[1] == cb[1]:
            hits.append(IntersectionHit(ca[0], cb[0], ca[1], signA, signB))
            ca, cb = next(a, None), next(b, None)
        elif ca[1] < cb[1]:
            ca = next(a, None)
        else:
            cb = next(b, None)
    return hits


def nested_intersect(A: list[int], B: list[int]) -> list[tuple[int, int, int]]:
    """Quadratic reference implementation."""
    return [(i, j, x) for i, x in enumerate(A) for j, y in enumerate(B) if x == y]


# --- small cases -------------------------------------------------------------

def case_problem(k: int, form: str | None = None) -> tuple[PellProblem, int, str]:
    if k not in FORMS:
        raise DomainError(f"small cases are k = 0..5, got {k}")
    form = form or FORMS[k]
    if form == "x":
        return e120_problem(k), 1, form
    if form == "y":
        p, scale = e121_problem(k)
        return p, scale, form
    raise DomainError(f"form must be 'x' or 'y', got {form!r}")


def case_sequences(k: int, form: str | None = None) -> list[SolutionSeq]:
    p, scale, _ = case_problem(k, form)
    return sequences_for(p, scale)


def unit_family(form: str) -> str:
    return "xprime" if form == "x" else "yprime"


def extension_from(value: int, form: str) -> int:
    if form == "x":
        return -2 * value * value - 1
    num = -2 * value * value - 1
    assert num % 3 == 0
    return num // 3


@dataclass
class CaseResult:
    k: int
    form: str
    equation: PellProblem
    scale: int
    unit: PellUnit
    classes: list[tuple[int, int]]
    hits: list[IntersectionHit]
    extensions: list[int]
    extension_labels: list[str]
    index_bound: int

    @property
    def conclusion_holds(self) -> bool:
        allowed = {seq.d(self.k + 1)} | ({seq.d(self.k - 1)} if self.k >= 1 else set())
        return set(self.extensions) <= allowed and bool(self.extensions)

    def table(self) -> list[str]:
        coord = self.form
        labelled = len(self.classes) > 1
        rows = []
        for h in self.hits:
            sign = h.signB if labelled else ""
            rows.append(f"{coord}_{h.n}{sign} = {coord}'_{h.m} = {h.value}")
        return rows

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "equation": f"z^2 - {self.equation.D}{self.form}^2 = {self.equation.N}",
            "unit": [self.unit.u, self.unit.v],
            "classes": [list(c) for c in self.classes],
            "hits": [
                {"m": h.m, "n": h.n, "value": h.value, "sign": h.signB} for h in self.hits
            ],
            "extensions": self.extensions,
            "extension_labels": self.extension_labels,
            "index_bound": self.index_bound,
            "conclusion_holds": self.conclusion_holds,
        }


def small_case(k: int, index_bound: int = 100, form: str | None = None) -> CaseResult:
    if index_bound < 10:
        raise DomainError("index_bound must be at least 10")
    p, scale, form = case_problem(k, form)
    seqs = sequences_for(p, scale)
    unit_terms = [seq.term(unit_family(form), m) for m in range(index_bound + 1)]
    hits: list[IntersectionHit] = []
    for s in seqs:
        terms = list(islice(s.x_iter(), index_bound + 1))
        bound = min(unit_terms[-1], terms[-1])
        hits.extend(merge_intersect(unit_terms, terms, bound, "", s.sign))
    hits.sort(key=lambda h: (h.value, h.n, h.signB))
    exts, labels = [], []
    for h in hits:
        d = extension_from(h.value, form)
        tup = verify_tuple([1, 3, seq.d(k), d])
        assert tup.valid, tup.reasons
        exts.append(d)
        l = seq.d_index(d)
        labels.append(f"d_{l}" if l is not None else "?")
    return CaseResult(k, form, p, scale, seqs[0].unit, [(s.cls.z0, s.cls.x0) for s in seqs],
                      hits, exts, labels, index_bound)


def extension_scan(bound_abs: int) -> list[int]:
    """Every c, 0 < |c| <= bound_abs, c not in {1, 3}, with {1, 3, c} a triple in Z[sqrt(-2)]."""
    if bound_abs < 10:
        raise DomainError("bound_abs must be at least 10")
    out = []
    for c in range(-bound_abs, bound_abs + 1):
        if c in (0, 1, 3):
            continue
        if is_square_in_ring(c + 1, -2) is not None and is_square_in_ring(3 * c + 1, -2) is not None:
            out.append(c)
    return out


# --- certified index bounds for each case -----------------------------------

@dataclass
class CaseForm:
    """The linear form log(Q/P) = -m log a1 + n log eps + log a3 for one class."""

    k: int
    cls: tuple[int, int]
    form: str
    eps: AlgebraicSurd
    alpha3: AlgebraicSurd
    c1: Fraction
    c2: Fraction
    K: Fraction
    m_start: int
    spec: LinearFormSpec
    C: Enclosure
    M0: int
    M_initial: int
    trajectory: list[int]
    premises: dict[str, bool]

    @property
    def index_bound(self) -> int:
        return max(self.m_start - 1, self.trajectory[-1])

    def as_dict(self) -> dict:
        return {
            "class": list(self.cls),
            "alpha3": str(self.alpha3),
            "eps": str(self.eps),
            "field_degree": self.spec.field_degree,
            "m_start": self.m_start,
            "C": self.C.as_json(),
            "M0": str(self.M0),
            "trajectory": [str(x) for x in self.trajectory],
            "index_bound": self.index_bound,
            "premises": dict(self.premises),
        }


def case_form(k: int, s: SolutionSeq, form: str, prec: int = 256) -> CaseForm:
    D, N = s.cls.problem.D, s.cls.problem.N
    # alpha3 only needs a solution of the equation actually solved, scaled or not
    z0, x0 = s.cls.z0, s.cls.x0
    eps = AlgebraicSurd.quadratic(s.unit.u, s.unit.v, D)
    if form == "x":
        alpha3 = AlgebraicSurd(Fraction(x0), Fraction(z0, D), D, 3)
        c1, pfac = Fraction(1, 12), 12
    else:
        alpha3 = AlgebraicSurd(Fraction(x0), Fraction(z0, D), D, 1)
        c1, pfac = Fraction(-1, 4), 4
    c2 = Fraction(N, 4 * D)
    K = 2 * (2 * c2 + abs(c1)) * pfac
    ctx = context(prec)
    la1 = ctx.log(ROOT3.value_iv(ctx))
    le = ctx.log(eps.value_iv(ctx))
    la3 = ctx.log(alpha3.value_iv(ctx))
    m1 = Enclosure.from_interval((1 + abs(la3)) / (le - la1))
    m2 = Enclosure.from_interval(ctx.log(ctx.mpf(K.numerator) / K.denominator) / (2 * la1 - 1))
    m_start = max(2, math.ceil(m1.upper), math.floor(m2.upper) + 1)
    premises = {
        "Lambda != 0 (c1 != c2)": c1 != c2,
        "log eps > log alpha1": Enclosure.from_interval(le - la1).certainly_gt(0),
        # alpha1^4 > 193 bounds P^-2 for m >= 2, so |(Q-P)/P| <= 1/2
        "relative gap <= 1/2 for m >= 2": (2 * c2 + abs(c1)) * pfac * 2 <= 193,
    }
    spec = LinearFormSpec(("-m", "n", "1"), (ROOT3, eps, alpha3))
    C = bw_constant(spec, prec)
    mlog = solve_m_logm(C)
    lr = CertifiedReal(lambda c: c.log(ROOT3.value_iv(c)) / c.log(eps.value_iv(c)), "theta")
    lb = CertifiedReal(lambda c: -c.log(alpha3.value_iv(c)) / c.log(eps.value_iv(c)), "beta")
    la = CertifiedReal(lambda c: 1 / c.log(eps.value_iv(c)), "alpha")
    prob = ReductionProblem(lr, lb, la, E, mlog.power_of_ten, f"k={k}")
    outs = bd_iterate_outcomes(prob, 1)
    traj = [prob.M] + [o.new_M for o in outs]
    return CaseForm(k, (s.cls.z0, s.cls.x0), form, eps, alpha3, c1, c2, K, m_start, spec, C,
                    mlog.m0, mlog.power_of_ten, traj, premises)


def case_forms(k: int, prec: int = 256) -> list[CaseForm]:
    p, scale, form = case_problem(k)
    return [case_form(k, s, form, prec) for s in sequences_for(p, scale)]


# --- the whole argument -------------------------------------------------------

def universal_intersections(k: int) -> dict:
    """nu_0 = omega_0 and nu_1^- = omega_1^-, and the extensions they give.

    When x_0 = 0 (k = 1) the two nu classes coincide and one sequence plays
    both roles; the index-1 exclusion then fails, harmlessly, since the
    coincidence is nu_1^- = omega_1^- itself.
    """
    nus = {s.sign: s for s in nu_sequences(k)}
    coincide = "0" in nus
    if coincide:
        nus = {"+": nus["0"], "-": nus["0"]}
    oms = {s.sign: s for s in omega_sequences(k)}
    dk = seq.d(k)
    n0 = {sg: s.z_terms(2) for sg, s in nus.items()}
    o0 = {sg: s.z_terms(2) for sg, s in oms.items()}
    z_first = 2 * (seq.s(k) * seq.s(k - 1) + 1)
    first_ok = all(v[0] == z_first for v in n0.values()) and all(v[0] == z_first for v in o0.values())
    second = n0["-"][1]
    second_ok = o0["-"][1] == second
    excluded = all(n0["+"][1] != v[1] for v in o0.values()) and n0["-"][1] != o0["+"][1]
    d_first = (z_first ** 2 - 1) // dk
    d_second = (second ** 2 - 1) // dk
    return {
        "k": k,
        "nu0_eq_omega0": first_ok,
        "value0": str(z_first),
        "extension0": f"d_{seq.d_index(d_first)}",
        "nu1m_eq_omega1m": second_ok,
        "value1": str(second),
        "extension1": f"d_{seq.d_index(d_second)}",
        "nu_classes_coincide": coincide,
        "other_index1_pairs_differ": excluded,
    }


@dataclass
class PipelineReport:
    data: dict
    complete: bool
    markdown: str = ""

    def json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True)


def theorem_pipeline(max_small_k: int = 5, index_bound: int = 100, prec: int = 256) -> PipelineReport:
    ch = chain(6, prec)
    if not ch.applicable or ch.k_max is None:
        raise DomainError(f"approximation chain not applicable: {ch.premises}")
    k_max = ch.k_max
    ratio = index_ratio_bound(6, prec)
    n_min = min_n_for_sqrt3(ratio.upper)
    dom, surv = scan_small_n(6)
    cases = []
    forms = []
    ok = True
    for k in range(0, min(k_max, max_small_k) + 1):
        cf = case_forms(k, prec)
        certified = max(f.index_bound for f in cf)
        if certified > index_bound:
            raise DomainError(f"k={k}: certified index bound {certified} exceeds {index_bound}")
        res = small_case(k, index_bound)
        ok = ok and res.conclusion_holds and all(all(f.premises.values()) for f in cf)
        cases.append(res)
        forms.append(cf)
    complete = max_small_k >= k_max and ok and not surv
    univ = [universal_intersections(k) for k in range(1, 9)]
    data = {
        "chain": ch.as_dict(),
        "index_ratio_k6": ratio.as_json(),
        "m_lt_n_sqrt3_from_n": n_min,
        "small_n_scan_k6": {"domain": dom, "survivors": len(surv)},
        "universal_intersections": univ,
        "k_max": k_max,
        "cases": [
            dict(c.as_dict(), table=c.table(), linear_forms=[f.as_dict() for f in fl])
            for c, fl in zip(cases, forms)
        ],
        "complete": complete,
        "conclusion": (
            "every extension {1, 3, d_k, d} has d in {d_(k-1), d_(k+1)}; "
            "{1, 3} does not extend to a quintuple" if complete else "incomplete"
        ),
    }
    return PipelineReport(data, complete, render_markdown(data))


def render_markdown(data: dict) -> str:
    ch = data["chain"]
    lines = [
        "# Extensions of {1, 3} in Z[sqrt(-2)]",
        "",
        "## Approximation chain (k = 6)",
        "",
        f"- gamma = {ch['gamma']}, lambda = {ch['lambda']['decimal']}",
        f"- coefficient {ch['coefficient']} (exact {ch['coefficient_exact']['decimal']})",
        f"- (-d_k)^(1/4) < {ch['quartic_root_bound']['decimal']}",
        f"- -d_k <= {ch['dk_bound']}, so k <= {data['k_max']}",
        f"- m/(n+1) < {data['index_ratio_k6']['decimal']}; m < n sqrt(3) from n = {data['m_lt_n_sqrt3_from_n']}",
        f"- small-n chain at k = 6: {data['small_n_scan_k6']['domain']} cases, "
        f"{data['small_n_scan_k6']['survivors']} survivors",
        "",
        "## Small cases",
        "",
    ]
    for c in data["cases"]:
        lines.append(f"### k = {c['k']}: {c['equation']}")
        lines.append("")
        for row in c["table"]:
            lines.append(f"- {row}")
        lines.append(f"- extensions: {', '.join(c['extension_labels'])}")
        for f in c["linear_forms"]:
            traj = " -> ".join(f["trajectory"])
            lines.append(f"- class {tuple(f['class'])}: C = {f['C']['decimal']}, M: {traj}, "
                         f"index bound {f['index_bound']}")
        lines.append("")
    lines.append("## Conclusion")
    lines.append("")
    lines.append(data["conclusion"])
    return "\n".join(lines) + "\n"
