"""Property suites run by `quantum-seifert verify`.

Each suite returns a JSON-ready report {"suite", "passed", "checks"}; failing
checks are reported, never raised.
"""
import random
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..config import AGREEMENT_ATOL, DEFAULT_PRECISION, DEFAULT_SEED, parse_algebra
from ..errors import PreconditionViolation, QuantumSeifertError
from ..invariants.asymptotics import cs_phase_set, decay_report, lens_expansion, residual_table
from ..invariants.rt_invariants import (
    methods_agree,
    tau_closed_form,
    tau_lens,
    tau_lens_all,
    tau_matrix_form,
)
from ..invariants.seifert import lens_space_presentation, parse_seifert
from ..lie.modular_data import (
    ModularData,
    build_modular_data,
    charge_conjugation,
    omega_forms_agree,
    structural_checks,
)
from ..lie.root_system import build_root_system
from ..number_theory.arith import ContinuedFraction, SL2ZMatrix
from ..number_theory.gauss_sums import GaussSumSpec, gauss_lhs, gauss_rhs, make_gauss_spec
from ..representation.indexed_matrix import IndexedMatrix
from ..representation.sl2z_rep import (
    gen_theta,
    gen_xi,
    rep_bruteforce,
    rep_closed,
    rep_row_rho,
    sg_column,
    sg_column_from_rep,
    t_calC_bruteforce,
    t_calC_closed,
)
from ..utils.numeric import close_enough

STRUCTURAL_TOLERANCE = 1e-9

ORACLE_MANIFOLDS = (
    "o;0|-1",
    "o;0|0",
    "o;0|3",
    "o;0|2;(2,1)",
    "o;0|2;(3,1)",
    "o;0|-1;(2,1),(3,1),(5,1)",
    "o;1|-2;(3,2)",
    "n;2|0;(2,1),(3,1)",
)
ORACLE_LENSES = ((1, 0), (0, 1), (3, 1), (5, 2), (7, 3))


def _check(name: str, passed: bool, value: Optional[float] = None, detail: str = "") -> Dict:
    check = {"name": name, "passed": bool(passed)}
    if value is not None:
        check["value"] = float(value)
    if detail:
        check["detail"] = detail
    return check


def _report(suite: str, checks: List[Dict]) -> Dict:
    return {"suite": suite, "passed": all(c["passed"] for c in checks), "checks": checks}


def _guarded(name: str, fn: Callable[[], List[Dict]]) -> List[Dict]:
    try:
        return fn()
    except QuantumSeifertError as e:
        return [_check(name, False, detail=str(e))]


def _max_diff(a, b) -> float:
    a = np.vectorize(complex, otypes=[np.complex128])(np.asarray(a))
    b = np.vectorize(complex, otypes=[np.complex128])(np.asarray(b))
    return float(np.max(np.abs(a - b)))


def random_sl2z(rng: random.Random, bound: int = 20) -> SL2ZMatrix:
    while True:
        a, c = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if c == 0 or gcd(a, c) != 1:
            continue
        # b, d with a d - b c = 1
        d = pow(a, -1, abs(c)) if abs(c) > 1 else 0
        b = (a * d - 1) // c
        shift = rng.randint(-2, 2)
        return SL2ZMatrix(a, b + shift * a, c, d + shift * c)


def relations_suite(algebra: str = "A1", level: int = 6, precision: str = DEFAULT_PRECISION,
                    trials: int = 50, seed: int = DEFAULT_SEED) -> Dict:
    """Structural identities of the modular data and of the SL(2, Z) representation."""
    rs = build_root_system(*parse_algebra(algebra))
    md = build_modular_data(rs, level, precision)

    def structure() -> List[Dict]:
        checks = [
            _check(name, residual <= STRUCTURAL_TOLERANCE, residual)
            for name, residual in structural_checks(md).items()
        ]
        checks.append(_check("omega_forms", omega_forms_agree(md) <= STRUCTURAL_TOLERANCE, omega_forms_agree(md)))
        xi, theta = gen_xi(md), gen_theta(md)
        identity = IndexedMatrix(md.index_set, md.backend.eye(md.size))
        xi_sq = xi @ xi
        residual = (xi_sq @ xi_sq).max_abs_diff(identity)
        checks.append(_check("xi_fourth_power", residual <= STRUCTURAL_TOLERANCE, residual))
        xt = xi @ theta
        residual = (xt @ xt @ xt).max_abs_diff(xi_sq)
        checks.append(_check("xi_theta_cubed", residual <= STRUCTURAL_TOLERANCE, residual))
        residual = xi_sq.max_abs_diff(charge_conjugation(md))
        checks.append(_check("xi_squared_is_conjugation", residual <= STRUCTURAL_TOLERANCE, residual))
        return checks

    def representation() -> List[Dict]:
        rng = random.Random(seed)
        checks = []
        C_conj = charge_conjugation(md)
        for _ in range(trials):
            U = random_sl2z(rng)
            eps, closed = rep_closed(md, U)
            brute = rep_bruteforce(md, U)
            expected = brute if eps == 1 else C_conj @ brute
            residual = closed.max_abs_diff(expected)
            checks.append(_check(f"rep_closed {U}", residual <= STRUCTURAL_TOLERANCE, residual))
            column = brute.column(md.rho)
            for formula in ((1, 2) if U.a != 0 else (1,)):
                row = [rep_row_rho(md, U, lam, formula) for lam in md.index_set]
                residual = _max_diff(row, column)
                checks.append(_check(f"rho_column formula {formula} {U}", residual <= STRUCTURAL_TOLERANCE, residual))
        for terms in ((2,), (1, 3), (-2, 1, 2)):
            C = ContinuedFraction(terms)
            residual = _max_diff(sg_column(md, C), sg_column_from_rep(md, C))
            checks.append(_check(f"sg_column {terms}", residual <= STRUCTURAL_TOLERANCE, residual))
            lam = md.index_set[-1]
            residual = abs(complex(t_calC_closed(md, C, md.rho, lam)) - complex(t_calC_bruteforce(md, C, md.rho, lam)))
            checks.append(_check(f"t_calC {terms}", residual <= STRUCTURAL_TOLERANCE, residual))
        return checks

    checks = _guarded("modular_data", structure) + _guarded("representation", representation)
    return _report("relations", checks)


_GAUSS_LATTICES = (
    [[1]],
    [[1, 0], [0, 1]],
    [[2]],
    [[2, -1], [-1, 2]],
)


def random_gauss_spec(rng: random.Random, max_attempts: int = 10000) -> GaussSumSpec:
    """A GaussSumSpec with scalar B drawn until every reciprocity precondition holds."""
    for _ in range(max_attempts):
        gram = rng.choice(_GAUSS_LATTICES)
        l = len(gram)
        r = rng.randint(1, 8)
        b = rng.choice([x for x in range(-4, 5) if x != 0])
        B = [[b if i == j else 0 for j in range(l)] for i in range(l)]
        psi = [Fraction(rng.randint(0, r - 1), r) for _ in range(l)]
        try:
            return make_gauss_spec(gram, r, B, psi)
        except PreconditionViolation:
            continue
    raise RuntimeError("no valid Gauss sum parameters found")


def reciprocity_suite(trials: int = 100, seed: int = DEFAULT_SEED, precision: str = DEFAULT_PRECISION) -> Dict:
    """Reciprocity of lattice Gauss sums on seeded random data."""
    rng = random.Random(seed)
    checks = []
    for _ in range(trials):
        spec = random_gauss_spec(rng)
        lhs, rhs = gauss_lhs(spec, precision), gauss_rhs(spec, precision)
        gap = abs(complex(lhs) - complex(rhs))
        name = f"gram={spec.gram.tolist()} r={spec.r} B={spec.B[0, 0]} psi={[str(x) for x in spec.psi]}"
        checks.append(_check(name, close_enough(lhs, rhs, rtol=1e-9, atol=1e-10), gap))
    return _report("reciprocity", checks)


def oracle_suite(algebra: str = "A1", level: int = 5, precision: str = DEFAULT_PRECISION,
                 manifolds: Sequence[str] = ORACLE_MANIFOLDS,
                 lenses: Sequence = ORACLE_LENSES) -> Dict:
    """Every evaluation path of each test manifold must give the same value."""
    rs = build_root_system(*parse_algebra(algebra))
    md = build_modular_data(rs, level, precision)
    checks = []
    for text in manifolds:
        def seifert(text=text) -> List[Dict]:
            M = parse_seifert(text)
            results = [tau_matrix_form(md, M), tau_closed_form(md, M)]
            normalized = M.normalize()
            if normalized.canonical() != M.canonical():
                results.append(tau_matrix_form(md, normalized))
            agree, gap = methods_agree(results)
            return [_check(f"seifert {text}", agree, gap)]
        checks.extend(_guarded(f"seifert {text}", seifert))
    for p, q in lenses:
        def lens(p=p, q=q) -> List[Dict]:
            results = tau_lens_all(md, p, q)
            results.append(tau_matrix_form(md, lens_space_presentation(p, q)))
            agree, gap = methods_agree(results)
            out = [_check(f"lens L({p},{q})", agree, gap)]
            if p > 1:
                shifted = tau_lens(md, p, q + p)
                inverse = tau_lens(md, p, pow(q, -1, p))
                agree, gap = methods_agree([results[0], shifted, inverse])
                out.append(_check(f"lens L({p},{q}) presentations", agree, gap))
            return out
        checks.extend(_guarded(f"lens L({p},{q})", lens))
    return _report("oracle", checks)


def asymptotics_suite(algebra: str = "A1", orders: Sequence[int] = (0, 1, 2),
                      lenses: Sequence = ((3, 1), (5, 2)),
                      r_values: Optional[Sequence[int]] = None,
                      precision: str = DEFAULT_PRECISION) -> Dict:
    """Phase sets, exact regrouping and decay rates of the truncated series."""
    rs = build_root_system(*parse_algebra(algebra))
    checks = []
    if rs.name == "A1":
        phases = cs_phase_set(rs, 2, 1)
        checks.append(_check("cs_phase_set A1 L(2,1)", phases == [Fraction(0), Fraction(1, 2)],
                             detail=str([str(x) for x in phases])))

    def factory(r: int) -> ModularData:
        return build_modular_data(rs, r, precision)

    for p, q in lenses:
        def lens(p=p, q=q) -> List[Dict]:
            levels = list(r_values) if r_values else decay_levels(p)
            table = residual_table(factory, p, q, max(orders), levels)
            gap = float(table["regrouped_gap"].max())
            out = [_check(f"L({p},{q}) regrouped sum is exact", gap <= AGREEMENT_ATOL, gap)]
            expansion = lens_expansion(factory(levels[0]), p, q, 0)
            phases_match = expansion.phases == cs_phase_set(rs, p, q)
            out.append(_check(f"L({p},{q}) expansion phases", phases_match))
            report = decay_report(table, rs.rank)
            for row in report.itertuples():
                if row.order in orders:
                    out.append(_check(f"L({p},{q}) decay order {row.order}", bool(row.passed), row.slope,
                                      detail=f"bound {row.bound:.2f}"))
            return out
        checks.extend(_guarded(f"asymptotics L({p},{q})", lens))
    return _report("asymptotics", checks)


def decay_levels(p: int, low: int = 20, high: int = 200, step: int = 7) -> List[int]:
    """Levels in [low, high] that are not multiples of p.

    At multiples of p the truncated series already equals tau up to rounding,
    so residuals there carry no decay information.
    """
    modulus = abs(p)
    return [r for r in range(low, high + 1, step) if modulus <= 1 or r % modulus]


SUITES = ("relations", "reciprocity", "oracle", "asymptotics", "all")


def run_suite(name: str, algebra: str = "A1", level: Optional[int] = None, trials: int = 100,
              seed: int = DEFAULT_SEED, precision: str = DEFAULT_PRECISION) -> List[Dict]:
    if name not in SUITES:
        raise ValueError(f"unknown suite '{name}', expected one of {', '.join(SUITES)}")
    reports = []
    if name in ("relations", "all"):
        reports.append(relations_suite(algebra, level or 6, precision, trials=trials, seed=seed))
    if name in ("reciprocity", "all"):
        reports.append(reciprocity_suite(trials, seed, precision))
    if name in ("oracle", "all"):
        reports.append(oracle_suite(algebra, level or 5, precision))
    if name in ("asymptotics", "all"):
        reports.append(asymptotics_suite(algebra, precision=precision))
    return reports
