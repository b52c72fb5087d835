import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

import pandas as pd

from .config import (
    CACHE_DIR,
    DEFAULT_PRECISION,
    DEFAULT_SEED,
    OUTPUT_FORMATS,
    PRECISION_MODES,
    TERM_BUDGET,
    RunConfig,
    parse_algebra,
    parse_r_range,
)
from .errors import ConfigError, QuantumSeifertError
from .invariants.asymptotics import decay_report, lens_expansion, residual_table
from .invariants.rt_invariants import (
    InvariantMethod,
    InvariantResult,
    LENS_METHODS,
    SEIFERT_METHODS,
    methods_agree,
    tau_lens,
    tau_seifert,
)
from .invariants.seifert import parse_seifert
from .lie.modular_data import ModularData, build_modular_data, charge_conjugation, modular_data_summary
from .lie.root_system import RootSystem, build_root_system, describe
from .number_theory.arith import (
    SL2ZMatrix,
    cf_expand,
    cf_for_matrix,
    dedekind_sum,
    dedekind_sum_cotangent,
    rademacher_phi,
)
from .representation.sl2z_rep import rep_bruteforce, rep_closed
from .utils.file_utils import GoldenStore, cache_key, load_cached_value, save_result_file, store_cached_value
from .utils.numeric import to_pair
from .verify.suites import SUITES, run_suite

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_USAGE = 2

# --method names accepted for each kind of manifold
SEIFERT_METHOD_NAMES = {
    "matrix": [InvariantMethod.MATRIX_FORM],
    "closed": [InvariantMethod.CLOSED_FORM],
    "all": list(SEIFERT_METHODS),
}
LENS_METHOD_NAMES = {
    "matrix": [InvariantMethod.LENS_CF],
    "cf": [InvariantMethod.LENS_CF],
    "rtlens": [InvariantMethod.LENS_RTLENS],
    "closed": [InvariantMethod.LENS_ASYMP],
    "asymp": [InvariantMethod.LENS_ASYMP],
    "all": list(LENS_METHODS),
}


def _fraction_text(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _progress(args, message: str) -> None:
    if getattr(args, "verbose", False):
        print(message, file=sys.stderr)


def _emit(args, text: str) -> None:
    print(text)
    name = getattr(args, "save", None)
    if name:
        save_result_file(name, text + "\n", verbose=getattr(args, "verbose", False))


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _root_system(algebra: str) -> RootSystem:
    family, rank = parse_algebra(algebra)
    return build_root_system(family, rank)


def cmd_describe(args) -> int:
    _emit(args, _dump(describe(_root_system(args.algebra))))
    return EXIT_OK


def cmd_phi(args) -> int:
    U = SL2ZMatrix(args.a, args.b, args.c, args.d)
    _emit(args, _fraction_text(rademacher_phi(U)))
    return EXIT_OK


def cmd_dedekind(args) -> int:
    value = dedekind_sum(args.s, args.q)
    if args.cotangent:
        _emit(args, f"{_fraction_text(value)} {dedekind_sum_cotangent(args.s, args.q):.15g}")
    else:
        _emit(args, _fraction_text(value))
    return EXIT_OK


def cmd_cf(args) -> int:
    if args.matrix:
        C = cf_for_matrix(SL2ZMatrix(*args.matrix))
    else:
        if args.denominator == 0:
            raise ConfigError(["continued fraction of p/0 is undefined"])
        C = cf_expand(Fraction(args.numerator, args.denominator))
    B = C.matrix()
    _emit(args, _dump({"terms": list(C.terms), "matrix": B.as_list(), "phi": _fraction_text(rademacher_phi(B))}))
    return EXIT_OK


def _modular_data(args, level: int) -> ModularData:
    config = RunConfig(algebra=args.algebra, level=level, precision=args.precision)
    config.validate()
    return build_modular_data(_root_system(args.algebra), level, args.precision)


def cmd_modular_data(args) -> int:
    md = _modular_data(args, args.level)
    _emit(args, _dump(modular_data_summary(md, include_matrices=args.matrices)))
    return EXIT_OK


def cmd_rep(args) -> int:
    md = _modular_data(args, args.level)
    U = SL2ZMatrix(args.a, args.b, args.c, args.d)
    output = {"U": U.as_list(), "algebra": md.rs.name, "level": md.r, "index_set": [list(x) for x in md.index_set]}
    brute = rep_bruteforce(md, U) if args.mode in ("brute", "both") else None
    if args.mode == "both" and U.c == 0:
        print("Warning: c = 0, the closed formula does not apply; showing generator words only", file=sys.stderr)
    elif args.mode in ("closed", "both"):
        eps, closed = rep_closed(md, U)
        output["epsilon"] = eps
        output["closed"] = [[to_pair(x) for x in row] for row in closed.entries]
        if brute is not None:
            expected = brute if eps == 1 else charge_conjugation(md) @ brute
            output["max_discrepancy"] = closed.max_abs_diff(expected)
    if brute is not None:
        output["brute"] = [[to_pair(x) for x in row] for row in brute.entries]
    _emit(args, _dump(output))
    return EXIT_OK


def _levels(config: RunConfig) -> List[int]:
    if config.r_values:
        return config.r_values
    if config.level is not None:
        return [config.level]
    raise ConfigError(["give --level or --r-range"])


def _evaluate(md: ModularData, args, config: RunConfig, method: InvariantMethod, manifold: str) -> InvariantResult:
    key = cache_key(md.rs.name, md.r, manifold, method.value, md.backend.name)
    if args.cache:
        cached = load_cached_value(key, md.backend, config.cache_dir)
        if cached is not None:
            _progress(args, f"Using cached value for {key}")
            return InvariantResult(cached, method, {"algebra": md.rs.name, "r": md.r, "manifold": manifold,
                                                    "precision": md.backend.name, "cached": True})
    _progress(args, f"Computing {method.value} for {manifold} at r={md.r}...")
    if args.lens:
        result = tau_lens(md, args.lens[0], args.lens[1], method)
    else:
        result = tau_seifert(md, parse_seifert(args.seifert), method,
                             workers=config.workers, term_budget=config.term_budget)
    if args.cache:
        store_cached_value(key, result.value, md.backend, config.cache_dir)
    return result


def cmd_invariant(args) -> int:
    config = RunConfig(
        algebra=args.algebra,
        level=args.level,
        r_values=parse_r_range(args.r_range) if args.r_range else [],
        precision=args.precision,
        term_budget=args.term_budget,
        cache_dir=args.cache_dir,
        output_format=args.format,
        workers=args.workers,
    )
    config.validate()
    if args.lens:
        names = LENS_METHOD_NAMES
        manifold = f"L({args.lens[0]},{args.lens[1]})"
    else:
        names = SEIFERT_METHOD_NAMES
        manifold = parse_seifert(args.seifert).canonical()
    if args.method not in names:
        raise ConfigError([f"method '{args.method}' does not apply here; choose from {', '.join(names)}"])
    methods = names[args.method]
    if args.lens and args.lens[0] == 0 and args.method == "all":
        methods = [m for m in methods if m is not InvariantMethod.LENS_ASYMP]
    rs =_root_system(config.algebra)

    exit_code = EXIT_OK
    blocks = []
    for r in _levels(config):
        md = build_modular_data(rs, r, config.precision)
        results = [_evaluate(md, args, config, m, manifold) for m in methods]
        block = {"r": r, "results": results}
        if len(results) > 1:
            agree, gap = methods_agree(results)
            block["agree"], block["max_gap"] = agree, gap
            if not agree:
                print(f"Error: methods disagree for {manifold} at r={r} (max gap {gap:.3e})", file=sys.stderr)
                exit_code = EXIT_DISAGREEMENT
            elif args.golden:
                exit_code = max(exit_code, _check_golden(md, manifold, results[0]))
        blocks.append(block)

    _emit(args, _format_invariants(blocks, config.output_format))
    return exit_code


def _check_golden(md: ModularData, manifold: str, result: InvariantResult) -> int:
    store = GoldenStore()
    key = f"{md.rs.name}|{md.r}|{manifold}"
    verdict = store.check(key, result.value)
    if verdict is None:
        store.record(key, result.value)
        return EXIT_OK
    if not verdict:
        print(f"Error: {key} no longer matches its golden value {store.get(key)}", file=sys.stderr)
        return EXIT_DISAGREEMENT
    return EXIT_OK


def _format_invariants(blocks, output_format: str) -> str:
    if output_format == "csv":
        rows = [
            {"r": b["r"], "method": res.method.value, "re": complex(res.value).real, "im": complex(res.value).imag}
            for b in blocks for res in b["results"]
        ]
        return pd.DataFrame(rows).to_csv(index=False).rstrip("\n")
    if output_format == "plain":
        return "\n".join(
            f"r={b['r']} {res.method.value}: {complex(res.value):.15g}" for b in blocks for res in b["results"]
        )
    payload = []
    for b in blocks:
        if len(b["results"]) == 1:
            payload.append(b["results"][0].to_dict())
        else:
            payload.append({
                "r": b["r"],
                "results": [res.to_dict() for res in b["results"]],
                "agree": b["agree"],
                "max_gap": b["max_gap"],
            })
    return _dump(payload[0] if len(payload) == 1 else payload)


def cmd_asymptotics(args) -> int:
    config = RunConfig(algebra=args.algebra, r_values=parse_r_range(args.r_range) if args.r_range else [],
                       precision=args.precision, output_format=args.format)
    config.validate()
    rs = _root_system(config.algebra)
    p, q = args.lens

    def factory(r: int) -> ModularData:
        _progress(args, f"Building modular data at r={r}...")
        return build_modular_data(rs, r, config.precision)

    expansion = lens_expansion(factory(config.r_values[0] if config.r_values else rs.dual_coxeter), p, q, args.order)
    if not config.r_values:
        _emit(args, _dump({"expansion": expansion.to_dict()}))
        return EXIT_OK
    table = residual_table(factory, p, q, args.order, config.r_values)
    if config.output_format == "csv":
        _emit(args, table.to_csv(index=False).rstrip("\n"))
        return EXIT_OK
    output = {"expansion": expansion.to_dict(), "residuals": table.to_dict(orient="records")}
    if len(config.r_values) >= 5:
        output["decay"] = decay_report(table, rs.rank).to_dict(orient="records")
    else:
        print("Warning: fewer than 5 levels, skipping the decay fit", file=sys.stderr)
    _emit(args, _dump(output))
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = run_suite(args.suite, algebra=args.algebra, level=args.level, trials=args.trials,
                        seed=args.seed, precision=args.precision)
    passed = all(report["passed"] for report in reports)
    _emit(args, _dump({"passed": passed, "suites": reports}))
    return EXIT_OK if passed else EXIT_DISAGREEMENT


def _add_common(parser: argparse.ArgumentParser, algebra: bool = True, level: bool = True) -> None:
    if algebra:
        parser.add_argument("--algebra", default="A1", help="Simply-laced algebra, e.g. A1, A2, D4, E6.")
    if level:
        parser.add_argument("--level", "-r", type=int, default=None, help="Level r (at least the dual Coxeter number).")
    parser.add_argument("--precision", choices=PRECISION_MODES, default=DEFAULT_PRECISION)
    parser.add_argument("--save", metavar="NAME", default=None, help="Also write the output to the results directory.")
    parser.add_argument("--verbose", "-v", action="store_true", help="Print progress to stderr.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantum-seifert",
        description="Quantum invariants of Seifert manifolds and lens spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="Root system data as JSON.")
    _add_common(p, level=False)
    p.set_defaults(handler=cmd_describe)

    p = sub.add_parser("phi", help="Rademacher Phi of an SL(2,Z) matrix.")
    for name in "abcd":
        p.add_argument(name, type=int)
    _add_common(p, algebra=False, level=False)
    p.set_defaults(handler=cmd_phi)

    p = sub.add_parser("dedekind", help="Exact Dedekind sum s(s, q).")
    p.add_argument("s", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--cotangent", action="store_true", help="Also print the floating cotangent sum.")
    _add_common(p, algebra=False, level=False)
    p.set_defaults(handler=cmd_dedekind)

    p = sub.add_parser("cf", help="Continued fraction of p/q or of a matrix.")
    p.add_argument("numerator", type=int, nargs="?", default=0)
    p.add_argument("denominator", type=int, nargs="?", default=1)
    p.add_argument("--matrix", type=int, nargs=4, metavar=("A", "B", "C", "D"), default=None)
    _add_common(p, algebra=False, level=False)
    p.set_defaults(handler=cmd_cf)

    p = sub.add_parser("modular-data", help="Index set, D, omega, c and optionally S and T.")
    _add_common(p)
    p.add_argument("--matrices", action="store_true", help="Include the S and T matrices.")
    p.set_defaults(handler=cmd_modular_data)

    p = sub.add_parser("rep", help="R(U) by the closed formula and/or generator words.")
    for name in "abcd":
        p.add_argument(name, type=int)
    _add_common(p)
    p.add_argument("--mode", choices=("closed", "brute", "both"), default="both")
    p.set_defaults(handler=cmd_rep)

    p = sub.add_parser("invariant", help="RT invariant of a lens space or Seifert manifold.")
    _add_common(p)
    p.add_argument("--r-range", default=None, metavar="A:B[:STEP]", help="Sweep over levels A..B inclusive.")
    manifold = p.add_mutually_exclusive_group(required=True)
    manifold.add_argument("--lens", type=int, nargs=2, metavar=("P", "Q"))
    manifold.add_argument("--seifert", metavar='"o;g|b;(a1,b1),..."')
    p.add_argument("--method", default="matrix",
                   choices=sorted(set(SEIFERT_METHOD_NAMES) | set(LENS_METHOD_NAMES)))
    p.add_argument("--format", choices=OUTPUT_FORMATS, default="json")
    p.add_argument("--cache", action="store_true", help="Read and write the on-disk invariant cache.")
    p.add_argument("--cache-dir", default=CACHE_DIR)
    p.add_argument("--workers", type=int, default=1, help="Processes for the closed-form alcove sweep.")
    p.add_argument("--term-budget", type=int, default=TERM_BUDGET)
    p.add_argument("--golden", action="store_true", help="Record or check golden values when all methods agree.")
    p.set_defaults(handler=cmd_invariant)

    p = sub.add_parser("asymptotics", help="Large-r expansion of a lens space invariant.")
    _add_common(p, level=False)
    p.add_argument("--lens", type=int, nargs=2, metavar=("P", "Q"), required=True)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--r-range", default=None, metavar="A:B[:STEP]")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(handler=cmd_asymptotics)

    p = sub.add_parser("verify", help="Run a property suite and report pass/fail as JSON.")
    p.add_argument("suite", choices=SUITES)
    _add_common(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point with command-line argument parsing."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except QuantumSeifertError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    # python -m quantum_seifert.main invariant --lens 1 0 --level 4
    sys.exit(main())
