"""``enum``: run an enumeration algorithm on an instance file.

Solutions go to standard output, one per line, as they are produced.
``--stats`` writes ``key=value`` delay statistics to standard error (or to
``--report``).  Exit codes: 2 parse error, 3 invalid instance or options,
4 verification or order mismatch, 5 step or store budget exceeded.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import oracle
from .amortize import (
    adaptive_delay_amortize, geometric_amortize, geometric_amortize_adaptive, queue_amortize,
    sampler_to_enumerator,
)
from .engine import (
    DEFAULT_STEP_BUDGET, EnumerationError, Enumerator, StepBudgetExceeded, StoreBudgetExceeded,
    delay_report, run,
)
from .problems import (
    Dag, DnfFormula, Gf2System, InstanceError, OutOfRange, SetSystem, closure_saturate,
    dag_paths, dnf_enumerate, gf2_basis, gf2_enumerate, gf2_jth_solution, gf2_sampler, gray_code,
    union_flashlight, union_reverse_search, union_supergraph,
)
from .problems.gf2 import NoSolution

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_MISMATCH, EXIT_BUDGET = 0, 2, 3, 4, 5

PROBLEMS = ("union", "dnf", "gray", "dagpaths", "gf2")
METHODS = {
    "union": ("flashlight", "supergraph", "reverse", "saturate"),
    "dnf": ("flashlight",),
    "gray": ("loopless",),
    "dagpaths": ("dfs",),
    "gf2": ("gray", "lex", "sampler"),
}
AMORTIZERS = ("none", "queue", "geometric", "adaptive", "estimate")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass
class RunConfig:
    problem: str
    method: str = "default"
    amortize: str = "none"
    p: int | None = None
    epsilon: Fraction = Fraction(1, 2)
    limit: int | None = None
    seed: int = 0
    stats: bool = False
    order_check: bool = False
    verify: bool = False

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise InstanceError(f"unknown problem {self.problem!r}")
        if self.method == "default":
            self.method = METHODS[self.problem][0]
        if self.method not in METHODS[self.problem]:
            raise InstanceError(f"method {self.method!r} does not apply to {self.problem}; "
                                f"choose from {', '.join(METHODS[self.problem])}")
        if self.amortize not in AMORTIZERS:
            raise InstanceError(f"unknown amortizer {self.amortize!r}")


def _lines(text: str):
    """Yield ``(line number, int tokens)`` for non-blank, non-comment lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        yield no, line.split()


def _ints(tokens: list[str], no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def _header(lines, size: int, what: str) -> tuple[int, list[int]]:
    try:
        no, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"missing {what} header") from None
    values = _ints(tokens, no)
    if len(values) != size:
        raise ParseError(f"{what} header needs {size} integers", no)
    return no, values


def parse_set_system(text: str) -> SetSystem:
    lines = _lines(text)
    _, (n, m) = _header(lines, 2, "'n m'")
    sets = []
    for no, tokens in lines:
        elems = _ints(tokens, no)
        if elems and elems[-1] == 0:
            elems.pop()
        if len(sets) == m:
            raise ParseError(f"more than {m} sets", no)
        bad = [e for e in elems if not 1 <= e <= n]
        if bad:
            raise InstanceError(f"line {no}: element {bad[0]} outside 1..{n}")
        sets.append(frozenset(elems))
    if len(sets) != m:
        raise ParseError(f"expected {m} sets, found {len(sets)}")
    return SetSystem(n, tuple(sets))


def parse_dnf(text: str) -> DnfFormula:
    lines = _lines(text)
    try:
        no, tokens = next(lines)
    except StopIteration:
        raise ParseError("missing 'p dnf n m' header") from None
    if tokens[:2] != ["p", "dnf"] or len(tokens) != 4:
        raise ParseError("header must be 'p dnf n m'", no)
    n, m = _ints(tokens[2:], no)
    terms, current = [], []
    for no, tokens in lines:
        for lit in _ints(tokens, no):
            if lit == 0:
                terms.append(tuple(current))
                current = []
            else:
                current.append(lit)
        if current:
            raise ParseError("term not terminated by 0", no)
    if len(terms) != m:
        raise ParseError(f"expected {m} terms, found {len(terms)}")
    return DnfFormula(n, tuple(terms))


def parse_dag(text: str) -> Dag:
    lines = _lines(text)
    _, (V, E, s, t) = _header(lines, 4, "'V E s t'")
    arcs = []
    for no, tokens in lines:
        pair = _ints(tokens, no)
        if len(pair) != 2:
            raise ParseError("arc lines hold two vertices", no)
        arcs.append(tuple(pair))
    if len(arcs) != E:
        raise ParseError(f"expected {E} arcs, found {len(arcs)}")
    return Dag(V, tuple(arcs), s, t)


def parse_gf2(text: str) -> Gf2System:
    lines = _lines(text)
    _, (r, n) = _header(lines, 2, "'r n'")
    A, b = [], []
    for no, tokens in lines:
        digits = "".join(tokens)
        if len(digits) != n + 1 or set(digits) - {"0", "1"}:
            raise ParseError(f"row must hold {n + 1} bits", no)
        bits = [int(c) for c in digits]
        A.append(tuple(bits[:n]))
        b.append(bits[n])
    if len(A) != r:
        raise ParseError(f"expected {r} rows, found {len(A)}")
    return Gf2System(n, tuple(A), tuple(b))


PARSERS = {"union": parse_set_system, "dnf": parse_dnf, "dagpaths": parse_dag, "gf2": parse_gf2}


def parse_instance(path: str, problem: str):
    if problem == "gray":
        try:
            n = int(path)
        except ValueError:
            raise ParseError(f"word length must be an integer, got {path!r}") from None
        if n < 1:
            raise InstanceError("word length must be >= 1")
        return n
    with open(path) as fh:
        return PARSERS[problem](fh.read())


def format_solution(problem: str, sol) -> str:
    if problem == "union":
        return " ".join(str(i) for i, b in enumerate(sol, start=1) if b)
    if problem == "dagpaths":
        return " ".join(map(str, sol))
    return "".join(map(str, sol))


def build_enumerator(cfg: RunConfig, instance) -> Enumerator:
    problem, method = cfg.problem, cfg.method
    if problem == "union":
        return {"flashlight": union_flashlight, "supergraph": union_supergraph,
                "reverse": union_reverse_search, "saturate": closure_saturate}[method](instance)
    if problem == "dnf":
        return dnf_enumerate(instance)
    if problem == "gray":
        return gray_code(instance)
    if problem == "dagpaths":
        return dag_paths(instance)
    if method == "sampler":
        return sampler_to_enumerator(gf2_sampler(instance), float(cfg.epsilon), cfg.seed)
    return gf2_enumerate(instance, order=method)


def solution_bound(cfg: RunConfig, instance) -> int:
    if cfg.problem == "union":
        return max(1, min(1 << instance.n, (1 << instance.m) - 1))
    if cfg.problem == "gray":
        return 1 << instance
    if cfg.problem == "dagpaths":
        return 1 << max(instance.n_vertices - 2, 0)
    return 1 << instance.n


def amortized(cfg: RunConfig, e: Enumerator, instance) -> Enumerator:
    if cfg.amortize == "none":
        return e
    if cfg.amortize == "estimate":
        return adaptive_delay_amortize(e, cfg.epsilon)
    p = cfg.p if cfg.p is not None else e.delay_bound
    if p is None:
        raise InstanceError(f"--p is required to amortize the {cfg.method} method")
    if cfg.amortize == "queue":
        return queue_amortize(e, p)
    if not e.supports_snapshot:
        raise InstanceError(f"the {cfg.method} method cannot be paused and replayed")
    # a wrong --p must not silently lose solutions
    if cfg.amortize == "geometric":
        return geometric_amortize(e, p=p, ell=solution_bound(cfg, instance), verify_tail=True)
    return geometric_amortize_adaptive(e, p, verify_tail=True)


def reference(cfg: RunConfig, instance):
    if cfg.problem == "union":
        return oracle.brute_union(instance)
    if cfg.problem == "dnf":
        return oracle.brute_dnf(instance)
    if cfg.problem == "gray":
        return oracle.reflected_gray_code(instance)
    if cfg.problem == "dagpaths":
        return oracle.brute_paths(instance)
    return oracle.brute_gf2(instance)


def step_budget() -> int:
    raw = os.environ.get("ENUM_STEP_BUDGET")
    if not raw:
        return DEFAULT_STEP_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InstanceError(f"ENUM_STEP_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise InstanceError("ENUM_STEP_BUDGET must be positive")
    return value


def execute(cfg: RunConfig, instance, out=None, err=None, report_path: str | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    budget = step_budget()
    e = amortized(cfg, build_enumerator(cfg, instance), instance)

    def emit(_, sol):
        out.write(format_solution(cfg.problem, sol) + "\n")
        out.flush()

    status = EXIT_OK
    try:
        trace = run(e, limit=cfg.limit, step_budget=budget, on_emit=emit)
    except StepBudgetExceeded as exc:
        err.write(f"enum: {exc}\n")
        trace, status = exc.trace, EXIT_BUDGET
    except StoreBudgetExceeded as exc:
        err.write(f"enum: {exc}\n")
        return EXIT_BUDGET

    lines: list[str] = []
    if cfg.stats:
        lines += delay_report(trace).as_lines()
    if cfg.order_check and status == EXIT_OK:
        sols = trace.solutions
        bad = next((i for i in range(1, len(sols)) if not sols[i - 1] < sols[i]), None)
        lines.append(f"order_ok={'true' if bad is None else 'false'}")
        if bad is not None:
            status = EXIT_MISMATCH
    if cfg.verify and status == EXIT_OK:
        rep = oracle.compare(trace, reference(cfg, instance))
        lines += rep.as_lines()
        if not rep.ok:
            status = EXIT_MISMATCH
    if lines:
        text = "".join(line + "\n" for line in lines)
        if report_path:
            with open(report_path, "w") as fh:
                fh.write(text)
        else:
            err.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--method", default="default")
    common.add_argument("--amortize", choices=AMORTIZERS, default="none")
    common.add_argument("--p", type=int, help="incremental delay used by the amortizer")
    common.add_argument("--epsilon", type=Fraction, default=Fraction(1, 2))
    common.add_argument("--limit", type=int, help="stop after this many solutions")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--stats", action="store_true")
    common.add_argument("--report", metavar="FILE", help="write statistics here instead of stderr")
    common.add_argument("--verify", action="store_true", help="compare with brute force")
    common.add_argument("--order-check", action="store_true",
                        help="require strictly increasing output")
    parser = argparse.ArgumentParser(prog="enum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="problem", required=True)
    for name, arg, helptext in [
        ("union", "instance", "union closure of a set system"),
        ("dnf", "instance", "models of a DNF formula"),
        ("gray", "n", "reflected Gray code of length n"),
        ("dagpaths", "instance", "source-target paths of a DAG"),
        ("gf2", "instance", "solutions of a linear system over GF(2)"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument(arg)
        if name == "gf2":
            p.add_argument("--rank", action="store_true",
                           help="print the solution with index --index instead of enumerating")
            p.add_argument("--index", type=int, default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    source = args.n if args.problem == "gray" else args.instance
    try:
        cfg = RunConfig(args.problem, args.method, args.amortize, args.p, args.epsilon,
                        args.limit, args.seed, args.stats, args.order_check, args.verify)
        if cfg.epsilon <= 0 or (cfg.p is not None and cfg.p < 1):
            raise InstanceError("--epsilon and --p must be positive")
        instance = parse_instance(source, cfg.problem)
        if getattr(args, "rank", False):
            return _rank(instance, args.index)
        return execute(cfg, instance, report_path=args.report)
    except ParseError as exc:
        print(f"enum: {source}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"enum: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InstanceError, EnumerationError) as exc:
        print(f"enum: {exc}", file=sys.stderr)
        return EXIT_INVALID


def _rank(instance: Gf2System, index: int) -> int:
    try:
        basis = gf2_basis(instance)
        print(format_solution("gf2", gf2_jth_solution(basis, index)))
    except (NoSolution, OutOfRange) as exc:
        print(f"enum: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
