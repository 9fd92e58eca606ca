"""Command-line front end.

Subcommands: ``eval``, ``check-equal``, ``apply``, ``repl`` and ``bench``.
Exit codes are 0 for success (or equality), 1 for a well-formed inequality
and 2 for user errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Mapping, TextIO

from .algebra import WeylElement
from .bench import run_bench
from .kernels import RULES
from .oracle import apply as apply_operator
from .oracle import format_function, function_from_ast
from .parser import WeylSyntaxError, eval_ast, parse_expr, symbols_in
from .printing import format_element
from .session import IDENT, SessionConfig

EXIT_OK = 0
EXIT_UNEQUAL = 1
EXIT_USAGE = 2


class CliError(ValueError):
    pass


def _split_names(text: str) -> tuple[str, ...]:
    return tuple(s for s in text.replace(",", " ").split() if s)


def make_config(vars_: str | None, arity: int | None, rule: str, form: str) -> SessionConfig:
    if vars_:
        names = _split_names(vars_)
        if arity is not None and arity != len(names):
            raise CliError(f"--arity {arity} disagrees with {len(names)} names in --vars")
        cfg = SessionConfig.from_vars(names, rule, form)
    else:
        cfg = SessionConfig.for_arity(arity or 1, rule, form)
    if rule == "exponential" and cfg.arity != 1:
        raise CliError("the exponential rule is only defined for a single variable")
    return cfg


def evaluate_source(src: str, cfg: SessionConfig, env: Mapping[str, WeylElement]) -> WeylElement:
    return eval_ast(parse_expr(src, cfg, env.keys()), env, cfg)


def bind(name: str, src: str, cfg: SessionConfig, env: dict[str, WeylElement]) -> None:
    name = name.strip()
    if not IDENT.match(name):
        raise CliError(f"invalid binding name {name!r}")
    if name in cfg.names:
        raise CliError(f"cannot rebind generator name {name!r}")
    env[name] = evaluate_source(src, cfg, env)


def _diagnose(exc: Exception, src: str | None, err: TextIO) -> None:
    print(f"error: {exc}", file=err)
    if isinstance(exc, WeylSyntaxError) and src is not None:
        print(f"  {src}", file=err)
        print("  " + " " * exc.position + "^", file=err)


def _bindings(lets: list[str] | None, cfg: SessionConfig) -> dict[str, WeylElement]:
    env: dict[str, WeylElement] = {}
    for item in lets or ():
        name, sep, src = item.partition("=")
        if not sep:
            raise CliError(f"--let expects name=expr, got {item!r}")
        try:
            bind(name, src, cfg, env)
        except WeylSyntaxError as exc:
            # re-raise with the binding named so the position makes sense
            raise CliError(f"in --let {name.strip()}: {exc}") from None
    return env


# -- subcommands ----------------------------------------------------------


def cmd_eval(args, out: TextIO, err: TextIO) -> int:
    cfg = make_config(args.vars, args.arity, args.rule, _table_form(args.form))
    env = _bindings(args.let, cfg)
    src = args.expr
    try:
        w = evaluate_source(src, cfg, env)
    except ValueError as exc:
        _diagnose(exc, src, err)
        return EXIT_USAGE
    print(format_element(w, cfg, args.form or "table"), file=out)
    return EXIT_OK


def cmd_check_equal(args, out: TextIO, err: TextIO) -> int:
    cfg = make_config(args.vars, args.arity, args.rule, _table_form(args.form))
    env = _bindings(args.let, cfg)
    values = []
    for src in (args.expr_a, args.expr_b):
        try:
            values.append(evaluate_source(src, cfg, env))
        except ValueError as exc:
            _diagnose(exc, src, err)
            return EXIT_USAGE
    a, b = values
    if a == b:
        print("equal", file=out)
        return EXIT_OK
    print("not equal", file=out)
    print(format_element(a - b, cfg, args.form or "symbolic"), file=out)
    return EXIT_UNEQUAL


def _function_names(cfg: SessionConfig) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """(polynomial variable names, exponential factor names) for ``apply``."""
    if cfg.rule == "exponential":
        poly = "t" if "x" in cfg.names else "x"
        return (poly,), cfg.var_names
    return cfg.var_names, ()


def cmd_apply(args, out: TextIO, err: TextIO) -> int:
    cfg = make_config(args.vars, args.arity, args.rule, "symbolic")
    env = _bindings(args.let, cfg)
    try:
        op = evaluate_source(args.op_expr, cfg, env)
    except ValueError as exc:
        _diagnose(exc, args.op_expr, err)
        return EXIT_USAGE
    poly_names, exp_names = _function_names(cfg)
    src = args.fn_expr
    try:
        ast = parse_expr(src, None)
        for sym in symbols_in(ast):
            if sym.name in cfg.der_names:
                raise WeylSyntaxError(
                    f"function expressions are derivative-free (found {sym.name!r})", sym.position
                )
            if sym.name not in poly_names and sym.name not in exp_names:
                raise WeylSyntaxError(f"unknown function variable {sym.name!r}", sym.position)
        f = function_from_ast(ast, poly_names, exp_names)
        result = apply_operator(op, f)
    except ValueError as exc:
        _diagnose(exc, src, err)
        return EXIT_USAGE
    print(format_function(result, poly_names), file=out)
    return EXIT_OK


def cmd_bench(args, out: TextIO, err: TextIO) -> int:
    report = run_bench(
        seed=args.seed,
        pairs=args.pairs,
        repeats=args.repeats,
        arity=args.arity or 1,
        n_terms=args.terms,
        max_exp=args.max_exp,
    )
    print(report.render(), file=out)
    return EXIT_OK


REPL_HELP = """\
let NAME = EXPR        bind a name
EXPR                   evaluate and print
:form table|symbolic   choose the print form
:rule weyl|weyl-recursive|exponential
:vars NAMES            set generator names (comma or space separated)
:quit                  leave"""


def run_repl(cfg: SessionConfig, env: dict[str, WeylElement], inp: TextIO, out: TextIO,
             err: TextIO, prompt: str = "") -> int:
    """Read-eval-print loop; errors are reported per line and the loop goes on."""
    while True:
        if prompt:
            out.write(prompt)
            out.flush()
        line = inp.readline()
        if not line:
            return EXIT_OK
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith(":"):
                cmd, _, arg = line[1:].partition(" ")
                arg = arg.strip()
                if cmd in ("quit", "q", "exit"):
                    return EXIT_OK
                if cmd == "help":
                    print(REPL_HELP, file=out)
                elif cmd == "form":
                    cfg = cfg.with_(print_form=arg)
                elif cmd == "rule":
                    new = make_config(None, 1, arg, cfg.print_form) if arg == "exponential" \
                        else SessionConfig.from_vars(cfg.var_names, arg, cfg.print_form)
                    if new != cfg and env:
                        env.clear()
                        print("note: bindings cleared", file=err)
                    cfg = new
                elif cmd == "vars":
                    new = make_config(arg, None, cfg.rule, cfg.print_form)
                    if new != cfg and env:
                        env.clear()
                        print("note: bindings cleared", file=err)
                    cfg = new
                else:
                    raise CliError(f"unknown directive :{cmd}")
                continue
            if line.startswith("let ") or line.startswith("let\t"):
                name, sep, src = line[4:].partition("=")
                if not sep:
                    raise CliError("expected: let NAME = EXPR")
                try:
                    bind(name, src, cfg, env)
                except WeylSyntaxError as exc:
                    offset = len(line) - len(src)
                    _diagnose(WeylSyntaxError(exc.message, exc.position + offset), line, err)
                continue
            w = evaluate_source(line, cfg, env)
            print(format_element(w, cfg), file=out)
        except ValueError as exc:
            _diagnose(exc, line, err)


def cmd_repl(args, out: TextIO, err: TextIO, inp: TextIO | None = None) -> int:
    cfg = make_config(args.vars, args.arity, args.rule, _table_form(args.form))
    env = _bindings(args.let, cfg)
    inp = inp or sys.stdin
    prompt = "> " if inp.isatty() else ""
    return run_repl(cfg, env, inp, out, err, prompt)


def _table_form(form: str | None) -> str:
    return form if form in ("table", "symbolic") else "table"


# -- argument parsing -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", help="generator names, e.g. 'x' or 'x,y,z' (sets the arity)")
    common.add_argument("--arity", type=int, help="number of variables when --vars is not given")
    common.add_argument("--rule", choices=sorted(RULES), default="weyl", help="product rule")
    common.add_argument("--let", action="append", metavar="NAME=EXPR",
                        help="bind NAME before evaluating (repeatable, in order)")

    form = argparse.ArgumentParser(add_help=False)
    form.add_argument("--form", choices=("table", "symbolic", "json"), help="output form")

    parser = argparse.ArgumentParser(prog="weyl", description="Weyl algebra calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, form], help="evaluate an expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check-equal", parents=[common, form], help="compare two expressions")
    p.add_argument("expr_a")
    p.add_argument("expr_b")
    p.set_defaults(func=cmd_check_equal)

    p = sub.add_parser("apply", parents=[common], help="apply an operator to a function")
    p.add_argument("op_expr")
    p.add_argument("fn_expr")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("repl", parents=[common, form], help="interactive session")
    p.set_defaults(func=cmd_repl)

    p = sub.add_parser("bench", help="time the closed-form and recursive kernels")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--terms", type=int, default=3)
    p.add_argument("--max-exp", type=int, default=6)
    p.add_argument("--arity", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except ValueError as exc:
        _diagnose(exc, None, err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
