"""Univariate and multivariate Weyl algebras with exact rational coefficients."""

from .algebra import (
    ArityError,
    Derivation,
    WeylElement,
    add,
    commutator,
    degree,
    derivation_apply,
    derivative,
    equal,
    generator,
    inner_derivation,
    mul,
    normalize,
    one,
    power,
    random_element,
    scalar,
    zero,
)
from .kernels import (
    EXPONENTIAL,
    RULES,
    WEYL,
    WEYL_RECURSIVE,
    ProductRule,
    exponential_kernel,
    get_rule,
    make_rule,
    weyl_kernel_closed,
    weyl_kernel_recursive,
)
from .oracle import TestFunction, apply_exponential, apply_weyl
from .parser import EvalError, ParseError, WeylSyntaxError, eval_ast, evaluate, parse, tokenize
from .printing import SerializationError, deserialize, format_symbolic, format_table, serialize
from .session import SessionConfig

__version__ = "0.1.0"
