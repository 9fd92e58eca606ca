"""Direct action of Weyl elements on exponential-polynomial test functions.

Nothing here calls a product kernel: operators act by literally
differentiating and multiplying, so agreement between ``apply(a * b, f)``
and ``apply(a, apply(b, f))`` is independent evidence that the product is
right.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping, Tuple

from .algebra import ArityError, Coefficient, WeylElement, coerce_coefficient
from .kernels import STANDARD_RULE_NAMES

# (exp weights m_1..m_n, polynomial exponents j_1..j_n)
FunctionKey = Tuple[Tuple[int, ...], Tuple[int, ...]]

__all__ = [
    "TestFunction",
    "apply",
    "apply_exponential",
    "apply_weyl",
    "format_function",
    "function_from_ast",
    "random_test_function",
]


class TestFunction:
    """A finite sum of ``c * exp(m . x) * x^j`` in ``arity`` variables.

    Immutable; held in normal form (unique keys, nonzero coefficients).
    """

    __test__ = False  # not a pytest class
    __slots__ = ("arity", "_terms")

    def __init__(self, arity: int, terms: Mapping[FunctionKey, Coefficient] = ()):
        if arity < 1:
            raise ValueError("arity must be positive")
        self.arity = arity
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[FunctionKey, Coefficient] = {}
        for (weights, exps), c in items:
            weights, exps = tuple(weights), tuple(exps)
            if len(weights) != arity or len(exps) != arity:
                raise ArityError(f"key {(weights, exps)} does not have arity {arity}")
            if any(w < 0 for w in weights) or any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {(weights, exps)}")
            key = (weights, exps)
            out[key] = out.get(key, 0) + coerce_coefficient(c)
        self._terms = {k: coerce_coefficient(v) for k, v in out.items() if v != 0}

    @classmethod
    def _raw(cls, arity, terms) -> TestFunction:
        self = cls.__new__(cls)
        self.arity = arity
        self._terms = {k: v for k, v in terms.items() if v != 0}
        return self

    @classmethod
    def polynomial(cls, arity: int, terms: Mapping[tuple, Coefficient]) -> TestFunction:
        """Plain polynomial from ``{exponent tuple: coeff}``."""
        zero = (0,) * arity
        return cls(arity, {(zero, tuple(e)): c for e, c in terms.items()})

    @classmethod
    def monomial(cls, *exps: int) -> TestFunction:
        return cls.polynomial(len(exps), {tuple(exps): 1})

    @property
    def terms(self) -> dict[FunctionKey, Coefficient]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: TestFunction):
        if self.arity != other.arity:
            raise ArityError(f"test functions of arity {self.arity} and {other.arity}")

    def __add__(self, other: TestFunction) -> TestFunction:
        if not isinstance(other, TestFunction):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TestFunction._raw(self.arity, out)

    def __neg__(self) -> TestFunction:
        return self.scale(-1)

    def __sub__(self, other: TestFunction) -> TestFunction:
        if not isinstance(other, TestFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TestFunction):
            self._check(other)
            out: dict[FunctionKey, Coefficient] = {}
            for (wa, ja), ca in self._terms.items():
                for (wb, jb), cb in other._terms.items():
                    key = (
                        tuple(x + y for x, y in zip(wa, wb)),
                        tuple(x + y for x, y in zip(ja, jb)),
                    )
                    out[key] = out.get(key, 0) + ca * cb
            return TestFunction._raw(self.arity, out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> TestFunction:
        c = coerce_coefficient(c)
        return TestFunction._raw(self.arity, {k: v * c for k, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, TestFunction):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        return hash((self.arity, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"TestFunction({self.arity}, {format_function(self)!r})"

    def diff(self, k: int) -> TestFunction:
        """Partial derivative in variable ``k`` (product rule)."""
        out: dict[FunctionKey, Coefficient] = {}
        for (w, j), c in self._terms.items():
            if w[k]:
                key = (w, j)
                out[key] = out.get(key, 0) + w[k] * c
            if j[k]:
                lowered = j[:k] + (j[k] - 1,) + j[k + 1:]
                key = (w, lowered)
                out[key] = out.get(key, 0) + j[k] * c
        return TestFunction._raw(self.arity, out)

    def times_x(self, k: int, power: int = 1) -> TestFunction:
        if not power:
            return self
        return TestFunction._raw(
            self.arity,
            {(w, j[:k] + (j[k] + power,) + j[k + 1:]): c for (w, j), c in self._terms.items()},
        )

    def times_exp(self, k: int, weight: int = 1) -> TestFunction:
        """Multiply by ``exp(weight * x_k)``."""
        if not weight:
            return self
        return TestFunction._raw(
            self.arity,
            {(w[:k] + (w[k] + weight,) + w[k + 1:], j): c for (w, j), c in self._terms.items()},
        )


def _check_rule(w: WeylElement, allowed: frozenset[str], what: str):
    if not w.is_scalar and w.rule.name not in allowed:
        raise ValueError(f"{what} needs an element built under {sorted(allowed)}, got {w.rule.name!r}")


def apply_weyl(w: WeylElement, f: TestFunction) -> TestFunction:
    """Act with ``w`` on ``f``: ``x^q d^p`` maps f to ``x^q * d^p f``."""
    _check_rule(w, STANDARD_RULE_NAMES, "apply_weyl")
    if w.arity != f.arity:
        if not w.is_scalar:
            raise ArityError(f"operator of arity {w.arity} applied to function of arity {f.arity}")
        return f.scale(w.constant())
    n = w.arity
    result = TestFunction._raw(n, {})
    for mono, c in w.items():
        g = f
        for k in range(n):
            for _ in range(mono[n + k]):
                g = g.diff(k)
        for k in range(n):
            g = g.times_x(k, mono[k])
        result = result + g.scale(c)
    return result


def apply_exponential(w: WeylElement, f: TestFunction) -> TestFunction:
    """Act with a univariate exponential-rule element: ``e^a d^b`` maps f to ``exp(a x) f^(b)``."""
    _check_rule(w, frozenset({"exponential"}), "apply_exponential")
    if w.arity != 1 or f.arity != 1:
        raise ArityError("the exponential algebra is univariate")
    result = TestFunction._raw(1, {})
    for (a, b), c in w.items():
        g = f
        for _ in range(b):
            g = g.diff(0)
        result = result + g.times_exp(0, a).scale(c)
    return result


def apply(w: WeylElement, f: TestFunction) -> TestFunction:
    """Dispatch on the element's rule."""
    if w.rule.name == "exponential" and not w.is_scalar:
        return apply_exponential(w, f)
    return apply_weyl(w, f)


def random_test_function(
    seed: int,
    arity: int = 1,
    max_degree: int = 6,
    n_terms: int = 3,
    max_weight: int = 0,
) -> TestFunction:
    """Seeded random function with total polynomial degree ``<= max_degree``."""
    rng = random.Random(seed)
    terms = {}
    for _ in range(n_terms):
        budget = rng.randint(0, max_degree)
        exps = [0] * arity
        for _ in range(budget):
            exps[rng.randrange(arity)] += 1
        weights = tuple(rng.randint(0, max_weight) for _ in range(arity))
        key = (weights, tuple(exps))
        terms[key] = terms.get(key, 0) + rng.randint(1, 9) * rng.choice((1, -1))
    return TestFunction(arity, terms)


def _exp_factor(name: str, m: int) -> str:
    return f"exp({name})" if m == 1 else f"exp({m}*{name})"


def format_function(f: TestFunction, var_names: tuple[str, ...] | None = None) -> str:
    """Render as ``100*x^3``, ``exp(2*x)*x - 3`` and so on (highest degree first)."""
    if f.is_zero:
        return "0"
    if var_names is None:
        var_names = ("x",) if f.arity == 1 else ("x", "y", "z")[: f.arity] if f.arity <= 3 else tuple(
            f"x{i}" for i in range(1, f.arity + 1)
        )
    order = sorted(
        f._terms.items(),
        key=lambda kv: (-sum(kv[0][1]), -sum(kv[0][0]), tuple(-e for e in kv[0][1] + kv[0][0])),
    )
    parts = []
    for (w, j), c in order:
        factors = [_exp_factor(var_names[k], m) for k, m in enumerate(w) if m]
        factors += [var_names[k] if e == 1 else f"{var_names[k]}^{e}" for k, e in enumerate(j) if e]
        mag = abs(Fraction(c))
        mag_s = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if factors:
            body = "*".join(factors) if mag == 1 else f"{mag_s}*" + "*".join(factors)
        else:
            body = mag_s
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts)


def function_from_ast(node, var_names: tuple[str, ...], exp_names: tuple[str, ...] = ()) -> TestFunction:
    """Evaluate a parsed, derivative-free expression to a test function.

    ``var_names[k]`` denotes the polynomial variable x_k and ``exp_names[k]``
    (if given) the factor ``exp(x_k)``.
    """
    from .parser import BinOp, Const, Neg, Pow, Symbol

    n = len(var_names)
    if isinstance(node, Const):
        return TestFunction(n, {((0,) * n, (0,) * n): node.value})
    if isinstance(node, Symbol):
        unit = [0] * n
        if node.name in exp_names:
            unit[exp_names.index(node.name)] = 1
            return TestFunction(n, {(tuple(unit), (0,) * n): 1})
        if node.name in var_names:
            unit[var_names.index(node.name)] = 1
            return TestFunction(n, {((0,) * n, tuple(unit)): 1})
        raise ValueError(f"unknown function variable {node.name!r}")
    if isinstance(node, Neg):
        return -function_from_ast(node.child, var_names, exp_names)
    if isinstance(node, Pow):
        base = function_from_ast(node.base, var_names, exp_names)
        out = TestFunction(n, {((0,) * n, (0,) * n): 1})
        for _ in range(node.exponent):
            out = out * base
        return out
    if isinstance(node, BinOp):
        left = function_from_ast(node.left, var_names, exp_names)
        right = function_from_ast(node.right, var_names, exp_names)
        if node.op == "add":
            return left + right
        if node.op == "sub":
            return left - right
        return left * right
    raise TypeError(f"not an expression node: {node!r}")
