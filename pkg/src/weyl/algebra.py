"""Normal-form elements of the n-th Weyl algebra.

An element is a finitely supported map from monomials to exact rational
coefficients.  A monomial of arity ``n`` is a tuple of ``2n`` nonnegative
integers: the exponents ``q_1..q_n`` of the multiplication generators
followed by the exponents ``p_1..p_n`` of the derivatives.  It denotes the
operator ``x^q d^p`` (generators to the left), i.e. differentiate, then
multiply.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Tuple, Union

from .kernels import WEYL, ProductRule, get_rule

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]
Scalar = Union[int, Fraction]

__all__ = [
    "ArityError",
    "Coefficient",
    "Derivation",
    "Monomial",
    "WeylElement",
    "add",
    "commutator",
    "default_var_names",
    "degree",
    "derivation_apply",
    "derivative_names",
    "equal",
    "generator",
    "derivative",
    "inner_derivation",
    "mul",
    "normalize",
    "one",
    "power",
    "random_element",
    "scalar",
    "zero",
]


class ArityError(ValueError):
    """Operands belong to Weyl algebras of different arity."""


def coerce_coefficient(c) -> Coefficient:
    """Exact rational from ``c``; integral values come back as ``int``."""
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficients must be exact rationals, not {type(c).__name__}")


def default_var_names(arity: int) -> tuple[str, ...]:
    if arity == 1:
        return ("x",)
    if arity <= 3:
        return ("x", "y", "z")[:arity]
    return tuple(f"x{i}" for i in range(1, arity + 1))


def derivative_names(var_names: tuple[str, ...]) -> tuple[str, ...]:
    """``d`` for a single variable, else ``d<name>`` (``x3`` -> ``d3``)."""
    if len(var_names) == 1:
        return ("d",)
    out = []
    for i, name in enumerate(var_names, start=1):
        out.append(f"d{i}" if name == f"x{i}" else f"d{name}")
    return tuple(out)


def graded_lex_key(mono: Monomial):
    """Canonical term order: total degree ascending, then lex descending."""
    return (sum(mono), tuple(-e for e in mono))


def _monomial_degree(mono: Monomial) -> int:
    return sum(mono)


class WeylElement:
    """An element of the Weyl algebra of a given arity, held in normal form.

    Instances are immutable.  Arithmetic operators use the element's
    :class:`~weyl.kernels.ProductRule`; plain ints and Fractions are promoted
    to scalar multiples of the identity.

    Parameters
    ----------
    arity :
        Number of (generator, derivative) pairs.
    terms :
        Mapping from ``2 * arity`` exponent tuples to coefficients.  It is
        normalized: like terms are summed and zeros dropped.
    rule :
        Product rule, or the name of a built-in one.
    var_names :
        Display names of the multiplication generators.
    """

    __slots__ = ("_arity", "_terms", "_rule", "_var_names", "_hash")

    def __init__(
        self,
        arity: int,
        terms: Mapping[Monomial, Coefficient] | Iterable[tuple[Monomial, Coefficient]] = (),
        rule: ProductRule | str = WEYL,
        var_names: tuple[str, ...] | None = None,
    ):
        if not isinstance(arity, int) or arity < 1:
            raise ValueError(f"arity must be a positive integer, got {arity!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        collected: dict[Monomial, Coefficient] = {}
        width = 2 * arity
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != width:
                raise ArityError(
                    f"monomial {mono} has length {len(mono)}, expected {width} for arity {arity}"
                )
            if any((not isinstance(e, int)) or e < 0 for e in mono):
                raise ValueError(f"exponents must be nonnegative integers: {mono}")
            collected[mono] = collected.get(mono, 0) + coerce_coefficient(coeff)
        self._set(arity, collected, get_rule(rule), var_names)

    def _set(self, arity, collected, rule, var_names):
        self._arity = arity
        self._terms = {
            m: coerce_coefficient(c)
            for m, c in sorted(collected.items(), key=lambda mc: graded_lex_key(mc[0]))
            if c != 0
        }
        self._rule = rule
        if var_names is None:
            var_names = default_var_names(arity)
        var_names = tuple(var_names)
        if len(var_names) != arity:
            raise ArityError(f"{len(var_names)} variable names given for arity {arity}")
        self._var_names = var_names
        self._hash = None

    @classmethod
    def _from_normal(cls, arity, terms, rule, var_names) -> WeylElement:
        # trusted fast path: terms already validated, only zeros to drop
        self = cls.__new__(cls)
        self._set(arity, terms, rule, var_names)
        return self

    # -- accessors -----------------------------------------------------

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> dict[Monomial, Coefficient]:
        """Copy of the term map, in canonical (graded-lex) order."""
        return dict(self._terms)

    @property
    def rule(self) -> ProductRule:
        return self._rule

    @property
    def var_names(self) -> tuple[str, ...]:
        return self._var_names

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def coefficient(self, mono: Monomial) -> Coefficient:
        return self._terms.get(tuple(mono), 0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_scalar(self) -> bool:
        """True for the zero element and multiples of the identity."""
        return all(not any(m) for m in self._terms)

    def constant(self) -> Coefficient:
        return self._terms.get((0,) * (2 * self._arity), 0)

    def with_rule(self, rule: ProductRule | str) -> WeylElement:
        return WeylElement._from_normal(self._arity, self._terms, get_rule(rule), self._var_names)

    def with_var_names(self, var_names) -> WeylElement:
        return WeylElement._from_normal(self._arity, self._terms, self._rule, tuple(var_names))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, WeylElement):
            try:
                other = scalar(other, self._arity, self._rule, self._var_names)
            except TypeError:
                return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> WeylElement:
        return self.scale(-1)

    def __pos__(self) -> WeylElement:
        return self

    def __sub__(self, other):
        if not isinstance(other, WeylElement):
            try:
                other = scalar(other, self._arity, self._rule, self._var_names)
            except TypeError:
                return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        # scalars commute with everything
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k):
        return power(self, k)

    def scale(self, c) -> WeylElement:
        c = coerce_coefficient(c)
        if c == 0:
            return WeylElement._from_normal(self._arity, {}, self._rule, self._var_names)
        return WeylElement._from_normal(
            self._arity, {m: v * c for m, v in self._terms.items()}, self._rule, self._var_names
        )

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return equal(self, other)
        try:
            c = coerce_coefficient(other)
        except TypeError:
            return NotImplemented
        return self.is_scalar and self.constant() == c

    def __hash__(self):
        if self._hash is None:
            if self.is_scalar:
                self._hash = hash(self.constant())
            else:
                self._hash = hash((self._arity, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .printing import format_symbolic

        return f"WeylElement(arity={self._arity}, rule={self._rule.name!r}: {format_symbolic(self)})"

    def __str__(self) -> str:
        from .printing import format_symbolic

        return format_symbolic(self)


# -- constructors --------------------------------------------------------


def zero(arity: int, rule: ProductRule | str = WEYL, var_names=None) -> WeylElement:
    return WeylElement(arity, {}, rule, var_names)


def scalar(c, arity: int, rule: ProductRule | str = WEYL, var_names=None) -> WeylElement:
    """``c`` times the identity of the arity-``arity`` algebra."""
    return WeylElement(arity, {(0,) * (2 * arity): coerce_coefficient(c)}, rule, var_names)


def one(arity: int, rule: ProductRule | str = WEYL, var_names=None) -> WeylElement:
    return scalar(1, arity, rule, var_names)


def generator(k: int, arity: int = 1, rule: ProductRule | str = WEYL, var_names=None) -> WeylElement:
    """The multiplication generator of variable ``k`` (0-based)."""
    exps = [0] * (2 * arity)
    exps[k] = 1
    return WeylElement(arity, {tuple(exps): 1}, rule, var_names)


def derivative(k: int, arity: int = 1, rule: ProductRule | str = WEYL, var_names=None) -> WeylElement:
    """The derivative with respect to variable ``k`` (0-based)."""
    exps = [0] * (2 * arity)
    exps[arity + k] = 1
    return WeylElement(arity, {tuple(exps): 1}, rule, var_names)


def normalize(
    raw: Iterable[tuple[Monomial, Coefficient]],
    rule: ProductRule | str = WEYL,
    var_names=None,
) -> WeylElement:
    """Collect like terms of a list of ``(monomial, coefficient)`` pairs.

    The arity is read off the monomials; mixed lengths raise
    :class:`ArityError`.  An empty list has no arity to read, so it is an
    error too; use :func:`zero` for the zero element.
    """
    raw = [(tuple(m), c) for m, c in raw]
    if not raw:
        raise ValueError("normalize needs at least one term to infer the arity; use zero()")
    widths = {len(m) for m, _ in raw}
    if len(widths) != 1:
        raise ArityError(f"mixed monomial lengths {sorted(widths)}")
    (width,) = widths
    if width % 2 or width == 0:
        raise ArityError(f"monomial length {width} is not 2 * arity")
    return WeylElement(width // 2, raw, rule, var_names)


# -- operations ----------------------------------------------------------


def _align(a: WeylElement, b: WeylElement) -> tuple[WeylElement, WeylElement]:
    """Bring scalar operands to a common arity; reject other mismatches."""
    if a.arity == b.arity:
        return a, b
    if a.is_scalar:
        return scalar(a.constant(), b.arity, a.rule, b.var_names), b
    if b.is_scalar:
        return a, scalar(b.constant(), a.arity, b.rule, a.var_names)
    raise ArityError(f"cannot combine elements of arity {a.arity} and {b.arity}")


def _pick_rule(a: WeylElement, b: WeylElement) -> ProductRule:
    if a.rule == b.rule:
        return a.rule
    if a.is_scalar:
        return b.rule
    if b.is_scalar:
        return a.rule
    raise ValueError(f"elements use different product rules ({a.rule.name!r}, {b.rule.name!r})")


def _names(a: WeylElement, b: WeylElement) -> tuple[str, ...]:
    if a.var_names == default_var_names(a.arity):
        return b.var_names
    return a.var_names


def add(a: WeylElement, b: WeylElement) -> WeylElement:
    a, b = _align(a, b)
    rule = _pick_rule(a, b)
    out = dict(a._terms)
    for m, c in b._terms.items():
        out[m] = out.get(m, 0) + c
    return WeylElement._from_normal(a.arity, out, rule, _names(a, b))


def mul(a: WeylElement, b: WeylElement, rule: ProductRule | str | None = None) -> WeylElement:
    """Product ``a b`` under ``rule`` (default: the operands' own rule).

    Each pair of terms is multiplied variable by variable with the rule's
    univariate kernel; generators of distinct variables commute, so the
    per-variable results combine by concatenating exponents.
    """
    a, b = _align(a, b)
    rule = _pick_rule(a, b) if rule is None else get_rule(rule)
    n = a.arity
    out: dict[Monomial, Coefficient] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            # partial products: (gen exps, der exps, coeff)
            partial = [((), (), ca * cb)]
            for k in range(n):
                kt = rule.terms(ma[k], ma[n + k], mb[k], mb[n + k])
                if len(kt) == 1:
                    ((g, p), v), = kt
                    partial = [(gs + (g,), ps + (p,), c * v) for gs, ps, c in partial]
                else:
                    partial = [
                        (gs + (g,), ps + (p,), c * v)
                        for gs, ps, c in partial
                        for (g, p), v in kt
                    ]
            for gs, ps, c in partial:
                key = gs + ps
                out[key] = out.get(key, 0) + c
    return WeylElement._from_normal(n, out, rule, _names(a, b))


def power(a: WeylElement, k: int) -> WeylElement:
    """``a**k`` for a nonnegative integer ``k``; ``a**0`` is the identity."""
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError(f"exponent must be an integer, not {type(k).__name__}")
    if k < 0:
        raise ValueError("negative powers are undefined: the Weyl algebra has no inverses")
    result = one(a.arity, a.rule, a.var_names)
    for _ in range(k):
        result = mul(a, result)
    return result


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    """``[a, b] = a b - b a``."""
    return add(mul(a, b), -mul(b, a))


def equal(a: WeylElement, b: WeylElement) -> bool:
    if a.arity != b.arity:
        return a.is_scalar and b.is_scalar and a.constant() == b.constant()
    return a._terms == b._terms


def degree(a: WeylElement) -> int | float:
    """Total degree in all generators and derivatives; ``-inf`` for zero."""
    if a.is_zero:
        return -math.inf
    return max(_monomial_degree(m) for m in a._terms)


@dataclass(frozen=True)
class Derivation:
    """The inner derivation ``g -> g f - f g`` for a fixed ``generator`` f."""

    generator: WeylElement

    def __call__(self, g: WeylElement) -> WeylElement:
        return derivation_apply(self, g)


def inner_derivation(f: WeylElement) -> Derivation:
    return Derivation(f)


def derivation_apply(D: Derivation, g: WeylElement) -> WeylElement:
    f = D.generator
    return add(mul(g, f), -mul(f, g))


def random_element(
    seed: int,
    n_terms: int = 3,
    max_exp: int = 2,
    arity: int = 3,
    rule: ProductRule | str = WEYL,
    var_names=None,
) -> WeylElement:
    """Seeded random element.

    Draws ``n_terms`` monomials with exponents in ``[0, max_exp]`` and
    coefficients in ``+-1..9``.  Repeated monomials merge, so the result has
    at most ``n_terms`` terms and may occasionally cancel to zero.
    """
    if n_terms < 1 or max_exp < 0 or arity < 1:
        raise ValueError("n_terms and arity must be positive, max_exp nonnegative")
    rng = random.Random(seed)
    raw = []
    for _ in range(n_terms):
        mono = tuple(rng.randint(0, max_exp) for _ in range(2 * arity))
        coeff = rng.randint(1, 9) * rng.choice((1, -1))
        raw.append((mono, coeff))
    return WeylElement(arity, raw, rule, var_names)
