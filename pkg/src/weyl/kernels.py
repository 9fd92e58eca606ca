"""Univariate product kernels.

A kernel takes the exponents of two normally ordered univariate monomials,
``(g^a d^b)(g^c d^d)``, and returns the product in normal form as a map
``(gen_exp, der_exp) -> coefficient``.  ``g`` is the multiplication generator
(``x`` for the ordinary Weyl algebra, ``e`` for the exponential algebra) and
``d`` the derivative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable, Dict, Tuple

KernelResult = Dict[Tuple[int, int], int]
Kernel = Callable[[int, int, int, int], KernelResult]

__all__ = [
    "ProductRule",
    "make_rule",
    "get_rule",
    "weyl_kernel_closed",
    "weyl_kernel_recursive",
    "exponential_kernel",
    "WEYL",
    "WEYL_RECURSIVE",
    "EXPONENTIAL",
    "RULES",
]


def weyl_kernel_closed(a: int, b: int, c: int, d: int) -> KernelResult:
    """Wolf's closed form for ``(x^a d^b)(x^c d^d)``.

    The r-th term is ``r! C(b, r) C(c, r) x^(a+c-r) d^(b+d-r)``; terms with
    ``r > min(b, c)`` vanish.
    """
    return {
        (a + c - r, b + d - r): factorial(r) * comb(b, r) * comb(c, r)
        for r in range(min(b, c) + 1)
    }


def weyl_kernel_recursive(a: int, b: int, c: int, d: int) -> KernelResult:
    """Recursive normal ordering for ``(x^a d^b)(x^c d^d)``.

    One derivative is peeled off the left factor and moved past ``x^c``
    using ``d x^c = x^c d + c x^(c-1)``.
    """
    out: KernelResult = {}
    _weyl_recurse(a, b, c, d, 1, out)
    return out


def _weyl_recurse(a: int, b: int, c: int, d: int, scale: int, out: KernelResult) -> None:
    if b == 0:
        key = (a + c, d)
        out[key] = out.get(key, 0) + scale
        return
    if c == 0:
        key = (a, b + d)
        out[key] = out.get(key, 0) + scale
        return
    _weyl_recurse(a, b - 1, c, d + 1, scale, out)
    _weyl_recurse(a, b - 1, c - 1, d, scale * c, out)


def exponential_kernel(a: int, b: int, c: int, d: int) -> KernelResult:
    """Product ``(e^a d^b)(e^c d^d)`` in the algebra where ``d e = e d + e``.

    Same recursion as the Weyl case, except the generator exponent is kept
    in the second branch: ``d e^c = e^c d + c e^c``.
    """
    out: KernelResult = {}
    _exp_recurse(a, b, c, d, 1, out)
    return out


def _exp_recurse(a: int, b: int, c: int, d: int, scale: int, out: KernelResult) -> None:
    if c == 0:
        key = (a, b + d)
        out[key] = out.get(key, 0) + scale
        return
    if b == 0:
        key = (a + c, d)
        out[key] = out.get(key, 0) + scale
        return
    _exp_recurse(a, b - 1, c, d + 1, scale, out)
    _exp_recurse(a, b - 1, c, d, scale * c, out)


@dataclass(frozen=True)
class ProductRule:
    """A named univariate kernel used by :func:`weyl.algebra.mul`.

    Build custom rules with :func:`make_rule`, which checks the bottoming
    identities.  With ``cached=True`` kernel outputs are memoized per rule;
    the memo never changes results, only speed.
    """

    name: str
    kernel: Kernel
    cached: bool = True
    _memo: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __call__(self, a: int, b: int, c: int, d: int) -> KernelResult:
        return dict(self.kernel(a, b, c, d))

    def terms(self, a: int, b: int, c: int, d: int) -> tuple:
        """Kernel output as a tuple of ``((gen_exp, der_exp), coeff)`` pairs."""
        if not self.cached:
            return tuple(self.kernel(a, b, c, d).items())
        key = (a, b, c, d)
        hit = self._memo.get(key)
        if hit is None:
            hit = tuple(self.kernel(a, b, c, d).items())
            self._memo[key] = hit
        return hit

    def uncached(self) -> ProductRule:
        """The same rule with memoization switched off (used when timing)."""
        return ProductRule(self.name, self.kernel, cached=False)


def check_rule(kernel: Kernel, grid: int = 4) -> None:
    """Raise ValueError unless ``kernel`` satisfies the bottoming identities.

    Checked on ``0 <= a, b, c, d < grid``:

    * ``kernel(a, 0, c, d) == {(a + c, d): 1}``
    * ``kernel(a, b, 0, d) == {(a, b + d): 1}``
    * every produced exponent is nonnegative
    """
    rng = range(grid)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    out = {k: v for k, v in kernel(a, b, c, d).items() if v != 0}
                    for g, p in out:
                        if g < 0 or p < 0:
                            raise ValueError(
                                f"kernel produced negative exponent at {(a, b, c, d)}"
                            )
                    if b == 0 and out != {(a + c, d): 1}:
                        raise ValueError(f"kernel violates k(a,0,c,d) = g^(a+c) d^d at {(a, b, c, d)}")
                    if c == 0 and out != {(a, b + d): 1}:
                        raise ValueError(f"kernel violates k(a,b,0,d) = g^a d^(b+d) at {(a, b, c, d)}")


def make_rule(name: str, kernel: Kernel, *, grid: int = 4, cached: bool = True) -> ProductRule:
    """Validate ``kernel`` and wrap it in a :class:`ProductRule`."""
    check_rule(kernel, grid)
    return ProductRule(name, kernel, cached=cached)


WEYL = make_rule("weyl", weyl_kernel_closed)
WEYL_RECURSIVE = make_rule("weyl-recursive", weyl_kernel_recursive)
EXPONENTIAL = make_rule("exponential", exponential_kernel)

RULES = {rule.name: rule for rule in (WEYL, WEYL_RECURSIVE, EXPONENTIAL)}

# rules whose generators act as multiplication by x_k
STANDARD_RULE_NAMES = frozenset({"weyl", "weyl-recursive"})


def get_rule(name: str | ProductRule) -> ProductRule:
    if isinstance(name, ProductRule):
        return name
    try:
        return RULES[name]
    except KeyError:
        raise ValueError(
            f"unknown product rule {name!r}; expected one of {', '.join(RULES)}"
        ) from None
