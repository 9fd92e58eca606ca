"""Naming and printing configuration shared by the parser, printers and CLI."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .algebra import WeylElement, default_var_names, derivative_names
from .kernels import ProductRule, get_rule

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
PRINT_FORMS = ("table", "symbolic")


@dataclass(frozen=True)
class SessionConfig:
    """Generator names, derivative names, product rule and print form.

    ``var_names[k]`` and ``der_names[k]`` name the k-th generator pair.
    """

    var_names: tuple[str, ...] = ("x",)
    der_names: tuple[str, ...] = ("d",)
    rule: str = "weyl"
    print_form: str = "table"

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "der_names", tuple(self.der_names))
        if not self.var_names:
            raise ValueError("at least one variable name is required")
        if len(self.var_names) != len(self.der_names):
            raise ValueError("need one derivative name per variable")
        names = self.var_names + self.der_names
        for name in names:
            if not IDENT.match(name):
                raise ValueError(f"invalid name {name!r}: names are identifiers")
        if len(set(names)) != len(names):
            raise ValueError(f"generator and derivative names must be distinct: {names}")
        get_rule(self.rule)
        if self.print_form not in PRINT_FORMS:
            raise ValueError(f"print form must be one of {PRINT_FORMS}")

    @classmethod
    def for_arity(cls, arity: int = 1, rule: str = "weyl", print_form: str = "table") -> SessionConfig:
        names = ("e",) if rule == "exponential" and arity == 1 else default_var_names(arity)
        return cls(names, derivative_names(names), rule, print_form)

    @classmethod
    def from_vars(cls, var_names, rule: str = "weyl", print_form: str = "table") -> SessionConfig:
        var_names = tuple(var_names)
        return cls(var_names, derivative_names(var_names), rule, print_form)

    @classmethod
    def for_element(cls, w: WeylElement, print_form: str = "table") -> SessionConfig:
        return cls(w.var_names, derivative_names(w.var_names), w.rule.name, print_form)

    @property
    def arity(self) -> int:
        return len(self.var_names)

    @property
    def product_rule(self) -> ProductRule:
        return get_rule(self.rule)

    @property
    def names(self) -> frozenset[str]:
        return frozenset(self.var_names + self.der_names)

    def with_(self, **changes) -> SessionConfig:
        return replace(self, **changes)

    def symbol(self, name: str) -> WeylElement:
        """The generator or derivative called ``name``."""
        n = self.arity
        exps = [0] * (2 * n)
        if name in self.var_names:
            exps[self.var_names.index(name)] = 1
        elif name in self.der_names:
            exps[n + self.der_names.index(name)] = 1
        else:
            raise KeyError(name)
        return WeylElement(n, {tuple(exps): 1}, self.rule, self.var_names)
