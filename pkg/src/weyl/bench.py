"""Timing of the closed-form and recursive Weyl kernels on a seeded workload."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .algebra import WeylElement, mul, random_element
from .kernels import WEYL, WEYL_RECURSIVE, ProductRule


@dataclass
class BenchReport:
    pairs: int
    repeats: int
    arity: int
    n_terms: int
    max_exp: int
    seed: int
    mean_seconds: dict[str, float]

    @property
    def ratio(self) -> float:
        """Recursive time over closed-form time."""
        return self.mean_seconds[WEYL_RECURSIVE.name] / self.mean_seconds[WEYL.name]

    def render(self) -> str:
        lines = [
            f"workload: {self.pairs} pairs x {self.repeats} repeats, arity {self.arity}, "
            f"{self.n_terms} terms, exponents <= {self.max_exp}, seed {self.seed}",
        ]
        for name, secs in self.mean_seconds.items():
            lines.append(f"{name:<16} mean {secs * 1e6:10.1f} us/product")
        lines.append(f"ratio {WEYL_RECURSIVE.name}/{WEYL.name}: {self.ratio:.3f}")
        return "\n".join(lines)


def workload(seed: int, pairs: int, arity: int = 1, n_terms: int = 3, max_exp: int = 6):
    """Deterministic list of element pairs for ``seed``."""
    rng = random.Random(seed)
    out = []
    for _ in range(pairs):
        a = random_element(rng.getrandbits(64), n_terms, max_exp, arity)
        b = random_element(rng.getrandbits(64), n_terms, max_exp, arity)
        out.append((a, b))
    return out


def _time(rule: ProductRule, work: list[tuple[WeylElement, WeylElement]], repeats: int) -> float:
    total = 0.0
    for _ in range(repeats):
        t0 = time.perf_counter()
        for a, b in work:
            mul(a, b, rule)
        total += time.perf_counter() - t0
    return total / (repeats * len(work))


def run_bench(
    seed: int = 0,
    pairs: int = 50,
    repeats: int = 5,
    arity: int = 1,
    n_terms: int = 3,
    max_exp: int = 6,
) -> BenchReport:
    """Check both kernels agree on the workload, then time them uncached."""
    if pairs < 1 or repeats < 1:
        raise ValueError("pairs and repeats must be positive")
    work = workload(seed, pairs, arity, n_terms, max_exp)
    rules = [WEYL.uncached(), WEYL_RECURSIVE.uncached()]
    for i, (a, b) in enumerate(work):
        if mul(a, b, rules[0]) != mul(a, b, rules[1]):
            raise AssertionError(f"kernels disagree on workload pair {i}")
    means = {rule.name: _time(rule, work, repeats) for rule in rules}
    return BenchReport(pairs, repeats, arity, n_terms, max_exp, seed, means)
