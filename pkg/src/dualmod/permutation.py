"""Permutation vertices of the base polytopes and allocation handling.

For a set function h and a permutation sigma, the vertex vector assigns to
each element its marginal value over the elements arriving before it.  The
reward base (all x with x(S) >= f(S), x(V) = f(V)) and the cost base (all y
with y(S) <= g(S), y(V) = g(V)) are the convex hulls of these vertices, so
allocations are built as sparse weighted mixtures of permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import GroundSetTooLarge, SchemaError, WeightSumMismatch, ZeroCostCoordinate
from .instance import (
    DEFAULT_ENUM_LIMIT,
    DualModularInstance,
    SetFunctionSpec,
    brute_limit,
)


@dataclass(frozen=True)
class Permutation:
    """Arrival order; position 0 arrives first."""

    order: tuple[int, ...]

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise SchemaError("order", f"{self.order} is not a permutation of 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.order)

    def reversed(self) -> "Permutation":
        return Permutation(tuple(reversed(self.order)))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))


@dataclass(frozen=True)
class Allocation:
    """Paired reward shares x and cost shares y, indexed by element."""

    x: tuple
    y: tuple

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise SchemaError("allocation", "x and y must have the same length")
        for i, v in enumerate(self.x):
            if v < 0:
                raise SchemaError("allocation", f"x[{i}] = {v} is negative")
        for i, v in enumerate(self.y):
            if v < 0:
                raise SchemaError("allocation", f"y[{i}] = {v} is negative")

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class WeightedPermutationList:
    """Sparse permutation distribution: (sigma, weight) pairs, weights sum to 1."""

    pairs: tuple[tuple[Permutation, Fraction], ...]

    def __post_init__(self):
        total = Fraction(0)
        for sigma, w in self.pairs:
            if w < 0:
                raise SchemaError("weights", f"negative weight {w}")
            total += w
        if total != 1:
            raise WeightSumMismatch(total)

    @staticmethod
    def single(sigma: Permutation) -> "WeightedPermutationList":
        return WeightedPermutationList(((sigma, Fraction(1)),))

    @staticmethod
    def uniform(sigmas: Sequence[Permutation]) -> "WeightedPermutationList":
        w = Fraction(1, len(sigmas))
        return WeightedPermutationList(tuple((s, w) for s in sigmas))


def vertex(spec: SetFunctionSpec, sigma: Permutation) -> tuple[Fraction, ...]:
    """Marginal vector h^sigma, indexed by element; coordinates sum to h(V)."""
    out = [Fraction(0)] * sigma.n
    prefix = 0
    prev = spec.value(0)
    for u in sigma.order:
        prefix |= 1 << u
        cur = spec.value(prefix)
        out[u] = cur - prev
        prev = cur
    return tuple(out)


def allocation_from_mixture(
    inst: DualModularInstance,
    p: WeightedPermutationList,
    q: WeightedPermutationList,
) -> Allocation:
    """x = sum_sigma p_sigma f^sigma and y = sum_tau q_tau g^tau."""
    n = inst.n
    x = [Fraction(0)] * n
    for sigma, w in p.pairs:
        fv = vertex(inst.f, sigma)
        for u in range(n):
            x[u] += w * fv[u]
    y = [Fraction(0)] * n
    for tau, w in q.pairs:
        gv = vertex(inst.g, tau)
        for u in range(n):
            y[u] += w * gv[u]
    return Allocation(x=tuple(x), y=tuple(y))


def subset_sums(vec: Sequence, n: int) -> list:
    """sums[mask] = sum of vec over the elements of mask."""
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        sums[mask] = sums[mask ^ (1 << low)] + vec[low]
    return sums


@dataclass(frozen=True)
class MembershipReport:
    x_in_reward_base: bool
    y_in_cost_base: bool
    x_witness: Optional[int] = None
    y_witness: Optional[int] = None

    @property
    def both(self) -> bool:
        return self.x_in_reward_base and self.y_in_cost_base


def check_base_membership(
    inst: DualModularInstance,
    allocation: Allocation,
    max_n: Optional[int] = None,
    slack=0,
) -> MembershipReport:
    """Exhaustive membership test against both base polytopes.

    ``slack`` loosens every constraint by an additive amount, for iterates
    carried in binary64 (exact allocations should pass with slack 0).
    """
    limit = brute_limit(DEFAULT_ENUM_LIMIT, max_n)
    n = inst.n
    if n > limit:
        raise GroundSetTooLarge(n, limit, "check_base_membership")
    if allocation.n != n:
        raise SchemaError("allocation", f"length {allocation.n} does not match n={n}")
    ftab, gtab = inst.tables()
    xs = subset_sums(allocation.x, n)
    ys = subset_sums(allocation.y, n)
    full = inst.ground.full_mask

    x_ok = abs(xs[full] - ftab[full]) <= slack
    x_wit = full if not x_ok else None
    if x_ok:
        for s in range(1, full):
            if xs[s] < ftab[s] - slack:
                x_ok = False
                x_wit = s
                break

    y_ok = abs(ys[full] - gtab[full]) <= slack
    y_wit = full if not y_ok else None
    if y_ok:
        for s in range(1, full):
            if ys[s] > gtab[s] + slack:
                y_ok = False
                y_wit = s
                break

    return MembershipReport(
        x_in_reward_base=x_ok,
        y_in_cost_base=y_ok,
        x_witness=x_wit,
        y_witness=y_wit,
    )


def induced_densities(allocation: Allocation, labels: Optional[Sequence[str]] = None) -> tuple:
    """Per-element reward-to-cost ratios x_u / y_u.

    Raises :class:`ZeroCostCoordinate` on any y_u = 0: such an element has
    no defined density, the situation the strict-monotonicity assumption on
    the cost function exists to rule out.
    """
    out = []
    for u, (xu, yu) in enumerate(zip(allocation.x, allocation.y)):
        if yu == 0:
            raise ZeroCostCoordinate(u, labels[u] if labels is not None else None)
        out.append(xu / yu)
    return tuple(out)


def sort_by_density(rho: Sequence) -> Permutation:
    """Non-increasing density order; equal densities by ascending element index."""
    order = sorted(range(len(rho)), key=lambda u: (-rho[u], u))
    return Permutation(tuple(order))
