"""Exact density decomposition by exhaustive search.

The decomposition repeatedly extracts the maximal densest subset of the
residual instance.  Densities are exact rationals, so the strict decrease
of the part densities and the tightness identities can be asserted with
zero tolerance.  The search is exponential by design; the polynomial-time
route through submodular minimisation is out of scope at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .divergence import DivergenceKind
from .errors import DecompositionError, GroundSetTooLarge, InfiniteDensity
from .instance import (
    DEFAULT_DECOMP_LIMIT,
    DualModularInstance,
    GroundSet,
    brute_limit,
    residual_instance,
)
from .rational import format_rational


@dataclass(frozen=True)
class DensityDecomposition:
    """Ordered partition S_1..S_k with strictly decreasing part densities.

    ``parts`` are masks over the original ground set; ``rho_star[u]`` is the
    density of the part containing element u.
    """

    n: int
    parts: tuple[int, ...]
    densities: tuple[Fraction, ...]
    rho_star: tuple[Fraction, ...]

    def __post_init__(self):
        union = 0
        for p in self.parts:
            if p == 0 or union & p:
                raise DecompositionError("parts must be nonempty and disjoint")
            union |= p
        if union != (1 << self.n) - 1:
            raise DecompositionError("parts must cover the ground set")
        for hi, lo in zip(self.densities, self.densities[1:]):
            if not hi > lo:
                raise DecompositionError(
                    f"part densities must strictly decrease, got {hi} then {lo}"
                )

    @property
    def k(self) -> int:
        return len(self.parts)

    def prefix_masks(self) -> list[int]:
        """Cumulative unions S_{<=i}, one per part."""
        out = []
        acc = 0
        for p in self.parts:
            acc |= p
            out.append(acc)
        return out

    def to_json(self, ground: GroundSet) -> dict:
        return {
            "parts": [ground.labels_of(p) for p in self.parts],
            "densities": [format_rational(d) for d in self.densities],
            "rho_star": {
                ground.labels[u]: format_rational(self.rho_star[u]) for u in range(self.n)
            },
        }


def maximal_densest_subset(
    inst: DualModularInstance, max_n: Optional[int] = None
) -> tuple[int, Fraction]:
    """Union of all densest subsets and their common density f(S)/g(S).

    Enumerates every nonempty subset.  Subsets with zero cost and positive
    reward have infinite density and are hard errors; the cure is a strict
    perturbation of the cost function.  The union of the maximisers must
    itself be a maximiser (a dual-modularity consequence) and is asserted.
    """
    limit = brute_limit(DEFAULT_DECOMP_LIMIT, max_n)
    n = inst.n
    if n > limit:
        raise GroundSetTooLarge(n, limit, "maximal_densest_subset")
    ftab, gtab = inst.tables()
    best: Optional[Fraction] = None
    union = 0
    for s in range(1, 1 << n):
        gs = gtab[s]
        if gs == 0:
            if ftab[s] > 0:
                raise InfiniteDensity(s)
            continue
        rho = ftab[s] / gs
        if best is None or rho > best:
            best = rho
            union = s
        elif rho == best:
            union |= s
    if best is None:
        raise DecompositionError("no subset has positive cost; cannot define density")
    if ftab[union] / gtab[union] != best:
        raise DecompositionError(
            "union of densest subsets is not densest; instance is not dual-modular"
        )
    return union, best


def density_decomposition(
    inst: DualModularInstance, max_n: Optional[int] = None
) -> DensityDecomposition:
    """Peel off maximal densest subsets until the ground set is exhausted."""
    n = inst.n
    parts: list[int] = []
    densities: list[Fraction] = []
    current = inst
    # positions in `current` -> positions in the original ground set
    index_map = list(range(n))
    while True:
        mask, rho = maximal_densest_subset(current, max_n)
        original = 0
        for i in range(current.n):
            if mask >> i & 1:
                original |= 1 << index_map[i]
        parts.append(original)
        densities.append(rho)
        if mask == current.ground.full_mask:
            break
        index_map = [index_map[i] for i in range(current.n) if not mask >> i & 1]
        current = residual_instance(current, mask)

    rho_star = [Fraction(0)] * n
    for part, rho in zip(parts, densities):
        for u in range(n):
            if part >> u & 1:
                rho_star[u] = rho
    return DensityDecomposition(
        n=n, parts=tuple(parts), densities=tuple(densities), rho_star=tuple(rho_star)
    )


def optimal_objective(
    dec: DensityDecomposition, inst: DualModularInstance, kind: DivergenceKind
):
    """Closed-form optimum sum_i g(S_i | S_<i) * theta(rho_i).

    This is the common objective value of every locally maximin allocation;
    exact for the quadratic and hockey-stick generators, binary64 for the
    logarithmic ones.
    """
    if dec.n != inst.n:
        raise DecompositionError("decomposition does not match the instance")
    total = None
    prefix = 0
    for part, rho in zip(dec.parts, dec.densities):
        g_marginal = inst.g.value(prefix | part) - inst.g.value(prefix)
        term = g_marginal * kind.theta(rho)
        total = term if total is None else total + term
        prefix |= part
    return total
