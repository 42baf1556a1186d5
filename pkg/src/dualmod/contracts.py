"""Principal-agent analysis on top of the density decomposition.

For a price share alpha the agent maximises alpha * f(S) - g(S); writing
gamma = 1/alpha this is f(S) - gamma * g(S) up to a positive factor.  The
decomposition prefixes are optimal responses, the response changes exactly
at the reciprocals of the part densities, and the hockey-stick divergence
of any feasible allocation upper-bounds the agent's objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .decomposition import DensityDecomposition, density_decomposition
from .divergence import HockeyStick, divergence
from .errors import AlphaOutOfRange, DualModError, GroundSetTooLarge, SchemaError
from .instance import (
    DEFAULT_ENUM_LIMIT,
    DualModularInstance,
    ExplicitTable,
    GroundSet,
    Linear,
    brute_limit,
)
from .permutation import Allocation
from .rational import format_rational


def _check_alpha(alpha) -> Fraction:
    alpha = Fraction(alpha)
    if alpha < 0 or alpha > 1:
        raise AlphaOutOfRange(alpha)
    return alpha


def best_response(inst: DualModularInstance, dec: DensityDecomposition, alpha) -> int:
    """Prefix-union response: all parts with density at least 1/alpha.

    alpha = 0 means an infinite price ratio, so the response is empty.  At
    the boundary 1/alpha = rho_i the larger prefix is returned: among the
    tied responses it carries the largest reward, which is what the
    principal prefers.
    """
    alpha = _check_alpha(alpha)
    if alpha == 0:
        return 0
    gamma = 1 / alpha
    mask = 0
    for part, rho in zip(dec.parts, dec.densities):
        if rho >= gamma:
            mask |= part
        else:
            break
    return mask


def best_response_bruteforce(
    inst: DualModularInstance, alpha, max_n: Optional[int] = None
) -> tuple[int, Fraction]:
    """Exhaustive argmax of alpha * f(S) - g(S), with the tie chain.

    Value ties prefer larger f(S) (the principal's benefit), then the
    decomposition prefix union if it is among the remaining ties, then the
    lowest mask.  Serves as the testing oracle for :func:`best_response`.
    """
    alpha = _check_alpha(alpha)
    limit = brute_limit(DEFAULT_ENUM_LIMIT, max_n)
    n = inst.n
    if n > limit:
        raise GroundSetTooLarge(n, limit, "best_response_bruteforce")
    ftab, gtab = inst.tables()
    best_key = None
    ties: list[int] = []
    for s in range(1 << n):
        key = (alpha * ftab[s] - gtab[s], ftab[s])
        if best_key is None or key > best_key:
            best_key = key
            ties = [s]
        elif key == best_key:
            ties.append(s)
    if len(ties) > 1:
        try:
            dec = density_decomposition(inst, max_n)
        except DualModError:
            dec = None  # degenerate instance; fall through to the lowest mask
        if dec is not None:
            prefix = best_response(inst, dec, alpha)
            if prefix in ties:
                return prefix, best_key[0]
    return ties[0], best_key[0]


def critical_values(dec: DensityDecomposition) -> list[Fraction]:
    """{1 / rho_i} intersected with [0, 1], sorted ascending; rho_i = 0 drops out."""
    return [1 / rho for rho in dec.densities if rho >= 1]


def agent_utility(inst: DualModularInstance, alpha, mask: int) -> Fraction:
    alpha = _check_alpha(alpha)
    return alpha * inst.f.value(mask) - inst.g.value(mask)


def principal_utility(inst: DualModularInstance, alpha, mask: int) -> Fraction:
    alpha = _check_alpha(alpha)
    return (1 - alpha) * inst.f.value(mask)


def optimal_contract(
    inst: DualModularInstance, dec: DensityDecomposition
) -> tuple[Fraction, int, Fraction]:
    """Best (alpha*, response, principal utility) over the critical values.

    The principal's utility is piecewise maximised at critical alphas, so
    only those need checking.  With no critical value the agent never
    responds non-trivially and the principal gets nothing.
    """
    candidates = critical_values(dec)
    if not candidates:
        return Fraction(0), 0, Fraction(0)
    best = None
    for alpha in candidates:  # ascending, so ties keep the smaller alpha
        mask = best_response(inst, dec, alpha)
        up = principal_utility(inst, alpha, mask)
        if best is None or up > best[2]:
            best = (alpha, mask, up)
    return best


def duality_gap(inst: DualModularInstance, mask: int, allocation: Allocation, gamma) -> Fraction:
    """HS_gamma(x || y) - (f(S) - gamma * g(S)); non-negative for feasible pairs.

    Zero exactly at a locally maximin allocation paired with the optimal
    response prefix for gamma.
    """
    gamma = Fraction(gamma)
    hs = divergence(HockeyStick(gamma), allocation.x, allocation.y)
    return hs - (inst.f.value(mask) - gamma * inst.g.value(mask))


@dataclass(frozen=True)
class ContractAnalysis:
    critical_values: tuple[Fraction, ...]
    responses: tuple[int, ...]            # best response at each critical alpha
    agent_utilities: tuple[Fraction, ...]
    principal_utilities: tuple[Fraction, ...]
    optimal_alpha: Fraction
    optimal_response: int
    optimal_principal_utility: Fraction

    def to_json(self, ground: GroundSet) -> dict:
        return {
            "critical_values": [format_rational(a) for a in self.critical_values],
            "table": [
                {
                    "alpha": format_rational(a),
                    "response": ground.labels_of(s),
                    "agent_utility": format_rational(ua),
                    "principal_utility": format_rational(up),
                }
                for a, s, ua, up in zip(
                    self.critical_values,
                    self.responses,
                    self.agent_utilities,
                    self.principal_utilities,
                )
            ],
            "optimal": {
                "alpha": format_rational(self.optimal_alpha),
                "response": ground.labels_of(self.optimal_response),
                "principal_utility": format_rational(self.optimal_principal_utility),
            },
        }


def analyze_contracts(inst: DualModularInstance, dec: DensityDecomposition) -> ContractAnalysis:
    crit = critical_values(dec)
    responses = [best_response(inst, dec, a) for a in crit]
    ua = [agent_utility(inst, a, s) for a, s in zip(crit, responses)]
    up = [principal_utility(inst, a, s) for a, s in zip(crit, responses)]
    alpha, mask, value = optimal_contract(inst, dec)
    return ContractAnalysis(
        critical_values=tuple(crit),
        responses=tuple(responses),
        agent_utilities=tuple(ua),
        principal_utilities=tuple(up),
        optimal_alpha=alpha,
        optimal_response=mask,
        optimal_principal_utility=value,
    )


def two_tier_instance(n_top: int, n_bottom: int) -> DualModularInstance:
    """Family with density vector (2, ..., 2, 1, ..., 1) and an all-or-nothing top tier.

    Reward 2 * n_top for completing the whole top tier, plus 10 * n_top *
    n_bottom for completing everything, and nothing in between; linear cost
    of 1 per top element and 10 * n_top per bottom element.  For any price
    ratio strictly between the two densities, only the full top tier gives
    the agent positive utility; every other nonempty choice is strictly
    negative.  This is the stock example for why approximate densities give
    no meaningful response guarantee.
    """
    if n_top < 1 or n_bottom < 1:
        raise SchemaError("tiers", "tier sizes must be >= 1")
    n = n_top + n_bottom
    labels = tuple(f"s{i + 1}" for i in range(n_top)) + tuple(f"t{i + 1}" for i in range(n_bottom))
    top_mask = (1 << n_top) - 1
    full = (1 << n) - 1
    values = []
    for s in range(1 << n):
        v = Fraction(0)
        if s & top_mask == top_mask:
            v += 2 * n_top
            if s == full:
                v += 10 * n_top * n_bottom
        values.append(v)
    f = ExplicitTable(tuple(values))
    g = Linear(tuple([Fraction(1)] * n_top + [Fraction(10 * n_top)] * n_bottom))
    return DualModularInstance(ground=GroundSet(labels), f=f, g=g)
