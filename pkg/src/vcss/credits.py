"""Exact credit assignment and cost bookkeeping.

Two schemes are supported.  ``cr`` gives a small component (at most six
edges) ``23/72`` credit per edge, and a large component ``1`` plus ``1`` per
block plus ``1/4`` per bridge.  ``cr'`` differs only in the threshold: at most
five edges earn ``1/3`` per edge and anything larger is priced like a large
component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import BlockDecomposition, Multigraph, block_cut_decomposition

SMALL_RATE = Fraction(23, 72)
SMALL_RATE_PRIME = Fraction(1, 3)
BRIDGE_CREDIT = Fraction(1, 4)
COST_RATIO = Fraction(95, 72)
COST_RATIO_PRIME = Fraction(4, 3)

SCHEMES = ("cr", "cr'")


def small_threshold(scheme: str) -> int:
    """Largest edge count of a component that is priced per edge."""
    if scheme == "cr":
        return 6
    if scheme == "cr'":
        return 5
    raise ValueError(f"unknown credit scheme {scheme!r}")


def is_large(num_edges: int, scheme: str = "cr") -> bool:
    return num_edges > small_threshold(scheme)


def component_credit(comp, scheme: str = "cr") -> Fraction:
    """Total credit of one component (component, block and bridge entries)."""
    m = len(comp.edges)
    if not is_large(m, scheme):
        return (SMALL_RATE if scheme == "cr" else SMALL_RATE_PRIME) * m
    return 1 + len(comp.blocks) + BRIDGE_CREDIT * len(comp.bridges)


@dataclass
class CreditLedger:
    """Per-entry credits.  Components are keyed by smallest vertex, blocks by
    smallest edge id and bridges by edge id."""

    scheme: str
    size: int
    per_component: dict = field(default_factory=dict)
    per_block: dict = field(default_factory=dict)
    per_bridge: dict = field(default_factory=dict)
    support: dict = field(default_factory=dict)

    @property
    def total(self) -> Fraction:
        return (sum(self.per_component.values(), Fraction(0))
                + sum(self.per_block.values(), Fraction(0))
                + sum(self.per_bridge.values(), Fraction(0)))

    @property
    def cost(self) -> Fraction:
        return self.size + self.total

    def entries(self):
        """``(kind, key, credit, vertex support)`` for every entry."""
        for k, v in sorted(self.per_component.items()):
            yield "component", k, v, self.support[("component", k)]
        for k, v in sorted(self.per_block.items()):
            yield "block", k, v, self.support[("block", k)]
        for k, v in sorted(self.per_bridge.items()):
            yield "bridge", k, v, self.support[("bridge", k)]

    def to_dict(self) -> dict:
        def frac(x: Fraction):
            return [x.numerator, x.denominator]

        return {
            "scheme": self.scheme,
            "size": self.size,
            "components": {str(k): frac(v) for k, v in sorted(self.per_component.items())},
            "blocks": {str(k): frac(v) for k, v in sorted(self.per_block.items())},
            "bridges": {str(k): frac(v) for k, v in sorted(self.per_bridge.items())},
            "total": frac(self.total),
            "cost": frac(self.cost),
        }


def assign_credits(G: Multigraph, S: Iterable[int], scheme: str = "cr",
                   decomposition: BlockDecomposition | None = None) -> CreditLedger:
    S = frozenset(S)
    dec = decomposition if decomposition is not None else block_cut_decomposition(G, S)
    led = CreditLedger(scheme, len(S))
    rate = SMALL_RATE if scheme == "cr" else SMALL_RATE_PRIME
    for comp in dec.components:
        m = len(comp.edges)
        led.support[("component", comp.key)] = comp.vertices
        if not is_large(m, scheme):
            led.per_component[comp.key] = rate * m
            continue
        led.per_component[comp.key] = Fraction(1)
        for b in comp.blocks:
            led.per_block[b.key] = Fraction(1)
            led.support[("block", b.key)] = b.vertices
        for e in comp.bridges:
            led.per_bridge[e] = BRIDGE_CREDIT
            led.support[("bridge", e)] = frozenset(G.edges[e])
    return led


def credits(G: Multigraph, S: Iterable[int], scheme: str = "cr") -> Fraction:
    return assign_credits(G, S, scheme).total


def cost(G: Multigraph, S: Iterable[int], scheme: str = "cr") -> Fraction:
    """``|S|`` plus the credit total under ``scheme``."""
    return assign_credits(G, S, scheme).cost


def cost_prime(G: Multigraph, S: Iterable[int]) -> Fraction:
    return cost(G, S, "cr'")


def delta_contribution(before: CreditLedger, after: CreditLedger, scope: Iterable[int]) -> Fraction:
    """Change in credit carried by entries whose vertex support meets ``scope``."""
    scope = frozenset(scope)

    def part(led):
        return sum((c for _, _, c, sup in led.entries() if sup & scope), Fraction(0))

    return part(after) - part(before)
