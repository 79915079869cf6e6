"""Schmidt-measure and term-count bounds from adjacency rank and color-class sizes."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from chromastate.core.closedform import ClosedForm, SpecialForm
from chromastate.core.coloring import Coloring, validate_coloring
from chromastate.core.errors import CapExceededError
from chromastate.core.field import mat_rank
from chromastate.core.graph import WeightedGraph

logger = logging.getLogger(__name__)

OCT_MAX_N = 20


@dataclass(frozen=True)
class SchmidtBounds:
    """
    Bounds are exponent counts: E_s in units of log_d, term counts as powers of d.
    None marks a bound that does not apply to this coloring.
    """

    rank_gamma: int
    lower_rank: Fraction
    lower_color: int | None
    color_condition: bool
    upper: int | None
    oct_size: int | None
    term_lower: int | None
    term_upper: int | None
    rank_ab: int | None = None
    provenance: dict[str, str] = field(default_factory=dict, hash=False)
    claims: dict[str, str] = field(default_factory=dict, hash=False)

    def as_dict(self) -> dict[str, object]:
        return {
            "rank_gamma": self.rank_gamma,
            "lower_rank": str(self.lower_rank),
            "lower_color": self.lower_color,
            "color_condition": self.color_condition,
            "upper": self.upper,
            "oct_size": self.oct_size,
            "term_lower": self.term_lower,
            "term_upper": self.term_upper,
            "rank_ab": self.rank_ab,
            "provenance": dict(sorted(self.provenance.items())),
            "claims": dict(sorted(self.claims.items())),
        }


def odd_cycle_transversal(g: WeightedGraph, max_n: int = OCT_MAX_N) -> int:
    """Fewest vertices whose removal leaves a bipartite support graph."""
    if g.n > max_n:
        raise CapExceededError("odd cycle transversal vertex count", g.n, max_n)
    support = g.support_graph()
    for k in range(g.n + 1):
        for removed in itertools.combinations(range(g.n), k):
            rest = support.subgraph(v for v in range(g.n) if v not in removed)
            if nx.is_bipartite(rest):
                logger.debug("odd cycle transversal %s", removed)
                return k
    return g.n


def schmidt_bounds(
    g: WeightedGraph, c: Coloring, oct_max_n: int = OCT_MAX_N
) -> SchmidtBounds:
    validate_coloring(g, c)
    d = g.d
    rank_gamma = mat_rank(g.gamma)
    sizes = c.sizes
    provenance = {"lower_rank": "half the adjacency rank over F_d"}
    claims: dict[str, str] = {}

    free_total = sum(sizes[:-1]) if sizes else 0
    last = sizes[-1] if sizes else 0
    color_condition = free_total <= last
    lower_color: int | None
    if color_condition:
        lower_color = free_total
        provenance["lower_color"] = "sum of the non-last class sizes (needs it <= n_last)"
    elif c.chi == 3:
        lower_color = sizes[1]
        provenance["lower_color"] = "second-largest class size, three-color fallback"
    else:
        lower_color = None
        provenance["lower_color"] = "not applicable: size condition fails for chi > 3"

    rank_ab: int | None = None
    oct_size: int | None = None
    if c.chi <= 2:
        upper: int | None = g.n // 2
        provenance["upper"] = "floor(n/2)"
        if c.chi == 2:
            rank_ab = mat_rank(g.gamma.submatrix(c.classes[0], c.classes[1]))
            claims["min_rank_ab"] = "min{rank(A_RB)} = min(n_R, n_B), as printed"
            claims["lower_color"] = "min(n_R, n_B) <= E_s"
    elif g.n <= oct_max_n:
        oct_size = odd_cycle_transversal(g, oct_max_n)
        upper = (g.n + oct_size) // 2
        provenance["upper"] = "floor((n + K)/2), K = odd cycle transversal, as printed"
    else:
        upper = None
        provenance["upper"] = f"not computed: n > {oct_max_n}"

    term_lower = d ** lower_color if lower_color is not None else None
    term_upper = d ** upper if c.chi == 2 and upper is not None else None
    return SchmidtBounds(
        rank_gamma=rank_gamma,
        lower_rank=Fraction(rank_gamma, 2),
        lower_color=lower_color,
        color_condition=color_condition,
        upper=upper,
        oct_size=oct_size,
        term_lower=term_lower,
        term_upper=term_upper,
        rank_ab=rank_ab,
        provenance=provenance,
        claims=claims,
    )


@dataclass(frozen=True)
class TermCount:
    count: int
    m: int
    meets_lower: bool | None


def term_count(cf: ClosedForm | SpecialForm, bounds: SchmidtBounds | None = None) -> TermCount:
    """d^m terms; meets_lower compares m with the size-sum bound when that bound applies."""
    base = cf.base if isinstance(cf, SpecialForm) else cf
    meets: bool | None = None
    if bounds is not None and bounds.color_condition and bounds.lower_color is not None:
        meets = base.m == bounds.lower_color
    return TermCount(count=base.term_count, m=base.m, meets_lower=meets)
