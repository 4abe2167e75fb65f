"""Fine-block graph (FBG), lead times and the set of normalised offsets.

Fine blocks are numbered ``0..p-1`` in the deterministic fine-BTF order of
:mod:`sigmadae.blocktri`. The FBG has an edge ``k -> l`` with weight
``W_kl`` for every off-diagonal block pair with finite entries, encoding
the block inequality ``K_l - K_k >= W_kl``.
"""
import enum
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .assignment import canonical_offsets, solve_hvt
from .blocktri import (
    BtfResult,
    Digraph,
    irreducible_btf,
    is_acyclic,
    strong_components,
    topological_order,
)
from .errors import InternalCycle, InternalNonConvergence, NotASolution, NotBlockConstant, NotSurjective
from .sigma_core import Emblem, OffsetPair, SignatureMatrix, jacobian_pattern


@dataclass(frozen=True)
class FineBlockGraph:
    sigma: SignatureMatrix
    fine: BtfResult
    local_c: tuple  # canonical local offsets, indexed by original row
    local_d: tuple  # indexed by original column
    anchors: tuple  # one row per block with local_c == 0
    edges: Mapping  # (k, l) -> W_kl

    @property
    def p(self):
        return self.fine.p

    @property
    def blocks(self):
        return self.fine.blocks()

    @property
    def row_block(self):
        return self.fine.row_block()

    @property
    def col_block(self):
        return self.fine.col_block()

    def digraph(self) -> Digraph:
        return Digraph(self.p, frozenset(self.edges), dict(self.edges))

    def sorted_edges(self):
        return [(k, l, w) for (k, l), w in sorted(self.edges.items())]


class OffsetSetClass(str, enum.Enum):
    UNIQUE = "unique"
    FINITE_MULTIPLE = "finite_multiple"
    INFINITE = "infinite"


@dataclass(frozen=True)
class LeadTimeCheck:
    solution: bool
    valid: bool
    normalised: bool


@dataclass(frozen=True)
class LeadTimeEnumeration:
    vectors: list
    bound: int
    truncated: bool  # True when the full set is infinite


def local_offsets(sigma: SignatureMatrix, fine: BtfResult):
    """Canonical offsets of each fine diagonal block taken as its own system.

    Returns ``(local_c, local_d)`` indexed by original row / column.
    """
    local_c = [0] * sigma.n
    local_d = [0] * sigma.n
    for rows, cols in fine.blocks():
        off = canonical_offsets(sigma.submatrix(rows, cols))
        for a, i in enumerate(rows):
            local_c[i] = off.c[a]
        for b, j in enumerate(cols):
            local_d[j] = off.d[b]
    return tuple(local_c), tuple(local_d)


def build_fbg(sigma: SignatureMatrix, off: Optional[OffsetPair] = None) -> FineBlockGraph:
    t, _ = solve_hvt(sigma)
    if off is None:
        off = canonical_offsets(sigma, t)
    fine = irreducible_btf(jacobian_pattern(sigma, off), t)
    local_c, local_d = local_offsets(sigma, fine)
    anchors = tuple(min(i for i in rows if local_c[i] == 0) for rows, _ in fine.blocks())
    rb, cb = fine.row_block(), fine.col_block()
    edges = {}
    for (i, j), s in sigma.items():
        k, l = rb[i], cb[j]
        if k == l:
            continue
        w = s - local_d[j] + local_c[i]
        if (k, l) not in edges or w > edges[(k, l)]:
            edges[(k, l)] = w
    return FineBlockGraph(sigma, fine, local_c, local_d, anchors, dict(sorted(edges.items())))


def check_lead_times(fbg: FineBlockGraph, k: Sequence[int]) -> LeadTimeCheck:
    if len(k) != fbg.p:
        raise ValueError(f"lead-time vector has length {len(k)}, expected {fbg.p}")
    solution = all(k[l] - k[kk] >= w for (kk, l), w in fbg.edges.items())
    valid = solution and min(k) >= 0
    return LeadTimeCheck(solution, valid, valid and min(k) == 0)


def lead_times(fbg: FineBlockGraph, c: Sequence[int]) -> tuple:
    """The map c -> K: ``K_l = c_i - c_hat_i`` for any row ``i`` of block ``l``."""
    if len(c) != fbg.sigma.n:
        raise ValueError("c has the wrong length")
    k = []
    for rows, _ in fbg.blocks:
        diffs = {c[i] - fbg.local_c[i] for i in rows}
        if len(diffs) != 1:
            raise NotBlockConstant(f"c - c_hat takes values {sorted(diffs)} on block rows {rows}")
        k.append(diffs.pop())
    k = tuple(k)
    if not check_lead_times(fbg, k).solution:
        raise NotBlockConstant("c is block-constant but violates the block inequalities")
    return k


def offsets_from_lead_times(fbg: FineBlockGraph, k: Sequence[int]) -> OffsetPair:
    """Inverse of :func:`lead_times`: ``c_i = K_l + c_hat_i``, ``d_j = K_l + d_hat_j``."""
    if not check_lead_times(fbg, k).solution:
        raise NotASolution(f"{tuple(k)} violates the block inequalities")
    rb, cb = fbg.row_block, fbg.col_block
    n = fbg.sigma.n
    c = tuple(k[rb[i]] + fbg.local_c[i] for i in range(n))
    d = tuple(k[cb[j]] + fbg.local_d[j] for j in range(n))
    return OffsetPair(c, d)


def canonical_lead_times(fbg: FineBlockGraph) -> tuple:
    """Elementwise-smallest valid solution of the block inequalities."""
    p = fbg.p
    max_w = max((abs(w) for w in fbg.edges.values()), default=0)
    cap = p * (p * max_w + 1)
    k = [0] * p
    for _ in range(cap + 1):
        changed = False
        for (a, b), w in fbg.edges.items():
            if k[a] + w > k[b]:
                k[b] = k[a] + w
                changed = True
        if not changed:
            return tuple(k)
    raise InternalNonConvergence("canonical lead times did not converge; FBG has a nonnegative cycle")


def classify_offset_set(fbg: FineBlockGraph) -> OffsetSetClass:
    if fbg.p == 1:
        return OffsetSetClass.UNIQUE
    comps, _, _ = strong_components(fbg.digraph())
    return OffsetSetClass.INFINITE if len(comps) > 1 else OffsetSetClass.FINITE_MULTIPLE


def enumerate_normalised_lead_times(fbg: FineBlockGraph, bound: int) -> LeadTimeEnumeration:
    """All normalised solutions with ``max K <= bound``, sorted.

    Vertices are fixed one at a time in condensation order; each one's range
    is cut down by the edges to already-fixed vertices.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    p = fbg.p
    g = fbg.digraph()
    comps, comp_of, cond = strong_components(g)
    comp_order = topological_order(cond, key=lambda c: min(comps[c]))
    order = [v for c in comp_order for v in sorted(comps[c])]
    incoming = [[] for _ in range(p)]
    outgoing = [[] for _ in range(p)]
    for (a, b), w in fbg.edges.items():
        incoming[b].append((a, w))
        outgoing[a].append((b, w))

    found = []
    k = [None] * p

    def extend(depth, has_zero):
        if depth == p:
            if has_zero:
                found.append(tuple(k))
            return
        v = order[depth]
        lo, hi = 0, bound
        for a, w in incoming[v]:
            if k[a] is not None:
                lo = max(lo, k[a] + w)
        for b, w in outgoing[v]:
            if k[b] is not None:
                hi = min(hi, k[b] - w)
        for val in range(lo, hi + 1):
            k[v] = val
            extend(depth + 1, has_zero or val == 0)
        k[v] = None

    extend(0, False)
    found.sort()
    return LeadTimeEnumeration(found, bound, classify_offset_set(fbg) is OffsetSetClass.INFINITE)


def critical_subgraph(fbg: FineBlockGraph, k: Sequence[int]) -> Digraph:
    """Edges satisfied with equality by ``K``; always acyclic."""
    if not check_lead_times(fbg, k).solution:
        raise NotASolution(f"{tuple(k)} violates the block inequalities")
    crit = {e: w for e, w in fbg.edges.items() if k[e[1]] - k[e[0]] == w}
    g = Digraph(fbg.p, frozenset(crit), crit)
    if not is_acyclic(g):
        raise InternalCycle(f"critical subgraph for K={tuple(k)} has a cycle")
    return g


def _block_key(fbg):
    return lambda l: min(fbg.blocks[l][0])


def btf_block_order(fbg: FineBlockGraph, k: Sequence[int]) -> tuple:
    """A block order putting S0 for ``K`` into BTF (smallest-row tie-break)."""
    return tuple(topological_order(critical_subgraph(fbg, k), key=_block_key(fbg)))


def is_btf_order(fbg: FineBlockGraph, k: Sequence[int], order: Sequence[int]) -> bool:
    """True iff ``order`` is a topological sort of the K-critical subgraph."""
    g = critical_subgraph(fbg, k)
    if sorted(order) != list(range(fbg.p)):
        raise ValueError(f"{tuple(order)} is not an ordering of 0..{fbg.p - 1}")
    pos = {v: a for a, v in enumerate(order)}
    return all(pos[u] < pos[v] for u, v in g.edges)


@dataclass(frozen=True)
class QuotientMap:
    """Total map from vertices ``0..len(image)-1`` onto targets ``0..size-1``."""

    image: tuple
    size: int

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        if any(not (0 <= w < self.size) for w in self.image):
            raise ValueError("map value outside target range")
        if set(self.image) != set(range(self.size)):
            raise NotSurjective("some target vertex has an empty preimage")

    def preimage(self, w):
        return frozenset(v for v, x in enumerate(self.image) if x == w)


def quotient_graph(g: Digraph, phi: QuotientMap) -> Digraph:
    if len(phi.image) != g.n:
        raise ValueError("map does not cover the graph's vertices")
    edges = {(phi.image[u], phi.image[v]) for u, v in g.edges if phi.image[u] != phi.image[v]}
    return Digraph(phi.size, frozenset(edges))


def coarse_via_fbg(fbg: FineBlockGraph) -> Emblem:
    """Coarse emblem as unions of fine blocks over the FBG's strong components."""
    comps, _, _ = strong_components(fbg.digraph())
    blocks = fbg.blocks
    return Emblem(
        frozenset(
            (
                frozenset(i for l in comp for i in blocks[l][0]),
                frozenset(j for l in comp for j in blocks[l][1]),
            )
            for comp in comps
        )
    )
