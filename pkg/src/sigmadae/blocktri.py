"""Digraphs of patterns, strong components and irreducible block-triangular forms.

Block order is made deterministic: among the topological orders of the
condensation we take the one that is lexicographically smallest when each
block is keyed by its smallest original row index. Rows inside a block are
listed in ascending index order, each followed by its matched column.
"""
import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

from .assignment import canonical_offsets, solve_hvt
from .errors import StructurallySingular, TransversalNotInPattern
from .matching import maximum_matching
from .sigma_core import (
    BlockForm,
    Emblem,
    OffsetPair,
    Permutation,
    SignatureMatrix,
    SparsityPattern,
    Transversal,
    jacobian_pattern,
    pattern_of,
)


@dataclass(frozen=True)
class Digraph:
    """Vertices ``0..n-1``; no self-edges; optional integer edge weights."""

    n: int
    edges: frozenset
    weights: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        edges = frozenset(self.edges)
        object.__setattr__(self, "edges", edges)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-edge at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} outside vertex range")

    def successors(self):
        succ = [[] for _ in range(self.n)]
        for u, v in sorted(self.edges):
            succ[u].append(v)
        return succ

    def weight(self, u, v):
        return self.weights[(u, v)]


def strong_components(g: Digraph):
    """Tarjan's algorithm, iterative.

    Returns ``(components, component_of, condensation)``. Components are
    frozensets numbered in the order Tarjan emits them (reverse topological).
    """
    succ = g.successors()
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack = []
    comps = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for k in range(pos, len(succ[v])):
                w = succ[v][k]
                if index[w] == -1:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    comp_of = [0] * g.n
    for k, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = k
    cond_edges = {(comp_of[u], comp_of[v]) for u, v in g.edges if comp_of[u] != comp_of[v]}
    return comps, comp_of, Digraph(len(comps), frozenset(cond_edges))


def topological_order(g: Digraph, key=None):
    """Kahn's algorithm taking the smallest ``key(v)`` among ready vertices.

    Raises ValueError if ``g`` has a cycle.
    """
    key = key or (lambda v: v)
    indeg = [0] * g.n
    for _, v in g.edges:
        indeg[v] += 1
    succ = g.successors()
    ready = [(key(v), v) for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, v = heapq.heappop(ready)
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, (key(w), w))
    if len(order) != g.n:
        raise ValueError("graph has a cycle")
    return order


def is_acyclic(g: Digraph) -> bool:
    try:
        topological_order(g)
    except ValueError:
        return False
    return True


def digraph_of(pattern: SparsityPattern, t: Transversal) -> Digraph:
    """Graph of ``pattern`` relative to ``t``.

    Vertex ``i`` stands for row ``i`` together with its matched column; there
    is an edge ``i -> k`` when ``(i, col(k))`` is in the pattern.
    """
    if pattern.n != t.n:
        raise ValueError("size mismatch")
    if not t.positions <= pattern.positions:
        raise TransversalNotInPattern("transversal is not contained in the pattern")
    row_of_col = t.row_of_col
    edges = {(i, row_of_col[j]) for i, j in pattern.positions if row_of_col[j] != i}
    return Digraph(pattern.n, frozenset(edges))


@dataclass(frozen=True)
class BtfResult:
    block_form: BlockForm
    emblem: Emblem  # index-valued; use Emblem.relabel for names
    transversal_used: Transversal
    block_order: tuple  # component numbers (Tarjan numbering) in block order

    @property
    def p(self):
        return self.block_form.p

    @property
    def sizes(self):
        return self.block_form.block_sizes

    def blocks(self):
        return self.block_form.blocks()

    def row_block(self):
        """Block number of every original row."""
        return self._maps[0]

    def col_block(self):
        return self._maps[1]

    @cached_property
    def _maps(self):
        n = self.block_form.row_perm.size
        rb, cb = [0] * n, [0] * n
        for l, (rows, cols) in enumerate(self.blocks()):
            for i in rows:
                rb[i] = l
            for j in cols:
                cb[j] = l
        return tuple(rb), tuple(cb)


def _find_transversal(pattern: SparsityPattern) -> Transversal:
    size, col_of_row = maximum_matching(pattern.n, pattern.adjacency())
    if size < pattern.n:
        raise StructurallySingular(f"pattern has structural rank {size} < {pattern.n}")
    return Transversal.from_cols(col_of_row)


def irreducible_btf(pattern: SparsityPattern, transversal: Optional[Transversal] = None) -> BtfResult:
    """Irreducible upper BTF of a structurally nonsingular pattern."""
    t = transversal if transversal is not None else _find_transversal(pattern)
    g = digraph_of(pattern, t)
    comps, _, cond = strong_components(g)
    order = topological_order(cond, key=lambda k: min(comps[k]))
    col_of_row = t.col_of_row
    rows, cols, sizes = [], [], []
    for k in order:
        members = sorted(comps[k])
        rows.extend(members)
        cols.extend(col_of_row[i] for i in members)
        sizes.append(len(members))
    bf = BlockForm(Permutation(tuple(rows)), Permutation(tuple(cols)), tuple(sizes))
    emblem = Emblem(frozenset((frozenset(r), frozenset(c)) for r, c in bf.blocks()))
    return BtfResult(bf, emblem, t, tuple(order))


def is_upper_btf(pattern: SparsityPattern, bf: BlockForm) -> bool:
    """True if every position of ``pattern`` lies on or above the block diagonal."""
    rb = [0] * pattern.n
    cb = [0] * pattern.n
    for l, (rows, cols) in enumerate(bf.blocks()):
        for i in rows:
            rb[i] = l
        for j in cols:
            cb[j] = l
    return all(rb[i] <= cb[j] for i, j in pattern.positions)


def coarse_blocks(sigma: SignatureMatrix) -> BtfResult:
    t, _ = solve_hvt(sigma)
    return irreducible_btf(pattern_of(sigma), t)


def fine_blocks(sigma: SignatureMatrix, off: Optional[OffsetPair] = None) -> BtfResult:
    t, _ = solve_hvt(sigma)
    if off is None:
        off = canonical_offsets(sigma, t)
    # any HVT is a transversal of S0
    return irreducible_btf(jacobian_pattern(sigma, off), t)


def essential_pattern(sigma: SignatureMatrix, off: Optional[OffsetPair] = None) -> SparsityPattern:
    """Union of all HVTs, read off as the diagonal blocks of the fine BTF of S0."""
    t, _ = solve_hvt(sigma)
    if off is None:
        off = canonical_offsets(sigma, t)
    s0 = jacobian_pattern(sigma, off)
    fine = irreducible_btf(s0, t)
    rb, cb = fine.row_block(), fine.col_block()
    return SparsityPattern(sigma.n, frozenset((i, j) for i, j in s0.positions if rb[i] == cb[j]))


def is_irreducible(pattern: SparsityPattern) -> bool:
    return irreducible_btf(pattern).p == 1


def classify_fine_irreducible(sigma: SignatureMatrix) -> bool:
    return fine_blocks(sigma).p == 1


# ---------------------------------------------------------------------------
# per-coarse-block ("bootstrap") analysis


@dataclass(frozen=True)
class CoarseBlockAnalysis:
    rows: tuple
    cols: tuple
    hvt: tuple  # original-index positions
    val: int
    local_offsets: OffsetPair  # canonical offsets of the block on its own
    fine_emblem: Emblem  # original indices


def _analyse_block(sigma: SignatureMatrix, rows, cols) -> CoarseBlockAnalysis:
    sub = sigma.submatrix(rows, cols)
    t, val = solve_hvt(sub)
    off = canonical_offsets(sub, t)
    fine = irreducible_btf(jacobian_pattern(sub, off), t)
    emblem = Emblem(
        frozenset(
            (frozenset(rows[a] for a in r), frozenset(cols[b] for b in c)) for r, c in fine.blocks()
        )
    )
    hvt = tuple(sorted((rows[a], cols[b]) for a, b in t.positions))
    return CoarseBlockAnalysis(tuple(rows), tuple(cols), hvt, val, off, emblem)


def analyse_coarse_blocks(sigma: SignatureMatrix, max_workers: Optional[int] = None):
    """Solve the assignment problem and find fine blocks on each coarse block.

    Coarse blocks are independent, so with ``max_workers > 1`` they are
    processed in a thread pool. Results come back in coarse block order
    and are identical to the sequential run.
    """
    coarse = coarse_blocks(sigma)
    blocks = coarse.blocks()
    if max_workers is None or max_workers <= 1 or len(blocks) == 1:
        return [_analyse_block(sigma, r, c) for r, c in blocks]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda rc: _analyse_block(sigma, *rc), blocks))


def fine_emblem_by_coarse_blocks(sigma: SignatureMatrix, max_workers: Optional[int] = None) -> Emblem:
    """Fine emblem of the whole system assembled from its coarse blocks."""
    pairs = set()
    for part in analyse_coarse_blocks(sigma, max_workers):
        pairs.update(part.fine_emblem.pairs)
    return Emblem(frozenset(pairs))
