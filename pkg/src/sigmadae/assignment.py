"""Highest-value transversal and dual offset vectors.

The assignment problem is solved by successive shortest augmenting paths
(Dijkstra with dual potentials) over the finite entries only, so -inf is a
missing edge rather than a large negative weight. Everything is integer.
"""
import heapq
from dataclasses import dataclass
from typing import Optional

from .errors import InternalNonConvergence, StructurallyIllPosed
from .matching import maximum_matching
from .sigma_core import (
    OffsetPair,
    SignatureMatrix,
    Transversal,
    equality_pattern,
    offsets_inequalities_hold,
    transversal_value,
)


def solve_hvt(sigma: SignatureMatrix) -> tuple[Transversal, int]:
    """Return a highest-value transversal and ``val(sigma)``.

    Raises StructurallyIllPosed when no finite transversal exists.
    """
    n = sigma.n
    top = sigma.max_entry()
    # minimise cost = top - sigma >= 0
    cost_rows = [[(j, top - s) for j, s in sigma.row(i)] for i in range(n)]
    u = [0] * n
    v = [0] * n
    col_of_row = [-1] * n
    row_of_col = [-1] * n

    for root in range(n):
        dist = {}
        pred = {}
        done_cols = []
        done_rows = [root]
        finished = set()
        heap = []
        i, base = root, 0
        sink = -1
        while True:
            for j, cij in cost_rows[i]:
                if j in finished:
                    continue
                reduced = base + cij - u[i] - v[j]
                if reduced < dist.get(j, reduced + 1):
                    dist[j] = reduced
                    pred[j] = i
                    heapq.heappush(heap, (reduced, row_of_col[j] != -1, j))
            while heap:
                dj, _, j = heapq.heappop(heap)
                if j not in finished and dist[j] == dj:
                    break
            else:
                raise StructurallyIllPosed("no finite transversal exists")
            finished.add(j)
            done_cols.append(j)
            base = dj
            if row_of_col[j] == -1:
                sink = j
                break
            i = row_of_col[j]
            done_rows.append(i)

        # dual update keeps reduced costs >= 0 and zero on matched edges
        u[root] += base
        for r in done_rows[1:]:
            u[r] += base - dist[col_of_row[r]]
        for j in done_cols:
            v[j] -= base - dist[j]

        j = sink
        while True:
            i = pred[j]
            row_of_col[j] = i
            col_of_row[i], j = j, col_of_row[i]
            if i == root:
                break

    t = Transversal.from_cols(col_of_row)
    return t, transversal_value(sigma, t)


def d_from_c(sigma: SignatureMatrix, t: Transversal, c) -> tuple:
    """Variable offsets determined by ``c`` on the transversal ``t``."""
    d = [0] * sigma.n
    for i, j in t.positions:
        s = sigma.entry(i, j)
        if s is None:
            raise StructurallyIllPosed(f"transversal position {(i, j)} is -inf")
        d[j] = c[i] + s
    return tuple(d)


def canonical_offsets(sigma: SignatureMatrix, hvt: Optional[Transversal] = None) -> OffsetPair:
    """Elementwise-smallest valid offsets, by fixpoint iteration from ``c = 0``."""
    if hvt is None:
        hvt, _ = solve_hvt(sigma)
    n = sigma.n
    col_of_row = hvt.col_of_row
    matched = [sigma.entry(i, col_of_row[i]) for i in range(n)]
    if any(s is None for s in matched):
        raise StructurallyIllPosed("transversal is not finite")
    cap = n * (sigma.max_entry() + 1) + 1
    c = [0] * n
    for _ in range(cap):
        d = [max(s + c[i] for i, s in sigma.col(j)) for j in range(n)]
        new_c = [d[col_of_row[i]] - matched[i] for i in range(n)]
        if new_c == c:
            return OffsetPair(c, d)
        c = new_c
    raise InternalNonConvergence(f"canonical offsets did not converge in {cap} iterations")


@dataclass(frozen=True)
class OffsetClassification:
    is_general: bool
    is_valid: bool
    is_normalised: bool
    witness_hvt: Optional[Transversal] = None

    def describe(self) -> str:
        if not self.is_general:
            return "not a general offset vector"
        words = ["general"]
        if self.is_valid:
            words.append("valid")
        if self.is_normalised:
            words.append("normalised")
        return " ".join(words)


def check_offsets(sigma: SignatureMatrix, off: OffsetPair) -> OffsetClassification:
    if len(off.c) != sigma.n:
        raise ValueError(f"offset vectors have length {len(off.c)}, expected {sigma.n}")
    if not offsets_inequalities_hold(sigma, off):
        return OffsetClassification(False, False, False)
    eq = equality_pattern(sigma, off)
    size, col_of_row = maximum_matching(sigma.n, eq.adjacency())
    if size < sigma.n:
        return OffsetClassification(False, False, False)
    valid = min(off.c) >= 0
    return OffsetClassification(True, valid, valid and min(off.c) == 0, Transversal.from_cols(col_of_row))


def normalise(off: OffsetPair) -> OffsetPair:
    return off.shifted(-min(off.c))
