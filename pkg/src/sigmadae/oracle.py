"""Brute-force reference implementations for small instances.

Nothing here calls the assignment solver, the matching code or the BTF
machinery; every answer comes from direct enumeration of the definitions.
Size guards raise TooLarge instead of attempting exponential work.
"""
from itertools import combinations, product

from .errors import StructurallyIllPosed, TooLarge
from .sigma_core import OffsetPair, SignatureMatrix, SparsityPattern, Transversal


def _guard(value, limit, what):
    if value > limit:
        raise TooLarge(f"{what} = {value} exceeds the brute-force limit {limit}")


def all_transversals(pattern: SparsityPattern) -> list:
    """Every transversal contained in ``pattern``, by backtracking over rows."""
    n = pattern.n
    _guard(n, 10, "n")
    adj = pattern.adjacency()
    out = []
    cols = [0] * n
    used = [False] * n

    def walk(i):
        if i == n:
            out.append(Transversal.from_cols(cols))
            return
        for j in adj[i]:
            if not used[j]:
                used[j] = True
                cols[i] = j
                walk(i + 1)
                used[j] = False

    walk(0)
    return out


def _finite_pattern(sigma):
    return SparsityPattern(sigma.n, frozenset(p for p, _ in sigma.items()))


def all_hvts(sigma: SignatureMatrix) -> list:
    ts = all_transversals(_finite_pattern(sigma))
    if not ts:
        raise StructurallyIllPosed("no finite transversal")
    values = [sum(sigma.entry(i, j) for i, j in t.positions) for t in ts]
    best = max(values)
    return [t for t, v in zip(ts, values) if v == best]


def hvt_value(sigma: SignatureMatrix) -> int:
    t = all_hvts(sigma)[0]
    return sum(sigma.entry(i, j) for i, j in t.positions)


def sess_bruteforce(sigma: SignatureMatrix) -> SparsityPattern:
    """Union of all highest-value transversals."""
    pos = set()
    for t in all_hvts(sigma):
        pos |= t.positions
    return SparsityPattern(sigma.n, frozenset(pos))


def _rows_touched(pattern, cols):
    return {i for i, j in pattern.positions if j in cols}


def hall_property(pattern: SparsityPattern) -> bool:
    """Any ``r`` columns (1 <= r <= n) meet at least ``r`` rows."""
    n = pattern.n
    _guard(n, 6, "n")
    for r in range(1, n + 1):
        for cols in combinations(range(n), r):
            if len(_rows_touched(pattern, set(cols))) < r:
                return False
    return True


def strong_hall_property(pattern: SparsityPattern) -> bool:
    """Any ``r`` columns (1 <= r <= n-1) meet at least ``r + 1`` rows."""
    n = pattern.n
    _guard(n, 6, "n")
    for r in range(1, n):
        for cols in combinations(range(n), r):
            if len(_rows_touched(pattern, set(cols))) < r + 1:
                return False
    return True


def normalized_offsets_bruteforce(sigma: SignatureMatrix, bound: int) -> list:
    """All normalised offset pairs with ``max c <= bound``, sorted by ``c``.

    Walks the grid ``{0..bound}^n`` row by row; ``d`` is taken from one HVT
    (found by enumeration) and every inequality among the rows and columns
    fixed so far is checked before going deeper.
    """
    n = sigma.n
    _guard(n, 7, "n")
    _guard(bound, 8, "bound")
    t = all_hvts(sigma)[0]
    col_of_row = t.col_of_row
    row_of_col = t.row_of_col
    # inequality (i, j) can be checked once rows i and row_of_col[j] are both fixed
    checks = [[] for _ in range(n)]
    for (i, j), s in sigma.items():
        checks[max(i, row_of_col[j])].append((i, j, s))
    out = []
    c = [0] * n
    d = [0] * n

    def walk(r):
        if r == n:
            if min(c) == 0:
                out.append(OffsetPair(tuple(c), tuple(d)))
            return
        j0 = col_of_row[r]
        for val in range(bound + 1):
            c[r] = val
            d[j0] = val + sigma.entry(r, j0)
            if all(d[j] - c[i] >= s for i, j, s in checks[r]):
                walk(r + 1)

    walk(0)
    return out


def normalized_lead_times_bruteforce(fbg, bound: int) -> list:
    """Full grid ``{0..bound}^p`` filtered by the block inequalities and ``min K = 0``."""
    p = fbg.p
    _guard(p, 6, "p")
    _guard(bound, 10, "bound")
    edges = list(fbg.edges.items())
    out = []
    for k in product(range(bound + 1), repeat=p):
        if min(k) == 0 and all(k[l] - k[kk] >= w for (kk, l), w in edges):
            out.append(k)
    return out
