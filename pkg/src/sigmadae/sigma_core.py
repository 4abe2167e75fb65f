"""Value types: signature matrices, sparsity patterns, transversals,
offsets, permutations and square-block forms.

All indices are 0-based. Minus infinity is never stored as a number: a
position is either present in a matrix (finite) or absent.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InfinitePosition, InvalidOffsets
from .matching import maximum_matching

Position = tuple[int, int]


def _check_labels(labels, n, default_prefix, kind):
    if labels is None:
        return tuple(f"{default_prefix}{k + 1}" for k in range(n))
    labels = tuple(str(s) for s in labels)
    if len(labels) != n:
        raise ValueError(f"expected {n} {kind} labels, got {len(labels)}")
    if len(set(labels)) != n:
        raise ValueError(f"{kind} labels are not distinct: {labels}")
    return labels


class SignatureMatrix:
    """An ``n x n`` matrix of derivative orders with absent entries meaning -inf.

    ``entries`` maps ``(i, j)`` to an integer. Negative integers are accepted
    here (algorithms do not care); file readers reject them.
    """

    __slots__ = ("n", "_entries", "row_labels", "col_labels", "_rows", "_cols")

    def __init__(
        self,
        n: int,
        entries: Mapping[Position, int] | Iterable[tuple[int, int, int]],
        row_labels: Optional[Sequence[str]] = None,
        col_labels: Optional[Sequence[str]] = None,
    ):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"n must be a positive integer, got {n!r}")
        items = entries.items() if isinstance(entries, Mapping) else (((i, j), s) for i, j, s in entries)
        stored = {}
        for (i, j), s in items:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"position {(i, j)} outside a {n}x{n} matrix")
            if isinstance(s, bool) or not isinstance(s, int):
                raise TypeError(f"sigma[{i},{j}] must be an int, got {s!r}")
            if (i, j) in stored:
                raise ValueError(f"duplicate entry at {(i, j)}")
            stored[(i, j)] = s
        self.n = n
        self._entries = dict(sorted(stored.items()))
        self.row_labels = _check_labels(row_labels, n, "f", "row")
        self.col_labels = _check_labels(col_labels, n, "x", "column")
        rows = [[] for _ in range(n)]
        cols = [[] for _ in range(n)]
        for (i, j), s in self._entries.items():
            rows[i].append((j, s))
            cols[j].append((i, s))
        self._rows = tuple(tuple(r) for r in rows)
        self._cols = tuple(tuple(c) for c in cols)

    @classmethod
    def from_rows(cls, rows, row_labels=None, col_labels=None):
        """Build from a dense list of rows where ``None`` means -inf."""
        n = len(rows)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("matrix must be square")
            for j, s in enumerate(row):
                if s is not None:
                    entries[(i, j)] = s
        return cls(n, entries, row_labels, col_labels)

    def entry(self, i: int, j: int) -> Optional[int]:
        """sigma_ij, or None for -inf."""
        return self._entries.get((i, j))

    def __contains__(self, pos):
        return pos in self._entries

    def items(self):
        return self._entries.items()

    def row(self, i):
        """``(j, sigma_ij)`` pairs of the finite entries in row ``i``."""
        return self._rows[i]

    def col(self, j):
        return self._cols[j]

    def max_entry(self) -> int:
        return max(self._entries.values(), default=0)

    def triplets(self):
        return [(i, j, s) for (i, j), s in self._entries.items()]

    def to_rows(self):
        return [[self._entries.get((i, j)) for j in range(self.n)] for i in range(self.n)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SignatureMatrix":
        """Square sub-matrix on the given rows and columns, in that order."""
        if len(rows) != len(cols):
            raise ValueError("submatrix must be square")
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        entries = {
            (rpos[i], cpos[j]): s for (i, j), s in self._entries.items() if i in rpos and j in cpos
        }
        return SignatureMatrix(
            len(rows),
            entries,
            [self.row_labels[r] for r in rows],
            [self.col_labels[c] for c in cols],
        )

    def permuted(self, rho: "Permutation", kappa: "Permutation") -> "SignatureMatrix":
        """Permuted matrix with ``new[i, j] = old[rho(i), kappa(j)]``; labels travel along."""
        return self.submatrix(rho.forward, kappa.forward)

    def __eq__(self, other):
        if not isinstance(other, SignatureMatrix):
            return NotImplemented
        return (
            self.n == other.n
            and self._entries == other._entries
            and self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
        )

    def __hash__(self):
        return hash((self.n, tuple(self._entries.items()), self.row_labels, self.col_labels))

    def __repr__(self):
        return f"SignatureMatrix(n={self.n}, entries={self._entries!r})"


@dataclass(frozen=True)
class SparsityPattern:
    n: int
    positions: frozenset

    def __post_init__(self):
        object.__setattr__(self, "positions", frozenset(self.positions))
        for i, j in self.positions:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"position {(i, j)} outside {self.n}x{self.n}")

    def __contains__(self, pos):
        return pos in self.positions

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(sorted(self.positions))

    def adjacency(self):
        """Row-wise adjacency lists, columns ascending."""
        adj = [[] for _ in range(self.n)]
        for i, j in sorted(self.positions):
            adj[i].append(j)
        return adj

    def block(self, rows, cols):
        """The sub-pattern ``A ∩ (rows x cols)``, kept in original indices."""
        rows, cols = set(rows), set(cols)
        return frozenset((i, j) for i, j in self.positions if i in rows and j in cols)


@dataclass(frozen=True)
class Transversal:
    """``n`` positions hitting every row and every column once."""

    n: int
    positions: frozenset

    def __post_init__(self):
        pos = frozenset(self.positions)
        object.__setattr__(self, "positions", pos)
        rows = {i for i, _ in pos}
        cols = {j for _, j in pos}
        if len(pos) != self.n or rows != set(range(self.n)) or cols != set(range(self.n)):
            raise ValueError(f"not a transversal of size {self.n}: {sorted(pos)}")

    @classmethod
    def from_cols(cls, col_of_row: Sequence[int]) -> "Transversal":
        return cls(len(col_of_row), frozenset(enumerate(col_of_row)))

    @property
    def col_of_row(self) -> tuple:
        out = [0] * self.n
        for i, j in self.positions:
            out[i] = j
        return tuple(out)

    @property
    def row_of_col(self) -> tuple:
        out = [0] * self.n
        for i, j in self.positions:
            out[j] = i
        return tuple(out)

    def __iter__(self):
        return iter(sorted(self.positions))


@dataclass(frozen=True)
class OffsetPair:
    """Equation offsets ``c`` and variable offsets ``d``."""

    c: tuple
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if len(self.c) != len(self.d):
            raise ValueError("c and d must have the same length")

    def shifted(self, k: int) -> "OffsetPair":
        return OffsetPair(tuple(x + k for x in self.c), tuple(x + k for x in self.d))


@dataclass(frozen=True)
class Permutation:
    """``forward[k]`` is the original index placed at position ``k``."""

    forward: tuple

    def __post_init__(self):
        fwd = tuple(self.forward)
        object.__setattr__(self, "forward", fwd)
        if sorted(fwd) != list(range(len(fwd))):
            raise ValueError(f"not a permutation: {fwd}")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @property
    def size(self):
        return len(self.forward)

    def __call__(self, k):
        return self.forward[k]

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for k, v in enumerate(self.forward):
            inv[v] = k
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class BlockForm:
    row_perm: Permutation
    col_perm: Permutation
    block_sizes: tuple

    def __post_init__(self):
        sizes = tuple(self.block_sizes)
        object.__setattr__(self, "block_sizes", sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError(f"block sizes must be positive: {sizes}")
        if sum(sizes) != self.row_perm.size or self.row_perm.size != self.col_perm.size:
            raise ValueError("block sizes do not add up to the permutation size")

    @property
    def p(self):
        return len(self.block_sizes)

    def bounds(self):
        """``(start, stop)`` of each block in permuted positions."""
        return self._bounds

    def blocks(self):
        """Original ``(rows, cols)`` index tuples of each block, in block order."""
        return self._blocks

    @cached_property
    def _bounds(self):
        out, start = [], 0
        for s in self.block_sizes:
            out.append((start, start + s))
            start += s
        return tuple(out)

    @cached_property
    def _blocks(self):
        return tuple(
            (self.row_perm.forward[a:b], self.col_perm.forward[a:b]) for a, b in self._bounds
        )

    def block_of_position(self, k):
        """Block number of permuted position ``k`` (``bkof``)."""
        for l, (a, b) in enumerate(self.bounds()):
            if a <= k < b:
                return l
        raise IndexError(k)


@dataclass(frozen=True)
class Emblem:
    """Order-free identity of a square-block form: a set of (row-set, col-set) pairs."""

    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset((frozenset(r), frozenset(c)) for r, c in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        rows = [x for r, _ in pairs for x in r]
        cols = [x for _, c in pairs for x in c]
        if len(rows) != len(set(rows)) or len(cols) != len(set(cols)):
            raise ValueError("row or column sets of an emblem overlap")
        for r, c in pairs:
            if len(r) != len(c) or not r:
                raise ValueError("emblem pairs must be nonempty and of equal size")

    def __len__(self):
        return len(self.pairs)

    def sizes(self):
        return sorted(len(r) for r, _ in self.pairs)

    def relabel(self, row_labels, col_labels) -> "Emblem":
        return Emblem(
            frozenset(
                (frozenset(row_labels[i] for i in r), frozenset(col_labels[j] for j in c))
                for r, c in self.pairs
            )
        )


# ---------------------------------------------------------------------------
# operations


def pattern_of(sigma: SignatureMatrix) -> SparsityPattern:
    return SparsityPattern(sigma.n, frozenset(pos for pos, _ in sigma.items()))


def is_transversal(pattern: SparsityPattern, t: Transversal) -> bool:
    if pattern.n != t.n:
        raise ValueError("size mismatch")
    return t.positions <= pattern.positions


def transversal_value(sigma: SignatureMatrix, t: Transversal) -> int:
    total = 0
    for i, j in t.positions:
        s = sigma.entry(i, j)
        if s is None:
            raise InfinitePosition(f"sigma is -inf at {(i, j)}")
        total += s
    return total


def is_structurally_nonsingular(pattern: SparsityPattern) -> bool:
    size, _ = maximum_matching(pattern.n, pattern.adjacency())
    return size == pattern.n


def is_structurally_well_posed(sigma: SignatureMatrix) -> bool:
    return is_structurally_nonsingular(pattern_of(sigma))


def offsets_inequalities_hold(sigma: SignatureMatrix, off: OffsetPair) -> bool:
    c, d = off.c, off.d
    return all(d[j] - c[i] >= s for (i, j), s in sigma.items())


def equality_pattern(sigma: SignatureMatrix, off: OffsetPair) -> SparsityPattern:
    """Positions where ``d_j - c_i == sigma_ij``, with no validity check."""
    c, d = off.c, off.d
    return SparsityPattern(sigma.n, frozenset(p for p, s in sigma.items() if d[p[1]] - c[p[0]] == s))


def jacobian_pattern(sigma: SignatureMatrix, off: OffsetPair) -> SparsityPattern:
    """Sparsity pattern S0(c, d) of the system Jacobian for valid offsets."""
    if len(off.c) != sigma.n:
        raise InvalidOffsets(f"offset vectors have length {len(off.c)}, expected {sigma.n}")
    if min(off.c) < 0:
        raise InvalidOffsets("some c_i < 0")
    if not offsets_inequalities_hold(sigma, off):
        raise InvalidOffsets("d_j - c_i >= sigma_ij fails somewhere")
    s0 = equality_pattern(sigma, off)
    if not is_structurally_nonsingular(s0):
        raise InvalidOffsets("equality does not hold on any transversal")
    return s0


def permute_pattern(pattern: SparsityPattern, rho: Permutation, kappa: Permutation) -> SparsityPattern:
    """``(i, j)`` is in the result iff ``(rho(i), kappa(j))`` is in ``pattern``."""
    if rho.size != pattern.n or kappa.size != pattern.n:
        raise ValueError("size mismatch")
    rinv, kinv = rho.inverse().forward, kappa.inverse().forward
    return SparsityPattern(pattern.n, frozenset((rinv[i], kinv[j]) for i, j in pattern.positions))


def permute_sigma(sigma: SignatureMatrix, rho: Permutation, kappa: Permutation) -> SignatureMatrix:
    return sigma.permuted(rho, kappa)


def emblem_of(row_labels, col_labels, bf: BlockForm) -> Emblem:
    return Emblem(
        frozenset(
            (frozenset(row_labels[i] for i in rows), frozenset(col_labels[j] for j in cols))
            for rows, cols in bf.blocks()
        )
    )


def emblems_equal(e1: Emblem, e2: Emblem) -> bool:
    return e1.pairs == e2.pairs
