"""Maximum cardinality bipartite matching (Hopcroft-Karp).

Rows and columns are both numbered ``0..n-1``. Adjacency lists are visited
in ascending column order so results are reproducible.
"""
from collections import deque

_INF = float("inf")


def maximum_matching(n, adjacency):
    """Return ``(size, col_of_row)`` for a maximum matching.

    ``adjacency[i]`` is an iterable of the columns adjacent to row ``i``.
    Unmatched rows get ``-1`` in ``col_of_row``.
    """
    adj = [sorted(set(adjacency[i])) for i in range(n)]
    col_of_row = [-1] * n
    row_of_col = [-1] * n
    dist = [0] * n

    def bfs():
        queue = deque()
        for i in range(n):
            if col_of_row[i] == -1:
                dist[i] = 0
                queue.append(i)
            else:
                dist[i] = _INF
        found = False
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                k = row_of_col[j]
                if k == -1:
                    found = True
                elif dist[k] == _INF:
                    dist[k] = dist[i] + 1
                    queue.append(k)
        return found

    def dfs(root):
        # iterative DFS along the layered graph; stack holds (row, next-edge index)
        stack = [[root, 0]]
        path = []
        while stack:
            frame = stack[-1]
            i, pos = frame
            if pos == len(adj[i]):
                dist[i] = _INF
                stack.pop()
                if path:
                    path.pop()
                continue
            j = adj[i][pos]
            frame[1] += 1
            k = row_of_col[j]
            if k == -1:
                path.append((i, j))
                for r, c in path:
                    col_of_row[r] = c
                    row_of_col[c] = r
                return True
            if dist[k] == dist[i] + 1:
                path.append((i, j))
                stack.append([k, 0])
        return False

    size = 0
    while bfs():
        for i in range(n):
            if col_of_row[i] == -1 and dfs(i):
                size += 1
    return size, col_of_row
