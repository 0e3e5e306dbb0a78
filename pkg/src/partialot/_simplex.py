"""Exact primal transportation simplex over rational arithmetic.

Solves the balanced transportation problem

    min  sum_ij cost[i][j] * f[i][j]
    s.t. sum_j f[i][j] = supply[i],  sum_i f[i][j] = demand[j],  f >= 0

with all data given as :class:`~fractions.Fraction` (floats should be
converted by the caller; the conversion is exact).  Everything the
algorithm does is addition, subtraction and comparison, so with inputs
whose denominators are powers of two the arithmetic stays cheap and the
returned flows, duals and objective are exact.

The entering cell is normally the one with the most negative reduced cost
(ties broken by smallest row-major index); after a run of m + n consecutive
degenerate pivots the rule switches to Bland's (first negative reduced cost
in row-major order) until a pivot moves mass again, which rules out cycling.
The leaving cell is always the smallest row-major index among the
minimum-ratio candidates.  Both rules are deterministic, so the selected
optimal vertex is reproducible.
"""

from collections import deque
from fractions import Fraction

_ZERO = Fraction(0)


def solve_transportation(supply, demand, cost):
    """Solve the balanced transportation problem exactly.

    Parameters are sequences of Fractions: ``supply`` (length m), ``demand``
    (length n) and ``cost`` an m x n matrix.  Returns a tuple
    ``(flows, u, v, alt)`` where ``flows`` maps ``(i, j)`` to the positive
    flow on that cell, ``u``/``v`` are exact dual potentials satisfying
    ``u[i] + v[j] <= cost[i][j]`` everywhere with equality on every cell of
    the final basis (hence on every positive flow), and ``alt`` counts
    non-basic cells with zero reduced cost (witnesses of alternate optima).
    """
    m, n = len(supply), len(demand)
    if m == 0 or n == 0:
        if any(s != 0 for s in supply) or any(d != 0 for d in demand):
            raise ValueError("empty side of an unbalanced transportation problem")
        return {}, [_ZERO] * m, [_ZERO] * n, 0
    if sum(supply) != sum(demand):
        raise ValueError("transportation problem is not balanced")
    if any(s < 0 for s in supply) or any(d < 0 for d in demand):
        raise ValueError("supplies and demands must be non-negative")

    flow, row_adj, col_adj = _northwest_corner(supply, demand, m, n)

    stall_limit = m + n
    stalled = 0
    while True:
        u, v = _tree_duals(cost, row_adj, col_adj, m, n)
        entering = None
        if stalled < stall_limit:
            # steepest descent: most negative reduced cost, smallest index on ties
            best = _ZERO
            for i in range(m):
                ui = u[i]
                cost_i = cost[i]
                adj_i = row_adj[i]
                for j in range(n):
                    if j not in adj_i:
                        rc = cost_i[j] - ui - v[j]
                        if rc < best:
                            best = rc
                            entering = (i, j)
        else:
            # Bland's rule: escape degenerate stalling without cycling
            for i in range(m):
                ui = u[i]
                cost_i = cost[i]
                adj_i = row_adj[i]
                for j in range(n):
                    if j not in adj_i and cost_i[j] - ui - v[j] < 0:
                        entering = (i, j)
                        break
                if entering is not None:
                    break
        if entering is None:
            break
        moved = _pivot(entering, flow, row_adj, col_adj, m, n)
        stalled = 0 if moved else stalled + 1

    alt = 0
    for i in range(m):
        ui = u[i]
        cost_i = cost[i]
        adj_i = row_adj[i]
        for j in range(n):
            if j not in adj_i and cost_i[j] - ui - v[j] == 0:
                alt += 1

    positive = {cell: f for cell, f in flow.items() if f > 0}
    return positive, u, v, alt


def _northwest_corner(supply, demand, m, n):
    """Initial basic feasible solution with exactly m + n - 1 basic cells."""
    s = list(supply)
    d = list(demand)
    flow = {}
    row_adj = [set() for _ in range(m)]
    col_adj = [set() for _ in range(n)]
    i = j = 0
    while True:
        theta = min(s[i], d[j])
        flow[(i, j)] = theta
        row_adj[i].add(j)
        col_adj[j].add(i)
        s[i] -= theta
        d[j] -= theta
        if i == m - 1 and j == n - 1:
            break
        if s[i] == 0 and i < m - 1:
            i += 1
        elif d[j] == 0 and j < n - 1:
            j += 1
        elif i < m - 1:
            i += 1
        else:
            j += 1
    return flow, row_adj, col_adj


def _tree_duals(cost, row_adj, col_adj, m, n):
    """Dual potentials from the basis tree, rooted at source 0 with u[0] = 0."""
    u = [None] * m
    v = [None] * n
    u[0] = _ZERO
    queue = deque([("s", 0)])
    while queue:
        side, k = queue.popleft()
        if side == "s":
            for j in row_adj[k]:
                if v[j] is None:
                    v[j] = cost[k][j] - u[k]
                    queue.append(("t", j))
        else:
            for i in col_adj[k]:
                if u[i] is None:
                    u[i] = cost[i][k] - v[k]
                    queue.append(("s", i))
    # The basis is a spanning tree, so every potential is assigned.
    return u, v


def _tree_path(i0, j0, row_adj, col_adj, m):
    """Unique path from source i0 to sink j0 through the basis tree.

    Nodes are encoded as integers: sources 0..m-1, sinks m..m+n-1.  Returns
    the node list [i0, m + j_1, i_1, ..., m + j0].
    """
    start = i0
    goal = m + j0
    parent = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            break
        if node < m:
            neighbours = (m + j for j in row_adj[node])
        else:
            neighbours = iter(col_adj[node - m])
        for nb in neighbours:
            if nb not in parent:
                parent[nb] = node
                queue.append(nb)
    path = [goal]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _pivot(entering, flow, row_adj, col_adj, m, n):
    """Pivot the entering cell into the basis; True iff mass actually moved."""
    i0, j0 = entering
    path = _tree_path(i0, j0, row_adj, col_adj, m)

    # Cycle edges along the path, oriented as (source, sink).  With the
    # entering cell taking +theta, path edges alternate -, +, -, ... and the
    # path length from a source to a sink is odd, so minus edges sit at the
    # even positions.
    edges = []
    for a, b in zip(path, path[1:]):
        if a < m:
            edges.append((a, b - m))
        else:
            edges.append((b, a - m))
    minus = edges[0::2]
    plus = edges[1::2]

    theta = min(flow[e] for e in minus)
    leaving = min(e for e in minus if flow[e] == theta)

    for e in minus:
        flow[e] -= theta
    for e in plus:
        flow[e] += theta
    flow[entering] = theta

    del flow[leaving]
    row_adj[leaving[0]].discard(leaving[1])
    col_adj[leaving[1]].discard(leaving[0])
    row_adj[i0].add(j0)
    col_adj[j0].add(i0)
    return theta > 0
