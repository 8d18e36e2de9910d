"""Tanner-graph girth by two independent methods, plus 4-cycle counting.

girth_bfs works on the lifted binary matrix and knows nothing about the
quasi-cyclic structure.  girth_from_shifts never lifts: a length-2m cycle
exists iff there are row indices j_1..j_m and column indices l_1..l_m,
cyclically adjacent-distinct, whose alternating shift sum

    sum_t (P[j_t][l_t] - P[j_t][l_{t+1 mod m}])  ==  0  (mod N)

vanishes.  Each solution tuple is a rooted traversal of a lifted cycle;
a cycle of length 2m lifts N ways and is traversed from 2m rooted
orientations, so distinct cycles = tuples * N / (2m).  The two methods
share no code and serve as oracles for each other.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .lifting import GirthReport, ParityCheckMatrix, ShiftMatrix


def _adjacency(h: ParityCheckMatrix) -> list[list[int]]:
    """Single vertex space: checks 0..m-1, then variables m..m+n-1."""
    m = h.n_rows
    adj: list[list[int]] = [[] for _ in range(m + h.n_cols)]
    for r, c in h.adjacency:
        adj[r].append(m + c)
        adj[m + c].append(r)
    for lst in adj:
        lst.sort()
    return adj


def _label(v: int, n_checks: int) -> str:
    return f"c{v}" if v < n_checks else f"v{v - n_checks}"


def girth_bfs(h: ParityCheckMatrix, cap: int = 12) -> GirthReport:
    """Exact girth if <= cap via BFS from every node, else infinite.

    Counts distinct shortest cycles as edge sets and returns one witness.
    """
    if cap < 4 or cap % 2:
        raise ValueError(f"cap must be even and >= 4, got {cap}")
    adj = _adjacency(h)
    size = len(adj)
    girth: Optional[int] = None
    through: list[Optional[int]] = [None] * size  # best candidate through root

    for root in range(size):
        dist = [-1] * size
        parent = [-1] * size
        dist[root] = 0
        queue = deque([root])
        best: Optional[int] = None
        while queue:
            u = queue.popleft()
            if dist[u] * 2 >= cap:  # deeper levels cannot find cycles <= cap
                continue
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u] and dist[w] >= dist[u]:
                    cand = dist[u] + dist[w] + 1
                    if best is None or cand < best:
                        best = cand
        through[root] = best
        if best is not None and best <= cap and (girth is None or best < girth):
            girth = best
    if girth is None:
        return GirthReport(girth=None, shortest_cycle_count=0, cap=cap, method="bfs")

    count, witness = _count_cycles_graph(adj, girth, through)
    labeled = _orient_witness(witness, h.n_rows)
    return GirthReport(
        girth=girth,
        shortest_cycle_count=count,
        cap=cap,
        method="bfs",
        witness=labeled,
    )


def _orient_witness(cycle: list[int], n_checks: int) -> tuple[str, ...]:
    """Rotate a cycle vertex list to start at a variable node and label it."""
    start = next(i for i, v in enumerate(cycle) if v >= n_checks)
    rotated = cycle[start:] + cycle[:start]
    return tuple(_label(v, n_checks) for v in rotated)


def _count_cycles_graph(
    adj: list[list[int]], girth: int, through: list[Optional[int]]
) -> tuple[int, list[int]]:
    """Count length-girth cycles once each by canonical DFS.

    A cycle is counted at its minimum vertex s, walking only vertices > s,
    with the reflection killed by requiring second vertex < last vertex.
    BFS distances from s prune paths that cannot close within the budget.
    """
    size = len(adj)
    count = 0
    first: list[int] = []
    for s in range(size):
        if through[s] is None or through[s] != girth:
            continue  # no shortest cycle passes through s
        dist = [-1] * size
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if dist[u] >= girth // 2:
                continue
            for w in adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        root_adj = set(adj[s])
        path = [s]
        on_path = {s}

        def dfs(u: int, depth: int) -> None:
            nonlocal count
            if depth == girth - 1:
                if u in root_adj and path[1] < u:
                    count += 1
                    if not first:
                        first.extend(path)
                return
            for w in adj[u]:
                if w <= s or w in on_path:
                    continue
                d = dist[w]
                if d == -1 or d > min(depth + 1, girth - depth - 1):
                    continue
                path.append(w)
                on_path.add(w)
                dfs(w, depth + 1)
                path.pop()
                on_path.discard(w)

        for w in adj[s]:
            if w > s:
                path.append(w)
                on_path.add(w)
                dfs(w, 1)
                path.pop()
                on_path.discard(w)
    return count, first


def _cyclic_sequences(symbols: int, length: int) -> list[tuple[int, ...]]:
    """All tuples over range(symbols) with adjacent entries distinct cyclically."""
    out: list[tuple[int, ...]] = []
    seq = [0] * length

    def rec(pos: int) -> None:
        if pos == length:
            if seq[0] != seq[-1]:
                out.append(tuple(seq))
            return
        for v in range(symbols):
            if pos > 0 and v == seq[pos - 1]:
                continue
            seq[pos] = v
            rec(pos + 1)

    rec(0)
    return out


def _shift_tuples(p: ShiftMatrix, m: int, count_all: bool):
    """Solutions (jseq, lseq) of the length-2m cycle condition.

    With count_all false, returns the first solution or None; otherwise
    returns (total, first_solution).
    """
    j_rows, l_cols, n = p.rows, p.cols, p.lifting_factor
    total = 0
    first = None
    for jseq in _cyclic_sequences(j_rows, m):
        lseq = [0] * m

        def rec(pos: int, acc: int):
            nonlocal total, first
            if pos == m:
                if lseq[0] == lseq[-1]:
                    return False
                closing = acc + p.entries[jseq[m - 1]][lseq[m - 1]] \
                    - p.entries[jseq[m - 1]][lseq[0]]
                if closing % n == 0:
                    total += 1
                    if first is None:
                        first = (jseq, tuple(lseq))
                    if not count_all:
                        return True
                return False
            for l in range(l_cols):
                if pos > 0 and l == lseq[pos - 1]:
                    continue
                lseq[pos] = l
                step = 0
                if pos > 0:
                    step = p.entries[jseq[pos - 1]][lseq[pos - 1]] \
                        - p.entries[jseq[pos - 1]][l]
                if rec(pos + 1, acc + step):
                    return True
            return False

        if rec(0, 0) and not count_all:
            return first
    if count_all:
        return total, first
    return first


def _witness_from_tuple(
    p: ShiftMatrix, jseq: tuple[int, ...], lseq: tuple[int, ...]
) -> tuple[str, ...]:
    """Lift one solution tuple to an alternating vertex cycle at offset 0."""
    n = p.lifting_factor
    labels = []
    a = 0
    for t in range(len(jseq)):
        labels.append(f"v{lseq[t] * n + a}")
        r = (a - p.entries[jseq[t]][lseq[t]]) % n
        labels.append(f"c{jseq[t] * n + r}")
        a = (r + p.entries[jseq[t]][lseq[(t + 1) % len(lseq)]]) % n
    return tuple(labels)


def girth_from_shifts(p: ShiftMatrix, cap: int = 12) -> GirthReport:
    """Exact girth if <= cap computed on the shift matrix without lifting."""
    if cap < 4 or cap % 2:
        raise ValueError(f"cap must be even and >= 4, got {cap}")
    n = p.lifting_factor
    for m in range(2, cap // 2 + 1):
        hit = _shift_tuples(p, m, count_all=False)
        if hit is None:
            continue
        total, first = _shift_tuples(p, m, count_all=True)
        girth = 2 * m
        assert total * n % girth == 0, "rooted-tuple count must split into cycles"
        jseq, lseq = first
        return GirthReport(
            girth=girth,
            shortest_cycle_count=total * n // girth,
            cap=cap,
            method="shifts",
            witness=_witness_from_tuple(p, jseq, lseq),
        )
    return GirthReport(girth=None, shortest_cycle_count=0, cap=cap, method="shifts")


def count_4cycles(p: ShiftMatrix) -> int:
    """Number of 4-cycles in the lifted graph, computed from shifts.

    Each row pair and column pair whose 2 x 2 shift sub-matrix has
    vanishing alternating sum contributes exactly N cycles.
    """
    n = p.lifting_factor
    violations = 0
    for j1 in range(p.rows):
        for j2 in range(j1 + 1, p.rows):
            row_a, row_b = p.entries[j1], p.entries[j2]
            for l1 in range(p.cols):
                for l2 in range(l1 + 1, p.cols):
                    if (row_a[l1] - row_a[l2] + row_b[l2] - row_b[l1]) % n == 0:
                        violations += 1
    return violations * n


def count_4cycles_graph(h: ParityCheckMatrix) -> int:
    """Brute-force 4-cycle count on the lifted graph via common neighbors.

    A 4-cycle is an unordered pair of checks plus an unordered pair of
    their common variables; independent of both shift-based methods.
    """
    by_row = h.row_neighbors()
    count = 0
    for r1 in range(h.n_rows):
        set1 = set(by_row[r1])
        for r2 in range(r1 + 1, h.n_rows):
            common = len(set1.intersection(by_row[r2]))
            count += common * (common - 1) // 2
    return count


def has_girth_at_least(p: ShiftMatrix, g: int) -> bool:
    """True iff no cycle of length < g exists; early-exits per length."""
    if g not in (6, 8, 10, 12):
        raise ValueError(f"g must be one of 6, 8, 10, 12, got {g}")
    for m in range(2, (g - 2) // 2 + 1):
        if _shift_tuples(p, m, count_all=False) is not None:
            return False
    return True
