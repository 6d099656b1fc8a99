"""Pure-Python kernel implementations.

Drop-in mirror of the compiled module ``ramsimple._kernels._ckernels``:
identical signatures and bit-identical results.  Selected at import time when
the extension is unavailable or ``RAMSIMPLE_PURE=1`` is set.

Graphs cross the kernel boundary as bit-set adjacency rows (one Python int
per vertex, bit ``v`` of row ``u`` set iff ``uv`` is an edge).
"""

from __future__ import annotations

import time as _time

import numpy as np

from ramsimple.rng import GOLDEN

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLD = np.uint64(GOLDEN)


def _mix64_np(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> np.uint64(30))
    x = x * _M1
    x = x ^ (x >> np.uint64(27))
    x = x * _M2
    return x ^ (x >> np.uint64(31))


def gnp_rows(n: int, threshold: int, seed: int) -> list[int]:
    """Adjacency rows of a G(n,p) sample.

    Pair (u,v), u<v, in row-major order is pair index k; the pair is an edge
    iff ``mix64(seed + (k+1)*GOLDEN) >> 11 < threshold``.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if n == 1:
        return [0]
    thr = np.uint64(threshold)
    s = np.uint64(seed)
    mat = np.zeros((n, n), dtype=bool)
    offset = 0
    for u in range(n - 1):
        cnt = n - 1 - u
        ks = np.arange(offset + 1, offset + cnt + 1, dtype=np.uint64)
        vals = _mix64_np(s + ks * _GOLD)
        mat[u, u + 1 :] = (vals >> np.uint64(11)) < thr
        offset += cnt
    mat |= mat.T
    packed = np.packbits(mat, axis=1, bitorder="little")
    return [int.from_bytes(packed[u].tobytes(), "little") for u in range(n)]


def max_codegree(rows: list[int], n: int) -> tuple[int, int, int]:
    """Maximum |N(u) ∩ N(v)| over all pairs, with the first maximising pair."""
    if n < 2:
        raise ValueError("need at least two vertices")
    best, bu, bv = -1, 0, 1
    for u in range(n - 1):
        au = rows[u]
        for v in range(u + 1, n):
            c = (au & rows[v]).bit_count()
            if c > best:
                best, bu, bv = c, u, v
    return best, bu, bv


def _bfs_component(rows: list[int], mask: int, start_bit: int) -> int:
    comp = start_bit
    frontier = start_bit
    while frontier:
        nxt = 0
        f = frontier
        while f:
            lb = f & -f
            f ^= lb
            nxt |= rows[lb.bit_length() - 1]
        nxt &= mask & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def _first_articulation(rows: list[int], n: int, mask: int) -> int:
    """Some articulation vertex of the masked graph, or -1 if none.

    Iterative Tarjan; treats each connected component separately.
    """
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    timer = 0
    rem = mask
    while rem:
        lb = rem & -rem
        s = lb.bit_length() - 1
        rem ^= lb
        if disc[s] >= 0:
            continue
        disc[s] = low[s] = timer
        timer += 1
        root_children = 0
        stack = [[s, rows[s] & mask]]
        while stack:
            frame = stack[-1]
            v = frame[0]
            if frame[1]:
                wb = frame[1] & -frame[1]
                frame[1] ^= wb
                w = wb.bit_length() - 1
                if disc[w] < 0:
                    parent[w] = v
                    if v == s:
                        root_children += 1
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append([w, rows[w] & mask])
                elif w != parent[v] and disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                stack.pop()
                p = parent[v]
                if p >= 0:
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if p != s and low[v] >= disc[p]:
                        return p
        if root_children > 1:
            return s
    return -1


def three_connected(rows: list[int], n: int) -> tuple[bool, tuple[int, ...] | None]:
    """Exact 3-connectivity with a witness cut of size <= 2 when false.

    Uses the classical reduction: G is 3-connected iff it has more than 3
    vertices, is connected, has no articulation vertex, and G - b has no
    articulation vertex for any b.
    """
    if n <= 3:
        return False, None
    full = (1 << n) - 1
    if _bfs_component(rows, full, 1) != full:
        return False, ()
    a = _first_articulation(rows, n, full)
    if a >= 0:
        return False, (a,)
    for b in range(n):
        a = _first_articulation(rows, n, full & ~(1 << b))
        if a >= 0:
            return False, tuple(sorted((b, a)))
    return True, None


def forest_embed(
    rows: list[int],
    n: int,
    parents: list[int],
    fdeg: list[int],
    allowed: int,
) -> list[int] | None:
    """Exact backtracking embedding of a forest into the masked host graph.

    ``parents[i]`` is the position (< i) of the forest vertex whose image must
    be adjacent to position ``i``'s image, or -1 for a component root.
    ``fdeg[i]`` is the forest degree of position ``i`` (degree pruning).
    Returns host images by position, or None when no embedding exists.
    """
    k = len(parents)
    images = [0] * k

    def go(pos: int, used: int) -> bool:
        if pos == k:
            return True
        p = parents[pos]
        cand = (allowed if p < 0 else rows[images[p]] & allowed) & ~used
        need = fdeg[pos]
        while cand:
            lb = cand & -cand
            cand ^= lb
            c = lb.bit_length() - 1
            if (rows[c] & allowed).bit_count() < need:
                continue
            images[pos] = c
            if go(pos + 1, used | lb):
                return True
        return False

    return images if go(0, 0) else None


def _anchor_plans(hn: int, hedges: list[tuple[int, int]]):
    """Per directed target edge: the vertex order and constraints used to
    search for a copy of the target through a given host edge."""
    hadj = [0] * hn
    for a, b in hedges:
        hadj[a] |= 1 << b
        hadj[b] |= 1 << a
    hdeg = [hadj[v].bit_count() for v in range(hn)]
    plans = []
    for a, b in hedges:
        for x, y in ((a, b), (b, a)):
            order = [x, y]
            placed = 1 << x | 1 << y
            qi = 0
            while qi < len(order):
                w_bits = hadj[order[qi]] & ~placed
                qi += 1
                while w_bits:
                    lb = w_bits & -w_bits
                    w_bits ^= lb
                    w = lb.bit_length() - 1
                    placed |= lb
                    order.append(w)
            for v0 in range(hn):
                if placed >> v0 & 1:
                    continue
                placed |= 1 << v0
                order.append(v0)
                qi = len(order) - 1
                while qi < len(order):
                    w_bits = hadj[order[qi]] & ~placed
                    qi += 1
                    while w_bits:
                        lb = w_bits & -w_bits
                        w_bits ^= lb
                        placed |= lb
                        order.append(lb.bit_length() - 1)
            pos_of = {hv: i for i, hv in enumerate(order)}
            steps = []
            for i in range(2, hn):
                hv = order[i]
                nbrs = tuple(
                    pos_of[w]
                    for w in range(hn)
                    if hadj[hv] >> w & 1 and pos_of[w] < i
                )
                steps.append((nbrs, hdeg[hv]))
            plans.append((steps, hdeg[x], hdeg[y]))
    return plans


def _copy_through_edge(colrows: list[int], u: int, v: int, plans, full_mask: int) -> bool:
    """Does the colour subgraph contain a target copy using host edge uv?"""
    for steps, dx, dy in plans:
        if colrows[u].bit_count() < dx or colrows[v].bit_count() < dy:
            continue
        if _extend(colrows, steps, 0, [u, v], (1 << u) | (1 << v), full_mask):
            return True
    return False


def _extend(colrows, steps, idx, img, used, full_mask) -> bool:
    if idx == len(steps):
        return True
    nbrs, need = steps[idx]
    if nbrs:
        cand = colrows[img[nbrs[0]]]
        for p in nbrs[1:]:
            cand &= colrows[img[p]]
    else:
        cand = full_mask
    cand &= ~used
    while cand:
        lb = cand & -cand
        cand ^= lb
        w = lb.bit_length() - 1
        if colrows[w].bit_count() < need:
            continue
        img.append(w)
        if _extend(colrows, steps, idx + 1, img, used | lb, full_mask):
            img.pop()
            return True
        img.pop()
    return False


class _Budget(Exception):
    pass


def arrows_search(
    n: int,
    edges: list[tuple[int, int]],
    q: int,
    hn: int,
    hedges: list[tuple[int, int]],
    node_budget: int | None,
    time_budget_s: float | None,
) -> tuple[int, list[int] | None, int]:
    """Exact arrowing decision by backtracking over edge colourings.

    Colours ``edges`` in the given order with incremental monochromatic-copy
    detection; colour symmetry is broken by only allowing one fresh colour at
    a time.  Returns ``(status, colours, nodes)`` with status 1 when every
    colouring contains a monochromatic copy (arrows), 0 when a copy-free
    colouring was found (returned in ``colours``), -1 when a budget tripped.
    """
    plans = _anchor_plans(hn, hedges)
    colrows = [[0] * n for _ in range(q + 1)]
    m = len(edges)
    colours = [0] * m
    full_mask = (1 << n) - 1
    deadline = _time.monotonic() + time_budget_s if time_budget_s is not None else None
    nodes = 0

    def dfs(i: int, used_cols: int) -> bool:
        nonlocal nodes
        if i == m:
            return True
        u, v = edges[i]
        ub, vb = 1 << u, 1 << v
        cmax = used_cols + 1 if used_cols < q else q
        for c in range(1, cmax + 1):
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise _Budget
            if deadline is not None and nodes % 1024 == 0 and _time.monotonic() > deadline:
                raise _Budget
            rows = colrows[c]
            rows[u] |= vb
            rows[v] |= ub
            if not _copy_through_edge(rows, u, v, plans, full_mask):
                colours[i] = c
                if dfs(i + 1, used_cols if c <= used_cols else c):
                    return True
            rows[u] &= ~vb
            rows[v] &= ~ub
        return False

    try:
        found = dfs(0, 0)
    except _Budget:
        return -1, None, nodes
    if found:
        return 0, list(colours), nodes
    return 1, None, nodes
