# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.

Same functions and bit-identical results as ``pykernels``; that module is the
readable reference.  Graphs arrive as Python-int bit rows and are unpacked
into flat uint64 word arrays internally.  The arrowing search is restricted
to hosts with at most 64 vertices (single-word rows); the dispatcher falls
back to the pure kernel above that size.
"""

import time as _time

from libc.stdlib cimport free, malloc
from libc.string cimport memset

from ramsimple._kernels.pykernels import _anchor_plans

cdef extern from *:
    """
    #include <stdint.h>
    static inline int rs_popcount64(uint64_t x){ return __builtin_popcountll(x); }
    static inline int rs_ctz64(uint64_t x){ return __builtin_ctzll(x); }
    static inline uint64_t rs_mix64(uint64_t x){
        x ^= x >> 30; x *= 0xBF58476D1CE4E5B9ULL;
        x ^= x >> 27; x *= 0x94D049BB133111EBULL;
        x ^= x >> 31; return x;
    }
    """
    int rs_popcount64(unsigned long long x) nogil
    int rs_ctz64(unsigned long long x) nogil
    unsigned long long rs_mix64(unsigned long long x) nogil

ctypedef unsigned long long u64

cdef u64 GOLDEN = 0x9E3779B97F4A7C85ULL
cdef u64 ONE = 1ULL


cdef object _words_to_int(u64* src, int W):
    out = bytearray(W * 8)
    cdef unsigned char[::1] mv = out
    cdef int w, b
    cdef u64 x
    for w in range(W):
        x = src[w]
        for b in range(8):
            mv[w * 8 + b] = <unsigned char> (x >> (8 * b))
    return int.from_bytes(bytes(out), "little")


cdef int _int_to_words(object row, int W, u64* dst) except -1:
    b = int(row).to_bytes(W * 8, "little")
    cdef const unsigned char* p = b
    cdef int w, k
    cdef u64 val
    for w in range(W):
        val = 0
        for k in range(8):
            val |= (<u64> p[w * 8 + k]) << (8 * k)
        dst[w] = val
    return 0


cdef u64* _unpack_rows(object rows, int n, int W) except NULL:
    cdef u64* words = <u64*> malloc(<size_t> n * W * sizeof(u64))
    if words == NULL:
        raise MemoryError()
    cdef int u
    try:
        for u in range(n):
            _int_to_words(rows[u], W, words + u * W)
    except BaseException:
        free(words)
        raise
    return words


def gnp_rows(int n, object threshold, object seed):
    if n < 1:
        raise ValueError("need at least one vertex")
    cdef u64 thr = <u64> int(threshold)
    cdef u64 s = <u64> (int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef int W = (n + 63) >> 6
    cdef u64* words = <u64*> malloc(<size_t> n * W * sizeof(u64))
    if words == NULL:
        raise MemoryError()
    memset(words, 0, <size_t> n * W * sizeof(u64))
    cdef u64 k = 0
    cdef int u, v
    cdef u64 val
    with nogil:
        for u in range(n - 1):
            for v in range(u + 1, n):
                k += 1
                val = rs_mix64(s + k * GOLDEN)
                if (val >> 11) < thr:
                    words[u * W + (v >> 6)] |= ONE << (v & 63)
                    words[v * W + (u >> 6)] |= ONE << (u & 63)
    rows = []
    for u in range(n):
        rows.append(_words_to_int(words + u * W, W))
    free(words)
    return rows


def max_codegree(object rows, int n):
    if n < 2:
        raise ValueError("need at least two vertices")
    cdef int W = (n + 63) >> 6
    cdef u64* words = _unpack_rows(rows, n, W)
    cdef int best = -1, bu = 0, bv = 1
    cdef int u, v, w, c
    with nogil:
        for u in range(n - 1):
            for v in range(u + 1, n):
                c = 0
                for w in range(W):
                    c += rs_popcount64(words[u * W + w] & words[v * W + w])
                if c > best:
                    best = c
                    bu = u
                    bv = v
    free(words)
    return best, bu, bv


# -- 3-connectivity ----------------------------------------------------------

cdef int _first_articulation_c(u64* adj, int n, int W, int skip,
                               int* disc, int* low, int* parent,
                               int* sv, int* sw, u64* scur, u64* mask) nogil:
    """Some articulation vertex of the graph minus vertex ``skip`` (or -1)."""
    cdef int i, s, v, w, wi, root_children, depth, p
    cdef u64 x, lb
    cdef int timer = 0
    for i in range(W):
        mask[i] = 0
    for i in range(n):
        if i != skip:
            mask[i >> 6] |= ONE << (i & 63)
    for i in range(n):
        disc[i] = -1
        parent[i] = -1
    for s in range(n):
        if s == skip or disc[s] >= 0:
            continue
        disc[s] = timer
        low[s] = timer
        timer += 1
        root_children = 0
        depth = 0
        sv[0] = s
        sw[0] = 0
        scur[0] = adj[s * W] & mask[0]
        while depth >= 0:
            v = sv[depth]
            x = scur[depth]
            wi = sw[depth]
            while x == 0 and wi + 1 < W:
                wi += 1
                x = adj[v * W + wi] & mask[wi]
            if x != 0:
                lb = x & (~x + 1)
                scur[depth] = x ^ lb
                sw[depth] = wi
                w = wi * 64 + rs_ctz64(lb)
                if disc[w] < 0:
                    parent[w] = v
                    if v == s:
                        root_children += 1
                    disc[w] = timer
                    low[w] = timer
                    timer += 1
                    depth += 1
                    sv[depth] = w
                    sw[depth] = 0
                    scur[depth] = adj[w * W] & mask[0]
                elif w != parent[v] and disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                depth -= 1
                p = parent[v]
                if p >= 0:
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if p != s and low[v] >= disc[p]:
                        return p
        if root_children > 1:
            return s
    return -1


def three_connected(object rows, int n):
    if n <= 3:
        return False, None
    cdef int W = (n + 63) >> 6
    cdef u64* adj = _unpack_rows(rows, n, W)
    cdef int* disc = <int*> malloc(n * sizeof(int))
    cdef int* low = <int*> malloc(n * sizeof(int))
    cdef int* parent = <int*> malloc(n * sizeof(int))
    cdef int* sv = <int*> malloc(n * sizeof(int))
    cdef int* sw = <int*> malloc(n * sizeof(int))
    cdef u64* scur = <u64*> malloc(n * sizeof(u64))
    cdef u64* mask = <u64*> malloc(W * sizeof(u64))
    cdef u64* comp = <u64*> malloc(W * sizeof(u64))
    cdef int i, v, w, head, tail, a, b
    cdef u64 x, lb
    if (disc == NULL or low == NULL or parent == NULL or sv == NULL
            or sw == NULL or scur == NULL or mask == NULL or comp == NULL):
        raise MemoryError()
    result = None
    try:
        for i in range(W):
            comp[i] = 0
        comp[0] = ONE
        head = 0
        tail = 1
        sv[0] = 0
        while head < tail:
            v = sv[head]
            head += 1
            for i in range(W):
                x = adj[v * W + i] & ~comp[i]
                while x:
                    lb = x & (~x + 1)
                    x ^= lb
                    comp[i] |= lb
                    w = i * 64 + rs_ctz64(lb)
                    sv[tail] = w
                    tail += 1
        if tail != n:
            result = (False, ())
        if result is None:
            a = _first_articulation_c(adj, n, W, -1, disc, low, parent, sv, sw, scur, mask)
            if a >= 0:
                result = (False, (a,))
        if result is None:
            for b in range(n):
                a = _first_articulation_c(adj, n, W, b, disc, low, parent, sv, sw, scur, mask)
                if a >= 0:
                    result = (False, tuple(sorted((b, a))))
                    break
        if result is None:
            result = (True, None)
    finally:
        free(adj); free(disc); free(low); free(parent)
        free(sv); free(sw); free(scur); free(mask); free(comp)
    return result


# -- forest embedding ---------------------------------------------------------

cdef bint _fe_go(int pos, int k, u64* host, int W, int* parents, int* fdeg,
                 u64* allowed, u64* used, int* images, int* adeg, u64* scratch) nogil:
    if pos == k:
        return True
    cdef int p = parents[pos]
    cdef u64* cand = scratch + pos * W
    cdef int w, c
    cdef u64 x, lb
    for w in range(W):
        if p < 0:
            cand[w] = allowed[w] & ~used[w]
        else:
            cand[w] = host[images[p] * W + w] & allowed[w] & ~used[w]
    for w in range(W):
        x = cand[w]
        while x:
            lb = x & (~x + 1)
            x ^= lb
            c = w * 64 + rs_ctz64(lb)
            if adeg[c] < fdeg[pos]:
                continue
            images[pos] = c
            used[w] |= lb
            if _fe_go(pos + 1, k, host, W, parents, fdeg, allowed, used, images, adeg, scratch):
                used[w] &= ~lb
                return True
            used[w] &= ~lb
    return False


def forest_embed(object rows, int n, object parents, object fdeg, object allowed):
    cdef int k = len(parents)
    if k == 0:
        return []
    cdef int W = (n + 63) >> 6
    cdef u64* host = _unpack_rows(rows, n, W)
    cdef u64* allw = <u64*> malloc(W * sizeof(u64))
    cdef u64* used = <u64*> malloc(W * sizeof(u64))
    cdef u64* scratch = <u64*> malloc(<size_t> k * W * sizeof(u64))
    cdef int* par = <int*> malloc(k * sizeof(int))
    cdef int* fdg = <int*> malloc(k * sizeof(int))
    cdef int* images = <int*> malloc(k * sizeof(int))
    cdef int* adeg = <int*> malloc(n * sizeof(int))
    cdef int i, w, d
    cdef bint ok
    if (allw == NULL or used == NULL or scratch == NULL or par == NULL
            or fdg == NULL or images == NULL or adeg == NULL):
        raise MemoryError()
    try:
        _int_to_words(allowed, W, allw)
        memset(used, 0, W * sizeof(u64))
        for i in range(k):
            par[i] = parents[i]
            fdg[i] = fdeg[i]
        for i in range(n):
            d = 0
            for w in range(W):
                d += rs_popcount64(host[i * W + w] & allw[w])
            adeg[i] = d
        with nogil:
            ok = _fe_go(0, k, host, W, par, fdg, allw, used, images, adeg, scratch)
        if not ok:
            return None
        return [images[i] for i in range(k)]
    finally:
        free(host); free(allw); free(used); free(scratch)
        free(par); free(fdg); free(images); free(adeg)


# -- arrowing search ----------------------------------------------------------

cdef struct APlan:
    int dx
    int dy

cdef bint _arr_extend(u64* colrow, int base0, int idx, int nsteps,
                      int* step_need, int* step_off, int* step_nbr,
                      int* img, u64 used, u64 full_mask) nogil:
    if idx == nsteps:
        return True
    cdef int base = base0 + idx
    cdef int lo = step_off[base]
    cdef int hi = step_off[base + 1]
    cdef u64 cand
    cdef int j, w
    cdef u64 lb
    if hi > lo:
        cand = colrow[img[step_nbr[lo]]]
        for j in range(lo + 1, hi):
            cand &= colrow[img[step_nbr[j]]]
    else:
        cand = full_mask
    cand &= ~used
    while cand:
        lb = cand & (~cand + 1)
        cand ^= lb
        w = rs_ctz64(lb)
        if rs_popcount64(colrow[w]) < step_need[base]:
            continue
        img[idx + 2] = w
        if _arr_extend(colrow, base0, idx + 1, nsteps, step_need, step_off,
                       step_nbr, img, used | lb, full_mask):
            return True
    return False


cdef bint _arr_copy_through(u64* colrow, int u, int v, int nplans, int nsteps,
                            APlan* plans, int* step_need, int* step_off,
                            int* step_nbr, int* img, u64 full_mask) nogil:
    cdef int pi
    cdef u64 used = (ONE << u) | (ONE << v)
    for pi in range(nplans):
        if rs_popcount64(colrow[u]) < plans[pi].dx:
            continue
        if rs_popcount64(colrow[v]) < plans[pi].dy:
            continue
        img[0] = u
        img[1] = v
        if _arr_extend(colrow, pi * nsteps, 0, nsteps,
                       step_need, step_off, step_nbr, img, used, full_mask):
            return True
    return False


def arrows_search(int n, object edges, int q, int hn, object hedges,
                  object node_budget, object time_budget_s):
    if n > 64:
        raise ValueError("compiled arrows kernel supports n <= 64")
    plans_py = _anchor_plans(hn, hedges)
    cdef int m = len(edges)
    cdef int nplans = len(plans_py)
    cdef int nsteps = hn - 2 if hn >= 2 else 0
    cdef int tot_steps = nplans * nsteps
    cdef u64* colrows = <u64*> malloc(<size_t> (q + 1) * 64 * sizeof(u64))
    cdef int* eu = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* ev = <int*> malloc(max(m, 1) * sizeof(int))
    cdef int* cols = <int*> malloc(max(m, 1) * sizeof(int))
    cdef APlan* plans = <APlan*> malloc(max(nplans, 1) * sizeof(APlan))
    cdef int* step_need = <int*> malloc(max(tot_steps, 1) * sizeof(int))
    cdef int* step_off = <int*> malloc((max(tot_steps, 1) + 1) * sizeof(int))
    cdef int* img = <int*> malloc(max(hn, 2) * sizeof(int))
    cdef int* used_cols = <int*> malloc((m + 1) * sizeof(int))
    cdef int* tried = <int*> malloc((m + 1) * sizeof(int))
    cdef int* step_nbr = NULL
    cdef int pi, si, base, i
    cdef u64 full_mask
    cdef long long budget = -1
    cdef double deadline = -1.0
    cdef long long nodes = 0
    cdef int status, depth, c, u, v, cmax
    cdef bint over_budget = False
    if (colrows == NULL or eu == NULL or ev == NULL or cols == NULL
            or plans == NULL or step_need == NULL or step_off == NULL
            or img == NULL or used_cols == NULL or tried == NULL):
        raise MemoryError()
    try:
        nbr_flat = []
        for pi in range(nplans):
            steps, dx, dy = plans_py[pi]
            plans[pi].dx = dx
            plans[pi].dy = dy
            for si in range(nsteps):
                base = pi * nsteps + si
                step_off[base] = len(nbr_flat)
                step_need[base] = steps[si][1]
                nbr_flat.extend(steps[si][0])
        step_off[tot_steps] = len(nbr_flat)
        step_nbr = <int*> malloc(max(len(nbr_flat), 1) * sizeof(int))
        if step_nbr == NULL:
            raise MemoryError()
        for i in range(len(nbr_flat)):
            step_nbr[i] = nbr_flat[i]
        for i in range(m):
            eu[i] = edges[i][0]
            ev[i] = edges[i][1]
            cols[i] = 0
        memset(colrows, 0, <size_t> (q + 1) * 64 * sizeof(u64))
        full_mask = ((ONE << n) - 1) if n < 64 else <u64> 0xFFFFFFFFFFFFFFFFULL
        if node_budget is not None:
            budget = int(node_budget)
        if time_budget_s is not None:
            deadline = _time.monotonic() + float(time_budget_s)
        used_cols[0] = 0
        tried[0] = 0
        depth = 0
        status = 1
        if m == 0:
            status = 0
        else:
            while depth >= 0:
                if depth == m:
                    status = 0
                    break
                u = eu[depth]
                v = ev[depth]
                c = tried[depth]
                if c > 0:
                    colrows[c * 64 + u] &= ~(ONE << v)
                    colrows[c * 64 + v] &= ~(ONE << u)
                cmax = used_cols[depth] + 1 if used_cols[depth] < q else q
                c += 1
                if c > cmax:
                    tried[depth] = 0
                    depth -= 1
                    continue
                tried[depth] = c
                nodes += 1
                if budget >= 0 and nodes > budget:
                    over_budget = True
                    break
                if deadline > 0 and (nodes & 1023) == 0:
                    if _time.monotonic() > deadline:
                        over_budget = True
                        break
                colrows[c * 64 + u] |= ONE << v
                colrows[c * 64 + v] |= ONE << u
                if not _arr_copy_through(colrows + c * 64, u, v, nplans, nsteps,
                                         plans, step_need, step_off, step_nbr,
                                         img, full_mask):
                    cols[depth] = c
                    used_cols[depth + 1] = used_cols[depth] if c <= used_cols[depth] else c
                    depth += 1
                    tried[depth] = 0
        if over_budget:
            result = (-1, None, int(nodes))
        elif status == 0:
            result = (0, [cols[i] for i in range(m)], int(nodes))
        else:
            result = (1, None, int(nodes))
    finally:
        free(colrows); free(eu); free(ev); free(cols); free(plans)
        free(step_need); free(step_off); free(img)
        free(used_cols); free(tried)
        if step_nbr != NULL:
            free(step_nbr)
    return result
