"""Pruned-landmark-labeling build kernel.

One pruned Dijkstra per landmark, in a fixed landmark order.  A popped node
is labeled only when the labels accumulated so far cannot already prove an
equal-or-shorter distance (the 2-hop pruning rule); the search does not
expand past pruned nodes.  Labels store landmark *order indices*, so every
per-node label list is naturally sorted.

The kernel is plain Python written array-style so the exact same source runs
under numba's ``njit`` (used when importable) or as a slow interpreter
fallback (``EXPERT_TEAMS_NO_JIT=1`` forces the fallback, used in tests).
"""

from __future__ import annotations

import os

import numpy as np

INF = np.inf


def _heap_push(keys, ids, size, key, ident):
    i = size
    keys[i] = key
    ids[i] = ident
    while i > 0:
        p = (i - 1) >> 1
        if keys[p] <= keys[i]:
            break
        keys[p], keys[i] = keys[i], keys[p]
        ids[p], ids[i] = ids[i], ids[p]
        i = p
    return size + 1


def _heap_pop(keys, ids, size):
    key = keys[0]
    ident = ids[0]
    size -= 1
    keys[0] = keys[size]
    ids[0] = ids[size]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        r = l + 1
        c = l
        if r < size and keys[r] < keys[l]:
            c = r
        if keys[i] <= keys[c]:
            break
        keys[i], keys[c] = keys[c], keys[i]
        ids[i], ids[c] = ids[c], ids[i]
        i = c
    return key, ident, size


def _pll_pass(
    indptr,
    indices,
    weights,
    order,
    lab_lm,
    lab_d,
    lab_len,
    start_k,
    dist,
    root_cover,
    heap_keys,
    heap_ids,
    touched,
    appended,
):
    """Label all landmarks from position ``start_k`` on.

    Returns -1 when done, or the landmark position at which a node's label
    row ran out of capacity; the caller grows the label arrays and resumes
    from that position (partial appends for that landmark are rolled back).
    """
    n = order.shape[0]
    cap = lab_lm.shape[1]
    for k in range(start_k, n):
        root = order[k]
        for j in range(lab_len[root]):
            root_cover[lab_lm[root, j]] = lab_d[root, j]
        heap_size = _heap_push(heap_keys, heap_ids, 0, 0.0, root)
        dist[root] = 0.0
        touched[0] = root
        n_touched = 1
        n_appended = 0
        overflow = False
        while heap_size > 0:
            d, u, heap_size = _heap_pop(heap_keys, heap_ids, heap_size)
            if d > dist[u]:
                continue
            if u != root:
                q = INF
                for j in range(lab_len[u]):
                    c = root_cover[lab_lm[u, j]]
                    if c < INF:
                        t = lab_d[u, j] + c
                        if t < q:
                            q = t
                if q <= d:
                    continue
            if lab_len[u] >= cap:
                overflow = True
                break
            lab_lm[u, lab_len[u]] = k
            lab_d[u, lab_len[u]] = d
            lab_len[u] += 1
            appended[n_appended] = u
            n_appended += 1
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                nd = d + weights[e]
                if nd < dist[v]:
                    if dist[v] == INF:
                        touched[n_touched] = v
                        n_touched += 1
                    dist[v] = nd
                    heap_size = _heap_push(heap_keys, heap_ids, heap_size, nd, v)
        for j in range(n_touched):
            dist[touched[j]] = INF
        for j in range(lab_len[root]):
            root_cover[lab_lm[root, j]] = INF
        if overflow:
            for j in range(n_appended):
                lab_len[appended[j]] -= 1
            return k
    return -1


if not os.environ.get("EXPERT_TEAMS_NO_JIT"):
    try:
        from numba import njit

        _heap_push = njit(cache=True)(_heap_push)
        _heap_pop = njit(cache=True)(_heap_pop)
        _pll_pass = njit(cache=True)(_pll_pass)
    except ImportError:  # pragma: no cover
        pass


def build_labels(indptr, indices, weights, order, initial_capacity=16):
    """Run the kernel with growing label capacity; returns flat CSR labels.

    Output: ``offsets`` (int64, n+1), ``lab_lm`` (int32 landmark order
    indices, ascending per node), ``lab_d`` (float64 distances).
    """
    n = order.shape[0]
    m2 = indices.shape[0]
    cap = int(initial_capacity)
    lab_lm = np.zeros((n, cap), dtype=np.int32)
    lab_d = np.zeros((n, cap), dtype=np.float64)
    lab_len = np.zeros(n, dtype=np.int32)
    dist = np.full(n, INF, dtype=np.float64)
    root_cover = np.full(n, INF, dtype=np.float64)
    heap_keys = np.empty(m2 + n + 2, dtype=np.float64)
    heap_ids = np.empty(m2 + n + 2, dtype=np.int32)
    touched = np.empty(n, dtype=np.int32)
    appended = np.empty(n, dtype=np.int32)

    start_k = 0
    while True:
        res = _pll_pass(
            indptr, indices, weights, order,
            lab_lm, lab_d, lab_len, start_k,
            dist, root_cover, heap_keys, heap_ids, touched, appended,
        )
        if res < 0:
            break
        start_k = int(res)
        cap *= 2
        grown_lm = np.zeros((n, cap), dtype=np.int32)
        grown_d = np.zeros((n, cap), dtype=np.float64)
        grown_lm[:, : lab_lm.shape[1]] = lab_lm
        grown_d[:, : lab_d.shape[1]] = lab_d
        lab_lm, lab_d = grown_lm, grown_d

    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(lab_len, out=offsets[1:])
    total = int(offsets[-1])
    flat_lm = np.empty(total, dtype=np.int32)
    flat_d = np.empty(total, dtype=np.float64)
    for i in range(n):
        lo, hi = offsets[i], offsets[i + 1]
        flat_lm[lo:hi] = lab_lm[i, : lab_len[i]]
        flat_d[lo:hi] = lab_d[i, : lab_len[i]]
    return offsets, flat_lm, flat_d
