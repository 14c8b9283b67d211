"""Exact shortest-path distance oracle: 2-hop-cover labels plus helpers.

``build_index`` labels landmarks in descending-degree order (ties by
ascending id) so that any pairwise distance is the minimum of label-pair
sums through a common landmark.  Queries are exact, symmetric, and return
``inf`` across components.  A plain Dijkstra (scipy) is exposed alongside
as the independent testing oracle, and ``reconstruct_path`` materializes an
actual node path by walking distance-consistent predecessors.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra as _scipy_dijkstra

from . import _pll
from .errors import LoadError, UnreachableError
from .network import ExpertNetwork

__all__ = [
    "DistanceIndex",
    "build_index",
    "query_distance",
    "reconstruct_path",
    "dijkstra_distances",
    "save_index",
    "load_index",
    "cached_index",
]

PATH_TOL = 1e-9


@dataclass
class DistanceIndex:
    """Flat CSR label store: per node, (landmark order-index, distance) pairs.

    ``order[k]`` is the node id of the k-th landmark; labels reference the
    order index ``k`` so per-node lists are sorted by construction.
    """

    n: int
    order: np.ndarray       # int32, landmark position -> node id
    offsets: np.ndarray     # int64, n+1
    lab_lm: np.ndarray      # int32, flat order indices
    lab_d: np.ndarray       # float64, flat distances

    def label(self, u: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.offsets[u], self.offsets[u + 1]
        return self.lab_lm[lo:hi], self.lab_d[lo:hi]

    def query(self, u: int, v: int) -> float:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise KeyError(f"unknown expert id in query ({u},{v})")
        if u == v:
            return 0.0
        lu, du = self.label(u)
        lv, dv = self.label(v)
        common, iu, iv = np.intersect1d(lu, lv, assume_unique=True, return_indices=True)
        if common.size == 0:
            return float("inf")
        return float(np.min(du[iu] + dv[iv]))

    def dist_from(self, u: int) -> np.ndarray:
        """Distances from ``u`` to every node, as one vectorized pass."""
        lu, du = self.label(u)
        cover = np.full(self.n, np.inf)
        cover[lu] = du
        totals = np.append(self.lab_d + cover[self.lab_lm], np.inf)
        return np.minimum.reduceat(totals, self.offsets[:-1])

    def min_adjusted_to_targets(
        self, targets: np.ndarray, kd: float, addends: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Per-root minimum of ``kd * DIST(root, v) + off(v)`` over targets.

        Swaps the min through the labels: for each landmark h, find the best
        ``kd*d(h,v)+off(v)`` over targets labeled by h, then for every root
        take the min of ``kd*d(root,h) + best[h]`` over its own label.  Exact
        up to float regrouping; used to rank roots at scale.

        Returns ``(per_root, best, argbest)`` where ``best``/``argbest`` give,
        per landmark, the winning value and target (so callers can recover a
        witness target for any root without extra distance queries).
        """
        starts = self.offsets[targets]
        counts = (self.offsets[targets + 1] - starts).astype(np.int64)
        total = int(counts.sum())
        best = np.full(self.n, np.inf)
        argbest = np.full(self.n, -1, dtype=np.int64)
        if total:
            base = np.repeat(starts - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
            flat = base + np.arange(total)
            keys = self.lab_lm[flat]
            towner = np.repeat(targets, counts)
            vals = kd * self.lab_d[flat] + np.repeat(addends, counts)
            # grouped min per landmark: sort by (key, val, target) once, first wins
            order = np.lexsort((towner, vals, keys))
            keys_sorted = keys[order]
            boundary = np.ones(total, dtype=bool)
            boundary[1:] = keys_sorted[1:] != keys_sorted[:-1]
            best[keys_sorted[boundary]] = vals[order][boundary]
            argbest[keys_sorted[boundary]] = towner[order][boundary]
        totals = np.append(kd * self.lab_d + best[self.lab_lm], np.inf)
        per_root = np.minimum.reduceat(totals, self.offsets[:-1])
        return per_root, best, argbest

    def best_target_for(self, root: int, kd: float, best: np.ndarray, argbest: np.ndarray) -> int:
        """Witness target achieving ``min kd*DIST(root,v)+off(v)`` from the
        tables produced by :meth:`min_adjusted_to_targets`; -1 if none."""
        lm, dd = self.label(root)
        vals = kd * dd + best[lm]
        j = int(np.argmin(vals))
        if not np.isfinite(vals[j]):
            return -1
        return int(argbest[lm[j]])

    @property
    def total_label_entries(self) -> int:
        return int(self.offsets[-1])


def _landmark_order(network: ExpertNetwork) -> np.ndarray:
    # descending degree, ties by ascending id
    return np.lexsort((np.arange(network.n), -network.degrees)).astype(np.int32)


def build_index(network: ExpertNetwork) -> DistanceIndex:
    """Build the 2-hop-cover index; exact for all connected pairs."""
    order = _landmark_order(network)
    offsets, lab_lm, lab_d = _pll.build_labels(
        network.indptr, network.indices, network.csr_weights, order
    )
    return DistanceIndex(network.n, order, offsets, lab_lm, lab_d)


def query_distance(index: DistanceIndex, u: int, v: int) -> float:
    """Exact shortest-path distance, ``inf`` across components."""
    return index.query(u, v)


def dijkstra_distances(network: ExpertNetwork, source: int) -> np.ndarray:
    """Independent oracle: single-source Dijkstra via scipy.csgraph."""
    mat = _scipy_matrix(network)
    return _scipy_dijkstra(mat, directed=False, indices=source)


def _scipy_matrix(network: ExpertNetwork) -> sp.csr_matrix:
    if not hasattr(network, "_scipy_csr"):
        rows, cols, vals = [], [], []
        for u, v, w in network.edge_list:
            rows.append(u)
            cols.append(v)
            vals.append(w)
        network._scipy_csr = sp.csr_matrix(
            (vals, (rows, cols)), shape=(network.n, network.n)
        )
    return network._scipy_csr


def reconstruct_path(
    index: DistanceIndex, network: ExpertNetwork, u: int, v: int
) -> list[int]:
    """A shortest path from u to v as an ordered node list.

    Walks backward from v: at each node, step to the lowest-id neighbor x
    whose distance from u plus the edge weight matches the current node's
    distance (within 1e-9).  Requires a finite distance.
    """
    dist_to = index.dist_from(u)
    return walk_path(network, dist_to, u, v)


def shortest_path_tree(network: ExpertNetwork, dist_from_root: np.ndarray) -> np.ndarray:
    """Lowest-id predecessor per node consistent with the distance array.

    parent[x] is the smallest-id neighbor y with dist[y] + w(y,x) = dist[x]
    (within 1e-9); -1 for the root and for unreachable nodes.  One vectorized
    pass over the CSR adjacency.
    """
    n = network.n
    indptr, indices, weights = network.indptr, network.indices, network.csr_weights
    parent = np.full(n, -1, dtype=np.int64)
    if indices.size == 0:
        return parent
    owner = np.repeat(np.arange(n), np.diff(indptr))
    ok = np.abs(dist_from_root[indices] + weights - dist_from_root[owner]) <= PATH_TOL
    ok &= np.isfinite(dist_from_root[owner]) & (dist_from_root[owner] > 0)
    pos = np.where(ok, np.arange(indices.size), indices.size)
    pos = np.append(pos, indices.size)
    first = np.minimum.reduceat(pos, indptr[:-1])
    valid = (indptr[:-1] != indptr[1:]) & (first < indptr[1:])
    parent[valid] = indices[first[valid]]
    return parent


def walk_path(network: ExpertNetwork, dist_from_root: np.ndarray, root: int, v: int) -> list[int]:
    """Predecessor walk using a precomputed distance-from-root array."""
    if not np.isfinite(dist_from_root[v]):
        raise UnreachableError(f"no finite distance between {root} and {v}")
    path = [v]
    cur = v
    seen = {v}
    for _ in range(network.n + 1):
        if cur == root:
            return path[::-1]
        nbrs = network.neighbors(cur)
        wts = network.neighbor_weights(cur)
        d_cur = dist_from_root[cur]
        nxt = -1
        for x, w in zip(nbrs, wts):
            if x in seen:
                continue
            if abs(dist_from_root[x] + w - d_cur) <= PATH_TOL:
                nxt = int(x)
                break
        if nxt < 0:
            raise UnreachableError(
                f"predecessor walk stalled at node {cur} on the way {root}->{v}"
            )
        path.append(nxt)
        seen.add(nxt)
        cur = nxt
    raise UnreachableError(f"predecessor walk exceeded n steps for {root}->{v}")


# -- label cache file -------------------------------------------------------
#
# Layout: magic "ETDI", version byte, network hash (hex, varint-length), node
# count varint, landmark order (n varints), then per node: label length
# varint followed by (order-index varint, float64 LE distance) pairs.

_MAGIC = b"ETDI"
_VERSION = 1


def _write_varint(out: bytearray, value: int) -> None:
    while True:
        b = value & 0x7F
        value >>= 7
        if value:
            out.append(b | 0x80)
        else:
            out.append(b)
            return


def _read_varint(buf: bytes, pos: int) -> tuple[int, int]:
    shift = 0
    result = 0
    while True:
        b = buf[pos]
        pos += 1
        result |= (b & 0x7F) << shift
        if not b & 0x80:
            return result, pos
        shift += 7


def save_index(index: DistanceIndex, path: str | Path, network_hash: str) -> None:
    out = bytearray()
    out += _MAGIC
    out.append(_VERSION)
    digest = network_hash.encode()
    _write_varint(out, len(digest))
    out += digest
    _write_varint(out, index.n)
    for node in index.order:
        _write_varint(out, int(node))
    for i in range(index.n):
        lo, hi = int(index.offsets[i]), int(index.offsets[i + 1])
        _write_varint(out, hi - lo)
        for j in range(lo, hi):
            _write_varint(out, int(index.lab_lm[j]))
            out += struct.pack("<d", index.lab_d[j])
    Path(path).write_bytes(bytes(out))


def load_index(path: str | Path, expected_hash: str | None = None) -> DistanceIndex:
    buf = Path(path).read_bytes()
    if buf[:4] != _MAGIC:
        raise LoadError("bad index cache", f"{path}: not an index cache file")
    if buf[4] != _VERSION:
        raise LoadError("bad index cache", f"{path}: unsupported version {buf[4]}")
    pos = 5
    hlen, pos = _read_varint(buf, pos)
    digest = buf[pos: pos + hlen].decode()
    pos += hlen
    if expected_hash is not None and digest != expected_hash:
        raise LoadError("stale index cache", f"{path}: cache was built for a different network")
    n, pos = _read_varint(buf, pos)
    order = np.empty(n, dtype=np.int32)
    for k in range(n):
        order[k], pos = _read_varint(buf, pos)
    offsets = np.zeros(n + 1, dtype=np.int64)
    lms: list[int] = []
    ds: list[float] = []
    for i in range(n):
        length, pos = _read_varint(buf, pos)
        offsets[i + 1] = offsets[i] + length
        for _ in range(length):
            lm, pos = _read_varint(buf, pos)
            (d,) = struct.unpack_from("<d", buf, pos)
            pos += 8
            lms.append(lm)
            ds.append(d)
    return DistanceIndex(
        n, order, offsets, np.array(lms, dtype=np.int32), np.array(ds, dtype=np.float64)
    )


def cached_index(network: ExpertNetwork, cache_dir: str | Path, tag: str = "base") -> DistanceIndex:
    """Build-or-load an index keyed by the network content hash and a tag."""
    digest = network.content_hash()
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / f"{digest[:32]}.{tag}.etdi"
    if path.exists():
        try:
            return load_index(path, expected_hash=digest)
        except LoadError:
            path.unlink()
    index = build_index(network)
    save_index(index, path, digest)
    return index
