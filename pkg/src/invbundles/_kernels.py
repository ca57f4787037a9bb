"""Hot loops. Each public function dispatches to a numba kernel or a numpy path.

``INVBUNDLES_DISABLE_NUMBA=1`` selects the numpy path everywhere (see ``_accel``).
"""

from __future__ import annotations

import numpy as np

from ._accel import NUMBA_ENABLED, njit

# -- group enumeration ------------------------------------------------------------


def enumerate_sl2(p: int) -> np.ndarray:
    a, b, c = np.meshgrid(np.arange(p), np.arange(p), np.arange(p), indexing="ij")
    a, b, c = a.ravel(), b.ravel(), c.ravel()
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(int(x), p - 2, p) for x in range(1, p)]
    nz = a != 0
    d = (1 + b[nz] * c[nz]) * inv[a[nz]] % p
    rows = [np.stack([a[nz], b[nz], c[nz], d], axis=1)]
    # a == 0 forces b*c == -1, d free
    bb = np.arange(1, p)
    cc = (-inv[bb]) % p
    dd = np.arange(p)
    B, D = np.meshgrid(bb, dd, indexing="ij")
    C = np.broadcast_to(cc[:, None], B.shape)
    rows.append(np.stack([np.zeros(B.size, dtype=np.int64), B.ravel(), C.ravel(), D.ravel()], axis=1))
    return np.concatenate(rows).astype(np.int64)


def projective_normalize(m: np.ndarray, p: int) -> np.ndarray:
    m = np.array(m, dtype=np.int64, copy=True)
    first = np.where(m[:, 0] != 0, m[:, 0], m[:, 1])
    flip = first > (p - 1) // 2
    m[flip] = (-m[flip]) % p
    return m


# -- conjugation partition ------------------------------------------------------------


@njit(cache=True)
def _conj(m0, m1, m2, m3, g0, g1, g2, g3, p):
    # g m g^{-1} with det g = 1
    h0, h1, h2, h3 = g3, (p - g1) % p, (p - g2) % p, g0
    t0 = (g0 * m0 + g1 * m2) % p
    t1 = (g0 * m1 + g1 * m3) % p
    t2 = (g2 * m0 + g3 * m2) % p
    t3 = (g2 * m1 + g3 * m3) % p
    return (
        (t0 * h0 + t1 * h2) % p,
        (t0 * h1 + t1 * h3) % p,
        (t2 * h0 + t3 * h2) % p,
        (t2 * h1 + t3 * h3) % p,
    )


@njit(cache=True)
def _normalize_one(a, b, c, d, p):
    first = a if a != 0 else b
    if first > (p - 1) // 2:
        return (p - a) % p, (p - b) % p, (p - c) % p, (p - d) % p
    return a, b, c, d


@njit(cache=True)
def _find(parent, i):
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        nxt = parent[i]
        parent[i] = root
        i = nxt
    return root


@njit(cache=True)
def _labels_union_find(elems, lookup, p, projective):
    n = elems.shape[0]
    parent = np.arange(n)
    gens = np.array([[0, p - 1, 1, 0], [1, 1, 0, 1]], dtype=np.int64)
    for i in range(n):
        for k in range(2):
            a, b, c, d = _conj(elems[i, 0], elems[i, 1], elems[i, 2], elems[i, 3],
                               gens[k, 0], gens[k, 1], gens[k, 2], gens[k, 3], p)
            if projective:
                a, b, c, d = _normalize_one(a, b, c, d, p)
            j = lookup[((a * p + b) * p + c) * p + d]
            ri = _find(parent, i)
            rj = _find(parent, j)
            if ri != rj:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        out[i] = _find(parent, i)
    return out


def _conj_numpy(elems, g, p):
    g0, g1, g2, g3 = g
    h = np.array([g3, -g1 % p, -g2 % p, g0])
    m = elems
    t0 = (g0 * m[:, 0] + g1 * m[:, 2]) % p
    t1 = (g0 * m[:, 1] + g1 * m[:, 3]) % p
    t2 = (g2 * m[:, 0] + g3 * m[:, 2]) % p
    t3 = (g2 * m[:, 1] + g3 * m[:, 3]) % p
    return np.stack([
        (t0 * h[0] + t1 * h[2]) % p,
        (t0 * h[1] + t1 * h[3]) % p,
        (t2 * h[0] + t3 * h[2]) % p,
        (t2 * h[1] + t3 * h[3]) % p,
    ], axis=1)


def _labels_propagate(elems, lookup, p, projective):
    n = elems.shape[0]
    nbrs = []
    for g in ((0, p - 1, 1, 0), (1, 1, 0, 1)):
        c = _conj_numpy(elems, g, p)
        if projective:
            c = projective_normalize(c, p)
        nbrs.append(lookup[((c[:, 0] * p + c[:, 1]) * p + c[:, 2]) * p + c[:, 3]])
    labels = np.arange(n)
    while True:
        new = labels.copy()
        for nb in nbrs:
            np.minimum(new, labels[nb], out=new)
            # propagate backwards along the same edge
            np.minimum.at(new, nb, labels)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def conjugation_labels(elems: np.ndarray, p: int, projective: bool) -> np.ndarray:
    """Smallest element index in the conjugacy class of every element."""
    elems = np.ascontiguousarray(elems, dtype=np.int64)
    lookup = np.full(p ** 4, -1, dtype=np.int64)
    codes = ((elems[:, 0] * p + elems[:, 1]) * p + elems[:, 2]) * p + elems[:, 3]
    lookup[codes] = np.arange(len(elems))
    if NUMBA_ENABLED:
        return _labels_union_find(elems, lookup, p, projective)
    return _labels_propagate(elems, lookup, p, projective)


# -- exact Gram accumulation ------------------------------------------------------------
#
# Terms live in CSR form: the terms of (row a, position t) are
# exps[ptr[a * npos + t] : ptr[a * npos + t + 1]] with integer coefficients.
# acc[a, b, (ea - eb) mod M] += w[t] * ca * cb realises sum_t w_t f_a(t) conj(f_b(t))
# for sums of roots of unity of order dividing M.


@njit(cache=True)
def _gram_numba(ptr_a, exp_a, coef_a, ptr_b, exp_b, coef_b, weights, na, nb, npos, M):
    acc = np.zeros((na, nb, M), dtype=np.int64)
    for t in range(npos):
        w = weights[t]
        for a in range(na):
            s0 = ptr_a[a * npos + t]
            s1 = ptr_a[a * npos + t + 1]
            if s0 == s1:
                continue
            for b in range(nb):
                r0 = ptr_b[b * npos + t]
                r1 = ptr_b[b * npos + t + 1]
                for x in range(s0, s1):
                    ea = exp_a[x]
                    wc = w * coef_a[x]
                    for y in range(r0, r1):
                        d = (ea - exp_b[y]) % M
                        acc[a, b, d] += wc * coef_b[y]
    return acc


def _gram_numpy(ptr_a, exp_a, coef_a, ptr_b, exp_b, coef_b, weights, na, nb, npos, M):
    acc = np.zeros(na * nb * M, dtype=np.int64)

    def expand(ptr, n, t):
        starts = ptr[np.arange(n) * npos + t]
        ends = ptr[np.arange(n) * npos + t + 1]
        counts = ends - starts
        rows = np.repeat(np.arange(n), counts)
        idx = np.concatenate([np.arange(s, e) for s, e in zip(starts, ends)]) if counts.sum() else np.zeros(0, dtype=np.int64)
        return rows, idx

    for t in range(npos):
        ra, ia = expand(ptr_a, na, t)
        rb, ib = expand(ptr_b, nb, t)
        if not len(ia) or not len(ib):
            continue
        d = (exp_a[ia][:, None] - exp_b[ib][None, :]) % M
        v = weights[t] * coef_a[ia][:, None] * coef_b[ib][None, :]
        key = (ra[:, None] * nb + rb[None, :]) * M + d
        np.add.at(acc, key.ravel(), v.ravel())
    return acc.reshape(na, nb, M)


def gram_accumulate(ptr_a, exp_a, coef_a, ptr_b, exp_b, coef_b, weights, na, nb, npos, M):
    args = (
        np.ascontiguousarray(ptr_a, dtype=np.int64),
        np.ascontiguousarray(exp_a, dtype=np.int64),
        np.ascontiguousarray(coef_a, dtype=np.int64),
        np.ascontiguousarray(ptr_b, dtype=np.int64),
        np.ascontiguousarray(exp_b, dtype=np.int64),
        np.ascontiguousarray(coef_b, dtype=np.int64),
        np.ascontiguousarray(weights, dtype=np.int64),
        int(na), int(nb), int(npos), int(M),
    )
    if NUMBA_ENABLED:
        return _gram_numba(*args)
    return _gram_numpy(*args)
