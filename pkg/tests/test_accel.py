"""The numba kernels and their numpy fallbacks must agree exactly."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from invbundles import _kernels as K

PROBE = r"""
import hashlib, json
from invbundles._accel import NUMBA_ENABLED
from invbundles.chartable import character_table, verify_orthogonality
from invbundles.group import SL2, PSL2, build_group, brute_force_classes
out = {"numba": NUMBA_ENABLED}
for p in (11, 13):
    for v in (SL2, PSL2):
        G = build_group(p, v)
        bf = brute_force_classes(G)
        T = character_table(G)
        out[f"{p}{v}"] = [hashlib.sha256(bf.labels.tobytes()).hexdigest(),
                          verify_orthogonality(T).ok,
                          json.dumps(T.to_json(), sort_keys=True)]
print(json.dumps(out))
"""


def _probe(disable):
    env = dict(os.environ)
    env.pop("INVBUNDLES_DISABLE_NUMBA", None)
    if disable:
        env["INVBUNDLES_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def test_fallback_gives_identical_results():
    fast, slow = _probe(False), _probe(True)
    assert slow.pop("numba") is False
    fast.pop("numba")
    assert fast == slow


@pytest.mark.parametrize("p", [7, 11])
def test_label_kernels_agree(p):
    elems = K.enumerate_sl2(p)
    lookup = np.full(p ** 4, -1, dtype=np.int64)
    codes = ((elems[:, 0] * p + elems[:, 1]) * p + elems[:, 2]) * p + elems[:, 3]
    lookup[codes] = np.arange(len(elems))
    assert np.array_equal(K._labels_union_find(elems, lookup, p, False),
                          K._labels_propagate(elems, lookup, p, False))


def test_gram_kernels_agree():
    rng = np.random.default_rng(1)
    rows, positions, M = 6, 9, 56
    counts = rng.integers(0, 5, size=rows * positions)
    ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    exps = rng.integers(0, M, size=ptr[-1]).astype(np.int64)
    coefs = rng.integers(-3, 4, size=ptr[-1]).astype(np.int64)
    w = rng.integers(1, 9, size=positions).astype(np.int64)
    args = (ptr, exps, coefs, ptr, exps, coefs, w, rows, rows, positions, M)
    assert np.array_equal(K._gram_numba(*args), K._gram_numpy(*args))
