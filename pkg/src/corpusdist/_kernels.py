"""Numeric kernels for chi-square term accumulation over encoded profiles.

Two interchangeable backends compute the same sums over int64 token-id /
float64 frequency arrays: numba-jitted loops (default whenever numba
imports) and pure-numpy vectorized fallbacks. Set ``CORPUSDIST_NUMBA=0``
to force the numpy path; ``benchmarks/bench_backends.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    numba = None
    HAVE_NUMBA = False

_FLAG = os.environ.get("CORPUSDIST_NUMBA", "auto").strip().lower()
NUMBA_ENABLED = HAVE_NUMBA and _FLAG not in {"0", "off", "false", "no", "numpy"}
ACTIVE_BACKEND = "numba" if NUMBA_ENABLED else "numpy"


def _directed_loop(top_ids, top_f, lookup_ids, lookup_f):
    # lookup_ids must be sorted ascending; binary-search each top token.
    score = 0.0
    missing = 0
    n_lookup = lookup_ids.shape[0]
    for i in range(top_ids.shape[0]):
        token = top_ids[i]
        lo = 0
        hi = n_lookup
        while lo < hi:
            mid = (lo + hi) // 2
            if lookup_ids[mid] < token:
                lo = mid + 1
            else:
                hi = mid
        if lo < n_lookup and lookup_ids[lo] == token:
            diff = top_f[i] - lookup_f[lo]
            score += diff * diff / top_f[i]
        else:
            # Missing word contributes its own relative frequency,
            # the (f - 0)^2 / f specialization taken exactly.
            score += top_f[i]
            missing += 1
    return score, missing


def _symmetric_loop(f_a, f_b):
    score = 0.0
    for i in range(f_a.shape[0]):
        diff = f_a[i] - f_b[i]
        score += diff * diff / (f_a[i] + f_b[i])
    return score


def directed_terms_numpy(top_ids, top_f, lookup_ids, lookup_f):
    """Vectorized twin of the directed-term loop."""
    if lookup_ids.size == 0:
        return float(top_f.sum()), int(top_ids.size)
    pos = np.searchsorted(lookup_ids, top_ids)
    pos_c = np.minimum(pos, lookup_ids.size - 1)
    found = (pos < lookup_ids.size) & (lookup_ids[pos_c] == top_ids)
    other = np.where(found, lookup_f[pos_c], 0.0)
    diff = top_f - other
    terms = np.where(found, diff * diff / top_f, top_f)
    return float(terms.sum()), int(top_ids.size - int(found.sum()))


def symmetric_terms_numpy(f_a, f_b):
    """Vectorized twin of the symmetric-term loop."""
    diff = f_a - f_b
    return float((diff * diff / (f_a + f_b)).sum())


if HAVE_NUMBA:
    directed_terms_numba = numba.njit(cache=True, nogil=True)(_directed_loop)
    symmetric_terms_numba = numba.njit(cache=True, nogil=True)(_symmetric_loop)
else:  # pragma: no cover
    directed_terms_numba = None
    symmetric_terms_numba = None

if NUMBA_ENABLED:
    directed_terms = directed_terms_numba
    symmetric_terms = symmetric_terms_numba
else:
    directed_terms = directed_terms_numpy
    symmetric_terms = symmetric_terms_numpy


def warmup() -> None:
    """Trigger JIT compilation (a no-op on the numpy backend)."""
    ids = np.arange(4, dtype=np.int64)
    freqs = np.full(4, 0.25, dtype=np.float64)
    directed_terms(ids, freqs, ids[:2], freqs[:2])
    symmetric_terms(freqs, freqs)
