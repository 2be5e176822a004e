"""Tor^A(psi^n(A), M) from the two-sided bar construction.

This is an independent route to the twisted Hochschild homology: the chains
Q (x) A^{(x)s} (x) M are enumerated tuple by tuple and each face is written
out by hand, sharing no assembly code with :mod:`frobhh.hochschild`.
"""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import AlgebraPresentation, psi
from .bimodule import LeftModule
from .fq import field_make, rank
from .hochschild import CapExceeded, default_entry_cap


def _slot_basis(a: AlgebraPresentation, normalized: bool):
    """Slot vectors plus a function giving slot coordinates of a product."""
    p, d = a.p, a.dim
    if not normalized:
        vecs = [a.basis_vector(i) for i in range(d)]
        return vecs, lambda v: v
    # unit first, then the standard vectors it does not replace
    lead = int(np.flatnonzero(a.unit)[0])
    inv_lead = pow(int(a.unit[lead]), p - 2, p)
    others = [c for c in range(d) if c != lead]
    vecs = [a.basis_vector(c) for c in others]

    def coords(v):
        # v = lam * unit + sum_c w_c e_c, solve for w on the complement
        lam = int(v[lead]) * inv_lead % p
        w = (v.astype(np.int64) - lam * a.unit.astype(np.int64)) % p
        return w[others]

    return vecs, coords


def _act(acts, u, p):
    out = np.zeros_like(acts[0], dtype=np.int64)
    for c, m in zip(u, acts):
        if c:
            out = out + int(c) * m.astype(np.int64)
    return out % p


def bar_complex(a: AlgebraPresentation, q_act, m_act, smax: int, normalized: bool = True,
                cap: int | None = None):
    """Boundary matrices d_1..d_smax of Q (x)_A Bar(A) (x)_A M.

    ``q_act`` and ``m_act`` list the action matrices of the algebra basis on
    the right module Q and the left module M.
    """
    p = a.p
    cap = default_entry_cap() if cap is None else cap
    vecs, coords = _slot_basis(a, normalized)
    s_dim = len(vecs)
    dq = q_act[0].shape[0] if q_act else 0
    dm = m_act[0].shape[0] if m_act else 0
    dims = [dq * s_dim**s * dm for s in range(smax + 1)]
    for s in range(1, smax + 1):
        if dims[s] * dims[s - 1] > cap:
            raise CapExceeded(f"bar complex degree {s} needs {dims[s] * dims[s - 1]} entries > cap {cap}")
    slot_q = [_act(q_act, v, p) for v in vecs]
    slot_m = [_act(m_act, v, p) for v in vecs]
    prod = [[coords(a.multiply(x, y)) for y in vecs] for x in vecs]

    def index(qi, slots, mi):
        idx = qi
        for r in slots:
            idx = idx * s_dim + r
        return idx * dm + mi

    mats = []
    for s in range(1, smax + 1):
        d = np.zeros((dims[s - 1], dims[s]), dtype=np.int64)
        for qi in range(dq):
            for slots in itertools.product(range(s_dim), repeat=s):
                for mi in range(dm):
                    col = index(qi, slots, mi)
                    # face 0: absorb the first slot into Q
                    for qj in np.flatnonzero(slot_q[slots[0]][:, qi]):
                        d[index(qj, slots[1:], mi), col] += slot_q[slots[0]][qj, qi]
                    # inner faces: multiply neighbouring slots
                    for i in range(1, s):
                        sign = -1 if i % 2 else 1
                        pr = prod[slots[i - 1]][slots[i]]
                        for r in np.flatnonzero(pr):
                            new = slots[: i - 1] + (int(r),) + slots[i + 1:]
                            d[index(qi, new, mi), col] += sign * int(pr[r])
                    # last face: the final slot acts on M
                    sign = -1 if s % 2 else 1
                    for mj in np.flatnonzero(slot_m[slots[-1]][:, mi]):
                        d[index(qi, slots[:-1], mj), col] += sign * slot_m[slots[-1]][mj, mi]
        mats.append((d % p).astype(np.uint8))
    return dims, mats


def bar_homology(dims, mats, p: int) -> list[int]:
    fp = field_make(p)
    ranks = [rank(fp, m) for m in mats]
    out = []
    for s in range(len(mats)):
        incoming = ranks[s]
        outgoing = ranks[s - 1] if s > 0 else 0
        out.append(dims[s] - incoming - outgoing)
    return out


def tor_via_bar(a: AlgebraPresentation, m: LeftModule, n: int, smax: int,
                normalized: bool = True, cap: int | None = None) -> list[int]:
    """dim Tor_s^A(psi^n(A), M) for 0 <= s <= smax - 1, over F_p."""
    quotient = psi(a, n)
    ap = quotient.source
    mp = m.restrict()
    if not mp.algebra.same_as(ap):
        raise ValueError("module is not over the given algebra")
    if quotient.quotient_dim == 0 or mp.dim == 0:
        return [0] * smax
    q_act = quotient.action_matrices()
    dims, mats = bar_complex(ap, q_act, list(mp.act), smax, normalized, cap)
    return bar_homology(dims, mats, ap.p)
