"""Hochschild chain and cochain complexes of a finite-dimensional algebra.

Degree n of the chain complex is B (x) S^{(x) n}, where the slot space S is
either A itself (the standard complex) or A/F_p.1 (the normalized complex,
which has the same homology because the degenerate chains form an acyclic
subcomplex).  Basis vectors are indexed mixed-radix: the bimodule
coordinate is most significant, then the tensor slots left to right.

Complexes are always built over the prime field, on the F_p-restrictions of
the algebra and bimodule.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field as dc_field

import numpy as np
import scipy.sparse as sp

from .algebra import AlgebraPresentation, algebra_tensor
from .bimodule import Bimodule, phi_twist
from .fq import FieldSpec, field_make, inverse as inverse_matrix, rank

DEFAULT_ENTRY_CAP = 5_000_000
DEFAULT_MAX_TRUNCATION = 16
ENTRY_CAP_ENV = "FROBHH_ENTRY_CAP"


class CapExceeded(ValueError):
    pass


def default_entry_cap() -> int:
    raw = os.environ.get(ENTRY_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENTRY_CAP


@dataclass
class BoundedComplex:
    """Vector spaces C_0..C_N over F_p with boundaries d_i: C_i -> C_{i-1}.

    ``boundaries[i - 1]`` is d_i, stored sparse with entries in 0..p-1.  For
    a cochain complex the maps go up: ``boundaries[i]`` is C^i -> C^{i+1}.
    """

    field: FieldSpec
    dims: list[int]
    boundaries: list
    cochain: bool = False

    @property
    def N(self) -> int:
        return len(self.dims) - 1

    def dense(self, i: int) -> np.ndarray:
        return self.boundaries[i].toarray().astype(np.uint8)

    def check_shapes(self):
        for i, d in enumerate(self.boundaries):
            src, dst = (i, i + 1) if self.cochain else (i + 1, i)
            if d.shape != (self.dims[dst], self.dims[src]):
                raise ValueError(f"boundary {i} has shape {d.shape}")

    def square_zero_failures(self) -> list[int]:
        """Indices i where boundaries[i] composed with its successor is nonzero."""
        p = self.field.p
        bad = []
        for i in range(len(self.boundaries) - 1):
            first, second = self.boundaries[i], self.boundaries[i + 1]
            prod = (first @ second) if not self.cochain else (second @ first)
            prod = prod.tocoo()
            if np.any(prod.data % p):
                bad.append(i)
        return bad


@dataclass
class HomologyReport:
    algebra: str
    coefficients: str
    n: int | None
    N: int
    dims: list[int]
    chain_dims: list[int]
    entry_count: int
    normalized: bool
    cohomology: bool = False
    ms_per_degree: list[float] = dc_field(default_factory=list)
    caveats: list[str] = dc_field(default_factory=list)

    def as_dict(self, stable: bool = False) -> dict:
        out = {
            "algebra": self.algebra,
            "coefficients": self.coefficients,
            "n": self.n,
            "N": self.N,
            "kind": "cohomology" if self.cohomology else "homology",
            "normalized": self.normalized,
            "degrees": [{"i": i, "dim": d} for i, d in enumerate(self.dims)],
            "chain_dims": self.chain_dims,
            "entry_count": self.entry_count,
            "caveats": self.caveats,
        }
        if not stable:
            out["ms_per_degree"] = [round(t, 3) for t in self.ms_per_degree]
        return out

    def to_json(self, stable: bool = False) -> str:
        return json.dumps(self.as_dict(stable), sort_keys=True)

    def vanishes_above_zero(self) -> bool:
        return all(d == 0 for d in self.dims[1:])


# ---------------------------------------------------------------------------
# Face data
# ---------------------------------------------------------------------------


def _prime_pair(a: AlgebraPresentation, b: Bimodule) -> tuple[AlgebraPresentation, Bimodule]:
    ap = a.restrict()
    bp = b.restrict()
    if not bp.algebra.same_as(ap):
        raise ValueError("bimodule is not over the given algebra")
    return ap, bp


def unit_adapted_basis(a: AlgebraPresentation) -> np.ndarray:
    """Invertible matrix whose first column is the unit; the rest span a complement."""
    c0 = int(np.flatnonzero(a.unit)[0])
    t = np.eye(a.dim, dtype=np.uint8)
    t[:, c0] = a.unit
    order = [c0] + [c for c in range(a.dim) if c != c0]
    return t[:, order]


@dataclass
class _Faces:
    p: int
    bdim: int
    slot: int
    left: sp.csr_matrix     # (bdim, bdim*slot): [b', b*slot + r]
    right: sp.csr_matrix    # same layout, right action
    mul: sp.csr_matrix      # (slot, slot*slot): [s, r*slot + r']


def _faces(a: AlgebraPresentation, b: Bimodule, normalized: bool) -> _Faces:
    f = a.field
    p = f.p
    if normalized:
        t = unit_adapted_basis(a)
        tinv = inverse_matrix(f, t)
        slots = [t[:, r] for r in range(1, a.dim)]
    else:
        tinv = None
        slots = [a.basis_vector(r) for r in range(a.dim)]
    s = len(slots)
    bd = b.dim

    def combo(acts, u):
        out = np.zeros((bd, bd), dtype=np.int64)
        for c, m in zip(u, acts):
            if c:
                out += int(c) * m.astype(np.int64)
        return out % p

    lefts = [combo(b.left_act, u) for u in slots]
    rights = [combo(b.right_act, u) for u in slots]
    left = np.zeros((bd, bd * s), dtype=np.int64)
    right = np.zeros((bd, bd * s), dtype=np.int64)
    for r in range(s):
        left[:, r::s] = lefts[r]
        right[:, r::s] = rights[r]
    mul = np.zeros((s, s * s), dtype=np.int64)
    for r in range(s):
        for r2 in range(s):
            v = a.multiply(slots[r], slots[r2]).astype(np.int64)
            if normalized:
                v = (tinv.astype(np.int64) @ v % p)[1:]
            mul[:, r * s + r2] = v
    return _Faces(p, bd, s, sp.csr_matrix(left), sp.csr_matrix(right), sp.csr_matrix(mul))


def _eye(n: int):
    return sp.identity(n, dtype=np.int64, format="csr")


def _move_last_slot(bd: int, m: int, s: int):
    """Permutation sending index (b, mid, r) to (b, r, mid); mid ranges over m."""
    cols = np.arange(bd * m * s)
    b, rest = np.divmod(cols, m * s)
    mid, r = np.divmod(rest, s)
    rows = (b * s + r) * m + mid
    return sp.csr_matrix((np.ones_like(cols), (rows, cols)), shape=(bd * m * s, bd * m * s))


def _chain_boundary(fc: _Faces, n: int) -> sp.csr_matrix:
    """d_n = sum_i (-1)^i face_i : B (x) S^n -> B (x) S^(n-1)."""
    bd, s, p = fc.bdim, fc.slot, fc.p
    m = s ** (n - 1)
    total = sp.kron(fc.left, _eye(m), format="csr")
    for i in range(1, n):
        face = sp.kron(sp.kron(_eye(bd * s ** (i - 1)), fc.mul), _eye(s ** (n - i - 1)), format="csr")
        total = total + (-1) ** i * face
    last = sp.kron(fc.right, _eye(m), format="csr") @ _move_last_slot(bd, m, s)
    total = total + (-1) ** n * last
    total = total.tocsr()
    total.data %= p
    total.eliminate_zeros()
    return total


def _cochain_coboundary(fc: _Faces, n: int) -> sp.csr_matrix:
    """delta^n : Hom(S^n, B) -> Hom(S^(n+1), B) with the Hochschild signs."""
    bd, s, p = fc.bdim, fc.slot, fc.p
    m = s**n
    # left[b', (b, r)] -> lc[(b', r), b]
    lc = _regroup(fc.left, bd, s)
    rc = _regroup(fc.right, bd, s)
    total = sp.kron(lc, _eye(m), format="csr")
    mul_t = fc.mul.T.tocsr()
    for i in range(1, n + 1):
        face = sp.kron(sp.kron(_eye(bd * s ** (i - 1)), mul_t), _eye(s ** (n - i)), format="csr")
        total = total + (-1) ** i * face
    # rows of kron(rc, I) are (b', r, mid); reorder to (b', mid, r)
    last = _move_last_slot(bd, m, s).T @ sp.kron(rc, _eye(m), format="csr")
    total = total + (-1) ** (n + 1) * last
    total = total.tocsr()
    total.data %= p
    total.eliminate_zeros()
    return total


def _regroup(mat: sp.csr_matrix, bd: int, s: int) -> sp.csr_matrix:
    coo = mat.tocoo()
    b, r = np.divmod(coo.col, s)
    return sp.csr_matrix((coo.data, (coo.row * s + r, b)), shape=(bd * s, bd))


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def chain_dims(bdim: int, slot: int, N: int) -> list[int]:
    return [bdim * slot**i for i in range(N + 1)]


def max_truncation(bdim: int, slot: int, cap: int, limit: int = DEFAULT_MAX_TRUNCATION) -> int:
    """Largest N <= limit whose top boundary has at most ``cap`` dense entries."""
    best = 0
    for N in range(1, limit + 1):
        dims = chain_dims(bdim, slot, N)
        if dims[N] * dims[N - 1] > cap:
            break
        best = N
    return best


def _entry_count(dims: list[int]) -> int:
    if len(dims) == 1:
        return dims[0]
    return max(dims[i] * dims[i - 1] for i in range(1, len(dims)))


def _resolve_N(bdim, slot, N, cap):
    cap = default_entry_cap() if cap is None else cap
    if N is None:
        return max_truncation(bdim, slot, cap)
    if N < 0:
        raise ValueError("truncation must be >= 0")
    dims = chain_dims(bdim, slot, N)
    if _entry_count(dims) > cap:
        raise CapExceeded(
            f"truncation N={N} needs {_entry_count(dims)} matrix entries > cap {cap}; "
            f"maximal admissible N is {max_truncation(bdim, slot, cap, limit=max(N, 1))}"
        )
    return N


def hh_complex(a: AlgebraPresentation, b: Bimodule, N: int | None = None,
               normalized: bool = False, cap: int | None = None) -> BoundedComplex:
    """Hochschild chain complex C_0..C_N of ``a`` with coefficients in ``b``."""
    ap, bp = _prime_pair(a, b)
    fc = _faces(ap, bp, normalized)
    N = _resolve_N(bp.dim, fc.slot, N, cap)
    dims = chain_dims(bp.dim, fc.slot, N)
    bounds = [_chain_boundary(fc, n) for n in range(1, N + 1)]
    cx = BoundedComplex(field_make(ap.p), dims, bounds)
    cx.check_shapes()
    return cx


def hh_cochain_complex(a: AlgebraPresentation, b: Bimodule, N: int | None = None,
                       normalized: bool = False, cap: int | None = None) -> BoundedComplex:
    ap, bp = _prime_pair(a, b)
    fc = _faces(ap, bp, normalized)
    N = _resolve_N(bp.dim, fc.slot, N, cap)
    dims = chain_dims(bp.dim, fc.slot, N)
    bounds = [_cochain_coboundary(fc, n) for n in range(N)]
    cx = BoundedComplex(field_make(ap.p), dims, bounds, cochain=True)
    cx.check_shapes()
    return cx


def complex_homology(cx: BoundedComplex):
    """(dims of H_0..H_{N-1}, ms per degree) via ranks of the boundaries."""
    ranks, times = [], []
    for i in range(len(cx.boundaries)):
        t0 = time.perf_counter()
        ranks.append(rank(cx.field, cx.dense(i)))
        times.append(1000 * (time.perf_counter() - t0))
    out = []
    for i in range(cx.N):
        if cx.cochain:
            # H^i = ker(C^i -> C^{i+1}) / im(C^{i-1} -> C^i)
            incoming = ranks[i - 1] if i > 0 else 0
            out.append(cx.dims[i] - ranks[i] - incoming)
        else:
            outgoing = ranks[i - 1] if i > 0 else 0
            out.append(cx.dims[i] - outgoing - ranks[i])
    return out, times[: cx.N]


def _twist_caveats(n):
    if n is not None and n == 1:
        return ["n=1 lies outside the stated range n>1"]
    return []


def hh_homology(a: AlgebraPresentation, b: Bimodule, N: int | None = None, *,
                normalized: bool = True, cap: int | None = None, n: int | None = None,
                check: bool = True) -> HomologyReport:
    """Dimensions of H_i(A, B) for 0 <= i <= N-1."""
    cx = hh_complex(a, b, N, normalized=normalized, cap=cap)
    if check and cx.square_zero_failures():
        raise AssertionError(f"d o d != 0 at {cx.square_zero_failures()}")
    dims, times = complex_homology(cx)
    return HomologyReport(a.name, b.label, n, cx.N, dims, cx.dims, _entry_count(cx.dims),
                          normalized, False, times, _twist_caveats(n))


def hh_cohomology(a: AlgebraPresentation, b: Bimodule, N: int | None = None, *,
                  normalized: bool = True, cap: int | None = None, n: int | None = None,
                  check: bool = True) -> HomologyReport:
    """Dimensions of H^i(A, B) for 0 <= i <= N-1."""
    cx = hh_cochain_complex(a, b, N, normalized=normalized, cap=cap)
    if check and cx.square_zero_failures():
        raise AssertionError(f"delta o delta != 0 at {cx.square_zero_failures()}")
    dims, times = complex_homology(cx)
    return HomologyReport(a.name, b.label, n, cx.N, dims, cx.dims, _entry_count(cx.dims),
                          normalized, True, times, _twist_caveats(n))


def twisted_homology(a: AlgebraPresentation, n: int, N: int | None = None, **kw) -> HomologyReport:
    """H_*(A, Phi^n(A))."""
    return hh_homology(a, phi_twist(a, None, n), N, n=n, **kw)


# ---------------------------------------------------------------------------
# The polynomial ring F_p[x] on a finite window
# ---------------------------------------------------------------------------


def step1_poly(p: int, n: int, window: int) -> tuple[int, int]:
    """(dim H_0, dim H_1) of F_p[x] with coefficients in Phi^n(F_p[x]).

    The two-term resolution reduces everything to u(b) = x b - b x, which on
    the twisted bimodule is multiplication by x - x^{p^n}.  u is taken from
    polynomials of degree < window - p^n (so images stay inside the window)
    to polynomials of degree < window.
    """
    fp = field_make(p)
    shift = p**n
    if window > 10_000:
        raise ValueError("window must be <= 10^4")
    if window <= shift:
        raise ValueError(f"window {window} cannot contain x^{shift}")
    inputs = window - shift
    u = np.zeros((window, inputs), dtype=np.int64)
    for j in range(inputs):
        u[j + 1, j] += 1           # x . x^j
        u[j + shift, j] -= 1       # x^j . x = x^{p^n} x^j
    u %= p
    r = rank(fp, u.astype(np.uint8))
    return window - r, inputs - r


# ---------------------------------------------------------------------------
# Kuenneth comparison
# ---------------------------------------------------------------------------


def graded_tensor(x: list[int], y: list[int], upto: int) -> list[int]:
    return [sum(x[i] * y[k - i] for i in range(k + 1) if i < len(x) and k - i < len(y)) for k in range(upto)]


def kunneth_check(a: AlgebraPresentation, b_alg: AlgebraPresentation, n: int,
                  N: int | None = None, cap: int | None = None) -> dict:
    """Compare H_*(A(x)B, Phi^n) with H_*(A, Phi^n) (x) H_*(B, Phi^n), degreewise.

    Both factors are restricted to F_p before tensoring, so the tensor
    product is over the prime field.
    """
    ap, bp = a.restrict(), b_alg.restrict()
    t = algebra_tensor(ap, bp)
    rep_t = twisted_homology(t, n, N, cap=cap)
    N = rep_t.N
    rep_a = twisted_homology(ap, n, N, cap=cap)
    rep_b = twisted_homology(bp, n, N, cap=cap)
    expected = graded_tensor(rep_a.dims, rep_b.dims, N)
    rows = [
        {"i": i, "tensor": rep_t.dims[i], "product": expected[i], "pass": rep_t.dims[i] == expected[i]}
        for i in range(N)
    ]
    return {
        "algebras": [a.name, b_alg.name],
        "n": n,
        "N": N,
        "degrees": rows,
        "pass": all(r["pass"] for r in rows),
    }
