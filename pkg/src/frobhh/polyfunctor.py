"""Divided powers, symmetric powers and tensor powers on finite free modules.

Bases:

* tensor: tuples in lexicographic order, index sum t_k m^(d-1-k);
* gamma: orbit sums of Sigma_d acting on the tuple basis, labelled by the
  multiset of the orbit;
* sym: classes of tuples in the coinvariants, labelled the same way.

Multisets are sorted tuples of labels 1..m in lexicographic order.  No orbit
size is ever inverted, so everything is valid in characteristic p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .fq import FieldSpec, as_entries, field_make, rank

KINDS = ("gamma", "sym", "tensor")
DEFAULT_DEGREE_CAP = 6
DEFAULT_SIZE_CAP = 5_000_000


class FunctorError(ValueError):
    pass


@dataclass(frozen=True)
class FunctorKind:
    kind: str
    d: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FunctorError(f"unknown functor kind {self.kind!r}; expected one of {KINDS}")
        if self.d < 1:
            raise FunctorError("degree must be >= 1")
        if self.d > DEFAULT_DEGREE_CAP:
            raise FunctorError(f"degree {self.d} above cap {DEFAULT_DEGREE_CAP}")


@dataclass(frozen=True)
class FunctorValue:
    kind: str
    d: int
    m: int
    labels: tuple

    @property
    def dim(self) -> int:
        return len(self.labels)


def _check(kind: str, d: int, m: int) -> FunctorKind:
    fk = FunctorKind(kind, d)
    if m < 0:
        raise FunctorError("rank must be >= 0")
    if m**d > DEFAULT_SIZE_CAP:
        raise FunctorError(f"m^d = {m**d} above cap {DEFAULT_SIZE_CAP}")
    return fk


@lru_cache(maxsize=None)
def multisets(d: int, m: int) -> tuple:
    return tuple(itertools.combinations_with_replacement(range(1, m + 1), d))


def functor_value(kind: str, d: int, m: int) -> FunctorValue:
    _check(kind, d, m)
    if kind == "tensor":
        labels = tuple(itertools.product(range(1, m + 1), repeat=d))
    else:
        labels = multisets(d, m)
    return FunctorValue(kind, d, m, labels)


def functor_dim(kind: str, d: int, m: int) -> int:
    """Closed-form dimension, checked against the enumerated basis."""
    _check(kind, d, m)
    closed = m**d if kind == "tensor" else math.comb(m + d - 1, d)
    counted = functor_value(kind, d, m).dim
    if closed != counted:
        raise AssertionError(f"dimension mismatch for {kind}^{d}(F^{m}): {closed} != {counted}")
    return closed


@lru_cache(maxsize=None)
def _orbits(d: int, m: int):
    """(orbit index of each tuple, index of each orbit's representative).

    The representative is the sorted tuple itself.
    """
    index = {ms: j for j, ms in enumerate(multisets(d, m))}
    tuples = itertools.product(range(1, m + 1), repeat=d)
    orbit_of = np.array([index[tuple(sorted(t))] for t in tuples], dtype=np.int64)
    weights = m ** np.arange(d - 1, -1, -1)
    reps = np.array([int(np.dot(np.array(ms) - 1, weights)) if d else 0 for ms in multisets(d, m)],
                    dtype=np.int64)
    return orbit_of, reps


def _kron(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ra, ca = a.shape
    rb, cb = b.shape
    if field.k == 1:
        out = (a.astype(np.int64)[:, None, :, None] * b.astype(np.int64)[None, :, None, :]) % field.p
    else:
        out = field.tables[2][a[:, None, :, None], b[None, :, None, :]]
    return out.reshape(ra * rb, ca * cb).astype(np.uint8)


def tensor_power(field: FieldSpec, f: np.ndarray, d: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.uint8)
    for _ in range(d):
        out = _kron(field, out, f)
    return out


def _sum_columns(field: FieldSpec, t: np.ndarray, groups: np.ndarray, count: int) -> np.ndarray:
    """Column j of the result is the sum of the columns of t in group j."""
    if field.k == 1:
        out = np.zeros((t.shape[0], count), dtype=np.int64)
        np.add.at(out, (slice(None), groups), t.astype(np.int64))
        return (out % field.p).astype(np.uint8)
    add = field.tables[0]
    out = np.zeros((t.shape[0], count), dtype=np.uint8)
    for c, g in enumerate(groups):
        out[:, g] = add[out[:, g], t[:, c]]
    return out


def functor_apply(kind: str, d: int, f, field: FieldSpec | None = None) -> np.ndarray:
    """Matrix of T(f) for an m' x m matrix f, T one of gamma, sym, tensor."""
    field = field or field_make(2)
    f = as_entries(field, f)
    if f.ndim != 2:
        raise FunctorError("f must be a matrix")
    mp, m = f.shape
    _check(kind, d, max(m, mp))
    if mp**d * m**d > DEFAULT_SIZE_CAP:
        raise FunctorError(f"tensor power of a {mp}x{m} matrix exceeds the size cap")
    t = tensor_power(field, f, d)
    if kind == "tensor":
        return t
    src_orbit, src_rep = _orbits(d, m)
    dst_orbit, dst_rep = _orbits(d, mp)
    if kind == "gamma":
        # image of each orbit sum, read off at the representative of each target orbit
        images = _sum_columns(field, t, src_orbit, len(src_rep))
        return images[dst_rep]
    # sym: image of each representative tuple, summed over each target class
    images = t[:, src_rep]
    return _sum_columns(field, images.T, dst_orbit, len(dst_rep)).T


def pairing_matrix(d: int, m: int, field: FieldSpec | None = None) -> np.ndarray:
    """Evaluate orbit sums of (F^m)^{(x)d} on dual tensors e*_t, one class at a time.

    Raises if the value depends on the chosen representative of a class, i.e. if
    the pairing does not descend to the coinvariants.
    """
    field = field or field_make(2)
    _check("gamma", d, m)
    orbit_of, reps = _orbits(d, m)
    r = len(reps)
    # orbit-sum vectors as rows, all dual basis tensors as columns
    sums = np.zeros((r, m**d), dtype=np.uint8)
    sums[orbit_of, np.arange(m**d)] = 1
    values = sums  # <v_O, e*_t> is the coefficient of e_t in v_O
    for j in range(r):
        cls = values[:, orbit_of == j]
        if not np.all(cls == cls[:, :1]):
            raise AssertionError(f"pairing not constant on class {multisets(d, m)[j]}")
    return values[:, reps] % field.p


def gamma_sym_duality_check(d: int, m: int, field: FieldSpec | None = None) -> bool:
    field = field or field_make(2)
    pm = pairing_matrix(d, m, field)
    return pm.shape[0] == pm.shape[1] and rank(field, pm) == pm.shape[0]


def homogeneity_check(kind: str, d: int, m: int, field: FieldSpec) -> bool:
    """T(a id) == a^d id for every scalar a of the field."""
    dim = functor_dim(kind, d, m)
    eye = np.eye(dim, dtype=np.uint8)
    for a in field.elements():
        lhs = functor_apply(kind, d, (np.eye(m, dtype=np.int64) * a), field)
        ad = field.pow(a, d)
        rhs = (eye * ad).astype(np.uint8)
        if not np.array_equal(lhs, rhs):
            return False
    return True
