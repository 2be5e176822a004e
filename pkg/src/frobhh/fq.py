"""Finite fields F_{p^k} and dense matrices over them.

Field elements are small integers: the base-p digits of an element are the
coordinates of the element in the power basis 1, t, t^2, ... where t is a
root of the field's modulus polynomial.  Polynomials are coefficient tuples
in ascending degree order.

Every homology computation in the package reduces to :func:`rank` and
:func:`echelon_analyze`.  Over F_2 both run on rows packed 64 bits per
uint64 word; over other fields one byte per entry is used, so matrix
arithmetic is limited to q <= 256.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

MAX_DEGREE = 16
MAX_MATRIX_CARD = 256


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, b, p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over F_p."""
    a = _poly_trim([c % p for c in a])
    db = len(b) - 1
    while len(a) - 1 >= db:
        lead = a[-1]
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _poly_trim(a)
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of the given degree, in increasing base-p value."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def is_irreducible(f, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    k = len(f) - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(d, p):
            if not poly_mod(list(f), g, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """The monic irreducible of degree k with the smallest value sum(c_i p^i)."""
    for f in _monic_polys(k, p):
        if is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """The field F_p[t]/(modulus) with p**k elements."""

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"p={self.p} is not prime")
        if not 1 <= self.k <= MAX_DEGREE:
            raise FieldError(f"extension degree k={self.k} outside 1..{MAX_DEGREE}")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not is_irreducible(self.modulus, self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def card(self) -> int:
        return self.p**self.k

    q = card

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def __repr__(self):
        return f"F{self.card}" if self.k == 1 else f"F{self.card}[{_poly_str(self.modulus)}]"

    # -- element encoding ------------------------------------------------

    def digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        x = 0
        for d in reversed(list(ds)):
            x = x * self.p + int(d) % self.p
        return x

    @property
    def generator(self) -> int:
        """The class of t (equal to 0 in a prime field, whose modulus is t)."""
        return self.p if self.k > 1 else 0

    def mult_matrix(self, x: int) -> np.ndarray:
        """k x k matrix over F_p of multiplication by x in the power basis."""
        k, p = self.k, self.p
        out = np.zeros((k, k), dtype=np.int64)
        col = self.digits(x)
        for j in range(k):
            out[:, j] = col
            # multiply col by t
            shifted = [0] + col
            lead = shifted.pop()
            col = [(c - lead * m) % p for c, m in zip(shifted, self.modulus)]
        return out

    # -- scalar arithmetic -----------------------------------------------

    @cached_property
    def tables(self):
        """(add, sub, mul, neg, inv) lookup tables; only for q <= 256."""
        q, p, k = self.card, self.p, self.k
        if q > MAX_MATRIX_CARD:
            raise FieldError(f"tables unavailable for q={q} > {MAX_MATRIX_CARD}")
        elems = np.arange(q)
        digits = np.stack([(elems // p**i) % p for i in range(k)], axis=1)
        weights = p ** np.arange(k)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ weights
        mul = np.empty((q, q), dtype=np.int64)
        for x in range(q):
            mul[x] = ((digits @ self.mult_matrix(x).T) % p) @ weights
        neg = ((-digits) % p) @ weights
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.flatnonzero(mul[x] == 1)[0])
        tabs = [add, sub, mul, neg, inv]
        return tuple(t.astype(np.uint8) for t in tabs)

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.from_digits(x - y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        prod = (self.mult_matrix(a) @ np.array(self.digits(b))) % self.p
        return self.from_digits(prod)

    def pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.card - 2)

    def elements(self) -> range:
        return range(self.card)


def _poly_str(f) -> str:
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        coef = "" if (c == 1 and i) else str(c)
        terms.append(coef + mono or "1")
    return "+".join(terms) or "0"


_FIELD_CACHE: dict[tuple[int, int], FieldSpec] = {}


def field_make(p: int, k: int = 1) -> FieldSpec:
    """Deterministic F_{p^k}: power basis of the smallest monic irreducible."""
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if not 1 <= k <= MAX_DEGREE:
        raise FieldError(f"extension degree k={k} outside 1..{MAX_DEGREE}")
    key = (p, k)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldSpec(p, k, smallest_irreducible(p, k))
    return _FIELD_CACHE[key]


# ---------------------------------------------------------------------------
# Vectorised matrix arithmetic on uint8 arrays
# ---------------------------------------------------------------------------


def _check_matrix_field(field: FieldSpec):
    if field.card > MAX_MATRIX_CARD:
        raise FieldError(f"matrices over F_{field.card} unsupported (q > {MAX_MATRIX_CARD})")


def as_entries(field: FieldSpec, data) -> np.ndarray:
    arr = np.asarray(data)
    if arr.dtype.kind not in "iu":
        raise FieldError("matrix entries must be integers")
    if arr.size and (arr.min() < 0 or arr.max() >= field.card):
        if field.k == 1:
            arr = arr % field.p
        else:
            raise FieldError(f"entry outside 0..{field.card - 1}")
    return arr.astype(np.uint8)


def mat_add(field: FieldSpec, a, b) -> np.ndarray:
    if field.k == 1:
        return ((a.astype(np.int64) + b) % field.p).astype(np.uint8)
    return field.tables[0][a, b]


def mat_sub(field: FieldSpec, a, b) -> np.ndarray:
    if field.k == 1:
        return ((a.astype(np.int64) - b) % field.p).astype(np.uint8)
    return field.tables[1][a, b]


def mat_scale(field: FieldSpec, c: int, a) -> np.ndarray:
    if field.k == 1:
        return (a.astype(np.int64) * c % field.p).astype(np.uint8)
    return field.tables[2][c, a]


def _split_digits(field: FieldSpec, a) -> list[np.ndarray]:
    a = np.asarray(a, dtype=np.int64)
    return [(a // field.p**i) % field.p for i in range(field.k)]


def matmul(field: FieldSpec, a, b) -> np.ndarray:
    """Matrix product over the field.

    For k > 1 both factors are split into F_p digit planes, the planes are
    multiplied with integer BLAS-free matmul and powers t^j, j >= k, are folded
    back with the modulus.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    p = field.p
    if field.k == 1:
        return ((a.astype(np.int64) @ b.astype(np.int64)) % p).astype(np.uint8)
    k = field.k
    da, db = _split_digits(field, a), _split_digits(field, b)
    shape = (a.shape[0], b.shape[1])
    acc = [np.zeros(shape, dtype=np.int64) for _ in range(2 * k - 1)]
    for i in range(k):
        for j in range(k):
            acc[i + j] += da[i] @ db[j]
    for deg in range(2 * k - 2, k - 1, -1):
        top = acc[deg] % p
        for i in range(k):
            acc[deg - k + i] -= top * field.modulus[i]
    out = np.zeros(shape, dtype=np.int64)
    for i in range(k):
        out += (acc[i] % p) * p**i
    return out.astype(np.uint8)


def restrict_matrix(field: FieldSpec, a) -> np.ndarray:
    """F_p matrix of the F_q-linear map a, on the basis t^j e_i (index i*k+j)."""
    a = np.asarray(a, dtype=np.int64)
    k = field.k
    if k == 1:
        return a.astype(np.uint8)
    r, c = a.shape
    out = np.zeros((r * k, c * k), dtype=np.uint8)
    blocks = {}
    for i in range(r):
        for j in range(c):
            x = int(a[i, j])
            if x:
                if x not in blocks:
                    blocks[x] = field.mult_matrix(x)
                out[i * k:(i + 1) * k, j * k:(j + 1) * k] = blocks[x]
    return out


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


def pack_rows(a: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into uint64 words; column c is bit c % 64 of word c // 64."""
    rows, cols = a.shape
    nwords = max(1, (cols + 63) // 64)
    bytes_ = np.packbits(a.astype(np.uint8) & 1, axis=1, bitorder="little")
    padded = np.zeros((rows, nwords * 8), dtype=np.uint8)
    padded[:, : bytes_.shape[1]] = bytes_
    return padded.view("<u8").copy()


def unpack_rows(w: np.ndarray, cols: int) -> np.ndarray:
    bytes_ = w.astype("<u8").view(np.uint8).reshape(w.shape[0], -1)
    return np.unpackbits(bytes_, axis=1, bitorder="little")[:, :cols].astype(np.uint8)


def _rref_gf2_packed(a: np.ndarray):
    rows, cols = a.shape
    w = pack_rows(a)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        word, bit = c >> 6, np.uint64(c & 63)
        hits = np.flatnonzero((w[r:, word] >> bit) & np.uint64(1))
        if hits.size == 0:
            continue
        piv = r + hits[0]
        if piv != r:
            w[[r, piv]] = w[[piv, r]]
        col = (w[:, word] >> bit) & np.uint64(1)
        col[r] = 0
        targets = np.flatnonzero(col)
        if targets.size:
            w[targets, word:] ^= w[r, word:]
        pivots.append(c)
        r += 1
    return unpack_rows(w, cols), pivots


def _rref_bytes(field: FieldSpec, a: np.ndarray):
    """Reduced row echelon form with one byte per entry (any q <= 256)."""
    a = a.astype(np.uint8).copy()
    rows, cols = a.shape
    inv_t = field.tables[4]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(a[r:, c])
        if hits.size == 0:
            continue
        piv = r + hits[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = mat_scale(field, int(inv_t[a[r, c]]), a[r])
        col = a[:, c].copy()
        col[r] = 0
        targets = np.flatnonzero(col)
        if targets.size:
            if field.k == 1:
                upd = a[targets].astype(np.int64) - np.outer(col[targets], a[r].astype(np.int64))
                a[targets] = (upd % field.p).astype(np.uint8)
            else:
                prod = field.tables[2][col[targets][:, None], a[r][None, :]]
                a[targets] = field.tables[1][a[targets], prod]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(field: FieldSpec, a, packed: bool | None = None):
    """Reduced row echelon form and pivot columns."""
    _check_matrix_field(field)
    a = np.asarray(a, dtype=np.uint8)
    if a.ndim != 2:
        raise FieldError("expected a 2-d matrix")
    if packed is None:
        packed = field.card == 2
    if packed:
        if field.card != 2:
            raise FieldError("packed elimination is only for F_2")
        return _rref_gf2_packed(a)
    return _rref_bytes(field, a)


def _rank_gf2(a: np.ndarray) -> int:
    rows, cols = a.shape
    w = pack_rows(a)
    r = 0
    one = np.uint64(1)
    for c in range(cols):
        if r == rows:
            break
        word, bit = c >> 6, np.uint64(c & 63)
        hits = np.flatnonzero((w[r:, word] >> bit) & one)
        if hits.size == 0:
            continue
        piv = r + hits[0]
        if piv != r:
            w[[r, piv]] = w[[piv, r]]
        below = r + 1 + np.flatnonzero((w[r + 1:, word] >> bit) & one)
        if below.size:
            w[below, word:] ^= w[r, word:]
        r += 1
    return r


def _rank_modp(a: np.ndarray, p: int) -> int:
    a = a.astype(np.int32)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(a[r:, c])
        if hits.size == 0:
            continue
        piv = r + hits[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            a[below, c:] = (a[below, c:] - a[below, c, None] * a[r, c:]) % p
        r += 1
    return r


def rank(field: FieldSpec, a) -> int:
    """Rank by forward elimination (no back substitution)."""
    _check_matrix_field(field)
    a = np.asarray(a, dtype=np.uint8)
    if a.size == 0:
        return 0
    if a.shape[1] > a.shape[0]:
        a = a.T
    a = np.ascontiguousarray(a)
    if field.card == 2:
        return _rank_gf2(a)
    if field.k == 1:
        return _rank_modp(a, field.p)
    return len(_rref_bytes(field, a)[1])


def kernel_from_rref(field: FieldSpec, r: np.ndarray, pivots: list[int], cols: int) -> np.ndarray:
    """Kernel basis as the columns of a (cols x nullity) matrix."""
    free = [c for c in range(cols) if c not in set(pivots)]
    ker = np.zeros((cols, len(free)), dtype=np.uint8)
    for j, f in enumerate(free):
        ker[f, j] = 1
        for i, pc in enumerate(pivots):
            if r[i, f]:
                ker[pc, j] = field.neg(int(r[i, f])) if field.k > 1 else (-int(r[i, f])) % field.p
    return ker


def kernel(field: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.uint8)
    r, piv = rref(field, a)
    return kernel_from_rref(field, r, piv, cols)


def row_basis(field: FieldSpec, a) -> np.ndarray:
    """Rows of the RREF spanning the row space of a."""
    a = np.asarray(a, dtype=np.uint8)
    if a.shape[0] == 0:
        return a.reshape(0, a.shape[1])
    r, piv = rref(field, a)
    return r[: len(piv)]


def in_span(field: FieldSpec, rows, v) -> bool:
    rows = np.asarray(rows, dtype=np.uint8).reshape(-1, len(v))
    base = rank(field, rows) if rows.shape[0] else 0
    return rank(field, np.vstack([rows, np.asarray(v, dtype=np.uint8)[None, :]])) == base


def inverse(field: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    n = a.shape[0]
    if a.shape != (n, n):
        raise FieldError("inverse of a non-square matrix")
    r, piv = rref(field, np.hstack([a, np.eye(n, dtype=np.uint8)]), packed=False)
    if piv[:n] != list(range(n)):
        raise FieldError("matrix is singular")
    return r[:, n:].copy()


# ---------------------------------------------------------------------------
# Public matrix type
# ---------------------------------------------------------------------------


class FqMatrix:
    """Immutable dense matrix over a FieldSpec."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        _check_matrix_field(field)
        arr = as_entries(field, data)
        if arr.ndim != 2:
            raise FieldError("FqMatrix needs a 2-d array")
        arr = arr.copy()
        arr.flags.writeable = False
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def T(self) -> "FqMatrix":
        return FqMatrix(self.field, self.data.T)

    def __matmul__(self, other):
        if isinstance(other, FqMatrix):
            return FqMatrix(self.field, matmul(self.field, self.data, other.data))
        vec = np.asarray(other)
        if vec.ndim == 1:
            return matmul(self.field, self.data, vec[:, None])[:, 0]
        return matmul(self.field, self.data, vec)

    def __add__(self, other: "FqMatrix"):
        return FqMatrix(self.field, mat_add(self.field, self.data, other.data))

    def __sub__(self, other: "FqMatrix"):
        return FqMatrix(self.field, mat_sub(self.field, self.data, other.data))

    def __eq__(self, other):
        return (
            isinstance(other, FqMatrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    __hash__ = None

    def __repr__(self):
        return f"FqMatrix({self.field!r}, {self.rows}x{self.cols})"

    def rank(self) -> int:
        return rank(self.field, self.data)


def echelon_analyze(m: FqMatrix):
    """Return (rank, kernel_basis) with kernel vectors as 1-d arrays."""
    if m.rows == 0:
        ker = np.eye(m.cols, dtype=np.uint8)
        return 0, [ker[:, j] for j in range(m.cols)]
    r, piv = rref(m.field, m.data)
    ker = kernel_from_rref(m.field, r, piv, m.cols)
    return len(piv), [ker[:, j] for j in range(ker.shape[1])]
