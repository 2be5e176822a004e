"""Truncated simplicial rings, their Moore complexes and homotopy groups.

Levels are finite rings given by structure constants over a FieldSpec;
commutativity is not assumed.  Faces and degeneracies are matrices acting on
coordinate columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraPresentation, frobenius_power, validate_algebra
from .fq import FieldSpec, kernel, mat_sub, matmul, rank


class SimplicialError(ValueError):
    pass


def make_ring(field: FieldSpec, mul, unit, name: str = "") -> AlgebraPresentation:
    """A unital ring by structure constants; no commutativity or associativity check."""
    mul = np.asarray(mul, dtype=np.uint8)
    d = mul.shape[0]
    ring = AlgebraPresentation(field, d, tuple(f"e{i}" for i in range(d)),
                               np.asarray(unit, dtype=np.uint8), mul, name=name)
    return validate_algebra(ring, commutative=False, associative=False)


def matrix_ring(field: FieldSpec, size: int) -> AlgebraPresentation:
    """The (noncommutative) ring of size x size matrices on the matrix-unit basis."""
    d = size * size
    mul = np.zeros((d, d, d), dtype=np.uint8)
    for i, j, k in itertools.product(range(size), repeat=3):
        mul[i * size + j, j * size + k, i * size + k] = 1
    unit = np.eye(size, dtype=np.uint8).reshape(-1)
    return make_ring(field, mul, unit, name=f"M{size}(F{field.card})")


# ---------------------------------------------------------------------------
# Cosimplicial finite sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CosimplicialSet:
    """Finite sets Y_0..Y_L with cofaces Y_{n-1} -> Y_n and codegeneracies Y_{n+1} -> Y_n.

    ``cofaces[n][i]`` (1 <= n <= L, 0 <= i <= n) and ``codegeneracies[n][i]``
    (0 <= n <= L-1, 0 <= i <= n) are index tables.
    """

    sizes: tuple
    cofaces: tuple
    codegeneracies: tuple

    @property
    def L(self) -> int:
        return len(self.sizes) - 1


def standard_cosimplicial(L: int) -> CosimplicialSet:
    """Y_n = {0..n} with the usual injective cofaces and surjective codegeneracies."""
    sizes = tuple(n + 1 for n in range(L + 1))
    cofaces = [()] + [
        tuple(tuple(j if j < i else j + 1 for j in range(n)) for i in range(n + 1))
        for n in range(1, L + 1)
    ]
    codegs = [
        tuple(tuple(j if j <= i else j - 1 for j in range(n + 2)) for i in range(n + 1))
        for n in range(L)
    ]
    return CosimplicialSet(sizes, tuple(cofaces), tuple(codegs))


def simplex_cosimplicial(k: int, L: int) -> CosimplicialSet:
    """Y_n = monotone maps [k] -> [n]; cofaces and codegeneracies act by postcomposition.

    k = 0 is the standard preset.  Points of Y_n missed by every coface exist
    for n <= k, so the function rings have nonzero Moore cycles there.
    """
    def points(n):
        return [t for t in itertools.product(range(n + 1), repeat=k + 1)
                if all(a <= b for a, b in zip(t, t[1:]))]

    pts = [points(n) for n in range(L + 2)]
    index = [{t: i for i, t in enumerate(level)} for level in pts]

    def push(n_src, n_dst, fn):
        return tuple(index[n_dst][tuple(fn(v) for v in t)] for t in pts[n_src])

    cofaces = [()] + [
        tuple(push(n - 1, n, lambda v, i=i: v if v < i else v + 1) for i in range(n + 1))
        for n in range(1, L + 1)
    ]
    codegs = [
        tuple(push(n + 1, n, lambda v, i=i: v if v <= i else v - 1) for i in range(n + 1))
        for n in range(L)
    ]
    return CosimplicialSet(tuple(len(pts[n]) for n in range(L + 1)), tuple(cofaces), tuple(codegs))


def constant_cosimplicial(L: int) -> CosimplicialSet:
    sizes = (1,) * (L + 1)
    cofaces = [()] + [tuple((0,) for _ in range(n + 1)) for n in range(1, L + 1)]
    codegs = [tuple((0,) for _ in range(n + 1)) for n in range(L)]
    return CosimplicialSet(sizes, tuple(cofaces), tuple(codegs))


def cosimplicial_violations(y: CosimplicialSet) -> list[str]:
    out = []
    L = y.L
    for n, size in enumerate(y.sizes):
        if n >= 1 and len(y.cofaces[n]) != n + 1:
            out.append(f"level {n}: expected {n + 1} cofaces")
        if n < L and len(y.codegeneracies[n]) != n + 1:
            out.append(f"level {n}: expected {n + 1} codegeneracies")
    if out:
        return out
    for n in range(1, L + 1):
        for i, tab in enumerate(y.cofaces[n]):
            if len(tab) != y.sizes[n - 1] or any(not 0 <= v < y.sizes[n] for v in tab):
                out.append(f"coface d^{i} into level {n} is not a map Y_{n - 1} -> Y_{n}")
    for n in range(L):
        for i, tab in enumerate(y.codegeneracies[n]):
            if len(tab) != y.sizes[n + 1] or any(not 0 <= v < y.sizes[n] for v in tab):
                out.append(f"codegeneracy s^{i} into level {n} is not a map Y_{n + 1} -> Y_{n}")
    if out:
        return out

    def cf(n, i):
        return y.cofaces[n][i]

    def cd(n, i):
        return y.codegeneracies[n][i]

    def comp(g, f):  # g after f
        return tuple(g[v] for v in f)

    # d^j d^i = d^i d^{j-1} for i < j  (maps Y_{n-2} -> Y_n)
    for n in range(2, L + 1):
        for j in range(n + 1):
            for i in range(j):
                if comp(cf(n, j), cf(n - 1, i)) != comp(cf(n, i), cf(n - 1, j - 1)):
                    out.append(f"d^{j}d^{i} != d^{i}d^{j - 1} into level {n}")
    # s^j s^i = s^i s^{j+1} for i <= j  (Y_{n+2} -> Y_n)
    for n in range(L - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if comp(cd(n, j), cd(n + 1, i)) != comp(cd(n, i), cd(n + 1, j + 1)):
                    out.append(f"s^{j}s^{i} != s^{i}s^{j + 1} at level {n}")
    # s^j d^i : Y_n -> Y_{n+1} -> Y_n
    for n in range(L):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = comp(cd(n, j), cf(n + 1, i))
                if i < j:
                    rhs = comp(cf(n, i), cd(n - 1, j - 1))
                elif i in (j, j + 1):
                    rhs = tuple(range(y.sizes[n]))
                else:
                    rhs = comp(cf(n, i - 1), cd(n - 1, j))
                if lhs != rhs:
                    out.append(f"s^{j}d^{i} identity fails at level {n}")
    return out


# ---------------------------------------------------------------------------
# Simplicial rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TruncatedSimplicialRing:
    """Levels 0..L; ``faces[n][i]`` maps level n to n-1, ``degens[n][i]`` level n to n+1."""

    field: FieldSpec
    levels: tuple
    faces: tuple
    degens: tuple
    name: str = ""

    @property
    def L(self) -> int:
        return len(self.levels) - 1

    def face(self, n: int, i: int) -> np.ndarray:
        return self.faces[n][i]

    def degen(self, n: int, i: int) -> np.ndarray:
        return self.degens[n][i]

    def apply(self, mat, v) -> np.ndarray:
        return matmul(self.field, mat, np.asarray(v, dtype=np.uint8)[:, None])[:, 0]


def simplicial_validate(s: TruncatedSimplicialRing) -> list[str]:
    """All violated simplicial identities and homomorphism conditions (empty if ok)."""
    f = s.field
    out = []
    L = s.L

    def eq(a, b):
        return np.array_equal(a, b)

    def mm(a, b):
        return matmul(f, a, b)

    for n in range(1, L + 1):
        if len(s.faces[n]) != n + 1:
            return [f"level {n}: expected {n + 1} faces"]
    for n in range(L):
        if len(s.degens[n]) != n + 1:
            return [f"level {n}: expected {n + 1} degeneracies"]
    # d_i d_j = d_{j-1} d_i, i < j
    for n in range(2, L + 1):
        for j in range(n + 1):
            for i in range(j):
                if not eq(mm(s.face(n - 1, i), s.face(n, j)), mm(s.face(n - 1, j - 1), s.face(n, i))):
                    out.append(f"d{i}d{j} != d{j - 1}d{i} on level {n}")
    # s_i s_j = s_{j+1} s_i, i <= j
    for n in range(L - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if not eq(mm(s.degen(n + 1, i), s.degen(n, j)), mm(s.degen(n + 1, j + 1), s.degen(n, i))):
                    out.append(f"s{i}s{j} != s{j + 1}s{i} on level {n}")
    # d_i s_j on level n (s_j: n -> n+1, d_i: n+1 -> n)
    for n in range(L):
        ident = np.eye(s.levels[n].dim, dtype=np.uint8)
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = mm(s.face(n + 1, i), s.degen(n, j))
                if i < j:
                    rhs = mm(s.degen(n - 1, j - 1), s.face(n, i))
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = mm(s.degen(n - 1, j), s.face(n, i - 1))
                if not eq(lhs, rhs):
                    out.append(f"d{i}s{j} identity fails on level {n}")
    # ring homomorphisms
    maps = [(n, n - 1, f"d{i}", m) for n in range(1, L + 1) for i, m in enumerate(s.faces[n])]
    maps += [(n, n + 1, f"s{i}", m) for n in range(L) for i, m in enumerate(s.degens[n])]
    for src, dst, label, m in maps:
        a, b = s.levels[src], s.levels[dst]
        if not eq(s.apply(m, a.unit), b.unit):
            out.append(f"{label} on level {src} does not preserve the unit")
            continue
        bad = _multiplicative_failure(f, m, a, b)
        if bad is not None:
            out.append(f"{label} on level {src} is not multiplicative on (e{bad[0]}, e{bad[1]})")
    return out


def _multiplicative_failure(f, m, a, b):
    """First basis pair (i, j) with m(e_i e_j) != m(e_i) m(e_j), or None."""
    ds, dd = a.dim, b.dim
    lhs = matmul(f, a.mul.reshape(ds * ds, ds), m.T).reshape(ds, ds, dd)
    # t[i, b, c] = coordinate c of m(e_i) * e_b
    t = matmul(f, m.T, b.mul.reshape(dd, dd * dd)).reshape(ds, dd, dd)
    rhs = matmul(f, t.transpose(0, 2, 1).reshape(ds * dd, dd), m).reshape(ds, dd, ds)
    diff = np.argwhere(np.any(lhs != rhs.transpose(0, 2, 1), axis=2))
    return None if diff.size == 0 else tuple(int(v) for v in diff[0])


def function_simplicial_ring(y: CosimplicialSet, ring: AlgebraPresentation,
                             name: str = "") -> TruncatedSimplicialRing:
    """Level n is the ring of R-valued functions on Y_n, with pointwise operations.

    Faces and degeneracies precompose with the cofaces and codegeneracies of Y.
    Coordinates are indexed y * dim(R) + c.
    """
    bad = cosimplicial_violations(y)
    if bad:
        raise SimplicialError("invalid cosimplicial set: " + "; ".join(bad[:3]))
    f, r = ring.field, ring.dim
    levels = []
    for n, size in enumerate(y.sizes):
        d = size * r
        mul = np.zeros((d, d, d), dtype=np.uint8)
        for pt in range(size):
            blk = slice(pt * r, (pt + 1) * r)
            mul[blk, blk, blk] = ring.mul
        unit = np.tile(ring.unit, size)
        levels.append(make_ring(f, mul, unit, name=f"{ring.name}^{size}"))

    def precompose(table, src_size, dst_size):
        # (g f)(pt) = f(table[pt]) for pt in the destination index set
        m = np.zeros((dst_size * r, src_size * r), dtype=np.uint8)
        for pt, img in enumerate(table):
            for c in range(r):
                m[pt * r + c, img * r + c] = 1
        return m

    faces = [()] + [
        tuple(precompose(tab, y.sizes[n], y.sizes[n - 1]) for tab in y.cofaces[n])
        for n in range(1, y.L + 1)
    ]
    degens = [
        tuple(precompose(tab, y.sizes[n], y.sizes[n + 1]) for tab in y.codegeneracies[n])
        for n in range(y.L)
    ]
    return TruncatedSimplicialRing(f, tuple(levels), tuple(faces), tuple(degens),
                                   name=name or f"Fun(Y, {ring.name})")


def constant_simplicial_ring(ring: AlgebraPresentation, L: int) -> TruncatedSimplicialRing:
    return function_simplicial_ring(constant_cosimplicial(L), ring, name=f"const({ring.name})")


def square_zero_circle(field: FieldSpec, L: int) -> TruncatedSimplicialRing:
    """F (+) reduced chains on the simplicial circle Delta[1]/boundary, square zero.

    The nonbasepoint n-simplices are the sequences 0^j 1^(n+1-j), 1 <= j <= n.
    Its first homotopy group is F; the levels fail every identity x^m = x.
    """
    levels = []
    for n in range(L + 1):
        d = 1 + n
        mul = np.zeros((d, d, d), dtype=np.uint8)
        mul[0, :, :] = np.eye(d, dtype=np.uint8)
        mul[:, 0, :] = np.eye(d, dtype=np.uint8)
        unit = np.zeros(d, dtype=np.uint8)
        unit[0] = 1
        levels.append(make_ring(field, mul, unit, name=f"F+V{n}"))

    def face(n, i):
        m = np.zeros((n, n + 1), dtype=np.uint8)
        m[0, 0] = 1
        for j in range(1, n + 1):
            jj = j - 1 if i < j else j
            if 0 < jj < n:
                m[jj, j] = 1
        return m

    def degen(n, i):
        m = np.zeros((n + 2, n + 1), dtype=np.uint8)
        m[0, 0] = 1
        for j in range(1, n + 1):
            m[j + 1 if i < j else j, j] = 1
        return m

    faces = [()] + [tuple(face(n, i) for i in range(n + 1)) for n in range(1, L + 1)]
    degens = [tuple(degen(n, i) for i in range(n + 1)) for n in range(L)]
    return TruncatedSimplicialRing(field, tuple(levels), tuple(faces), tuple(degens),
                                   name=f"F{field.card}+S1")


# ---------------------------------------------------------------------------
# Moore complex
# ---------------------------------------------------------------------------


@dataclass
class MooreComplexReport:
    L: int
    normalized_dims: list[int]
    pi: list[int]

    def as_dict(self) -> dict:
        return {"L": self.L, "normalized_dims": self.normalized_dims,
                "pi": [{"n": n, "dim": d} for n, d in enumerate(self.pi)]}


def moore_basis(s: TruncatedSimplicialRing, n: int) -> np.ndarray:
    """Columns spanning N_n = intersection of ker d_i over i >= 1."""
    dim = s.levels[n].dim
    if n == 0:
        return np.eye(dim, dtype=np.uint8)
    stacked = np.vstack([s.face(n, i) for i in range(1, n + 1)])
    return kernel(s.field, stacked)


def cycle_basis(s: TruncatedSimplicialRing, n: int) -> np.ndarray:
    """Columns spanning the Moore cycles: all faces vanish."""
    if n == 0:
        return np.eye(s.levels[0].dim, dtype=np.uint8)
    stacked = np.vstack([s.face(n, i) for i in range(n + 1)])
    return kernel(s.field, stacked)


def moore_homotopy(s: TruncatedSimplicialRing, up_to: int | None = None) -> MooreComplexReport:
    """dim pi_n for 0 <= n <= up_to from the normalized complex (N_*, d_0)."""
    if up_to is None:
        up_to = s.L - 1
    if up_to > s.L - 1 or up_to < 0:
        raise SimplicialError(f"need levels up to {up_to + 1}, have L={s.L}")
    f = s.field
    bases = [moore_basis(s, n) for n in range(up_to + 2)]
    # rank of d_0 restricted to N_n
    ranks = [0] + [rank(f, matmul(f, s.face(n, 0), bases[n])) if bases[n].shape[1] else 0
                   for n in range(1, up_to + 2)]
    pi = [bases[n].shape[1] - ranks[n] - ranks[n + 1] for n in range(up_to + 1)]
    return MooreComplexReport(s.L, [b.shape[1] for b in bases], pi)


# ---------------------------------------------------------------------------
# Power identities and the product witness
# ---------------------------------------------------------------------------


def _p_exponent(m: int, p: int) -> int | None:
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e if m == 1 else None


def power_identity_check(ring: AlgebraPresentation, m: int, limit: int = 10**6) -> bool:
    """True iff x^m = x for every element.

    For a commutative ring and m = p^e the map x -> x^m is F_p-linear, so it
    is compared with the identity on a basis.  Otherwise every element is
    enumerated, up to ``limit`` elements.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    rp = ring.restrict()
    p, d = rp.p, rp.dim
    e = _p_exponent(m, p)
    if e is not None and np.array_equal(rp.mul, rp.mul.transpose(1, 0, 2)):
        return bool(np.array_equal(frobenius_power(rp, e), np.eye(d, dtype=np.uint8)))
    count = p**d
    if count > limit:
        raise ValueError(f"ring has {count} elements > enumeration limit {limit}")
    mul = rp.mul.astype(np.int64)
    unit = rp.unit.astype(np.int64)

    def times(x, y):
        return np.einsum("ni,nj,ijc->nc", x, y, mul) % p

    batch = 1 << 14
    for start in range(0, count, batch):
        idx = np.arange(start, min(count, start + batch))
        x = np.stack([(idx // p**i) % p for i in range(d)], axis=1)
        result = np.broadcast_to(unit, x.shape).copy()
        base, e = x.copy(), m
        while e:
            if e & 1:
                result = times(result, base)
            base = times(base, base)
            e >>= 1
        if not np.array_equal(result, x):
            return False
    return True


def _faces_of(s, n, v):
    return [s.apply(s.face(n, i), v) for i in range(n + 1)]


def lemma21_witness(s: TruncatedSimplicialRing, n: int, x, y):
    """z = s_0(xy) - s_1(x) s_0(y) in level n+1, with its face checks.

    Requires x, y in N_n and d_0 x = 0.  The report records, for every face,
    whether d_0 z = xy and d_i z = 0 (i >= 1).
    """
    if n < 1:
        raise SimplicialError("the witness needs n >= 1")
    if n + 1 > s.L:
        raise SimplicialError(f"level {n + 1} is beyond the truncation L={s.L}")
    f = s.field
    x = np.asarray(x, dtype=np.uint8)
    y = np.asarray(y, dtype=np.uint8)
    for label, v in (("x", x), ("y", y)):
        for i, w in enumerate(_faces_of(s, n, v)):
            if i >= 1 and w.any():
                raise SimplicialError(f"{label} is not in N_{n}: d{i}({label}) != 0")
    if s.apply(s.face(n, 0), x).any():
        raise SimplicialError("x is not a cycle: d0(x) != 0")
    ring_n, ring_up = s.levels[n], s.levels[n + 1]
    xy = ring_n.multiply(x, y)
    z = mat_sub(f, s.apply(s.degen(n, 0), xy),
                ring_up.multiply(s.apply(s.degen(n, 1), x), s.apply(s.degen(n, 0), y)))
    faces = _faces_of(s, n + 1, z)
    checks = [bool(np.array_equal(faces[0], xy))] + [not w.any() for w in faces[1:]]
    report = {"n": n, "faces_ok": checks, "ok": all(checks)}
    return z, report


def sample_lemma21(s: TruncatedSimplicialRing, n: int, trials: int, rng: np.random.Generator) -> dict:
    """Random (cycle x, y in N_n) trials of the witness; counts passes and skips."""
    f = s.field
    cycles = cycle_basis(s, n)
    normal = moore_basis(s, n)
    passed = failed = skipped = 0
    for _ in range(trials):
        if cycles.shape[1] == 0:
            skipped += 1
            continue
        cx = rng.integers(0, f.card, size=cycles.shape[1])
        cy = rng.integers(0, f.card, size=normal.shape[1])
        x = matmul(f, cycles, cx[:, None].astype(np.uint8))[:, 0]
        y = matmul(f, normal, cy[:, None].astype(np.uint8))[:, 0] if normal.shape[1] else np.zeros(
            s.levels[n].dim, dtype=np.uint8)
        _, rep = lemma21_witness(s, n, x, y)
        if rep["ok"]:
            passed += 1
        else:
            failed += 1
    return {"ring": s.name, "n": n, "trials": trials, "passed": passed,
            "failed": failed, "skipped": skipped}


def cycle_is_boundary(s: TruncatedSimplicialRing, n: int, x, m: int) -> bool:
    """For a cycle x with x^m = x: the witness for (x, x^(m-1)) has Moore boundary x."""
    x = np.asarray(x, dtype=np.uint8)
    ring = s.levels[n]
    if not np.array_equal(ring.power(x, m), x):
        raise SimplicialError("x does not satisfy x^m = x")
    z, rep = lemma21_witness(s, n, x, ring.power(x, m - 1))
    return rep["ok"] and np.array_equal(s.apply(s.face(n + 1, 0), z), x)


# ---------------------------------------------------------------------------
# JSON specs
# ---------------------------------------------------------------------------


def cosimplicial_from_spec(spec: dict) -> CosimplicialSet:
    preset = spec.get("preset")
    if preset == "standard":
        return standard_cosimplicial(int(spec["L"]))
    if preset == "simplex":
        return simplex_cosimplicial(int(spec["k"]), int(spec["L"]))
    if preset == "constant":
        return constant_cosimplicial(int(spec["L"]))
    if preset is not None:
        raise SimplicialError(f"unknown cosimplicial preset {preset!r}")
    try:
        sizes = tuple(int(v) for v in spec["sizes"])
        cofaces = (( ),) + tuple(tuple(tuple(t) for t in lvl) for lvl in spec["cofaces"])
        codegs = tuple(tuple(tuple(t) for t in lvl) for lvl in spec["codegeneracies"])
    except (KeyError, TypeError) as exc:
        raise SimplicialError(f"malformed cosimplicial spec: {exc}") from exc
    return CosimplicialSet(sizes, cofaces, codegs)


def simplicial_from_spec(spec: dict) -> TruncatedSimplicialRing:
    """``{"ring": <algebra spec>, "cosimplicial": {...}}`` or ``{"preset": "circle", "p": 2, "L": 5}``.

    The ring may also be ``"zoo:<name>"`` or ``{"constructor": "matrix", "p", "size"}``
    for a full matrix ring.

    In explicit cosimplicial specs ``cofaces`` lists levels 1..L and
    ``codegeneracies`` lists levels 0..L-1.
    """
    from .algebra import algebra_from_spec
    from .fq import field_make

    if spec.get("preset") == "circle":
        return square_zero_circle(field_make(int(spec["p"]), int(spec.get("k", 1))), int(spec["L"]))
    rspec = spec.get("ring")
    if isinstance(rspec, str) and rspec.startswith("zoo:"):
        from .zoo import zoo_algebra

        ring = zoo_algebra(rspec[4:])
    elif isinstance(rspec, dict) and rspec.get("constructor") == "matrix":
        ring = matrix_ring(field_make(int(rspec["p"]), int(rspec.get("k", 1))), int(rspec["size"]))
    elif isinstance(rspec, dict):
        ring = algebra_from_spec(rspec)
    else:
        raise SimplicialError("simplicial spec needs a 'ring' entry or a circle preset")
    if "cosimplicial" not in spec:
        raise SimplicialError("simplicial spec needs a 'cosimplicial' entry")
    return function_simplicial_ring(cosimplicial_from_spec(spec["cosimplicial"]), ring)
