"""Finite-dimensional unital commutative algebras by structure constants.

An algebra over F_q is stored as a (dim, dim, dim) array ``mul`` with
``mul[i, j]`` the coordinate vector of b_i * b_j.  Everything involving the
Frobenius map is F_p-linear only, so it is computed on the F_p-restriction of
the algebra (see :meth:`AlgebraPresentation.restrict`).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .fq import FieldSpec, field_make, mat_scale, mat_sub, matmul, rank, restrict_matrix, row_basis, rref

DEFAULT_DIM_CAP = 4096


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    field: FieldSpec
    dim: int
    basis_names: tuple[str, ...]
    unit: np.ndarray
    mul: np.ndarray
    name: str = ""
    # cardinality of a field K the algebra is known to be defined over
    scalar_card: int = 0
    _restriction: list = dc_field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.scalar_card:
            object.__setattr__(self, "scalar_card", self.field.card)
        for arr in (self.unit, self.mul):
            arr.flags.writeable = False

    def __repr__(self):
        return f"AlgebraPresentation({self.name or '?'}, {self.field!r}, dim={self.dim})"

    @property
    def p(self) -> int:
        return self.field.p

    def same_as(self, other: "AlgebraPresentation") -> bool:
        return (
            self.field == other.field
            and self.dim == other.dim
            and np.array_equal(self.unit, other.unit)
            and np.array_equal(self.mul, other.mul)
        )

    # -- arithmetic --------------------------------------------------------

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.uint8)
        v[i] = 1
        return v

    def left_mult(self, i: int) -> np.ndarray:
        """Matrix of x -> b_i x (columns are images of the basis)."""
        return self.mul[i].T.copy()

    def mult_matrix(self, u) -> np.ndarray:
        """Matrix of x -> u x for an arbitrary element u."""
        u = np.asarray(u, dtype=np.uint8)
        flat = matmul(self.field, u[None, :], self.mul.reshape(self.dim, self.dim * self.dim))
        return flat.reshape(self.dim, self.dim).T.copy()

    def multiply(self, u, v) -> np.ndarray:
        return matmul(self.field, self.mult_matrix(u), np.asarray(v, dtype=np.uint8)[:, None])[:, 0]

    def power(self, u, e: int) -> np.ndarray:
        result = self.unit.copy()
        base = np.asarray(u, dtype=np.uint8)
        while e:
            if e & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            e >>= 1
        return result

    def elements(self):
        """Every element as a coordinate vector (q**dim of them)."""
        for coords in itertools.product(range(self.field.card), repeat=self.dim):
            yield np.array(coords, dtype=np.uint8)

    # -- change of scalars -------------------------------------------------

    def restrict(self) -> "AlgebraPresentation":
        """The same ring viewed as an F_p-algebra; basis t^j b_i has index i*k + j."""
        if self.field.k == 1:
            return self
        if self._restriction:
            return self._restriction[0]
        f, k, d = self.field, self.field.k, self.dim
        fp = field_make(f.p, 1)
        new_dim = d * k
        mul = np.zeros((new_dim, new_dim, new_dim), dtype=np.uint8)
        powers = [f.pow(f.generator, j) for j in range(k)]
        for i in range(d):
            li = self.left_mult(i)
            for j in range(k):
                big = restrict_matrix(f, mat_scale(f, powers[j], li))
                mul[i * k + j] = big.T
        unit = np.concatenate([f.digits(int(c)) for c in self.unit]).astype(np.uint8)
        names = tuple(
            (n if j == 0 else f"t^{j}*{n}" if j > 1 else f"t*{n}")
            for n in self.basis_names for j in range(k)
        )
        out = AlgebraPresentation(
            fp, new_dim, names, unit, mul,
            name=f"{self.name}|F{f.p}", scalar_card=self.scalar_card,
        )
        self._restriction.append(out)
        return out


# ---------------------------------------------------------------------------
# Validation and constructors
# ---------------------------------------------------------------------------


def validate_algebra(a: AlgebraPresentation, commutative: bool = True, associative: bool = True):
    """Raise AlgebraError naming the first violated axiom."""
    d, f = a.dim, a.field
    if a.mul.shape != (d, d, d) or a.unit.shape != (d,):
        raise AlgebraError(f"table shapes {a.mul.shape}/{a.unit.shape} do not match dim {d}")
    if len(a.basis_names) != d:
        raise AlgebraError("basis_names length differs from dim")
    if commutative:
        diff = np.argwhere(np.any(a.mul != a.mul.transpose(1, 0, 2), axis=2))
        if diff.size:
            i, j = diff[0]
            raise AlgebraError(f"commutativity fails: b{i}*b{j} != b{j}*b{i}")
    ul = a.mult_matrix(a.unit)
    if not np.array_equal(ul, np.eye(d, dtype=np.uint8)):
        j = int(np.argwhere(np.any(ul != np.eye(d, dtype=np.uint8), axis=0))[0][0])
        raise AlgebraError(f"unit law fails on b{j}")
    if associative:
        # (b_i b_j) b_l vs b_i (b_j b_l), all triples at once
        flat = a.mul.reshape(d * d, d)
        left = matmul(f, flat, a.mul.reshape(d, d * d)).reshape(d, d, d, d)
        right = _assoc_right(a)
        bad = np.argwhere(np.any(left != right, axis=3))
        if bad.size:
            i, j, l = bad[0]
            raise AlgebraError(f"associativity fails on (b{i}*b{j})*b{l}")
    return a


def _assoc_right(a: AlgebraPresentation) -> np.ndarray:
    """right[i, j, l] = b_i (b_j b_l)."""
    d = a.dim
    out = np.empty((d, d, d, d), dtype=np.uint8)
    for i in range(d):
        li = a.left_mult(i)
        # columns of li applied to every product b_j b_l
        out[i] = matmul(a.field, a.mul.reshape(d * d, d), li.T).reshape(d, d, d)
    return out


def algebra_from_structure(
    field: FieldSpec, mul, unit, basis_names=None, name: str = "", scalar_card: int = 0
) -> AlgebraPresentation:
    mul = np.asarray(mul, dtype=np.int64)
    unit = np.asarray(unit, dtype=np.int64)
    if mul.ndim != 3:
        raise AlgebraError("mul must be a dim x dim table of coordinate vectors")
    d = mul.shape[0]
    if (mul.size and (mul.min() < 0 or mul.max() >= field.card)) or (unit.min() < 0 or unit.max() >= field.card):
        raise AlgebraError(f"structure constants must lie in 0..{field.card - 1}")
    if basis_names is None:
        basis_names = [f"b{i}" for i in range(d)]
    a = AlgebraPresentation(
        field, d, tuple(basis_names), unit.astype(np.uint8), mul.astype(np.uint8),
        name=name, scalar_card=scalar_card,
    )
    return validate_algebra(a)


def _monomial_name(exps) -> str:
    parts = []
    for v, e in enumerate(exps, start=1):
        if e:
            var = f"x{v}" if len(exps) > 1 else "x"
            parts.append(var if e == 1 else f"{var}^{e}")
    return "*".join(parts) or "1"


def truncated_poly(field: FieldSpec, exponents, cap: int = DEFAULT_DIM_CAP) -> AlgebraPresentation:
    """F_q[x_1..x_d]/(x_i^{e_i}) on the monomial basis in graded-lex order.

    Monomials are sorted by total degree, ties broken so that higher powers of
    earlier variables come first (1, x1, x2, x1^2, x1*x2, ...).
    """
    exponents = [int(e) for e in exponents]
    if not exponents or any(e < 2 for e in exponents):
        raise AlgebraError("truncation exponents must all be >= 2")
    d = int(np.prod(exponents))
    if d > cap:
        raise AlgebraError(f"dimension {d} exceeds cap {cap}")
    monos = sorted(itertools.product(*[range(e) for e in exponents]),
                   key=lambda m: (sum(m), tuple(-x for x in m)))
    index = {m: i for i, m in enumerate(monos)}
    mul = np.zeros((d, d, d), dtype=np.uint8)
    for i, m1 in enumerate(monos):
        for j, m2 in enumerate(monos):
            s = tuple(a + b for a, b in zip(m1, m2))
            if all(x < e for x, e in zip(s, exponents)):
                mul[i, j, index[s]] = 1
    unit = np.zeros(d, dtype=np.uint8)
    unit[0] = 1
    label = ",".join(f"x{v + 1}^{e}" if len(exponents) > 1 else f"x^{e}" for v, e in enumerate(exponents))
    name = f"F{field.card}[{','.join('x' + str(v + 1) for v in range(len(exponents))) if len(exponents) > 1 else 'x'}]/({label})"
    return algebra_from_structure(field, mul, unit, [_monomial_name(m) for m in monos], name=name)


def finite_field_algebra(p: int, d: int) -> AlgebraPresentation:
    """F_{p^d} as a d-dimensional F_p-algebra on the power basis 1, t, ..., t^{d-1}."""
    big = field_make(p, d)
    fp = field_make(p, 1)
    mul = np.zeros((d, d, d), dtype=np.uint8)
    for i in range(d):
        for j in range(d):
            mul[i, j] = big.digits(big.mul(p**i, p**j))
    unit = np.zeros(d, dtype=np.uint8)
    unit[0] = 1
    names = ["1"] + ["t" if i == 1 else f"t^{i}" for i in range(1, d)]
    return algebra_from_structure(fp, mul, unit, names, name=f"F{p**d}/F{p}", scalar_card=p**d)


def _outer(field: FieldSpec, u, v) -> np.ndarray:
    return matmul(field, np.asarray(u, dtype=np.uint8)[:, None], np.asarray(v, dtype=np.uint8)[None, :]).reshape(-1)


def algebra_tensor(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """A (x) B over their common field; basis b_i (x) c_j has index i*dim(B) + j."""
    if a.field != b.field:
        raise AlgebraError(f"field mismatch: {a.field!r} vs {b.field!r}")
    f = a.field
    da, db = a.dim, b.dim
    d = da * db
    mul = np.zeros((d, d, d), dtype=np.uint8)
    for i1, j1, i2, j2 in itertools.product(range(da), range(db), range(da), range(db)):
        mul[i1 * db + j1, i2 * db + j2] = _outer(f, a.mul[i1, i2], b.mul[j1, j2])
    unit = _outer(f, a.unit, b.unit)
    names = [f"{x}(x){y}" for x in a.basis_names for y in b.basis_names]
    return algebra_from_structure(
        f, mul, unit, names, name=f"{a.name}(x){b.name}",
        scalar_card=max(a.scalar_card, b.scalar_card),
    )


def algebra_product(a: AlgebraPresentation, b: AlgebraPresentation) -> AlgebraPresentation:
    """Direct product A x B; basis of A followed by basis of B."""
    if a.field != b.field:
        raise AlgebraError(f"field mismatch: {a.field!r} vs {b.field!r}")
    da, db = a.dim, b.dim
    d = da + db
    mul = np.zeros((d, d, d), dtype=np.uint8)
    mul[:da, :da, :da] = a.mul
    mul[da:, da:, da:] = b.mul
    unit = np.concatenate([a.unit, b.unit])
    names = [f"({n},0)" for n in a.basis_names] + [f"(0,{n})" for n in b.basis_names]
    return algebra_from_structure(a.field, mul, unit, names, name=f"{a.name}x{b.name}",
                                  scalar_card=min(a.scalar_card, b.scalar_card))


# ---------------------------------------------------------------------------
# Frobenius and the quotient A/(a - a^{p^n})
# ---------------------------------------------------------------------------


def frobenius_power(a: AlgebraPresentation, n: int) -> np.ndarray:
    """F_p-matrix of x -> x^{p^n} on the F_p-restriction of ``a``."""
    if not 0 <= n <= 32:
        raise AlgebraError("Frobenius exponent n must lie in 0..32")
    ap = a.restrict()
    d = ap.dim
    one_step = np.stack([ap.power(ap.basis_vector(i), ap.p) for i in range(d)], axis=1)
    out = np.eye(d, dtype=np.uint8)
    for _ in range(n):
        out = matmul(ap.field, one_step, out)
    return out


@dataclass(frozen=True, eq=False)
class PsiQuotient:
    """The quotient ring A/(a - a^{p^n}) of the F_p-restriction ``source``."""

    source: AlgebraPresentation
    n: int
    ideal_basis: np.ndarray   # rows, reduced echelon form
    pivots: tuple[int, ...]
    quotient_dim: int

    @property
    def complement(self) -> tuple[int, ...]:
        """Source basis indices whose images form a basis of the quotient."""
        return tuple(c for c in range(self.source.dim) if c not in set(self.pivots))

    def projection(self) -> np.ndarray:
        """Matrix of the quotient map A -> A/I in the complement basis."""
        f, d = self.source.field, self.source.dim
        proj = np.eye(d, dtype=np.uint8)
        for row, pc in zip(self.ideal_basis, self.pivots):
            # e_pc == -(rest of row) modulo the ideal
            proj[:, pc] = mat_sub(f, np.zeros_like(row), row)
            proj[pc, pc] = 0
        return proj[list(self.complement)]

    def section(self) -> np.ndarray:
        d = self.source.dim
        sec = np.zeros((d, self.quotient_dim), dtype=np.uint8)
        for j, c in enumerate(self.complement):
            sec[c, j] = 1
        return sec

    def action_matrices(self) -> list[np.ndarray]:
        """Multiplication by each source basis element, on the quotient."""
        f = self.source.field
        proj, sec = self.projection(), self.section()
        return [matmul(f, proj, matmul(f, self.source.left_mult(i), sec)) for i in range(self.source.dim)]

    def algebra(self) -> AlgebraPresentation:
        """The quotient as an F_p-algebra on the complement basis."""
        src = self.source
        f = src.field
        proj, sec = self.projection(), self.section()
        q = self.quotient_dim
        if q == 0:
            raise AlgebraError("the quotient is the zero ring")
        mul = np.zeros((q, q, q), dtype=np.uint8)
        for i in range(q):
            li = matmul(f, proj, matmul(f, src.mult_matrix(sec[:, i]), sec))
            mul[i] = li.T
        unit = matmul(f, proj, src.unit[:, None])[:, 0]
        names = [src.basis_names[c] for c in self.complement]
        return algebra_from_structure(f, mul, unit, names, name=f"psi^{self.n}({src.name})")


def psi(a: AlgebraPresentation, n: int) -> PsiQuotient:
    """A/(a - a^{p^n}) by closing span{b_i - b_i^{p^n}} under multiplication.

    Basis generators suffice: a -> a - a^{p^n} is additive in characteristic
    p and fixes F_p-scalars.
    """
    if n < 1:
        raise AlgebraError("psi needs n >= 1")
    ap = a.restrict()
    f, d = ap.field, ap.dim
    frob = frobenius_power(ap, n)
    gens = mat_sub(f, np.eye(d, dtype=np.uint8), frob).T   # rows b_i - b_i^{p^n}
    span = row_basis(f, gens)
    while True:
        products = [matmul(f, span, ap.left_mult(i).T) for i in range(d)]
        grown = row_basis(f, np.vstack([span, *products]))
        if grown.shape[0] == span.shape[0]:
            break
        span = grown
    if span.shape[0]:
        red, piv = rref(f, span)
        span = red[: len(piv)]
    else:
        piv = []
    return PsiQuotient(ap, n, span, tuple(piv), d - span.shape[0])


def radical(a: AlgebraPresentation) -> np.ndarray:
    """Nilradical basis (rows): the kernel of x -> x^{p^e} once p^e >= dim."""
    from .fq import kernel

    ap = a.restrict()
    e = 0
    while ap.p**e < ap.dim:
        e += 1
    ker = kernel(ap.field, frobenius_power(ap, e))
    return ker.T.copy()


def ideal_closure(a: AlgebraPresentation, gens) -> np.ndarray:
    """Row basis of the ideal generated by the given element rows."""
    f = a.field
    gens = np.asarray(gens, dtype=np.uint8).reshape(-1, a.dim)
    span = row_basis(f, gens) if gens.shape[0] else gens
    while span.shape[0]:
        products = [matmul(f, span, a.left_mult(i).T) for i in range(a.dim)]
        grown = row_basis(f, np.vstack([span, *products]))
        if grown.shape[0] == span.shape[0]:
            break
        span = grown
    return span


def is_ideal(a: AlgebraPresentation, rows) -> bool:
    rows = np.asarray(rows, dtype=np.uint8).reshape(-1, a.dim)
    base = rank(a.field, rows) if rows.shape[0] else 0
    for i in range(a.dim):
        prod = matmul(a.field, rows, a.left_mult(i).T) if rows.shape[0] else rows
        if prod.shape[0] and rank(a.field, np.vstack([rows, prod])) != base:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON algebra specs
# ---------------------------------------------------------------------------


def algebra_to_spec(a: AlgebraPresentation) -> dict:
    return {
        "p": a.field.p,
        "k": a.field.k,
        "dim": a.dim,
        "name": a.name,
        "basis_names": list(a.basis_names),
        "unit": a.unit.tolist(),
        "mul": a.mul.tolist(),
        "scalar_card": a.scalar_card,
    }


def algebra_from_spec(spec: dict) -> AlgebraPresentation:
    """Build an algebra from a parsed JSON spec.

    Either an explicit table ``{p, k, dim, basis_names, unit, mul}`` (entries
    are field elements encoded as integers) or a constructor call such as
    ``{"constructor": "truncated_poly", "p": 2, "exponents": [2, 2]}``.
    """
    kind = spec.get("constructor")
    if kind is None:
        try:
            f = field_make(int(spec["p"]), int(spec.get("k", 1)))
            d = int(spec["dim"])
            mul = np.asarray(spec["mul"], dtype=np.int64)
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraError(f"malformed algebra spec: {exc}") from exc
        if mul.shape != (d, d, d):
            raise AlgebraError(f"mul has shape {mul.shape}, expected {(d, d, d)}")
        return algebra_from_structure(f, mul, spec["unit"], spec.get("basis_names"), name=spec.get("name", ""),
                                      scalar_card=int(spec.get("scalar_card", 0)))
    if kind == "truncated_poly":
        return truncated_poly(field_make(int(spec["p"]), int(spec.get("k", 1))), spec["exponents"])
    if kind == "finite_field":
        return finite_field_algebra(int(spec["p"]), int(spec["d"]))
    if kind == "tensor":
        factors = [algebra_from_spec(s) for s in spec["factors"]]
        out = factors[0]
        for other in factors[1:]:
            out = algebra_tensor(out, other)
        return out
    if kind == "product":
        factors = [algebra_from_spec(s) for s in spec["factors"]]
        out = factors[0]
        for other in factors[1:]:
            out = algebra_product(out, other)
        return out
    raise AlgebraError(f"unknown constructor {kind!r}")


def load_algebra(path) -> AlgebraPresentation:
    try:
        spec = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{path}: invalid JSON ({exc})") from exc
    return algebra_from_spec(spec)
