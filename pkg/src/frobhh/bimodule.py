"""Left modules and bimodules over a commutative algebra, and the twist Phi^n."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraPresentation, frobenius_power, ideal_closure, psi, radical
from .fq import mat_add, mat_scale, matmul, restrict_matrix, rref


class ModuleError(ValueError):
    pass


def _combine(field, coeffs, mats, dim) -> np.ndarray:
    """sum_i coeffs[i] * mats[i]."""
    out = np.zeros((dim, dim), dtype=np.uint8)
    for c, m in zip(coeffs, mats):
        c = int(c)
        if c:
            out = mat_add(field, out, mat_scale(field, c, m))
    return out


def _check_action(alg: AlgebraPresentation, act, dim: int, side: str):
    f = alg.field
    if len(act) != alg.dim or any(m.shape != (dim, dim) for m in act):
        raise ModuleError(f"{side} action needs {alg.dim} matrices of shape {(dim, dim)}")
    if not np.array_equal(_combine(f, alg.unit, act, dim), np.eye(dim, dtype=np.uint8)):
        raise ModuleError(f"unit does not act as the identity on the {side}")
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = _combine(f, alg.mul[i, j], act, dim)
            # commutative algebra: left and right actions both compose this way
            rhs = matmul(f, act[i], act[j])
            if not np.array_equal(lhs, rhs):
                raise ModuleError(f"{side} action of b{i}*b{j} is not the composite")


@dataclass(frozen=True, eq=False)
class LeftModule:
    algebra: AlgebraPresentation
    dim: int
    act: tuple

    def __post_init__(self):
        _check_action(self.algebra, self.act, self.dim, "left")

    def action_of(self, u) -> np.ndarray:
        return _combine(self.algebra.field, u, self.act, self.dim)

    def restrict(self) -> "LeftModule":
        """The module over the F_p-restriction of its algebra."""
        f = self.algebra.field
        if f.k == 1:
            return self
        ap = self.algebra.restrict()
        k = f.k
        acts = []
        for i in range(self.algebra.dim):
            for j in range(k):
                acts.append(restrict_matrix(f, mat_scale(f, f.pow(f.generator, j), self.act[i])))
        return LeftModule(ap, self.dim * k, tuple(acts))


@dataclass(frozen=True, eq=False)
class Bimodule:
    algebra: AlgebraPresentation
    dim: int
    left_act: tuple
    right_act: tuple
    label: str = ""

    def __post_init__(self):
        _check_action(self.algebra, self.left_act, self.dim, "left")
        _check_action(self.algebra, self.right_act, self.dim, "right")
        f = self.algebra.field
        for i, li in enumerate(self.left_act):
            for j, rj in enumerate(self.right_act):
                if not np.array_equal(matmul(f, li, rj), matmul(f, rj, li)):
                    raise ModuleError(f"left action of b{i} and right action of b{j} do not commute")

    def restrict(self) -> "Bimodule":
        f = self.algebra.field
        if f.k == 1:
            return self
        left = LeftModule(self.algebra, self.dim, self.left_act).restrict()
        right = LeftModule(self.algebra, self.dim, self.right_act).restrict()
        return Bimodule(left.algebra, left.dim, left.act, right.act, self.label)


def regular_module(a: AlgebraPresentation) -> LeftModule:
    return LeftModule(a, a.dim, tuple(a.left_mult(i) for i in range(a.dim)))


def quotient_module(a: AlgebraPresentation, ideal_rows) -> LeftModule:
    """The cyclic module A/I for the ideal spanned by the given rows."""
    f = a.field
    ideal = ideal_closure(a, ideal_rows)
    if ideal.shape[0]:
        red, piv = rref(f, ideal)
        red = red[: len(piv)]
    else:
        red, piv = ideal, []
    comp = [c for c in range(a.dim) if c not in set(piv)]
    proj = np.eye(a.dim, dtype=np.uint8)
    for row, pc in zip(red, piv):
        proj[:, pc] = (-row.astype(np.int64)) % f.p if f.k == 1 else mat_scale(f, f.neg(1), row)
        proj[pc, pc] = 0
    proj = proj[comp]
    sec = np.zeros((a.dim, len(comp)), dtype=np.uint8)
    for j, c in enumerate(comp):
        sec[c, j] = 1
    acts = tuple(matmul(f, proj, matmul(f, a.left_mult(i), sec)) for i in range(a.dim))
    return LeftModule(a, len(comp), acts)


def residue_module(a: AlgebraPresentation) -> LeftModule:
    """A/rad(A) over the F_p-restriction of ``a``."""
    ap = a.restrict()
    return quotient_module(ap, radical(ap))


def psi_module(a: AlgebraPresentation, n: int) -> LeftModule:
    q = psi(a, n)
    return LeftModule(q.source, q.quotient_dim, tuple(q.action_matrices()))


def regular_bimodule(a: AlgebraPresentation) -> Bimodule:
    mats = tuple(a.left_mult(i) for i in range(a.dim))
    return Bimodule(a, a.dim, mats, mats, label=f"{a.name} (regular)")


def phi_twist(a: AlgebraPresentation, m: LeftModule | None = None, n: int = 1) -> Bimodule:
    """Phi^n(M): M on the left, m . b = b^{p^n} m on the right.

    The result lives over the F_p-restriction of ``a`` because the twist is
    only F_p-linear.
    """
    if n < 0:
        raise ModuleError("twist exponent must be >= 0")
    if m is None:
        m = regular_module(a)
    if not m.algebra.same_as(a) and not m.algebra.same_as(a.restrict()):
        raise ModuleError("module is over a different algebra")
    m = m.restrict()
    ap = a.restrict()
    frob = frobenius_power(ap, n)
    right = tuple(m.action_of(frob[:, i]) for i in range(ap.dim))
    return Bimodule(ap, m.dim, m.act, right, label=f"Phi^{n}")
