"""Linear solvers for derivations, central derivations, centroids, quasi-centroids.

Each operator condition is linear in the n*n entries of the unknown map, so
each space is the exact nullspace of an assembled rational matrix.  Unknowns
are ordered column-major over the map's matrix: entry (row r, col c) of the
map sits at flat index c*n + r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PRODUCT_TAGS, TridendriformAlgebra, full_space, center, subspace_product
from .exactla import (
    DimensionMismatchError,
    Matrix,
    SubspaceBasis,
    Vector,
    contains,
    nullspace,
    rank,
)

KINDS = ("derivation", "central-derivation", "centroid", "quasi-centroid")


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown operator kind: {kind!r} (expected one of {KINDS})")


def flatten_map(m: Matrix) -> Vector:
    """Column-major flattening of a square map matrix."""
    return tuple(m.at(r, c) for c in range(m.cols) for r in range(m.rows))


def map_from_vector(v: Vector, n: int) -> Matrix:
    if len(v) != n * n:
        raise DimensionMismatchError(f"vector of length {len(v)} is not {n}x{n}")
    return Matrix(n, n, tuple(v[c * n + r] for r in range(n) for c in range(n)))


def assemble_system(alg: TridendriformAlgebra, kind: str) -> Matrix:
    """Constraint matrix M with the operator condition equivalent to M vec(op) = 0.

    Rows are generated per (product, i, j, q), in that order.  With the map X
    acting by X(e_c) = sum_r X[r][c] e_r and T the product tensor:

    - derivation:          sum_k T[i][j][k] X[q][k] - sum_p X[p][i] T[p][j][q]
                           - sum_p X[p][j] T[i][p][q] = 0
    - centroid:            X(e_i) o e_j = X(e_i o e_j) and
                           X(e_i o e_j) = e_i o X(e_j)   (two rows)
    - quasi-centroid:      X(e_i) o e_j = e_i o X(e_j)
    - central-derivation:  X(e_i o e_j) = 0, X(e_i) o e_j = 0 and
                           e_i o X(e_j) = 0               (three rows)

    The central-derivation system includes the right-annihilation family so
    that every solution is in particular a derivation (both displayed
    conditions force the third once the space is to sit inside the derivation
    algebra).
    """
    _check_kind(kind)
    n = alg.dim
    nn = n * n

    def idx(r: int, c: int) -> int:
        return c * n + r

    rows: list[list[Fraction]] = []
    for tag in PRODUCT_TAGS:
        t = alg.tensor(tag)
        for i in range(n):
            for j in range(n):
                for q in range(n):
                    image_of_product = [Fraction(0)] * nn  # X(e_i o e_j), coord q
                    for k in range(n):
                        if t[i][j][k] != 0:
                            image_of_product[idx(q, k)] += t[i][j][k]
                    act_left = [Fraction(0)] * nn  # X(e_i) o e_j, coord q
                    for p in range(n):
                        if t[p][j][q] != 0:
                            act_left[idx(p, i)] += t[p][j][q]
                    act_right = [Fraction(0)] * nn  # e_i o X(e_j), coord q
                    for p in range(n):
                        if t[i][p][q] != 0:
                            act_right[idx(p, j)] += t[i][p][q]

                    if kind == "derivation":
                        rows.append(
                            [image_of_product[m] - act_left[m] - act_right[m] for m in range(nn)]
                        )
                    elif kind == "centroid":
                        rows.append([act_left[m] - image_of_product[m] for m in range(nn)])
                        rows.append([image_of_product[m] - act_right[m] for m in range(nn)])
                    elif kind == "quasi-centroid":
                        rows.append([act_left[m] - act_right[m] for m in range(nn)])
                    else:  # central-derivation
                        rows.append(image_of_product)
                        rows.append(act_left)
                        rows.append(act_right)
    if not rows:
        return Matrix.zero(0, nn)
    return Matrix.from_rows(rows)


@dataclass(frozen=True)
class OperatorSpace:
    kind: str
    algebra_dim: int
    basis: tuple[Matrix, ...]
    solution_space: SubspaceBasis

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains_map(self, m: Matrix) -> bool:
        if m.rows != self.algebra_dim or m.cols != self.algebra_dim:
            raise DimensionMismatchError("map size != algebra dimension")
        return contains(self.solution_space, flatten_map(m))


def operator_space(alg: TridendriformAlgebra, kind: str) -> OperatorSpace:
    """Solve the operator condition exactly; basis maps are canonical."""
    system = assemble_system(alg, kind)
    space = nullspace(system)
    basis = tuple(map_from_vector(v, alg.dim) for v in space.vectors)
    return OperatorSpace(kind, alg.dim, basis, space)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    if a.rows != a.cols or b.rows != b.cols or a.rows != b.rows:
        raise DimensionMismatchError("commutator needs equal square matrices")
    return a.matmul(b) - b.matmul(a)


def closure_check(
    alg: TridendriformAlgebra, left_kind: str, right_kind: str, target_kind: str
) -> bool:
    """Is [left space, right space] contained in the target space?

    Checked on all pairs of canonical basis maps, which suffices by
    bilinearity of the commutator.
    """
    for kind in (left_kind, right_kind, target_kind):
        _check_kind(kind)
    left = operator_space(alg, left_kind)
    right = operator_space(alg, right_kind)
    target = operator_space(alg, target_kind)
    return all(
        target.contains_map(commutator(x, y)) for x in left.basis for y in right.basis
    )


def _tensor_rank(alg: TridendriformAlgebra, tag: str) -> int:
    """Rank of the product tensor flattened to an n^2-by-n matrix.

    Row (i, j) is the coefficient vector of e_i o e_j, so the rank is the
    dimension of the span of all basis products under that one product.
    """
    t = alg.tensor(tag)
    n = alg.dim
    rows = [list(t[i][j]) for i in range(n) for j in range(n)]
    return rank(Matrix.from_rows(rows))


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism-invariant dimensions used to certify non-isomorphism."""

    algebra_dim: int
    der_dim: int
    zder_dim: int
    c_dim: int
    qc_dim: int
    center_dim: int
    product_dim: int
    prec_rank: int
    succ_rank: int
    vee_rank: int

    def as_dict(self) -> dict[str, int]:
        return {
            "algebra_dim": self.algebra_dim,
            "der_dim": self.der_dim,
            "zder_dim": self.zder_dim,
            "c_dim": self.c_dim,
            "qc_dim": self.qc_dim,
            "center_dim": self.center_dim,
            "product_dim": self.product_dim,
            "prec_rank": self.prec_rank,
            "succ_rank": self.succ_rank,
            "vee_rank": self.vee_rank,
        }


def fingerprint(alg: TridendriformAlgebra) -> Fingerprint:
    full = full_space(alg)
    return Fingerprint(
        algebra_dim=alg.dim,
        der_dim=operator_space(alg, "derivation").dimension,
        zder_dim=operator_space(alg, "central-derivation").dimension,
        c_dim=operator_space(alg, "centroid").dimension,
        qc_dim=operator_space(alg, "quasi-centroid").dimension,
        center_dim=center(alg).dimension,
        product_dim=subspace_product(alg, full, full).dimension,
        prec_rank=_tensor_rank(alg, "prec"),
        succ_rank=_tensor_rank(alg, "succ"),
        vee_rank=_tensor_rank(alg, "vee"),
    )


@dataclass(frozen=True)
class CompareResult:
    """Outcome of an invariant comparison; never asserts isomorphism."""

    distinguishable: bool
    invariant: str | None = None
    left: int | None = None
    right: int | None = None

    @property
    def verdict(self) -> str:
        return "distinguishable" if self.distinguishable else "inconclusive"

    def as_dict(self) -> dict:
        doc: dict = {"verdict": self.verdict}
        if self.distinguishable:
            doc.update({"invariant": self.invariant, "left": self.left, "right": self.right})
        return doc


def compare(f1: Fingerprint, f2: Fingerprint) -> CompareResult:
    """Distinguishable with a certificate iff any invariant differs."""
    d1, d2 = f1.as_dict(), f2.as_dict()
    for name in d1:
        if d1[name] != d2[name]:
            return CompareResult(True, name, d1[name], d2[name])
    return CompareResult(False)
