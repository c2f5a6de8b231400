"""Rota-Baxter operators on associative algebras and the induced three-product algebra.

A weight-theta Rota-Baxter operator R satisfies
``R(x) o R(y) = R(R(x) o y + x o R(y) + theta * (x o y))``; any such operator
splits the associative product into prec/succ/vee pieces:
``x prec y = x o R(y)``, ``x succ y = R(x) o y``, ``x vee y = theta * (x o y)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import TDAFormatError, TridendriformAlgebra, _freeze_tensor, _zero_tensor, Tensor
from .exactla import DimensionMismatchError, Matrix, Vector, rat, rat_str, vec


class NotAssociativeError(ValueError):
    """Structure constants do not define an associative product."""


class NotRotaBaxterError(ValueError):
    """The Rota-Baxter identity fails; carries a 1-based witness basis pair."""

    def __init__(self, witness: tuple[int, int]):
        self.witness = witness
        super().__init__(
            f"Rota-Baxter identity fails on basis pair (e{witness[0]}, e{witness[1]})"
        )


@dataclass(frozen=True)
class AssociativeAlgebra:
    dim: int
    mu: Tensor

    def __post_init__(self) -> None:
        n = self.dim
        if len(self.mu) != n or any(
            len(plane) != n or any(len(row) != n for row in plane) for plane in self.mu
        ):
            raise DimensionMismatchError("mu is not dim x dim x dim")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for q in range(n):
                        left = sum((self.mu[i][j][p] * self.mu[p][k][q] for p in range(n)), Fraction(0))
                        right = sum((self.mu[j][k][p] * self.mu[i][p][q] for p in range(n)), Fraction(0))
                        if left != right:
                            raise NotAssociativeError(
                                f"associativity fails on basis triple (e{i+1}, e{j+1}, e{k+1})"
                            )

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        xv, yv = vec(x), vec(y)
        if len(xv) != self.dim or len(yv) != self.dim:
            raise DimensionMismatchError("vector length != algebra dimension")
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(xv):
            if a == 0:
                continue
            for j, b in enumerate(yv):
                if b == 0:
                    continue
                for q in range(self.dim):
                    if self.mu[i][j][q] != 0:
                        out[q] += a * b * self.mu[i][j][q]
        return tuple(out)


def associative_from_products(
    dim: int, products: Iterable[tuple[int, int, int, int | str | Fraction]]
) -> AssociativeAlgebra:
    """Build from 1-based (i, j, k, coefficient) items; duplicates rejected."""
    mu = _zero_tensor(dim)
    seen: set[tuple[int, int, int]] = set()
    for i, j, k, coeff in products:
        if not all(1 <= x <= dim for x in (i, j, k)):
            raise ValueError(f"index out of range in ({i}, {j}, {k})")
        if (i, j, k) in seen:
            raise ValueError(f"duplicate structure constant for ({i}, {j}, {k})")
        seen.add((i, j, k))
        mu[i - 1][j - 1][k - 1] = rat(coeff)
    return AssociativeAlgebra(dim, _freeze_tensor(mu))


@dataclass(frozen=True)
class RotaBaxterData:
    operator: Matrix
    weight: Fraction

    def __post_init__(self) -> None:
        if self.operator.rows != self.operator.cols:
            raise DimensionMismatchError("Rota-Baxter operator must be square")


def rota_baxter_witness(
    alg: AssociativeAlgebra, rb: RotaBaxterData
) -> tuple[int, int] | None:
    """First 1-based basis pair violating the identity, or None if it holds.

    Checking basis pairs is complete because both sides are bilinear.
    """
    if rb.operator.rows != alg.dim:
        raise DimensionMismatchError("operator size != algebra dimension")
    n = alg.dim
    images = [rb.operator.col(j) for j in range(n)]
    basis = [tuple(Fraction(1 if t == s else 0) for t in range(n)) for s in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = alg.multiply(images[i], images[j])
            inner = [
                a + b + rb.weight * c
                for a, b, c in zip(
                    alg.multiply(images[i], basis[j]),
                    alg.multiply(basis[i], images[j]),
                    alg.multiply(basis[i], basis[j]),
                )
            ]
            rhs = rb.operator.matvec(inner)
            if lhs != rhs:
                return (i + 1, j + 1)
    return None


def is_rota_baxter(alg: AssociativeAlgebra, rb: RotaBaxterData) -> bool:
    return rota_baxter_witness(alg, rb) is None


def induced_tridendriform(
    alg: AssociativeAlgebra, rb: RotaBaxterData
) -> TridendriformAlgebra:
    """Three-product algebra induced by a verified Rota-Baxter operator.

    Raises :class:`NotRotaBaxterError` (with the witness pair) rather than
    emitting an unverified algebra.
    """
    witness = rota_baxter_witness(alg, rb)
    if witness is not None:
        raise NotRotaBaxterError(witness)
    n = alg.dim
    r = rb.operator
    gamma = _zero_tensor(n)
    delta = _zero_tensor(n)
    xi = _zero_tensor(n)
    for i in range(n):
        for j in range(n):
            for q in range(n):
                gamma[i][j][q] = sum((r.at(p, j) * alg.mu[i][p][q] for p in range(n)), Fraction(0))
                delta[i][j][q] = sum((r.at(p, i) * alg.mu[p][j][q] for p in range(n)), Fraction(0))
                xi[i][j][q] = rb.weight * alg.mu[i][j][q]
    return TridendriformAlgebra(n, _freeze_tensor(gamma), _freeze_tensor(delta), _freeze_tensor(xi))


# --- file format -----------------------------------------------------------
#
# Associative algebras reuse the TDA JSON layout with the single product key
# "mu"; a Rota-Baxter document adds "operator" (n x n array of rational
# strings, row-major) and "theta".


def associative_from_tda(doc: dict) -> AssociativeAlgebra:
    if not isinstance(doc, dict):
        raise TDAFormatError("document must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise TDAFormatError('"dim" must be a positive integer')
    items = doc.get("mu", [])
    if not isinstance(items, list):
        raise TDAFormatError('"mu" must be a list')
    products = []
    for item in items:
        if not (isinstance(item, list) and len(item) == 4):
            raise TDAFormatError('"mu" entries must be [i, j, k, coefficient]')
        i, j, k, coeff = item
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
            raise TDAFormatError('indices in "mu" must be integers')
        if not isinstance(coeff, str):
            raise TDAFormatError('coefficient in "mu" must be a rational string')
        try:
            products.append((i, j, k, rat(coeff)))
        except ValueError as exc:
            raise TDAFormatError(str(exc)) from None
    try:
        return associative_from_products(dim, products)
    except (ValueError, NotAssociativeError) as exc:
        raise TDAFormatError(str(exc)) from None


def rota_baxter_from_doc(doc: dict) -> tuple[AssociativeAlgebra, RotaBaxterData]:
    alg = associative_from_tda(doc)
    op = doc.get("operator")
    if not (isinstance(op, list) and len(op) == alg.dim):
        raise TDAFormatError('"operator" must be an n x n array of rational strings')
    rows = []
    for row in op:
        if not (isinstance(row, list) and len(row) == alg.dim and all(isinstance(x, str) for x in row)):
            raise TDAFormatError('"operator" must be an n x n array of rational strings')
        try:
            rows.append([rat(x) for x in row])
        except ValueError as exc:
            raise TDAFormatError(str(exc)) from None
    theta = doc.get("theta")
    if not isinstance(theta, str):
        raise TDAFormatError('"theta" must be a rational string')
    try:
        weight = rat(theta)
    except ValueError as exc:
        raise TDAFormatError(str(exc)) from None
    return alg, RotaBaxterData(Matrix.from_rows(rows), weight)


def rota_baxter_to_doc(alg: AssociativeAlgebra, rb: RotaBaxterData) -> dict:
    items = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                if alg.mu[i][j][k] != 0:
                    items.append([i + 1, j + 1, k + 1, rat_str(alg.mu[i][j][k])])
    return {
        "dim": alg.dim,
        "mu": items,
        "operator": [[rat_str(rb.operator.at(i, j)) for j in range(alg.dim)] for i in range(alg.dim)],
        "theta": rat_str(rb.weight),
    }


def load_rota_baxter(path: str) -> tuple[AssociativeAlgebra, RotaBaxterData]:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise TDAFormatError(f"invalid JSON: {exc}") from None
    return rota_baxter_from_doc(doc)
