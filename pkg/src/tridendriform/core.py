"""Tridendriform algebras given by structure constants, with exact axiom checks.

An algebra is three n-by-n-by-n rational tensors, one per product: ``gamma``
for prec, ``delta`` for succ, ``xi`` for vee.  ``T[i][j][k]`` is the
coefficient of basis vector k in the product of basis vectors i and j
(0-based internally; all reported and serialized indices are 1-based).
Unlisted basis products are zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactla import (
    DimensionMismatchError,
    Matrix,
    SubspaceBasis,
    Vector,
    rat,
    rat_str,
    span,
    nullspace,
    vec,
)

Tensor = tuple[tuple[Vector, ...], ...]

PRODUCT_TAGS = ("prec", "succ", "vee")

# (axiom number, outer-left, inner-left, outer-right, inner-right) encoding of
# the seven defining identities: (x P_il y) P_ol z = x P_or (y P_ir z), where
# "star" stands for the sum of all three products.
_AXIOMS: tuple[tuple[int, str, str, str, str], ...] = (
    (1, "prec", "prec", "prec", "star"),
    (2, "prec", "succ", "succ", "prec"),
    (3, "succ", "star", "succ", "succ"),
    (4, "vee", "succ", "succ", "vee"),
    (5, "vee", "prec", "vee", "succ"),
    (6, "prec", "vee", "vee", "prec"),
    (7, "vee", "vee", "vee", "vee"),
)


class TDAFormatError(ValueError):
    """A TDA-format document is malformed."""


def _zero_tensor(n: int) -> list[list[list[Fraction]]]:
    return [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]


def _freeze_tensor(t: Sequence[Sequence[Sequence[Fraction]]]) -> Tensor:
    return tuple(tuple(tuple(row) for row in plane) for plane in t)


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class TridendriformAlgebra:
    dim: int
    gamma: Tensor
    delta: Tensor
    xi: Tensor
    basis_names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.basis_names:
            object.__setattr__(self, "basis_names", _default_names(self.dim))
        if len(self.basis_names) != self.dim:
            raise DimensionMismatchError("basis_names length != dim")
        for t in (self.gamma, self.delta, self.xi):
            if len(t) != self.dim or any(
                len(plane) != self.dim or any(len(row) != self.dim for row in plane)
                for plane in t
            ):
                raise DimensionMismatchError("structure tensor is not dim x dim x dim")

    def tensor(self, which: str) -> Tensor:
        try:
            return {"prec": self.gamma, "succ": self.delta, "vee": self.xi}[which]
        except KeyError:
            raise ValueError(f"unknown product tag: {which!r}") from None

    def star_tensor(self) -> Tensor:
        n = self.dim
        return _freeze_tensor(
            [
                [
                    [self.gamma[i][j][k] + self.delta[i][j][k] + self.xi[i][j][k] for k in range(n)]
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )


def algebra_from_products(
    dim: int,
    products: Iterable[tuple[str, int, int, int, int | str | Fraction]],
    basis_names: Sequence[str] | None = None,
) -> TridendriformAlgebra:
    """Build an algebra from 1-based ``(tag, i, j, k, coefficient)`` items.

    Duplicate ``(tag, i, j, k)`` keys are rejected rather than summed.
    """
    tensors = {tag: _zero_tensor(dim) for tag in PRODUCT_TAGS}
    seen: set[tuple[str, int, int, int]] = set()
    for tag, i, j, k, coeff in products:
        if tag not in PRODUCT_TAGS:
            raise ValueError(f"unknown product tag: {tag!r}")
        if not all(1 <= x <= dim for x in (i, j, k)):
            raise ValueError(f"index out of range in ({tag}, {i}, {j}, {k})")
        key = (tag, i, j, k)
        if key in seen:
            raise ValueError(f"duplicate structure constant for {key}")
        seen.add(key)
        tensors[tag][i - 1][j - 1][k - 1] = rat(coeff)
    return TridendriformAlgebra(
        dim,
        _freeze_tensor(tensors["prec"]),
        _freeze_tensor(tensors["succ"]),
        _freeze_tensor(tensors["vee"]),
        tuple(basis_names) if basis_names else (),
    )


def zero_algebra(dim: int) -> TridendriformAlgebra:
    return algebra_from_products(dim, ())


def multiply(alg: TridendriformAlgebra, which: str, x: Sequence, y: Sequence) -> Vector:
    """Bilinear extension of the selected basis product to vectors."""
    t = alg.star_tensor() if which == "star" else alg.tensor(which)
    xv, yv = vec(x), vec(y)
    if len(xv) != alg.dim or len(yv) != alg.dim:
        raise DimensionMismatchError("vector length != algebra dimension")
    out = [Fraction(0)] * alg.dim
    for i, xi_ in enumerate(xv):
        if xi_ == 0:
            continue
        for j, yj in enumerate(yv):
            if yj == 0:
                continue
            coeffs = t[i][j]
            scale = xi_ * yj
            for q in range(alg.dim):
                if coeffs[q] != 0:
                    out[q] += scale * coeffs[q]
    return tuple(out)


def star(alg: TridendriformAlgebra, x: Sequence, y: Sequence) -> Vector:
    """Sum product x*y = x prec y + x succ y + x vee y."""
    return multiply(alg, "star", x, y)


@dataclass(frozen=True)
class AxiomFailure:
    axiom: int
    i: int
    j: int
    k: int
    q: int
    value: Fraction

    def describe(self) -> str:
        return (
            f"axiom {self.axiom} fails at basis triple "
            f"(e{self.i}, e{self.j}, e{self.k}), coordinate {self.q}, residual {rat_str(self.value)}"
        )


@dataclass(frozen=True)
class ResidualReport:
    """Residual tensors of the seven defining identities, LHS minus RHS.

    ``residuals[a][i][j][k][q]`` is the axiom-(a+1) residual on basis triple
    (i, j, k) at output coordinate q (0-based storage).  ``passed`` iff every
    entry is zero; ``first_failure`` is the lexicographically first violation
    in (axiom, i, j, k, q) order, reported 1-based.
    """

    residuals: tuple[tuple[tuple[tuple[Vector, ...], ...], ...], ...]
    passed: bool
    first_failure: AxiomFailure | None


def _composite(n: int, inner: Tensor, outer: Tensor, right_assoc: bool):
    """Tensor of a triple product on basis vectors.

    Left association ((x inner y) outer z): value[i][j][k][q] =
    sum_p inner[i][j][p] * outer[p][k][q].  Right association
    (x outer (y inner z)): sum_p inner[j][k][p] * outer[i][p][q].
    """
    out = [[[[Fraction(0)] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = out[i][j][k]
                if right_assoc:
                    for p in range(n):
                        c = inner[j][k][p]
                        if c == 0:
                            continue
                        for q in range(n):
                            if outer[i][p][q] != 0:
                                row[q] += c * outer[i][p][q]
                else:
                    for p in range(n):
                        c = inner[i][j][p]
                        if c == 0:
                            continue
                        for q in range(n):
                            if outer[p][k][q] != 0:
                                row[q] += c * outer[p][k][q]
    return out


def axiom_residuals(alg: TridendriformAlgebra) -> ResidualReport:
    """Evaluate all seven defining identities on every basis triple.

    Bilinearity makes the basis check complete.  The identities are contracted
    directly from the definition rather than from any transcribed index form,
    so a failure pinpoints the violated axiom and basis triple exactly.
    """
    n = alg.dim
    tensors = {
        "prec": alg.gamma,
        "succ": alg.delta,
        "vee": alg.xi,
        "star": alg.star_tensor(),
    }
    all_residuals = []
    first: AxiomFailure | None = None
    for axiom_no, outer_left, inner_left, outer_right, inner_right in _AXIOMS:
        lhs = _composite(n, tensors[inner_left], tensors[outer_left], right_assoc=False)
        rhs = _composite(n, tensors[inner_right], tensors[outer_right], right_assoc=True)
        res = [
            [
                [
                    tuple(lhs[i][j][k][q] - rhs[i][j][k][q] for q in range(n))
                    for k in range(n)
                ]
                for j in range(n)
            ]
            for i in range(n)
        ]
        if first is None:
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        for q in range(n):
                            if res[i][j][k][q] != 0:
                                first = AxiomFailure(
                                    axiom_no, i + 1, j + 1, k + 1, q + 1, res[i][j][k][q]
                                )
                                break
                        if first is not None:
                            break
                    if first is not None:
                        break
                if first is not None:
                    break
        all_residuals.append(tuple(tuple(tuple(plane) for plane in block) for block in res))
    return ResidualReport(tuple(all_residuals), first is None, first)


def is_associative(alg: TridendriformAlgebra, which: str = "star") -> bool:
    """Associativity of the selected product ("star" or "vee") on basis triples."""
    if which not in ("star", "vee"):
        raise ValueError(f"associativity check supports 'star' or 'vee', got {which!r}")
    n = alg.dim
    t = alg.star_tensor() if which == "star" else alg.xi
    lhs = _composite(n, t, t, right_assoc=False)
    rhs = _composite(n, t, t, right_assoc=True)
    return all(
        lhs[i][j][k][q] == rhs[i][j][k][q]
        for i in range(n)
        for j in range(n)
        for k in range(n)
        for q in range(n)
    )


def is_morphism(
    phi: Matrix,
    source: TridendriformAlgebra,
    target: TridendriformAlgebra,
) -> bool:
    """Does phi intertwine all three products on every basis pair?

    ``phi`` maps source coordinates to target coordinates (column j is the
    image of source basis vector j), so rectangular shapes are allowed.
    """
    if phi.cols != source.dim or phi.rows != target.dim:
        raise DimensionMismatchError(
            f"phi is {phi.rows}x{phi.cols}, expected {target.dim}x{source.dim}"
        )
    images = [phi.col(j) for j in range(source.dim)]
    for tag in PRODUCT_TAGS:
        t = source.tensor(tag)
        for i in range(source.dim):
            for j in range(source.dim):
                mapped = [Fraction(0)] * target.dim
                for k in range(source.dim):
                    c = t[i][j][k]
                    if c == 0:
                        continue
                    for q in range(target.dim):
                        mapped[q] += c * images[k][q]
                if tuple(mapped) != multiply(target, tag, images[i], images[j]):
                    return False
    return True


def subspace_product(
    alg: TridendriformAlgebra, a: SubspaceBasis, b: SubspaceBasis
) -> SubspaceBasis:
    """Span of all prec/succ/vee products of basis vectors of a with those of b."""
    if a.ambient_dim != alg.dim or b.ambient_dim != alg.dim:
        raise DimensionMismatchError("subspace ambient dimension != algebra dimension")
    products = [
        multiply(alg, tag, x, y)
        for tag in PRODUCT_TAGS
        for x in a.vectors
        for y in b.vectors
    ]
    return span(products, ambient_dim=alg.dim)


def full_space(alg: TridendriformAlgebra) -> SubspaceBasis:
    return span(Matrix.identity(alg.dim).to_lists(), ambient_dim=alg.dim)


def center(alg: TridendriformAlgebra, which: str | None = None) -> SubspaceBasis:
    """Elements commuting with every basis vector.

    By default commutation is required for all three products simultaneously;
    pass a single product tag to restrict to one product.
    """
    n = alg.dim
    tags = PRODUCT_TAGS if which is None else (which,)
    rows = []
    for tag in tags:
        t = alg.tensor(tag)
        for j in range(n):
            for q in range(n):
                rows.append([t[i][j][q] - t[j][i][q] for i in range(n)])
    if not rows:
        return full_space(alg)
    return nullspace(Matrix.from_rows(rows))


def centralizer(alg: TridendriformAlgebra, a: SubspaceBasis) -> SubspaceBasis:
    """Elements annihilating the subspace on both sides in all three products."""
    if a.ambient_dim != alg.dim:
        raise DimensionMismatchError("subspace ambient dimension != algebra dimension")
    n = alg.dim
    rows = []
    for tag in PRODUCT_TAGS:
        t = alg.tensor(tag)
        for s in a.vectors:
            for q in range(n):
                rows.append([sum((s[j] * t[i][j][q] for j in range(n)), Fraction(0)) for i in range(n)])
                rows.append([sum((s[j] * t[j][i][q] for j in range(n)), Fraction(0)) for i in range(n)])
    if not rows:
        return full_space(alg)
    return nullspace(Matrix.from_rows(rows))


# --- TDA file format -------------------------------------------------------
#
# UTF-8 JSON object with keys "dim" (int), optional "basis" (list of names,
# defaults e1..en), and "prec"/"succ"/"vee": lists of [i, j, k, "p/q"]
# meaning e_i o e_j has coefficient p/q on e_k (1-based, unlisted zero).


def algebra_to_tda(alg: TridendriformAlgebra) -> dict:
    doc: dict = {"dim": alg.dim, "basis": list(alg.basis_names)}
    for tag in PRODUCT_TAGS:
        t = alg.tensor(tag)
        items = []
        for i in range(alg.dim):
            for j in range(alg.dim):
                for k in range(alg.dim):
                    if t[i][j][k] != 0:
                        items.append([i + 1, j + 1, k + 1, rat_str(t[i][j][k])])
        doc[tag] = items
    return doc


def _parse_product_items(doc: dict, key: str, dim: int):
    items = doc.get(key, [])
    if not isinstance(items, list):
        raise TDAFormatError(f"{key!r} must be a list")
    out = []
    for item in items:
        if not (isinstance(item, list) and len(item) == 4):
            raise TDAFormatError(f"{key!r} entries must be [i, j, k, coefficient]")
        i, j, k, coeff = item
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
            raise TDAFormatError(f"indices in {key!r} must be integers")
        if not all(1 <= x <= dim for x in (i, j, k)):
            raise TDAFormatError(f"index out of range in {key!r}: {item}")
        if not isinstance(coeff, str):
            raise TDAFormatError(f"coefficient in {key!r} must be a rational string")
        try:
            value = rat(coeff)
        except ValueError as exc:
            raise TDAFormatError(str(exc)) from None
        out.append((key, i, j, k, value))
    return out


def algebra_from_tda(doc: dict) -> TridendriformAlgebra:
    if not isinstance(doc, dict):
        raise TDAFormatError("TDA document must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise TDAFormatError('"dim" must be a positive integer')
    basis = doc.get("basis")
    if basis is not None:
        if not (isinstance(basis, list) and all(isinstance(b, str) for b in basis)):
            raise TDAFormatError('"basis" must be a list of strings')
        if len(basis) != dim:
            raise TDAFormatError('"basis" length must equal "dim"')
    products = []
    for tag in PRODUCT_TAGS:
        products.extend(_parse_product_items(doc, tag, dim))
    try:
        return algebra_from_products(dim, products, basis)
    except ValueError as exc:
        raise TDAFormatError(str(exc)) from None


def load_algebra(path: str) -> TridendriformAlgebra:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise TDAFormatError(f"invalid JSON: {exc}") from None
    return algebra_from_tda(doc)


def save_algebra(alg: TridendriformAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_tda(alg), fh, indent=2, sort_keys=True)
        fh.write("\n")
