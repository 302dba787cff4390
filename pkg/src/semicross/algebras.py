"""Finite-dimensional complex normed algebras given by structure constants.

Two families are supported, covering every instance this package builds:
function algebras C(X) on a finite point set with the sup norm, and finite
direct sums of full matrix blocks with the p-operator norm (p in {1, 2, inf},
overall norm the max over blocks).  A function algebra is stored in the same
block layout with 1x1 blocks, so the norm code is shared.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import (
    DEFAULT_TOL,
    as_complex,
    in_rowspace,
    intersect_rows,
    null_rows,
    operator_norm,
    orth_rows,
    rows_equal,
    solve_coords,
)
from .errors import (
    DimensionMismatch,
    IntersectionNotUnital,
    NoUnit,
    NotAnIdeal,
    NotBijective,
    NotIsometric,
    NotMultiplicative,
)


@dataclass(eq=False)
class FinAlgebra:
    """Normed algebra with product e_i e_j = sum_k structure[i,j,k] e_k.

    ``blocks`` lists integer index matrices mapping block entries to
    coordinates; the norm of a coefficient vector is the max over blocks of
    the p-operator norm of the corresponding matrix.  ``star_mat`` encodes
    the antilinear involution x -> star_mat @ conj(x) when present.
    """

    labels: tuple
    structure: np.ndarray
    blocks: tuple
    p: object
    star_mat: np.ndarray | None
    kind: str
    points: tuple | None = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul(self, x, y) -> np.ndarray:
        x, y = as_complex(x), as_complex(y)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise DimensionMismatch(f"expected vectors of length {self.dim}")
        return np.einsum("i,j,ijk->k", x, y, self.structure)

    def norm(self, x) -> float:
        x = as_complex(x)
        if x.shape != (self.dim,):
            raise DimensionMismatch(f"expected a vector of length {self.dim}")
        return max(operator_norm(x[idx], self.p) for idx in self.blocks)

    def star(self, x) -> np.ndarray:
        from .errors import NoStarOnAlgebra

        if self.star_mat is None:
            raise NoStarOnAlgebra("algebra carries no involution")
        return self.star_mat @ np.conj(as_complex(x))

    def one(self) -> np.ndarray:
        """Coefficients of the global unit (indicator / sum of E_ii)."""
        u = np.zeros(self.dim, dtype=complex)
        for idx in self.blocks:
            u[np.diag(idx)] = 1.0
        return u

    def __repr__(self):
        return f"FinAlgebra<{self.kind}, dim {self.dim}>"


def function_algebra(points) -> FinAlgebra:
    """C(X) on a finite set with pointwise product and sup norm."""
    points = tuple(points)
    d = len(points)
    structure = np.zeros((d, d, d), dtype=complex)
    for i in range(d):
        structure[i, i, i] = 1.0
    blocks = tuple(np.array([[i]]) for i in range(d))
    return FinAlgebra(
        labels=tuple(str(p) for p in points),
        structure=structure,
        blocks=blocks,
        p=2,
        star_mat=np.eye(d),
        kind="function",
        points=points,
    )


def matrix_algebra(sizes, p) -> FinAlgebra:
    """Direct sum of full matrix blocks M_{n_1} + ... with the p-operator norm."""
    sizes = tuple(int(n) for n in sizes)
    if p not in (1, 2, np.inf, "inf"):
        raise ValueError("p must be 1, 2 or inf")
    p = np.inf if p == "inf" else p
    d = sum(n * n for n in sizes)
    labels = []
    blocks = []
    offset = 0
    for b, n in enumerate(sizes):
        idx = offset + np.arange(n * n).reshape(n, n)
        blocks.append(idx)
        labels.extend(f"b{b}:{i},{j}" for i in range(n) for j in range(n))
        offset += n * n
    structure = np.zeros((d, d, d), dtype=complex)
    star_mat = np.zeros((d, d))
    for idx in blocks:
        n = idx.shape[0]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        if j == k:
                            structure[idx[i, j], idx[k, l], idx[i, l]] = 1.0
                star_mat[idx[j, i], idx[i, j]] = 1.0
    return FinAlgebra(tuple(labels), structure, tuple(blocks), p, star_mat, "matrix")


def alg_mul(algebra: FinAlgebra, x, y) -> np.ndarray:
    return algebra.mul(x, y)


def alg_norm(algebra: FinAlgebra, x) -> float:
    return algebra.norm(x)


def validate_algebra(
    algebra: FinAlgebra, seed: int = 0, tol: float = DEFAULT_TOL, samples: int = 1000
) -> None:
    """Associativity on all basis triples, sampled submultiplicativity,
    and the involution laws when a star is present."""
    s = algebra.structure
    lhs = np.einsum("ijm,mkl->ijkl", s, s)
    rhs = np.einsum("jkm,iml->ijkl", s, s)
    assert np.allclose(lhs, rhs, atol=tol, rtol=0.0), (
        "structure constants are not associative"
    )
    rng = np.random.default_rng(seed)
    d = algebra.dim
    for _ in range(samples):
        x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        assert (
            algebra.norm(algebra.mul(x, y)) <= algebra.norm(x) * algebra.norm(y) + tol
        ), "norm is not submultiplicative on a sampled pair"
    if algebra.star_mat is not None:
        st = algebra.star_mat
        assert np.allclose(st @ np.conj(st), np.eye(d), atol=tol, rtol=0.0), (
            "star is not involutive"
        )
        eye = np.eye(d, dtype=complex)
        for i in range(d):
            for j in range(d):
                ab = algebra.mul(eye[i], eye[j])
                assert np.allclose(
                    algebra.star(ab),
                    algebra.mul(algebra.star(eye[j]), algebra.star(eye[i])),
                    atol=tol,
                    rtol=0.0,
                ), f"(ab)* != b*a* at basis pair {(i, j)}"


@dataclass(eq=False)
class Ideal:
    """Two-sided ideal subspace with its unit element.

    ``basis`` rows are coefficient vectors in the parent algebra; ``unit``
    acts as the identity on the subspace (the finite-dimensional stand-in
    for an approximate unit).
    """

    parent: FinAlgebra
    basis: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        self.basis = np.atleast_2d(as_complex(self.basis))
        if self.basis.size == 0:
            self.basis = self.basis.reshape(0, self.parent.dim)
        self.unit = as_complex(self.unit)
        self._orth = orth_rows(self.basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        return in_rowspace(self._orth, x, tol)

    def coords(self, x, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Coefficients over the basis; rejects vectors off the subspace."""
        x = as_complex(x)
        if self.dim == 0:
            if float(np.linalg.norm(x)) > tol:
                raise np.linalg.LinAlgError("vector not in the zero ideal")
            return np.zeros(0, dtype=complex)
        if not hasattr(self, "_pinv"):
            self._pinv = np.linalg.pinv(self.basis)
        c = x @ self._pinv
        resid = x - c @ self.basis
        if float(np.linalg.norm(resid)) > tol * max(1.0, float(np.linalg.norm(x))):
            raise np.linalg.LinAlgError("vector not in the ideal subspace")
        return c

    def to_parent(self, c) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(self.parent.dim, dtype=complex)
        return as_complex(c) @ self.basis

    @classmethod
    def zero(cls, parent: FinAlgebra) -> "Ideal":
        return cls(parent, np.zeros((0, parent.dim)), np.zeros(parent.dim))

    @classmethod
    def from_support(cls, parent: FinAlgebra, points) -> "Ideal":
        """span{delta_x : x in points} inside a function algebra."""
        assert parent.kind == "function"
        idxs = sorted(parent.points.index(p) for p in points)
        basis = np.zeros((len(idxs), parent.dim), dtype=complex)
        unit = np.zeros(parent.dim, dtype=complex)
        for r, i in enumerate(idxs):
            basis[r, i] = 1.0
            unit[i] = 1.0
        return cls(parent, basis, unit)

    @property
    def support(self) -> tuple:
        """Points where some element of a function-algebra ideal is nonzero."""
        assert self.parent.kind == "function"
        mask = np.any(np.abs(self.basis) > DEFAULT_TOL, axis=0)
        return tuple(p for p, m in zip(self.parent.points, mask) if m)

    def __repr__(self):
        return f"Ideal<dim {self.dim} of {self.parent!r}>"


def ideal_validate(ideal: Ideal, tol: float = DEFAULT_TOL) -> None:
    """Check the two-sided ideal property and that the unit works."""
    A = ideal.parent
    eye = np.eye(A.dim, dtype=complex)
    for r, x in enumerate(ideal.basis):
        for b in range(A.dim):
            if not ideal.contains(A.mul(x, eye[b]), tol):
                raise NotAnIdeal((r, A.labels[b], "right"))
            if not ideal.contains(A.mul(eye[b], x), tol):
                raise NotAnIdeal((r, A.labels[b], "left"))
    if ideal.dim and not ideal.contains(ideal.unit, tol):
        raise NoUnit("unit lies outside the subspace")
    for r, x in enumerate(ideal.basis):
        if not np.allclose(A.mul(ideal.unit, x), x, atol=tol, rtol=0.0):
            raise NoUnit(("left", r))
        if not np.allclose(A.mul(x, ideal.unit), x, atol=tol, rtol=0.0):
            raise NoUnit(("right", r))


@dataclass(eq=False)
class PartialAut:
    """Isometric algebra isomorphism between two ideals of one algebra.

    ``matrix`` row i is the image of ``source.basis[i]`` in parent
    coordinates.
    """

    source: Ideal
    target: Ideal
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.atleast_2d(as_complex(self.matrix))
        if self.matrix.size == 0:
            self.matrix = self.matrix.reshape(0, self.source.parent.dim)

    @property
    def parent(self) -> FinAlgebra:
        return self.source.parent

    def apply(self, x, tol: float = DEFAULT_TOL) -> np.ndarray:
        if self.source.dim == 0:
            return np.zeros(self.parent.dim, dtype=complex)
        return self.source.coords(x, tol) @ self.matrix

    def inverse(self, tol: float = DEFAULT_TOL) -> "PartialAut":
        rows = [
            solve_coords(self.matrix, t, tol) @ self.source.basis
            for t in self.target.basis
        ]
        mat = np.array(rows).reshape(self.target.dim, self.parent.dim)
        return PartialAut(self.target, self.source, mat)

    @classmethod
    def identity(cls, ideal: Ideal) -> "PartialAut":
        return cls(ideal, ideal, ideal.basis.copy())

    def __repr__(self):
        return f"PartialAut<{self.source.dim} -> {self.target.dim}>"


def pauts_equal(a: PartialAut, b: PartialAut, tol: float = DEFAULT_TOL) -> bool:
    """Equality as partial maps: same source subspace and same values on it."""
    if not rows_equal(a.source.basis, b.source.basis, tol):
        return False
    return all(
        np.allclose(a.apply(x, tol), b.apply(x, tol), atol=tol, rtol=0.0)
        for x in a.source.basis
    )


def _is_delta_permutation(phi: PartialAut, tol: float) -> bool:
    """Exact isometry witness for function algebras: every minimal idempotent
    of the source maps to a single minimal idempotent with coefficient 1."""
    A = phi.parent
    src = phi.source.support
    for x in src:
        img = phi.apply(np.eye(A.dim, dtype=complex)[A.points.index(x)], tol)
        hot = np.abs(img) > tol
        if hot.sum() != 1 or not np.isclose(img[hot][0], 1.0, atol=tol):
            return False
    return True


def _is_block_permutation(phi: PartialAut, tol: float) -> bool:
    """Exact isometry witness for matrix sums: the map relabels whole blocks
    entry-by-entry."""
    A = phi.parent
    eye = np.eye(A.dim, dtype=complex)
    src_blocks = [
        idx for idx in A.blocks if phi.source.contains(eye[idx[0, 0]], tol)
        and all(phi.source.contains(eye[i], tol) for i in idx.flat)
    ]
    if sum(idx.size for idx in src_blocks) != phi.source.dim:
        return False
    for idx in src_blocks:
        images = [phi.apply(eye[i], tol) for i in idx.flat]
        target_block = None
        for tix, img in zip(idx.flat, images):
            hot = np.flatnonzero(np.abs(img) > tol)
            if hot.size != 1 or not np.isclose(img[hot[0]], 1.0, atol=tol):
                return False
            for bidx in A.blocks:
                if hot[0] in bidx:
                    pos = np.argwhere(bidx == hot[0])[0]
                    src_pos = np.argwhere(idx == tix)[0]
                    if not np.array_equal(pos, src_pos):
                        return False
                    if target_block is None:
                        target_block = bidx[0, 0]
                    elif target_block != bidx[0, 0]:
                        return False
    return True


@dataclass
class PautCertificate:
    """How isometry was certified: "exact" or "sampled" (2000 unit vectors)."""

    isometry_level: str


def paut_validate(
    phi: PartialAut, tol: float = DEFAULT_TOL, seed: int = 0, samples: int = 2000
) -> PautCertificate:
    """Bijectivity, isometry, multiplicativity, unit preservation."""
    ideal_validate(phi.source, tol)
    ideal_validate(phi.target, tol)
    A = phi.parent
    if phi.source.dim != phi.target.dim:
        raise NotBijective("source and target dimensions differ")
    for row in phi.matrix:
        if not phi.target.contains(row, tol):
            raise NotBijective("image escapes the target subspace")
    if phi.source.dim:
        s = np.linalg.svd(phi.matrix, compute_uv=False)
        if s[-1] <= tol:
            raise NotBijective("map matrix is rank deficient")
    cert = _certify_isometry(phi, tol, seed, samples)
    for i, x in enumerate(phi.source.basis):
        for j, y in enumerate(phi.source.basis):
            lhs = phi.apply(A.mul(x, y), tol)
            rhs = A.mul(phi.apply(x, tol), phi.apply(y, tol))
            if not np.allclose(lhs, rhs, atol=tol, rtol=0.0):
                raise NotMultiplicative((i, j))
    # forced: the homomorphic image of the unit is the (unique) target unit
    assert np.allclose(
        phi.apply(phi.source.unit, tol), phi.target.unit, atol=tol, rtol=0.0
    ), "unit does not map to the target unit"
    return cert


def _certify_isometry(phi: PartialAut, tol, seed, samples) -> PautCertificate:
    """Exact for recognizable shapes, randomized unit-sphere sampling
    (both inequality directions) otherwise."""
    A = phi.parent
    if phi.source.dim == 0:
        return PautCertificate("exact")
    if A.kind == "function" and _is_delta_permutation(phi, tol):
        return PautCertificate("exact")
    if A.kind == "matrix" and _is_block_permutation(phi, tol):
        return PautCertificate("exact")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        c = rng.standard_normal(phi.source.dim) + 1j * rng.standard_normal(phi.source.dim)
        x = phi.source.to_parent(c)
        nx = A.norm(x)
        if nx < tol:
            continue
        x = x / nx
        ny = A.norm(phi.apply(x, tol))
        if ny > 1.0 + tol or ny < 1.0 - tol:
            raise NotIsometric(np.round(x, 6))
    return PautCertificate("sampled")


def compose_paut(phi: PartialAut, psi: PartialAut, tol: float = DEFAULT_TOL) -> PartialAut:
    """phi after psi on psi^{-1}(source(phi) & target(psi)).

    The new source is re-equipped with a unit: the product of the two units
    is the unit of the intersection, pulled back through psi; both facts are
    verified rather than assumed.
    """
    if phi.parent is not psi.parent:
        raise DimensionMismatch("partial automorphisms of different algebras")
    A = phi.parent
    inter = intersect_rows(phi.source.basis, psi.target.basis, tol)
    u_inter = A.mul(phi.source.unit, psi.target.unit)
    if inter.shape[0] == 0:
        src = Ideal.zero(A)
        return PartialAut(src, Ideal.zero(A), np.zeros((0, A.dim)))
    if not in_rowspace(inter, u_inter, tol):
        raise IntersectionNotUnital("product of units escapes the intersection")
    for row in inter:
        if not np.allclose(A.mul(u_inter, row), row, atol=tol, rtol=0.0) or not np.allclose(
            A.mul(row, u_inter), row, atol=tol, rtol=0.0
        ):
            raise IntersectionNotUnital("product of units is not an identity there")
    # coefficients c (over source(psi)) with psi(c) inside span(source(phi))
    sphi = orth_rows(phi.source.basis, tol)
    resid = psi.matrix - (psi.matrix @ sphi.conj().T) @ sphi
    coeff = null_rows(resid.T, tol)
    src_basis = coeff @ psi.source.basis
    psi_of_src = coeff @ psi.matrix
    assert rows_equal(psi_of_src, inter, tol), "preimage does not hit the intersection"
    u_src = solve_coords(psi_of_src, u_inter, tol) @ src_basis
    src = Ideal(A, src_basis, u_src)
    img_rows = np.array([phi.apply(r, tol) for r in psi_of_src]).reshape(-1, A.dim)
    tgt = Ideal(A, img_rows, phi.apply(u_inter, tol))
    return PartialAut(src, tgt, img_rows)
