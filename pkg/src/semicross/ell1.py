"""The section algebra of an action: finitely supported maps t -> I_t with
the convolution product

    (f * g)(r) = sum over st = r of alpha_s(alpha_{s*}(f(s)) g(t)),

the norm ||f||_1 = sum of ideal norms, the involution (when the coefficient
algebra has one), the ideal generated by the order differences
a delta_s - a delta_t for s <= t, and quotients by such ideals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ._linalg import DEFAULT_TOL, as_complex, in_rowspace, orth_rows
from .actions import Action
from .errors import ActionMismatch, NotAnIdeal

N_FACETS = 64  # polygonal model of |z| <= m; relative error <= 1 - cos(pi/64)


@dataclass(eq=False)
class Ell1Element:
    """Finitely supported section t -> a_t in I_t.

    Coefficients are stored in each ideal's basis coordinates; elements of
    zero ideals are excluded from the support.
    """

    action: Action
    coeffs: dict

    def __post_init__(self):
        clean = {}
        for t, v in self.coeffs.items():
            v = as_complex(v)
            dim = self.action.ideal(t).dim
            if v.shape != (dim,):
                raise ValueError(f"coefficient at {t} has wrong length")
            if dim and np.any(v != 0):
                clean[t] = v
        self.coeffs = clean

    @classmethod
    def zero(cls, action: Action) -> "Ell1Element":
        return cls(action, {})

    @classmethod
    def monomial(cls, action: Action, t: int, a_parent, tol: float = DEFAULT_TOL) -> "Ell1Element":
        """a delta_t for a given in parent-algebra coordinates."""
        return cls(action, {t: action.ideal(t).coords(a_parent, tol)})

    def value(self, t: int) -> np.ndarray:
        """Coefficient at t in parent-algebra coordinates."""
        ideal = self.action.ideal(t)
        if t not in self.coeffs:
            return np.zeros(self.action.algebra.dim, dtype=complex)
        return ideal.to_parent(self.coeffs[t])

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.coeffs))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.action.total_dim, dtype=complex)
        offs = self.action.offsets
        for t, v in self.coeffs.items():
            out[offs[t] : offs[t] + v.shape[0]] = v
        return out

    @classmethod
    def from_dense(cls, action: Action, dense) -> "Ell1Element":
        dense = as_complex(dense)
        coeffs = {}
        for t, off in action.offsets.items():
            dim = action.ideal(t).dim
            coeffs[t] = dense[off : off + dim]
        return cls(action, coeffs)

    def __add__(self, other: "Ell1Element") -> "Ell1Element":
        if self.action is not other.action:
            raise ActionMismatch("elements of different section algebras")
        out = {t: v.copy() for t, v in self.coeffs.items()}
        for t, v in other.coeffs.items():
            out[t] = out.get(t, 0) + v
        return Ell1Element(self.action, out)

    def __neg__(self) -> "Ell1Element":
        return Ell1Element(self.action, {t: -v for t, v in self.coeffs.items()})

    def __sub__(self, other: "Ell1Element") -> "Ell1Element":
        return self + (-other)

    def scale(self, c) -> "Ell1Element":
        return Ell1Element(self.action, {t: c * v for t, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Ell1Element):
            return convolve(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def norm1(self) -> float:
        return ell1_norm(self)

    def star(self) -> "Ell1Element":
        return involution(self)

    def allclose(self, other: "Ell1Element", tol: float = DEFAULT_TOL) -> bool:
        return bool(
            np.allclose(self.to_dense(), other.to_dense(), atol=tol, rtol=0.0)
        )

    def __repr__(self):
        sg = self.action.semigroup
        parts = [
            f"{np.round(self.value(t), 6)} d_{sg.labels[t]}" for t in self.support
        ]
        return " + ".join(parts) if parts else "0"


def convolve(f: Ell1Element, g: Ell1Element, tol: float = DEFAULT_TOL) -> Ell1Element:
    """Exact double sum over support pairs; every summand is checked to land
    in the ideal of the product element."""
    if f.action is not g.action:
        raise ActionMismatch("elements of different section algebras")
    act = f.action
    sg = act.semigroup
    out: dict[int, np.ndarray] = {}
    for s in f.support:
        fs = f.value(s)
        pulled = act.apply(sg.inv(s), fs, tol)
        for t in g.support:
            r = sg.mul(s, t)
            gt = g.value(t)
            summand = act.apply(s, act.algebra.mul(pulled, gt), tol)
            ideal = act.ideal(r)
            scale = max(
                1.0, float(np.linalg.norm(fs)) * float(np.linalg.norm(gt))
            )
            if ideal.dim == 0:
                # the product element carries the zero ideal, so the summand
                # must vanish up to roundoff of the inputs
                assert float(np.linalg.norm(summand)) <= tol * scale, (
                    "convolution summand escapes the ideal of the product element"
                )
                continue
            assert ideal.contains(summand, tol), (
                "convolution summand escapes the ideal of the product element"
            )
            out[r] = out.get(r, 0) + ideal.coords(summand, tol)
    return Ell1Element(act, out)


def ell1_norm(f: Ell1Element) -> float:
    return sum(f.action.algebra.norm(f.value(t)) for t in f.support)


def involution(f: Ell1Element, tol: float = DEFAULT_TOL) -> Ell1Element:
    """f^*(t) = alpha_t(f(t^*)^*); needs an involution on the coefficients."""
    act = f.action
    A = act.algebra
    sg = act.semigroup
    out = {}
    for t in f.support:
        u = sg.inv(t)
        val = act.apply(u, A.star(f.value(t)), tol)
        out[u] = act.ideal(u).coords(val, tol)
    return Ell1Element(act, out)


def monomials(action: Action) -> list:
    """One a delta_t per ideal basis vector; they span the whole section space."""
    out = []
    for t in action.nonzero_elements:
        for i in range(action.ideal(t).dim):
            coeff = np.zeros(action.ideal(t).dim, dtype=complex)
            coeff[i] = 1.0
            out.append(Ell1Element(action, {t: coeff}))
    return out


@dataclass
class NullIdeal:
    """The ideal generated by the differences a delta_s - a delta_t, s <= t.

    ``basis`` holds orthonormal rows in the dense coordinates of the section
    space.  ``products_only_dim`` is the dimension of the closed span of
    two-sided products f (a delta_s - a delta_t) g alone; it can in principle
    be smaller when the section algebra lacks a unit, and both numbers are
    reported when they differ.
    """

    action: Action
    basis: np.ndarray
    products_only_dim: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def _order_differences(action: Action, tol: float) -> list:
    sg = action.semigroup
    diffs = []
    for s, t in sorted(sg.order):
        if s == t or action.ideal(s).dim == 0:
            continue
        for row in action.ideal(s).basis:
            a_s = Ell1Element.monomial(action, s, row, tol)
            a_t = Ell1Element.monomial(action, t, row, tol)
            diffs.append(a_s - a_t)
    return diffs


def _saturate(action: Action, seed_rows: np.ndarray, tol: float) -> np.ndarray:
    """Smallest subspace containing the rows and closed under convolution by
    the spanning monomials on either side."""
    mono = monomials(action)
    basis = orth_rows(seed_rows, tol)
    while True:
        products = [basis] if basis.shape[0] else [np.zeros((0, action.total_dim))]
        for row in basis:
            x = Ell1Element.from_dense(action, row)
            for m in mono:
                products.append(convolve(m, x, tol).to_dense()[None, :])
                products.append(convolve(x, m, tol).to_dense()[None, :])
        grown = orth_rows(np.vstack(products), tol)
        if grown.shape[0] == basis.shape[0]:
            return grown
        basis = grown


def null_ideal(action: Action, tol: float = DEFAULT_TOL) -> NullIdeal:
    """Saturate the order differences into a two-sided ideal.

    The generators include the bare differences themselves; the span of
    two-sided products around them is computed alongside for comparison.
    """
    diffs = _order_differences(action, tol)
    D = action.total_dim
    if not diffs:
        return NullIdeal(action, np.zeros((0, D), dtype=complex), 0)
    seed = np.vstack([d.to_dense()[None, :] for d in diffs])
    basis = _saturate(action, seed, tol)
    mono = monomials(action)
    prod_rows = [np.zeros((0, D))]
    for d in diffs:
        for m1 in mono:
            left = convolve(m1, d, tol)
            for m2 in mono:
                prod_rows.append(convolve(left, m2, tol).to_dense()[None, :])
    prod_basis = _saturate(action, np.vstack(prod_rows), tol)
    return NullIdeal(action, basis, prod_basis.shape[0])


@dataclass
class QuotientAlgebra:
    """Section algebra modulo a two-sided ideal, in a pivoted complement basis.

    ``coords`` lists the dense coordinates chosen as the complement basis (in
    coordinate order), ``structure`` the induced structure constants, and
    ``projection`` the matrix sending a dense vector to its class.
    """

    action: Action
    null_basis: np.ndarray
    coords: tuple
    structure: np.ndarray
    projection: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.coords)

    def project(self, f: Ell1Element) -> np.ndarray:
        return self.projection @ f.to_dense()


def quotient_algebra(
    action: Action, null_basis: np.ndarray, tol: float = DEFAULT_TOL
) -> QuotientAlgebra:
    """Verify the subspace is a convolution ideal, then quotient by it."""
    D = action.total_dim
    null_basis = orth_rows(null_basis, tol)
    mono = monomials(action)
    for row in null_basis:
        x = Ell1Element.from_dense(action, row)
        for m in mono:
            for y in (convolve(m, x, tol), convolve(x, m, tol)):
                if not in_rowspace(null_basis, y.to_dense(), tol):
                    raise NotAnIdeal("subspace is not convolution invariant")
    chosen = []
    cur = null_basis
    for j in range(D):
        ej = np.zeros(D, dtype=complex)
        ej[j] = 1.0
        if not in_rowspace(cur, ej, tol):
            chosen.append(j)
            cur = orth_rows(np.vstack([cur, ej[None, :]]), tol)
    q = len(chosen)
    comp = np.zeros((q, D), dtype=complex)
    for r, j in enumerate(chosen):
        comp[r, j] = 1.0
    full = np.vstack([comp, null_basis])
    proj = np.linalg.inv(full.T)[:q, :] if D else np.zeros((0, 0), dtype=complex)
    structure = np.zeros((q, q, q), dtype=complex)
    for a in range(q):
        fa = Ell1Element.from_dense(action, comp[a])
        for b in range(q):
            fb = Ell1Element.from_dense(action, comp[b])
            structure[a, b] = proj @ convolve(fa, fb, tol).to_dense()
    return QuotientAlgebra(action, null_basis, tuple(chosen), structure, proj)


def quotient_ell1_norm(
    f: Ell1Element, null_basis: np.ndarray, tol: float = DEFAULT_TOL
) -> float:
    """inf over the coset f + N of the section norm, via a linear program.

    Complex moduli are modeled by a 64-facet polygon, so the result can
    undershoot the exact infimum by at most a factor cos(pi/64), a relative
    error below 0.2 percent.  Supported for algebras whose block norms are
    max-of-absolute-sums (all 1x1 blocks, and larger blocks with p in
    {1, inf}); operator-2-norm blocks of size > 1 have no LP model.
    """
    act = f.action
    null_basis = orth_rows(null_basis, tol)
    k = null_basis.shape[0]
    if k == 0:
        return ell1_norm(f)
    A = act.algebra
    for idx in A.blocks:
        if idx.size > 1 and A.p == 2:
            raise ValueError(
                "quotient norm over operator-2-norm blocks is not LP-representable"
            )

    elements = act.nonzero_elements
    n_m = len(elements)
    theta = 2.0 * np.pi * np.arange(N_FACETS) / N_FACETS
    phase = np.exp(-1j * theta)

    # parent-coordinate affine data per element: base_t + z . dirs_t
    null_elems = [Ell1Element.from_dense(act, row) for row in null_basis]
    base = {t: f.value(t) for t in elements}
    dirs = {t: np.array([n.value(t) for n in null_elems]) for t in elements}

    rows, rhs = [], []
    n_aux = 0

    def affine(t, coord):
        """Real LP row pieces for the complex coordinate of the coset at (t, coord)."""
        return base[t][coord], dirs[t][:, coord]

    # variable layout: [zr(k), zi(k), m(n_m), u(...)]
    var_m0 = 2 * k
    u_index = {}
    for ti, t in enumerate(elements):
        for idx in A.blocks:
            if idx.size == 1:
                continue
            for pos in idx.flat:
                u_index[(ti, int(pos))] = var_m0 + n_m + n_aux
                n_aux += 1
    n_vars = var_m0 + n_m + n_aux

    def facet_rows(t, coord, bound_col):
        """|affine coordinate| <= variable at bound_col, one row per facet."""
        b, w = affine(t, coord)
        for ph in phase:
            row = np.zeros(n_vars)
            row[0:k] = np.real(w * ph)
            row[k : 2 * k] = -np.imag(w * ph)
            row[bound_col] = -1.0
            rows.append(row)
            rhs.append(-np.real(b * ph))

    for ti, t in enumerate(elements):
        m_col = var_m0 + ti
        for idx in A.blocks:
            if idx.size == 1:
                facet_rows(t, int(idx[0, 0]), m_col)
                continue
            for pos in idx.flat:
                facet_rows(t, int(pos), u_index[(ti, int(pos))])
            n = idx.shape[0]
            lines = idx.T if A.p == 1 else idx  # columns for p=1, rows for p=inf
            for line in lines:
                row = np.zeros(n_vars)
                for pos in line:
                    row[u_index[(ti, int(pos))]] = 1.0
                row[m_col] = -1.0
                rows.append(row)
                rhs.append(0.0)

    objective = np.zeros(n_vars)
    objective[var_m0 : var_m0 + n_m] = 1.0
    bounds = [(None, None)] * var_m0 + [(0, None)] * (n_m + n_aux)
    res = linprog(
        c=objective,
        A_ub=np.array(rows),
        b_ub=np.array(rhs),
        bounds=bounds,
        method="highs",
    )
    assert res.status == 0, f"quotient norm LP failed: {res.message}"
    return float(res.fun)
