"""Covariant representations on finite-dimensional normed spaces.

A pair (pi, v) is *spatial* when v is a semigroup homomorphism intertwining
pi along the action and each v_t has exactly the essential range of I_t; it
is *algebraic* under the weaker commutation + essential-multiplicativity +
unit laws; it is *normalized* when v_t = pi(1_t) v_t.  Every algebraic pair
normalizes uniquely without changing essential products, and integration
f -> sum pi(f(t)) v_t turns sections into operators, killing the order
differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import (
    DEFAULT_TOL,
    as_complex,
    null_rows,
    operator_norm,
    orth_rows,
    rows_equal,
    rows_leq,
)
from .actions import Action, PartialSetAction
from .ell1 import Ell1Element, NullIdeal, convolve, ell1_norm, monomials, null_ideal
from .errors import (
    CR1Violation,
    CR2Violation,
    CR3Violation,
    DegenerateRepresentation,
    EmptyFamily,
    NotAGroup,
    NotSemigroupHom,
    SCR1Violation,
    SCR2RangeMismatch,
)
from .reporting import CheckReport


@dataclass(frozen=True)
class ReprSpace:
    """C^dim with the p-norm; operators are measured in the p-operator norm."""

    dim: int
    p: object


@dataclass(eq=False)
class CovariantRep:
    """Matrices pi[i] for the algebra basis and v[t] for semigroup elements."""

    action: Action
    space: ReprSpace
    pi: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        n, d, S = self.space.dim, self.action.algebra.dim, len(self.action.semigroup)
        self.pi = as_complex(self.pi).reshape(d, n, n)
        self.v = as_complex(self.v).reshape(S, n, n)

    def pi_of(self, a) -> np.ndarray:
        return np.einsum("i,ijk->jk", as_complex(a), self.pi)

    def opnorm(self, m) -> float:
        return operator_norm(m, self.space.p)

    def is_nondegenerate(self, tol: float = DEFAULT_TOL) -> bool:
        cols = np.hstack([m for m in self.pi])
        return orth_rows(cols.T, tol).shape[0] == self.space.dim

    def with_v(self, new_v) -> "CovariantRep":
        return CovariantRep(self.action, self.space, self.pi.copy(), new_v)

    def __repr__(self):
        return f"CovariantRep<dim E={self.space.dim}, p={self.space.p}>"


def cached_null(action: Action) -> NullIdeal:
    if not hasattr(action, "_null_cache"):
        action._null_cache = null_ideal(action)
    return action._null_cache


# --------------------------------------------------------------- basic layer


def certify_contractive(rep: CovariantRep, tol: float = DEFAULT_TOL, seed: int = 0,
                        samples: int = 2000) -> str:
    """Certify ||pi(a)|| <= ||a||; returns the certification level.

    Diagonal representations of function algebras admit an exact criterion
    (row sums of moduli); anything else is sampled on the unit sphere, with
    the real sign patterns thrown in for function algebras of dimension
    <= 16 since they are the extreme points of the real unit ball.
    """
    A = rep.action.algebra
    n = rep.space.dim
    diagonal = all(
        np.allclose(m, np.diag(np.diag(m)), atol=tol, rtol=0.0) for m in rep.pi
    )
    if A.kind == "function" and diagonal:
        rowsums = np.sum(np.abs([np.diag(m) for m in rep.pi]), axis=0)
        assert np.all(rowsums <= 1.0 + tol), "diagonal representation expands the norm"
        return "exact"
    trials = []
    if A.kind == "function" and A.dim <= 16:
        for bits in range(2 ** A.dim):
            signs = np.array([1.0 if bits >> i & 1 else -1.0 for i in range(A.dim)])
            trials.append(signs.astype(complex))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        a = rng.standard_normal(A.dim) + 1j * rng.standard_normal(A.dim)
        na = A.norm(a)
        if na > tol:
            trials.append(a / na)
    for a in trials:
        assert rep.opnorm(rep.pi_of(a)) <= A.norm(a) + tol, (
            "representation expands the norm on a sampled element"
        )
    return "sampled"


def validate_rep(rep: CovariantRep, tol: float = DEFAULT_TOL, seed: int = 0) -> CheckReport:
    """Homomorphism property of pi, contractivity, and contractive v."""
    report = CheckReport("representation basics")
    A = rep.action.algebra
    d = A.dim
    eye = np.eye(d, dtype=complex)
    for i in range(d):
        for j in range(d):
            want = rep.pi_of(A.mul(eye[i], eye[j]))
            got = rep.pi[i] @ rep.pi[j]
            assert np.allclose(got, want, atol=tol, rtol=0.0), (
                f"pi is not multiplicative at basis pair {(i, j)}"
            )
    report.add("pi", "algebra homomorphism", True)
    level = certify_contractive(rep, tol, seed)
    report.add("pi", "contractive", True, f"certification: {level}")
    for t, m in enumerate(rep.v):
        assert rep.opnorm(m) <= 1.0 + tol, f"v at {t} is not contractive"
    report.add("v", "contractive", True)
    report.note(f"nondegenerate (span pi(A)E = E): {rep.is_nondegenerate(tol)}")
    return report


# ----------------------------------------------------------- axiom checkers


def _essential_space(rep: CovariantRep, t: int, tol: float) -> np.ndarray:
    """Row-space description of span(pi(I_t) E)."""
    basis = rep.action.ideal(t).basis
    if basis.shape[0] == 0:
        return np.zeros((0, rep.space.dim), dtype=complex)
    cols = np.hstack([rep.pi_of(a) for a in basis])
    return orth_rows(cols.T, tol)


def check_spatial(rep: CovariantRep, tol: float = DEFAULT_TOL) -> CheckReport:
    """Intertwining + exact essential ranges + semigroup homomorphism."""
    sg = rep.action.semigroup
    report = CheckReport("spatial covariant representation")
    _check_intertwining(rep, tol, SCR1Violation)
    report.add("SCR1", "intertwining on all ideal bases", True)
    for t in range(len(sg)):
        vrange = orth_rows(rep.v[t].T, tol)
        if not rows_equal(vrange, _essential_space(rep, t, tol), tol):
            raise SCR2RangeMismatch(sg.labels[t])
        report.add("SCR2", sg.labels[t], True)
    for s in range(len(sg)):
        for t in range(len(sg)):
            if not np.allclose(
                rep.v[s] @ rep.v[t], rep.v[sg.mul(s, t)], atol=tol, rtol=0.0
            ):
                raise NotSemigroupHom(sg.labels[s], sg.labels[t])
    report.add("hom", "v is a semigroup homomorphism", True)
    for t in range(len(sg)):
        ts = sg.inv(t)
        assert np.allclose(
            rep.v[t] @ rep.v[ts] @ rep.v[t], rep.v[t], atol=tol, rtol=0.0
        ), f"partial isometry identity fails at {t}"
    report.add("partial isometries", "v_t v_t* v_t = v_t", True)
    return report


def _check_intertwining(rep: CovariantRep, tol: float, errcls) -> None:
    """v_t pi(a) = pi(alpha_t(a)) v_t for a over the basis of I_{t*}."""
    sg = rep.action.semigroup
    for t in range(len(sg)):
        src = rep.action.paut(t).source
        for i, a in enumerate(src.basis):
            lhs = rep.v[t] @ rep.pi_of(a)
            rhs = rep.pi_of(rep.action.apply(t, a, tol)) @ rep.v[t]
            if not np.allclose(lhs, rhs, atol=tol, rtol=0.0):
                raise errcls(sg.labels[t], i)


def check_algebraic(rep: CovariantRep, tol: float = DEFAULT_TOL) -> CheckReport:
    """Commutation, essential multiplicativity and unit laws, plus their
    standard consequences (asserted, since they are theorems)."""
    sg = rep.action.semigroup
    act = rep.action
    report = CheckReport("algebraic covariant representation")
    _check_intertwining(rep, tol, CR1Violation)
    report.add("CR1", "commutation on all ideal bases", True,
               "membership of products in the algebra is automatic here")
    for s in range(len(sg)):
        for t in range(len(sg)):
            st = sg.mul(s, t)
            for a in act.ideal(st).basis:
                pa = rep.pi_of(a)
                if not np.allclose(
                    pa @ rep.v[s] @ rep.v[t], pa @ rep.v[st], atol=tol, rtol=0.0
                ):
                    raise CR2Violation(sg.labels[s], sg.labels[t])
            report.add("CR2", f"({sg.labels[s]}, {sg.labels[t]})", True)
    for e in sg.idempotents:
        for a in act.ideal(e).basis:
            pa = rep.pi_of(a)
            if not np.allclose(pa @ rep.v[e], pa, atol=tol, rtol=0.0):
                raise CR3Violation(sg.labels[e])
        report.add("CR3", sg.labels[e], True)
    # consequences: alternate covariance, left unit law, co-isometry law
    for t in range(len(sg)):
        ts = sg.inv(t)
        for a in act.paut(t).source.basis:
            lhs = rep.v[t] @ rep.pi_of(a) @ rep.v[ts]
            rhs = rep.pi_of(act.apply(t, a, tol))
            assert np.allclose(lhs, rhs, atol=tol, rtol=0.0), (
                f"alternate covariance fails at {t}"
            )
        for a in act.ideal(t).basis:
            # a in I_t = I_{tt*}, so CR2 + CR3 force pi(a) v_t v_{t*} = pi(a)
            pa = rep.pi_of(a)
            assert np.allclose(pa @ rep.v[t] @ rep.v[ts], pa, atol=tol, rtol=0.0), (
                f"co-unit law fails at {t}"
            )
    for e in sg.idempotents:
        for a in act.ideal(e).basis:
            pa = rep.pi_of(a)
            assert np.allclose(rep.v[e] @ pa, pa, atol=tol, rtol=0.0), (
                f"left unit law fails at {e}"
            )
    report.add("consequences", "alternate covariance and unit laws", True)
    report.note(f"nondegenerate (span pi(A)E = E): {rep.is_nondegenerate(tol)}")
    return report


# -------------------------------------------------------------- normalization


def is_normalized(rep: CovariantRep, tol: float = DEFAULT_TOL) -> bool:
    sg = rep.action.semigroup
    for t in range(len(sg)):
        unit = rep.action.ideal(t).unit
        if not np.allclose(rep.pi_of(unit) @ rep.v[t], rep.v[t], atol=tol, rtol=0.0):
            return False
        unit_star = rep.action.ideal(sg.inv(t)).unit
        if not np.allclose(rep.v[t] @ rep.pi_of(unit_star), rep.v[t], atol=tol, rtol=0.0):
            return False
    return True


def grading_space(rep: CovariantRep, t: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Flattened span of {pi(a) v_t : a in I_t}."""
    basis = rep.action.ideal(t).basis
    if basis.shape[0] == 0:
        return np.zeros((0, rep.space.dim ** 2), dtype=complex)
    rows = np.array([(rep.pi_of(a) @ rep.v[t]).ravel() for a in basis])
    return orth_rows(rows, tol)


def range_space(rep: CovariantRep, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Flattened span of all the grading subspaces."""
    sg = rep.action.semigroup
    rows = np.vstack([grading_space(rep, t, tol) for t in range(len(sg))])
    return orth_rows(rows, tol)


def normalize(rep: CovariantRep, tol: float = DEFAULT_TOL) -> CovariantRep:
    """Replace v_t by pi(1_t) v_t and verify everything that is forced.

    The result is the unique normalized pair with the same essential
    products pi(a) v_t, a in I_t; failures of the assertions below would
    indicate an implementation bug, not bad input.
    """
    check_algebraic(rep, tol)
    sg = rep.action.semigroup
    act = rep.action
    new_v = np.array(
        [rep.pi_of(act.ideal(t).unit) @ rep.v[t] for t in range(len(sg))]
    )
    out = rep.with_v(new_v)
    for s in range(len(sg)):
        for t in range(len(sg)):
            assert np.allclose(
                out.v[s] @ out.v[t], out.v[sg.mul(s, t)], atol=tol, rtol=0.0
            ), "normalized v is not a semigroup homomorphism"
    for e in sg.idempotents:
        assert np.allclose(
            out.v[e], rep.pi_of(act.ideal(e).unit), atol=tol, rtol=0.0
        ), "normalized v_e differs from pi(1_e)"
    for t in range(len(sg)):
        for a in act.ideal(t).basis:
            pa = rep.pi_of(a)
            assert np.allclose(pa @ rep.v[t], pa @ out.v[t], atol=tol, rtol=0.0), (
                "normalization changed an essential product"
            )
        unit_star = act.ideal(sg.inv(t)).unit
        assert np.allclose(
            out.v[t] @ rep.pi_of(unit_star), out.v[t], atol=tol, rtol=0.0
        ), "right unit law fails after normalization"
    assert rows_equal(range_space(rep, tol), range_space(out, tol), tol), (
        "normalization changed the range"
    )
    again = np.array(
        [out.pi_of(act.ideal(t).unit) @ out.v[t] for t in range(len(sg))]
    )
    assert np.allclose(again, out.v, atol=tol, rtol=0.0), (
        "normalization is not idempotent"
    )
    return out


# ----------------------------------------------------------------- integrate


@dataclass(eq=False)
class IntegratedRep:
    """Linear map from dense section coordinates to operators on E."""

    rep: CovariantRep
    matrix: np.ndarray  # (n*n, total_dim)

    def apply(self, f: Ell1Element) -> np.ndarray:
        n = self.rep.space.dim
        return (self.matrix @ f.to_dense()).reshape(n, n)

    def kernel(self, tol: float = DEFAULT_TOL) -> np.ndarray:
        return null_rows(self.matrix, tol)


def integrate(
    rep: CovariantRep,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    samples: int = 200,
    check: bool = True,
) -> IntegratedRep:
    """f -> sum over t of pi(f(t)) v_t.

    On construction the map is verified to be multiplicative (exactly, on
    the monomial spanning set), contractive on sampled sections, and to kill
    the order-difference ideal.
    """
    act = rep.action
    n = rep.space.dim
    cols = []
    for t in act.nonzero_elements:
        for a in act.ideal(t).basis:
            cols.append((rep.pi_of(a) @ rep.v[t]).ravel())
    matrix = np.array(cols).T.reshape(n * n, act.total_dim)
    out = IntegratedRep(rep, matrix)
    if check:
        mono = monomials(act)
        for x in mono:
            for y in mono:
                got = out.apply(convolve(x, y, tol))
                want = out.apply(x) @ out.apply(y)
                assert np.allclose(got, want, atol=tol, rtol=0.0), (
                    "integration is not multiplicative on monomials"
                )
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            f = Ell1Element.from_dense(
                act,
                rng.standard_normal(act.total_dim)
                + 1j * rng.standard_normal(act.total_dim),
            )
            assert rep.opnorm(out.apply(f)) <= ell1_norm(f) + tol, (
                "integration is not contractive on a sampled section"
            )
        for row in cached_null(act).basis:
            img = out.apply(Ell1Element.from_dense(act, row))
            assert rep.opnorm(img) <= tol, (
                "integration does not kill the order differences"
            )
    return out


def regular_rep(theta: PartialSetAction, p, action: Action | None = None,
                tol: float = DEFAULT_TOL) -> CovariantRep:
    """Canonical spatial pair on functions over the carrier: pi multiplies,
    v_t relocates coordinates along theta_{t*} on the image of theta_t."""
    from .actions import induce_action

    act = action if action is not None else induce_action(theta)
    points = act.algebra.points
    n = len(points)
    pi = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        pi[i, i, i] = 1.0
    v = np.zeros((len(theta.maps), n, n), dtype=complex)
    for t, m in enumerate(theta.maps):
        inv = m.invert()
        for x in inv.domain:  # x ranges over the image set of theta_t
            v[t, points.index(x), points.index(inv(x))] = 1.0
    rep = CovariantRep(act, ReprSpace(n, p), pi, v)
    check_spatial(rep, tol)
    return rep


# ------------------------------------------------------- families, seminorms


def _require_family(family, tol: float, require_nondegenerate: bool) -> None:
    if not family:
        raise EmptyFamily()
    for i, rep in enumerate(family):
        check_algebraic(rep, tol)
        if require_nondegenerate and not rep.is_nondegenerate(tol):
            raise DegenerateRepresentation(i)


def seminorm_family(
    f: Ell1Element,
    family,
    tol: float = DEFAULT_TOL,
    require_nondegenerate: bool = True,
) -> float:
    """sup over the family of the operator norm of the integrated image."""
    _require_family(family, tol, require_nondegenerate)
    return max(
        rep.opnorm(integrate(rep, tol, check=False).apply(f)) for rep in family
    )


def seminorm_kernel(
    family,
    tol: float = DEFAULT_TOL,
    require_nondegenerate: bool = True,
) -> np.ndarray:
    """Common kernel of the integrated maps; a convolution ideal above the
    order-difference ideal (both facts asserted)."""
    _require_family(family, tol, require_nondegenerate)
    act = family[0].action
    stacked = np.vstack([integrate(rep, tol, check=False).matrix for rep in family])
    kernel = null_rows(stacked, tol)
    mono = monomials(act)
    for row in kernel:
        x = Ell1Element.from_dense(act, row)
        for m in mono:
            for y in (convolve(m, x, tol), convolve(x, m, tol)):
                assert _in_span(kernel, y.to_dense(), tol), (
                    "kernel is not convolution invariant"
                )
    assert rows_leq(cached_null(act).basis, kernel, tol), (
        "kernel does not contain the order differences"
    )
    return kernel


def _in_span(basis: np.ndarray, v: np.ndarray, tol: float) -> bool:
    from ._linalg import in_rowspace

    return in_rowspace(basis, v, tol)


# ------------------------------------------------------------- C* and groups


def adjoint_check(rep: CovariantRep, tol: float = DEFAULT_TOL) -> CheckReport:
    """Hilbert-case adjoint formula and the saturation of the grading."""
    act = rep.action
    sg = act.semigroup
    assert rep.space.p == 2, "adjoints need the 2-norm"
    assert act.algebra.star_mat is not None, "adjoints need an involution"
    assert is_normalized(rep, tol), "adjoint formula is stated for normalized pairs"
    report = CheckReport("adjoint formula")
    eye = np.eye(act.algebra.dim, dtype=complex)
    for i in range(act.algebra.dim):
        assert np.allclose(
            rep.pi_of(act.algebra.star(eye[i])),
            rep.pi[i].conj().T,
            atol=tol,
            rtol=0.0,
        ), "pi does not preserve the involution"
    report.add("star", "pi preserves the involution", True)
    for t in range(len(sg)):
        ts = sg.inv(t)
        for a in act.ideal(t).basis:
            lhs = (rep.pi_of(a) @ rep.v[t]).conj().T
            astar = act.apply(ts, act.algebra.star(a), tol)
            rhs = rep.pi_of(astar) @ rep.v[ts]
            assert np.allclose(lhs, rhs, atol=tol, rtol=0.0), (
                f"adjoint formula fails at {sg.labels[t]}"
            )
        report.add("adjoints", sg.labels[t], True)
        lhs_space = grading_space(rep, t, tol).conj()
        n = rep.space.dim
        lhs_space = (
            lhs_space.reshape(-1, n, n).transpose(0, 2, 1).reshape(-1, n * n)
        )
        ok = rows_equal(lhs_space, grading_space(rep, ts, tol), tol)
        assert ok, f"grading is not saturated at {sg.labels[t]}"
        report.add("saturated grading", f"A_{sg.labels[t]}* = A_{sg.labels[ts]}", True)
    return report


def group_case_check(
    action: Action, rep: CovariantRep | None = None, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Group specialization: the two convolution formulas agree, and for a
    nondegenerate normalized pair every v_g is an invertible isometry."""
    sg = action.semigroup
    if not sg.is_group:
        raise NotAGroup(len(sg.idempotents))
    report = CheckReport("group case")
    A = action.algebra
    for s in action.nonzero_elements:
        for a in action.ideal(s).basis:
            fa = Ell1Element.monomial(action, s, a, tol)
            for t in action.nonzero_elements:
                for b in action.ideal(t).basis:
                    fb = Ell1Element.monomial(action, t, b, tol)
                    got = convolve(fa, fb, tol)
                    for r in action.nonzero_elements:
                        want = np.zeros(A.dim, dtype=complex)
                        for h in range(len(sg)):
                            # (x * y)(r) = sum_h x(h) alpha_h(y(h^-1 r))
                            hr = sg.mul(sg.inv(h), r)
                            xh = fa.value(h)
                            yhr = fb.value(hr)
                            if np.any(xh) and np.any(yhr):
                                want += A.mul(xh, action.apply(h, yhr, tol))
                        assert np.allclose(got.value(r), want, atol=tol, rtol=0.0), (
                            "group and semigroup convolutions disagree"
                        )
    report.add("convolution", "group formula agrees on all basis pairs", True)
    if rep is not None:
        assert rep.is_nondegenerate(tol), "group check needs a nondegenerate pair"
        assert is_normalized(rep, tol), "group check needs a normalized pair"
        for g in range(len(sg)):
            m = rep.v[g]
            assert rep.opnorm(m) <= 1.0 + tol
            minv = np.linalg.inv(m)
            assert rep.opnorm(minv) <= 1.0 + tol, (
                f"v at {sg.labels[g]} is not an invertible isometry"
            )
        report.add("isometries", "all v_g invertible with contractive inverse", True)
    return report
