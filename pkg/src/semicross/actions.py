"""Inverse semigroup actions on finite-dimensional algebras.

An action assigns to every semigroup element t a partial automorphism
alpha_t : I_{t*} -> I_t such that composition of partial maps realizes the
semigroup law, every ideal is unital, and the idempotent ideals span the
algebra.  Actions on function algebras arise from partial bijections of the
point set via alpha_t(a) = a o theta_{t*}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import DEFAULT_TOL, intersect_rows, rank_rows, rows_equal, rows_leq
from .algebras import (
    FinAlgebra,
    Ideal,
    PartialAut,
    compose_paut,
    function_algebra,
    ideal_validate,
    pauts_equal,
)
from .errors import NonzeroIdealAtZero, PA1Violation, PA2SpanDeficit
from .reporting import CheckReport
from .semigroups import InvSemigroup


@dataclass(eq=False)
class Action:
    """Family {alpha_t} of partial automorphisms indexed by semigroup elements."""

    semigroup: InvSemigroup
    algebra: FinAlgebra
    pauts: tuple

    def ideal(self, t: int) -> Ideal:
        """I_t, the target ideal of alpha_t."""
        return self.pauts[t].target

    def paut(self, t: int) -> PartialAut:
        return self.pauts[t]

    def apply(self, t: int, x, tol: float = DEFAULT_TOL) -> np.ndarray:
        return self.pauts[t].apply(x, tol)

    # ----- coordinates of the section space (used by the convolution layer);
    # cached, the paut family never changes after construction

    @property
    def nonzero_elements(self) -> tuple:
        if not hasattr(self, "_nonzero"):
            self._nonzero = tuple(
                t for t in range(len(self.semigroup)) if self.ideal(t).dim > 0
            )
        return self._nonzero

    @property
    def offsets(self) -> dict:
        if not hasattr(self, "_offsets"):
            off, at = {}, 0
            for t in self.nonzero_elements:
                off[t] = at
                at += self.ideal(t).dim
            self._offsets = off
        return self._offsets

    @property
    def total_dim(self) -> int:
        return sum(self.ideal(t).dim for t in self.nonzero_elements)

    def __repr__(self):
        return (
            f"Action<|S|={len(self.semigroup)}, dim A={self.algebra.dim}, "
            f"dim l1={self.total_dim}>"
        )


@dataclass(eq=False)
class PartialSetAction:
    """Assignment t -> partial bijection theta_t of a finite carrier set,
    multiplicative as partial maps."""

    semigroup: InvSemigroup
    carrier: tuple
    maps: tuple

    @classmethod
    def tautological(cls, sg: InvSemigroup) -> "PartialSetAction":
        """A generated semigroup acting on its own carrier by its elements."""
        assert sg.pbijs is not None, "semigroup was not generated from partial maps"
        return cls(sg, sg.pbijs[0].carrier, sg.pbijs)

    def validate(self) -> None:
        n = len(self.semigroup)
        for t in range(n):
            assert self.maps[t].carrier == tuple(sorted(set(self.carrier)))
        for s in range(n):
            for t in range(n):
                got = self.maps[s].compose(self.maps[t])
                want = self.maps[self.semigroup.mul(s, t)]
                assert got.pairs == want.pairs, (
                    f"theta is not a homomorphism at ({s}, {t})"
                )


def induce_action(theta: PartialSetAction) -> Action:
    """Action on C(X) from a partial set action: I_t is supported on the
    image of theta_t, and alpha_t precomposes with theta_{t*}."""
    theta.validate()
    sg = theta.semigroup
    algebra = function_algebra(theta.maps[0].carrier)
    pauts = []
    for t in range(len(sg)):
        m = theta.maps[t]
        src = Ideal.from_support(algebra, sorted(m.domain))
        tgt = Ideal.from_support(algebra, sorted(m.image))
        rows = np.zeros((src.dim, algebra.dim), dtype=complex)
        for r, x in enumerate(sorted(m.domain)):
            # delta_x o theta_{t*} = delta_{theta_t(x)}
            rows[r, algebra.points.index(m(x))] = 1.0
        pauts.append(PartialAut(src, tgt, rows))
    action = Action(sg, algebra, tuple(pauts))
    validate_action(action)
    return action


def validate_action(action: Action, tol: float = DEFAULT_TOL) -> CheckReport:
    """Check the zero convention, unital ideals with full idempotent span,
    and the composition law, in that order; reports every checked pair."""
    sg = action.semigroup
    report = CheckReport("action axioms")
    if sg.zero is not None:
        if action.ideal(sg.zero).dim != 0:
            raise NonzeroIdealAtZero(action.ideal(sg.zero).dim)
        report.add("zero", "I_0 = {0}", True)
    for t in range(len(sg)):
        ideal_validate(action.ideal(t), tol)
        report.add("units", f"I_{sg.labels[t]} unital", True)
    idem_rows = np.vstack(
        [action.ideal(e).basis for e in sg.idempotents]
        + [np.zeros((0, action.algebra.dim))]
    )
    span = rank_rows(idem_rows, tol)
    if span < action.algebra.dim:
        raise PA2SpanDeficit(action.algebra.dim - span)
    report.add("PA2", "idempotent ideals span the algebra", True)
    for s in range(len(sg)):
        for t in range(len(sg)):
            got = compose_paut(action.paut(s), action.paut(t), tol)
            want = action.paut(sg.mul(s, t))
            if not rows_equal(got.source.basis, want.source.basis, tol):
                raise PA1Violation(sg.labels[s], sg.labels[t], "source subspaces differ")
            if not pauts_equal(got, want, tol):
                raise PA1Violation(sg.labels[s], sg.labels[t], "maps differ on the source")
            report.add("PA1", f"({sg.labels[s]}, {sg.labels[t]})", True)
    # sources must be the star-partner ideals
    for t in range(len(sg)):
        if not rows_equal(
            action.paut(t).source.basis, action.ideal(sg.inv(t)).basis, tol
        ):
            raise PA1Violation(sg.labels[t], sg.labels[sg.inv(t)], "source is not I_{t*}")
    report.add("sources", "every alpha_t starts at I_{t*}", True)
    return report


def check_derived_identities(action: Action, tol: float = DEFAULT_TOL) -> CheckReport:
    """Consequences of the axioms, asserted exhaustively: failures here mean
    an implementation bug, not bad input."""
    sg = action.semigroup
    A = action.algebra
    report = CheckReport("derived identities")
    for s in range(len(sg)):
        for t in range(len(sg)):
            inter = intersect_rows(
                action.ideal(sg.inv(s)).basis, action.ideal(t).basis, tol
            )
            image = np.array(
                [action.apply(s, row, tol) for row in inter]
            ).reshape(-1, A.dim)
            ok = rows_equal(image, action.ideal(sg.mul(s, t)).basis, tol)
            assert ok, f"alpha_s(I_s* & I_t) != I_st at ({s}, {t})"
            report.add("alpha_s(I_s* & I_t) = I_st", f"({sg.labels[s]}, {sg.labels[t]})", ok)
    for t in range(len(sg)):
        tt = sg.mul(t, sg.inv(t))
        ok = rows_equal(action.ideal(t).basis, action.ideal(tt).basis, tol)
        ok = ok and np.allclose(
            action.ideal(t).unit, action.ideal(tt).unit, atol=tol, rtol=0.0
        )
        assert ok, f"I_t != I_tt* at {t}"
        report.add("I_t = I_tt*", sg.labels[t], ok)
    for e in sg.idempotents:
        ok = all(
            np.allclose(action.apply(e, row, tol), row, atol=tol, rtol=0.0)
            for row in action.ideal(e).basis
        )
        assert ok, f"alpha_e is not the identity at {e}"
        report.add("alpha_e = id", sg.labels[e], ok)
    for t in range(len(sg)):
        ok = all(
            np.allclose(
                action.apply(sg.inv(t), action.apply(t, row, tol), tol),
                row,
                atol=tol,
                rtol=0.0,
            )
            for row in action.paut(t).source.basis
        )
        assert ok, f"alpha_t* is not the inverse of alpha_t at {t}"
        report.add("alpha_t* = alpha_t^-1", sg.labels[t], ok)
    for s, t in sorted(sg.order):
        ok = rows_leq(action.ideal(s).basis, action.ideal(t).basis, tol)
        assert ok, f"I_s not inside I_t for {s} <= {t}"
        report.add("s <= t implies I_s <= I_t", f"({sg.labels[s]}, {sg.labels[t]})", ok)
    return report
