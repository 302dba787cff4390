"""Acceptance suite: one test per criterion, each at its stated tolerance,
printing one PASS/FAIL line.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import itertools
from contextlib import contextmanager
from math import comb, factorial

import numpy as np
import pytest

from semicross._linalg import rows_equal
from semicross.actions import validate_action
from semicross.algebras import Ideal, PartialAut
from semicross.ell1 import (
    Ell1Element,
    convolve,
    ell1_norm,
    involution,
    null_ideal,
    quotient_algebra,
    quotient_ell1_norm,
)
from semicross.errors import PA1Violation, PA2SpanDeficit
from semicross.reps import (
    check_algebraic,
    check_spatial,
    group_case_check,
    integrate,
    is_normalized,
    normalize,
    seminorm_kernel,
)
from semicross.semigroups import PartialBijection, generate_semigroup

from test_actions import replace_paut
from test_reps import cr_perturbations, padded
from test_semigroups import brute_closure

TOL = 1e-9


@contextmanager
def criterion(num: int, text: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num}: FAIL — {text}")
        raise
    print(f"ACCEPTANCE {num}: PASS — {text}")


def random_section(action, rng):
    dense = rng.standard_normal(action.total_dim) + 1j * rng.standard_normal(
        action.total_dim
    )
    return Ell1Element.from_dense(action, dense)


def test_criterion_1_semigroup_generation():
    with criterion(1, "semigroup generation, star uniqueness, commuting idempotents"):
        X2 = ("1", "2")
        shift = PartialBijection.from_dict(X2, {"1": "2"})
        swap2 = PartialBijection.from_dict(X2, {"1": "2", "2": "1"})
        part2 = PartialBijection.identity(X2, ("1",))
        assert len(generate_semigroup([shift])) == 5 == len(brute_closure([shift]))
        assert (
            len(generate_semigroup([swap2, part2]))
            == 7
            == len(brute_closure([swap2, part2]))
        )
        assert sum(comb(2, k) ** 2 * factorial(k) for k in range(3)) == 7

        X3 = ("1", "2", "3")
        X4 = ("1", "2", "3", "4")
        cases = [
            [shift],
            [swap2, part2],
            # full symmetric inverse monoids on 3 and 4 points
            [
                PartialBijection.from_dict(X3, {"1": "2", "2": "3", "3": "1"}),
                PartialBijection.from_dict(X3, {"1": "2", "2": "1", "3": "3"}),
                PartialBijection.identity(X3, ("1", "2")),
            ],
            [
                PartialBijection.from_dict(
                    X4, {"1": "2", "2": "3", "3": "4", "4": "1"}
                ),
                PartialBijection.from_dict(
                    X4, {"1": "2", "2": "1", "3": "3", "4": "4"}
                ),
                PartialBijection.identity(X4, ("1", "2", "3")),
            ],
            # mixed partial generators
            [
                PartialBijection.from_dict(X3, {"1": "3", "3": "2"}),
                PartialBijection.identity(X3, ("2", "3")),
            ],
            [
                PartialBijection.from_dict(X4, {"1": "2", "3": "4"}),
                PartialBijection.from_dict(X4, {"2": "3"}),
            ],
        ]
        sizes = []
        for gens in cases:
            sg = generate_semigroup(gens)
            sizes.append(len(sg))
            for t in range(len(sg)):
                candidates = [
                    u
                    for u in range(len(sg))
                    if sg.mul(sg.mul(t, u), t) == t and sg.mul(sg.mul(u, t), u) == u
                ]
                assert candidates == [sg.inv(t)], "star must be the unique inverse"
            for e, f in itertools.product(sg.idempotents, repeat=2):
                assert sg.mul(e, f) == sg.mul(f, e)
        # the full monoids match the counting formula
        assert sizes[2] == sum(comb(3, k) ** 2 * factorial(k) for k in range(4))
        assert sizes[3] == sum(comb(4, k) ** 2 * factorial(k) for k in range(5))


def test_criterion_2_action_axioms(flip, semi, all_instances):
    with criterion(2, "action axioms, derived identities, designated mutations"):
        assert validate_action(flip.action, TOL).passed
        assert validate_action(semi.action, TOL).passed
        from semicross.actions import check_derived_identities

        for inst in all_instances:
            assert check_derived_identities(inst.action, TOL).passed
        sg = flip.semigroup
        t = sg.index("(1>2)")
        old = flip.action.paut(t)
        scaled = replace_paut(
            flip.action, t, PartialAut(old.source, old.target, -old.matrix)
        )
        with pytest.raises(PA1Violation):
            validate_action(scaled, TOL)
        zero = Ideal.zero(flip.action.algebra)
        deleted = replace_paut(
            flip.action,
            sg.index("id{1}"),
            PartialAut(zero, zero, np.zeros((0, 2))),
        )
        with pytest.raises(PA2SpanDeficit):
            validate_action(deleted, TOL)


def test_criterion_3_convolution_laws(all_instances):
    with criterion(3, "associativity, submultiplicativity and star laws, 500 triples"):
        rng = np.random.default_rng(2024)
        for inst in all_instances:
            act = inst.action
            for _ in range(500):
                f, g, h = (random_section(act, rng) for _ in range(3))
                assert convolve(convolve(f, g, TOL), h, TOL).allclose(
                    convolve(f, convolve(g, h, TOL), TOL), TOL
                )
                assert (
                    ell1_norm(convolve(f, g, TOL))
                    <= ell1_norm(f) * ell1_norm(g) + TOL
                )
                assert involution(involution(f, TOL), TOL).allclose(f, TOL)
                assert involution(convolve(f, g, TOL), TOL).allclose(
                    convolve(involution(g, TOL), involution(f, TOL), TOL), TOL
                )
                assert abs(ell1_norm(involution(f, TOL)) - ell1_norm(f)) <= TOL


def test_criterion_4_null_and_quotient(flip, semi, sim2, sim2_reg):
    with criterion(4, "null dimensions 0/1/4, quotients 4/2/4, kernel = null"):
        expected = {"flip": (0, 4), "semi": (1, 2), "sim2": (4, 4)}
        for inst in (flip, semi, sim2):
            null = null_ideal(inst.action, TOL)
            want_null, want_quot = expected[inst.name]
            assert null.dim == want_null
            assert quotient_algebra(inst.action, null.basis, TOL).dim == want_quot
        kernel = seminorm_kernel([sim2_reg], TOL)
        assert rows_equal(kernel, null_ideal(sim2.action, TOL).basis, TOL)


def test_criterion_5_representation_suite(all_instances):
    with criterion(5, "spatial checks, normalization laws, 100 perturbations each"):
        for inst in all_instances:
            reg = inst.regular(2)
            assert check_spatial(reg, TOL).passed
            assert check_algebraic(reg, TOL).passed
            fixed = normalize(reg, TOL)
            assert np.allclose(fixed.v, reg.v, atol=TOL)
            assert np.allclose(normalize(fixed, TOL).v, fixed.v, atol=TOL)
            sg = inst.semigroup
            for e in sg.idempotents:
                assert np.allclose(
                    fixed.v[e], reg.pi_of(inst.action.ideal(e).unit), atol=TOL
                )
            # perturb on a degenerate extension: nondegenerate group pairs
            # are rigid and admit no covariant junk at all
            base = padded(reg)
            for cand in cr_perturbations(base, 100, seed=511):
                renorm = normalize(cand, TOL)
                for s in range(len(sg)):
                    for t in range(len(sg)):
                        assert np.allclose(
                            renorm.v[s] @ renorm.v[t],
                            renorm.v[sg.mul(s, t)],
                            atol=TOL,
                        )
                assert np.allclose(renorm.v, base.v, atol=TOL)


def test_criterion_6_integration(all_instances):
    with criterion(6, "integration multiplicative, contractive, kills null"):
        rng = np.random.default_rng(606)
        for inst in all_instances:
            reg = inst.regular(2)
            ir = integrate(reg, TOL, check=False)
            act = inst.action
            for _ in range(500):
                f, g = random_section(act, rng), random_section(act, rng)
                assert np.allclose(
                    ir.apply(convolve(f, g, TOL)),
                    ir.apply(f) @ ir.apply(g),
                    atol=TOL,
                )
                assert reg.opnorm(ir.apply(f)) <= ell1_norm(f) + TOL
            for row in null_ideal(act, TOL).basis:
                assert reg.opnorm(ir.apply(Ell1Element.from_dense(act, row))) <= TOL


def test_criterion_7_cstar_checks(all_instances):
    with criterion(7, "adjoint formula and star-preserving integration at p = 2"):
        rng = np.random.default_rng(707)
        for inst in all_instances:
            reg = inst.regular(2)
            act = inst.action
            sg = inst.semigroup
            for t in range(len(sg)):
                ts = sg.inv(t)
                for a in act.ideal(t).basis:
                    lhs = (reg.pi_of(a) @ reg.v[t]).conj().T
                    astar = act.apply(ts, act.algebra.star(a), TOL)
                    rhs = reg.pi_of(astar) @ reg.v[ts]
                    assert np.allclose(lhs, rhs, atol=TOL)
            ir = integrate(reg, TOL, check=False)
            for _ in range(100):
                f = random_section(act, rng)
                assert np.allclose(
                    ir.apply(involution(f, TOL)), ir.apply(f).conj().T, atol=TOL
                )


def test_criterion_8_group_case(z2, z2_reg):
    with criterion(8, "group convolution agreement and invertible isometries"):
        assert z2.action.total_dim ** 2 == 16  # 4 monomials against 4 monomials
        report = group_case_check(z2.action, z2_reg, TOL)
        assert report.passed
        assert z2_reg.is_nondegenerate(TOL) and is_normalized(z2_reg, TOL)
        for g in range(len(z2.semigroup)):
            m = z2_reg.v[g]
            assert z2_reg.opnorm(m) <= 1.0 + TOL
            assert z2_reg.opnorm(np.linalg.inv(m)) <= 1.0 + TOL


def test_criterion_9_quotient_norm_lp(semi):
    with criterion(9, "quotient norm of the semilattice coset is 1.0"):
        null = null_ideal(semi.action, TOL)
        one = semi.semigroup.index("id{1,2}")
        f = Ell1Element.monomial(semi.action, one, np.array([1, 0], complex), TOL)
        value = quotient_ell1_norm(f, null.basis, TOL)
        assert value == pytest.approx(1.0, rel=2e-3)
