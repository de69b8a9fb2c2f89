import random
from fractions import Fraction
from itertools import product
from math import comb

from relcoh.elements import Element, poly_mul
from relcoh.inversemod import (InverseElement, e_act, e_piece_rank,
                               inverse_monomials, pair_element, phi_pairing)
from relcoh.rings import QQ, QQT, Ring
from relcoh.scalars import ONE, ZERO, Scalar

R2 = Ring(QQ, ("x", "y"))
RT2 = Ring(QQT, ("x", "y"))


def test_action_examples():
    x = Element.variable(R2, "x")
    e = InverseElement.monomial(R2, (-1, -1))
    assert not e_act(x, e)
    e2 = InverseElement.monomial(R2, (-2, -1))
    assert e_act(x, e2) == InverseElement.monomial(R2, (-1, -1))
    t = Element.variable(RT2, "t")
    xy = poly_mul(Element.variable(RT2, "x"), Element.variable(RT2, "y"))
    et = InverseElement.monomial(RT2, (-2, -2))
    acted = e_act(poly_mul(t, xy), et)
    assert acted == InverseElement(RT2, {(-1, -1): Scalar((0, 1))})


def test_pairing_formula_examples():
    R1 = Ring(QQ, ("x",))
    assert phi_pairing(R1, (-1,), (0,)) == ONE
    assert phi_pairing(R2, (-1, -2), (0, 1)) == ONE
    assert phi_pairing(R2, (-1, -1), (1, 0)) == ZERO


def test_pairing_exhaustive_dual_basis():
    for n in (1, 2, 3):
        ring = Ring(QQ, tuple("xyz"[:n]))
        for alpha in product(range(-4, 0), repeat=n):
            for beta in product(range(0, 4), repeat=n):
                expected = ONE if all(
                    b == -a - 1 for a, b in zip(alpha, beta)) else ZERO
                assert phi_pairing(ring, alpha, beta) == expected


def test_action_is_module_action_random():
    rng = random.Random(11)
    for _ in range(60):
        p = _random_poly(rng)
        q = _random_poly(rng)
        e = _random_inverse(rng)
        assert e_act(poly_mul(p, q), e) == e_act(p, e_act(q, e))
        # additivity in the module argument
        e2 = _random_inverse(rng)
        lhs = e_act(p, e + e2)
        assert lhs == e_act(p, e) + e_act(p, e2)


def test_pairing_is_r_linear_random():
    rng = random.Random(13)
    for _ in range(60):
        mono = (rng.randrange(0, 3), rng.randrange(0, 3))
        m = Element.poly(R2, {mono: 1})
        alpha = (-rng.randrange(1, 4), -rng.randrange(1, 4))
        beta = (rng.randrange(0, 3), rng.randrange(0, 3))
        e = InverseElement.monomial(R2, alpha)
        lhs = pair_element(e_act(m, e), beta)
        rhs = pair_element(e, tuple(b + s for b, s in zip(beta, mono)))
        assert lhs == rhs


def test_piece_ranks():
    for n in (1, 2, 3):
        for d in range(-9, 0):
            count = len(inverse_monomials(n, d))
            assert count == e_piece_rank(n, d)
            if d <= -n:
                assert count == comb(-d - 1, n - 1)
    assert e_piece_rank(2, -1) == 0
    assert e_piece_rank(2, -2) == 1
    assert e_piece_rank(3, -3) == 1


def _random_poly(rng):
    terms = {}
    for _ in range(rng.randrange(1, 3)):
        mono = (rng.randrange(0, 3), rng.randrange(0, 3))
        terms[(0, mono)] = Fraction(rng.randrange(-2, 3))
    return Element(R2, 1, terms)


def _random_inverse(rng):
    terms = {}
    for _ in range(rng.randrange(1, 3)):
        alpha = (-rng.randrange(1, 4), -rng.randrange(1, 4))
        terms[alpha] = Scalar((rng.randrange(-2, 3),))
    return InverseElement(R2, terms)


def test_inverse_element_validation():
    import pytest
    from relcoh.rings import KernelError
    with pytest.raises(KernelError):
        InverseElement(R2, {(0, -1): ONE})
    with pytest.raises(KernelError):
        InverseElement(R2, {(-1,): ONE})
    assert not InverseElement(R2, {(-1, -1): ZERO})
