import pytest

from relcoh.basechange import (base_change_check, find_witness,
                               specialize_module, specialize_scalar)
from relcoh.elements import Element, poly_mul
from relcoh.homology import graded_piece
from relcoh.modules import ModulePresentation
from relcoh.rings import QQ, QQT, KernelError, Ring
from relcoh.scalars import ONE, T, Scalar, divides_power_of

import suites

RT1 = Ring(QQT, ("x",))
RT2 = Ring(QQT, ("x", "y"))


def tx_module():
    t, x = Element.variable(RT1, "t"), Element.variable(RT1, "x")
    return ModulePresentation(RT1, 1, (0,), [poly_mul(t, x)])


def test_specialize_scalar():
    assert specialize_scalar(T * T + ONE, 2) == 5
    assert specialize_scalar(Scalar.rational(3), 7) == 3
    assert specialize_scalar(T - ONE, 1) == 0


def test_specialize_module_examples():
    M = tx_module()
    at1 = specialize_module(M, 1)
    assert at1.ring.base == QQ
    assert len(at1.relations) == 1
    assert at1.relations[0] == Element.variable(at1.ring, "x")
    at0 = specialize_module(M, 0)
    assert not at0.relations[0]          # relation collapses, column kept
    free_q = ModulePresentation.free(Ring(QQ, ("x",)))
    assert specialize_module(free_q, 5) is free_q


def test_specialize_commutes_with_graded_piece():
    for label, M, window in suites.qqt_suite():
        for c in (0, 1, 2):
            Mc = specialize_module(M, c)
            for d in range(0, 4):
                evaluated = graded_piece(M, d).evaluate(c)
                direct = graded_piece(Mc, d)
                assert evaluated.nrows == direct.nrows, (label, c, d)
                assert evaluated.ncols == direct.ncols, (label, c, d)
                assert evaluated == direct, (label, c, d)


def test_witness_examples():
    assert str(find_witness(tx_module(), (-4, 2)).g) == "t"
    t2, x2 = Element.variable(RT2, "t"), Element.variable(RT2, "x")
    m = ModulePresentation(RT2, 1, (0,), [poly_mul(t2, x2) - x2])
    assert str(find_witness(m, (-4, 2)).g) == "t - 1"
    free = ModulePresentation.free(RT2, 2, (0, 1))
    assert find_witness(free, (-4, 2)).g.is_one()
    for label, M in suites.qq_suite():
        assert find_witness(M, (-4, 2)).g.is_one(), label


def test_witness_provenance_and_monotone():
    M = tx_module()
    narrow = find_witness(M, (-2, 1))
    wide = find_witness(M, (-6, 3))
    assert narrow.g.divides(wide.g)
    sources = {src for src, _, _ in wide.provenance}
    assert sources == {"graded-piece", "cohomology-torsion"}


def test_base_change_tx_examples():
    M = tx_module()
    r = base_change_check(M, 0, 2, (-3, 1))
    assert not r.mismatches and r.g_value == 2
    r0 = base_change_check(M, 0, 0, (-3, 1))
    assert r0.mismatches == [0] and r0.expected_possible
    r1 = base_change_check(M, 1, 0, (-5, 1))
    assert r1.mismatches == [-5, -4, -3, -2, -1]
    assert not r1.violation


def test_base_change_suite_points():
    for label, M, window in suites.qqt_suite():
        witness = find_witness(M, window)
        n = M.ring.n
        for c in (1, 2, -1):
            if witness.value_at(c) == 0:
                continue
            for i in range(0, n + 1):
                rep = base_change_check(M, i, c, window, witness)
                assert not rep.mismatches, (label, c, i, rep.per_degree)


def test_base_change_requires_qqt():
    free_q = ModulePresentation.free(Ring(QQ, ("x",)))
    with pytest.raises(KernelError):
        base_change_check(free_q, 0, 1, (-2, 0))


def test_torsion_divides_witness_on_suite():
    for label, M, window in suites.qqt_suite():
        w = find_witness(M, window)
        for src, where, factor in w.provenance:
            assert divides_power_of(factor, w.g), label
