import pytest

from braidhopf.bosonization import (bosonize, braided_integrals_on, integrals_on,
                                    isomorphism_report, restrict_integral, taft_relabeling)
from braidhopf.braidedhopf import BraidedHopf
from braidhopf.gradedengine import truncated_nichols
from braidhopf.hopfcore import check_hopf, left_integrals_in
from braidhopf.report import PreconditionError
from braidhopf.scalars import Field, Matrix, ident, same_span
from braidhopf.zoo import (group_algebra, group_algebra_yd, nichols_over_group, sweedler_h4, taft,
                           trivial_hopf, trivial_yd_hopf)

Q = Field.rational()

BIPRODUCTS = {
    "nichols2/kZ2": lambda: nichols_over_group(2),
    "nichols3/kZ3": lambda: nichols_over_group(3),
    "nichols4/kZ4": lambda: nichols_over_group(4),
    "kZ2/kZ2": lambda: group_algebra_yd(2, 2),
    "kZ3/kZ2": lambda: group_algebra_yd(3, 2),
    "k/kZ3": lambda: trivial_yd_hopf(trivial_hopf(), group_algebra(3)),
    "H4/kZ2": lambda: trivial_yd_hopf(sweedler_h4(), group_algebra(2)),
}


@pytest.mark.parametrize("name", sorted(BIPRODUCTS))
def test_biproduct_is_hopf(name):
    HB = bosonize(BIPRODUCTS[name]())
    assert check_hopf(HB).ok


@pytest.mark.parametrize("name", sorted(BIPRODUCTS))
def test_biproduct_integrals_at_most_a_line(name):
    assert integrals_on(bosonize(BIPRODUCTS[name]())).cols <= 1


def test_trivial_factor_gives_base():
    B = group_algebra(3)
    HB = bosonize(trivial_yd_hopf(trivial_hopf(), B))
    assert isomorphism_report(B, HB, ident(Q, 3)).ok


def test_sweedler_as_biproduct():
    HB = bosonize(nichols_over_group(2))
    L = taft_relabeling(2)
    # x#1 -> x and 1#g -> g; x#g = x g = -g x
    assert L == Matrix.from_rows(Q, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
    rep = isomorphism_report(HB, sweedler_h4(), L)
    assert rep.ok, rep.summary()


def test_taft3_as_biproduct():
    rep = isomorphism_report(bosonize(nichols_over_group(3)), taft(3), taft_relabeling(3))
    assert rep.ok, rep.summary()


def test_identity_is_not_the_sweedler_isomorphism():
    rep = isomorphism_report(bosonize(nichols_over_group(2)), sweedler_h4(), ident(Q, 4))
    assert not rep.ok


def test_diagonal_carrier_rejected():
    with pytest.raises(PreconditionError):
        bosonize(truncated_nichols(2))


def test_wrong_base_rejected():
    with pytest.raises(PreconditionError):
        bosonize(nichols_over_group(2), group_algebra(3))


# --- integral transfer --------------------------------------------------------------

def _sweedler_setup():
    H = nichols_over_group(2)
    HB = bosonize(H)
    lam = integrals_on(HB)
    assert lam.cols == 1
    return H, HB, lam.T


def test_restriction_spans_braided_integrals():
    H, HB, lam = _sweedler_setup()
    found = []
    for b in range(2):
        r = restrict_integral(lam, H, HB, b)
        if not r.is_zero:
            assert r.report.ok
            assert same_span(r.functional.T, braided_integrals_on(H))
            found.append(b)
    assert found


def test_restriction_zero_flag():
    H, HB, lam = _sweedler_setup()
    flags = [restrict_integral(lam, H, HB, b).is_zero for b in range(2)]
    assert flags.count(True) == 1
    zero = restrict_integral(lam, H, HB, flags.index(True))
    assert zero.functional.is_zero() and zero.report.checks[0].status == "skip"


def test_restriction_on_trivial_factor():
    H = trivial_yd_hopf(trivial_hopf(), group_algebra(2))
    HB = bosonize(H)
    lam = integrals_on(HB).T
    results = [restrict_integral(lam, H, HB, b) for b in range(2)]
    nonzero = [r for r in results if not r.is_zero]
    assert nonzero and all(r.functional.cols == 1 for r in nonzero)


def test_restriction_rejects_non_integral():
    H, HB, lam = _sweedler_setup()
    with pytest.raises(ValueError):
        restrict_integral(HB.eps, H, HB, 0)
    with pytest.raises(ValueError):
        restrict_integral(lam, H, HB, 5)


@pytest.mark.parametrize("name", ["nichols3/kZ3", "kZ2/kZ2", "H4/kZ2"])
def test_transfer_agrees_with_direct_computation(name):
    H = BIPRODUCTS[name]()
    HB = bosonize(H)
    lam = integrals_on(HB).T
    direct = braided_integrals_on(H)
    nonzero = [restrict_integral(lam, H, HB, b) for b in range(H.carrier.base.dim)]
    nonzero = [r for r in nonzero if not r.is_zero]
    assert nonzero
    for r in nonzero:
        assert r.report.ok and same_span(r.functional.T, direct)


def test_biproduct_left_integral_in():
    assert left_integrals_in(bosonize(nichols_over_group(3))).cols == 1


def test_braided_integrals_on_ordinary():
    assert braided_integrals_on(BraidedHopf.ordinary(group_algebra(2))) == \
        Matrix.from_rows(Q, [[1], [0]])
