import pytest

from braidhopf.braidedcat import DiagonalObject, YDModule
from braidhopf.braidedhopf import (BraidedHopf, braided_maschke, build_quasidual,
                                   check_braided_bialgebra, check_hopf_module, coinvariants,
                                   integral_uniqueness_check, integrals_on_dual, invariants,
                                   rational_submodule, structure_theorem_iso)
from braidhopf.gradedengine import truncated_nichols
from braidhopf.hopfcore import left_integrals_in, left_integrals_on
from braidhopf.report import ConstructionError, PreconditionError
from braidhopf.scalars import Field, Matrix, ident, kron, same_span
from braidhopf.zoo import (dual_group_algebra, group_algebra, group_algebra_yd, nichols_over_group,
                           sweedler_h4, taft, trivial_hopf, trivial_yd_hopf)

Q = Field.rational()


def ordinary(H):
    return BraidedHopf.ordinary(H)


FINITE = {
    "k": lambda: ordinary(trivial_hopf()),
    "kZ2": lambda: ordinary(group_algebra(2)),
    "kZ3": lambda: ordinary(group_algebra(3)),
    "k^Z3": lambda: ordinary(dual_group_algebra(3)),
    "H4": lambda: ordinary(sweedler_h4()),
    "taft3": lambda: ordinary(taft(3)),
    "nichols2": lambda: truncated_nichols(2),
    "nichols3": lambda: truncated_nichols(3),
    "nichols4": lambda: truncated_nichols(4),
    "nichols2/kZ2": lambda: nichols_over_group(2),
    "nichols3/kZ3": lambda: nichols_over_group(3),
    "kZ2/kZ2": lambda: group_algebra_yd(2, 2),
}
SYMMETRIC = ["k", "kZ2", "kZ3", "k^Z3", "H4", "taft3", "nichols2", "nichols2/kZ2", "kZ2/kZ2"]


# --- braided bialgebra axioms ---------------------------------------------------------

@pytest.mark.parametrize("name", sorted(FINITE))
def test_braided_bialgebra_axioms(name):
    rep = check_braided_bialgebra(FINITE[name]())
    assert rep.ok, rep.summary()


def test_dual_numbers_need_q_minus_one():
    N = truncated_nichols(2)
    unbraided = BraidedHopf(DiagonalObject(Q, (0, 1), Q(1), None, N.labels), N.hopf, "q=1")
    rep = check_braided_bialgebra(unbraided)
    bad = rep["comultiplication is multiplicative"]
    # Delta(x x) = 0 while Delta(x) Delta(x) = (1 + q) x (x) x = 2 x (x) x
    assert bad.status == "fail"
    assert bad.witness["input"] == ["x", "x"] and bad.witness["lhs"] == "0"
    assert bad.witness["rhs"] == "2"


# --- quasi-dual ------------------------------------------------------------------------

def _degree(obj, i):
    return obj.degrees[i] if isinstance(obj, DiagonalObject) else 0


def dual_product_oracle(H):
    """``<xi_a xi_b, e_k> = sum Delta[i (x) j, k] q^(|xi_b| |e_i|) delta_ai delta_bj`` for a
    diagonal carrier, with ``|xi_b| = -|e_b|``."""
    X, F, d = H.carrier, H.field, H.dim
    entries = []
    for a in range(d):
        for b in range(d):
            for k in range(d):
                c = H.delta[a * d + b, k]
                if c:
                    entries.append(((k, a * d + b), c * X.q ** (-_degree(X, b) * _degree(X, a))))
    return Matrix.from_entries(F, d, d * d, entries)


@pytest.mark.parametrize("name", ["kZ2", "H4", "nichols2", "nichols3", "nichols4"])
def test_dual_product_against_expansion(name):
    H = FINITE[name]()
    assert build_quasidual(H).mult == dual_product_oracle(H)


def test_hit_is_transpose_of_right_multiplication():
    H = group_algebra(2)
    Qd = build_quasidual(ordinary(H))
    d = 2
    for h in range(d):
        for f in range(d):
            for x in range(d):
                # <h hit f, x> = <f, x h>
                expected = H.m[f, x * d + h]
                assert Qd.hit[x, h * d + f] == expected


def test_trivial_quasidual_is_identity():
    Qd = build_quasidual(FINITE["k"]())
    one = ident(Q, 1)
    assert Qd.mult == one and Qd.hit == one and Qd.rhit == one and Qd.rho == one


@pytest.mark.parametrize("name", sorted(FINITE))
def test_quasidual_axioms(name):
    Qd = build_quasidual(FINITE[name]())
    assert Qd.report.ok, Qd.report.summary()
    assert Qd.report["pairing nondegenerate"].detail == "stands in for faithfulness"


def test_hit_morphism_skipped_without_involutive_antipode():
    B = sweedler_h4()
    H = trivial_yd_hopf(group_algebra(2), B)
    Qd = build_quasidual(H)
    assert Qd.report["hit is a morphism"].status == "skip"


@pytest.mark.parametrize("name", SYMMETRIC)
def test_dual_braidings_mutually_inverse(name):
    """When ``C_{H,H}^2 = id``, ``C_{U,V} C_{V,U} = id`` for ``U, V`` in ``{H, H*}``."""
    H = FINITE[name]()
    Qd = build_quasidual(H)
    C = Qd.braidings
    d = H.dim
    I2 = ident(H.field, d * d)
    assert C["HH"] @ C["HH"] == I2
    assert C["DH"] @ C["HD"] == I2 and C["HD"] @ C["DH"] == I2
    assert C["DD"] @ C["DD"] == I2


# --- Hopf module on the dual ------------------------------------------------------------

@pytest.mark.parametrize("name", SYMMETRIC)
def test_hopf_module_symmetric(name):
    rep = check_hopf_module(build_quasidual(FINITE[name]()))
    assert rep.ok, rep.summary()
    assert rep["product against right action"].status == "pass"


@pytest.mark.parametrize("name", ["nichols3", "nichols4", "nichols3/kZ3"])
def test_hopf_module_nonsymmetric(name):
    rep = check_hopf_module(build_quasidual(FINITE[name]()))
    assert rep.ok
    assert rep["Hopf module compatibility"].status == "pass"
    assert rep["product against right action"].status == "skip"


@pytest.mark.parametrize("H", [group_algebra(2), sweedler_h4()], ids=lambda H: H.name)
def test_right_action_is_classical(H):
    """``(f rhit h)(x) = f(x S(h))`` for an ordinary Hopf algebra."""
    Qd = build_quasidual(ordinary(H))
    d = H.dim
    xS = H.m @ kron(ident(Q, d), H.S)
    for f in range(d):
        for h in range(d):
            for x in range(d):
                assert Qd.rhit[x, f * d + h] == xS[f, x * d + h]


# --- invariants and coinvariants -----------------------------------------------------

def test_invariants_of_regular_module_are_integrals():
    for H in (group_algebra(3), sweedler_h4(), taft(3)):
        assert same_span(invariants(H.m, H.eps, H.dim), left_integrals_in(H))
    assert invariants(taft(3).m, taft(3).eps, 9).cols == 1


def test_invariants_of_trivial_module():
    H = group_algebra(2)
    trivial_action = H.eps
    assert invariants(trivial_action, H.eps, 1) == ident(Q, 1)


def test_coinvariants_of_kz2():
    H = group_algebra(2)
    assert coinvariants(H.delta, H.eta, 2) == Matrix.from_rows(Q, [[1], [0]])


def test_trivial_comodule_all_coinvariant():
    H = group_algebra(3)
    assert coinvariants(kron(ident(Q, 2), H.eta), H.eta, 2) == ident(Q, 2)


def test_h4_dual_coinvariants_are_integrals():
    H = sweedler_h4()
    Qd = build_quasidual(ordinary(H))
    K = coinvariants(Qd.rho, H.eta, 4)
    assert K.cols == 1 and same_span(K, left_integrals_on(H))


# --- rational part --------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["kZ2", "H4", "nichols2/kZ2", "nichols3"])
def test_finite_dual_is_rational(name):
    H = FINITE[name]()
    rat = rational_submodule(build_quasidual(H))
    assert rat.basis.cols == H.dim and rat.report.ok


def test_zero_module_rational_part():
    H = ordinary(group_algebra(2))
    Qd = build_quasidual(H)
    zero = Matrix(Q, 0, 0)
    obj = DiagonalObject(Q, (), Q.one)
    rat = rational_submodule(Qd, zero, obj)
    assert rat.basis.cols == 0


# --- structure theorem -------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(FINITE))
def test_structure_theorem(name):
    H = FINITE[name]()
    iso = structure_theorem_iso(H)
    assert iso.ok, iso.report.summary()
    assert iso.coinvariants.cols * H.dim == H.dim
    assert same_span(iso.coinvariants, iso.integrals)


def test_phi_matrix_kz2():
    iso = structure_theorem_iso(ordinary(group_algebra(2)))
    # coinvariants span{delta_1}; delta_1 rhit h = delta_h
    assert iso.phi == ident(Q, 2)


def test_phi_identity_for_k():
    assert structure_theorem_iso(FINITE["k"]()).phi == ident(Q, 1)


def test_h4_dimension_identity():
    iso = structure_theorem_iso(ordinary(sweedler_h4()))
    assert iso.coinvariants.cols == 1 and iso.phi.shape == (4, 4)


def test_integrals_inside_rational_part_ordinary():
    for H in (group_algebra(3), sweedler_h4(), taft(3)):
        iso = structure_theorem_iso(ordinary(H))
        assert iso.report["integrals inside rational part"].status == "pass"


# --- integral uniqueness -----------------------------------------------------------------------

@pytest.mark.parametrize("H,B", [(group_algebra(2), group_algebra(2)),
                                 (trivial_hopf(), group_algebra(2)),
                                 (sweedler_h4(), group_algebra(3))], ids=["kZ2", "k", "H4/kZ3"])
def test_integral_uniqueness(H, B):
    rep = integral_uniqueness_check(trivial_yd_hopf(H, B))
    assert rep.ok
    assert rep.data["dim_integrals_on_H"] == 1
    assert rep.data["dim_integrals_on_biproduct"] <= 1


def test_integral_uniqueness_rejects_nontrivial_coaction():
    with pytest.raises(PreconditionError) as exc:
        integral_uniqueness_check(nichols_over_group(2))
    assert exc.value.witness == {"element": "x"}


def test_integral_uniqueness_needs_yd():
    with pytest.raises(PreconditionError):
        integral_uniqueness_check(truncated_nichols(2))


# --- Maschke ----------------------------------------------------------------------------------

def test_maschke_kz3_with_projections():
    res = braided_maschke(FINITE["kZ3"]())
    assert res.semisimple and res.report.ok
    assert len([c for c in res.report.names() if c.endswith("mu is H-linear")]) >= 3


def test_maschke_dual_numbers():
    res = braided_maschke(truncated_nichols(2))
    assert not res.semisimple and res.report.ok
    assert res.integrals == Matrix.from_rows(Q, [[0], [1]])
    assert res.counit_value == Q.zero


def test_maschke_trivial():
    res = braided_maschke(FINITE["k"]())
    assert res.semisimple and res.counit_value == Q.one


@pytest.mark.parametrize("name", ["nichols3", "nichols4", "nichols3/kZ3"])
def test_maschke_without_symmetry(name):
    res = braided_maschke(FINITE[name]())
    assert res.report.ok and not res.semisimple


def test_integrals_on_dual_are_a_line():
    for name in FINITE:
        assert integrals_on_dual(build_quasidual(FINITE[name]())).cols == 1


def test_from_maps_without_antipode_raises():
    H = group_algebra(2)
    X = DiagonalObject(Q, (0, 0), Q.one)
    degenerate = Matrix(Q, 2, 4)
    with pytest.raises(ConstructionError):
        BraidedHopf.from_maps(X, degenerate, H.eta, H.delta, H.eps)


def test_yd_carrier_dimension_mismatch():
    B = group_algebra(2)
    M = YDModule(B, B.m, kron(B.eta, ident(Q, 2)))
    with pytest.raises(ValueError):
        BraidedHopf(M, trivial_hopf())
