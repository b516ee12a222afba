"""Acceptance criteria, one test each.  Every test prints a single ``criterion N: PASS|FAIL``
line (shown even under output capture) and asserts the same verdict.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import json
import sys
import time

import pytest

from braidhopf.bosonization import (bosonize, braided_integrals_on, integrals_on,
                                    isomorphism_report, restrict_integral, taft_relabeling)
from braidhopf.braidedcat import (check_braid_equation, dual_yd, evaluation, is_morphism, tensor,
                                  unit_object, yd_check, yd_tensor)
from braidhopf.braidedhopf import (BraidedHopf, braided_maschke, build_quasidual,
                                   check_braided_bialgebra, check_hopf_module,
                                   integral_uniqueness_check, structure_theorem_iso)
from braidhopf.cli import run_report, strip_timing
from braidhopf.gradedengine import (as_graded, braided_line, capped_integral_search,
                                    check_capped_axioms, truncated_nichols)
from braidhopf.hopfcore import (check_hopf, left_integrals_in, maschke_projection, maschke_test,
                                module_instances, semisimplicity_oracle)
from braidhopf.scalars import Matrix, same_span
from braidhopf.zoo import (dual_group_algebra, group_algebra, group_algebra_yd, nichols_over_group,
                           sweedler_h4, taft, trivial_hopf, trivial_yd_hopf, yd_zoo, zoo_list)

GROUPS = {f"kZ{n}": (lambda n=n: group_algebra(n)) for n in range(1, 7)}
DUAL_GROUPS = {f"k^Z{n}": (lambda n=n: dual_group_algebra(n)) for n in range(2, 5)}
ORDINARY = {**GROUPS, **DUAL_GROUPS, "k": trivial_hopf, "H4": sweedler_h4, "T3": lambda: taft(3)}
NICHOLS = {f"nichols{n}": (lambda n=n: truncated_nichols(n)) for n in (2, 3, 4)}
YD_HOPF = {
    "nichols2/kZ2": lambda: nichols_over_group(2),
    "nichols3/kZ3": lambda: nichols_over_group(3),
    "nichols4/kZ4": lambda: nichols_over_group(4),
    "kZ2/kZ2": lambda: group_algebra_yd(2, 2),
    "kZ3/kZ2": lambda: group_algebra_yd(3, 2),
    "kZ2/H4": lambda: trivial_yd_hopf(group_algebra(2), sweedler_h4()),
    "H4/kZ2": lambda: trivial_yd_hopf(sweedler_h4(), group_algebra(2)),
}
SEMISIMPLE = ("kZ", "k^Z")


def braided(name):
    if name in ORDINARY:
        return BraidedHopf.ordinary(ORDINARY[name]())
    return {**NICHOLS, **YD_HOPF}[name]()


FINITE = list(ORDINARY) + list(NICHOLS) + list(YD_HOPF)


@pytest.fixture
def verdict(capsys):
    """Record a criterion outcome as one visible line, then assert it."""
    def emit(number, failures, summary):
        ok = not failures
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {summary}"
        if failures:
            line += f" (failing: {', '.join(failures[:5])})"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def test_criterion_01_axioms(verdict):
    bad, n = [], 0
    for name, make in ORDINARY.items():
        n += 1
        if not check_hopf(make()).ok:
            bad.append(name)
    for name in FINITE:
        n += 1
        if not check_braided_bialgebra(braided(name)).ok:
            bad.append(f"{name} braided")
    for M_name, M in yd_zoo().items():
        n += 1
        if not yd_check(M).ok:
            bad.append(M_name)
    for cap in range(1, 21):
        for q in (2, 1, -1):
            n += 1
            if not check_capped_axioms(braided_line(q, cap)).ok:
                bad.append(f"braided_line(q={q}, cap={cap})")
    verdict(1, bad, f"{n} axiom reports exact")


def test_criterion_02_maschke_cross_validation(verdict):
    bad = []
    for name in ORDINARY:
        H = ORDINARY[name]()
        v = maschke_test(H)
        expected = name.startswith(SEMISIMPLE) or name == "k"
        if not (v.semisimple == semisimplicity_oracle(H.algebra) == expected):
            bad.append(name)
    for name in list(NICHOLS) + list(YD_HOPF):
        H = braided(name)
        res = braided_maschke(H)
        expected = name in ("kZ2/kZ2", "kZ3/kZ2", "kZ2/H4")
        if not (res.semisimple == semisimplicity_oracle(H.hopf.algebra) == expected):
            bad.append(name)
    verdict(2, bad, f"{len(FINITE)} members, eps(integral) != 0 iff trace form nondegenerate")


def test_criterion_03_maschke_projection(verdict):
    bad, total = [], 0
    for name in ORDINARY:
        if not (name.startswith(SEMISIMPLE) or name == "k"):
            continue
        H = ORDINARY[name]()
        t = left_integrals_in(H)
        z = t.scale((H.eps @ t)[0, 0].inverse())
        insts = module_instances(H)
        if len(insts) < 3:
            bad.append(f"{name} has {len(insts)} instances")
        for label, action, N in insts:
            total += 1
            if not maschke_projection(H, z, action, N).report.ok:
                bad.append(f"{name}: {label}")
    verdict(3, bad, f"{total} averaged projections verified")


SYMMETRIC = [n for n in GROUPS] + ["H4", "nichols2"]


def test_criterion_04_hopf_module_on_dual(verdict):
    bad = []
    for name in SYMMETRIC:
        rep = check_hopf_module(build_quasidual(braided(name)))
        if not rep.ok or rep["product against right action"].status != "pass":
            bad.append(name)
    verdict(4, bad, f"{len(SYMMETRIC)} symmetric members")


def test_criterion_05_structure_theorem(verdict):
    bad = []
    for name in FINITE:
        H = braided(name)
        iso = structure_theorem_iso(H)
        if not (iso.ok and same_span(iso.coinvariants, iso.integrals)
                and H.dim == iso.integrals.cols * H.dim):
            bad.append(name)
    verdict(5, bad, f"{len(FINITE)} members, Phi bijective and coinvariants = integrals")


def test_criterion_06_yd_duals_and_braid_equation(verdict):
    bad = []
    for name, M in yd_zoo().items():
        D = dual_yd(M)
        if not yd_check(D).ok:
            bad.append(f"{name} dual")
        if not is_morphism(evaluation(M), tensor(D, M), unit_object(M))[0]:
            bad.append(f"{name} evaluation")
        if not (check_braid_equation(M) and check_braid_equation(yd_tensor(M, D))):
            bad.append(f"{name} braid equation")
    hit_checked = 0
    for name, make in YD_HOPF.items():
        H = make()
        B = H.carrier.base
        if not check_braid_equation(H.carrier):
            bad.append(f"{name} braid equation")
        st = build_quasidual(H).report["hit is a morphism"].status
        if B.S @ B.S == Matrix.identity(B.field, B.dim):
            hit_checked += 1
            if st != "pass":
                bad.append(f"{name} hit")
    verdict(6, bad, f"{len(yd_zoo())} YD modules, hit verified on {hit_checked} YD Hopf algebras")


def test_criterion_07_sweedler_integral_transfer(verdict):
    bad = []
    H = nichols_over_group(2)
    HB = bosonize(H)
    if not isomorphism_report(HB, sweedler_h4(), taft_relabeling(2)).ok:
        bad.append("biproduct is not Sweedler")
    lam = integrals_on(HB)
    direct = braided_integrals_on(H)
    hits = [r for r in (restrict_integral(lam.T, H, HB, b) for b in range(2)) if not r.is_zero]
    if not hits:
        bad.append("all restrictions vanish")
    for r in hits:
        if not (r.report.ok and same_span(r.functional.T, direct)):
            bad.append("restriction does not span")
    verdict(7, bad, "nonzero restricted integral spans the braided integrals")


def test_criterion_08_integral_dimensions(verdict):
    bad = []
    cases = [(trivial_hopf(), group_algebra(2)), (group_algebra(2), group_algebra(2)),
             (group_algebra(3), group_algebra(2)), (sweedler_h4(), group_algebra(2)),
             (sweedler_h4(), group_algebra(3)), (taft(3), group_algebra(2, taft(3).field))]
    for H, B in cases:
        rep = integral_uniqueness_check(trivial_yd_hopf(H, B))
        if not (rep.ok and rep.data["dim_integrals_on_H"] in (0, 1)
                and rep.data["dim_integrals_on_biproduct"] <= 1):
            bad.append(f"{H.name}/{B.name}")
    for name, make in YD_HOPF.items():
        if integrals_on(bosonize(make())).cols > 1:
            bad.append(f"{name} biproduct")
    verdict(8, bad, f"{len(cases)} trivial-coaction instances, {len(YD_HOPF)} biproducts")


def test_criterion_09_braided_line_has_no_integral(verdict):
    bad = []
    for q in (2, 1):
        if capped_integral_search(braided_line(q, 20)).cols != 0:
            bad.append(f"q={q}")
    for n in (2, 3, 4):
        G = as_graded(truncated_nichols(n), n)
        ints = capped_integral_search(G)
        top = Matrix.from_entries(G.field, n, 1, [((n - 1, 0), 1)])
        if not (ints == top and (G.eps @ ints)[0, 0] == G.field.zero):
            bad.append(f"nichols{n}")
    verdict(9, bad, "braided line integrals zero; nichols integral x^(n-1) with eps = 0")


def test_criterion_10_determinism(verdict):
    bad = []
    for e in zoo_list():
        target = "zoo:" + e.name
        a = json.dumps(strip_timing(run_report(target).as_dict()), sort_keys=True, indent=2)
        b = json.dumps(strip_timing(run_report(target).as_dict()), sort_keys=True, indent=2)
        if a != b:
            bad.append(e.name)
    verdict(10, bad, f"{len(zoo_list())} zoo reports byte-identical modulo timing")


if __name__ == "__main__":
    t0 = time.perf_counter()
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    print(f"total {time.perf_counter() - t0:.1f}s")
    sys.exit(code)
