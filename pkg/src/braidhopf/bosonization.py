"""Biproduct ``H # B`` of a braided Hopf algebra in YD modules over ``B``, and
restriction of integrals from the biproduct to ``H``.

The carrier is ``H (x) B`` with the ``B`` index fastest.  Product and coproduct:

    (h # b)(h' # b') = h (b_1 . h') # b_2 b'
    Delta(h # b)     = h_1 # (h_2)_(-1) b_1  (x)  (h_2)_(0) # b_2
"""

from __future__ import annotations

from dataclasses import dataclass

from .braidedcat import YDModule
from .braidedhopf import BraidedHopf, build_quasidual, integrals_on_dual
from .gradedengine import root_field, root_of_unity
from .hopfcore import (FinDimAlgebra, FinDimCoalgebra, FinDimHopf, check_hopf, compute_antipode,
                       left_integrals_in)
from .report import ConstructionError, PreconditionError, VerificationReport
from .scalars import Matrix, flip, ident, inverse, kron, kron_all


def bosonize(H: BraidedHopf, B: FinDimHopf | None = None) -> FinDimHopf:
    X = H.carrier
    if not isinstance(X, YDModule):
        raise PreconditionError("bosonization needs a carrier in YD modules",
                                {"carrier": type(X).__name__})
    B = B or X.base
    if B is not X.base:
        raise PreconditionError("carrier is a YD module over a different base")
    F, dh, db = H.field, H.dim, B.dim
    Ih, Ib = ident(F, dh), ident(F, db)
    alpha, phi = X.action, X.coaction
    mult = (kron(H.m, B.m) @ kron_all(Ih, alpha, Ib, Ib) @ kron_all(Ih, Ib, flip(F, db, dh), Ib)
            @ kron_all(Ih, B.delta, Ih, Ib))
    comult = (kron_all(Ih, B.m, Ih, Ib) @ kron_all(Ih, Ib, flip(F, dh, db), Ib)
              @ kron_all(Ih, phi, Ib, Ib) @ kron(H.delta, B.delta))
    unit = kron(H.eta, B.eta)
    counit = kron(H.eps, B.eps)
    labels = tuple(f"{a}#{b}" for a in H.labels for b in B.labels)
    alg = FinDimAlgebra(F, mult, unit, labels)
    coalg = FinDimCoalgebra(F, comult, counit, labels)
    S = compute_antipode(alg, coalg)
    if S is None:
        raise ConstructionError("biproduct has no antipode")
    out = FinDimHopf(alg, coalg, S, f"{H.name or 'H'}#{B.name or 'B'}")
    rep = check_hopf(out)
    if not rep.ok:
        bad = rep.failures()[0]
        raise ConstructionError(f"biproduct fails {bad.name}", bad.witness)
    return out


def taft_relabeling(n: int) -> Matrix:
    """``x^j # g^i -> zeta^(-ij) g^i x^j`` from ``nichols_over_group(n)`` bosonized to ``taft(n)``.

    Both bases put ``x^j g^i`` at index ``j * n + i``; only the reordering ``x g = zeta^-1 g x``
    contributes a scalar.
    """
    F, z = root_field(n), root_of_unity(n)
    return Matrix.from_entries(F, n * n, n * n, [((j * n + i, j * n + i), z ** (-i * j))
                                                 for j in range(n) for i in range(n)])


def isomorphism_report(A: FinDimHopf, B: FinDimHopf, L: Matrix) -> VerificationReport:
    """Is the linear map ``L: A -> B`` a Hopf algebra isomorphism?"""
    rep = VerificationReport(f"{A.name} -> {B.name}")
    ok_shape = L.shape == (B.dim, A.dim)
    rep.add("square map of matching dimension", ok_shape, {"shape": list(L.shape)})
    if not ok_shape:
        return rep
    rep.add("bijective", inverse(L) is not None)
    d = A.dim
    rep.equal("preserves product", L @ A.m, B.m @ kron(L, L), [d, d], [A.labels] * 2)
    rep.equal("preserves unit", L @ A.eta, B.eta)
    rep.equal("preserves coproduct", B.delta @ L, kron(L, L) @ A.delta, [d], [A.labels])
    rep.equal("preserves counit", B.eps @ L, A.eps, [d], [A.labels])
    rep.equal("preserves antipode", B.S @ L, L @ A.S, [d], [A.labels])
    return rep


@dataclass
class RestrictedIntegral:
    functional: Matrix   # 1 x dim H
    is_zero: bool
    report: VerificationReport


def restrict_integral(lam: Matrix, H: BraidedHopf, HB: FinDimHopf, b: int) -> RestrictedIntegral:
    """``h -> lam(h # b)`` for a left integral ``lam`` on ``H # B`` (a ``1 x dim`` row).

    The result is checked against ``f * g = f(1) g`` for all ``f`` in ``H*`` with the
    convolution ``(f * g)(x) = sum f(x_1) g(x_2)``.
    """
    F = H.field
    dh = H.dim
    db = HB.dim // dh
    if lam.shape != (1, HB.dim):
        raise ValueError(f"integral must be a 1x{HB.dim} row")
    conv_big = HB.delta.T
    col = lam.T
    if conv_big @ kron(ident(F, HB.dim), col) != col @ HB.eta.T:
        raise ValueError("lam is not a left integral on the biproduct")
    if not 0 <= b < db:
        raise ValueError(f"basis index {b} outside the base of dimension {db}")
    g = Matrix.from_entries(F, 1, dh, [((0, h), lam[0, h * db + b]) for h in range(dh)
                                       if lam[0, h * db + b]])
    rep = VerificationReport("restricted integral")
    if g.is_zero():
        rep.skip("integral identity", "restriction vanishes for this basis element")
        return RestrictedIntegral(g, True, rep)
    conv = H.delta.T  # (f * g) in dual coordinates
    gc = g.T
    rep.equal("integral identity", conv @ kron(ident(F, dh), gc), gc @ H.eta.T, [dh],
              [H.labels])
    return RestrictedIntegral(g, False, rep)


def integrals_on(H: FinDimHopf) -> Matrix:
    """Columns in dual coordinates spanning the left integrals on ``H``."""
    return left_integrals_in(H.dual())


def braided_integrals_on(H: BraidedHopf) -> Matrix:
    """Left integrals on ``H`` for the product of the quasi-dual (braiding inserted)."""
    return integrals_on_dual(build_quasidual(H))
