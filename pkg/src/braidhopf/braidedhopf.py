"""Braided Hopf algebras in a backend category and the machinery built on their duals.

A :class:`BraidedHopf` couples a category object (the carrier) with structure
tensors.  :func:`build_quasidual` equips ``H*`` with the product, the actions
``hit`` (left, ``H (x) H* -> H*``) and ``rhit`` (right, ``H* (x) H -> H*``) and the
coaction ``rho: H* -> H* (x) H``, each obtained from its defining pairing
identity.  The remaining functions check the Hopf-module structure on ``H*``,
the decomposition ``H* = (H*)^coH (x) H``, integral uniqueness and the
averaging projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .braidedcat import (CatObject, DiagonalObject, YDModule, braiding, dual, is_morphism,
                         is_symmetric, tensor, trivial_object, unit_object)
from .hopfcore import (FinDimAlgebra, FinDimCoalgebra, FinDimHopf, basis_vector,
                       bialgebra_checks, check_algebra, check_antipode, check_coalgebra,
                       compute_antipode, invariants_of_action, left_integrals_in,
                       maschke_projection, module_instances, semisimplicity_oracle)
from .report import ConstructionError, PreconditionError, VerificationReport
from .scalars import (Matrix, canonical_basis, curry, ident, inverse, kernel, kron, kron_all,
                      pairing, rank, same_span, solve)


@dataclass(frozen=True, eq=False)
class BraidedHopf:
    carrier: CatObject
    hopf: FinDimHopf
    name: str = ""

    def __post_init__(self):
        if self.carrier.dim != self.hopf.dim:
            raise ValueError(f"carrier has dim {self.carrier.dim}, structure maps {self.hopf.dim}")

    field = property(lambda self: self.hopf.field)
    dim = property(lambda self: self.hopf.dim)
    labels = property(lambda self: self.hopf.labels)
    m = property(lambda self: self.hopf.m)
    eta = property(lambda self: self.hopf.eta)
    delta = property(lambda self: self.hopf.delta)
    eps = property(lambda self: self.hopf.eps)
    S = property(lambda self: self.hopf.S)

    @cached_property
    def C(self) -> Matrix:
        return braiding(self.carrier, self.carrier)

    @classmethod
    def ordinary(cls, H: FinDimHopf) -> "BraidedHopf":
        """An ordinary Hopf algebra viewed in vector spaces with the flip."""
        return cls(trivial_object(H.field, H.dim, H.labels), H, H.name)

    @classmethod
    def from_maps(cls, carrier: CatObject, m: Matrix, eta: Matrix, delta: Matrix, eps: Matrix,
                  S: Matrix | None = None, labels=(), name: str = "") -> "BraidedHopf":
        F = carrier.field
        labels = tuple(labels) or tuple(carrier.labels)
        alg = FinDimAlgebra(F, m, eta, labels)
        coalg = FinDimCoalgebra(F, delta, eps, labels)
        if S is None:
            S = compute_antipode(alg, coalg)
            if S is None:
                raise ConstructionError(f"{name or 'bialgebra'} has no antipode")
        return cls(carrier, FinDimHopf(alg, coalg, S, name), name)

    @property
    def symmetric(self) -> bool:
        return is_symmetric(self.carrier)

    @property
    def is_finite(self) -> bool:
        return True


def _morphism(rep: VerificationReport, name: str, f: Matrix, U, V):
    ok, w = is_morphism(f, U, V)
    rep.add(name, ok, w)


def check_braided_bialgebra(H: BraidedHopf) -> VerificationReport:
    """Morphism property of every structure map, then the axioms with ``C`` in place of the flip."""
    rep = VerificationReport(H.name or "braided Hopf algebra")
    X = H.carrier
    XX = tensor(X, X)
    one = unit_object(X)
    _morphism(rep, "m is a morphism", H.m, XX, X)
    _morphism(rep, "eta is a morphism", H.eta, one, X)
    _morphism(rep, "Delta is a morphism", H.delta, X, XX)
    _morphism(rep, "eps is a morphism", H.eps, X, one)
    _morphism(rep, "S is a morphism", H.S, X, X)
    rep.extend(check_algebra(H.hopf.algebra))
    rep.extend(check_coalgebra(H.hopf.coalgebra))
    bialgebra_checks(rep, H.hopf.algebra, H.hopf.coalgebra, H.C)
    check_antipode(H.hopf, rep)
    return rep


# --- quasi-dual ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuasiDual:
    """``H* `` with pairing, product, actions and coaction; the strict part is all of ``H*``."""
    H: BraidedHopf
    obj: CatObject          # dual object
    pair: Matrix            # 1 x (d*d): H* (x) H -> k
    mult: Matrix            # d x d^2
    unit: Matrix            # d x 1
    hit: Matrix             # d x d^2: H (x) H* -> H*
    rhit: Matrix            # d x d^2: H* (x) H -> H*
    rho: Matrix             # d^2 x d: H* -> H* (x) H
    strict: Matrix          # basis of the strict part (columns)
    report: VerificationReport = dc_field(default_factory=lambda: VerificationReport("quasi-dual"))

    @property
    def dim(self) -> int:
        return self.H.dim

    @property
    def field(self):
        return self.H.field

    @property
    def counit(self) -> Matrix:
        """Evaluation at 1, the counit of the dual."""
        return self.H.eta.T

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.obj.labels)

    @cached_property
    def braidings(self) -> dict:
        X, D = self.H.carrier, self.obj
        return {"HH": self.H.C, "DH": braiding(D, X), "HD": braiding(X, D), "DD": braiding(D, D)}


def _solve_rho(T: Matrix, mult: Matrix, d: int) -> Matrix | None:
    """Unknown ``rho`` (d^2 x d) with ``T (I (x) rho) = mult`` where ``T: D (x) D (x) H -> D``."""
    F = T.field
    blocks = None
    d2 = d * d
    for f in range(d):
        Tf = T @ kron(basis_vector(F, d, f), ident(F, d2))
        blocks = Tf if blocks is None else blocks.vstack(Tf)
    rhs = Matrix.from_entries(F, d * d, d, [((f * d + k, g), v)
                                           for (k, fg), v in mult.entries()
                                           for f, g in [divmod(fg, d)]])
    return solve(blocks, rhs)


def _quasidual_axioms(rep: VerificationReport, Q: "QuasiDual"):
    H, F, d = Q.H, Q.field, Q.dim
    I = ident(F, d)
    C = Q.braidings
    P = Q.pair
    lab3 = [Q.labels, Q.labels, H.labels]
    rep.equal("pairing turns product into coproduct", P @ kron(Q.mult, I),
              kron(P, P) @ kron_all(I, C["DH"], I) @ kron_all(I, I, H.delta), [d, d, d], lab3)
    rep.equal("pairing of unit is counit", P @ kron(Q.unit, I), H.eps)
    rep.equal("dual product associative", Q.mult @ kron(Q.mult, I), Q.mult @ kron(I, Q.mult),
              [d, d, d], [Q.labels] * 3)
    rep.equal("dual product unital", Q.mult @ kron(Q.unit, I), I)
    rep.equal("hit axiom", P @ kron(Q.hit, I),
              P @ kron(I, H.m) @ kron(I, C["HH"]) @ kron(C["HD"], I),
              [d, d, d], [H.labels, Q.labels, H.labels])
    T = kron(I, P) @ kron(C["DD"], I)
    rep.equal("rho axiom", T @ kron(I, Q.rho), Q.mult, [d, d], [Q.labels] * 2)
    # faithfulness is checked through nondegeneracy of the pairing
    G = curry(P, d, d)
    rep.add("pairing nondegenerate", rank(G) == d, detail="stands in for faithfulness")


def build_quasidual(H: BraidedHopf) -> QuasiDual:
    """Construct ``H*`` with every structure from its pairing identity and verify the axioms.

    Raises :class:`ConstructionError` if ``rho`` has no solution or an axiom fails.
    """
    F, d = H.field, H.dim
    I = ident(F, d)
    X = H.carrier
    D = dual(X)
    P = pairing(F, d)
    C_DH, C_HD, C_DD = braiding(D, X), braiding(X, D), braiding(D, D)
    mult = curry(kron(P, P) @ kron_all(I, C_DH, I) @ kron_all(I, I, H.delta), d * d, d)
    unit = H.eps.T
    hit = curry(P @ kron(I, H.m) @ kron(I, H.C) @ kron(C_HD, I), d * d, d)
    T = kron(I, P) @ kron(C_DD, I)
    rho = _solve_rho(T, mult, d)
    if rho is None:
        raise ConstructionError("no coaction satisfies the rho axiom")
    # (C_{H,H*})^-1 coincides with C_{H*,H} for symmetric braidings and keeps rhit a
    # right action when the braiding is not symmetric
    C_HD_inv = inverse(C_HD)
    rhit = hit @ kron(H.S, I) @ C_HD_inv
    rep = VerificationReport(f"quasi-dual of {H.name or 'H'}")
    Q = QuasiDual(H, D, P, mult, unit, hit, rhit, rho, ident(F, d), rep)
    _quasidual_axioms(rep, Q)
    _morphism(rep, "pairing is a morphism", P, tensor(D, X), unit_object(X))
    _morphism(rep, "dual product is a morphism", mult, tensor(D, D), D)
    if isinstance(X, YDModule):
        B = X.base
        if B.S @ B.S == ident(F, B.dim):
            _morphism(rep, "hit is a morphism", hit, tensor(X, D), D)
        else:
            rep.skip("hit is a morphism", "antipode of the base is not involutive")
    else:
        _morphism(rep, "hit is a morphism", hit, tensor(X, D), D)
    if not rep.ok:
        bad = rep.failures()[0]
        raise ConstructionError(f"quasi-dual axiom failed: {bad.name}", bad.witness)
    return Q


# --- Hopf module on the dual -----------------------------------------------------

def check_hopf_module(Q: QuasiDual) -> VerificationReport:
    """Right module under ``rhit``, right comodule under ``rho``, their compatibility,
    and the identity ``mult (D (x) rhit) = rhit (mult (x) H)(hit (x) D (x) H)(C (x) D (x) H)
    (D (x) C (x) H)(D (x) D (x) C)(D (x) D (x) Delta)``."""
    H, F, d = Q.H, Q.field, Q.dim
    I = ident(F, d)
    C = Q.braidings
    rep = VerificationReport("Hopf module on the dual")
    lab = [Q.labels, H.labels, H.labels]
    rep.equal("right module associative", Q.rhit @ kron(Q.rhit, I), Q.rhit @ kron(I, H.m),
              [d, d, d], lab)
    rep.equal("right module unital", Q.rhit @ kron(I, H.eta), I, [d], [Q.labels])
    rep.equal("right comodule coassociative", kron(Q.rho, I) @ Q.rho, kron(I, H.delta) @ Q.rho,
              [d], [Q.labels])
    rep.equal("right comodule counital", kron(I, H.eps) @ Q.rho, I, [d], [Q.labels])
    rep.equal("Hopf module compatibility", Q.rho @ Q.rhit,
              kron(Q.rhit, H.m) @ kron_all(I, C["HH"], I) @ kron(Q.rho, H.delta),
              [d, d], [Q.labels, H.labels])
    if not H.symmetric:
        rep.skip("product against right action", "braiding on H is not symmetric")
        return rep
    rep.equal("right action uses C_{H*,H}", Q.rhit, Q.hit @ kron(H.S, I) @ C["DH"], [d, d],
              [Q.labels, H.labels])
    lhs = Q.mult @ kron(I, Q.rhit)
    rhs = (Q.rhit @ kron(Q.mult, I) @ kron_all(Q.hit, I, I) @ kron_all(C["DH"], I, I)
           @ kron_all(I, C["DH"], I) @ kron_all(I, I, C["HH"]) @ kron_all(I, I, H.delta))
    rep.equal("product against right action", lhs, rhs, [d, d, d],
              [Q.labels, Q.labels, H.labels])
    return rep


# --- invariants, coinvariants, rational parts -------------------------------------

def invariants(action: Matrix, counit: Matrix, dim_m: int) -> Matrix:
    """Basis of ``{v : h.v = eps(h) v}``."""
    return invariants_of_action(action, counit, dim_m)


def coinvariants(coaction: Matrix, unit: Matrix, dim_m: int) -> Matrix:
    """Basis of ``{v : rho(v) = v (x) 1}`` for a right coaction ``M -> M (x) H``."""
    F = coaction.field
    return kernel(coaction - kron(ident(F, dim_m), unit))


def integrals_on_dual(Q: QuasiDual) -> Matrix:
    """Left integrals of the dual algebra (product with the braiding inserted)."""
    return invariants_of_action(Q.mult, Q.counit, Q.dim)


def largest_closed_subspace(W: Matrix, operators: list[Matrix]) -> Matrix:
    """Largest subspace of ``span W`` mapped into itself by each square operator."""
    F, n = W.field, W.rows
    current = canonical_basis(F, n, [W.col(j) for j in range(W.cols)])
    while True:
        if current.cols == 0:
            return current
        ann = kernel(current.T).T  # rows vanishing on current
        if ann.rows == 0:
            return current
        stack = None
        for A in operators:
            block = ann @ A @ current
            stack = block if stack is None else stack.vstack(block)
        if stack is None:
            return current
        keep = kernel(stack)
        if keep.cols == current.cols:
            return current
        nxt = current @ keep
        current = canonical_basis(F, n, [nxt.col(j) for j in range(nxt.cols)])


@dataclass
class RationalPart:
    basis: Matrix        # columns in M
    coaction: Matrix     # (dim W * dim H) x dim W in W-coordinates
    report: VerificationReport


def rational_part(action: Matrix, braid_DM: Matrix, pair: Matrix, dim_d: int, dim_h: int,
                  extra_ops: list[Matrix] = ()) -> RationalPart:
    """Largest subspace admitting a coaction ``rho`` with
    ``action = (M (x) pair)(C_{D,M} (x) H)(D (x) rho)`` on it.

    ``action`` is ``D (x) M -> M``; ``extra_ops`` are further operators the subspace must be
    stable under (for instance the structure maps of the ambient category object).
    """
    F = action.field
    dm = action.rows
    Im = ident(F, dm)
    T = kron(Im, pair) @ kron(braid_DM, ident(F, dim_h))  # D (x) M (x) H -> M
    U_blocks, T_blocks, ops = None, None, []
    for f in range(dim_d):
        e = basis_vector(F, dim_d, f)
        Af = action @ kron(e, Im)
        ops.append(Af)
        Tf = T @ kron(e, ident(F, dm * dim_h))
        U_blocks = Af if U_blocks is None else U_blocks.vstack(Af)
        T_blocks = Tf if T_blocks is None else T_blocks.vstack(Tf)
    rep = VerificationReport("rational part")
    if U_blocks is None:
        return RationalPart(Im, Matrix(F, dm * dim_h, dm), rep)
    K = kernel(U_blocks.hstack(-T_blocks))
    solvable = K.select_rows(list(range(dm)))
    W = largest_closed_subspace(solvable, ops + list(extra_ops))
    r = W.cols
    if r == 0:
        rep.add("MCOM on rational part", True, detail="rational part is zero")
        return RationalPart(W, Matrix(F, 0, 0), rep)
    rhs = U_blocks @ W
    sol = solve(T_blocks, rhs)  # columns rho(w_j) in M (x) H
    if sol is None:
        raise ConstructionError("rational vectors lost their coaction")
    # rewrite M (x) H coordinates in W (x) H coordinates
    coords = solve(kron(W, ident(F, dim_h)), sol)
    rep.add("coaction lands in W (x) H", coords is not None)
    if coords is None:
        return RationalPart(W, Matrix(F, 0, 0), rep)
    rep.equal("MCOM on rational part", T_blocks @ kron(W, ident(F, dim_h)) @ coords, rhs)
    return RationalPart(W, coords, rep)


def rational_submodule(Q: QuasiDual, action: Matrix | None = None,
                       obj: CatObject | None = None) -> RationalPart:
    """Maximal rational submodule of an ``H*``-module in the category (default: ``H*`` itself)."""
    if action is None:
        action, obj = Q.mult, Q.obj
    if obj is None:
        raise ValueError("the module must be given as a category object")
    extra = []
    if isinstance(obj, YDModule):
        F, db, dm = obj.field, obj.base.dim, obj.dim
        for b in range(db):
            extra.append(obj.action @ kron(basis_vector(F, db, b), ident(F, dm)))
        for b in range(db):
            extra.append(kron(basis_vector(F, db, b).T, ident(F, dm)) @ obj.coaction)
    elif isinstance(obj, DiagonalObject):
        # homogeneous subspaces: stable under the degree projections
        F = obj.field
        for a in sorted(set(obj.degrees)):
            extra.append(Matrix.from_entries(F, obj.dim, obj.dim,
                                             [((i, i), 1) for i, b in enumerate(obj.degrees) if b == a]))
    return rational_part(action, braiding(Q.obj, obj), Q.pair, Q.dim, Q.dim, extra)


# --- structure theorem -----------------------------------------------------------

@dataclass
class IsoReport:
    coinvariants: Matrix
    integrals: Matrix
    phi: Matrix
    report: VerificationReport

    @property
    def ok(self) -> bool:
        return self.report.ok


def structure_theorem_iso(H: BraidedHopf, Q: QuasiDual | None = None) -> IsoReport:
    """``Phi: (H*)^coH (x) H -> H*, f (x) h -> f rhit h`` and its verification."""
    Q = Q or build_quasidual(H)
    F, d = H.field, H.dim
    I = ident(F, d)
    rep = VerificationReport(f"structure theorem for {H.name or 'H'}")
    K = coinvariants(Q.rho, H.eta, d)
    ints = integrals_on_dual(Q)
    r = K.cols
    rep.add("coinvariants equal integrals on H", same_span(K, ints),
            {"coinvariants": r, "integrals": ints.cols})
    rep.add("dimension identity", d == r * d, {"dim": d, "coinvariants": r})
    phi = Q.rhit @ kron(K, I)
    inv = inverse(phi) if phi.rows == phi.cols else None
    rep.add("Phi bijective", inv is not None, {"rank": rank(phi), "dim": d})
    Ir = ident(F, r)
    rep.equal("Phi is H-linear", Q.rhit @ kron(phi, I), phi @ kron(Ir, H.m), [r, d, d])
    rep.equal("Phi is H-colinear", Q.rho @ phi, kron(phi, I) @ kron(Ir, H.delta), [r, d])
    # integrals computed inside the rational part agree with those on H
    rat = rational_submodule(Q)
    W = rat.basis
    rep.extend(rat.report, "rational: ")
    if W.cols == d:
        rep.add("integrals inside rational part", same_span(ints, _integrals_in_subalgebra(Q, W)))
    else:
        rep.add("integrals inside rational part", False, {"rational_dim": W.cols})
    return IsoReport(K, ints, phi, rep)


def _integrals_in_subalgebra(Q: QuasiDual, W: Matrix) -> Matrix:
    """``{f in W : g f = g(1) f for g in W}``."""
    F = Q.field
    blocks = None
    for j in range(W.cols):
        g = W.select_columns([j])
        Lg = Q.mult @ kron(g, W) - W.scale((Q.counit @ g)[0, 0])
        blocks = Lg if blocks is None else blocks.vstack(Lg)
    if blocks is None:
        return Matrix(F, W.rows, 0)
    return W @ kernel(blocks)


# --- integral uniqueness -----------------------------------------------------------

def integral_uniqueness_check(H: BraidedHopf) -> VerificationReport:
    """For ``H`` in YD modules over ``B`` with trivial coaction: ``dim int_{H*} <= 1``,
    cross-checked through the biproduct."""
    from .bosonization import bosonize

    X = H.carrier
    if not isinstance(X, YDModule):
        raise PreconditionError("integral uniqueness needs a YD carrier over a base B",
                                {"carrier": type(X).__name__})
    if not X.coaction_is_trivial():
        w = next((X.labels[j] for j in range(X.dim)
                  if X.coaction.select_columns([j]) != kron(X.base.eta, basis_vector(X.field, X.dim, j))),
                 None)
        raise PreconditionError("coaction of H is not trivial", {"element": w})
    B = X.base
    rep = VerificationReport(f"integral uniqueness for {H.name or 'H'}")
    ints = left_integrals_in(H.hopf.dual())
    n = ints.cols
    rep.add("dim of integrals on H is 0 or 1", n in (0, 1), {"dim": n})
    rep.data["dim_integrals_on_H"] = n
    HB = bosonize(H)
    big = left_integrals_in(HB.dual())
    rep.add("dim of integrals on the biproduct <= 1", big.cols <= 1, {"dim": big.cols})
    rep.data["dim_integrals_on_biproduct"] = big.cols
    ib = left_integrals_in(B.dual())
    # u (x) v is an integral on H#B for u on H, v on B
    ok = True
    for i in range(n):
        for j in range(ib.cols):
            t = kron(ints.select_columns([i]), ib.select_columns([j]))
            if HB.dual().m @ kron(ident(H.field, HB.dim), t) != t @ HB.dual().eps:
                ok = False
    rep.add("products of integrals are integrals on the biproduct", ok)
    return rep


# --- Maschke -----------------------------------------------------------------------

@dataclass
class MaschkeReport:
    semisimple: bool
    integrals: Matrix
    counit_value: object
    report: VerificationReport


def braided_maschke(H: BraidedHopf, instances=None) -> MaschkeReport:
    """Verdict ``eps(int_H) != 0`` against the trace form, and averaging projections when it holds.

    ``instances`` is a list of ``(name, action, submodule)``; by default those of
    :func:`hopfcore.module_instances`.
    """
    F = H.field
    ints = left_integrals_in(H.hopf)
    rep = VerificationReport(f"Maschke for {H.name or 'H'}")
    vals = [(H.eps @ ints.select_columns([j]))[0, 0] for j in range(ints.cols)]
    nz = next((j for j, v in enumerate(vals) if v), None)
    verdict = nz is not None
    oracle = semisimplicity_oracle(H.hopf.algebra)
    rep.add("verdict agrees with trace form", verdict == oracle,
            {"integral_verdict": verdict, "trace_form": oracle})
    rep.data["semisimple"] = verdict
    rep.data["integral_dim"] = ints.cols
    if not verdict:
        rep.skip("averaging projections", "counit vanishes on integrals")
        return MaschkeReport(False, ints, vals[0] if vals else F.zero, rep)
    z = ints.select_columns([nz]).scale(vals[nz].inverse())
    rep.add("normalized integral has counit 1", (H.eps @ z)[0, 0] == F.one)
    for name, action, N in (instances if instances is not None else module_instances(H.hopf)):
        res = maschke_projection(H.hopf, z, action, N)
        rep.extend(res.report, f"{name}: ")
    # semisimple => counit nonzero on integrals, over the augmentation ideal complement
    return MaschkeReport(True, ints, vals[nz], rep)
