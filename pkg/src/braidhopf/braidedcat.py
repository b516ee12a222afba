"""Braided category backends.

Two concrete backends are supported:

* :class:`YDModule` -- left-left Yetter-Drinfeld modules over a finite-dimensional
  Hopf algebra ``B``, braided by ``C(m (x) n) = m_(-1).n (x) m_(0)``;
* :class:`DiagonalObject` -- graded vector spaces (grading group Z or Z_n)
  braided by ``C(x (x) y) = q^(|x||y|) y (x) x``.

Ordinary vector spaces are diagonal objects concentrated in degree 0.  All
objects are immutable; the generic functions :func:`tensor`, :func:`dual`,
:func:`unit_object`, :func:`braiding` and :func:`is_morphism` dispatch on type.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Sequence, Union

from .hopfcore import FinDimHopf, basis_vector, check_hopf
from .report import PreconditionError, TheoremViolation, VerificationReport, matrix_witness
from .scalars import (Field, Matrix, Scalar, curry, flip, ident, inverse, kernel, kron, kron_all,
                      pairing, permute_factors, solve)


class UnsupportedBase(ValueError):
    pass


# --- diagonal backend --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DiagonalObject:
    field: Field
    degrees: tuple[int, ...]
    q: Scalar
    modulus: int | None = None
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.modulus is not None:
            object.__setattr__(self, "degrees", tuple(a % self.modulus for a in self.degrees))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"v{i}" for i in range(len(self.degrees))))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def same_category(self, other) -> bool:
        return (isinstance(other, DiagonalObject) and other.field == self.field
                and other.q == self.q and other.modulus == self.modulus)


def trivial_object(field: Field, dim: int, labels=()) -> DiagonalObject:
    """An ordinary vector space: braiding is the flip and every linear map is a morphism."""
    return DiagonalObject(field, (0,) * dim, field.one, None, tuple(labels))


def _diag_braiding(U: DiagonalObject, V: DiagonalObject) -> Matrix:
    F = U.field
    du, dv = U.dim, V.dim
    data = {}
    cache: dict[int, Scalar] = {}
    for u, a in enumerate(U.degrees):
        for v, b in enumerate(V.degrees):
            e = a * b
            if e not in cache:
                cache[e] = U.q ** e
            data[u * dv + v] = {v * du + u: cache[e]}
    return Matrix(F, du * dv, du * dv, data)


# --- Yetter-Drinfeld backend -------------------------------------------------

@dataclass(frozen=True, eq=False)
class YDModule:
    base: FinDimHopf
    action: Matrix     # dim x (dim B * dim)
    coaction: Matrix   # (dim B * dim) x dim
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        d, b = self.action.rows, self.base.dim
        if self.action.cols != b * d or self.coaction.shape != (b * d, d):
            raise ValueError(f"YD module shapes {self.action.shape}, {self.coaction.shape} "
                             f"incompatible with base dim {b}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"m{i}" for i in range(d)))

    @property
    def dim(self) -> int:
        return self.action.rows

    @property
    def field(self) -> Field:
        return self.base.field

    @classmethod
    def from_tensors(cls, base: FinDimHopf, dim: int, action: dict, coaction: dict,
                     labels=()) -> "YDModule":
        """``action[(b, m)] = {m': coeff}``; ``coaction[m] = {(b, m'): coeff}``."""
        F, db = base.field, base.dim
        a_entries = [((k, b * dim + m), v) for (b, m), out in action.items() for k, v in out.items()]
        c_entries = [((b * dim + k, m), v) for m, out in coaction.items() for (b, k), v in out.items()]
        return cls(base, Matrix.from_entries(F, dim, db * dim, a_entries),
                   Matrix.from_entries(F, db * dim, dim, c_entries), tuple(labels))

    def same_category(self, other) -> bool:
        return isinstance(other, YDModule) and other.base is self.base

    def coaction_is_trivial(self) -> bool:
        return self.coaction == kron(self.base.eta, ident(self.field, self.dim))


_verified_bases: "weakref.WeakSet[FinDimHopf]" = weakref.WeakSet()


def _require_hopf_base(B: FinDimHopf):
    if B in _verified_bases:
        return
    rep = check_hopf(B)
    if not rep.ok:
        raise PreconditionError(f"base {B.name or 'B'} is not a verified Hopf algebra",
                                rep.failures()[0].name)
    _verified_bases.add(B)


def yd_check(M: YDModule) -> VerificationReport:
    B = M.base
    _require_hopf_base(B)
    F, db, d = M.field, B.dim, M.dim
    Ib, Im = ident(F, db), ident(F, d)
    a, phi = M.action, M.coaction
    rep = VerificationReport("Yetter-Drinfeld module")
    blab = [B.labels, M.labels]
    rep.equal("action associative", a @ kron(B.m, Im), a @ kron(Ib, a), [db, db, d],
              [B.labels, B.labels, M.labels])
    rep.equal("action unital", a @ kron(B.eta, Im), Im, [d], [M.labels])
    rep.equal("coaction coassociative", kron(B.delta, Im) @ phi, kron(Ib, phi) @ phi, [d], [M.labels])
    rep.equal("coaction counital", kron(B.eps, Im) @ phi, Im, [d], [M.labels])
    # b (x) m  ->  b1 m_(-1) S(b3) (x) b2 . m_(0)
    d3 = kron(B.delta, Ib) @ B.delta
    spread = kron_all(Ib, Ib, Ib, phi) @ kron(d3, Im)
    reorder = permute_factors(F, [db, db, db, db, d], [0, 3, 2, 1, 4])
    mms = B.m @ kron(B.m, B.S)
    rhs = kron(mms, a) @ reorder @ spread
    rep.equal("YD compatibility", phi @ a, rhs, [db, d], blab)
    return rep


def yd_unit(B: FinDimHopf) -> YDModule:
    return YDModule(B, B.eps, B.eta, ("1",))


def yd_tensor(M: YDModule, N: YDModule) -> YDModule:
    if not M.same_category(N):
        raise PreconditionError("YD modules over different bases")
    B = M.base
    F, db, dm, dn = M.field, B.dim, M.dim, N.dim
    act = kron(M.action, N.action) @ kron_all(ident(F, db), flip(F, db, dm), ident(F, dn)) \
        @ kron_all(B.delta, ident(F, dm), ident(F, dn))
    coact = kron_all(B.m, ident(F, dm), ident(F, dn)) \
        @ kron_all(ident(F, db), flip(F, dm, db), ident(F, dn)) @ kron(M.coaction, N.coaction)
    labels = tuple(f"{x}*{y}" for x in M.labels for y in N.labels)
    return YDModule(B, act, coact, labels)


def _yd_braiding(M: YDModule, N: YDModule) -> Matrix:
    if not M.same_category(N):
        raise PreconditionError("YD modules over different bases")
    F, db = M.field, M.base.dim
    return kron(N.action, ident(F, M.dim)) @ kron(ident(F, db), flip(F, M.dim, N.dim)) \
        @ kron(M.coaction, ident(F, N.dim))


def dual_yd(M: YDModule) -> YDModule:
    """``M*`` with ``(b.x*)(x) = x*(S(b).x)`` and coaction fixed by the pairing identity

    ``sum x*_(-1) <x*_(0), x> = sum S^-1(x_(-1)) <x*, x_(0)>``.
    """
    B = M.base
    _require_hopf_base(B)
    F, db, d = M.field, B.dim, M.dim
    S_inv = inverse(B.S)
    if S_inv is None:
        raise UnsupportedBase("antipode of the base is not invertible")
    Ib, Im = ident(F, db), ident(F, d)
    ev = pairing(F, d)
    # b (x) x* (x) x -> <x*, S(b).x>
    act_form = ev @ kron(Im, M.action) @ kron_all(Im, B.S, Im) @ kron(flip(F, db, d), Im)
    action = curry(act_form, db * d, d)
    # target map M* (x) M -> B :  x* (x) x -> S^-1(x_(-1)) <x*, x_(0)>
    target = kron(S_inv, ev) @ kron(flip(F, d, db), Im) @ kron(Im, M.coaction)
    # (B (x) ev)(phi (x) M) has entry [b, (j, i)] = phi[(b, i), j]; read the unknown off
    entries = []
    for (b, ji), v in target.entries():
        j, i = divmod(ji, d)
        entries.append(((b * d + i, j), v))
    coaction = Matrix.from_entries(F, db * d, d, entries)
    if kron(Ib, ev) @ kron(coaction, Im) != target:
        raise TheoremViolation("dual coaction does not reproduce its defining identity")
    return YDModule(B, action, coaction, tuple(f"{lab}^*" for lab in M.labels))


def evaluation(U) -> Matrix:
    return pairing(U.field, U.dim)


def is_quasitriangular(B: FinDimHopf, R: Matrix) -> VerificationReport:
    F, d = B.field, B.dim
    I = ident(F, d)
    m2 = kron(B.m, B.m) @ kron_all(I, flip(F, d, d), I)
    m3 = kron_all(B.m, B.m, B.m) @ permute_factors(F, [d] * 6, [0, 3, 1, 4, 2, 5])
    one2 = kron(B.eta, B.eta)
    rep = VerificationReport("quasitriangular structure")
    R_inv = None
    LR = m2 @ kron(R, ident(F, d * d))
    X = solve(LR, one2)
    if X is not None and m2 @ kron(X, R) == one2:
        R_inv = X
    rep.add("R invertible", R_inv is not None)
    delta_op = flip(F, d, d) @ B.delta
    rep.equal("Delta^op R = R Delta", m2 @ kron(delta_op, R), m2 @ kron(R, B.delta), [d], [B.labels])
    R12 = kron(R, B.eta)
    R23 = kron(B.eta, R)
    R13 = permute_factors(F, [d, d, d], [0, 2, 1]) @ R12
    rep.equal("(Delta x id) R = R13 R23", kron(B.delta, I) @ R, m3 @ kron(R13, R23))
    rep.equal("(id x Delta) R = R13 R12", kron(I, B.delta) @ R, m3 @ kron(R13, R12))
    return rep


def yd_from_quasitriangular(B: FinDimHopf, R: Matrix, action: Matrix, labels=()) -> YDModule:
    """YD structure ``phi(v) = sum R2 (x) R1 . v`` on a B-module."""
    rep = is_quasitriangular(B, R)
    if not rep.ok:
        raise PreconditionError("R is not a quasitriangular structure", rep.failures()[0].name)
    F, db = B.field, B.dim
    d = action.rows
    Im = ident(F, d)
    coaction = kron(ident(F, db), action) @ kron(flip(F, db, db), Im) @ kron(R, Im)
    M = YDModule(B, action, coaction, tuple(labels))
    yd_check(M).assert_ok()
    return M


def diagonal_as_yd(obj: DiagonalObject, B: FinDimHopf, generator: int = 1) -> YDModule:
    """Realise a Z_n-graded diagonal object over the group algebra ``B = k Z_n``.

    The generator ``g`` (basis index ``generator``) acts on degree ``a`` by ``q^a`` and the
    coaction is ``v -> g^|v| (x) v``; the induced braiding is ``q^(|x||y|)`` times the flip.
    """
    F, n, d = obj.field, B.dim, obj.dim
    if obj.q ** n != F.one:
        raise PreconditionError(f"q^{n} != 1, cannot realise over k Z_{n}")
    act, coact = [], []
    for i, a in enumerate(obj.degrees):
        for j in range(n):
            act.append(((i, j * d + i), obj.q ** (a * j)))
        coact.append((((a % n) * d + i, i), 1))
    return YDModule(B, Matrix.from_entries(F, d, n * d, act),
                    Matrix.from_entries(F, n * d, d, coact), obj.labels)


# --- generic dispatch ----------------------------------------------------------

CatObject = Union[YDModule, DiagonalObject]


def _same(U, V):
    if not U.same_category(V):
        raise PreconditionError(f"objects live in different categories: {type(U).__name__}, "
                                f"{type(V).__name__}")


def tensor(U: CatObject, V: CatObject) -> CatObject:
    _same(U, V)
    if isinstance(U, YDModule):
        return yd_tensor(U, V)
    degs = tuple(a + b for a in U.degrees for b in V.degrees)
    labels = tuple(f"{x}*{y}" for x in U.labels for y in V.labels)
    return DiagonalObject(U.field, degs, U.q, U.modulus, labels)


def dual(U: CatObject) -> CatObject:
    if isinstance(U, YDModule):
        return dual_yd(U)
    return DiagonalObject(U.field, tuple(-a for a in U.degrees), U.q, U.modulus,
                          tuple(f"{lab}^*" for lab in U.labels))


def unit_object(U: CatObject) -> CatObject:
    if isinstance(U, YDModule):
        return yd_unit(U.base)
    return DiagonalObject(U.field, (0,), U.q, U.modulus, ("1",))


def braiding(U: CatObject, V: CatObject) -> Matrix:
    """``C_{U,V}: U (x) V -> V (x) U``."""
    _same(U, V)
    if isinstance(U, YDModule):
        return _yd_braiding(U, V)
    return _diag_braiding(U, V)


def morphism_witness(f: Matrix, U: CatObject, V: CatObject):
    """``None`` if ``f: U -> V`` is a morphism, else a description of the first failure."""
    _same(U, V)
    if f.shape != (V.dim, U.dim):
        raise ValueError(f"map shape {f.shape} does not match {V.dim}x{U.dim}")
    if isinstance(U, DiagonalObject):
        mod = U.modulus
        for (i, j), v in f.entries():
            a, b = V.degrees[i], U.degrees[j]
            if (a - b) % mod if mod else a != b:
                return {"kind": "degree", "input": U.labels[j], "output": V.labels[i]}
        return None
    B = U.base
    F, db = U.field, B.dim
    Ib = ident(F, db)
    lhs, rhs = f @ U.action, V.action @ kron(Ib, f)
    pos = lhs.first_difference(rhs)
    if pos is not None:
        w = matrix_witness(pos, lhs, rhs, [db, U.dim], [B.labels, U.labels])
        w["kind"] = "action"
        return w
    lhs, rhs = V.coaction @ f, kron(Ib, f) @ U.coaction
    pos = lhs.first_difference(rhs)
    if pos is not None:
        w = matrix_witness(pos, lhs, rhs, [U.dim], [U.labels])
        w["kind"] = "coaction"
        return w
    return None


def is_morphism(f: Matrix, U: CatObject, V: CatObject) -> tuple[bool, object]:
    w = morphism_witness(f, U, V)
    return w is None, w


def morphism_space(U: CatObject, V: CatObject) -> Matrix:
    """Basis of ``Hom(U, V)`` in the category; column ``c`` is ``vec(f)`` with
    ``f[i, j]`` at row ``i * dim U + j``."""
    _same(U, V)
    F, du, dv = U.field, U.dim, V.dim
    if isinstance(U, DiagonalObject):
        vecs = []
        for i in range(dv):
            for j in range(du):
                same = ((V.degrees[i] - U.degrees[j]) % U.modulus == 0 if U.modulus
                        else V.degrees[i] == U.degrees[j])
                if same:
                    vecs.append({i * du + j: F.one})
        return Matrix.from_columns(F, dv * du, vecs)
    Ib = ident(F, U.base.dim)
    cols = []
    for i in range(dv):
        for j in range(du):
            E = Matrix(F, dv, du, {j: {i: F.one}})
            r1 = E @ U.action - V.action @ kron(Ib, E)
            r2 = V.coaction @ E - kron(Ib, E) @ U.coaction
            col = {}
            for (a, b), v in r1.entries():
                col[a * r1.cols + b] = v
            off = r1.rows * r1.cols
            for (a, b), v in r2.entries():
                col[off + a * r2.cols + b] = v
            cols.append(col)
    n_eq = dv * U.base.dim * du + U.base.dim * dv * du
    system = Matrix.from_columns(F, n_eq, cols)
    return kernel(system)


def unvec(v: Matrix, rows: int, cols: int) -> Matrix:
    entries = [((k // cols, k % cols), x) for (k, _), x in v.entries()]
    return Matrix.from_entries(v.field, rows, cols, entries)


# --- symmetric braidings and the braid relation --------------------------------

def check_braid_equation(M: CatObject) -> bool:
    C = braiding(M, M)
    I = ident(M.field, M.dim)
    c1, c2 = kron(C, I), kron(I, C)
    return c1 @ c2 @ c1 == c2 @ c1 @ c2


def symmetry_report(M: CatObject) -> VerificationReport:
    F, d = M.field, M.dim
    rep = VerificationReport("symmetric braiding")
    C = braiding(M, M)
    sym = rep.add("C_{M,M}^2 = id", C @ C == ident(F, d * d))
    if not sym:
        return rep
    D = dual(M)
    rep.add("C_{M*,M} C_{M,M*} = id", braiding(D, M) @ braiding(M, D) == ident(F, d * d))
    rep.add("C_{M,M*} C_{M*,M} = id", braiding(M, D) @ braiding(D, M) == ident(F, d * d))
    CD = braiding(D, D)
    rep.add("C_{M*,M*}^2 = id", CD @ CD == ident(F, d * d))
    return rep


def check_symmetric(M: CatObject) -> bool:
    """True iff ``C_{M,M}`` squares to the identity.

    When it does, the induced relations ``C_{U,V} = C_{V,U}^-1`` for ``U, V`` in
    ``{M, M*}`` are asserted as well; a failure there raises :class:`TheoremViolation`.
    """
    rep = symmetry_report(M)
    if rep.checks[0].status == "fail":
        return False
    rep.assert_ok()
    return True


def is_symmetric(M: CatObject) -> bool:
    C = braiding(M, M)
    return C @ C == ident(M.field, M.dim * M.dim)
