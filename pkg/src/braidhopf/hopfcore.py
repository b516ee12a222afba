"""Ordinary finite-dimensional Hopf algebras given by structure constants.

Structure maps are stored as matrices under the global tensor convention:
``mult`` is ``d x d^2``, ``unit`` is ``d x 1``, ``comult`` is ``d^2 x d``,
``counit`` is ``1 x d`` and ``antipode`` is ``d x d``.  Elements of the
algebra are ``d x 1`` column matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .report import PreconditionError, VerificationReport
from .scalars import (Field, Matrix, canonical_basis, column_space, contains_span, flip,
                      ident, kernel, kron, kron_all, rank, solve)


@dataclass(frozen=True, eq=False)
class FinDimAlgebra:
    field: Field
    mult: Matrix
    unit: Matrix
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        d = self.mult.rows
        if self.mult.cols != d * d or self.unit.shape != (d, 1):
            raise ValueError(f"inconsistent algebra shapes {self.mult.shape}, {self.unit.shape}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(d)))

    @property
    def dim(self) -> int:
        return self.mult.rows

    @classmethod
    def from_table(cls, field: Field, dim: int, table, unit: Sequence, labels=()) -> "FinDimAlgebra":
        """``table`` maps ``(i, j)`` to ``{k: coefficient of e_k in e_i e_j}``."""
        entries = []
        for (i, j), out in table.items():
            for k, v in out.items():
                entries.append(((k, i * dim + j), v))
        return cls(field, Matrix.from_entries(field, dim, dim * dim, entries),
                   Matrix.column(field, list(unit)), tuple(labels))

    def product(self, a: Matrix, b: Matrix) -> Matrix:
        return self.mult @ kron(a, b)

    def left_mult(self, a: Matrix) -> Matrix:
        return self.mult @ kron(a, ident(self.field, self.dim))

    def basis_vector(self, i: int) -> Matrix:
        return basis_vector(self.field, self.dim, i)


@dataclass(frozen=True, eq=False)
class FinDimCoalgebra:
    field: Field
    comult: Matrix
    counit: Matrix
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        d = self.comult.cols
        if self.comult.rows != d * d or self.counit.shape != (1, d):
            raise ValueError(f"inconsistent coalgebra shapes {self.comult.shape}, {self.counit.shape}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(d)))

    @property
    def dim(self) -> int:
        return self.comult.cols


@dataclass(frozen=True, eq=False)
class FinDimHopf:
    algebra: FinDimAlgebra
    coalgebra: FinDimCoalgebra
    antipode: Matrix
    name: str = ""

    def __post_init__(self):
        if self.algebra.dim != self.coalgebra.dim or self.antipode.shape != (self.algebra.dim,) * 2:
            raise ValueError("algebra, coalgebra and antipode dimensions differ")

    field = property(lambda self: self.algebra.field)
    dim = property(lambda self: self.algebra.dim)
    labels = property(lambda self: self.algebra.labels)
    m = property(lambda self: self.algebra.mult)
    eta = property(lambda self: self.algebra.unit)
    delta = property(lambda self: self.coalgebra.comult)
    eps = property(lambda self: self.coalgebra.counit)
    S = property(lambda self: self.antipode)

    @classmethod
    def from_maps(cls, field: Field, m: Matrix, eta: Matrix, delta: Matrix, eps: Matrix,
                  S: Matrix | None, labels=(), name: str = "") -> "FinDimHopf":
        """Assemble from matrices; a missing antipode is solved for (``ValueError`` if none)."""
        alg = FinDimAlgebra(field, m, eta, tuple(labels))
        coalg = FinDimCoalgebra(field, delta, eps, alg.labels)
        if S is None:
            S = compute_antipode(alg, coalg)
            if S is None:
                raise ValueError(f"{name or 'bialgebra'} has no antipode")
        return cls(alg, coalg, S, name)

    def dual(self) -> "FinDimHopf":
        """H* on the dual basis, by transposing every structure tensor."""
        labels = tuple(f"d({lab})" for lab in self.labels)
        return FinDimHopf(FinDimAlgebra(self.field, self.delta.T, self.eps.T, labels),
                          FinDimCoalgebra(self.field, self.m.T, self.eta.T, labels),
                          self.S.T, f"dual({self.name})" if self.name else "")

    def counit_of(self, x: Matrix) -> "object":
        return (self.eps @ x)[0, 0]


@dataclass(frozen=True, eq=False)
class FinDimBialgebra:
    """Algebra and coalgebra on one space, with no antipode assumed."""
    algebra: FinDimAlgebra
    coalgebra: FinDimCoalgebra
    name: str = ""

    field = property(lambda self: self.algebra.field)
    dim = property(lambda self: self.algebra.dim)
    labels = property(lambda self: self.algebra.labels)
    m = property(lambda self: self.algebra.mult)
    eta = property(lambda self: self.algebra.unit)
    delta = property(lambda self: self.coalgebra.comult)
    eps = property(lambda self: self.coalgebra.counit)


def check_bialgebra(H) -> VerificationReport:
    rep = VerificationReport(H.name or "bialgebra")
    rep.extend(check_algebra(H.algebra))
    rep.extend(check_coalgebra(H.coalgebra))
    bialgebra_checks(rep, H.algebra, H.coalgebra, flip(H.field, H.dim, H.dim))
    return rep


def basis_vector(field: Field, d: int, i: int) -> Matrix:
    return Matrix(field, d, 1, {0: {i: field.one}})


def vector(field: Field, d: int, coeffs: dict) -> Matrix:
    return Matrix.from_entries(field, d, 1, {(i, 0): v for i, v in coeffs.items()})


# --- axiom audits ------------------------------------------------------------

def check_algebra(A: FinDimAlgebra) -> VerificationReport:
    F, d, m, eta = A.field, A.dim, A.mult, A.unit
    I = ident(F, d)
    rep = VerificationReport("algebra")
    lab = [A.labels] * 3
    rep.equal("associativity", m @ kron(m, I), m @ kron(I, m), [d, d, d], lab)
    rep.equal("left unit", m @ kron(eta, I), I, [d], [A.labels])
    rep.equal("right unit", m @ kron(I, eta), I, [d], [A.labels])
    return rep


def check_coalgebra(C: FinDimCoalgebra) -> VerificationReport:
    F, d, D, e = C.field, C.dim, C.comult, C.counit
    I = ident(F, d)
    rep = VerificationReport("coalgebra")
    rep.equal("coassociativity", kron(D, I) @ D, kron(I, D) @ D, [d], [C.labels])
    rep.equal("left counit", kron(e, I) @ D, I, [d], [C.labels])
    rep.equal("right counit", kron(I, e) @ D, I, [d], [C.labels])
    return rep


def bialgebra_checks(rep: VerificationReport, A: FinDimAlgebra, C: FinDimCoalgebra,
                     braiding: Matrix) -> VerificationReport:
    """Compatibility of product and coproduct, with ``braiding`` in place of the flip."""
    F, d = A.field, A.dim
    m, eta, D, e = A.mult, A.unit, C.comult, C.counit
    I = ident(F, d)
    one = Matrix.identity(F, 1)
    lab = [A.labels] * 2
    middle = kron_all(I, braiding, I)
    rep.equal("comultiplication is multiplicative", D @ m,
              kron(m, m) @ middle @ kron(D, D), [d, d], lab)
    rep.equal("counit is multiplicative", e @ m, kron(e, e), [d, d], lab)
    rep.equal("comultiplication is unital", D @ eta, kron(eta, eta))
    rep.equal("counit of unit", e @ eta, one)
    return rep


def check_antipode(H: FinDimHopf, rep: VerificationReport | None = None) -> VerificationReport:
    rep = rep or VerificationReport("antipode")
    F, d = H.field, H.dim
    I = ident(F, d)
    unit_counit = H.eta @ H.eps
    rep.equal("antipode left", H.m @ kron(H.S, I) @ H.delta, unit_counit, [d], [H.labels])
    rep.equal("antipode right", H.m @ kron(I, H.S) @ H.delta, unit_counit, [d], [H.labels])
    return rep


def check_hopf(H: FinDimHopf) -> VerificationReport:
    rep = VerificationReport(H.name or "hopf algebra")
    rep.extend(check_algebra(H.algebra))
    rep.extend(check_coalgebra(H.coalgebra))
    bialgebra_checks(rep, H.algebra, H.coalgebra, flip(H.field, H.dim, H.dim))
    check_antipode(H, rep)
    return rep


# --- convolution, antipode, integrals ----------------------------------------

def convolution(f: Matrix, g: Matrix, C: FinDimCoalgebra, A: FinDimAlgebra) -> Matrix:
    """``m_A (f (x) g) Delta_C`` for linear maps ``f, g: C -> A``."""
    if f.shape != (A.dim, C.dim) or g.shape != (A.dim, C.dim):
        raise ValueError(f"maps must be {A.dim}x{C.dim}, got {f.shape} and {g.shape}")
    return A.mult @ kron(f, g) @ C.comult


def compute_antipode(A: FinDimAlgebra, C: FinDimCoalgebra) -> Matrix | None:
    """Solve the antipode law for S as a linear system; ``None`` when the bialgebra is not Hopf.

    Unknown ``s[a, i]`` is the coefficient of ``e_a`` in ``S(e_i)``.  Equations are
    indexed by ``(k, c)``: the ``e_k`` coefficient of each side evaluated on ``e_c``.
    """
    F, d = A.field, A.dim
    m, D = A.mult, C.comult
    rows: dict = {}

    def add(r, c, v):
        row = rows.setdefault(r, {})
        row[c] = row[c] + v if c in row else v

    for c in range(d):
        for ij, coef in D.col(c).items():
            i, j = divmod(ij, d)
            for a in range(d):
                # S(e_i) e_j  and  e_i S(e_j)
                for k, v in m.col(a * d + j).items():
                    add((0, k, c), a * d + i, coef * v)
                for k, v in m.col(i * d + a).items():
                    add((1, k, c), a * d + j, coef * v)
    order = [(s, k, c) for s in (0, 1) for k in range(d) for c in range(d)]
    pos = {key: n for n, key in enumerate(order)}
    entries = []
    for key, row in rows.items():
        for col, v in row.items():
            entries.append(((pos[key], col), v))
    system = Matrix.from_entries(F, len(order), d * d, entries)
    target = A.unit @ C.counit
    rhs_entries = []
    for s in (0, 1):
        for k in range(d):
            for c in range(d):
                v = target[k, c]
                if v:
                    rhs_entries.append(((pos[(s, k, c)], 0), v))
    rhs = Matrix.from_entries(F, len(order), 1, rhs_entries)
    x = solve(system, rhs)
    if x is None:
        return None
    return Matrix.from_entries(F, d, d, [((a, i), x[a * d + i, 0])
                                         for a in range(d) for i in range(d) if x[a * d + i, 0]])


def invariants_of_action(action: Matrix, counit: Matrix, dim_m: int) -> Matrix:
    """Basis of ``{v : h.v = eps(h) v for all h}`` for an action ``H (x) M -> M``."""
    F = action.field
    d = counit.cols
    I = ident(F, dim_m)
    blocks = None
    for i in range(d):
        e = basis_vector(F, d, i)
        Li = action @ kron(e, I) - I.scale(counit[0, i])
        blocks = Li if blocks is None else blocks.vstack(Li)
    if blocks is None:
        return Matrix(F, dim_m, dim_m)
    return kernel(blocks)


def left_integrals_in(H) -> Matrix:
    """Columns spanning ``{t : h t = eps(h) t}``."""
    return invariants_of_action(H.m, H.eps, H.dim)


def left_integrals_on(H: FinDimHopf) -> Matrix:
    """Columns (coordinates in the dual basis) spanning ``{f : g * f = g(1) f}``."""
    return left_integrals_in(H.dual())


@dataclass
class MaschkeVerdict:
    semisimple: bool
    integral: Matrix | None
    counit_value: object

    def __bool__(self):
        return self.semisimple


def maschke_test(H) -> MaschkeVerdict:
    ints = left_integrals_in(H)
    if ints.cols == 0:
        return MaschkeVerdict(False, None, None)
    t = ints.select_columns([0])
    val = (H.eps @ t)[0, 0]
    return MaschkeVerdict(bool(val), t, val)


def trace_form(A: FinDimAlgebra) -> Matrix:
    F, d = A.field, A.dim
    L = [A.left_mult(basis_vector(F, d, a)) for a in range(d)]
    rows = []
    for a in range(d):
        row = []
        for b in range(d):
            P = L[a] @ L[b]
            tr = F.zero
            for i in range(d):
                tr = tr + P[i, i]
            row.append(tr)
        rows.append(row)
    return Matrix.from_rows(F, rows)


def semisimplicity_oracle(A: FinDimAlgebra) -> bool:
    """Characteristic-zero criterion: the trace form ``tr(L_a L_b)`` is nondegenerate."""
    return rank(trace_form(A)) == A.dim


# --- modules and the averaging projection ------------------------------------

def regular_action(H) -> Matrix:
    return H.m


def direct_sum_action(action: Matrix, dim_h: int, dim_m: int, copies: int = 2) -> Matrix:
    """Action of H on ``M^copies`` (block coordinates: copy index slowest)."""
    F = action.field
    entries = []
    for (k, col), v in action.entries():
        h, j = divmod(col, dim_m)
        for c in range(copies):
            entries.append(((c * dim_m + k, h * (copies * dim_m) + c * dim_m + j), v))
    return Matrix.from_entries(F, copies * dim_m, dim_h * copies * dim_m, entries)


def check_module(H, action: Matrix, dim_m: int, name: str = "module") -> VerificationReport:
    F, d = H.field, H.dim
    I = ident(F, dim_m)
    rep = VerificationReport(name)
    rep.equal("action associative", action @ kron(H.m, I), action @ kron(ident(F, d), action),
              [d, d, dim_m])
    rep.equal("action unital", action @ kron(H.eta, I), I, [dim_m])
    return rep


def submodule_witness(H, action: Matrix, N: Matrix) -> tuple[int, int] | None:
    """First ``(basis element of H, column of N)`` whose product leaves ``span N``."""
    F, d = H.field, H.dim
    for i in range(d):
        img = action @ kron(basis_vector(F, d, i), N)
        for j in range(N.cols):
            if not contains_span(N, img.select_columns([j])):
                return (i, j)
    return None


def default_projection(N: Matrix) -> Matrix:
    """Coordinate projection onto ``span N`` along standard vectors completing its basis."""
    F, n = N.field, N.rows
    basis = column_space(N)
    r = basis.cols
    cols = [basis.col(j) for j in range(r)]
    current = basis
    for k in range(n):
        if current.cols == n:
            break
        e = basis_vector(F, n, k)
        if not contains_span(current, e):
            current = current.hstack(e)
            cols.append({k: F.one})
    P = Matrix.from_columns(F, n, cols)
    coords = solve(P, ident(F, n))
    return basis @ coords.select_rows(list(range(r)))


@dataclass
class ProjectionResult:
    mu: Matrix
    report: VerificationReport = dc_field(default_factory=lambda: VerificationReport("projection"))


def maschke_projection(H, z: Matrix, action: Matrix, N: Matrix, xi: Matrix | None = None,
                       check_integral: bool = True) -> ProjectionResult:
    """``mu(m) = sum z_1 . xi(S(z_2) . m)`` with every defining property checked.

    ``H`` is any object exposing ``m, eta, delta, eps, S`` (ordinary or braided);
    ``action`` is ``H (x) M -> M`` and ``N`` holds a basis of the submodule as columns.
    """
    F, d = H.field, H.dim
    dim_m = action.rows
    if (H.eps @ z)[0, 0] != F.one:
        raise PreconditionError("z must satisfy eps(z) = 1", str((H.eps @ z)[0, 0]))
    if check_integral and not (H.m @ kron(ident(F, d), z) == z @ H.eps):
        raise PreconditionError("z is not a left integral")
    if N.rows != dim_m:
        raise PreconditionError(f"submodule lives in dimension {N.rows}, module has {dim_m}")
    w = submodule_witness(H, action, N) if N.cols else None
    if w is not None:
        raise PreconditionError("N is not a submodule", {"h": H.labels[w[0]], "column": w[1]})
    if xi is None:
        xi = default_projection(N) if N.cols else Matrix(F, dim_m, dim_m)
    Im = ident(F, dim_m)
    Id = ident(F, d)
    dz = H.delta @ z
    mu = (action @ kron(Id, xi) @ kron(Id, action) @ kron_all(Id, H.S, Im) @ kron(dz, Im))
    rep = VerificationReport("averaging projection")
    rep.equal("mu is H-linear", mu @ action, action @ kron(Id, mu), [d, dim_m])
    rep.equal("mu restricts to identity on N", mu @ N, N)
    rep.add("image of mu inside N", contains_span(N, mu) if N.cols else mu.is_zero())
    return ProjectionResult(mu, rep)


def module_instances(H) -> list[tuple[str, Matrix, Matrix]]:
    """Named (action, submodule basis) pairs built from the regular module."""
    F, d = H.field, H.dim
    out = []
    ints = left_integrals_in(H)
    if ints.cols:
        out.append(("regular / integral line", H.m, ints))
    aug = kernel(H.eps)
    out.append(("regular / augmentation ideal", H.m, aug))
    two = direct_sum_action(H.m, d, d, 2)
    diag = Matrix.from_entries(F, 2 * d, d, [((i, i), 1) for i in range(d)] +
                               [((d + i, i), 1) for i in range(d)])
    out.append(("regular^2 / diagonal copy", two, diag))
    out.append(("regular / whole module", H.m, ident(F, d)))
    out.append(("regular / zero", H.m, Matrix(F, d, 0)))
    return out
