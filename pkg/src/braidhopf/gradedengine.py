"""Degree-capped models of graded braided Hopf algebras in one variable.

Only identities whose intermediate degrees all stay at or below the cap are
asserted.  The coproduct of ``x^n`` is computed from ``Delta(x) = x (x) 1 + 1 (x) x``
by braided multiplicativity ``(a (x) b)(c (x) d) = q^(|b||c|) ac (x) bd``, so the
Gaussian binomials appear as outputs rather than inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .braidedcat import DiagonalObject, braiding, is_morphism, tensor, unit_object
from .braidedhopf import BraidedHopf, _solve_rho, largest_closed_subspace
from .report import ConstructionError, VerificationReport
from .scalars import (Field, Matrix, Scalar, curry, decode_index, ident, kernel, kron, kron_all,
                      pairing)


def root_field(n: int) -> Field:
    """Smallest field holding a primitive n-th root of unity: Q for n <= 2, else Q(zeta_n)."""
    return Field.rational() if n <= 2 else Field.cyclotomic(n)


def root_of_unity(n: int) -> Scalar:
    F = root_field(n)
    return F(1) if n == 1 else (F(-1) if n == 2 else F.zeta())


def gaussian_binomial(q: Scalar, n: int, i: int) -> Scalar:
    """``[n choose i]_q`` via ``[n, i] = [n-1, i-1] + q^i [n-1, i]``."""
    F = q.field
    if i < 0 or i > n:
        return F.zero
    row = [F.one]
    for k in range(1, n + 1):
        row = [F.one if j in (0, k) else row[j - 1] + q ** j * row[j] for j in range(k + 1)]
    return row[i]


@dataclass(frozen=True, eq=False)
class GradedBraidedHopf:
    """One-variable graded braided Hopf algebra on ``x^0 .. x^top``, trusted up to ``cap``.

    Products of total degree above ``top`` vanish; when ``cap > top`` that vanishing is
    a relation of the algebra, otherwise it is only the truncation.
    """
    field: Field
    q: Scalar
    top: int
    cap: int
    mult: Matrix
    unit: Matrix
    delta: Matrix
    eps: Matrix
    S: Matrix
    name: str = ""

    @property
    def dim(self) -> int:
        return self.top + 1

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(range(self.top + 1))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple("1" if n == 0 else ("x" if n == 1 else f"x^{n}") for n in range(self.top + 1))

    @property
    def carrier(self) -> DiagonalObject:
        return DiagonalObject(self.field, self.degrees, self.q, None, self.labels)

    @property
    def m(self):
        return self.mult

    @property
    def eta(self):
        return self.unit

    def coproduct_coefficient(self, n: int, i: int) -> Scalar:
        """Coefficient of ``x^i (x) x^(n-i)`` in ``Delta(x^n)``."""
        return self.delta[i * self.dim + (n - i), n]


def _braided_line_maps(q: Scalar, top: int):
    """Product, unit and coproduct of ``k[x]`` truncated to degrees ``<= top``, plus the
    coefficients of ``Delta(x^(top+1))`` so quotients can be validated."""
    F = q.field
    d = top + 1
    mult = Matrix.from_entries(F, d, d * d, [((a + b, a * d + b), 1)
                                             for a in range(d) for b in range(d) if a + b <= top])
    unit = Matrix.from_entries(F, d, 1, [((0, 0), 1)])
    eps = Matrix.from_entries(F, 1, d, [((0, 0), 1)])
    # coproducts as dicts {(i, j): coeff}; multiply on the right by x (x) 1 + 1 (x) x
    cop = [{(0, 0): F.one}]
    for n in range(1, d + 1):
        nxt: dict = {}
        for (i, j), c in cop[-1].items():
            # (x^i (x) x^j)(x (x) 1) = q^j x^(i+1) (x) x^j ;  (x^i (x) x^j)(1 (x) x) = x^i (x) x^(j+1)
            for key, v in (((i + 1, j), c * q ** j), ((i, j + 1), c)):
                nxt[key] = nxt[key] + v if key in nxt else v
        cop.append({k: v for k, v in nxt.items() if v})
    delta = Matrix.from_entries(F, d * d, d, [((i * d + j, n), v)
                                              for n in range(d) for (i, j), v in cop[n].items()])
    return mult, unit, delta, eps, cop[d]


def _solve_antipode(F: Field, delta: Matrix, d: int) -> Matrix:
    """Degree by degree: ``sum_i c(n, i) S(x^i) x^(n-i) = 0`` for ``n >= 1``."""
    S_of: list[dict] = [{0: F.one}]
    for n in range(1, d):
        acc: dict = {}
        for i in range(n):
            c = delta[i * d + (n - i), n]
            if not c:
                continue
            for k, v in S_of[i].items():
                key = k + n - i
                acc[key] = acc[key] + c * v if key in acc else c * v
        c_top = delta[n * d, n]
        S_of.append({k: -v / c_top for k, v in acc.items() if v})
    return Matrix.from_entries(F, d, d, [((k, n), v) for n in range(d) for k, v in S_of[n].items()])


def braided_line(q, cap: int) -> GradedBraidedHopf:
    """``k[x]`` with primitive ``x`` and braiding ``q^(nm)``, modelled on degrees ``<= cap``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not isinstance(q, Scalar):
        q = Field.rational()(q)
    mult, unit, delta, eps, _ = _braided_line_maps(q, cap)
    S = _solve_antipode(q.field, delta, cap + 1)
    return GradedBraidedHopf(q.field, q, cap, cap, mult, unit, delta, eps, S,
                             f"braided_line(q={q}, cap={cap})")


@lru_cache(maxsize=None)
def truncated_nichols(n: int) -> BraidedHopf:
    """``k[x]/(x^n)`` with ``q`` a primitive n-th root of unity, in the diagonal backend."""
    if n < 2:
        raise ValueError("truncation order must be at least 2")
    q = root_of_unity(n)
    F = q.field
    mult, unit, delta, eps, overflow = _braided_line_maps(q, n - 1)
    # Delta(x^n) must vanish in the quotient: only x^n (x) 1 and 1 (x) x^n may survive
    bad = {k: v for k, v in overflow.items() if 0 < k[0] < n}
    if bad:
        (i, j), v = next(iter(bad.items()))
        raise ConstructionError("coproduct does not descend to the quotient",
                                {"term": f"x^{i}*x^{j}", "coefficient": str(v)})
    S = _solve_antipode(F, delta, n)
    labels = tuple("1" if k == 0 else ("x" if k == 1 else f"x^{k}") for k in range(n))
    carrier = DiagonalObject(F, tuple(range(n)), q, None, labels)
    return BraidedHopf.from_maps(carrier, mult, unit, delta, eps, S, labels, f"nichols{n}")


def as_graded(H: BraidedHopf, cap: int) -> GradedBraidedHopf:
    """View a one-variable diagonal braided Hopf algebra as graded, trusted up to ``cap``."""
    X = H.carrier
    if not isinstance(X, DiagonalObject) or X.degrees != tuple(range(H.dim)):
        raise ValueError("expected basis x^0 .. x^top in degrees 0 .. top")
    return GradedBraidedHopf(H.field, X.q, H.dim - 1, cap, H.m, H.eta, H.delta, H.eps, H.S,
                             f"{H.name} (cap={cap})")


# --- capped axioms ---------------------------------------------------------------

def _restrict(rep: VerificationReport, name: str, lhs: Matrix, rhs: Matrix, dims, degs, cap,
              labels):
    """Compare only input columns whose total degree is at most ``cap``."""
    cols = []
    for j in range(lhs.cols):
        k, total = j, 0
        for n in reversed(dims):
            k, r = divmod(k, n)
            total += degs[r]
        if total <= cap:
            cols.append(j)
    sub_l, sub_r = lhs.select_columns(cols), rhs.select_columns(cols)
    pos = sub_l.first_difference(sub_r)
    w = None
    if pos is not None:
        j = cols[pos[1]]
        w = {"input": [labels[x] for x in decode_index(j, dims)], "output_index": pos[0],
             "lhs": str(lhs[pos[0], j]), "rhs": str(rhs[pos[0], j])}
    rep.add(name, pos is None, w)


def check_capped_axioms(H: GradedBraidedHopf) -> VerificationReport:
    F, d, cap = H.field, H.dim, H.cap
    I = ident(F, d)
    degs = H.degrees
    lab = H.labels
    rep = VerificationReport(f"capped axioms of {H.name}")
    X = H.carrier
    for name, f, U, V in (("m is a morphism", H.mult, tensor(X, X), X),
                          ("Delta is a morphism", H.delta, X, tensor(X, X)),
                          ("eps is a morphism", H.eps, X, unit_object(X)),
                          ("S is a morphism", H.S, X, X)):
        ok, w = is_morphism(f, U, V)
        rep.add(name, ok, w)
    r = lambda name, lhs, rhs, k: _restrict(rep, name, lhs, rhs, [d] * k, degs, cap, lab)  # noqa: E731
    r("associativity", H.mult @ kron(H.mult, I), H.mult @ kron(I, H.mult), 3)
    r("left unit", H.mult @ kron(H.unit, I), I, 1)
    r("right unit", H.mult @ kron(I, H.unit), I, 1)
    r("coassociativity", kron(H.delta, I) @ H.delta, kron(I, H.delta) @ H.delta, 1)
    r("left counit", kron(H.eps, I) @ H.delta, I, 1)
    r("right counit", kron(I, H.eps) @ H.delta, I, 1)
    C = _diag_braid(H)
    r("braided multiplicativity of Delta", H.delta @ H.mult,
      kron(H.mult, H.mult) @ kron_all(I, C, I) @ kron(H.delta, H.delta), 2)
    r("counit multiplicative", H.eps @ H.mult, kron(H.eps, H.eps), 2)
    r("antipode left", H.mult @ kron(H.S, I) @ H.delta, H.unit @ H.eps, 1)
    r("antipode right", H.mult @ kron(I, H.S) @ H.delta, H.unit @ H.eps, 1)
    rep.add("eps vanishes in positive degree", all(not H.eps[0, n] for n in range(1, d)))
    rep.add("Gaussian recurrence", gaussian_recurrence_holds(H))
    return rep


def _diag_braid(H: GradedBraidedHopf) -> Matrix:
    return braiding(H.carrier, H.carrier)


def gaussian_recurrence_holds(H: GradedBraidedHopf) -> bool:
    """``c(n, i) = c(n-1, i-1) + q^i c(n-1, i)`` for the computed coproduct coefficients."""
    F, q = H.field, H.q

    def c(n, i):
        return H.coproduct_coefficient(n, i) if 0 <= i <= n else F.zero

    return all(c(n, i) == c(n - 1, i - 1) + q ** i * c(n - 1, i)
               for n in range(1, H.dim) for i in range(n + 1))


# --- integrals under a cap ------------------------------------------------------------

def _capped_invariants(mult: Matrix, eps: Matrix, degs, cap: int) -> Matrix:
    """``{y : deg y <= cap-1, h y = eps(h) y whenever deg h + deg y <= cap}``."""
    F = mult.field
    d = len(degs)
    ys = [j for j in range(d) if degs[j] <= cap - 1]
    blocks = None
    for h in range(d):
        cols = []
        for j in ys:
            col = {}
            if degs[h] + degs[j] <= cap:
                col = dict(mult.col(h * d + j))
                e = eps[0, h]
                if e:
                    col[j] = col[j] - e if j in col else -e
                col = {k: v for k, v in col.items() if v}
            cols.append(col)
        block = Matrix.from_columns(F, d, cols)
        blocks = block if blocks is None else blocks.vstack(block)
    K = kernel(blocks) if ys else Matrix(F, 0, 0)
    return Matrix.from_entries(F, d, K.cols, [((ys[i], c), v) for (i, c), v in K.entries()])


def capped_integral_search(H: GradedBraidedHopf, cap: int | None = None) -> Matrix:
    cap = H.cap if cap is None else cap
    return _capped_invariants(H.mult, H.eps, H.degrees, cap)


@dataclass(frozen=True, eq=False)
class GradedDual:
    """Dual basis ``xi_n`` of a capped graded algebra with the structures built from the pairing.

    ``mult`` inserts the braiding ``C_{H*,H}``; ``convolution`` is the plain transpose of
    the coproduct.  On homogeneous elements they differ by ``q^(-ab)``.
    """
    H: GradedBraidedHopf
    obj: DiagonalObject
    pair: Matrix
    mult: Matrix
    convolution: Matrix
    unit: Matrix
    counit: Matrix
    hit: Matrix
    rho: Matrix

    @property
    def dim(self):
        return self.H.dim

    @property
    def degrees(self):
        """Grading by the absolute degree of the dual element."""
        return self.H.degrees


def graded_dual(H: GradedBraidedHopf) -> GradedDual:
    F, d = H.field, H.dim
    I = ident(F, d)
    X = H.carrier
    D = DiagonalObject(F, tuple(-a for a in X.degrees), H.q, None,
                       tuple(f"xi{n}" for n in range(d)))
    P = pairing(F, d)
    C_DH, C_HD, C_DD = braiding(D, X), braiding(X, D), braiding(D, D)
    mult = curry(kron(P, P) @ kron_all(I, C_DH, I) @ kron_all(I, I, H.delta), d * d, d)
    conv = H.delta.T
    hit = curry(P @ kron(I, H.mult) @ kron(I, _diag_braid(H)) @ kron(C_HD, I), d * d, d)
    T = kron(I, P) @ kron(C_DD, I)
    rho = _solve_rho(T, mult, d)
    if rho is None:
        raise ConstructionError("no coaction on the capped dual")
    return GradedDual(H, D, P, mult, conv, H.eps.T, H.unit.T, hit, rho)


def capped_dual_integrals(Dl: GradedDual, cap: int | None = None) -> Matrix:
    cap = Dl.H.cap if cap is None else cap
    return _capped_invariants(Dl.mult, Dl.counit, Dl.degrees, cap)


def stable_rational_part(q, cap: int) -> Matrix:
    """Elements of the cap-``cap`` dual whose submodule under the cap-``cap+1`` dual stays
    within degrees ``<= cap``.

    Every capped dual is rational because the truncated coalgebra is finite; this
    check exposes which elements remain rational once one more degree is admitted.
    """
    Dl = graded_dual(braided_line(q, cap + 1))
    F, d = Dl.H.field, Dl.dim
    lower = Matrix.from_entries(F, d, cap + 1, [((n, n), 1) for n in range(cap + 1)])
    ops = [Dl.mult @ kron(Matrix.from_entries(F, d, 1, [((g, 0), 1)]), ident(F, d))
           for g in range(d)]
    W = largest_closed_subspace(lower, ops)
    return W.select_rows(list(range(cap + 1)))
