"""Named example objects: group algebras, Taft algebras, Nichols quotients, YD modules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .braidedcat import YDModule, diagonal_as_yd, yd_from_quasitriangular
from .braidedhopf import BraidedHopf
from .gradedengine import braided_line, root_field, root_of_unity, truncated_nichols
from .hopfcore import (FinDimAlgebra, FinDimBialgebra, FinDimCoalgebra, FinDimHopf,
                       compute_antipode)
from .scalars import Field, Matrix, Scalar, flip, ident, kron, kron_all


def group_algebra(n: int, field: Field | None = None) -> FinDimHopf:
    """k Z_n on the basis ``g^0 .. g^(n-1)``; repeated calls return the same object."""
    return _group_algebra(n, field or Field.rational())


@lru_cache(maxsize=None)
def _group_algebra(n: int, F: Field) -> FinDimHopf:
    if n < 1:
        raise ValueError("group order must be positive")
    labels = tuple("1" if i == 0 else ("g" if i == 1 else f"g^{i}") for i in range(n))
    m = Matrix.from_entries(F, n, n * n, [(((i + j) % n, i * n + j), 1)
                                          for i in range(n) for j in range(n)])
    eta = Matrix.from_entries(F, n, 1, [((0, 0), 1)])
    delta = Matrix.from_entries(F, n * n, n, [((i * n + i, i), 1) for i in range(n)])
    eps = Matrix.from_entries(F, 1, n, [((0, i), 1) for i in range(n)])
    S = Matrix.from_entries(F, n, n, [(((-i) % n, i), 1) for i in range(n)])
    name = "k" if n == 1 else f"kZ{n}"
    return FinDimHopf.from_maps(F, m, eta, delta, eps, S, labels, name)


def dual_group_algebra(n: int, field: Field | None = None) -> FinDimHopf:
    """Functions on Z_n, basis of point masses ``d0 .. d(n-1)``."""
    return _dual_group_algebra(n, field or Field.rational())


@lru_cache(maxsize=None)
def _dual_group_algebra(n: int, F: Field) -> FinDimHopf:
    if n < 1:
        raise ValueError("group order must be positive")
    labels = tuple(f"d{i}" for i in range(n))
    m = Matrix.from_entries(F, n, n * n, [((i, i * n + i), 1) for i in range(n)])
    eta = Matrix.from_entries(F, n, 1, [((i, 0), 1) for i in range(n)])
    delta = Matrix.from_entries(F, n * n, n, [((i * n + j, (i + j) % n), 1)
                                              for i in range(n) for j in range(n)])
    eps = Matrix.from_entries(F, 1, n, [((0, 0), 1)])
    S = Matrix.from_entries(F, n, n, [(((-i) % n, i), 1) for i in range(n)])
    return FinDimHopf.from_maps(F, m, eta, delta, eps, S, labels, f"k^Z{n}")


def trivial_hopf(field: Field | None = None) -> FinDimHopf:
    return group_algebra(1, field)


def _tensor_square_mult(A: FinDimAlgebra) -> Matrix:
    F, d = A.field, A.dim
    I = ident(F, d)
    return kron(A.mult, A.mult) @ kron_all(I, flip(F, d, d), I)


@lru_cache(maxsize=None)
def taft(n: int) -> FinDimHopf:
    """Taft algebra: ``g^n = 1, x^n = 0, g x = zeta x g``, ``Delta(x) = x (x) 1 + g (x) x``.

    Basis element ``g^i x^j`` sits at index ``j * n + i``.  The coproduct is generated
    multiplicatively from those of ``g`` and ``x``; the antipode is solved for.
    """
    if n < 2:
        raise ValueError("Taft algebras need n >= 2")
    F = root_field(n)
    z = root_of_unity(n)
    d = n * n
    idx = lambda i, j: j * n + i  # noqa: E731

    def lab(i, j):
        g = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
        x = "" if j == 0 else ("x" if j == 1 else f"x^{j}")
        return (g + x) or "1"

    labels = tuple(lab(k % n, k // n) for k in range(d))
    entries = []
    # (g^a x^b)(g^c x^e) = zeta^(-b c) g^(a+c) x^(b+e)
    for a, b, c, e in itertools.product(range(n), repeat=4):
        if b + e < n:
            entries.append(((idx((a + c) % n, b + e), idx(a, b) * d + idx(c, e)), z ** (-b * c)))
    m = Matrix.from_entries(F, d, d * d, entries)
    eta = Matrix.from_entries(F, d, 1, [((idx(0, 0), 0), 1)])
    alg = FinDimAlgebra(F, m, eta, labels)
    m2 = _tensor_square_mult(alg)
    one2 = kron(eta, eta)
    g = Matrix.from_entries(F, d, 1, [((idx(1 % n, 0), 0), 1)])
    x = Matrix.from_entries(F, d, 1, [((idx(0, 1), 0), 1)])
    dg = kron(g, g)
    dx = kron(x, eta) + kron(g, x)
    cols = []
    for k in range(d):
        i, j = k % n, k // n
        v = one2
        for _ in range(i):
            v = m2 @ kron(v, dg)
        for _ in range(j):
            v = m2 @ kron(v, dx)
        cols.append(v.col(0))
    delta = Matrix.from_columns(F, d * d, cols)
    eps = Matrix.from_entries(F, 1, d, [((0, idx(i, 0)), 1) for i in range(n)])
    coalg = FinDimCoalgebra(F, delta, eps, labels)
    S = compute_antipode(alg, coalg)
    name = "sweedler_h4" if n == 2 else f"taft{n}"
    return FinDimHopf(alg, coalg, S, name)


def sweedler_h4() -> FinDimHopf:
    """Sweedler's 4-dimensional algebra on the basis ``1, g, x, gx``."""
    return taft(2)


@lru_cache(maxsize=None)
def matrix_monoid_bialgebra() -> FinDimBialgebra:
    """Functions on the 16-element monoid ``M_2(F_2)``: pointwise product,
    ``Delta(d_C) = sum_{AB=C} d_A (x) d_B``, counit evaluation at the identity.

    This is the finite shadow of the matrix-coefficient bialgebra without the
    determinant inverted; non-invertible matrices obstruct an antipode.
    """
    F = Field.rational()
    mats = list(itertools.product(range(2), repeat=4))  # (a, b, c, d) row-major
    pos = {M: i for i, M in enumerate(mats)}

    def mul(A, B):
        a, b, c, d = A
        e, f, g, h = B
        return ((a * e + b * g) % 2, (a * f + b * h) % 2, (c * e + d * g) % 2, (c * f + d * h) % 2)

    n = len(mats)
    labels = tuple("".join(map(str, M)) for M in mats)
    m = Matrix.from_entries(F, n, n * n, [((i, i * n + i), 1) for i in range(n)])
    eta = Matrix.from_entries(F, n, 1, [((i, 0), 1) for i in range(n)])
    delta = Matrix.from_entries(F, n * n, n, [((pos[A] * n + pos[B], pos[mul(A, B)]), 1)
                                              for A in mats for B in mats])
    eps = Matrix.from_entries(F, 1, n, [((0, pos[(1, 0, 0, 1)]), 1)])
    return FinDimBialgebra(FinDimAlgebra(F, m, eta, labels), FinDimCoalgebra(F, delta, eps, labels),
                           "matrix_monoid")


# --- braided and Yetter-Drinfeld examples ---------------------------------------

@lru_cache(maxsize=None)
def nichols_over_group(n: int) -> BraidedHopf:
    """``k[x]/(x^n)`` as a braided Hopf algebra in YD modules over ``k Z_n``:
    ``g`` acts on ``x^a`` by ``zeta^a`` and ``x^a`` is coacted on by ``g^a``."""
    N = truncated_nichols(n)
    B = group_algebra(n, N.field)
    return BraidedHopf(diagonal_as_yd(N.carrier, B), N.hopf, f"nichols{n}/kZ{n}")


@lru_cache(maxsize=None)
def sign_yd_module() -> YDModule:
    """``span{1, x}`` over ``k Z_2``: ``g.x = -x`` and ``x -> g (x) x``."""
    return nichols_over_group(2).carrier


def trivial_yd_hopf(H: FinDimHopf, B: FinDimHopf) -> BraidedHopf:
    """An ordinary Hopf algebra placed in YD modules over ``B`` with trivial action and coaction."""
    F, d = H.field, H.dim
    act = kron(B.eps, ident(F, d))
    coact = kron(B.eta, ident(F, d))
    return BraidedHopf(YDModule(B, act, coact, H.labels), H, f"{H.name}/{B.name}")


def kz2_r_matrix() -> Matrix:
    """``R = (1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g) / 2`` on ``k Z_2``."""
    F = Field.rational()
    h = F("1/2")
    return Matrix.from_entries(F, 4, 1, [((0, 0), h), ((1, 0), h), ((2, 0), h), ((3, 0), -h)])


@lru_cache(maxsize=None)
def quasitriangular_kz2_module() -> YDModule:
    """Two-dimensional ``k Z_2``-module ``g = diag(1, -1)`` made YD through ``R``."""
    B = group_algebra(2)
    F = B.field
    act = Matrix.from_entries(F, 2, 4, [((0, 0), 1), ((1, 1), 1), ((0, 2), 1), ((1, 3), -1)])
    return yd_from_quasitriangular(B, kz2_r_matrix(), act, ("e0", "e1"))


@lru_cache(maxsize=None)
def h4_yd_module() -> YDModule:
    """``V = span{v0, v1}`` over Sweedler's algebra: ``g = diag(1, -1)``, ``x v0 = v1``,
    ``x v1 = 0``; coaction ``v0 -> 1 (x) v0``, ``v1 -> g (x) v1``."""
    B = sweedler_h4()
    # base basis order: 1, g, x, gx
    action = {(0, 0): {0: 1}, (0, 1): {1: 1},
              (1, 0): {0: 1}, (1, 1): {1: -1},
              (2, 0): {1: 1},
              (3, 0): {1: -1}}
    coaction = {0: {(0, 0): 1}, 1: {(1, 1): 1}}
    return YDModule.from_tensors(B, 2, action, coaction, ("v0", "v1"))


def yd_zoo() -> dict:
    """YD instances used for duality and morphism checks."""
    return {
        "sign_yd_module": sign_yd_module(),
        "nichols3_yd": nichols_over_group(3).carrier,
        "quasitriangular_kz2": quasitriangular_kz2_module(),
        "h4_yd_module": h4_yd_module(),
        "trivial_kz3": trivial_yd_hopf(group_algebra(3), group_algebra(3)).carrier,
    }


@lru_cache(maxsize=None)
def group_algebra_yd(n: int, base_n: int) -> BraidedHopf:
    """``k Z_n`` with trivial YD structure over ``k Z_base_n``."""
    return trivial_yd_hopf(group_algebra(n), group_algebra(base_n))


# --- registry --------------------------------------------------------------------

class ZooError(ValueError):
    pass


@dataclass(frozen=True)
class ZooEntry:
    name: str
    kind: str          # hopf | bialgebra | braided | graded | yd_module
    params: tuple      # ((name, default), ...)
    summary: str
    build: Callable


def _q_param(text) -> Scalar:
    """``"2"``, ``"-1"``, ``"3/2"`` over Q, or ``"zeta<n>"`` for a primitive n-th root of unity."""
    text = str(text).strip()
    if text.startswith("zeta"):
        return root_of_unity(int(text[4:]))
    return Field.rational()(text)


def _field_param(text) -> Field:
    text = str(text).strip()
    if text == "rational":
        return Field.rational()
    if text.startswith("cyclotomic"):
        return Field.cyclotomic(int(text[len("cyclotomic"):]))
    raise ZooError(f"unknown field {text!r}; use rational or cyclotomic<n>")


def _pos(n, low=1):
    n = int(n)
    if n < low:
        raise ZooError(f"parameter must be >= {low}, got {n}")
    return n


_ENTRIES = [
    ZooEntry("trivial", "hopf", (), "the one-dimensional Hopf algebra k",
             lambda: trivial_hopf()),
    ZooEntry("group_algebra", "hopf", (("n", 2), ("field", "rational")), "group algebra k Z_n",
             lambda n, field: group_algebra(_pos(n), _field_param(field))),
    ZooEntry("dual_group_algebra", "hopf", (("n", 2),), "functions on Z_n",
             lambda n: dual_group_algebra(_pos(n))),
    ZooEntry("sweedler_h4", "hopf", (), "Sweedler's four-dimensional Hopf algebra",
             lambda: sweedler_h4()),
    ZooEntry("taft", "hopf", (("n", 3),), "Taft algebra of dimension n^2",
             lambda n: taft(_pos(n, 2))),
    ZooEntry("matrix_monoid", "bialgebra", (), "functions on M_2(F_2); a bialgebra with no antipode",
             lambda: matrix_monoid_bialgebra()),
    ZooEntry("truncated_nichols", "braided", (("n", 2),),
             "k[x]/(x^n) braided by a primitive n-th root of unity (diagonal backend)",
             lambda n: truncated_nichols(_pos(n, 2))),
    ZooEntry("nichols_yd", "braided", (("n", 2),), "k[x]/(x^n) in YD modules over k Z_n",
             lambda n: nichols_over_group(_pos(n, 2))),
    ZooEntry("group_algebra_yd", "braided", (("n", 2), ("base_n", 2)),
             "k Z_n with trivial YD structure over k Z_base_n",
             lambda n, base_n: group_algebra_yd(_pos(n), _pos(base_n))),
    ZooEntry("braided_line", "graded", (("q", "2"), ("cap", 20)),
             "k[x] with primitive x and braiding q^(nm), modelled up to degree cap",
             lambda q, cap: braided_line(_q_param(q), _pos(cap))),
    ZooEntry("sign_yd_module", "yd_module", (), "span{1, x} over k Z_2 with g.x = -x",
             lambda: sign_yd_module()),
    ZooEntry("quasitriangular_kz2", "yd_module", (),
             "k Z_2-module made YD through R = (11 + 1g + g1 - gg)/2",
             lambda: quasitriangular_kz2_module()),
    ZooEntry("h4_yd_module", "yd_module", (), "two-dimensional YD module over Sweedler's algebra",
             lambda: h4_yd_module()),
]
ZOO = {e.name: e for e in _ENTRIES}


def zoo_list() -> list[ZooEntry]:
    return list(_ENTRIES)


def parse_zoo_name(text: str) -> tuple[str, dict]:
    """``"zoo:taft:n=3"``, ``"taft:n=3"``, ``"braided_line q=2 cap=20"`` -> (name, params)."""
    body = text[4:] if text.startswith("zoo:") else text
    body = body.strip()
    name, _, rest = body.replace(" ", ":", 1).partition(":")
    params = {}
    for item in rest.replace(" ", ",").split(","):
        item = item.strip()
        if not item:
            continue
        key, eq, val = item.partition("=")
        if not eq:
            raise ZooError(f"parameter {item!r} is not of the form key=value")
        params[key.strip()] = val.strip()
    return name, params


def resolve_params(entry: ZooEntry, params: dict) -> dict:
    known = dict(entry.params)
    unknown = set(params) - set(known)
    if unknown:
        raise ZooError(f"{entry.name} takes no parameter {sorted(unknown)[0]!r}; "
                       f"known: {sorted(known) or 'none'}")
    out = dict(known)
    out.update(params)
    return out


def canonical_name(name: str, params: dict | None = None) -> str:
    entry = ZOO.get(name)
    if entry is None:
        raise ZooError(f"unknown zoo object {name!r}")
    full = resolve_params(entry, {k: str(v) for k, v in (params or {}).items()})
    if not full:
        return name
    return name + ":" + ",".join(f"{k}={full[k]}" for k, _ in entry.params)


_BUILT: dict = {}


def zoo_build(name: str, **params):
    """Build (and cache) a zoo object by name; ``ZooError`` for unknown names or bad params."""
    if ":" in name or " " in name:
        name, more = parse_zoo_name(name)
        params = {**more, **params}
    entry = ZOO.get(name)
    if entry is None:
        raise ZooError(f"unknown zoo object {name!r}; see 'zoo list'")
    full = resolve_params(entry, {k: str(v) for k, v in params.items()})
    key = canonical_name(name, full)
    if key not in _BUILT:
        try:
            obj = entry.build(**full)
        except ZooError:
            raise
        except (ValueError, TypeError) as exc:
            raise ZooError(f"invalid parameters for {name}: {exc}") from exc
        _BUILT[key] = obj
        _REFS.setdefault(id(obj), key)
    return _BUILT[key]


_REFS: dict[int, str] = {}


def zoo_ref(obj) -> str | None:
    """Registry name of a Hopf algebra used as a YD base, if it came from the zoo."""
    ref = _REFS.get(id(obj))
    if ref is not None:
        return ref
    for n in range(1, 13):
        for F in (Field.rational(), root_field(n)):
            if group_algebra(n, F) is obj:
                f = "rational" if F.kind == "rational" else f"cyclotomic{F.n}"
                return canonical_name("group_algebra", {"n": n, "field": f})
    if obj is sweedler_h4():
        return "sweedler_h4"
    return None
