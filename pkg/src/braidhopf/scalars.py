"""Exact field arithmetic over Q and Q(zeta_n), plus sparse-backed exact matrices.

Elements of Q(zeta_n) are stored as coefficient vectors in Q[t]/(Phi_n) with
``deg Phi_n`` entries.  Rationals are ``gmpy2.mpq``.  Nothing in this module
ever touches a float.

Tensor convention used everywhere in the package: the basis of ``U (x) V`` is
enumerated with the ``V`` index fastest, so ``e_u (x) e_v`` has index
``u * dim V + v``.  A linear map ``U -> V`` is a ``dim V x dim U`` matrix whose
columns are the images of the basis vectors.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from gmpy2 import mpq


class FieldError(ValueError):
    """Raised on invalid field parameters or mixed field contexts."""


class ContextMismatch(FieldError):
    pass


def _to_mpq(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


# --- univariate polynomials over Q, coefficient lists low -> high -----------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = _trim([mpq(x) for x in a])
    b = _trim([mpq(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Phi_n as a tuple of mpq coefficients, lowest degree first.

    Obtained by dividing t^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise FieldError(f"cyclotomic order must be >= 1, got {n}")
    num = [mpq(-1)] + [mpq(0)] * (n - 1) + [mpq(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(num)


class Field:
    """Field context: ``Field.rational()`` or ``Field.cyclotomic(n)``."""

    __slots__ = ("kind", "n", "modulus", "degree", "_reduce", "zero", "one")

    def __init__(self, kind: str, n: int = 1):
        if kind == "rational":
            self.n = 1
            self.modulus = None
            self.degree = 1
            self._reduce = ()
        elif kind == "cyclotomic":
            if not isinstance(n, int) or n < 1:
                raise FieldError(f"invalid cyclotomic order {n!r}")
            self.n = n
            self.modulus = cyclotomic_polynomial(n)
            self.degree = len(self.modulus) - 1
            # t^j mod Phi_n for degree <= j < 2*degree - 1
            k = self.degree
            table = []
            for j in range(k, 2 * k - 1):
                _, r = _poly_divmod([mpq(0)] * j + [mpq(1)], self.modulus)
                table.append(tuple(r + [mpq(0)] * (k - len(r))))
            self._reduce = tuple(table)
        else:
            raise FieldError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.zero = Scalar(self, (mpq(0),) * self.degree)
        self.one = Scalar(self, (mpq(1),) + (mpq(0),) * (self.degree - 1))

    @classmethod
    def rational(cls) -> "Field":
        return _RATIONAL

    @classmethod
    def cyclotomic(cls, n: int) -> "Field":
        if not isinstance(n, int) or n < 1:
            raise FieldError(f"invalid cyclotomic order {n!r}")
        return _cyclotomic_cached(n)

    def __eq__(self, other):
        return isinstance(other, Field) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return "Field.rational()" if self.kind == "rational" else f"Field.cyclotomic({self.n})"

    @property
    def spec(self) -> str:
        return "rational" if self.kind == "rational" else f"cyclotomic {self.n}"

    def zeta(self) -> "Scalar":
        """The class of t, a primitive n-th root of unity."""
        if self.kind == "rational":
            raise FieldError("the rational field has no distinguished root of unity")
        if self.degree == 1:
            # Phi_1 = t - 1, Phi_2 = t + 1
            return self(-self.modulus[0])
        return Scalar(self, (mpq(0), mpq(1)) + (mpq(0),) * (self.degree - 2))

    def __call__(self, x) -> "Scalar":
        """Coerce ``x`` (int, Fraction, mpq, str, Scalar, coefficient list) into the field."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise ContextMismatch(f"scalar in {x.field!r} used in {self!r}")
            return x
        if isinstance(x, str):
            return parse_scalar(self, x)
        if isinstance(x, (list, tuple)):
            return self.from_coeffs(x)
        return Scalar(self, (_to_mpq(x),) + (mpq(0),) * (self.degree - 1))

    def from_coeffs(self, coeffs: Iterable) -> "Scalar":
        c = [_to_mpq(x) for x in coeffs]
        if self.kind == "rational":
            if len(c) != 1:
                raise FieldError("rational scalars take one coefficient")
            return Scalar(self, (c[0],))
        if len(c) > self.degree:
            _, c = _poly_divmod(c, self.modulus)
        return Scalar(self, tuple(c) + (mpq(0),) * (self.degree - len(c)))


@lru_cache(maxsize=None)
def _cyclotomic_cached(n: int) -> Field:
    return Field("cyclotomic", n)


def field_create(kind: str, n: int | None = None) -> Field:
    """Build a field context; ``kind`` is ``"rational"`` or ``"cyclotomic"``."""
    if kind == "rational":
        return Field.rational()
    if kind == "cyclotomic":
        if n is None:
            raise FieldError("cyclotomic field needs an order n")
        return Field.cyclotomic(n)
    raise FieldError(f"unknown field kind {kind!r}")


class Scalar:
    """Immutable exact element of a :class:`Field`."""

    __slots__ = ("field", "c")

    def __init__(self, field: Field, c: tuple):
        self.field = field
        self.c = c

    def _other(self, o) -> "Scalar | None":
        if isinstance(o, Scalar):
            if o.field is not self.field and o.field != self.field:
                raise ContextMismatch(f"{self.field!r} vs {o.field!r}")
            return o
        if isinstance(o, (int, Fraction)) or type(o) is type(mpq(0)):
            return self.field(o)
        return None

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        if self.field.degree == 1 or not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return Scalar(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return Scalar(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, o):
        return -self + o

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.c))

    def __mul__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        f = self.field
        if f.degree == 1:
            return Scalar(f, (self.c[0] * o.c[0],))
        k = f.degree
        prod = [mpq(0)] * (2 * k - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        out = prod[:k]
        for j, red in enumerate(f._reduce):
            v = prod[k + j]
            if v:
                for i in range(k):
                    out[i] += v * red[i]
        return Scalar(f, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if f.degree == 1:
            return Scalar(f, (1 / self.c[0],))
        # solve (multiplication-by-self) u = 1 in the power basis
        k = f.degree
        cols = []
        power = f.one
        t = Scalar(f, (mpq(0), mpq(1)) + (mpq(0),) * (k - 2))
        for _ in range(k):
            cols.append((self * power).c)
            power = power * t
        rows = [[cols[j][i] for j in range(k)] + [mpq(1 if i == 0 else 0)] for i in range(k)]
        sol = _dense_solve(rows, k)
        return Scalar(f, tuple(sol))

    def __truediv__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.field(o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        v = self.c[0]
        return Fraction(int(v.numerator), int(v.denominator))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, {self.field!r})"


def _dense_solve(rows: list[list], n: int) -> list:
    """Gauss-Jordan on an augmented n x (n+1) mpq system with a unique solution."""
    rows = [list(r) for r in rows]
    for col in range(n):
        piv = next(r for r in range(col, n) if rows[r][col])
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                fac = rows[r][col]
                rows[r] = [x - fac * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


_RATIONAL = Field("rational")


# --- textual scalars ---------------------------------------------------------

def _fmt_q(v: mpq) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical string: ``"3/2"`` for rationals, ``"1-2*z+z^2/3"``-style otherwise.

    Terms are in ascending powers of ``z`` (the class of t).
    """
    if s.field.degree == 1:
        return _fmt_q(s.c[0])
    terms = []
    for k, v in enumerate(s.c):
        if not v:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not mono:
            body = _fmt_q(abs(v))
        elif abs(v) == 1:
            body = mono
        elif v.denominator == 1:
            body = f"{abs(v.numerator)}*{mono}"
        else:
            body = f"{abs(v.numerator)}/{v.denominator}*{mono}"
        sign = "-" if v < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return out


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*)?\s*(z(?:\^(\d+))?)?\s*")


def parse_scalar(field: Field, text: str) -> Scalar:
    """Parse ``"3/2"``, ``"-z"``, ``"1+2*z-z^2/3"`` (the last form: coefficient may trail)."""
    src = text.strip()
    if not src:
        raise FieldError("empty scalar")
    pos = 0
    coeffs: dict[int, mpq] = {}
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise FieldError(f"cannot parse scalar {text!r} at offset {pos}")
        sign, num, star, zpart, power = m.groups()
        if not first and sign is None:
            raise FieldError(f"missing operator in scalar {text!r} at offset {pos}")
        if num is None and zpart is None:
            raise FieldError(f"empty term in scalar {text!r} at offset {pos}")
        if star and (num is None or zpart is None):
            raise FieldError(f"dangling '*' in scalar {text!r}")
        pos = m.end()
        coef = mpq(num) if num is not None else mpq(1)
        deg = 0
        if zpart is not None:
            if field.kind == "rational":
                raise FieldError(f"'z' not available in the rational field: {text!r}")
            deg = int(power) if power else 1
            if src.startswith("/", pos):
                tail = re.match(r"/\s*(\d+)\s*", src[pos + 1:])
                if not tail:
                    raise FieldError(f"bad divisor in scalar {text!r}")
                coef = coef / int(tail.group(1))
                pos += 1 + tail.end()
        if sign == "-":
            coef = -coef
        coeffs[deg] = coeffs.get(deg, mpq(0)) + coef
        first = False
    top = max(coeffs)
    vec = [coeffs.get(i, mpq(0)) for i in range(top + 1)]
    return field.from_coeffs(vec)


# --- matrices ----------------------------------------------------------------

class Matrix:
    """Immutable exact matrix over one :class:`Field`.

    Storage is column-sparse (``{col: {row: Scalar}}`` with zeros pruned); the
    semantics are those of a dense ``rows x cols`` array.  Structure-constant
    maps on iterated tensor powers are overwhelmingly sparse, which is what
    keeps the braided identity checks cheap.
    """

    __slots__ = ("field", "rows", "cols", "_c")

    def __init__(self, field: Field, rows: int, cols: int, data: dict | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.field = field
        self.rows = rows
        self.cols = cols
        self._c = data if data is not None else {}

    # construction
    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one = field.one
        return cls(field, n, n, {j: {j: one} for j in range(n)})

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence]) -> "Matrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        data: dict = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                s = field(v)
                if s:
                    data.setdefault(j, {})[i] = s
        return cls(field, nr, nc, data)

    @classmethod
    def from_entries(cls, field: Field, rows: int, cols: int, entries) -> "Matrix":
        """Entries as a mapping or iterable of ``((i, j), value)``; repeated keys add."""
        items = entries.items() if hasattr(entries, "items") else entries
        data: dict = {}
        for (i, j), v in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            s = field(v)
            col = data.setdefault(j, {})
            col[i] = col[i] + s if i in col else s
        for j in list(data):
            col = {i: v for i, v in data[j].items() if v}
            if col:
                data[j] = col
            else:
                del data[j]
        return cls(field, rows, cols, data)

    @classmethod
    def column(cls, field: Field, values: Sequence) -> "Matrix":
        return cls.from_rows(field, [[v] for v in values]) if values else cls(field, 0, 1)

    @classmethod
    def row(cls, field: Field, values: Sequence) -> "Matrix":
        return cls.from_rows(field, [list(values)]) if values else cls(field, 1, 0)

    @classmethod
    def from_columns(cls, field: Field, rows: int, columns: Sequence[dict]) -> "Matrix":
        data = {j: dict(c) for j, c in enumerate(columns) if c}
        return cls(field, rows, len(columns), data)

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key) -> Scalar:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._c.get(j, {}).get(i, self.field.zero)

    def col(self, j: int) -> dict:
        """Sparse column ``{row: Scalar}`` (do not mutate)."""
        return self._c.get(j, {})

    def to_rows(self) -> list[list[Scalar]]:
        z = self.field.zero
        out = [[z] * self.cols for _ in range(self.rows)]
        for j, col in self._c.items():
            for i, v in col.items():
                out[i][j] = v
        return out

    def row_dicts(self) -> list[dict]:
        out: list[dict] = [{} for _ in range(self.rows)]
        for j, col in self._c.items():
            for i, v in col.items():
                out[i][j] = v
        return out

    def entries(self):
        """Nonzero entries as ``((i, j), Scalar)`` sorted by (i, j)."""
        items = [((i, j), v) for j, col in self._c.items() for i, v in col.items()]
        items.sort(key=lambda t: t[0])
        return items

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._c.values())

    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise ContextMismatch(f"{self.field!r} vs {other.field!r}")

    # arithmetic
    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        data = {}
        mine = self._c
        for j, bcol in other._c.items():
            acc: dict = {}
            for k, b in bcol.items():
                acol = mine.get(k)
                if not acol:
                    continue
                for i, a in acol.items():
                    v = a * b
                    if i in acc:
                        acc[i] = acc[i] + v
                    else:
                        acc[i] = v
            acc = {i: v for i, v in acc.items() if v}
            if acc:
                data[j] = acc
        return Matrix(self.field, self.rows, other.cols, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        data = {j: dict(c) for j, c in self._c.items()}
        for j, col in other._c.items():
            tgt = data.setdefault(j, {})
            for i, v in col.items():
                tgt[i] = tgt[i] + v if i in tgt else v
        return Matrix(self.field, self.rows, self.cols, _prune(data))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols,
                      {j: {i: -v for i, v in c.items()} for j, c in self._c.items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, s) -> "Matrix":
        s = self.field(s)
        if not s:
            return Matrix(self.field, self.rows, self.cols)
        return Matrix(self.field, self.rows, self.cols,
                      {j: {i: v * s for i, v in c.items()} for j, c in self._c.items()})

    def __mul__(self, s):
        if isinstance(s, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(s)

    __rmul__ = __mul__

    @property
    def T(self) -> "Matrix":
        data: dict = {}
        for j, col in self._c.items():
            for i, v in col.items():
                data.setdefault(i, {})[j] = v
        return Matrix(self.field, self.cols, self.rows, data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._c == other._c)

    __hash__ = None

    def is_zero(self) -> bool:
        return not self._c

    def first_difference(self, other: "Matrix") -> tuple[int, int] | None:
        """Smallest (col, row)-ordered position where ``self`` and ``other`` differ."""
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        for j in sorted(set(self._c) | set(other._c)):
            a, b = self._c.get(j, {}), other._c.get(j, {})
            if a != b:
                for i in sorted(set(a) | set(b)):
                    if a.get(i) != b.get(i):
                        return (i, j)
        return None

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        data = {}
        for new, old in enumerate(idx):
            c = self._c.get(old)
            if c:
                data[new] = c
        return Matrix(self.field, self.rows, len(idx), data)

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        pos = {old: new for new, old in enumerate(idx)}
        data = {}
        for j, c in self._c.items():
            nc = {pos[i]: v for i, v in c.items() if i in pos}
            if nc:
                data[j] = nc
        return Matrix(self.field, len(idx), self.cols, data)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        data = dict(self._c)
        for j, c in other._c.items():
            data[self.cols + j] = c
        return Matrix(self.field, self.rows, self.cols + other.cols, data)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        data = {j: dict(c) for j, c in self._c.items()}
        for j, c in other._c.items():
            tgt = data.setdefault(j, {})
            for i, v in c.items():
                tgt[self.rows + i] = v
        return Matrix(self.field, self.rows + other.rows, self.cols, data)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz}, {self.field!r})"

    def pretty(self) -> str:
        return "\n".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.to_rows())


def _prune(data: dict) -> dict:
    out = {}
    for j, col in data.items():
        c = {i: v for i, v in col.items() if v}
        if c:
            out[j] = c
    return out


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Kronecker product; ``(A (x) B)(x (x) y) = A x (x) B y`` with the second factor fastest."""
    A._check(B)
    data = {}
    br, bc = B.rows, B.cols
    for u, acol in A._c.items():
        for v, bcol in B._c.items():
            col = {}
            for i, a in acol.items():
                base = i * br
                for k, b in bcol.items():
                    col[base + k] = a * b
            data[u * bc + v] = col
    return Matrix(A.field, A.rows * br, A.cols * bc, data)


def kron_all(*ms: Matrix) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = kron(out, m)
    return out


# --- exact elimination -------------------------------------------------------

def rref_rows(rows: Iterable[dict], field: Field) -> dict[int, dict]:
    """Reduced row echelon form of sparse rows; returns ``{pivot_col: row}``.

    Each returned row has a 1 at its pivot, which is also its leftmost entry,
    and zeros in every other pivot column.
    """
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        hits = [c for c in r if c in pivots]
        for c in hits:
            f = r.get(c)
            if not f:
                continue
            for k, v in pivots[c].items():
                nv = r[k] - f * v if k in r else -(f * v)
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        p = min(r)
        inv = r[p].inverse()
        r = {k: v * inv for k, v in r.items()}
        for c, prow in pivots.items():
            f = prow.get(p)
            if f:
                for k, v in r.items():
                    nv = prow[k] - f * v if k in prow else -(f * v)
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[p] = r
    return dict(sorted(pivots.items()))


def rank(M: Matrix) -> int:
    return len(rref_rows(M.row_dicts(), M.field))


def kernel(M: Matrix) -> Matrix:
    """Right nullspace basis as columns, in reduced column echelon form.

    Column ``j`` has its leading (topmost) nonzero equal to 1, leading rows
    strictly increase with ``j``, and every leading row is zero in the other
    columns.  The output is therefore a canonical function of the subspace.
    """
    F = M.field
    piv = rref_rows(M.row_dicts(), F)
    free = [c for c in range(M.cols) if c not in piv]
    vecs = []
    for f in free:
        v = {f: F.one}
        for p, row in piv.items():
            x = row.get(f)
            if x:
                v[p] = -x
        vecs.append(v)
    return canonical_basis(F, M.cols, vecs)


def canonical_basis(field: Field, dim: int, vectors: Iterable[dict]) -> Matrix:
    """Reduced column echelon basis of the span of sparse vectors ``{index: Scalar}``."""
    piv = rref_rows(vectors, field)
    return Matrix.from_columns(field, dim, list(piv.values()))


def column_space(M: Matrix) -> Matrix:
    return canonical_basis(M.field, M.rows, [M.col(j) for j in range(M.cols)])


def solve(A: Matrix, B: Matrix) -> Matrix | None:
    """Some ``X`` with ``A @ X == B``, or ``None`` when the system is inconsistent."""
    A._check(B)
    if A.rows != B.rows:
        raise ValueError(f"shape mismatch: A is {A.shape}, b is {B.shape}")
    n = A.cols
    aug = A.hstack(B)
    piv = rref_rows(aug.row_dicts(), A.field)
    if any(p >= n for p in piv):
        return None
    data: dict = {}
    for p, row in piv.items():
        for k, v in row.items():
            if k >= n:
                data.setdefault(k - n, {})[p] = v
    return Matrix(A.field, n, B.cols, data)


def inverse(M: Matrix) -> Matrix | None:
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    X = solve(M, Matrix.identity(M.field, M.rows))
    if X is None or rank(M) < M.rows:
        return None
    return X


def same_span(A: Matrix, B: Matrix) -> bool:
    return column_space(A) == column_space(B)


def contains_span(A: Matrix, B: Matrix) -> bool:
    """True iff every column of ``B`` lies in the column span of ``A``."""
    return rank(A.hstack(B)) == rank(A)


def intersect(A: Matrix, B: Matrix) -> Matrix:
    """Basis (canonical) of col(A) intersected with col(B)."""
    K = kernel(A.hstack(-B))
    top = K.select_rows(list(range(A.cols)))
    return column_space(A @ top)


# --- tensor plumbing ---------------------------------------------------------

def flip(field: Field, du: int, dv: int) -> Matrix:
    """tau: U (x) V -> V (x) U."""
    one = field.one
    data = {u * dv + v: {v * du + u: one} for u in range(du) for v in range(dv)}
    return Matrix(field, du * dv, du * dv, data)


def permute_factors(field: Field, dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Reorder tensor factors: output factor ``k`` is input factor ``perm[k]``."""
    dims = list(dims)
    n = len(dims)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation: {perm}")
    out_dims = [dims[p] for p in perm]
    total = 1
    for d in dims:
        total *= d
    in_strides = [1] * n
    for i in range(n - 2, -1, -1):
        in_strides[i] = in_strides[i + 1] * dims[i + 1]
    one = field.one
    data = {}
    out_strides = [1] * n
    for i in range(n - 2, -1, -1):
        out_strides[i] = out_strides[i + 1] * out_dims[i + 1]
    for idx in range(total):
        rem = idx
        digits = []
        for s in in_strides:
            digits.append(rem // s)
            rem %= s
        o = 0
        for k, p in enumerate(perm):
            o += digits[p] * out_strides[k]
        data[idx] = {o: one}
    return Matrix(field, total, total, data)


def decode_index(idx: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        out.append(idx % d)
        idx //= d
    return tuple(reversed(out))


def pairing(field: Field, d: int) -> Matrix:
    """Evaluation ``V* (x) V -> k`` in the dual basis: a 1 x d^2 row."""
    one = field.one
    return Matrix(field, 1, d * d, {i * d + i: {0: one} for i in range(d)})


def curry(X: Matrix, da: int, dh: int) -> Matrix:
    """Turn a functional ``A (x) H -> k`` into the map ``A -> H*`` (dual basis)."""
    if X.rows != 1 or X.cols != da * dh:
        raise ValueError(f"expected a 1 x {da * dh} functional, got {X.shape}")
    data: dict = {}
    for j, col in X._c.items():
        a, h = divmod(j, dh)
        data.setdefault(a, {})[h] = col[0]
    return Matrix(X.field, dh, da, data)


def ident(field: Field, n: int) -> Matrix:
    return Matrix.identity(field, n)
