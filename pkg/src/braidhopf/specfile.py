"""Line-oriented structure-constant files.

A file is a sequence of ``key: value`` lines.  Tensor keys take no inline value
and are followed by indented entry lines of integer indices and one exact scalar::

    kind: hopf
    name: sweedler_h4
    field: rational
    basis: 1 g x gx
    backend: trivial
    mult:
      0 0 0 1          # e_0 e_0 = 1 * e_0
    ...

Entry layouts (``d`` = basis size, ``b`` indexes the YD base):

==============  ===============  =====================================
key             entry            meaning
==============  ===============  =====================================
``mult``        ``i j k v``      ``e_i e_j`` has ``v`` on ``e_k``
``unit``        ``k v``          ``1`` has ``v`` on ``e_k``
``comult``      ``k i j v``      ``Delta(e_k)`` has ``v`` on ``e_i (x) e_j``
``counit``      ``i v``          ``eps(e_i) = v``
``antipode``    ``i k v``        ``S(e_i)`` has ``v`` on ``e_k``
``yd_action``   ``b m k v``      ``b . e_m`` has ``v`` on ``e_k``
``yd_coaction`` ``m b k v``      ``e_m`` coacts with ``v`` on ``b (x) e_k``
==============  ===============  =====================================

``backend`` is ``trivial``, ``diagonal q=<scalar> degrees=<a,b,..> [modulus=<n>]``
or ``yd base=<zoo reference>``.  ``#`` starts a comment.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .braidedcat import DiagonalObject, YDModule, yd_check
from .braidedhopf import BraidedHopf
from .gradedengine import GradedBraidedHopf
from .hopfcore import (FinDimAlgebra, FinDimBialgebra, FinDimCoalgebra, FinDimHopf,
                       compute_antipode)
from .scalars import Field, FieldError, Matrix, Scalar, format_scalar, parse_scalar

KINDS = ("hopf", "bialgebra", "braided", "graded", "yd_module")
SCALAR_KEYS = ("kind", "name", "field", "basis", "backend", "cap")
TENSOR_KEYS = ("mult", "unit", "comult", "counit", "antipode", "yd_action", "yd_coaction")
ARITY = {"mult": 3, "unit": 1, "comult": 3, "counit": 1, "antipode": 2,
         "yd_action": 3, "yd_coaction": 3}
REQUIRED = {
    "hopf": ("mult", "unit", "comult", "counit"),
    "bialgebra": ("mult", "unit", "comult", "counit"),
    "braided": ("mult", "unit", "comult", "counit"),
    "graded": ("mult", "unit", "comult", "counit", "antipode"),
    "yd_module": ("yd_action", "yd_coaction"),
}


class SpecParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass
class Backend:
    kind: str = "trivial"            # trivial | diagonal | yd
    q: Scalar | None = None
    degrees: tuple[int, ...] = ()
    modulus: int | None = None
    base: str = ""


@dataclass
class AlgebraSpec:
    kind: str
    field: Field
    labels: tuple[str, ...]
    name: str = ""
    backend: Backend = dc_field(default_factory=Backend)
    cap: int | None = None
    tensors: dict = dc_field(default_factory=dict)   # key -> list of (indices, Scalar)


# --- parsing ---------------------------------------------------------------------

def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _tokens(text: str, offset: int):
    """Whitespace-separated tokens with 1-based columns."""
    out, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((text[i:j], offset + i + 1))
        i = j
    return out


def _parse_backend(value: str, field: Field | None, lineno: int, col: int) -> Backend:
    toks = _tokens(value, col - 1)
    if not toks:
        raise SpecParseError("empty backend", lineno, col)
    kind = toks[0][0]
    if kind not in ("trivial", "diagonal", "yd"):
        raise SpecParseError(f"unknown backend {kind!r}", lineno, toks[0][1])
    be = Backend(kind)
    allowed = {"trivial": set(), "diagonal": {"q", "degrees", "modulus"}, "yd": {"base"}}[kind]
    seen = set()
    for tok, c in toks[1:]:
        key, eq, val = tok.partition("=")
        if not eq or key not in allowed:
            raise SpecParseError(f"unknown backend option {tok!r}", lineno, c)
        if key in seen:
            raise SpecParseError(f"duplicate backend option {key!r}", lineno, c)
        seen.add(key)
        try:
            if key == "q":
                if field is None:
                    raise SpecParseError("field must be declared before backend", lineno, c)
                be.q = parse_scalar(field, val)
            elif key == "degrees":
                be.degrees = tuple(int(a) for a in val.split(",")) if val else ()
            elif key == "modulus":
                be.modulus = int(val)
            else:
                be.base = val
        except FieldError as exc:
            raise SpecParseError(str(exc), lineno, c + len(key) + 1) from exc
        except ValueError as exc:
            if isinstance(exc, SpecParseError):
                raise
            raise SpecParseError(f"bad value for {key}: {val!r}", lineno, c + len(key) + 1) from exc
    if kind == "diagonal" and (be.q is None or "degrees" not in seen):
        raise SpecParseError("diagonal backend needs q= and degrees=", lineno, col)
    if kind == "yd" and not be.base:
        raise SpecParseError("yd backend needs base=", lineno, col)
    return be


def parse_spec_text(text: str) -> AlgebraSpec:
    """Parse a spec document; raises :class:`SpecParseError` with line and column."""
    values: dict = {}
    where: dict = {}
    tensors: dict = {}
    current = None
    field: Field | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        if line[0].isspace():
            if current is None:
                raise SpecParseError("entry line outside a tensor block", lineno,
                                     len(line) - len(line.lstrip()) + 1)
            if field is None:
                raise SpecParseError("field must be declared before tensors", lineno, 1)
            toks = _tokens(line, 0)
            n = ARITY[current]
            if len(toks) != n + 1:
                raise SpecParseError(f"{current} entries take {n} indices and a value, "
                                     f"got {len(toks)} tokens", lineno, toks[0][1])
            idx = []
            for tok, c in toks[:n]:
                try:
                    v = int(tok)
                except ValueError:
                    raise SpecParseError(f"index {tok!r} is not an integer", lineno, c) from None
                if v < 0:
                    raise SpecParseError(f"negative index {v}", lineno, c)
                idx.append((v, c))
            tok, c = toks[n]
            try:
                val = parse_scalar(field, tok)
            except FieldError as exc:
                raise SpecParseError(str(exc), lineno, c) from exc
            tensors[current].append((tuple(idx), val, lineno))
            continue
        key, colon, rest = line.partition(":")
        key = key.strip()
        if not colon:
            raise SpecParseError(f"expected 'key: value', got {line.strip()!r}", lineno, 1)
        if key not in SCALAR_KEYS and key not in TENSOR_KEYS:
            raise SpecParseError(f"unknown key {key!r}", lineno, 1)
        if key in values or key in tensors:
            raise SpecParseError(f"duplicate key {key!r}", lineno, 1)
        vcol = len(key) + 2 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        if key in TENSOR_KEYS:
            if rest:
                raise SpecParseError(f"{key} takes entry lines, not an inline value", lineno, vcol)
            tensors[key] = []
            current = key
            continue
        current = None
        where[key] = (lineno, vcol)
        if key == "field":
            parts = rest.split()
            try:
                if parts == ["rational"]:
                    field = Field.rational()
                elif len(parts) == 2 and parts[0] == "cyclotomic":
                    field = Field.cyclotomic(int(parts[1]))
                else:
                    raise SpecParseError(f"field must be 'rational' or 'cyclotomic <n>', got {rest!r}",
                                         lineno, vcol)
            except (ValueError, FieldError) as exc:
                if isinstance(exc, SpecParseError):
                    raise
                raise SpecParseError(f"bad field {rest!r}", lineno, vcol) from exc
            values[key] = field
        elif key == "backend":
            values[key] = _parse_backend(rest, field, lineno, vcol)
        elif key == "cap":
            try:
                values[key] = int(rest)
            except ValueError:
                raise SpecParseError(f"cap must be an integer, got {rest!r}", lineno, vcol) from None
        elif key == "basis":
            values[key] = tuple(rest.split())
        else:
            values[key] = rest
    for key in ("kind", "field", "basis"):
        if key not in values:
            raise SpecParseError(f"missing required key {key!r}")
    kind = values["kind"]
    if kind not in KINDS:
        raise SpecParseError(f"unknown kind {kind!r}", *where["kind"])
    for key in REQUIRED[kind]:
        if key not in tensors:
            raise SpecParseError(f"kind {kind} requires a {key} block")
    labels = values["basis"]
    if not labels:
        raise SpecParseError("empty basis", *where["basis"])
    backend = values.get("backend", Backend())
    if kind in ("braided", "graded", "yd_module") and "backend" not in values:
        raise SpecParseError(f"kind {kind} requires a backend")
    if kind == "graded" and "cap" not in values:
        raise SpecParseError("kind graded requires a cap")
    spec = AlgebraSpec(kind, values["field"], labels, values.get("name", ""), backend,
                       values.get("cap"), {})
    spec.tensors = tensors
    return spec


def _bounds(spec: AlgebraSpec, key: str, base_dim: int) -> list[int]:
    d = len(spec.labels)
    return {"mult": [d, d, d], "unit": [d], "comult": [d, d, d], "counit": [d],
            "antipode": [d, d], "yd_action": [base_dim, d, d],
            "yd_coaction": [d, base_dim, d]}[key]


def _assemble(spec: AlgebraSpec, key: str, base_dim: int = 0) -> Matrix:
    F, d = spec.field, len(spec.labels)
    shapes = {"mult": (d, d * d), "unit": (d, 1), "comult": (d * d, d), "counit": (1, d),
              "antipode": (d, d), "yd_action": (d, base_dim * d),
              "yd_coaction": (base_dim * d, d)}
    bounds = _bounds(spec, key, base_dim)
    entries = {}
    for idx, val, lineno in spec.tensors.get(key, []):
        for (v, c), top in zip(idx, bounds):
            if v >= top:
                raise SpecParseError(f"index {v} out of range for {key} (size {top})", lineno, c)
        ix = [v for v, _ in idx]
        if key == "mult":
            pos = (ix[2], ix[0] * d + ix[1])
        elif key == "unit":
            pos = (ix[0], 0)
        elif key == "comult":
            pos = (ix[1] * d + ix[2], ix[0])
        elif key == "counit":
            pos = (0, ix[0])
        elif key == "antipode":
            pos = (ix[1], ix[0])
        elif key == "yd_action":
            pos = (ix[2], ix[0] * d + ix[1])
        else:
            pos = (ix[1] * d + ix[2], ix[0])
        if pos in entries:
            raise SpecParseError(f"repeated {key} entry {ix}", lineno, idx[0][1])
        entries[pos] = val
    return Matrix.from_entries(F, *shapes[key], entries.items())


def build(spec: AlgebraSpec):
    """Construct the object a spec describes.  Shapes, indices and the YD base are validated
    here; algebraic axioms are left to the verification suites."""
    from .zoo import ZooError, zoo_build

    F = spec.field
    labels = spec.labels
    d = len(labels)
    be = spec.backend
    base = None
    if be.kind == "yd":
        try:
            base = zoo_build(be.base)
        except ZooError as exc:
            raise SpecParseError(f"bad YD base: {exc}") from exc
        if not isinstance(base, FinDimHopf):
            raise SpecParseError(f"YD base {be.base!r} is not an ordinary Hopf algebra")
        if base.field != F:
            raise SpecParseError(f"YD base lives over {base.field.spec}, spec over {F.spec}")
    if be.kind == "diagonal":
        if len(be.degrees) != d:
            raise SpecParseError(f"{len(be.degrees)} degrees for a basis of size {d}")
    if spec.kind == "yd_module":
        if base is None:
            raise SpecParseError("yd_module needs a yd backend")
        return YDModule(base, _assemble(spec, "yd_action", base.dim),
                        _assemble(spec, "yd_coaction", base.dim), labels)
    m, eta = _assemble(spec, "mult"), _assemble(spec, "unit")
    delta, eps = _assemble(spec, "comult"), _assemble(spec, "counit")
    alg = FinDimAlgebra(F, m, eta, labels)
    coalg = FinDimCoalgebra(F, delta, eps, labels)
    if spec.kind == "bialgebra":
        return FinDimBialgebra(alg, coalg, spec.name)
    S = _assemble(spec, "antipode") if "antipode" in spec.tensors else None
    if S is None:
        S = compute_antipode(alg, coalg)
        if S is None:
            raise SpecParseError("no antipode given and none exists; use kind: bialgebra")
    H = FinDimHopf(alg, coalg, S, spec.name)
    if spec.kind == "hopf":
        return H
    if spec.kind == "graded":
        if be.kind != "diagonal" or be.degrees != tuple(range(d)):
            raise SpecParseError("graded objects use a diagonal backend with degrees 0..top")
        return GradedBraidedHopf(F, be.q, d - 1, spec.cap, m, eta, delta, eps, S, spec.name)
    if be.kind == "trivial":
        from .braidedcat import trivial_object
        carrier = trivial_object(F, d, labels)
    elif be.kind == "diagonal":
        carrier = DiagonalObject(F, be.degrees, be.q, be.modulus, labels)
    else:
        if "yd_action" not in spec.tensors or "yd_coaction" not in spec.tensors:
            raise SpecParseError("yd backend needs yd_action and yd_coaction blocks")
        carrier = YDModule(base, _assemble(spec, "yd_action", base.dim),
                           _assemble(spec, "yd_coaction", base.dim), labels)
        rep = yd_check(carrier)
        if not rep.ok:
            bad = rep.failures()[0]
            raise SpecParseError(f"carrier is not a YD module: {bad.name} {bad.witness}")
    return BraidedHopf(carrier, H, spec.name)


def load_spec(path) -> object:
    return build(parse_spec_text(Path(path).read_text()))


# --- serialization -----------------------------------------------------------------

def _entries(key: str, M: Matrix, d: int) -> list[tuple[tuple[int, ...], Scalar]]:
    out = []
    for (r, c), v in M.entries():
        if key == "mult":
            i, j = divmod(c, d)
            idx = (i, j, r)
        elif key == "unit":
            idx = (r,)
        elif key == "comult":
            i, j = divmod(r, d)
            idx = (c, i, j)
        elif key == "counit":
            idx = (c,)
        elif key == "antipode":
            idx = (c, r)
        elif key == "yd_action":
            b, m = divmod(c, d)
            idx = (b, m, r)
        else:
            b, k = divmod(r, d)
            idx = (c, b, k)
        out.append((idx, v))
    return sorted(out, key=lambda e: e[0])


def _block(key: str, M: Matrix, d: int) -> list[str]:
    lines = [f"{key}:"]
    for idx, v in _entries(key, M, d):
        lines.append("  " + " ".join(str(i) for i in idx) + " " + format_scalar(v))
    return lines


def serialize(obj, name: str = "") -> str:
    """Canonical text for a zoo object; ``parse_spec_text`` inverts it exactly."""
    from .zoo import zoo_ref

    lines: list[str] = []

    def head(kind, F, labels, nm):
        lines.extend([f"kind: {kind}"] + ([f"name: {nm}"] if nm else []) +
                     [f"field: {F.spec}", "basis: " + " ".join(labels)])

    def maps(H, with_antipode=True):
        d = H.dim
        for key, M in (("mult", H.m), ("unit", H.eta), ("comult", H.delta), ("counit", H.eps)):
            lines.extend(_block(key, M, d))
        if with_antipode:
            lines.extend(_block("antipode", H.S, d))

    def yd_backend(X: YDModule):
        ref = zoo_ref(X.base)
        if ref is None:
            raise ValueError("YD base is not a zoo object and cannot be referenced")
        lines.append(f"backend: yd base=zoo:{ref}")

    if isinstance(obj, YDModule):
        head("yd_module", obj.field, obj.labels, name)
        yd_backend(obj)
        lines.extend(_block("yd_action", obj.action, obj.dim))
        lines.extend(_block("yd_coaction", obj.coaction, obj.dim))
    elif isinstance(obj, GradedBraidedHopf):
        head("graded", obj.field, obj.labels, name or obj.name)
        lines.append(f"backend: diagonal q={format_scalar(obj.q)} "
                     f"degrees={','.join(map(str, obj.degrees))}")
        lines.append(f"cap: {obj.cap}")
        maps(obj)
    elif isinstance(obj, BraidedHopf):
        X = obj.carrier
        head("braided", obj.field, obj.labels, name or obj.name)
        if isinstance(X, YDModule):
            yd_backend(X)
        elif X.q == X.field.one and all(a == 0 for a in X.degrees) and X.modulus is None:
            lines.append("backend: trivial")
        else:
            mod = f" modulus={X.modulus}" if X.modulus else ""
            lines.append(f"backend: diagonal q={format_scalar(X.q)} "
                         f"degrees={','.join(map(str, X.degrees))}{mod}")
        maps(obj.hopf)
        if isinstance(X, YDModule):
            lines.extend(_block("yd_action", X.action, X.dim))
            lines.extend(_block("yd_coaction", X.coaction, X.dim))
    elif isinstance(obj, FinDimHopf):
        head("hopf", obj.field, obj.labels, name or obj.name)
        lines.append("backend: trivial")
        maps(obj)
    elif isinstance(obj, FinDimBialgebra):
        head("bialgebra", obj.field, obj.labels, name or obj.name)
        lines.append("backend: trivial")
        maps(obj, with_antipode=False)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
