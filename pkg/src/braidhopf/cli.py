"""Command-line front end and report assembly.

    braidhopf check <file|zoo:name> [--suite S ...] [--out report.json]
    braidhopf zoo list
    braidhopf zoo dump <name> --out <file>

Relative ``--out`` paths land in ``$BRAIDHOPF_OUT_DIR`` when it is set.
Exit status: 0 when every check passes, 1 when any fails, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .bosonization import bosonize, braided_integrals_on, integrals_on, restrict_integral
from .braidedcat import (DiagonalObject, YDModule, braiding, check_braid_equation, dual_yd, evaluation,
                         is_morphism, tensor, unit_object, yd_check, yd_tensor)
from .braidedhopf import (BraidedHopf, build_quasidual, braided_maschke, check_braided_bialgebra,
                          check_hopf_module, integral_uniqueness_check, rational_part,
                          structure_theorem_iso)
from .gradedengine import (GradedBraidedHopf, as_graded, capped_dual_integrals,
                           capped_integral_search, check_capped_axioms, gaussian_recurrence_holds,
                           graded_dual, stable_rational_part)
from .hopfcore import (FinDimBialgebra, FinDimHopf, check_bialgebra, check_hopf, compute_antipode,
                       left_integrals_in)
from .report import ConstructionError, PreconditionError, VerificationReport
from .scalars import Matrix, format_scalar, ident, kron, kron_all, same_span
from .specfile import SpecParseError, digest, parse_spec_text, build, serialize
from .zoo import ZooError, canonical_name, parse_zoo_name, zoo_build, zoo_list

SUITES = ("axioms", "quasidual", "hopfmodule", "structure", "integrals", "maschke",
          "bosonization", "graded")
OUT_DIR_ENV = "BRAIDHOPF_OUT_DIR"


class UsageError(ValueError):
    pass


def basis_strings(M: Matrix, labels) -> list[dict]:
    """Columns of ``M`` as ``{label: exact scalar}`` dicts (nonzero entries only)."""
    out = []
    for j in range(M.cols):
        col = M.col(j)
        out.append({labels[i]: format_scalar(col[i]) for i in sorted(col)})
    return out


@dataclass
class Subject:
    obj: object
    source: str
    digest: str
    kind: str
    name: str


@dataclass
class Report:
    subject: Subject
    suites: tuple[str, ...]
    checks: list[dict] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            out[c["status"]] += 1
        return out

    def take(self, suite: str, rep: VerificationReport, prefix: str = ""):
        for c in rep.checks:
            d = c.as_dict()
            d["name"] = prefix + d["name"]
            d["suite"] = suite
            self.checks.append(d)
        if rep.data:
            self.data.setdefault(suite, {}).update({prefix + k: v for k, v in rep.data.items()})

    def skip(self, suite: str, name: str, reason: str):
        self.checks.append({"suite": suite, "name": name, "status": "skip", "detail": reason,
                            "time_s": 0.0})

    def fail(self, suite: str, name: str, witness, detail: str = ""):
        d = {"suite": suite, "name": name, "status": "fail", "witness": witness, "time_s": 0.0}
        if detail:
            d["detail"] = detail
        self.checks.append(d)

    def as_dict(self) -> dict:
        s = self.subject
        return {
            "tool": "braidhopf",
            "version": __version__,
            "input": {"source": s.source, "digest": "sha256:" + s.digest, "kind": s.kind,
                      "name": s.name},
            "suites": list(self.suites),
            "ok": self.ok,
            "counts": self.counts(),
            "checks": self.checks,
            "data": self.data,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=str) + "\n"


def strip_timing(obj):
    """Copy of a report dict with every ``time_s`` field removed."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k != "time_s"}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def _kind(obj) -> str:
    if isinstance(obj, GradedBraidedHopf):
        return "graded"
    if isinstance(obj, BraidedHopf):
        return "braided"
    if isinstance(obj, FinDimHopf):
        return "hopf"
    if isinstance(obj, FinDimBialgebra):
        return "bialgebra"
    if isinstance(obj, YDModule):
        return "yd_module"
    raise TypeError(f"unsupported object {type(obj).__name__}")


def load_subject(target) -> Subject:
    """Resolve ``zoo:<name>``, a bare zoo name, a spec file path, or an already built object."""
    if not isinstance(target, str):
        text = serialize(target)
        return Subject(target, "object", digest(text), _kind(target), getattr(target, "name", ""))
    path = Path(target)
    if not target.startswith("zoo:") and path.is_file():
        raw = path.read_bytes()
        spec = parse_spec_text(raw.decode())
        obj = build(spec)
        return Subject(obj, str(target), hashlib.sha256(raw).hexdigest(), spec.kind,
                       spec.name or path.stem)
    name, params = parse_zoo_name(target)
    canon = canonical_name(name, params)
    obj = zoo_build(name, **params)
    return Subject(obj, "zoo:" + canon, digest(serialize(obj, canon)), _kind(obj), canon)


# --- suites ------------------------------------------------------------------------

def _braided(obj) -> BraidedHopf | None:
    if isinstance(obj, BraidedHopf):
        return obj
    if isinstance(obj, FinDimHopf):
        return BraidedHopf.ordinary(obj)
    return None


def suite_axioms(R: Report, obj):
    if isinstance(obj, FinDimHopf):
        R.take("axioms", check_hopf(obj))
    elif isinstance(obj, FinDimBialgebra):
        R.take("axioms", check_bialgebra(obj))
        R.data.setdefault("axioms", {})["has_antipode"] = (
            compute_antipode(obj.algebra, obj.coalgebra) is not None)
    elif isinstance(obj, GradedBraidedHopf):
        R.take("axioms", check_capped_axioms(obj))
    elif isinstance(obj, BraidedHopf):
        R.take("axioms", check_braided_bialgebra(obj))
    elif isinstance(obj, YDModule):
        R.take("axioms", yd_check(obj), "module: ")
        D = dual_yd(obj)
        R.take("axioms", yd_check(D), "dual: ")
        rep = VerificationReport("evaluation")
        ok, w = is_morphism(evaluation(obj), tensor(D, obj), unit_object(obj))
        rep.add("evaluation is a morphism", ok, w)
        rep.add("braid equation on M", check_braid_equation(obj))
        rep.add("braid equation on M (x) M*", check_braid_equation(yd_tensor(obj, D)))
        R.take("axioms", rep)


def suite_quasidual(R: Report, obj):
    H = _braided(obj)
    if isinstance(obj, GradedBraidedHopf):
        try:
            Dl = graded_dual(obj)
        except ConstructionError as exc:
            R.fail("quasidual", "capped dual construction", exc.witness, str(exc))
            return
        F, n = obj.field, obj.dim
        I = ident(F, n)
        C_DH = braiding(Dl.obj, obj.carrier)
        rep = VerificationReport("graded dual")
        rep.equal("pairing turns product into coproduct", Dl.pair @ kron(Dl.mult, I),
                  kron(Dl.pair, Dl.pair) @ kron_all(I, C_DH, I) @ kron_all(I, I, obj.delta))
        rep.equal("rho axiom", kron(I, Dl.pair) @ kron(braiding(Dl.obj, Dl.obj), I)
                  @ kron(I, Dl.rho), Dl.mult)
        R.take("quasidual", rep)
        R.data.setdefault("quasidual", {})["dim"] = Dl.dim
        return
    if H is None:
        R.skip("quasidual", "quasi-dual", f"not defined for {_kind(obj)}")
        return
    try:
        Q = build_quasidual(H)
    except ConstructionError as exc:
        R.fail("quasidual", "quasi-dual construction", exc.witness, str(exc))
        return
    R.take("quasidual", Q.report)
    R.data.setdefault("quasidual", {})["faithfulness"] = "pairing nondegeneracy"


def suite_hopfmodule(R: Report, obj):
    H = _braided(obj)
    if H is None:
        R.skip("hopfmodule", "Hopf module on the dual", f"not defined for {_kind(obj)}")
        return
    try:
        Q = build_quasidual(H)
    except ConstructionError as exc:
        R.fail("hopfmodule", "quasi-dual construction", exc.witness, str(exc))
        return
    R.take("hopfmodule", check_hopf_module(Q))
    R.data.setdefault("hopfmodule", {})["symmetric_braiding"] = H.symmetric


def suite_structure(R: Report, obj):
    H = _braided(obj)
    if isinstance(obj, GradedBraidedHopf):
        Dl = graded_dual(obj)
        # one basis vector per degree, so the degree projections are coordinate projections
        ops = [Matrix.from_entries(Dl.H.field, Dl.dim, Dl.dim, [((i, i), 1)])
               for i in range(Dl.dim)]
        rat = rational_part(Dl.mult, braiding(Dl.obj, Dl.obj), Dl.pair, Dl.dim, Dl.dim, ops)
        rep = VerificationReport("capped rational part")
        rep.extend(rat.report)
        rep.add("capped dual is rational", rat.basis.cols == Dl.dim,
                {"rational_dim": rat.basis.cols, "dim": Dl.dim})
        R.take("structure", rep)
        R.data.setdefault("structure", {})["rational_dim"] = rat.basis.cols
        return
    if H is None:
        R.skip("structure", "structure theorem", f"not defined for {_kind(obj)}")
        return
    try:
        iso = structure_theorem_iso(H)
    except ConstructionError as exc:
        R.fail("structure", "quasi-dual construction", exc.witness, str(exc))
        return
    R.take("structure", iso.report)
    dual_labels = tuple(f"{a}*" for a in H.labels)
    R.data.setdefault("structure", {}).update({
        "coinvariants": basis_strings(iso.coinvariants, dual_labels),
        "dim_coinvariants": iso.coinvariants.cols,
        "dim": H.dim,
    })


def suite_integrals(R: Report, obj):
    d = R.data.setdefault("integrals", {})
    if isinstance(obj, GradedBraidedHopf):
        ints = capped_integral_search(obj)
        d.update({"q": format_scalar(obj.q), "integrals_in": basis_strings(ints, obj.labels), "dim_integrals_in": ints.cols,
                  "cap": obj.cap})
        return
    if isinstance(obj, FinDimHopf):
        t, f = left_integrals_in(obj), integrals_on(obj)
        dual_labels = tuple(f"{a}*" for a in obj.labels)
        d.update({"integrals_in": basis_strings(t, obj.labels), "dim_integrals_in": t.cols,
                  "integrals_on": basis_strings(f, dual_labels), "dim_integrals_on": f.cols})
        rep = VerificationReport("integrals")
        rep.add("integrals in H form a line", t.cols == 1, {"dim": t.cols})
        rep.add("integrals on H form a line", f.cols == 1, {"dim": f.cols})
        R.take("integrals", rep)
        return
    if isinstance(obj, BraidedHopf):
        t = left_integrals_in(obj.hopf)
        try:
            f = braided_integrals_on(obj)
        except ConstructionError as exc:
            R.fail("integrals", "quasi-dual construction", exc.witness, str(exc))
            return
        dual_labels = tuple(f"{a}*" for a in obj.labels)
        d.update({"integrals_in": basis_strings(t, obj.labels), "dim_integrals_in": t.cols,
                  "integrals_on": basis_strings(f, dual_labels), "dim_integrals_on": f.cols})
        rep = VerificationReport("integrals")
        rep.add("integrals on H have dimension <= 1", f.cols <= 1, {"dim": f.cols})
        R.take("integrals", rep)
        if isinstance(obj.carrier, YDModule):
            try:
                R.take("integrals", integral_uniqueness_check(obj), "uniqueness: ")
            except PreconditionError as exc:
                R.skip("integrals", "uniqueness", f"{exc} {json.dumps(exc.witness, sort_keys=True)}")
        return
    R.skip("integrals", "integrals", f"not defined for {_kind(obj)}")


def suite_maschke(R: Report, obj):
    if isinstance(obj, GradedBraidedHopf):
        ints = capped_integral_search(obj)
        nonzero = any((obj.eps @ ints.select_columns([j]))[0, 0] for j in range(ints.cols))
        R.data.setdefault("maschke", {}).update({"semisimple": nonzero,
                                                 "integral_dim": ints.cols})
        return
    H = _braided(obj)
    if H is None:
        R.skip("maschke", "Maschke", f"not defined for {_kind(obj)}")
        return
    res = braided_maschke(H)
    R.take("maschke", res.report)
    R.data["maschke"]["counit_on_integral"] = format_scalar(res.counit_value) \
        if hasattr(res.counit_value, "field") else str(res.counit_value)
    R.data["maschke"]["scope"] = "averaging projections over the listed module instances"


def suite_bosonization(R: Report, obj):
    if not isinstance(obj, BraidedHopf) or not isinstance(obj.carrier, YDModule):
        R.skip("bosonization", "biproduct", "needs a braided Hopf algebra in YD modules")
        return
    try:
        HB = bosonize(obj)
    except (ConstructionError, PreconditionError) as exc:
        R.fail("bosonization", "biproduct", exc.witness, str(exc))
        return
    R.take("bosonization", check_hopf(HB), "biproduct: ")
    lam = integrals_on(HB)
    rep = VerificationReport("integral transfer")
    rep.add("integrals on the biproduct have dimension <= 1", lam.cols <= 1, {"dim": lam.cols})
    d = R.data.setdefault("bosonization", {})
    d.update({"dim": HB.dim, "dim_integrals_on_biproduct": lam.cols})
    if lam.cols == 1:
        braided = braided_integrals_on(obj)
        row = lam.T
        db = obj.carrier.base.dim
        found = []
        for b in range(db):
            r = restrict_integral(row, obj, HB, b)
            rep.extend(r.report, f"b={obj.carrier.base.labels[b]}: ")
            if not r.is_zero:
                found.append(b)
                rep.add(f"b={obj.carrier.base.labels[b]}: spans braided integrals",
                        same_span(r.functional.T, braided))
        rep.add("some restriction is nonzero", bool(found))
        d["nonzero_restrictions"] = [obj.carrier.base.labels[b] for b in found]
    R.take("bosonization", rep)


def suite_graded(R: Report, obj):
    G = obj
    if isinstance(obj, BraidedHopf) and isinstance(obj.carrier, DiagonalObject):
        try:
            G = as_graded(obj, obj.dim)
        except ValueError:
            G = None
    if not isinstance(G, GradedBraidedHopf):
        R.skip("graded", "graded checks", "needs a one-variable graded object")
        return
    rep = VerificationReport("graded")
    rep.add("Gaussian recurrence", gaussian_recurrence_holds(G))
    ints = capped_integral_search(G)
    d = R.data.setdefault("graded", {})
    d["capped_integrals"] = basis_strings(ints, G.labels)
    counit = [format_scalar((G.eps @ ints.select_columns([j]))[0, 0]) for j in range(ints.cols)]
    d["counit_on_capped_integrals"] = counit
    if G.cap > G.top:
        rep.skip("dual integrals", "cap exceeds the top degree")
    elif isinstance(obj, GradedBraidedHopf):
        Dl = graded_dual(G)
        dual_ints = capped_dual_integrals(Dl)
        d["capped_dual_integrals"] = dual_ints.cols
        d["stable_rational_dim"] = stable_rational_part(G.q, G.cap).cols
    R.take("graded", rep)


_SUITE_FUNCS = {"axioms": suite_axioms, "quasidual": suite_quasidual,
                "hopfmodule": suite_hopfmodule, "structure": suite_structure,
                "integrals": suite_integrals, "maschke": suite_maschke,
                "bosonization": suite_bosonization, "graded": suite_graded}


def normalize_suites(selection) -> tuple[str, ...]:
    if selection is None:
        return SUITES
    out = []
    for s in selection:
        for part in str(s).split(","):
            part = part.strip()
            if not part:
                continue
            if part == "all":
                out.extend(SUITES)
            elif part in SUITES:
                out.append(part)
            else:
                raise UsageError(f"unknown suite {part!r}; choose from {', '.join(SUITES)}, all")
    return tuple(s for s in SUITES if s in out)


def run_report(target, suites=None) -> Report:
    """Run the selected suites (default: all) on a zoo name, spec file or built object.

    Structural axioms are checked before any theorem-level suite; if they fail the
    remaining suites are skipped.
    """
    chosen = normalize_suites(suites)
    subject = load_subject(target)
    R = Report(subject, chosen)
    if not chosen:
        return R
    gate = Report(subject, ("axioms",))
    suite_axioms(gate, subject.obj)
    if "axioms" in chosen or not gate.ok:
        R.checks.extend(gate.checks)
        R.data.update(gate.data)
    if not gate.ok:
        for s in chosen:
            if s != "axioms":
                R.skip(s, s, "structural axioms failed")
        return R
    for s in chosen:
        if s != "axioms":
            _SUITE_FUNCS[s](R, subject.obj)
    return R


# --- command line --------------------------------------------------------------------

def _out_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braidhopf",
                                 description="Exact verification of finite braided Hopf algebras.")
    ap.add_argument("--version", action="version", version=f"braidhopf {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    chk = sub.add_parser("check", help="verify a spec file or zoo object")
    chk.add_argument("target", help="spec file path or zoo:<name>[:k=v,...]")
    chk.add_argument("--suite", action="append", metavar="S",
                     help=f"suite to run (repeatable, comma lists allowed): {', '.join(SUITES)}, all")
    chk.add_argument("--out", help="write the JSON report here instead of stdout")
    zoo = sub.add_parser("zoo", help="example objects")
    zsub = zoo.add_subparsers(dest="zoo_command", required=True)
    zsub.add_parser("list", help="list zoo entries")
    dump = zsub.add_parser("dump", help="write a zoo object as a spec file")
    dump.add_argument("name")
    dump.add_argument("--out", required=True)
    return ap


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "check":
            R = run_report(args.target, args.suite)
            text = R.to_json()
            if args.out:
                _out_path(args.out).write_text(text)
                c = R.counts()
                print(f"{R.subject.name}: {'PASS' if R.ok else 'FAIL'} "
                      f"({c['pass']} pass, {c['fail']} fail, {c['skip']} skip)")
            else:
                sys.stdout.write(text)
            return 0 if R.ok else 1
        if args.zoo_command == "list":
            for e in zoo_list():
                params = " ".join(f"{k}={v}" for k, v in e.params)
                print(f"{e.name:<22}{e.kind:<11}{params:<24}{e.summary}")
            return 0
        name, params = parse_zoo_name(args.name)
        canon = canonical_name(name, params)
        obj = zoo_build(name, **params)
        _out_path(args.out).write_text(serialize(obj, canon))
        return 0
    except (UsageError, ZooError, SpecParseError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
