"""Command-line driver: parse a JSON structure-constant spec, build the named
objects, run the task list and emit a canonical report.

Spec layout::

    {"field": {"prime": 3} | {"rational": true},
     "objects": {"name": {"type": ..., ...}, ...},
     "tasks": [{"op": ..., "target": "name", ...}, ...]}

Object types: group, group_algebra, function_algebra, algebra, hopf,
action, translation_action, bicharacter, transversal, algebroid.
Task ops: check, hopf, bisections, enumerate, twist, dual, dict, cqt.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Any, Callable

from . import cohomology as coh
from . import constructions as cons
from . import duality as dual
from .algebroid import (
    CoquasiLeftBialgebroid,
    LeftBialgebroid,
    check_bialgebroid,
    check_coquasi_algebroid,
    check_hopf_identities,
    identity_family_count,
    make_hopf,
)
from .errors import AlgdError, ParseError, ShapeMismatch, UnknownReference
from .field import QQ, GF, Field, FieldError
from .groups import FiniteGroup
from .hopf import (
    CoquasiBialgebra,
    CQTStructure,
    FDAlgebra,
    FDCoalgebra,
    HopfAlgebra,
    LinMap,
    check_coquasi_bialgebra,
    check_coquasitriangular,
    function_algebra,
    group_algebra,
)
from .report import Report, _jsonable

VERSION = "0.1.0"
EXAMPLE_PREFIX = "example:"

OBJECT_TYPES = (
    "group",
    "group_algebra",
    "function_algebra",
    "algebra",
    "hopf",
    "action",
    "translation_action",
    "bicharacter",
    "transversal",
    "algebroid",
)
ALGEBROID_KINDS = ("cm", "weyl", "self_crossed", "smash", "es", "pair", "hopf", "transmutation", "coquasi_cm")
ALGEBROID_KEYS = {
    "cm": ("action",),
    "smash": ("action",),
    "weyl": ("hopf",),
    "self_crossed": ("hopf",),
    "es": ("hopf",),
    "pair": ("algebra",),
    "hopf": ("hopf",),
    "transmutation": ("r",),
    "coquasi_cm": ("transversal",),
}
OPS = ("check", "hopf", "bisections", "enumerate", "twist", "dual", "dict", "cqt")
COMMAND_OPS = {
    "build": (),
    "check": OPS,
    "report": OPS,
    "enumerate": ("bisections", "enumerate", "dict"),
    "twist": ("twist",),
    "dual": ("dual",),
}


# ---------------------------------------------------------------- spec file


@dataclass
class SpecFile:
    field: Field
    objects: dict
    tasks: list
    digest: str
    text: str = ""
    order: list = dc_field(default_factory=list)


def _locate(text: str, token: str) -> tuple[int | None, int | None]:
    idx = text.find(f'"{token}"')
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


def _parse_field(raw, text: str) -> Field:
    try:
        if raw in ("Q", "QQ") or (isinstance(raw, dict) and raw.get("rational")):
            return QQ
        if isinstance(raw, dict) and "prime" in raw:
            return GF(int(raw["prime"]))
    except (FieldError, TypeError, ValueError) as exc:
        raise ParseError(f"bad field declaration: {exc}", *_locate(text, "field")) from exc
    raise ParseError("field must be {\"prime\": p} or {\"rational\": true}", *_locate(text, "field"))


def parse_text(text: str) -> SpecFile:
    """Validate the document shape and every reference; tensors are
    shape-checked when objects are built."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1)
    if "field" not in doc:
        raise ParseError("missing 'field'", 1, 1)
    fld = _parse_field(doc["field"], text)
    objects = doc.get("objects", {})
    tasks = doc.get("tasks", [])
    if not isinstance(objects, dict):
        raise ParseError("'objects' must be an object", *_locate(text, "objects"))
    if not isinstance(tasks, list):
        raise ParseError("'tasks' must be a list", *_locate(text, "tasks"))
    for name, spec in objects.items():
        if not isinstance(spec, dict) or spec.get("type") not in OBJECT_TYPES:
            raise ParseError(f"object {name!r} needs a type in {OBJECT_TYPES}", *_locate(text, name))
        for key in _references(spec):
            if key not in objects:
                line, col = _locate(text, key)
                raise UnknownReference(f"object {name!r} refers to unknown {key!r}", witness={"object": name, "ref": key, "line": line, "column": col})
    for i, task in enumerate(tasks):
        if not isinstance(task, dict) or task.get("op") not in OPS:
            raise ParseError(f"task {i} needs an op in {OPS}", *_locate(text, "tasks"))
        for key in [task.get("target")] + ([task["r"]] if "r" in task else []):
            if key not in objects:
                line, col = _locate(text, str(key))
                raise UnknownReference(f"task {i} refers to unknown {key!r}", witness={"task": i, "ref": key, "line": line, "column": col})
    digest = hashlib.sha256(text.encode()).hexdigest()
    spec = SpecFile(fld, objects, tasks, digest, text, list(objects))
    _check_shapes(spec)
    return spec


def _check_shapes(spec: SpecFile) -> None:
    """Build the tensor-carrying objects so shape errors surface at parse time;
    algebraic failures (and algebroids) are left to the tasks."""
    b = Builder(spec)
    for name, obj in spec.objects.items():
        if obj["type"] in ("algebroid", "transversal", "bicharacter"):
            continue
        try:
            b.get(name)
        except ShapeMismatch as exc:
            line, col = _locate(spec.text, name)
            exc.witness = {**(exc.witness or {}), "line": line, "column": col}
            raise
        except KeyError as exc:
            raise ParseError(f"object {name!r} is missing key {exc.args[0]!r}", *_locate(spec.text, name)) from exc
        except (AlgdError, TypeError, ValueError):
            continue
    for name, obj in spec.objects.items():
        if obj["type"] != "algebroid":
            continue
        need = ALGEBROID_KEYS.get(obj.get("kind"), ())
        missing = [k for k in need if k not in obj]
        if missing:
            raise ParseError(f"algebroid {name!r} is missing key {missing[0]!r}", *_locate(spec.text, name))


def _references(spec: dict) -> list[str]:
    keys = ("group", "hopf", "algebra", "action", "r", "transversal", "of")
    return [spec[k] for k in keys if k in spec and isinstance(spec[k], str)]


def example_names() -> list[str]:
    root = resources.files("algd") / "examples"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_spec_text(path: str) -> str:
    if path.startswith(EXAMPLE_PREFIX):
        name = path[len(EXAMPLE_PREFIX):]
        res = resources.files("algd") / "examples" / f"{name}.json"
        if not res.is_file():
            raise ParseError(f"no bundled example {name!r}; available: {example_names()}")
        return res.read_text()
    return Path(path).read_text()


def parse(path: str) -> SpecFile:
    return parse_text(read_spec_text(path))


# ---------------------------------------------------------------- object builders


def _shape(name: str, arr, dims: tuple) -> None:
    def walk(a, d, where):
        if not d:
            if isinstance(a, list):
                raise ShapeMismatch(f"{name}: too many indices at {where}", witness={"object": name, "index": where})
            return
        if not isinstance(a, list) or len(a) != d[0]:
            got = len(a) if isinstance(a, list) else "scalar"
            raise ShapeMismatch(f"{name}: expected length {d[0]} at {where}, got {got}", witness={"object": name, "index": where})
        for i, x in enumerate(a):
            walk(x, d[1:], where + [i])

    walk(arr, dims, [])


def _vec(F: Field, row) -> dict:
    out = {}
    for k, c in enumerate(row):
        v = F(c)
        if v:
            out[k] = v
    return out


class Builder:
    def __init__(self, spec: SpecFile):
        self.spec = spec
        self.F = spec.field
        self.built: dict = {}

    def get(self, name: str):
        if name not in self.built:
            if name not in self.spec.objects:
                raise UnknownReference(f"unknown object {name!r}")
            self.built[name] = self._build(name, self.spec.objects[name])
        return self.built[name]

    def _hopf(self, name: str) -> HopfAlgebra:
        h = self.get(name)
        if not isinstance(h, HopfAlgebra):
            raise ShapeMismatch(f"{name!r} is not a Hopf algebra")
        return h

    def _algebra(self, name: str) -> FDAlgebra:
        a = self.get(name)
        if isinstance(a, HopfAlgebra):
            return a.alg
        if not isinstance(a, FDAlgebra):
            raise ShapeMismatch(f"{name!r} is not an algebra")
        return a

    def _build(self, name: str, s: dict):
        F = self.F
        kind = s["type"]
        if kind == "group":
            if "table" in s:
                t = s["table"]
                n = len(t) if isinstance(t, list) else 0
                _shape(name, t, (n, n))
                return FiniteGroup(tuple(tuple(r) for r in t), tuple(s.get("labels", ())))
            raise ParseError(f"group {name!r} needs a multiplication table", *_locate(self.spec.text, name))
        if kind == "group_algebra":
            return group_algebra(self.get(s["group"]), F)
        if kind == "function_algebra":
            return function_algebra(self.get(s["group"]), F)
        if kind == "algebra":
            n = len(s["unit"])
            _shape(name, s["mult"], (n, n, n))
            return FDAlgebra.from_tensor(F, [[[F(c) for c in r] for r in m] for m in s["mult"]], [F(c) for c in s["unit"]], name=name)
        if kind == "hopf":
            n = len(s["unit"])
            for key, dims in (("mult", (n, n, n)), ("comult", (n, n, n)), ("counit", (n,))):
                _shape(f"{name}.{key}", s[key], dims)
            alg = FDAlgebra.from_tensor(F, [[[F(c) for c in r] for r in m] for m in s["mult"]], [F(c) for c in s["unit"]], name=name)
            coalg = FDCoalgebra.from_tensor(F, [[[F(c) for c in r] for r in m] for m in s["comult"]], [F(c) for c in s["counit"]])
            S = None
            if "antipode" in s:
                _shape(f"{name}.antipode", s["antipode"], (n, n))
                S = [_vec(F, col) for col in s["antipode"]]
            return HopfAlgebra(alg, coalg, S, name=name)
        if kind == "action":
            h = self._hopf(s["hopf"])
            b = self._algebra(s["algebra"])
            _shape(name, s["tensor"], (h.dim, b.dim, b.dim))
            return {"hopf": h, "algebra": b, "act": [[_vec(F, v) for v in row] for row in s["tensor"]]}
        if kind == "translation_action":
            g = self.get(s["group"])
            h, b = group_algebra(g, F), function_algebra(g, F)
            act = [[{g.mul(x, u): 1} for u in range(g.order)] for x in range(g.order)]
            return {"hopf": h, "algebra": b.alg, "act": act}
        if kind == "bicharacter":
            h = self._hopf(s["hopf"])
            return {"hopf": h, "r": CQTStructure.bicharacter(h, int(s["q"]))}
        if kind == "transversal":
            g = self.get(s["group"])
            td, hq, kG, act, gamma = cons.bicrossproduct_transversal(g, s["subgroup"], s["transversal"])
            return {"data": td, "hq": hq, "kG": kG, "act": act, "gamma": gamma}
        if kind == "algebroid":
            return self._algebroid(name, s)
        raise ParseError(f"unknown object type {kind!r}")

    def _action(self, s: dict) -> dict:
        a = self.get(s["action"])
        if not isinstance(a, dict) or "act" not in a:
            raise ShapeMismatch(f"{s['action']!r} is not an action")
        return a

    def _algebroid(self, name: str, s: dict) -> dict:
        kind = s.get("kind")
        if kind not in ALGEBROID_KINDS:
            raise ParseError(f"algebroid {name!r}: kind must be one of {ALGEBROID_KINDS}", *_locate(self.spec.text, name))
        out: dict = {"kind": kind}
        if kind == "cm":
            a = self._action(s)
            l, _ = cons.connes_moscovici(a["hopf"], a["algebra"], a["act"], check=False)
        elif kind == "smash":
            a = self._action(s)
            l, _ = cons.cocycle_smash(a["hopf"], a["algebra"], a["act"], check=False)
            out.update(a)
        elif kind == "weyl":
            h = self._hopf(s["hopf"])
            l, _, _ = cons.weyl_algebroid(h, check=False)
            out["hopf"] = h
            out["yd"], _ = cons.weyl_data(h)
        elif kind == "self_crossed":
            l, _, mor = cons.self_crossed_algebroid(self._hopf(s["hopf"]), check=False)
            out["iso"] = mor
        elif kind == "es":
            h = self._hopf(s["hopf"])
            hg = cons.hopf_galois(h.alg, h, h.coalg.cop)
            l, _ = cons.es_algebroid(hg, check=False, anti_left=bool(s.get("anti_left", False)))
            out["galois"] = hg
        elif kind == "pair":
            l = cons.pair_algebroid(self._algebra(s["algebra"]))
        elif kind == "hopf":
            l = cons.hopf_as_algebroid(self._hopf(s["hopf"]))
        elif kind == "transmutation":
            r = self.get(s["r"])
            yd, l, _ = cons.transmutation(r["hopf"], r["r"], check=False)
            out["yd"] = yd
        else:
            tr = self.get(s["transversal"])
            l = cons.coquasi_cm(tr["hq"], tr["kG"].alg, tr["act"], tr["gamma"], check=False)
        if "mutate" in s:
            l = mutate(l, s["mutate"])
        out["l"] = l
        return out


def mutate(l: LeftBialgebroid, m: dict) -> LeftBialgebroid:
    """Add ``add`` to one structure-tensor entry: map in s, t, eps, delta."""
    F = l.field
    which = m.get("map")
    if which not in ("s", "t", "eps", "delta"):
        raise ParseError(f"mutate.map must be s, t, eps or delta, got {which!r}")
    idx = int(m.get("index", 0))
    key = m.get("key", 0)
    key = tuple(key) if isinstance(key, list) else int(key)
    vecs = [dict(v) for v in getattr(l, which)]
    if not 0 <= idx < len(vecs):
        raise ShapeMismatch(f"mutate.index {idx} out of range")
    vecs[idx][key] = F.reduce(vecs[idx].get(key, 0) + F(m.get("add", 1)))
    return l.replace(**{which: vecs})


# ---------------------------------------------------------------- rendering


def render_value(x: Any) -> Any:
    """JSON-ready canonical form of keys, maps and vectors."""
    if isinstance(x, LinMap):
        return [[[k, render_value(c)] for k, c in sorted(col.items())] for col in x.cols]
    if isinstance(x, dict):
        return [[render_value(k), render_value(v)] for k, v in sorted(x.items(), key=lambda kv: json.dumps(_jsonable(kv[0])))]
    if isinstance(x, (list, tuple)):
        return [render_value(v) for v in x]
    return _jsonable(x)


def _key_of(obj) -> Any:
    k = getattr(obj, "key", None)
    if callable(k):
        return None
    if k is not None:
        return k
    if isinstance(obj, coh.TwoCocycle):
        return None
    if hasattr(obj, "Phi") and hasattr(obj, "phi"):
        return (obj.Phi, obj.phi)
    if isinstance(obj, dual.InCocycleF):
        return obj.F
    if isinstance(obj, dual.InCochain):
        return obj.U
    return obj


def representatives(objs: list, field: Field, red=None) -> list:
    keys = []
    for o in objs:
        if isinstance(o, coh.TwoCocycle):
            keys.append(render_value(o.key(field.reduce)))
        else:
            keys.append(render_value(_key_of(o)))
    return sorted(keys, key=lambda k: json.dumps(k, sort_keys=True))


# ---------------------------------------------------------------- tasks


@dataclass
class TaskResult:
    index: int
    op: str
    target: str
    status: str
    reports: list = dc_field(default_factory=list)
    result: dict = dc_field(default_factory=dict)
    error: dict | None = None
    seconds: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "index": self.index,
            "op": self.op,
            "target": self.target,
            "status": self.status,
            "reports": [r.to_dict() for r in self.reports],
            "result": _jsonable(self.result),
        }
        if self.error is not None:
            d["error"] = _jsonable(self.error)
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


def _algebroid_entry(b: Builder, name: str) -> dict:
    obj = b.get(name)
    if not isinstance(obj, dict) or "l" not in obj:
        raise ShapeMismatch(f"{name!r} is not an algebroid")
    return obj


def _hopf_flags(task: dict) -> tuple[bool, bool]:
    return bool(task.get("left", True)), bool(task.get("anti_left", True))


def _hopf_data(l: LeftBialgebroid, task: dict):
    left, anti = _hopf_flags(task)
    return make_hopf(l, left=left, anti_left=anti)


def task_check(b: Builder, task: dict, out: TaskResult) -> None:
    obj = b.get(task["target"])
    if isinstance(obj, HopfAlgebra):
        out.reports.append(obj.check())
        return
    if isinstance(obj, dict) and "hq" in obj:
        hq = obj["hq"]
        td = obj["data"]
        out.reports.append(check_coquasi_bialgebra(hq))
        out.result.update(
            dim=hq.dim,
            tau={f"{s},{t}": g for (s, t), g in sorted(td.tau.items())},
            phi_nontrivial=_phi_nontrivial(hq),
        )
        return
    if isinstance(obj, dict) and "r" in obj:
        out.reports.append(check_coquasitriangular(obj["hopf"], obj["r"]))
        return
    l = _algebroid_entry(b, task["target"])["l"]
    if isinstance(l, CoquasiLeftBialgebroid):
        out.reports.append(check_coquasi_algebroid(l))
        out.result["dim"] = l.n
        return
    out.reports.append(check_bialgebroid(l))
    out.result["dim"] = l.n
    out.result["base_dim"] = l.m
    if task.get("hopf", True):
        _run_hopf(l, task, out)


def _phi_nontrivial(hq: CoquasiBialgebra) -> bool:
    n = hq.dim
    eps = hq.coalg.counit
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if hq.field.reduce(hq.phi.get((i, j, k), 0) - eps[i] * eps[j] * eps[k]):
                    return True
    return False


def _run_hopf(l: LeftBialgebroid, task: dict, out: TaskResult) -> None:
    rep = Report(f"translation maps {l.name}")
    try:
        hd = _hopf_data(l, task)
    except AlgdError as exc:
        rep.record("translation maps invert", False, witness={"error": type(exc).__name__, "message": str(exc)})
        out.reports.append(rep)
        return
    rep.record("translation maps invert", True)
    out.reports.append(rep)
    ids = check_hopf_identities(l, hd)
    out.reports.append(ids)
    out.result["identity_families"] = identity_family_count(ids)


def task_hopf(b: Builder, task: dict, out: TaskResult) -> None:
    _run_hopf(_algebroid_entry(b, task["target"])["l"], task, out)


def task_bisections(b: Builder, task: dict, out: TaskResult) -> None:
    l = _algebroid_entry(b, task["target"])["l"]
    hd = _hopf_data(l, task)
    side = task.get("side", "left")
    found = coh.enumerate_objects(l, hd, f"bisection-{side}", limit=task.get("limit"))
    out.reports.append(coh.check_group(l, hd, found))
    out.result.update(count=len(found), side=side, representatives=representatives(found, l.field))


def task_enumerate(b: Builder, task: dict, out: TaskResult) -> None:
    entry = b.get(task["target"])
    kind = task.get("kind", "bisection-left")
    limit = task.get("limit")
    if kind in ("in-Z1", "in-C1", "in-Z2"):
        l = _algebroid_entry(b, task["target"])["l"]
        if task.get("dual", False):
            l = dual.right_dual(l).algebroid
        found = dual.enumerate_in_cocycles(l, limit) if kind == "in-Z2" else dual.enumerate_in(l, kind[3:], limit)
        field_ = l.field
    elif kind in ("action-cocycle",):
        yd = _algebroid_entry(b, task["target"]).get("yd")
        if yd is None:
            raise ShapeMismatch(f"{task['target']!r} carries no crossed module algebra")
        found = coh.enumerate_objects(yd, None, kind, limit)
        field_ = yd.h.field if hasattr(yd, "h") else b.F
    elif kind == "weyl-alpha":
        h = entry["hopf"] if isinstance(entry, dict) else entry
        found = coh.enumerate_objects(h, None, kind, limit)
        field_ = h.field
    else:
        l = _algebroid_entry(b, task["target"])["l"]
        hd = _hopf_data(l, task) if kind != "algebra-automorphism" else None
        found = coh.enumerate_objects(l, hd, kind, limit)
        field_ = l.field
    out.result.update(kind=kind, count=len(found), representatives=representatives(found, field_))


def task_twist(b: Builder, task: dict, out: TaskResult) -> None:
    l = _algebroid_entry(b, task["target"])["l"]
    hd = _hopf_data(l, task)
    cochains = coh.enumerate_objects(l, hd, "ext-cochain", limit=task.get("limit"))
    gamma = coh.trivial_cocycle(l)
    for i, U in enumerate(cochains):
        rep = Report(f"cochain {i}")
        rep.extend(coh.check_two_cocycle(l, coh.coboundary(l, U)), "dU ")
        rep.extend(coh.twist(l, hd, gamma, U).report, "twist ")
        out.reports.append(rep)
    out.result["cochains"] = len(cochains)
    if task.get("classes", False):
        cocycles = coh.enumerate_objects(l, hd, "two-cocycle", limit=task.get("limit"))
        out.result["cocycles"] = len(cocycles)
        out.result["h2_classes"] = len(coh.h2_classes(l, cocycles, cochains))


def task_dual(b: Builder, task: dict, out: TaskResult) -> None:
    l = _algebroid_entry(b, task["target"])["l"]
    if isinstance(l, CoquasiLeftBialgebroid):
        q = dual.quasi_dual(l)
        out.reports.append(dual.check_quasi_bialgebroid(q))
        out.result.update(dim=q.n, base_dim=q.m)
        return
    d = dual.right_dual(l)
    lam = d.algebroid
    out.result.update(dim=lam.n, base_dim=lam.m)
    out.reports.append(dual.reconstruction_report(l, d.dual_basis))
    out.reports.append(check_bialgebroid(lam))
    out.reports.append(dual.pairing_report(d))
    out.reports.append(dual.biduality_check(l, d))
    if task.get("hopf", True):
        out.reports.append(dual.dual_hopf_check(l, None, d))
    if task.get("cocycles", False):
        Fs = dual.enumerate_in_cocycles(lam, task.get("limit"))
        trivial = dual.F_key(lam, dual.trivial_F(lam))
        nontrivial = [F for F in Fs if dual.F_key(lam, F) != trivial]
        out.result.update(in_cocycles=len(Fs), nontrivial=len(nontrivial))
        if nontrivial:
            out.reports.append(dual.dual_two_cocycle_bridge(l, nontrivial[0], d).report)
            hl = make_hopf(lam, left=True, anti_left=True)
            out.reports.append(dual.twist_coproduct(lam, hl, nontrivial[0]).report)


def task_dict(b: Builder, task: dict, out: TaskResult) -> None:
    entry = _algebroid_entry(b, task["target"])
    l = entry["l"]
    which = task.get("dictionary", "weyl")
    if which == "weyl":
        h, yd = entry["hopf"], entry["yd"]
        hd = make_hopf(l, left=True, anti_left=True)
        alphas = coh.enumerate_objects(h, None, "weyl-alpha")
        rights = coh.enumerate_objects(l, hd, "bisection-right")
        rhos = coh.enumerate_objects(yd, None, "action-cocycle")
        images = {coh.dict_action(yd, l, coh.dict_weyl(h, a, "alpha->rho", yd=yd), "rho->right").key for a in alphas}
        rep = Report("Weyl dictionaries")
        rep.record("alpha -> rho -> right bisection is a bijection", images == {r.key for r in rights} and len(images) == len(alphas))
        via_rho = {coh.dict_action(yd, l, r, "rho->right").key for r in rhos}
        rep.record("Z1 action cocycles -> right bisections is a bijection", via_rho == {r.key for r in rights} and len(via_rho) == len(rhos))
        out.reports.append(rep)
        out.result.update(alphas=len(alphas), right_bisections=len(rights), action_cocycles=len(rhos))
    elif which == "es":
        hg = entry["galois"]
        gauge = coh.gauge_group(hg, task.get("limit"))
        bis = [coh.dict_es(l, f, "F->left") for f in gauge]
        rep = Report("ES dictionary")
        rep.record("gauge transformations -> left bisections injective", len({x.key for x in bis}) == len(gauge))
        for i, x in enumerate(bis):
            rep.extend(coh.check_bisection(l, x.sigma, "left"), f"image {i} ")
        out.reports.append(rep)
        out.result.update(gauge=len(gauge), bisections=len(bis))
    else:
        raise ParseError(f"dictionary must be weyl or es, got {which!r}")


def task_cqt(b: Builder, task: dict, out: TaskResult) -> None:
    r = b.get(task.get("r", task["target"]))
    if not isinstance(r, dict) or "r" not in r:
        raise ShapeMismatch("cqt needs a bicharacter object")
    h, R = r["hopf"], r["r"]
    out.reports.append(check_coquasitriangular(h, R))
    yd, l, _ = cons.transmutation(h, R, check=False)
    out.reports.append(cons.check_yd(yd))
    out.reports.append(cons.check_braided_commutative(yd))
    kf = cons.killing_form(h, R, yd, l)
    out.reports.append(kf.report)
    out.result["factorisable"] = kf.factorisable
    if kf.factorisable and kf.morphism is not None:
        from .algebroid import check_automorphism

        out.reports.append(check_automorphism(l, kf.morphism, target=kf.weyl))


TASKS: dict[str, Callable] = {
    "check": task_check,
    "hopf": task_hopf,
    "bisections": task_bisections,
    "enumerate": task_enumerate,
    "twist": task_twist,
    "dual": task_dual,
    "dict": task_dict,
    "cqt": task_cqt,
}


# ---------------------------------------------------------------- run / report


@dataclass
class ReportDocument:
    spec: SpecFile
    tasks: list
    command: str

    @property
    def passed(self) -> bool:
        return all(t.status == "pass" for t in self.tasks)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "tool": "algd",
            "version": VERSION,
            "command": self.command,
            "input_sha256": self.spec.digest,
            "field": self.spec.field.describe(),
            "passed": self.passed,
            "tasks": [t.to_dict(timing) for t in self.tasks],
        }


def run(spec: SpecFile, ops: tuple = OPS, command: str = "report") -> ReportDocument:
    """Execute tasks in declaration order; an error in one task is recorded
    and does not stop the others."""
    b = Builder(spec)
    results = []
    for i, task in enumerate(spec.tasks):
        op = task["op"]
        if op not in ops:
            continue
        out = TaskResult(i, op, task.get("target", ""), "pass")
        start = time.perf_counter()
        try:
            TASKS[op](b, task, out)
            out.status = "pass" if all(r.passed for r in out.reports) else "fail"
        except AlgdError as exc:
            out.status = "error"
            out.error = {"type": type(exc).__name__, "message": str(exc), "law": exc.law, "witness": exc.witness}
        out.seconds = time.perf_counter() - start
        results.append(out)
    return ReportDocument(spec, results, command)


def build_only(spec: SpecFile) -> ReportDocument:
    b = Builder(spec)
    results = []
    for i, name in enumerate(spec.order):
        out = TaskResult(i, "build", name, "pass")
        try:
            obj = b.get(name)
            if isinstance(obj, dict) and "l" in obj:
                out.result.update(dim=obj["l"].n, base_dim=obj["l"].m, kind=obj["kind"])
            elif hasattr(obj, "dim"):
                out.result["dim"] = obj.dim
            elif isinstance(obj, FiniteGroup):
                out.result["order"] = obj.order
        except AlgdError as exc:
            out.status = "error"
            out.error = {"type": type(exc).__name__, "message": str(exc), "law": exc.law, "witness": exc.witness}
        results.append(out)
    return ReportDocument(spec, results, "build")


def report(doc: ReportDocument, fmt: str = "json", timing: bool = False) -> bytes:
    data = doc.to_dict(timing)
    if fmt == "json":
        return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    lines = [f"algd {VERSION} {doc.command}: {'PASS' if data['passed'] else 'FAIL'} ({len(data['tasks'])} tasks)"]
    for t in data["tasks"]:
        head = f"[{t['status'].upper():5}] task {t['index']} {t['op']} {t['target']}"
        if t["result"]:
            head += " " + json.dumps({k: v for k, v in t["result"].items() if k != "representatives"}, sort_keys=True)
        lines.append(head)
        for r in t["reports"]:
            for law in r["results"]:
                if not law["passed"]:
                    lines.append(f"    {r['subject']}: {law['law']} fails at {json.dumps(law.get('witness'), sort_keys=True)}")
        if "error" in t:
            lines.append(f"    {t['error']['type']}: {t['error']['message']}")
    return ("\n".join(lines) + "\n").encode()


# ---------------------------------------------------------------- entry point


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="algd", description="Finite Hopf algebroid verifier.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("build", "check", "enumerate", "twist", "dual", "report"):
        sp = sub.add_parser(name)
        sp.add_argument("spec", help=f"spec path or {EXAMPLE_PREFIX}NAME for a bundled example")
        sp.add_argument("--format", choices=("json", "text"), default="json" if name == "report" else "text")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--parallel", type=int, default=1, help="worker count (results do not depend on it)")
        sp.add_argument("--timing", action="store_true", help="include per-task seconds (not deterministic)")
        if name == "enumerate":
            sp.add_argument("--limit", type=int, default=None, help="search-space limit per enumeration")
    sub.add_parser("examples", help="list bundled example specs")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "examples":
        for name in example_names():
            print(f"{EXAMPLE_PREFIX}{name}")
        return 0
    try:
        spec = parse(args.spec)
    except (ParseError, UnknownReference, ShapeMismatch, OSError) as exc:
        print(f"algd: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if getattr(args, "limit", None) is not None:
        for t in spec.tasks:
            if t["op"] in ("enumerate", "bisections"):
                t["limit"] = args.limit
    if args.command == "build":
        doc = build_only(spec)
    else:
        doc = run(spec, COMMAND_OPS[args.command], args.command)
    data = report(doc, args.format, args.timing)
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return 0 if doc.passed else 1


if __name__ == "__main__":
    sys.exit(main())
