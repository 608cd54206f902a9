"""Command-line front end: JSON documents in, law reports out.

Exit codes: 0 every law holds, 1 a law is violated, 2 bad input or a refused check.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .actions import ActionMorphism, TwistedAction, action_check, action_morphism_check
from .algebra import LinearMap
from .catgroup import (CategoricalGroup, CrossedModule, catgroup_axioms_check,
                       catgroup_from_crossed, peiffer_check, roundtrip_check)
from .doublecat import double_axioms_check, double_from_action
from .errors import InputError, LawViolation, RefusalError
from .etatwist import (EtaMap, eta_axioms_check, eta_invariance_check, eta_monoidal_check,
                       semidirect_product)
from .fincat import TableCategory, category_axioms_check, tabulate
from .fixtures import build_fixture, fixture_list
from .veccat import (LinearFunctor, _matrix, catvec_rep_structure, catvecspace_check,
                     decompose_catvecspace, irreducibility_check, linear_action_from_json,
                     linear_rep_check, schur_classify, vector_category_from_json)
from .verify import CheckReport, VerificationPolicy, refused


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"--in {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"--in {path}: malformed JSON at line {exc.lineno} column {exc.colno}") from None


def _catgroup_doc(doc, name="G") -> CategoricalGroup:
    """A categorical group given directly or as a crossed module."""
    if isinstance(doc, dict) and {"G", "H", "alpha", "tau"} <= doc.keys():
        return catgroup_from_crossed(CrossedModule.from_json(doc), name)
    return CategoricalGroup.from_json(doc, name)


# ---------------------------------------------------------------- check

def check_crossed(doc, policy):
    return peiffer_check(CrossedModule.from_json(doc), policy)


def check_catgroup(doc, policy):
    cg = _catgroup_doc(doc)
    rep = catgroup_axioms_check(cg, policy)
    if rep.ok:
        rep.merge(roundtrip_check(cg, policy), "roundtrip.")
    return rep


def check_eta(doc, policy):
    e = EtaMap.from_json(doc)
    rep = eta_axioms_check(e, policy)
    if isinstance(doc.get("A"), dict) and "obj_group" in doc["A"]:
        cg = CategoricalGroup.from_json(doc["A"], "A")
        eg = EtaMap.from_table(cg.cat, e.B, doc["eta"], e.name)
        eg.group = cg
        rep.merge(eta_monoidal_check(eg, policy))
    if rep.ok:
        rep.merge(category_axioms_check(semidirect_product(e, verify=False), policy), "product.")
    return rep


def _action(doc) -> TwistedAction:
    if isinstance(doc, dict) and isinstance(doc.get("target"), dict) and "q" in doc["target"]:
        return linear_action_from_json(doc)
    return TwistedAction.from_json(doc)


def check_action(doc, policy):
    a = _action(doc)
    rep = action_check(a, policy, preconditions=True)
    if a.twisted:
        rep.merge(eta_invariance_check(a.eta, a, policy), "eta.")
    return rep


def check_double(doc, policy, converse=True):
    a = _action(doc)
    pre = action_check(a, policy)
    if not pre.ok:
        return refused("double category", "the input is not an action", policy, pre)
    d = double_from_action(a, policy)
    return double_axioms_check(d, policy, converse=converse)


def check_vecspace(doc, policy):
    """A bare vector category, or a linear action on one (``group`` present)."""
    if isinstance(doc, dict) and "group" in doc:
        a = linear_action_from_json(doc)
        rep = catvecspace_check(a.target, policy)
        if not rep.ok:
            return rep
        rep.merge(action_check(a, policy), "action.")
        rep.merge(linear_rep_check(a, policy), "linear.")
        if rep.ok:
            _, structure = catvec_rep_structure(a, policy)
            rep.merge(structure, "structure.")
            rep.facts["irreducibility"] = irreducibility_check(a).to_dict()
        return rep
    c = vector_category_from_json(doc)
    rep = catvecspace_check(c, policy)
    if rep.ok:
        rep.merge(decompose_catvecspace(c, policy).report, "decomposition.")
    return rep


CHECKS = {"crossed": check_crossed, "catgroup": check_catgroup, "eta": check_eta,
          "action": check_action, "double": check_double, "vecspace": check_vecspace}


# ---------------------------------------------------------------- build

def build_catgroup(docs, policy):
    if len(docs) != 1:
        raise InputError("--in: build catgroup takes one crossed-module file")
    cm = CrossedModule.from_json(docs[0])
    rep = peiffer_check(cm, policy)
    if not rep.ok:
        return rep, None
    cg = catgroup_from_crossed(cm)
    rep.merge(catgroup_axioms_check(cg, policy), "catgroup.")
    return rep, cg.to_json()


def build_product(docs, policy):
    """One {"A", "B", "eta"} file, or three files: A, B and {"eta": table}."""
    if len(docs) == 1:
        e = EtaMap.from_json(docs[0])
    elif len(docs) == 3:
        A = TableCategory.from_json(docs[0], "A")
        B = TableCategory.from_json(docs[1], "B")
        if not isinstance(docs[2], dict) or "eta" not in docs[2]:
            raise InputError("eta: missing field")
        e = EtaMap.from_table(A, B, docs[2]["eta"])
    else:
        raise InputError("--in: build product takes one twist file or three files (A, B, eta)")
    rep = eta_axioms_check(e, policy)
    if not rep.ok:
        return rep, None
    P = semidirect_product(e, verify=False)
    table, objs, mors = tabulate(P)
    rep.merge(category_axioms_check(table, policy), "product.")
    doc = table.to_json()
    doc["object_labels"], doc["morphism_labels"] = objs, mors
    return rep, doc


BUILDS = {"catgroup": build_catgroup, "product": build_product}


# ---------------------------------------------------------------- schur

def schur_pair(doc):
    if not isinstance(doc, dict):
        raise InputError("pair file: expected a JSON object")
    for key in ("group", "source", "target", "functor"):
        if key not in doc:
            raise InputError(f"{key}: missing field")
    G = _catgroup_doc(doc["group"], "group")
    a1 = linear_action_from_json(doc["source"], "source", G)
    a2 = linear_action_from_json(doc["target"], "target", G)
    F = doc["functor"]
    if not isinstance(F, dict):
        raise InputError("functor: expected {\"obj\": matrix, \"mor\": matrix}")
    V1, V2 = a1.target, a2.target
    if V1.q != V2.q:
        raise InputError("target.q: both representations must live over the same field")
    F = {"functor." + k: v for k, v in F.items()}
    Fobj = LinearMap(V1.obj, V2.obj, _matrix(F, "functor.obj", V2.obj.dim, V1.obj.dim, V1.q))
    Fmor = LinearMap(V1.mor, V2.mor, _matrix(F, "functor.mor", V2.mor.dim, V1.mor.dim, V1.q))
    lf = LinearFunctor(V1, V2, Fobj, Fmor, "F")
    return ActionMorphism(a1, a2, lf, "F")


def run_schur(doc, policy):
    m = schur_pair(doc)
    rep = action_morphism_check(m, policy)
    if not rep.ok:
        return rep
    v = schur_classify(m, policy)
    rep.merge(v.report, "schur.")
    rep.facts["verdict"] = v.to_dict()
    return rep


# ---------------------------------------------------------------- driver

def _param(text: str):
    if "=" not in text:
        raise InputError(f"--param {text!r}: expected key=value")
    k, v = text.split("=", 1)
    return k.strip(), v.strip()


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twistcat", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=10000, help="samples per sampled law")
    common.add_argument("--seed", type=int, default=20240601)
    common.add_argument("--threshold", type=int, default=200000,
                        help="largest tuple space scanned exhaustively")
    common.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="include timings in the JSON")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", parents=[common], help="run a check suite on a JSON document")
    c.add_argument("kind", choices=sorted(CHECKS))
    c.add_argument("--in", dest="inp", required=True)
    c.add_argument("--no-converse", action="store_true",
                   help="double: skip the 'only if' half of the boundary rule")

    b = sub.add_parser("build", parents=[common], help="construct and verify, then write JSON")
    b.add_argument("kind", choices=sorted(BUILDS))
    b.add_argument("--in", dest="inp", nargs="+", required=True)
    b.add_argument("--out", required=True)

    s = sub.add_parser("schur", parents=[common], help="classify a morphism of representations")
    s.add_argument("--in", dest="inp", required=True)

    f = sub.add_parser("fixture", parents=[common], help="build a named fixture, or 'list'")
    f.add_argument("name")
    f.add_argument("--param", action="append", default=[], metavar="K=V")
    f.add_argument("--check", action="store_true", help="run the fixture's declared checks")
    return p


def _policy(args) -> VerificationPolicy:
    try:
        return VerificationPolicy(mode=args.mode, samples=args.samples, seed=args.seed,
                                  threshold=args.threshold, workers=args.workers)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(doc_or_report, timing=False, out=None):
    out = out or sys.stdout
    if isinstance(doc_or_report, CheckReport):
        text = doc_or_report.to_json(timing)
    else:
        text = json.dumps(doc_or_report, sort_keys=True, indent=2)
    out.write(text + "\n")


def _code(rep: CheckReport) -> int:
    return {"pass": 0, "fail": 1, "refused": 2}[rep.status]


def dispatch(args) -> int:
    policy = _policy(args)
    if args.cmd == "check":
        doc = _load(args.inp)
        if args.kind == "double":
            rep = check_double(doc, policy, converse=not args.no_converse)
        else:
            rep = CHECKS[args.kind](doc, policy)
    elif args.cmd == "build":
        rep, built = BUILDS[args.kind]([_load(x) for x in args.inp], policy)
        if built is not None and rep.ok:
            with open(args.out, "w") as fh:
                json.dump(built, fh, sort_keys=True)
                fh.write("\n")
            rep.facts["written"] = args.out
    elif args.cmd == "schur":
        rep = run_schur(_load(args.inp), policy)
    else:
        if args.name == "list":
            _emit(fixture_list())
            return 0
        params = dict(_param(x) for x in args.param)
        bundle = build_fixture(args.name, params)
        if not args.check:
            _emit({"fixture": bundle.name, "summary": bundle.summary,
                   "components": bundle.export(),
                   "facts": CheckReport("", facts={k: v() if callable(v) else v
                                                   for k, v in bundle.facts.items()}).to_dict()["facts"]})
            return 0
        rep = bundle.verify(policy)
    _emit(rep, args.timing)
    sys.stderr.write(rep.summary() + "\n")
    return _code(rep)


def main(argv: Optional[list] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:      # argparse already printed its message
        return 0 if exc.code == 0 else 2
    try:
        return dispatch(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except RefusalError as exc:
        rep = exc.report
        if rep is not None:
            rep = refused(rep.subject, str(exc), rep.policy, rep)
            _emit(rep, getattr(args, "timing", False))
        sys.stderr.write(f"refused: {exc}\n")
        return 2
    except LawViolation as exc:
        sys.stderr.write(f"law violation: {exc}\n")
        return 1


def run_cli(argv) -> int:
    return main(list(argv))
