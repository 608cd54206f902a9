"""Regenerate the sample JSON documents in data/ from the library's own constructions.

    PYTHONPATH=src python3 scripts/make_data.py [outdir]
"""
import json
import sys
from pathlib import Path

from twistcat.actions import TwistedAction
from twistcat.algebra import GroupAction, GroupHom, cyclic, symmetric3, sign_of
from twistcat.catgroup import CrossedModule, codiscrete_catgroup
from twistcat.etatwist import EtaMap
from twistcat.fincat import codiscrete, tabulate
from twistcat.fixtures import (affine_crossed, build_fixture, negation_catvec_action,
                               counterfeit_catvec_action, rg1_action, schur_actions)
from twistcat.veccat import catvec, linear_action_to_json


def tabulated_action(a: TwistedAction) -> TwistedAction:
    """The same action on the indexed copy of its target category."""
    T, objs, mors = tabulate(a.target)
    oi = {x: i for i, x in enumerate(objs)}
    mi = {f: i for i, f in enumerate(mors)}
    return TwistedAction(a.group, T, lambda g, v: oi[a.rho_obj(g, objs[v])],
                         lambda k, f: mi[a.rho_mor(k, mors[f])], name=a.name)


def documents() -> dict:
    K2, S3 = cyclic(2), symmetric3()
    sign = GroupHom(S3, K2, [sign_of(S3.label(g)) for g in S3.elements()])
    docs = {
        "z2_s3_sign.json": CrossedModule(K2, S3, GroupAction.trivial(K2, 6), sign).to_json(),
        "z2_z2_id.json": CrossedModule(K2, K2, GroupAction.trivial(K2, 2),
                                       GroupHom(K2, K2, [0, 1])).to_json(),
        "affine_f3.json": affine_crossed(3, 1).to_json(),
        "codiscrete_z2.json": codiscrete_catgroup(K2).to_json(),
    }
    A, B = tabulate(codiscrete(2))[0], tabulate(codiscrete(3))[0]
    docs["projection.json"] = EtaMap.projection(A, B).to_json()
    docs["sd1_eta.json"] = build_fixture("sd1").objects["eta"].to_json()
    docs["rg1_action.json"] = tabulated_action(rg1_action()).to_json()
    docs["catvec_f2.json"] = catvec(2, 1, 1, ((1,),)).to_json()
    docs["catvec_neg.json"] = linear_action_to_json(negation_catvec_action(3))
    docs["catvec_counterfeit.json"] = linear_action_to_json(counterfeit_catvec_action(3))
    shear, trivial = schur_actions(2)
    strip = lambda d: {k: v for k, v in d.items() if k != "group"}
    s, t = linear_action_to_json(shear), linear_action_to_json(trivial)
    docs["schur_quotient.json"] = {"group": s["group"], "source": strip(s), "target": strip(t),
                                   "functor": {"obj": [[1]], "mor": [[0, 1]]}}
    docs["schur_identity.json"] = {"group": s["group"], "source": strip(s), "target": strip(s),
                                   "functor": {"obj": [[1]], "mor": [[1, 0], [0, 1]]}}
    docs["schur_zero.json"] = {"group": s["group"], "source": strip(s), "target": strip(s),
                               "functor": {"obj": [[0]], "mor": [[0, 0], [0, 0]]}}
    return docs


def main(outdir="data"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in documents().items():
        (out / name).write_text(json.dumps(doc, sort_keys=True) + "\n")
        print(out / name)


if __name__ == "__main__":
    main(*sys.argv[1:])
