import json

import pytest

import frozen as fz
import oracles as o
from twistcat.errors import InputError
from twistcat.fixtures import FIXTURES, build_fixture, fixture_list

# multitwist is verified once, in the acceptance suite
LIGHT = [n for n in FIXTURES if n != "multitwist"]


@pytest.mark.parametrize("name", LIGHT)
def test_declared_checks_pass(name):
    rep = build_fixture(name).verify()
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("name", LIGHT)
def test_export_is_json(name):
    doc = build_fixture(name).export()
    assert json.loads(json.dumps(doc)) == doc


def test_listing_covers_registry():
    names = [f["name"] for f in fixture_list()]
    assert names == list(FIXTURES)
    oned = next(f for f in fixture_list() if f["name"] == "oned")
    assert oned["params"]["q"]["default"] == 5


@pytest.mark.parametrize("name,params", [
    ("oned", {"q": "7"}),          # 4 does not divide q - 1
    ("affine", {"q": "4"}),        # not prime
    ("affine", {"dim": "3"}),
    ("cg1", {"variant": "loose"}),
    ("cg1", {"K": "Q8"}),
    ("sd1", {"m": "3"}),
    ("nosuch", {}),
])
def test_bad_parameters(name, params):
    with pytest.raises(InputError):
        build_fixture(name, params)


def test_sd1_is_s3():
    b = build_fixture("sd1")
    rep = b.verify()
    assert rep.facts["table isomorphic to S3"] is True and rep.facts["morphisms"] == 6
    P = b.objects["product"]
    mors = P.morphisms()
    unit = P.ident(P.objects()[0])
    order = [unit] + [m for m in mors if m != unit]
    idx = {m: i for i, m in enumerate(order)}
    assert o.is_isomorphic_table([[idx[P.compose(y, x)] for x in order] for y in order],
                                 o.s3_table())


def test_sd1_other_orders():
    rep = build_fixture("sd1", {"n": "4"}).verify()
    assert rep.ok and rep.facts["morphisms"] == 8


def test_affine_sizes():
    rep = build_fixture("affine", {"q": "3", "dim": "1"}).verify()
    assert (rep.facts["|Obj|"], rep.facts["|Mor|"]) == (2, 6)


def test_cg1_discrete_has_only_identities():
    b = build_fixture("cg1", {"K": "Z2", "variant": "discrete"})
    cg = b.objects["catgroup"]
    assert all(cg.cat.ident(cg.cat.src(k)) == k for k in cg.morphisms())
    assert b.verify().facts["only identity morphisms"] is True


def test_rg1_records_converse_count():
    assert build_fixture("rg1").verify().facts["boundary converse violations"] \
        == fz.RG1_CONVERSE_VIOLATIONS


def test_oned_character_values():
    rep = build_fixture("oned", {"q": "5", "lambda0": "2"}).verify()
    assert rep.facts["lambda0"] == [pow(2, h, 5) for h in range(4)]


def test_verify_flag_passes_through():
    assert build_fixture("sd1", verify=True).name == "sd1"


def test_multitwist_worked_values(multitwist):
    f = {k: v() if callable(v) else v for k, v in multitwist.facts.items()}
    # lambda at p0 is powers of 2 in F_5; at the swapped point it is powers of 2^-1 = 3
    assert f["lambda"] == [[pow(2, h, 5) for h in range(4)], [pow(3, h, 5) for h in range(4)]]
    # g2^-1 acts on H = Z/4 by negation: -1 + 2
    assert f["composition example h-component"] == (-1 + 2) % 4
    assert f["eta1(1; 1, e, psi)"] == [2]
    assert f["|Psi|"] == 25 and f["|Mor(Psi_1)|"] == 5 * f["|Mor(Psi_p0)|"]
