import json
import math
from fractions import Fraction

import pytest

import genusbound as gb


def test_genus_report():
    r = gb.genus_report(-23)
    assert r["h"] == 3 and r["genera"] == 1 and not r["ocpg"]
    assert gb.class_number(-84) == 4
    assert gb.genus_report(-84)["ocpg"]


def test_composition():
    e = gb.principal_form(-23)
    f = (2, 1, 3)
    assert gb.compose(gb.compose(f, f), f) == e
    assert gb.reduce((12, 11, 3)) == gb.reduce(gb.reduce((12, 11, 3)))


def test_search_idoneal():
    found = gb.search_ocpg(2000, "idoneal")
    assert len(found) == 65
    assert max(-r["d"] // 4 for r in found) == 1848


def test_l_one():
    lo, hi = gb.l_one(4, 25)
    assert isinstance(lo, Fraction)
    assert lo <= Fraction(math.pi / 4) + Fraction(1, 10**15)
    assert hi >= Fraction(math.pi / 4) - Fraction(1, 10**15)
    assert hi - lo <= Fraction(1, 10**25)
    assert gb.analytic_class_number(23) == 3


def test_cutoff_and_verify():
    cert = gb.find_cutoff(1, 18)
    assert cert["g_star"] == 66 and cert["min_genus"] == 68
    assert gb.verify_certificate(cert)
    cert["g_star"] = 65
    assert not gb.verify_certificate(json.dumps(cert))


def test_run_cli():
    code, out, err = gb.run_cli(["classnum", "-d", "-23"])
    assert code == 0 and json.loads(out)["h"] == 3 and err == ""
    code, out, err = gb.run_cli(["genus", "-d", "-5"])
    assert code == 2 and out == "" and err


def test_errors():
    with pytest.raises(gb.GenusboundError):
        gb.validate_discriminant(-5)
    with pytest.raises(ValueError):
        gb.ln_enclosure(-1)
