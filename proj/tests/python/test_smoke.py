import os

import pytest

import padyn

DATA = os.environ.get("PADYN_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def map_path(name):
    return os.path.join(DATA, "maps", name)


def henon():
    return padyn.load_maps(map_path("henon_q3.json"))[0].word()


def test_arithmetic():
    k = padyn.FieldSpec(5, 2)
    x = padyn.PadicElement(k, 1) / 2
    assert x.residue(2) == 13
    assert (padyn.PadicElement(k, 2) + 3).valuation() == 1
    assert padyn.PadicElement(k, 0).valuation() is None
    assert padyn.teichmueller(k, 2) == 7
    assert padyn.root_of_unity_order(padyn.PadicElement(k, 7)) == 4
    assert padyn.root_of_unity_order(padyn.PadicElement(padyn.FieldSpec(5, 3), 7)) is None


def test_apply_and_inverse():
    g = henon()
    assert padyn.apply(g, [1, 0]) == ["1", "1"]
    assert padyn.apply(padyn.inverse(g), [0, 1]) == ["1", "1"]
    assert padyn.apply(padyn.inverse(g), padyn.apply(g, ["5", "-7"])) == ["5", "-7"]


def test_loci():
    g = henon()
    assert padyn.indeterminacy_locus(g) == ["[0:1:0]"]
    assert padyn.indeterminacy_locus(padyn.inverse(g), special=True) == ["[1:0:0]"]
    assert padyn.is_regular(g)
    assert padyn.is_special_henon(g)
    assert padyn.check_iterate_locus(g, 4)


def test_dynamics():
    g = henon()
    assert padyn.permutation_cycles(g, 1) == {1: 2, 7: 1}
    pts = padyn.enumerate_periodic_points(g, 1)
    assert sorted(tuple(r["point"]) for r in pts["records"]) == [("0", "0"), ("2", "2")]
    report = padyn.empirical_period_bound(g, [1, 2, 3])
    assert report["stabilized"]
    assert report["M_empirical"] == 7
    assert padyn.detect_period(g, [2, 2], 5) == 1


def test_triangular_and_transport():
    t = padyn.load_maps(map_path("triangular_q5.json"))[0].word()
    rep = padyn.triangular_periods(t, 10)
    assert rep["realized"] == [1, 2]
    assert rep["mu_bound"] == 2
    w = padyn.load_maps(map_path("conjugated_q3.json"))[0].word()
    assert padyn.conjugation_transport(w, 8)["holds"]


def test_certify_and_errors():
    desc = padyn.load_maps(map_path("henon_a_third.json"))[0]
    assert padyn.certify_rational(desc, [3, 5], [1, 2])["prime"] == 5
    with pytest.raises(padyn.PadynError) as info:
        padyn.certify_rational(desc, [3], [1, 2])
    assert info.value.kind == "NoGoodPrime"
    with pytest.raises(padyn.PadynError):
        padyn.parse_maps("{")


def test_round_trip_text():
    with open(map_path("henon_family_q3.json")) as fh:
        text = fh.read()
    assert padyn.serialize_maps(padyn.parse_maps(text)) == text
