import pytest

from wildmatroid.constructions import build_mplus_witness, verify_union_wildness
from wildmatroid.core import FiniteMatroid
from wildmatroid.fields import GF
from wildmatroid.graphs import FiniteGraph
from wildmatroid.periodic import DOUBLED_H, RAYED_G, EdgeSet
from wildmatroid.serialize import (
    FormatError,
    certificate_from_json,
    certificate_to_json,
    coefficients_from_json,
    coefficients_to_json,
    dumps,
    edgeset_from_json,
    edgeset_to_json,
    graph_from_json,
    graph_to_json,
    loads,
    matroid_from_json,
    matroid_to_json,
)
from wildmatroid.thinsums import RayedThinFamily, build_lambda_f_oneray, build_lambda_f_threerung

from conftest import CORPUS


def round_trip(obj, to_json, from_json):
    text = dumps(to_json(obj))
    again = from_json(loads(text))
    assert dumps(to_json(again)) == text
    return again


def test_matroids_round_trip():
    for _, m in CORPUS[:80]:
        again = round_trip(m, matroid_to_json, matroid_from_json)
        assert again.same_matroid(FiniteMatroid.from_bases(
            [str(x) for x in m.ground], [[str(x) for x in b] for b in m.bases.as_lists()]))


def test_matroid_output_is_sorted():
    m = FiniteMatroid.from_bases("cab", [{"c"}, {"a"}, {"b"}])
    assert matroid_to_json(m)["bases"] == [["a"], ["b"], ["c"]]


def test_edge_sets_round_trip_bit_exactly():
    sets = [
        EdgeSet.tail(DOUBLED_H, ["u'", "r'"], residues=[1], period=2).add(("r", 1)),
        EdgeSet.finite(RAYED_G, ["l", ("p", 0)]),
        EdgeSet.everything(RAYED_G),
    ]
    for s in sets:
        assert round_trip(s, edgeset_to_json, edgeset_from_json).same_as(s)
    assert edgeset_to_json(sets[1])["exceptional"] == ["l", "p:0"]


def test_coefficients_round_trip():
    for lam in (build_lambda_f_oneray(3), build_lambda_f_threerung(1, 2, 4),
                build_lambda_f_oneray(2, RayedThinFamily(field=GF(3)))):
        again = round_trip(lam, coefficients_to_json, coefficients_from_json)
        assert again.field == lam.field
        assert all(again[e] == lam[e] for e in ["l", ("r", 4), ("p", 9), ("q", 1)])
    assert coefficients_to_json(build_lambda_f_oneray(3))["explicit"] == {"l": "-3/1", "r:3": "1/1"}


def test_coefficients_default_to_rationals():
    lam = coefficients_from_json({"explicit": {"l": "1/2"}, "periodic": []})
    assert lam["l"] * 2 == 1


def test_graphs_round_trip():
    g = FiniteGraph.from_pairs([("x", "y"), ("y", "y")])
    assert round_trip(g, graph_to_json, graph_from_json) == g


def test_certificates_round_trip():
    for cert in (build_mplus_witness(), verify_union_wildness(3)):
        again = round_trip(cert, certificate_to_json, certificate_from_json)
        assert again.checks == cert.checks and again.verdict == cert.verdict


@pytest.mark.parametrize(
    "text, fn",
    [
        ('{"ground": ["a"', matroid_from_json),
        ('{"ground": ["a"]}', matroid_from_json),
        ('{"ground": [1], "bases": [[1]]}', matroid_from_json),
        ('{"family": "NOPE", "exceptional": [], "onset": 0, "period": 1, "pattern": []}', edgeset_from_json),
        ('{"explicit": {"l": "x/y"}, "periodic": []}', coefficients_from_json),
        ('{"construction": "MPLUS_G"}', certificate_from_json),
    ],
)
def test_malformed_inputs_raise_format_errors(text, fn):
    with pytest.raises(FormatError):
        fn(loads(text))


def test_json_errors_report_position():
    with pytest.raises(FormatError, match="line 2, column"):
        loads('{\n  "a": }')
