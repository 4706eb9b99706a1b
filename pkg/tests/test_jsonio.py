import pytest

from heflab import jsonio
from heflab.arrays import PartiallyFilledArray, cyclic_diagonal_skeleton
from heflab.orderings import Orientation
from heflab.rings import Ring, default_support


def test_array_round_trip(rm53):
    obj = jsonio.array_to_json(rm53)
    assert obj["v"] == 31 and obj["t"] == 1
    assert jsonio.array_from_json(obj) == rm53


def test_skeleton_round_trip(ring31):
    skel = cyclic_diagonal_skeleton(5, 3)
    obj = jsonio.skeleton_to_json(skel, ring31)
    assert all(set(c) == {"i", "j"} for c in obj["cells"])
    loaded, ring = jsonio.skeleton_from_json(obj)
    assert loaded == skel and ring == ring31


def test_support_round_trip(ring31):
    omega = default_support(ring31)
    assert jsonio.support_from_json(jsonio.support_to_json(omega)) == omega


def test_orientation_round_trip():
    orient = Orientation((1, -1, 1), (-1, 1, 1))
    assert jsonio.orientation_from_json(jsonio.orientation_to_json(orient)) == orient


def test_embedding_round_trip(k7):
    loaded = jsonio.embedding_from_json(jsonio.embedding_to_json(k7))
    assert loaded.rho0 == k7.rho0 and loaded.ring == k7.ring


def test_missing_keys_rejected():
    with pytest.raises(jsonio.FormatError):
        jsonio.array_from_json({"m": 3, "n": 3, "v": 19})
    with pytest.raises(jsonio.FormatError):
        jsonio.orientation_from_json({"R": [1]})


def test_census_payload_shape(k7):
    from heflab.embedding import all_faces, euler_genus

    census = all_faces(k7)
    payload = jsonio.census_to_json(census, euler_genus(census, k7.ring))
    assert payload == {"faces": [{"length": 3, "count": 14}], "genus": 1}


def test_aut_report_payload(k7):
    from heflab.autiso import full_aut

    payload = jsonio.aut_report_to_json(full_aut(k7))
    assert payload["aut0_plus"] == 6 and payload["aut0_minus"] == 0
    assert payload["aut_order"] == 42 and not payload["translations_only"]
    assert len(payload["generators"]) == 5  # the identity is not a generator
    assert all(len(g) == 7 for g in payload["generators"])
