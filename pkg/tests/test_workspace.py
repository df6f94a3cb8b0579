import json
from pathlib import Path

import pytest
from hypothesis import given

from conftest import ideals
from gradmult.families import IntegralClosurePowers, Scaled
from gradmult.workspace import (
    WorkspaceError,
    ideal_to_json,
    load_workspace,
    parse_generators,
    parse_workspace,
)

MINIMAL = {
    "schema": "gradmult/1",
    "ring": {"variables": ["x", "y"]},
    "ideals": {"I": [[2, 0], [0, 3]], "M": "maximal"},
    "families": {"F": {"kind": "powers", "ideal": "I"}},
}


def doc(**changes):
    out = json.loads(json.dumps(MINIMAL))
    out.update(changes)
    return out


def test_minimal_document():
    ws = load_workspace(MINIMAL)
    assert ws.ring.dimension == 2
    assert sorted(ws.ideal("I").gens) == [(0, 3), (2, 0)]
    assert ws.family("F").term(2) == ws.ideal("I") ** 2
    assert ws.settings.q_max == 12 and ws.settings.horizon is None


def test_example_file_loads():
    ws = parse_workspace(Path(__file__).parent / "data" / "plane.json")
    assert isinstance(ws.family("S2"), Scaled)
    assert isinstance(ws.family("IC"), IntegralClosurePowers)
    assert ws.family("MI").term(1) == ws.ideal("M") * ws.ideal("I")


@pytest.mark.parametrize(
    "families, fragment",
    [
        ({"F": {"kind": "powers", "ideal": "nope"}}, "families.F.ideal: unknown ideal 'nope'"),
        ({"F": {"kind": "cubes", "ideal": "I"}}, "families.F.kind: unknown kind"),
        ({"F": {"kind": "powers"}}, "families.F.ideal: missing"),
        ({"F": {"kind": "saturation", "base": "G"}, "G": {"kind": "saturation", "base": "F"}}, "cyclic family definition"),
        ({"F": {"kind": "truncated", "base": "F", "level": 1}}, "cyclic"),
        ({"F": {"kind": "truncated", "base": "G", "level": 0}, "G": {"kind": "powers", "ideal": "I"}}, "positive integer"),
        ({"F": {"kind": "scaled", "ideal": "M", "alpha": "x"}}, "families.F.alpha: expected a rational"),
    ],
)
def test_family_errors(families, fragment):
    with pytest.raises(WorkspaceError) as info:
        load_workspace(doc(families=families))
    assert fragment in str(info.value)


def test_arity_mismatch():
    with pytest.raises(WorkspaceError, match=r"ideals.I\[1\]: exponent has length 3"):
        load_workspace(doc(ideals={"I": [[2, 0], [0, 3, 1]]}))


def test_negative_exponent():
    with pytest.raises(WorkspaceError, match="natural numbers"):
        load_workspace(doc(ideals={"I": [[-1, 0]]}))


def test_bad_schema_and_keys():
    with pytest.raises(WorkspaceError, match="schema"):
        load_workspace(doc(schema="other/2"))
    with pytest.raises(WorkspaceError, match="unknown top-level key"):
        load_workspace(doc(extras=1))
    with pytest.raises(WorkspaceError, match="settings.strategy"):
        load_workspace(doc(settings={"strategy": "guess"}))


def test_json_error_has_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"ring": {"variables": ["x"]},\n  "ideals": [1,}\n')
    with pytest.raises(WorkspaceError, match=r"broken.json:2:\d+: JSON parse error"):
        parse_workspace(path)


def test_quotient_must_be_proper():
    with pytest.raises(WorkspaceError, match="ring.quotient"):
        load_workspace(doc(ring={"variables": ["x", "y"], "quotient": "unit"}))


@given(ideals(d=2, max_exp=5))
def test_ideal_round_trip(I):
    again = parse_generators(I.ring, ideal_to_json(I), "ideals.I")
    assert again == I
    assert ideal_to_json(again) == ideal_to_json(I)
