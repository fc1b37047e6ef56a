import json

import pytest

from jenny5.teleop import messages as m


def test_parse_select_single_and_pair():
    assert m.parse_client_message('{"type":"select","group":"head","motor":0}') == \
        m.Select("head", 0)
    parsed = m.parse_client_message('{"type":"select","group":"head","motor":[0,1]}')
    assert parsed == m.Select("head", (0, 1))
    assert m.parse_client_message('{"type":"select","group":"platform"}') == \
        m.Select("platform", None)


def test_parse_tilt_bounds():
    tilt = m.parse_client_message('{"type":"tilt","pitch_deg":10,"roll_deg":-5.5}')
    assert tilt == m.Tilt(10, -5.5)
    with pytest.raises(m.MessageError):
        m.parse_client_message('{"type":"tilt","pitch_deg":91,"roll_deg":0}')


def test_parse_rejects_unknown_type_and_group():
    with pytest.raises(m.MessageError):
        m.parse_client_message('{"type":"warp"}')
    with pytest.raises(m.MessageError):
        m.parse_client_message('{"type":"select","group":"tail","motor":0}')
    with pytest.raises(m.MessageError):
        m.parse_client_message("not json at all")
    with pytest.raises(m.MessageError):
        m.parse_client_message("[1,2,3]")


def test_parse_detection_ranges():
    det = m.parse_client_message(
        '{"type":"detection","offset_x":0.5,"offset_y":-0.25,"apparent_size":0.8}')
    assert det == m.SyntheticDetection(0.5, -0.25, 0.8)
    with pytest.raises(m.MessageError):
        m.parse_client_message(
            '{"type":"detection","offset_x":2,"offset_y":0,"apparent_size":0.5}')
    with pytest.raises(m.MessageError):
        m.parse_client_message(
            '{"type":"detection","offset_x":0,"offset_y":0,"apparent_size":1.5}')


def test_parse_behavior_names():
    assert m.parse_client_message('{"type":"behavior_start","name":"center_head"}') == \
        m.BehaviorStart("center_head")
    with pytest.raises(m.MessageError):
        m.parse_client_message('{"type":"behavior_start","name":"dance"}')


def test_client_round_trip_through_dict():
    cases = [
        m.Select("left_arm", 2),
        m.Select("head", (0, 1)),
        m.Tilt(12.5, -3.0),
        m.SnapshotRequest(),
        m.TextCommand("stop"),
        m.BehaviorStart("follow_person"),
        m.BehaviorStop(),
        m.SyntheticDetection(0.1, 0.2, 0.3),
    ]
    for msg in cases:
        round_tripped = m.parse_client_message(json.dumps(m.client_message_to_dict(msg)))
        assert round_tripped == msg


def test_server_message_serialization():
    snap = m.SnapshotData(joints={"head": [180, 180]}, leg_height_cm=35.0,
                          platform_duty_pct=[0.0, 0.0], battery_v=16.8,
                          timestamp=123.0, errors=[])
    data = m.server_message_to_dict(snap)
    assert data["type"] == "snapshot"
    assert data["joints"]["head"] == [180, 180]
    assert m.server_message_to_dict(m.Ack()) == {"type": "ack"}
    assert m.server_message_to_dict(m.ErrorMessage("boom")) == {"type": "error", "text": "boom"}
    assert m.server_message_to_dict(m.BehaviorStatus("center_head", "running")) == \
        {"type": "behavior_status", "name": "center_head", "state": "running"}
    with pytest.raises(m.MessageError):
        m.BehaviorStatus("center_head", "confused")


def test_missing_field_is_reported():
    with pytest.raises(m.MessageError) as exc:
        m.parse_client_message('{"type":"tilt","pitch_deg":10}')
    assert "roll_deg" in str(exc.value)
