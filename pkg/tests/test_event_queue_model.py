"""Event queue vs. a reference list model, across all four query forms.

The reference model is a plain list: find the first index matching the event
type (and param1 when required), pop it. Query forms mirror the documented
overloads: (a) type only, (b) type + read param1, (c) type + read param1 and
param2, (d) type + required param1 equality.
"""

import random

from jenny5.host.events import DeviceEvent, EventQueue, EventType


def model_query(model: list[DeviceEvent], event_type: EventType,
                required_param1: int | None = None) -> DeviceEvent | None:
    for i, event in enumerate(model):
        if event.event_type != event_type:
            continue
        if required_param1 is not None and event.param1 != required_param1:
            continue
        return model.pop(i)
    return None


def random_event(rng: random.Random) -> DeviceEvent:
    etype = rng.choice(list(EventType))
    return DeviceEvent(etype, param1=rng.randint(0, 3), param2=rng.randint(0, 5))


def run_interleaving(rng: random.Random, ops: int) -> None:
    queue = EventQueue()
    model: list[DeviceEvent] = []
    for _ in range(ops):
        roll = rng.random()
        if roll < 0.45:
            event = random_event(rng)
            queue.append(event)
            model.append(event)
        else:
            etype = rng.choice(list(EventType))
            form = rng.randrange(4)
            if form == 3:  # required-param1 form
                param1 = rng.randint(0, 3)
                got = queue.query(etype, param1)
                expected = model_query(model, etype, param1)
            else:  # type-only forms; b/c additionally read params off the event
                got = queue.query(etype)
                expected = model_query(model, etype)
            assert got == expected
            if got is not None and form in (1, 2):
                assert isinstance(got.param1, int)
                if form == 2:
                    assert isinstance(got.param2, int)
        assert queue.snapshot() == model


def test_model_equivalence_randomized():
    rng = random.Random(987)
    for _ in range(200):
        run_interleaving(rng, rng.randint(5, 60))


def test_first_occurrence_is_removed():
    queue = EventQueue()
    first = DeviceEvent(EventType.STEPPER_MOVE_DONE, 1, 0)
    second = DeviceEvent(EventType.STEPPER_MOVE_DONE, 2, 7)
    queue.append(DeviceEvent(EventType.IS_ALIVE))
    queue.append(first)
    queue.append(second)
    got = queue.query(EventType.STEPPER_MOVE_DONE)
    assert got == first
    assert queue.snapshot() == [DeviceEvent(EventType.IS_ALIVE), second]


def test_query_miss_leaves_queue_unchanged():
    queue = EventQueue()
    assert queue.query(EventType.STEPPER_HOMED) is None
    queue.append(DeviceEvent(EventType.STEPPER_MOVE_DONE, 2, 0))
    assert queue.query(EventType.STEPPER_MOVE_DONE, param1=0) is None
    assert len(queue) == 1


def test_required_param1_filter():
    queue = EventQueue()
    queue.append(DeviceEvent(EventType.STEPPER_MOVE_DONE, 2, 0))
    queue.append(DeviceEvent(EventType.STEPPER_MOVE_DONE, 0, 4))
    got = queue.query(EventType.STEPPER_MOVE_DONE, param1=0)
    assert got == DeviceEvent(EventType.STEPPER_MOVE_DONE, 0, 4)
    assert len(queue) == 1
