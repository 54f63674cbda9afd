import json
from fractions import Fraction

import pytest

from compactlines import instances as gen
from compactlines.serialization import (
    SerializationError,
    canonical,
    digest,
    function_from_json,
    function_to_json,
    line_from_json,
    line_to_json,
    measure_from_json,
    measure_to_json,
    operator_from_json,
    operator_to_json,
    parse_rat,
    rat,
    sequence_from_json,
    sequence_to_json,
)


def test_rationals_always_carry_a_denominator():
    assert rat(3) == "3/1"
    assert rat(Fraction(-2, 6)) == "-1/3"
    assert parse_rat("7/14") == Fraction(1, 2)


@pytest.mark.parametrize("bad", ["x", "1/0", 1.5, None, True])
def test_parse_rat_rejects(bad):
    with pytest.raises(SerializationError):
        parse_rat(bad)


def test_roundtrips_on_random_objects():
    for trial in range(60):
        rng = gen.rng_for(3, "serialization", trial)
        line = gen.random_line(rng)
        assert line_from_json(line_to_json(line)) == line
        mu = gen.random_measure(rng, line)
        assert measure_from_json(measure_to_json(mu)) == mu
        f = gen.random_test_function(rng, line)
        assert function_from_json(function_to_json(f), line) == f
        R = gen.random_operator(rng)
        assert operator_from_json(operator_to_json(R)) == R
        seq = gen.random_unit_sequence(rng, R.line, 6)
        back = sequence_from_json(sequence_to_json(seq))
        assert back.terms() == seq.terms()


def test_canonical_is_key_order_independent():
    a = {"b": 1, "a": [1, {"y": 2, "x": 3}]}
    b = json.loads(json.dumps(a, sort_keys=False))
    assert canonical(a) == canonical(b)
    assert digest(a) == digest(b) and len(digest(a)) == 12


def test_point_off_the_line_is_rejected():
    doc = {"line": {"kind": "finite", "size": 2}, "atoms": [{"point": {"finite": 5}, "weight": "1/1"}]}
    with pytest.raises(SerializationError):
        measure_from_json(doc)


def test_unknown_kinds_are_rejected():
    with pytest.raises(SerializationError):
        line_from_json({"kind": "circle"})
    with pytest.raises(SerializationError):
        operator_from_json({"kind": "mystery", "line": {"kind": "finite", "size": 1}})
