import pytest

from corkcalc.datum import datum_hash
from corkcalc.errors import BadIndexError
from corkcalc.families import build_Cm, build_X
from corkcalc.isomorphism import datum_isomorphic
from corkcalc.moves import replay
from corkcalc.scripts import (chain_deletion_indices, deleted_sequence,
                              deletion_chain, deletion_script, insertion_script,
                              verify_chain, verify_deletion)
from corkcalc.sequences import all_sequences, is_constant


def test_deletion_star_branch():
    # deleting a dotted-radial pair
    assert verify_deletion(3, 1, "*0*", 2)


def test_deletion_zero_branch():
    assert verify_deletion(3, 1, "*00", 2)


def test_deletion_example_to_smaller_head_pattern():
    trace = deletion_script(3, 1, "*00", 2)
    result = replay(build_X(3, 1, "*00"), trace)
    assert datum_isomorphic(result, build_X(2, 1, "*0")) is not None


def test_deletion_example_second_family():
    trace = deletion_script(3, 1, "0**", 1)
    result = replay(build_X(3, 1, "0**"), trace)
    assert datum_isomorphic(result, build_X(2, 1, "0*")) is not None


def test_deletion_scripts_have_three_steps():
    for x, i in (("*00", 0), ("*00", 1)):
        assert len(deletion_script(3, 1, x, i).steps) == 3


def test_deletion_bad_parameters():
    with pytest.raises(BadIndexError):
        deletion_script(1, 1, "*", 0)
    with pytest.raises(BadIndexError):
        deletion_script(3, 1, "*00", 3)
    with pytest.raises(BadIndexError):
        deletion_script(2, 1, "*00", 0)


def test_deletion_exhaustive_small():
    for n in (2, 3):
        for x in all_sequences(n):
            if is_constant(x):
                continue
            for i in range(n):
                assert verify_deletion(n, 1, x, i), (n, x, i)


def test_chain_reaches_basic_cork():
    for x in ("*0", "0*", "*00", "0*0*", "00**0"):
        assert verify_chain(len(x), 1, x), x


def test_chain_indices_end_at_star():
    seq = "0*0*"
    for idx in chain_deletion_indices(seq):
        seq = deleted_sequence(seq, idx)
    assert seq == "*"


def test_chain_traces_compose():
    steps = deletion_chain(4, 2, "*0*0")
    current = build_X(4, 2, "*0*0")
    for step in steps:
        assert datum_hash(current) == step.trace.initial
        current = replay(current, step.trace)
    assert datum_isomorphic(current, build_Cm(2)) is not None


def test_insertion_script_is_reverse_embedding_witness():
    # inserting a 0 into "*0" at position 1 embeds the small wheel in the larger
    trace = insertion_script(2, 1, "*0", 1, "0")
    result = replay(build_X(3, 1, "*00"), trace)
    assert datum_isomorphic(result, build_X(2, 1, "*0")) is not None


def test_insertion_bad_parameters():
    with pytest.raises(BadIndexError):
        insertion_script(2, 1, "*0", 5, "0")
    with pytest.raises(BadIndexError):
        insertion_script(2, 1, "*0", 0, "x")


def test_deletion_trace_declares_target():
    trace = deletion_script(4, 1, "*000", 1)
    assert trace.target_dict == {"family": "X", "n": 3, "m": 1, "sequence": "*00"}
