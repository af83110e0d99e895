"""Move-engine contracts plus the congruence/invariance oracles."""

import random

import pytest

from corkcalc.datum import (CorkPair, canonical_json, datum_hash,
                            full_linking_matrix, make_datum, two_handle, validate)
from corkcalc.errors import (BadLinkingError, DuplicateIdError, HashMismatchError,
                             HandleNotFoundError, IllegalMoveError,
                             NotBlowdownableError, NotCancellableError,
                             NotSeparatedError, NotSplitError,
                             NotWheelFamilyError, UnknownGeneratorError)
from corkcalc.families import build_Cm, build_W, build_X
from corkcalc.invariants import boundary_h1, homology
from corkcalc.linalg import IntMatrix
from corkcalc.moves import (MoveTrace, Recorder, attach_2handle, blow_down,
                            blow_up, cancel_1_2, cork_twist_pair,
                            minus_one_sphere_present, remove_split_zero_handle,
                            replay, rotate, slide_2_over_1, slide_2_over_2,
                            trace_from_text, trace_to_text, twist_wheel)


def two_zero_framed_linked():
    return make_datum((), [
        two_handle("h1", (), 0, {"h2": 1}),
        two_handle("h2", (), 0, {"h1": 1}),
    ])


def slide_congruence_matrix(d, h1, h2, sign):
    """Oracle: the elementary matrix realizing the slide on the full
    linking matrix (dot rows included)."""
    _, order = full_linking_matrix(d)
    n = len(order)
    i1, i2 = order.index(h1), order.index(h2)
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    rows[i2][i1] = sign
    return IntMatrix.from_rows(rows)


# --- slide_2_over_2 ---------------------------------------------------------------

def test_slide_framing_and_linking_update():
    d = two_zero_framed_linked()
    out = slide_2_over_2(d, "h1", "h2", 1)
    h1 = out.handle("h1")
    assert h1.framing == 2
    assert h1.lk("h2") == 1
    assert validate(out).ok


def test_slide_over_self_rejected():
    with pytest.raises(IllegalMoveError):
        slide_2_over_2(two_zero_framed_linked(), "h1", "h1", 1)
    with pytest.raises(HandleNotFoundError):
        slide_2_over_2(two_zero_framed_linked(), "h1", "ghost", 1)


def test_slide_is_full_matrix_congruence():
    rng = random.Random(5)
    d = build_W(3, 1)
    for step in range(100):
        if step % 10 == 0:
            d = build_W(3, 1)  # keep entry growth bounded
        ids = list(d.handle_ids)
        h1, h2 = rng.sample(ids, 2)
        sign = rng.choice((1, -1))
        before, order = full_linking_matrix(d)
        out = slide_2_over_2(d, h1, h2, sign)
        after, order2 = full_linking_matrix(out)
        assert order == order2
        e = slide_congruence_matrix(d, h1, h2, sign)
        assert e.transpose().mul(before).mul(e) == after
        d = out


def test_slides_preserve_homology_and_boundary():
    rng = random.Random(6)
    d = build_W(4, 1)
    prof0 = homology(d)
    bh0 = boundary_h1(d).invariant_factors
    for _ in range(100):
        h1, h2 = rng.sample(list(d.handle_ids), 2)
        d = slide_2_over_2(d, h1, h2, rng.choice((1, -1)))
        assert homology(d) == prof0
        assert boundary_h1(d).invariant_factors == bh0
        assert validate(d).ok


# --- slide_2_over_1 -----------------------------------------------------------------

def test_slide_over_dotted_circle_contract():
    d = make_datum(("a", "b"), [two_handle("h", [("a", 1)], 0)])
    out = slide_2_over_1(d, "h", "b", 1)
    h = out.handle("h")
    assert h.word.serialize() == ["a", "b"]
    assert h.lk("a") == 1 and h.lk("b") == 1
    assert h.framing == 0
    assert validate(out).ok


def test_slide_over_dotted_circle_involution():
    d = build_X(2, 1, "*0")
    out = slide_2_over_1(d, "b0", "a0", 1, end="back")
    back = slide_2_over_1(out, "b0", "a0", -1, end="back")
    assert canonical_json(back) == canonical_json(d.replace(meta={}))


def test_slide_over_dotted_front_end():
    d = make_datum(("a", "b"), [two_handle("h", [("a", 1)], 3)])
    out = slide_2_over_1(d, "h", "b", -1, end="front")
    assert out.handle("h").word.serialize() == ["-b", "a"]
    assert out.handle("h").framing == 3


# --- cancel_1_2 -----------------------------------------------------------------------

def test_cancel_basic_pair_gives_empty_datum():
    out = cancel_1_2(build_Cm(1), "a0", "b0")
    assert out.one_handles == () and out.two_handles == ()


def test_cancel_requires_single_pass():
    d = make_datum(("a",), [two_handle("h", [("a", 1), ("a", 1)], 0)])
    with pytest.raises(NotCancellableError):
        cancel_1_2(d, "a", "h")


def test_cancel_slides_other_words_free():
    d = build_X(2, 1, "*0")
    d = attach_2handle(d, "extra", ["a0", "b1", "a0"], 0, {})
    out = cancel_1_2(d, "a0", "b0")
    extra = out.handle("extra")
    assert extra.word.exponent_sum("a0") == 0
    assert "a0" not in out.one_handles and out.handle("b0") is None
    assert validate(out).ok


def test_cancel_preserves_boundary_and_profile():
    d = build_X(3, 1, "0*0")
    before_prof = homology(d)
    before_bh = boundary_h1(d).invariant_factors
    out = cancel_1_2(d, "a1", "b1")
    assert homology(out) == before_prof
    assert boundary_h1(out).invariant_factors == before_bh


# --- remove_split_zero_handle ------------------------------------------------------------

def test_remove_split_handle():
    d = make_datum((), [two_handle("u", (), 0)])
    out = remove_split_zero_handle(d, "u")
    assert out.two_handles == ()
    assert out.three_handles == d.three_handles


def test_remove_split_rejects_non_split():
    d = make_datum((), [two_handle("u", (), 1)])
    with pytest.raises(NotSplitError):
        remove_split_zero_handle(d, "u")
    linked = two_zero_framed_linked()
    with pytest.raises(NotSplitError):
        remove_split_zero_handle(linked, "h1")


def test_remove_split_drops_one_b2():
    d = attach_2handle(build_X(2, 1, "*0"), "u", [], 0, {})
    assert homology(d).b2 == 1
    out = remove_split_zero_handle(d, "u")
    assert homology(out).b2 == 0
    assert homology(out).h1_invariants == ()


# --- attach_2handle -------------------------------------------------------------------------

def test_attach_meridian_of_dotted_circle():
    d = attach_2handle(build_X(3, 1, "*00"), "z", ["b2"], -1, {})
    assert homology(d).b2 == 1
    assert validate(d).ok


def test_attach_split_zero_handle_gains_b2():
    d = attach_2handle(build_X(2, 1, "0*"), "u", [], 0, {})
    assert homology(d).b2 == 1


def test_attach_errors():
    base = build_X(2, 1, "*0")
    with pytest.raises(UnknownGeneratorError):
        attach_2handle(base, "z", ["ghost"], 0, {})
    with pytest.raises(BadLinkingError):
        attach_2handle(base, "z", [], 0, {"nope": 1})
    with pytest.raises(BadLinkingError):
        attach_2handle(base, "z", [], 0, {"a0": 1})  # dotted circles not linkable here
    with pytest.raises(DuplicateIdError):
        attach_2handle(base, "b0", [], 0, {})


def test_attach_symmetrizes_linking():
    d = attach_2handle(two_zero_framed_linked(), "h3", [], 0, {"h1": 2})
    assert d.handle("h1").lk("h3") == 2
    assert validate(d).ok


# --- blow moves --------------------------------------------------------------------------------

def test_blow_up_then_down_round_trip():
    d = build_X(2, 1, "*0")
    up = blow_up(d, "e", -1)
    assert homology(up).b2 == homology(d).b2 + 1
    down = blow_down(up, "e")
    assert canonical_json(down) == canonical_json(d)


def test_blow_down_split_minus_one():
    d = make_datum((), [two_handle("u", (), -1)])
    out = blow_down(d, "u")
    assert out.two_handles == ()


def test_blow_down_transfers_squares_and_products():
    d = make_datum((), [
        two_handle("e", (), -1, {"x": 1, "y": 2}),
        two_handle("x", (), 0, {"e": 1}),
        two_handle("y", (), 3, {"e": 2}),
    ])
    before = boundary_h1(d).invariant_factors
    out = blow_down(d, "e")
    assert out.handle("x").framing == 0 + 1
    assert out.handle("y").framing == 3 + 4
    assert out.handle("x").lk("y") == 0 + 1 * 2
    assert boundary_h1(out).invariant_factors == before
    assert homology(out).b2 == homology(d).b2 - 1


def test_blow_down_rejections():
    with pytest.raises(NotBlowdownableError):
        blow_down(make_datum((), [two_handle("u", (), 2)]), "u")
    d = make_datum(("a",), [two_handle("u", [("a", 1)], -1)])
    with pytest.raises(NotBlowdownableError):
        blow_down(d, "u")


def test_blow_down_shifts_signature_by_one():
    from corkcalc.invariants import intersection_form
    from corkcalc.linalg import signature

    d = make_datum((), [
        two_handle("e", (), -1, {"x": 1}),
        two_handle("x", (), 0, {"e": 1}),
    ])
    before = signature(intersection_form(d))
    out = blow_down(d, "e")
    after = signature(intersection_form(out))
    assert (after[0] - after[1]) - (before[0] - before[1]) == 1

    d_plus = make_datum((), [
        two_handle("e", (), 1, {"x": 1}),
        two_handle("x", (), 0, {"e": 1}),
    ])
    before = signature(intersection_form(d_plus))
    after = signature(intersection_form(blow_down(d_plus, "e")))
    assert (after[0] - after[1]) - (before[0] - before[1]) == -1


def test_minus_one_sphere_flag():
    assert minus_one_sphere_present(make_datum((), [two_handle("u", (), -1)]))
    assert not minus_one_sphere_present(build_X(3, 1, "*00"))


# --- cork twists ----------------------------------------------------------------------------------

def test_cork_twist_pair_flips_pattern():
    d = build_X(3, 1, "*00")
    out = cork_twist_pair(d, CorkPair("a0", "b0", 1))
    assert out.meta_map["sequence"] == "000"
    assert canonical_json(out) == canonical_json(build_X(3, 1, "000"))


def test_cork_twist_is_involution():
    d = build_X(2, 1, "0*")
    once = cork_twist_pair(d, CorkPair("b0", "a0", 1))
    twice = cork_twist_pair(once, CorkPair("a0", "b0", 1))
    assert canonical_json(twice) == canonical_json(d)


def test_cork_twist_requires_separation():
    w = build_W(3, 1)  # meridians pass through b1, b2
    with pytest.raises(NotSeparatedError):
        cork_twist_pair(w, CorkPair("b1", "a1", 1))


def test_cork_twist_preserves_profile_and_boundary():
    d = build_X(4, 2, "*0*0")
    out = cork_twist_pair(d, CorkPair("a2", "b2", 2))
    assert homology(out) == homology(d)
    assert boundary_h1(out).invariant_factors == boundary_h1(d).invariant_factors


def test_twist_wheel_matches_flipped_sequence():
    d = build_X(3, 1, "*00")
    out = twist_wheel(d, 1)
    assert out.meta_map["sequence"] == "0*0"
    assert canonical_json(out) == canonical_json(build_X(3, 1, "0*0"))


def test_twist_wheel_rewrites_externals():
    w = build_W(3, 1)
    out = twist_wheel(w, 1)
    assert validate(out).ok
    blowable = [h.id for h in out.two_handles if not h.word and h.framing == -1]
    assert blowable == ["m1_1"]
    assert out.handle("m1_1").lk("b1") == 1
    assert homology(out).b2 == homology(w).b2
    assert boundary_h1(out).invariant_factors == boundary_h1(w).invariant_factors


def test_twist_wheel_needs_metadata():
    plain = make_datum((), [two_handle("u", (), 0)])
    with pytest.raises(NotWheelFamilyError):
        twist_wheel(plain, 1)


# --- rotate -----------------------------------------------------------------------------------------

def test_rotate_full_turn_is_identity():
    d = build_X(4, 1, "*00*")
    out, mapping = rotate(d, 4)
    assert canonical_json(out) == canonical_json(d)
    assert all(mapping[k] == k for k in mapping)


def test_rotate_composes():
    d = build_X(4, 1, "*0*0")
    one_one, _ = rotate(rotate(d, 1)[0], 1)
    two, _ = rotate(d, 2)
    assert canonical_json(one_one) == canonical_json(two)


def test_rotate_automorphism_iff_period_divides():
    d = build_X(4, 1, "*0*0")
    assert canonical_json(rotate(d, 2)[0]) == canonical_json(d)
    assert canonical_json(rotate(d, 1)[0]) != canonical_json(d)
    r1, _ = rotate(build_X(3, 1, "*00"), 1)
    assert r1.meta_map["sequence"] == "0*0"


def test_rotate_produces_shifted_family_datum():
    from corkcalc.sequences import shift

    d = build_X(4, 2, "*00*")
    for i in range(4):
        out, _ = rotate(d, i)
        assert canonical_json(out) == canonical_json(build_X(4, 2, shift("*00*", i)))


def test_rotate_carries_externals():
    w = build_W(3, 1)
    out, _ = rotate(w, 1)
    assert validate(out).ok
    assert out.handle("m1_1").word.serialize() == ["b2"]


# --- traces and replay ----------------------------------------------------------------------------------

def test_replay_empty_trace():
    d = build_X(2, 1, "*0")
    assert replay(d, MoveTrace(datum_hash(d))) == d


def test_record_replay_round_trip():
    d = build_W(3, 1)
    rec = Recorder(d)
    rec.apply("twist_wheel", i=2)
    rec.apply("blow_down", h="m2_1")
    rec.apply("blow_down", h="m2_2")
    trace = rec.trace()
    result = replay(d, trace)
    assert datum_hash(result) == trace.final
    assert homology(result).b2 == 1


def test_replay_detects_tampering():
    d = build_X(3, 1, "*00")
    rec = Recorder(d)
    rec.apply("attach_2handle", id="u", word=[], framing=0, linking={})
    rec.apply("remove_split_zero_handle", h="u")
    text = trace_to_text(rec.trace())
    tampered = text.replace('"framing": 0', '"framing": 1', 1)
    with pytest.raises(HashMismatchError) as err:
        replay(d, trace_from_text(tampered))
    assert err.value.step_index == 0


def test_replay_rejects_wrong_start():
    d = build_X(3, 1, "*00")
    rec = Recorder(d)
    rec.apply("rotate", i=1)
    trace = rec.trace()
    with pytest.raises(HashMismatchError):
        replay(build_X(3, 1, "00*"), trace)


def test_trace_text_round_trip():
    d = build_X(2, 1, "0*")
    rec = Recorder(d, target={"family": "X", "n": 2, "m": 1, "sequence": "0*"})
    rec.apply("rotate", i=1)
    trace = rec.trace()
    parsed = trace_from_text(trace_to_text(trace))
    assert parsed == trace
    assert parsed.target_dict == {"family": "X", "n": 2, "m": 1, "sequence": "0*"}
