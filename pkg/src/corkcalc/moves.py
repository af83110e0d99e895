"""The move engine: validity-checked datum rewrites with replayable traces.

Move semantics
--------------
``slide_2_over_2`` adds a framed parallel copy of one 2-handle to another:
the word gains the slid-over handle's word, the framing changes by
``f2 + 2*sign*lk(h1,h2)``, the linking row changes by ``sign`` times the
other row, and ``lk(h1,h2)`` itself gains ``sign*f2``.  On the full linking
matrix this is a unimodular congruence.

``cancel_1_2`` removes a dotted circle together with a 2-handle passing it
exactly once, after sliding every other word free of the circle.

``remove_split_zero_handle`` is the fused pair "split 0-framed 2-handle
plus the 3-handle that caps it": the handle disappears and the modeled
3-handle absorbs the H2 class it carried, so the explicit 3-handle count
never changes.

``blow_down`` removes a +-1-framed empty-word handle, transferring squares
and products of linking numbers to the survivors; boundary homology is
untouched and b2 drops by one.

Cork twists exchange the roles inside a (dotted circle, 0-framed handle)
pair.  ``cork_twist_pair`` requires the pair to be algebraically separated;
``twist_wheel`` twists a whole wheel-family datum by a rotation power,
rewriting external handles that hang on the affected pairs (letters through
a circle losing its dot become linkings with the new 0-framed handle, and
vice versa; re-entered letters append at the word end, the only convention
available at this fidelity).

All moves are pure: they return fresh data and never mutate inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .datum import (KirbyDatum, TwoHandle, datum_hash, make_datum, two_handle,
                    validate_cork_pair, CorkPair)
from .errors import (BadLinkingError, CorkCalcError, DuplicateIdError,
                     HandleNotFoundError, HashMismatchError, IllegalMoveError,
                     NotBlowdownableError, NotCancellableError, NotSeparatedError,
                     NotSplitError, NotWheelFamilyError, UnknownGeneratorError)
from .sequences import check_sequence, shift
from .words import Word, parse_word, single

FRONT = "front"
BACK = "back"


def _require_handle(d: KirbyDatum, hid: str) -> TwoHandle:
    h = d.handle(hid)
    if h is None:
        raise HandleNotFoundError(f"no 2-handle named {hid}")
    return h


def _require_generator(d: KirbyDatum, g: str) -> str:
    if g not in d.one_handles:
        raise HandleNotFoundError(f"no dotted circle named {g}")
    return g


def _wheel_state(d: KirbyDatum):
    meta = d.meta_map
    seq = meta.get("sequence")
    n = meta.get("n")
    if not isinstance(seq, str) or not isinstance(n, int) or n != len(seq):
        raise NotWheelFamilyError("datum carries no wheel-family metadata")
    check_sequence(seq)
    from .datum import validate
    stale = [v for v in validate(d).violations if v.code == "META_INCONSISTENT"]
    if stale:
        raise NotWheelFamilyError(f"wheel metadata is stale: {stale[0].message}")
    return seq, n, meta


def _wheel_member_ids(meta: dict) -> set[str]:
    seq = meta.get("sequence")
    if not isinstance(seq, str):
        return set()
    out = set()
    for j in range(len(seq)):
        out.add(f"a{j}")
        out.add(f"b{j}")
    return out


def _drop_wheel_meta_if_touched(d: KirbyDatum, touched_ids: set[str]) -> dict:
    meta = d.meta_map
    if touched_ids & _wheel_member_ids(meta):
        for key in ("family", "sequence", "n", "m", "i"):
            meta.pop(key, None)
    return meta


def _rebuild(d: KirbyDatum, handles: list[TwoHandle], one_handles=None,
             meta: dict | None = None) -> KirbyDatum:
    return make_datum(one_handles if one_handles is not None else d.one_handles,
                      handles, d.three_handles,
                      meta if meta is not None else d.meta_map)


# --- handle slides ------------------------------------------------------------

def _slide_2_over_2_at(d: KirbyDatum, h1_id: str, h2_id: str, sign: int,
                       position: int | None) -> KirbyDatum:
    if h1_id == h2_id:
        raise IllegalMoveError("cannot slide a handle over itself")
    if sign not in (1, -1):
        raise IllegalMoveError("slide sign must be +1 or -1")
    h1 = _require_handle(d, h1_id)
    h2 = _require_handle(d, h2_id)

    inserted = h2.word if sign > 0 else h2.word.inverse()
    letters = h1.word.letters
    pos = len(letters) if position is None else position
    new_word = Word(letters[:pos] + inserted.letters + letters[pos:])

    new_framing = h1.framing + h2.framing + 2 * sign * h1.lk(h2_id)
    links = dict(h1.linking_map)
    for key, value in h2.linking_map.items():
        if key == h1_id:
            continue
        links[key] = links.get(key, 0) + sign * value
    links[h2_id] = h1.lk(h2_id) + sign * h2.framing

    new_h1 = TwoHandle(h1_id, new_word, new_framing, tuple(links.items()))
    out = []
    for h in d.two_handles:
        if h.id == h1_id:
            out.append(new_h1)
        else:
            hl = dict(h.linking_map)
            if new_h1.lk(h.id) != h.lk(h1_id):
                hl[h1_id] = new_h1.lk(h.id)
            out.append(TwoHandle(h.id, h.word, h.framing, tuple(hl.items())))
    meta = _drop_wheel_meta_if_touched(d, {h1_id})
    return _rebuild(d, out, meta=meta)


def slide_2_over_2(d: KirbyDatum, h1: str, h2: str, sign: int) -> KirbyDatum:
    """Slide 2-handle h1 over h2 (band at the word end)."""
    return _slide_2_over_2_at(d, h1, h2, sign, None)


def slide_2_over_1(d: KirbyDatum, h: str, g: str, sign: int, end: str = BACK) -> KirbyDatum:
    """Reroute 2-handle h once through the dotted circle g.

    The word gains g^sign at the chosen end and the g-linking record follows
    the new exponent sum; framings and 2-handle linkings are untouched.
    """
    if sign not in (1, -1):
        raise IllegalMoveError("slide sign must be +1 or -1")
    if end not in (FRONT, BACK):
        raise IllegalMoveError(f"end must be '{FRONT}' or '{BACK}'")
    handle = _require_handle(d, h)
    _require_generator(d, g)
    letter = ((g, sign),)
    new_word = Word(letter + handle.word.letters if end == FRONT
                    else handle.word.letters + letter)
    links = dict(handle.linking_map)
    links[g] = new_word.exponent_sum(g)
    new_handle = TwoHandle(h, new_word, handle.framing, tuple(links.items()))
    out = [new_handle if x.id == h else x for x in d.two_handles]
    meta = _drop_wheel_meta_if_touched(d, {h})
    return _rebuild(d, out, meta=meta)


# --- cancellations --------------------------------------------------------------

def cancel_1_2(d: KirbyDatum, g: str, h: str) -> KirbyDatum:
    """Cancel the dotted circle g against the 2-handle h passing it once.

    Every other word is first slid over h until g-free (band placed at each
    g-occurrence), then the pair is erased.
    """
    _require_generator(d, g)
    handle = _require_handle(d, h)
    if len(handle.word) != 1 or handle.word.letters[0][0] != g:
        raise NotCancellableError(
            f"word of {h} does not reduce to a single pass through {g}")
    s0 = handle.word.letters[0][1]

    current = d
    touched = {g, h}
    progress = True
    while progress:
        progress = False
        for other in current.two_handles:
            if other.id == h:
                continue
            occurrence = next(((i, l) for i, l in enumerate(other.word.letters)
                               if l[0] == g), None)
            if occurrence is None:
                continue
            idx, (unused, e) = occurrence
            sigma = -e * s0  # inserted copy is g^{-e}, cancelling the occurrence
            current = _slide_2_over_2_at(current, other.id, h, sigma, idx + 1)
            touched.add(other.id)
            progress = True
            break

    survivors = []
    for x in current.two_handles:
        if x.id == h:
            continue
        links = {k: v for k, v in x.linking_map.items() if k not in (g, h)}
        survivors.append(TwoHandle(x.id, x.word, x.framing, tuple(links.items())))
    ones = tuple(u for u in current.one_handles if u != g)
    meta = _drop_wheel_meta_if_touched(current, touched)
    return _rebuild(current, survivors, one_handles=ones, meta=meta)


def remove_split_zero_handle(d: KirbyDatum, h: str) -> KirbyDatum:
    """Remove a split 0-framed 2-handle, capping it with a modeled 3-handle.

    The explicit 3-handle count is unchanged: the fused move attaches the
    3-handle and cancels it against the removed 2-handle in one step.
    """
    handle = _require_handle(d, h)
    if handle.word or handle.framing != 0 or handle.linking:
        raise NotSplitError(f"{h} is not a split 0-framed handle")
    survivors = [x for x in d.two_handles if x.id != h]
    meta = _drop_wheel_meta_if_touched(d, {h})
    return _rebuild(d, survivors, meta=meta)


# --- attachments and blow moves -------------------------------------------------

def attach_2handle(d: KirbyDatum, hid: str, letters, framing: int,
                   linking: dict[str, int] | None = None) -> KirbyDatum:
    """Attach a new 2-handle along a word with prescribed framing/linkings."""
    if d.handle(hid) is not None or hid in d.one_handles:
        raise DuplicateIdError(f"id {hid} already in use")
    w = parse_word(letters) if letters and isinstance(letters[0], str) else Word(tuple(letters))
    unknown = w.generators() - set(d.one_handles)
    if unknown:
        raise UnknownGeneratorError(f"word uses unknown generators {sorted(unknown)}")
    links = dict(linking or {})
    handle_ids = set(d.handle_ids)
    for key in links:
        if key not in handle_ids:
            raise BadLinkingError(f"linking names {key}, which is not a 2-handle")
    new = two_handle(hid, w, framing, links)
    out = []
    for x in d.two_handles:
        if new.lk(x.id) != 0:
            xl = dict(x.linking_map)
            xl[hid] = new.lk(x.id)
            out.append(TwoHandle(x.id, x.word, x.framing, tuple(xl.items())))
        else:
            out.append(x)
    out.append(new)
    return _rebuild(d, out)


def blow_up(d: KirbyDatum, hid: str, sign: int) -> KirbyDatum:
    """Add a split +-1-framed unknotted 2-handle."""
    if sign not in (1, -1):
        raise IllegalMoveError("blow-up sign must be +1 or -1")
    if d.handle(hid) is not None or hid in d.one_handles:
        raise DuplicateIdError(f"id {hid} already in use")
    out = list(d.two_handles) + [TwoHandle(hid, Word(), sign, ())]
    return _rebuild(d, out)


def blow_down(d: KirbyDatum, h: str) -> KirbyDatum:
    """Remove a +-1-framed empty-word 2-handle, twisting the survivors."""
    handle = _require_handle(d, h)
    eps = handle.framing
    if handle.word or eps not in (1, -1):
        raise NotBlowdownableError(f"{h} is not a +-1-framed empty-word handle")
    ks = {x.id: x.lk(h) for x in d.two_handles if x.id != h}
    out = []
    for x in d.two_handles:
        if x.id == h:
            continue
        k = ks[x.id]
        links = {key: v for key, v in x.linking_map.items() if key != h}
        for other, k2 in ks.items():
            if other == x.id:
                continue
            adjusted = links.get(other, 0) - eps * k * k2
            links[other] = adjusted
        out.append(TwoHandle(x.id, x.word, x.framing - eps * k * k,
                             tuple(links.items())))
    touched = {h} | {hid for hid, k in ks.items() if k != 0}
    meta = _drop_wheel_meta_if_touched(d, touched)
    return _rebuild(d, out, meta=meta)


def minus_one_sphere_present(d: KirbyDatum) -> bool:
    """Blow-down eligibility flag: a -1-framed empty-word handle exists.

    Such a handle caps off to an embedded sphere of square -1, which
    obstructs any Stein structure on the ambient 4-manifold.
    """
    return any(not h.word and h.framing == -1 for h in d.two_handles)


# --- cork twists -----------------------------------------------------------------

def _flip_pair(d: KirbyDatum, dotted: str, framed: str) -> KirbyDatum:
    """Exchange roles in a (dotted circle, 0-framed single-pass handle) pair,
    rewriting external attachments.  Geometric linking numbers are preserved;
    only words and the dotted/framed role sets change."""
    _require_generator(d, dotted)
    h0 = _require_handle(d, framed)
    if h0.framing != 0:
        raise NotSeparatedError(f"{framed} must have framing 0 to twist")
    if len(h0.word) != 1 or h0.word.letters[0][0] != dotted:
        raise NotSeparatedError(f"{framed} must pass {dotted} exactly once to twist")
    sigma = h0.word.letters[0][1]

    new_handles: list[TwoHandle] = []
    gen_links = {framed: sigma}
    for e in d.two_handles:
        if e.id == framed:
            continue
        k_e = e.word.exponent_sum(dotted)
        j_e = e.lk(framed)
        new_word = e.word.delete_generator(dotted) * (single(framed) ** j_e)
        links = dict(e.linking_map)
        links[framed] = j_e   # now the dotted record, equal to the new exponent sum
        links[dotted] = k_e   # now a 2-handle linking
        new_handles.append(TwoHandle(e.id, new_word, e.framing, tuple(links.items())))
        if k_e:
            gen_links[e.id] = k_e
    new_handles.append(TwoHandle(dotted, single(framed) ** sigma, 0,
                                 tuple(gen_links.items())))

    ones = tuple(u for u in d.one_handles if u != dotted) + (framed,)
    meta = d.meta_map
    seq = meta.get("sequence")
    if isinstance(seq, str):
        for j in range(len(seq)):
            pair = {f"a{j}", f"b{j}"}
            if {dotted, framed} == pair:
                flipped = "0" if seq[j] == "*" else "*"
                meta["sequence"] = seq[:j] + flipped + seq[j + 1:]
                break
    return _rebuild(d, new_handles, one_handles=ones, meta=meta)


def cork_twist_pair(d: KirbyDatum, pair: CorkPair) -> KirbyDatum:
    """Twist an algebraically separated cork pair (dot/0 exchange)."""
    problems = validate_cork_pair(d, pair)
    if problems:
        raise NotSeparatedError("; ".join(problems))
    return _flip_pair(d, pair.dotted, pair.zero_handle)


def twist_wheel(d: KirbyDatum, i: int) -> KirbyDatum:
    """Cork twist of a wheel-family datum by the i-th rotation power.

    Realized as the composite of pair twists at every position where the
    shifted dot pattern disagrees with the current one; handles attached to
    the twisted pairs are rewritten accordingly.
    """
    seq, n, meta = _wheel_state(d)
    target = shift(seq, i)
    current = d
    for j in range(n):
        if target[j] != seq[j]:
            sym = seq[j]
            dotted, framed = (f"a{j}", f"b{j}") if sym == "*" else (f"b{j}", f"a{j}")
            current = _flip_pair(current, dotted, framed)
    return current


def rotate(d: KirbyDatum, i: int):
    """Relabel wheel pairs by the rotation; returns (datum, id mapping).

    The result is the datum of the shifted sequence; the rotation is an
    automorphism exactly when the shift fixes the sequence.
    """
    seq, n, meta = _wheel_state(d)
    i %= n
    mapping = {}
    for j in range(n):
        k = (j + i) % n
        mapping[f"a{j}"] = f"a{k}"
        mapping[f"b{j}"] = f"b{k}"

    def rename(x: str) -> str:
        return mapping.get(x, x)

    ones = tuple(rename(g) for g in d.one_handles)
    handles = []
    for h in d.two_handles:
        links = {rename(k): v for k, v in h.linking_map.items()}
        handles.append(TwoHandle(rename(h.id), h.word.rename(mapping), h.framing,
                                 tuple(links.items())))
    meta["sequence"] = shift(seq, i)
    return _rebuild(d, handles, one_handles=ones, meta=meta), mapping


# --- traces and replay ------------------------------------------------------------

TRACE_FORMAT = "corkcalc-trace/1"


@dataclass(frozen=True)
class MoveStep:
    move: str
    params: tuple[tuple[str, object], ...]
    pre: str
    post: str

    @property
    def params_dict(self) -> dict:
        return {k: v for k, v in self.params}


@dataclass(frozen=True)
class MoveTrace:
    initial: str
    steps: tuple[MoveStep, ...] = ()
    target: tuple[tuple[str, object], ...] | None = None

    @property
    def target_dict(self) -> dict | None:
        return None if self.target is None else {k: v for k, v in self.target}

    @property
    def final(self) -> str:
        return self.steps[-1].post if self.steps else self.initial


def _freeze(obj):
    if isinstance(obj, dict):
        return tuple(sorted((k, _freeze(v)) for k, v in obj.items()))
    if isinstance(obj, list):
        return tuple(_freeze(v) for v in obj)
    return obj


def _thaw(obj):
    if isinstance(obj, tuple):
        if all(isinstance(e, tuple) and len(e) == 2 and isinstance(e[0], str) for e in obj):
            return {k: _thaw(v) for k, v in obj}
        return [_thaw(v) for v in obj]
    return obj


def _apply_attach(d, p):
    return attach_2handle(d, p["id"], p["word"], p["framing"], p.get("linking") or {})


MOVES = {
    "slide_2_over_2": lambda d, p: slide_2_over_2(d, p["h1"], p["h2"], p["sign"]),
    "slide_2_over_1": lambda d, p: slide_2_over_1(d, p["h"], p["g"], p["sign"], p.get("end", BACK)),
    "cancel_1_2": lambda d, p: cancel_1_2(d, p["g"], p["h"]),
    "remove_split_zero_handle": lambda d, p: remove_split_zero_handle(d, p["h"]),
    "attach_2handle": _apply_attach,
    "blow_up": lambda d, p: blow_up(d, p["id"], p["sign"]),
    "blow_down": lambda d, p: blow_down(d, p["h"]),
    "cork_twist_pair": lambda d, p: cork_twist_pair(
        d, CorkPair(p["dotted"], p["zero_handle"], p.get("m", 1))),
    "twist_wheel": lambda d, p: twist_wheel(d, p["i"]),
    "rotate": lambda d, p: rotate(d, p["i"])[0],
}


def apply_move(d: KirbyDatum, move: str, params: dict) -> KirbyDatum:
    if move not in MOVES:
        raise IllegalMoveError(f"unknown move {move!r}")
    return MOVES[move](d, params)


class Recorder:
    """Applies moves while recording a hash-chained trace."""

    def __init__(self, initial: KirbyDatum, target: dict | None = None):
        self.current = initial
        self._steps: list[MoveStep] = []
        self._initial_hash = datum_hash(initial)
        self._target = target

    def apply(self, move: str, **params) -> KirbyDatum:
        pre = datum_hash(self.current)
        result = apply_move(self.current, move, params)
        post = datum_hash(result)
        self._steps.append(MoveStep(move, _freeze(params), pre, post))
        self.current = result
        return result

    def trace(self) -> MoveTrace:
        return MoveTrace(self._initial_hash, tuple(self._steps),
                         None if self._target is None else _freeze(self._target))


def replay(initial: KirbyDatum, trace: MoveTrace) -> KirbyDatum:
    """Deterministically re-run a trace, verifying the hash chain."""
    current = initial
    if datum_hash(current) != trace.initial:
        raise HashMismatchError("initial datum does not match trace header", -1)
    for idx, step in enumerate(trace.steps):
        if datum_hash(current) != step.pre:
            raise HashMismatchError(f"pre-hash mismatch at step {idx}", idx)
        current = apply_move(current, step.move, step.params_dict)
        if datum_hash(current) != step.post:
            raise HashMismatchError(f"post-hash mismatch at step {idx}", idx)
    return current


def trace_to_text(trace: MoveTrace) -> str:
    lines = [json.dumps({"format": TRACE_FORMAT, "initial": trace.initial,
                         "target": trace.target_dict}, sort_keys=True)]
    for s in trace.steps:
        lines.append(json.dumps({"move": s.move, "params": _thaw(s.params),
                                 "pre": s.pre, "post": s.post}, sort_keys=True))
    return "\n".join(lines) + "\n"


def trace_from_text(text: str) -> MoveTrace:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CorkCalcError("empty trace file")
    header = json.loads(lines[0])
    if header.get("format") != TRACE_FORMAT:
        raise CorkCalcError(f"unsupported trace format {header.get('format')!r}")
    steps = []
    for ln in lines[1:]:
        obj = json.loads(ln)
        steps.append(MoveStep(obj["move"], _freeze(obj["params"]), obj["pre"], obj["post"]))
    target = header.get("target")
    return MoveTrace(header["initial"], tuple(steps),
                     None if target is None else _freeze(target))
