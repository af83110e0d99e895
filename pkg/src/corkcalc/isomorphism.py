"""Bounded isomorphism search between Kirby data.

Two data are isomorphic when a relabeling of dotted circles and 2-handles,
together with per-component orientation flips, matches words (up to free
reduction, inversion, and cyclic permutation), framings, linkings, and the
3-handle count.

Wheel-tagged data (both carrying family metadata) compare by cyclic
rotations of the pair indices only: the wheel structure is part of the
datum's identity, so a pure dot-pattern permutation that is not a rotation
is NOT a witness.  Data without (or with only one-sided) wheel tags fall
back to general bounded backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .datum import KirbyDatum, TwoHandle
from .errors import SearchBudgetExceededError
from .words import Word

DEFAULT_MAX_HANDLES = 24
_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class IsoWitness:
    generator_map: tuple[tuple[str, str], ...]
    handle_map: tuple[tuple[str, str], ...]
    generator_signs: tuple[tuple[str, int], ...]
    handle_signs: tuple[tuple[str, int], ...]

    @property
    def generator_map_dict(self):
        return dict(self.generator_map)

    @property
    def handle_map_dict(self):
        return dict(self.handle_map)


def _cyclic_rotation_equal(w1: Word, w2: Word) -> bool:
    """Equality of cyclic words, orientation NOT quotiented out."""
    a, b = w1.cyclic_reduce(), w2.cyclic_reduce()
    if len(a) != len(b):
        return False
    return any(rot.letters == b.letters for rot in a.rotations())


def check_witness(d1: KirbyDatum, d2: KirbyDatum, w: IsoWitness) -> bool:
    """Verify a witness by direct comparison under the relabeling.

    A handle sign of -1 reverses the attaching circle: the word inverts and
    every linking with that handle negates.  A generator sign of -1 negates
    the generator's occurrences in all words (and hence its linkings).
    """
    gmap = w.generator_map_dict
    hmap = w.handle_map_dict
    gsign = dict(w.generator_signs)
    hsign = dict(w.handle_signs)
    gens1 = set(d1.one_handles)
    gens2 = set(d2.one_handles)
    if sorted(gmap) != sorted(d1.one_handles) or sorted(gmap.values()) != sorted(d2.one_handles):
        return False
    if sorted(hmap) != sorted(d1.handle_ids) or sorted(hmap.values()) != sorted(d2.handle_ids):
        return False
    if d1.three_handles != d2.three_handles:
        return False
    for h in d1.two_handles:
        target = d2.handle(hmap[h.id])
        if target is None or target.framing != h.framing:
            return False
        mapped = _mapped_word(h.word, gmap, gsign)
        if hsign.get(h.id, 1) < 0:
            mapped = mapped.inverse()
        if not _cyclic_rotation_equal(mapped, target.word):
            return False
        mine = {hmap[k]: v * hsign.get(h.id, 1) * hsign.get(k, 1)
                for k, v in h.linking_map.items() if k not in gens1}
        theirs = {k: v for k, v in target.linking_map.items() if k not in gens2}
        if mine != theirs:
            return False
    return True


def _mapped_word(word: Word, gmap: dict[str, str], gsign: dict[str, int]) -> Word:
    letters = []
    for g, s in word.letters:
        letters.append((gmap[g], s * gsign.get(g, 1)))
    return Word(tuple(letters))


def _wheel_meta(d: KirbyDatum):
    meta = d.meta_map
    seq = meta.get("sequence")
    n = meta.get("n")
    if not isinstance(seq, str) or not isinstance(n, int) or n != len(seq):
        return None
    if len(d.two_handles) != n or len(d.one_handles) != n:
        return None  # wheel mode only for bare family data
    if n < 2:
        return None  # a single pair has no radial/circular distinction
    return seq


def datum_isomorphic(d1: KirbyDatum, d2: KirbyDatum,
                     max_handles: int = DEFAULT_MAX_HANDLES) -> IsoWitness | None:
    """Search for a witnessing relabeling; None when the search exhausts.

    Raises SearchBudgetExceededError when either datum is larger than
    ``max_handles`` 2-handles.
    """
    if len(d1.two_handles) > max_handles or len(d2.two_handles) > max_handles:
        raise SearchBudgetExceededError(
            f"datum exceeds the {max_handles}-handle search bound")
    if d1.three_handles != d2.three_handles:
        return None
    if len(d1.one_handles) != len(d2.one_handles):
        return None
    if len(d1.two_handles) != len(d2.two_handles):
        return None

    seq1, seq2 = _wheel_meta(d1), _wheel_meta(d2)
    if seq1 is not None and seq2 is not None:
        return _wheel_isomorphic(d1, seq1, d2, seq2)
    return _general_isomorphic(d1, d2)


def _wheel_isomorphic(d1, seq1, d2, seq2) -> IsoWitness | None:
    n = len(seq1)
    if n != len(seq2):
        return None
    for r in range(n):
        if all(seq2[(j + r) % n] == seq1[j] for j in range(n)):
            gmap, hmap = {}, {}
            for j in range(n):
                k = (j + r) % n
                if seq1[j] == "*":
                    gmap[f"a{j}"] = f"a{k}"
                    hmap[f"b{j}"] = f"b{k}"
                else:
                    gmap[f"b{j}"] = f"b{k}"
                    hmap[f"a{j}"] = f"a{k}"
            witness = IsoWitness(tuple(sorted(gmap.items())), tuple(sorted(hmap.items())),
                                 tuple((g, 1) for g in sorted(gmap)),
                                 tuple((h, 1) for h in sorted(hmap)))
            if check_witness(d1, d2, witness):
                return witness
    return None


def _handle_signature(h: TwoHandle):
    return (h.framing, len(h.word.cyclic_reduce()),
            tuple(sorted(abs(v) for v in h.linking_map.values())))


def _general_isomorphic(d1: KirbyDatum, d2: KirbyDatum) -> IsoWitness | None:
    handles1 = sorted(d1.two_handles, key=lambda h: (_handle_signature(h), h.id))
    by_sig2: dict = {}
    for h in d2.two_handles:
        by_sig2.setdefault(_handle_signature(h), []).append(h)
    for h in handles1:
        if _handle_signature(h) not in by_sig2:
            return None

    nodes = [0]

    def spend():
        nodes[0] += 1
        if nodes[0] > _NODE_BUDGET:
            raise SearchBudgetExceededError("isomorphism search node budget exhausted")

    def backtrack(idx, hmap, hsign, gmap, gsign, used):
        spend()
        if idx == len(handles1):
            return _finish(d1, d2, hmap, hsign, gmap, gsign)
        h = handles1[idx]
        for cand in by_sig2[_handle_signature(h)]:
            if cand.id in used:
                continue
            for orient in (1, -1):
                for alignment in _word_alignments(h.word, cand.word, orient, gmap, gsign):
                    new_gmap, new_gsign = alignment
                    if not _links_compatible(d1, d2, hmap, hsign, h, cand, orient):
                        continue
                    hmap2 = dict(hmap)
                    hmap2[h.id] = cand.id
                    hsign2 = dict(hsign)
                    hsign2[h.id] = orient
                    result = backtrack(idx + 1, hmap2, hsign2, new_gmap, new_gsign,
                                       used | {cand.id})
                    if result is not None:
                        return result
        return None

    return backtrack(0, {}, {}, {}, {}, frozenset())


def _word_alignments(w1: Word, w2: Word, orient: int, gmap, gsign):
    """Yield extended (gmap, gsign) dicts aligning w1 (possibly inverted)
    with some cyclic rotation of w2.

    Both sides are cyclically reduced first: conjugator letters impose no
    constraints (zero exponent sums), and rotations of a cyclically reduced
    word stay reduced, so lengths compare honestly."""
    source = (w1 if orient > 0 else w1.inverse()).cyclic_reduce()
    target = w2.cyclic_reduce()
    if len(source) != len(target):
        return
    if not source:
        yield dict(gmap), dict(gsign)
        return
    for rot in target.rotations():
        new_gmap = dict(gmap)
        new_gsign = dict(gsign)
        ok = True
        for (g1, s1), (g2, s2) in zip(source.letters, rot.letters):
            want_sign = s1 * s2  # gsign[g1] must satisfy s1 * gsign = s2
            if g1 in new_gmap:
                if new_gmap[g1] != g2 or new_gsign[g1] != want_sign:
                    ok = False
                    break
            else:
                if g2 in new_gmap.values():
                    ok = False
                    break
                new_gmap[g1] = g2
                new_gsign[g1] = want_sign
        if ok:
            yield new_gmap, new_gsign


def _links_compatible(d1, d2, hmap, hsign, h, cand, orient) -> bool:
    for placed_id, placed_target in hmap.items():
        placed = d1.handle(placed_id)
        target = d2.handle(placed_target)
        expect = h.lk(placed_id) * orient * hsign[placed_id]
        if cand.lk(placed_target) != expect:
            return False
        if placed.lk(h.id) * orient * hsign[placed_id] != target.lk(cand.id):
            return False
    return True


def _finish(d1, d2, hmap, hsign, gmap, gsign) -> IsoWitness | None:
    # extend the generator map over unused generators (free choice)
    unused1 = [g for g in d1.one_handles if g not in gmap]
    unused2 = [g for g in d2.one_handles if g not in set(gmap.values())]
    if len(unused1) != len(unused2):
        return None
    full_gmap = dict(gmap)
    full_gsign = dict(gsign)
    for g1, g2 in zip(sorted(unused1), sorted(unused2)):
        full_gmap[g1] = g2
        full_gsign[g1] = 1
    witness = IsoWitness(tuple(sorted(full_gmap.items())),
                         tuple(sorted(hmap.items())),
                         tuple(sorted(full_gsign.items())),
                         tuple(sorted(hsign.items())))
    if check_witness(d1, d2, witness):
        return witness
    return None
