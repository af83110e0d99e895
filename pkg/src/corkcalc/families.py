"""Generators for every named manifold datum plus bundled reference data.

A wheel datum has n circle pairs (radial circle ``a{j}``, circular circle
``b{j}``, linking number one inside the pair, all cross-pair linkings zero).
A {*,0}-sequence selects the dotted member of each pair: ``*`` dots the
radial circle and 0-frames the circular one, ``0`` the other way round.
The -m twist boxes of the planar picture are invisible at this fidelity;
m rides along as metadata and re-enters in the Legendrian front data.
"""

from __future__ import annotations

import os
from pathlib import Path

from .datum import KirbyDatum, make_datum, two_handle
from .errors import BadIndexError, DataFileMissingError, LengthMismatchError
from .moves import twist_wheel
from .sequences import STAR, check_sequence
from .words import single
from . import datum as datum_io

ENV_DATA_DIR = "CORKCALC_DATA_DIR"


def data_dir() -> Path:
    override = os.environ.get(ENV_DATA_DIR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def load_datum_file(path: Path | str) -> KirbyDatum:
    path = Path(path)
    if not path.exists():
        raise DataFileMissingError(f"datum file not found: {path}")
    return datum_io.loads(path.read_text(encoding="utf-8"))


# --- wheel families -------------------------------------------------------------

def build_X(n: int, m: int, x: str, family: str = "X") -> KirbyDatum:
    """The wheel datum for the given {*,0}-sequence."""
    if n < 1 or m < 1:
        raise BadIndexError("need n >= 1 and m >= 1")
    check_sequence(x)
    if len(x) != n:
        raise LengthMismatchError(f"sequence length {len(x)} does not match n={n}")
    ones = []
    handles = []
    for j, sym in enumerate(x):
        if sym == STAR:
            ones.append(f"a{j}")
            handles.append(two_handle(f"b{j}", single(f"a{j}"), 0))
        else:
            ones.append(f"b{j}")
            handles.append(two_handle(f"a{j}", single(f"b{j}"), 0))
    meta = {"family": family, "n": n, "m": m, "sequence": x}
    return make_datum(ones, handles, 0, meta)


def c_sequence(n: int) -> str:
    return STAR + "0" * (n - 1)


def d_sequence(n: int) -> str:
    return "0" + STAR * (n - 1)


def f_sequence(n: int) -> str:
    return ("0" + STAR) * n


def build_C(n: int, m: int) -> KirbyDatum:
    if n < 1:
        raise BadIndexError("need n >= 1")
    return build_X(n, m, c_sequence(n), family="C")


def build_D(n: int, m: int) -> KirbyDatum:
    if n < 1:
        raise BadIndexError("need n >= 1")
    return build_X(n, m, d_sequence(n), family="D")


def build_F(n: int, m: int) -> KirbyDatum:
    """Alternating family on a wheel of size 2n."""
    if n < 1:
        raise BadIndexError("need n >= 1")
    return build_X(2 * n, m, f_sequence(n), family="F")


def build_Cm(m: int) -> KirbyDatum:
    """The basic two-component cork datum (wheel of size one)."""
    return build_C(1, m)


def dot_zero_exchange(d: KirbyDatum) -> KirbyDatum:
    """Exchange all dots and 0s of a bare wheel datum (twist every pair)."""
    seq = d.meta_map.get("sequence")
    if not isinstance(seq, str):
        raise BadIndexError("dot-zero exchange needs wheel metadata")
    complement = "".join(STAR if c == "0" else "0" for c in seq)
    from .moves import _flip_pair
    current = d
    for j, sym in enumerate(seq):
        dotted, framed = (f"a{j}", f"b{j}") if sym == STAR else (f"b{j}", f"a{j}")
        current = _flip_pair(current, dotted, framed)
    assert current.meta_map.get("sequence") == complement
    return current


# --- decorated families ----------------------------------------------------------

def build_W(n: int, m: int) -> KirbyDatum:
    """The order-n cork wheel plus j parallel -1-framed meridians of the j-th
    circular circle for every 1 <= j <= n-1 (pairwise meridian linkings 0)."""
    if n < 2:
        raise BadIndexError("need n >= 2")
    d = build_C(n, m)
    handles = list(d.two_handles)
    for j in range(1, n):
        for k in range(1, j + 1):
            handles.append(two_handle(f"m{j}_{k}", single(f"b{j}"), -1))
    return make_datum(d.one_handles, handles, 0, d.meta_map | {"family": "W"})


def build_W_twisted(n: int, m: int, i: int) -> KirbyDatum:
    """Cork twist of the decorated wheel by the i-th rotation power.

    The dot pattern shifts under the twist, so exactly i meridians land on
    the 0-framed side with empty words: those are the blow-downable ones.
    """
    if not 0 <= i <= n - 1:
        raise BadIndexError(f"need 0 <= i <= n-1, got i={i}")
    w = build_W(n, m)
    if i == 0:
        return w
    twisted = twist_wheel(w, i)
    return twisted.replace(meta=twisted.meta_map | {"i": i})


def build_Z(n: int, m: int, i: int) -> KirbyDatum:
    """The order-n cork wheel with one -1-framed meridian on circle b{n-i}."""
    if not 0 < i < n:
        raise BadIndexError(f"need 0 < i < n, got i={i}")
    d = build_C(n, m)
    handles = list(d.two_handles) + [two_handle("z", single(f"b{n - i}"), -1)]
    return make_datum(d.one_handles, handles, 0,
                      d.meta_map | {"family": "Z", "i": i})


def build_Z_twisted(n: int, m: int, i: int) -> KirbyDatum:
    """Companion of build_Z: the twist that parks the extra handle on the
    0-framed member, exposing the square -1 sphere.

    The rotation power is n-i: the two bookkeeping orientations of a twist
    differ by inverting the power, and this one realizes the obstruction.
    """
    z = build_Z(n, m, i)
    return twist_wheel(z, (n - i) % n)


# --- bundled data: the modified wheel family and elliptic-surface forms ------------

def e_family_path(n: int, m: int) -> Path:
    return data_dir() / "families" / f"E_{n}_{m}.json"


def build_E(n: int, m: int) -> KirbyDatum:
    """Load the bundled modified-wheel datum.

    At this fidelity the modification's extra knotting is invisible (the
    pair separation and contractibility checks force the same algebraic
    data as the plain wheel), so the bundled files carry the wheel shape
    under the E tag; they exist as data so the transcription is auditable.
    """
    if n < 1 or m < 1:
        raise BadIndexError("need n >= 1 and m >= 1")
    d = load_datum_file(e_family_path(n, m))
    return d


def elliptic_surface_path(l: int) -> Path:
    return data_dir() / "surfaces" / f"E{l}.json"


def load_elliptic_surface(l: int) -> KirbyDatum:
    """Bundled reference datum whose intersection form carries the standard
    elliptic-surface characteristic numbers (computed, never trusted)."""
    if l < 1:
        raise BadIndexError("need l >= 1")
    return load_datum_file(elliptic_surface_path(l))


# --- generators for the bundled files (used by scripts/regenerate_data.py) --------

def generate_e_family(n: int, m: int) -> KirbyDatum:
    d = build_X(n, m, c_sequence(n), family="E")
    return d


_E8_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7))


def generate_elliptic_surface(l: int) -> KirbyDatum:
    """Plumbing-form 2-handlebody: l negative-E8 blocks plus 2l-1 hyperbolic
    pairs, realizing b2 = 12l - 2 and signature -8l."""
    handles = []
    for b in range(l):
        ids = [f"e{b}n{i}" for i in range(8)]
        links: dict[int, dict[str, int]] = {i: {} for i in range(8)}
        for i, j in _E8_EDGES:
            links[i][ids[j]] = 1
            links[j][ids[i]] = 1
        for i in range(8):
            handles.append(two_handle(ids[i], (), -2, links[i]))
    for k in range(2 * l - 1):
        handles.append(two_handle(f"h{k}a", (), 0, {f"h{k}b": 1}))
        handles.append(two_handle(f"h{k}b", (), 0, {f"h{k}a": 1}))
    return make_datum((), handles, 0, {"family": "El", "l": l})
