"""Freely reduced words over named generators.

Letters are (generator, sign) pairs with sign +1 or -1.  Words are stored
base-pointed and freely reduced; comparison up to cyclic permutation and
inversion is provided separately for relator-style equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

Letter = tuple[str, int]


def reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    """Freely reduce a letter sequence with a single stack pass."""
    stack: list[Letter] = []
    for gen, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        reduced = reduce_letters(self.letters)
        object.__setattr__(self, "letters", reduced)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        if k == 0:
            return Word()
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def exponent_sum(self, gen: str) -> int:
        return sum(s for g, s in self.letters if g == gen)

    def exponents(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for g, s in self.letters:
            out[g] = out.get(g, 0) + s
        return out

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def delete_generator(self, gen: str) -> "Word":
        return Word(tuple(l for l in self.letters if l[0] != gen))

    def rename(self, mapping: Mapping[str, str]) -> "Word":
        return Word(tuple((mapping.get(g, g), s) for g, s in self.letters))

    def flip_generator(self, gen: str) -> "Word":
        return Word(tuple((g, -s if g == gen else s) for g, s in self.letters))

    def cyclic_reduce(self) -> "Word":
        ls = list(self.letters)
        while len(ls) >= 2 and ls[0][0] == ls[-1][0] and ls[0][1] == -ls[-1][1]:
            ls = ls[1:-1]
        return Word(tuple(ls))

    def rotations(self):
        ls = self.letters
        if not ls:
            yield self
            return
        for i in range(len(ls)):
            yield Word(ls[i:] + ls[:i])

    def cyclic_normal_form(self) -> "Word":
        """Minimal representative over rotations of the word and its inverse."""
        reduced = self.cyclic_reduce()
        candidates = list(reduced.rotations()) + list(reduced.inverse().rotations())
        return min(candidates, key=lambda w: w.letters)

    def serialize(self) -> list[str]:
        return [g if s > 0 else "-" + g for g, s in self.letters]

    def __str__(self):
        if not self.letters:
            return "1"
        return ".".join(self.serialize())


def word(letters: Iterable[Letter] | None = None) -> Word:
    return Word(tuple(letters or ()))


def single(gen: str, sign: int = 1) -> Word:
    return Word(((gen, sign),))


def parse_word(tokens: Iterable[str]) -> Word:
    """Parse ["a", "-b", ...] into a word."""
    letters = []
    for tok in tokens:
        if not isinstance(tok, str) or not tok:
            raise ValueError(f"invalid word token {tok!r}")
        if tok.startswith("-"):
            if len(tok) == 1:
                raise ValueError("bare '-' is not a word token")
            letters.append((tok[1:], -1))
        else:
            letters.append((tok, 1))
    return Word(tuple(letters))


def word_reduce(letters: Iterable[Letter] | Word) -> Word:
    """Freely reduce raw letters (or re-normalize a word)."""
    if isinstance(letters, Word):
        return Word(letters.letters)
    return Word(tuple(letters))
