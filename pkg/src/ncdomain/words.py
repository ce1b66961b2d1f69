"""Words over a finite alphabet: the unital free semigroup on n generators.

A word is a finite sequence of generator indices drawn from {1, .., n};
the empty word is the unit.  Words label the monomials of free power
series and the orthonormal basis of the truncated full Fock space, so a
stable enumeration matters: `enumerate_words` orders words by length
first and lexicographically within each length.  Truncating by length is
then a basis prefix, and the enumeration is identical across runs.

Words are stored as tuples of ints.  The digit text form ("12" for
g_1 g_2, "" for the unit) appears only at file boundaries and supports
alphabets up to nine generators; programmatic use has no such limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .defaults import DIM_CAP_ENV, dim_cap


class DimensionCapError(ValueError):
    """Raised when a requested enumeration exceeds the basis cap."""


Letters = tuple[int, ...]


def _as_letters(word: "Word | str | Iterable[int]", n: int) -> Letters:
    """Normalize a word given as Word, digit string, or int iterable."""
    if isinstance(word, Word):
        if word.n != n:
            raise ValueError(f"word over {word.n} generators used with n={n}")
        return word.letters
    if isinstance(word, str):
        return parse_word(word, n).letters
    letters = tuple(int(i) for i in word)
    for i in letters:
        if not 1 <= i <= n:
            raise ValueError(f"letter {i} outside 1..{n}")
    return letters


@dataclass(frozen=True)
class Word:
    """A word in the generators g_1..g_n; empty ``letters`` is the unit."""

    letters: Letters
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need at least one generator, got n={self.n}")
        object.__setattr__(self, "letters", tuple(int(i) for i in self.letters))
        for i in self.letters:
            if not 1 <= i <= self.n:
                raise ValueError(f"letter {i} outside 1..{self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    @property
    def is_unit(self) -> bool:
        return not self.letters

    @property
    def text(self) -> str:
        return word_text(self)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"Word({self.text!r}, n={self.n})"


def parse_word(text: str, n: int) -> Word:
    """Parse the digit form: "" is the unit, "12" is g_1 g_2."""
    if n > 9 and text:
        raise ValueError("digit form only covers alphabets with n <= 9")
    letters = []
    for ch in text:
        if not ch.isdigit() or ch == "0":
            raise ValueError(f"invalid letter {ch!r} in word {text!r}")
        letters.append(int(ch))
    return Word(tuple(letters), n)


def word_text(word: Word | Sequence[int]) -> str:
    """Digit form of a word; inverse of `parse_word`."""
    letters = word.letters if isinstance(word, Word) else tuple(word)
    if any(i > 9 for i in letters):
        raise ValueError("digit form only covers letters 1..9")
    return "".join(str(i) for i in letters)


def concat(u: Word, v: Word) -> Word:
    """Concatenation u v; raises on generator-count mismatch."""
    if u.n != v.n:
        raise ValueError(f"cannot concatenate words over n={u.n} and n={v.n}")
    return Word(u.letters + v.letters, u.n)


def reverse(u: Word) -> Word:
    """The reversed word; an involution and an anti-homomorphism."""
    return Word(u.letters[::-1], u.n)


def factorizations(word: Word, parts: int) -> list[tuple[Word, ...]]:
    """All ordered splittings of ``word`` into ``parts`` nonempty words.

    There are C(len - 1, parts - 1) of them, one per choice of cut
    positions.  Requires 1 <= parts <= len(word).
    """
    length = len(word)
    if not 1 <= parts <= length:
        raise ValueError(
            f"parts must satisfy 1 <= parts <= {length}, got {parts}"
        )
    out = []
    for cuts in combinations(range(1, length), parts - 1):
        bounds = (0,) + cuts + (length,)
        out.append(
            tuple(
                Word(word.letters[bounds[i] : bounds[i + 1]], word.n)
                for i in range(parts)
            )
        )
    return out


def word_count(n: int, max_length: int) -> int:
    """Number of words of length <= max_length over n generators."""
    if n == 1:
        return max_length + 1
    return (n ** (max_length + 1) - 1) // (n - 1)


class WordIndex:
    """Graded-lexicographic bijection words <-> 0..dim-1.

    Index 0 is the unit; grade k occupies a contiguous block.  The order
    is deterministic, and the index for max_length N is a prefix of the
    index for any larger bound.
    """

    __slots__ = ("n", "max_length", "words", "_pos", "_grade_starts")

    def __init__(self, n: int, max_length: int, cap: int | None = None):
        if max_length < 0:
            raise ValueError(f"max_length must be >= 0, got {max_length}")
        if n < 1:
            raise ValueError(f"need at least one generator, got n={n}")
        limit = dim_cap() if cap is None else cap
        dim = word_count(n, max_length)
        if dim > limit:
            raise DimensionCapError(
                f"basis for n={n}, max_length={max_length} needs {dim} words, "
                f"cap is {limit} (set {DIM_CAP_ENV} to override)"
            )
        self.n = n
        self.max_length = max_length
        words: list[Letters] = []
        starts = [0]
        for k in range(max_length + 1):
            words.extend(product(range(1, n + 1), repeat=k))
            starts.append(len(words))
        self.words = tuple(words)
        self._pos = {w: i for i, w in enumerate(self.words)}
        self._grade_starts = tuple(starts)

    @property
    def dim(self) -> int:
        return len(self.words)

    def index_of(self, word: Word | str | Iterable[int]) -> int:
        letters = _as_letters(word, self.n)
        try:
            return self._pos[letters]
        except KeyError:
            raise KeyError(
                f"word of length {len(letters)} outside truncation "
                f"max_length={self.max_length}"
            ) from None

    def word_of(self, i: int) -> Word:
        return Word(self.words[i], self.n)

    def letters_of(self, i: int) -> Letters:
        return self.words[i]

    def grade(self, k: int) -> range:
        """Indices of the words of length exactly k."""
        if not 0 <= k <= self.max_length:
            raise ValueError(f"grade {k} outside 0..{self.max_length}")
        return range(self._grade_starts[k], self._grade_starts[k + 1])

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        return iter(self.words)


def enumerate_words(n: int, max_length: int, cap: int | None = None) -> WordIndex:
    """Build the graded-lex index of all words of length <= max_length."""
    return WordIndex(n, max_length, cap=cap)
