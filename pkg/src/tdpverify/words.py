"""Words in the free algebra on two families of orthogonal idempotents.

A word is an alternating product of generators from a starred family E0..Ed
and a nonstarred family e0..ed.  Words are stored as (begin family, index
tuple); the family of every position follows from parity, so it is never
stored.  Words form a linear basis, so elements (:class:`TElement`) are
finite maps from words to nonzero scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import CtxMismatch, InconsistentType, NotApplicable
from .exactfield import FieldCtx, FieldElement


@dataclass(frozen=True)
class Generator:
    """One idempotent generator: family (starred or not) plus index."""

    starred: bool
    index: int

    def text(self) -> str:
        return f"{'E' if self.starred else 'e'}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "Generator":
        if not text or text[0] not in "Ee":
            raise ValueError(f"bad generator: {text!r}")
        return cls(text[0] == "E", int(text[1:]))

    def sort_key(self):
        return (0 if self.starred else 1, self.index)


@dataclass(frozen=True)
class Word:
    """Alternating product of generators; empty indices mean the identity."""

    starred_first: bool
    indices: tuple[int, ...]

    def __post_init__(self):
        if any(i < 0 for i in self.indices):
            raise ValueError("negative generator index")
        if not self.indices:
            # canonical begin family for the trivial word
            object.__setattr__(self, "starred_first", True)

    @classmethod
    def trivial(cls) -> "Word":
        return cls(True, ())

    @classmethod
    def single(cls, gen: Generator) -> "Word":
        return cls(gen.starred, (gen.index,))

    @property
    def length(self) -> int:
        return len(self.indices)

    @property
    def is_trivial(self) -> bool:
        return not self.indices

    def starred_at(self, pos: int) -> bool:
        """Family of 1-based position pos."""
        return self.starred_first == (pos % 2 == 1)

    def generator_at(self, pos: int) -> Generator:
        return Generator(self.starred_at(pos), self.indices[pos - 1])

    def begin(self) -> Generator | None:
        return self.generator_at(1) if self.indices else None

    def end(self) -> Generator | None:
        return self.generator_at(self.length) if self.indices else None

    @property
    def is_constant(self) -> bool:
        return len(set(self.indices)) <= 1

    def star_length(self) -> int:
        n = self.length
        starred_positions = (n + 1) // 2 if self.starred_first else n // 2
        return starred_positions

    def text(self) -> str:
        if self.is_trivial:
            return "1"
        return " ".join(self.generator_at(k).text() for k in range(1, self.length + 1))

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if text == "1":
            return cls.trivial()
        gens = [Generator.parse(tok) for tok in text.split()]
        for a, b in zip(gens, gens[1:]):
            if a.starred == b.starred:
                raise ValueError(f"non-alternating word: {text!r}")
        return cls(gens[0].starred, tuple(g.index for g in gens))

    def sort_key(self):
        return (self.length, 0 if self.starred_first else 1, self.indices)

    def __repr__(self):
        return f"Word({self.text()})"


def word_mul(u: Word, v: Word) -> Word | None:
    """Product of two words: a word, or None when the product vanishes."""
    if u.is_trivial:
        return v
    if v.is_trivial:
        return u
    eu, bv = u.end(), v.begin()
    if eu.starred != bv.starred:
        return Word(u.starred_first, u.indices + v.indices)
    if eu.index == bv.index:
        # shared idempotent merges: e^2 = e
        return Word(u.starred_first, u.indices + v.indices[1:])
    return None


@dataclass(frozen=True)
class WordType:
    """Equivalence class of words sharing (length, begin, end)."""

    length: int
    begin: Generator | None = None
    end: Generator | None = None

    def __post_init__(self):
        if self.length == 0:
            if self.begin is not None or self.end is not None:
                raise InconsistentType("trivial type has no begin or end")
            return
        if self.begin is None or self.end is None:
            raise InconsistentType("nontrivial type needs begin and end")
        expected_end_starred = self.begin.starred == (self.length % 2 == 1)
        if self.end.starred != expected_end_starred:
            raise InconsistentType(
                f"end family contradicts begin family and length {self.length}"
            )
        if self.length == 1 and self.begin != self.end:
            raise InconsistentType("length-1 type must have begin == end")

    @property
    def trivial(self) -> bool:
        return self.length == 0

    def to_json(self) -> dict:
        if self.trivial:
            return {"length": 0}
        n = bracket_degree(self)
        if n is not None:
            return {"n": n}
        return {"length": self.length, "begin": self.begin.text(), "end": self.end.text()}

    def sort_key(self):
        if self.trivial:
            return (0, (0, 0), (0, 0))
        return (self.length, self.begin.sort_key(), self.end.sort_key())

    def __repr__(self):
        if self.trivial:
            return "WordType(1)"
        return f"WordType({self.length}, {self.begin.text()}..{self.end.text()})"


def type_of(word: Word) -> WordType:
    if word.is_trivial:
        return WordType(0)
    return WordType(word.length, word.begin(), word.end())


def bracket_type(n: int) -> WordType:
    """The type of length 2n+1 beginning and ending with E0."""
    e0 = Generator(True, 0)
    return WordType(2 * n + 1, e0, e0)


def bracket_degree(lam: WordType) -> int | None:
    """Nonstar-length n when lam equals bracket_type(n), else None."""
    if lam.trivial or lam.length % 2 == 0:
        return None
    if lam.begin == Generator(True, 0) and lam.end == Generator(True, 0):
        return (lam.length - 1) // 2
    return None


def _check_indices(lam: WordType, d: int) -> None:
    if not lam.trivial and (lam.begin.index > d or lam.end.index > d):
        raise InconsistentType(f"type uses an index above d={d}")


def enumerate_words(lam: WordType, d: int) -> list[Word]:
    """All words of type lam, lexicographic in the index tuple.

    The interior positions range freely over 0..d, so there are
    (d+1)^(length-2) words for length >= 2 and a single word otherwise.
    """
    _check_indices(lam, d)
    if lam.trivial:
        return [Word.trivial()]
    if lam.length == 1:
        return [Word.single(lam.begin)]
    first, last = lam.begin.index, lam.end.index
    return [
        Word(lam.begin.starred, (first, *mid, last))
        for mid in product(range(d + 1), repeat=lam.length - 2)
    ]


def _between(m: int, i: int, j: int) -> bool:
    return (i >= m > j) or (i <= m < j)


def is_zigzag(word: Word) -> bool:
    """Zigzag test straight from the two defining betweenness conditions."""
    g = word.indices
    n = len(g)
    for i in range(2, n):  # 1-based 2..n-1
        if _between(g[i - 1], g[i - 2], g[i]):
            return False
    for i in range(3, n):  # 1-based 3..n-1
        if _between(g[i - 2], g[i - 3], g[i]) and _between(g[i - 1], g[i - 3], g[i]):
            return False
    return True


def is_zigzag_via_signs(word: Word) -> bool:
    """Equivalent zigzag test via sign alternation of consecutive differences
    plus the strictly-monotone-prefix clause."""
    g = word.indices
    n = len(g)
    diffs = [g[k] - g[k + 1] for k in range(n - 1)]
    for i in range(2, n):  # 1-based 2..n-1
        if diffs[i - 2] * diffs[i - 1] > 0:
            return False
    for i in range(2, n):
        if abs(diffs[i - 2]) < abs(diffs[i - 1]):
            chain = [abs(diffs[k]) for k in range(i)]
            if chain[0] == 0 or any(a >= b for a, b in zip(chain, chain[1:])):
                return False
    return True


def kappa_of(word: Word) -> int:
    """The unique pivot position of a nonconstant zigzag word: absolute
    differences rise strictly up to kappa, then never increase."""
    if word.is_constant or not is_zigzag(word):
        raise NotApplicable("kappa is defined for nonconstant zigzag words only")
    g = word.indices
    n = len(g)
    mags = [abs(g[k] - g[k + 1]) for k in range(n - 1)]
    for kappa in range(2, n + 1):
        rising = all(mags[t - 1] < mags[t] for t in range(1, kappa - 1)) and mags[0] > 0
        falling = all(mags[t - 1] >= mags[t] for t in range(kappa - 1, n - 1))
        if rising and falling:
            return kappa
    raise NotApplicable("no pivot position found; word is not zigzag")


def is_zigzag_bracket_form(word: Word) -> bool:
    """Zigzag test specialised to bracket-type words: odd positions carry
    index 0 and the even-position indices never increase."""
    lam = type_of(word)
    if bracket_degree(lam) is None:
        raise NotApplicable("word is not of bracket type")
    g = word.indices
    if any(g[k] != 0 for k in range(0, len(g), 2)):
        return False
    evens = [g[k] for k in range(1, len(g), 2)]
    return all(a >= b for a, b in zip(evens, evens[1:]))


def enumerate_zigzag(lam: WordType, d: int) -> list[Word]:
    """The zigzag words of type lam, in enumeration order."""
    return [w for w in enumerate_words(lam, d) if is_zigzag(w)]


class TElement:
    """Finitely supported scalar combination of words (an algebra element).

    Internally a dict from Word to nonzero FieldElement; all operations
    return fresh instances.
    """

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx: FieldCtx, terms: dict[Word, FieldElement] | None = None):
        self.ctx = ctx
        clean: dict[Word, FieldElement] = {}
        if terms:
            for w, c in terms.items():
                if c.ctx != ctx:
                    raise CtxMismatch(f"coefficient in {c.ctx}, element over {ctx}")
                if not c.is_zero:
                    clean[w] = c
        self._terms = clean

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "TElement":
        return cls(ctx)

    @classmethod
    def one(cls, ctx: FieldCtx) -> "TElement":
        return cls(ctx, {Word.trivial(): ctx.one()})

    @classmethod
    def from_word(cls, word: Word, ctx: FieldCtx, coeff: FieldElement | None = None) -> "TElement":
        return cls(ctx, {word: coeff if coeff is not None else ctx.one()})

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> list[tuple[Word, FieldElement]]:
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def coeff(self, word: Word) -> FieldElement:
        return self._terms.get(word, self.ctx.zero())

    def support(self) -> set[Word]:
        return set(self._terms)

    def _binop(self, other: "TElement", sign: int) -> "TElement":
        if other.ctx != self.ctx:
            raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
        out = dict(self._terms)
        for w, c in other._terms.items():
            c = c if sign > 0 else -c
            s = out.get(w)
            t = c if s is None else s + c
            if t.is_zero:
                out.pop(w, None)
            else:
                out[w] = t
        return TElement(self.ctx, out)

    def __add__(self, other: "TElement") -> "TElement":
        return self._binop(other, +1)

    def __sub__(self, other: "TElement") -> "TElement":
        return self._binop(other, -1)

    def __neg__(self) -> "TElement":
        return TElement(self.ctx, {w: -c for w, c in self._terms.items()})

    def scale(self, scalar: FieldElement) -> "TElement":
        if scalar.ctx != self.ctx:
            raise CtxMismatch(f"{self.ctx} vs {scalar.ctx}")
        if scalar.is_zero:
            return TElement.zero(self.ctx)
        return TElement(self.ctx, {w: c * scalar for w, c in self._terms.items()})

    def __mul__(self, other: "TElement") -> "TElement":
        if not isinstance(other, TElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise CtxMismatch(f"{self.ctx} vs {other.ctx}")
        out: dict[Word, FieldElement] = {}
        for u, cu in self._terms.items():
            for v, cv in other._terms.items():
                w = word_mul(u, v)
                if w is None:
                    continue
                c = cu * cv
                s = out.get(w)
                t = c if s is None else s + c
                if t.is_zero:
                    out.pop(w, None)
                else:
                    out[w] = t
        return TElement(self.ctx, out)

    def __eq__(self, other):
        return (
            isinstance(other, TElement)
            and self.ctx == other.ctx
            and self._terms == other._terms
        )

    def types(self) -> set[WordType]:
        return {type_of(w) for w in self._terms}

    def project(self, lam: WordType) -> "TElement":
        return TElement(
            self.ctx, {w: c for w, c in self._terms.items() if type_of(w) == lam}
        )

    def to_json(self) -> list[dict]:
        return [{"word": w.text(), "coeff": str(c)} for w, c in self.terms()]

    @classmethod
    def from_json(cls, obj: list, ctx: FieldCtx) -> "TElement":
        terms = {}
        for item in obj:
            w = Word.parse(item["word"])
            c = ctx.parse(item["coeff"])
            terms[w] = terms.get(w, ctx.zero()) + c
        return cls(ctx, terms)

    def __repr__(self):
        if self.is_zero:
            return "TElement(0)"
        body = " + ".join(f"({c})*{w.text()}" for w, c in self.terms())
        return f"TElement({body})"


def element_mul(x: TElement, y: TElement) -> TElement:
    """Bilinear extension of word multiplication."""
    return x * y


def project_component(x: TElement, lam: WordType) -> TElement:
    """Restriction of x to its terms of type lam."""
    return x.project(lam)
