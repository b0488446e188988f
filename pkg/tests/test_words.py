import math
from itertools import product
from random import Random

import pytest

from tdpverify.errors import InconsistentType, NotApplicable
from tdpverify.exactfield import FieldCtx
from tdpverify.words import (
    Generator,
    TElement,
    Word,
    WordType,
    bracket_degree,
    bracket_type,
    element_mul,
    enumerate_words,
    enumerate_zigzag,
    is_zigzag,
    is_zigzag_bracket_form,
    is_zigzag_via_signs,
    kappa_of,
    project_component,
    type_of,
    word_mul,
)

Q = FieldCtx.rational()


def w(text):
    return Word.parse(text)


def all_words(length, d):
    """Every word of the given length over indices 0..d."""
    if length == 0:
        return [Word.trivial()]
    out = []
    for starred in (True, False):
        for idx in product(range(d + 1), repeat=length):
            out.append(Word(starred, idx))
    return out


class TestWordMul:
    def test_merge_shared_idempotent(self):
        assert word_mul(w("E0 e1"), w("e1 E2")) == w("E0 e1 E2")

    def test_orthogonal_idempotents_kill(self):
        assert word_mul(w("E0 e1"), w("e2 E0")) is None

    def test_alternating_concatenation(self):
        assert word_mul(w("E0"), w("e1")) == w("E0 e1")

    def test_trivial_is_identity(self):
        u = w("E0 e2 E1")
        assert word_mul(Word.trivial(), u) == u
        assert word_mul(u, Word.trivial()) == u

    def test_product_is_word_or_zero(self):
        for u in all_words(3, 1):
            for v in all_words(2, 1):
                out = word_mul(u, v)
                assert out is None or isinstance(out, Word)


class TestTypes:
    def test_trivial_type(self):
        assert type_of(Word.trivial()) == WordType(0)
        assert type_of(Word.trivial()).trivial

    def test_example_types(self):
        t = type_of(w("E1 e0 E2"))
        assert (t.length, t.begin, t.end) == (3, Generator(True, 1), Generator(True, 2))
        t = type_of(w("e1"))
        assert (t.length, t.begin, t.end) == (1, Generator(False, 1), Generator(False, 1))

    def test_same_type_iff_length_begin_end(self):
        for u in all_words(3, 1) + all_words(2, 1):
            for v in all_words(3, 1) + all_words(2, 1):
                same = (
                    u.length == v.length and u.begin() == v.begin() and u.end() == v.end()
                )
                assert (type_of(u) == type_of(v)) == same

    def test_inconsistent_parity_rejected(self):
        with pytest.raises(InconsistentType):
            WordType(3, Generator(True, 0), Generator(False, 0))
        with pytest.raises(InconsistentType):
            WordType(2, Generator(True, 0), Generator(True, 1))
        with pytest.raises(InconsistentType):
            WordType(1, Generator(True, 0), Generator(True, 1))

    def test_bracket_type(self):
        for n in range(4):
            lam = bracket_type(n)
            assert lam.length == 2 * n + 1
            assert lam.begin == lam.end == Generator(True, 0)
            assert bracket_degree(lam) == n
        # star-length of a bracket word is n+1
        assert w("E0 e1 E0 e2 E0").star_length() == 3


class TestEnumeration:
    def test_bracket_one_d_one(self):
        assert enumerate_words(bracket_type(1), 1) == [w("E0 e0 E0"), w("E0 e1 E0")]

    def test_trivial(self):
        assert enumerate_words(WordType(0), 3) == [Word.trivial()]

    def test_counts(self):
        for d in (1, 2, 3):
            for n in range(5):
                got = len(enumerate_words(bracket_type(n), d))
                want = 1 if n == 0 else (d + 1) ** (2 * n - 1)
                assert got == want

    def test_general_type_count(self):
        lam = WordType(4, Generator(False, 1), Generator(True, 0))
        assert len(enumerate_words(lam, 2)) == 9
        lam = WordType(5, Generator(False, 1), Generator(False, 0))
        assert len(enumerate_words(lam, 2)) == 27

    def test_index_above_d_rejected(self):
        with pytest.raises(InconsistentType):
            enumerate_words(WordType(1, Generator(True, 5), Generator(True, 5)), 2)


class TestZigzag:
    def test_constant_words(self):
        for word in (Word.trivial(), w("e2"), w("E1 e1 E1 e1")):
            assert is_zigzag(word)
            assert is_zigzag_via_signs(word)

    def test_spec_pair(self):
        assert is_zigzag(w("E0 e2 E0 e1 E0"))
        assert not is_zigzag(w("E0 e1 E0 e2 E0"))

    def test_short_words_always_zigzag(self):
        for word in all_words(1, 3) + all_words(2, 3):
            assert is_zigzag(word)
            assert is_zigzag_via_signs(word)

    def test_length_three(self):
        assert is_zigzag(w("E0 e2 E1"))
        assert is_zigzag_via_signs(w("E0 e2 E1"))
        # a repeat followed by a move breaks the strict-prefix clause
        assert not is_zigzag(w("E0 e0 E1"))
        assert not is_zigzag_via_signs(w("E0 e0 E1"))

    def test_characterizations_agree(self):
        for d in (1, 2):
            for length in range(7):
                for word in all_words(length, d):
                    assert is_zigzag(word) == is_zigzag_via_signs(word)

    def test_bracket_form_agrees(self):
        for d in (1, 2):
            for n in range(3):
                for word in enumerate_words(bracket_type(n), d):
                    assert is_zigzag(word) == is_zigzag_bracket_form(word)

    def test_zigzag_counts(self):
        for d in (1, 2, 3):
            for n in range(5):
                got = len(enumerate_zigzag(bracket_type(n), d))
                assert got == math.comb(n + d, d)

    def test_bracket_zigzag_pattern(self):
        got = enumerate_zigzag(bracket_type(2), 1)
        assert got == [w("E0 e0 E0 e0 E0"), w("E0 e1 E0 e0 E0"), w("E0 e1 E0 e1 E0")]


class TestKappa:
    def test_examples(self):
        assert kappa_of(w("E0 e1 E0")) == 2
        assert kappa_of(w("E0 e2 E0 e1 E0")) == 2

    def test_constant_not_applicable(self):
        with pytest.raises(NotApplicable):
            kappa_of(w("E0 e0 E0"))

    def test_non_zigzag_not_applicable(self):
        with pytest.raises(NotApplicable):
            kappa_of(w("E0 e1 E0 e2 E0"))

    def test_unique_on_small_scale(self):
        for d in (1, 2):
            for length in range(2, 7):
                for word in all_words(length, d):
                    if not is_zigzag(word) or word.is_constant:
                        continue
                    g = word.indices
                    mags = [abs(g[k] - g[k + 1]) for k in range(len(g) - 1)]
                    hits = []
                    for kappa in range(2, len(g) + 1):
                        up = mags[0] > 0 and all(
                            mags[t - 1] < mags[t] for t in range(1, kappa - 1)
                        )
                        down = all(
                            mags[t - 1] >= mags[t] for t in range(kappa - 1, len(mags))
                        )
                        if up and down:
                            hits.append(kappa)
                    assert hits == [kappa_of(word)]


class TestTElement:
    def test_identity(self):
        x = TElement.from_word(w("E0 e1"), Q, Q.from_integer(3))
        assert element_mul(x, TElement.one(Q)) == x
        assert element_mul(TElement.one(Q), x) == x

    def test_bracket_grading_example(self):
        a = TElement.from_word(w("E0 e1 E0"), Q)
        b = TElement.from_word(w("E0 e2 E0"), Q)
        prod = element_mul(a, b)
        assert prod == TElement.from_word(w("E0 e1 E0 e2 E0"), Q)
        assert type_of(next(iter(prod.support()))) == bracket_type(2)

    def test_orthogonal_product_zero(self):
        a = TElement.from_word(w("e0"), Q)
        b = TElement.from_word(w("e1"), Q)
        assert element_mul(a, b).is_zero

    def test_associativity_random(self):
        rng = Random(11)
        pool = all_words(1, 1) + all_words(2, 1) + [Word.trivial()]

        def random_element():
            terms = {}
            for word in rng.sample(pool, 4):
                c = Q.from_integer(rng.randint(-4, 4))
                if not c.is_zero:
                    terms[word] = c
            return TElement(Q, terms)

        for _ in range(30):
            x, y, z = random_element(), random_element(), random_element()
            assert element_mul(element_mul(x, y), z) == element_mul(x, element_mul(y, z))

    def test_grading_of_bracket_products(self):
        for m in range(3):
            for n in range(3):
                for u in enumerate_words(bracket_type(m), 1):
                    for v in enumerate_words(bracket_type(n), 1):
                        prod = word_mul(u, v)
                        assert prod is not None
                        assert type_of(prod) == bracket_type(m + n)

    def test_projection_partitions(self):
        x = TElement(
            Q,
            {
                Word.trivial(): Q.one(),
                w("e0"): Q.from_integer(2),
                w("E0 e1"): Q.from_integer(-1),
            },
        )
        assert project_component(x, WordType(0)) == TElement.one(Q)
        back = TElement.zero(Q)
        for lam in x.types():
            back = back + project_component(x, lam)
        assert back == x

    def test_diagonal_subalgebra_closure(self):
        # span{e_i} + F*1 closes under multiplication, same for starred
        d = 2
        for starred in (False, True):
            gens = [TElement.from_word(Word(starred, (i,)), Q) for i in range(d + 1)]
            basis_words = {Word.trivial()} | {Word(starred, (i,)) for i in range(d + 1)}
            x = TElement.one(Q) + gens[0].scale(Q.from_integer(3)) - gens[2]
            y = gens[1] + gens[2].scale(Q.from_integer(5))
            for prod in (element_mul(x, y), element_mul(y, x), element_mul(x, x)):
                assert prod.support() <= basis_words

    def test_serialization_round_trip(self):
        x = TElement(Q, {w("E0 e2 E0"): Q.parse("3/7"), w("e1"): Q.from_integer(-2)})
        assert TElement.from_json(x.to_json(), Q) == x

    def test_text_format(self):
        assert w("E0 e2 E0 e1 E0").text() == "E0 e2 E0 e1 E0"
        assert Word.trivial().text() == "1"
