import pytest
from hypothesis import given, settings, strategies as st

from mocklie.algebra import center, is_mock_lie, nil_index
from mocklie.field import GF, QQ
from mocklie.free import build_free_quotient, enumerate_words, structure_constant_profile
from mocklie.words import degree, multidegree, parse_word, product, word_key, word_str


@pytest.mark.parametrize(
    "gens,caps,dim",
    [("a", (1,), 1), ("a", (2,), 2), ("a", (3,), 2), ("ab", (1, 1), 3), ("ab", (2, 2), 8)],
)
def test_small_free_quotient_dims(gens, caps, dim):
    assert build_free_quotient(gens, caps).dim == dim


def test_m44_shape(m44):
    A = m44.algebra
    assert A.dim == 44
    assert is_mock_lie(A)
    assert nil_index(A) == 9
    Z = center(A)
    assert Z.dim == 1
    assert m44.word_strings()[:3] == ["a", "b", "c"]
    # the centre is spanned by the single top-degree basis word
    assert m44.grading()[-1] == 8 and Z.contains(A.basis_vector(43))


def test_m44_structure_constants(m44):
    assert structure_constant_profile(m44) == {QQ(c) for c in (2, 1, "1/2", -2, -1, "-1/2")}


def test_keep_small_is_also_mock_lie():
    r = build_free_quotient("abc", (3, 3, 2), keep="small")
    assert r.dim == 44 and is_mock_lie(r.algebra)


@pytest.mark.parametrize("p", [5, 7, 251])
def test_m44_over_prime_fields(p):
    r = build_free_quotient("abc", (3, 3, 2), field=GF(p))
    assert r.dim == 44 and is_mock_lie(r.algebra)


def test_grading_is_respected(m44):
    A = m44.algebra
    md = m44.multidegrees
    for i, j, v in A.nonzero_products():
        for k in v:
            assert md[k] == tuple(x + y for x, y in zip(md[i], md[j]))


@pytest.mark.parametrize("caps", [(0, 1), (1,)])
def test_bad_caps(caps):
    with pytest.raises(ValueError):
        build_free_quotient("ab", caps)


def test_duplicate_generators():
    with pytest.raises(ValueError):
        build_free_quotient("aa", (1, 1))


def test_enumerate_words_counts():
    words = enumerate_words("ab", (1, 1))
    assert [word_str(w, "ab") for w in words] == ["a", "b", "a*b"]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_free_quotients_are_mock_lie_and_graded(caps):
    gens = "abc"[: len(caps)]
    r = build_free_quotient(gens, caps)
    assert is_mock_lie(r.algebra)
    assert all(sum(md) == g for md, g in zip(r.multidegrees, r.grading()))
    assert all(all(x <= c for x, c in zip(md, caps)) for md in r.multidegrees)


def test_word_roundtrip():
    w = parse_word("((a*b)*c)*a", "abc")
    assert degree(w) == 4 and multidegree(w, 3) == (2, 1, 1)
    assert parse_word(word_str(w, "abc"), "abc") == w


def test_product_is_commutative():
    assert product(0, (1, 2)) == product((1, 2), 0)
    assert word_key(0) < word_key(1)


def test_parse_word_errors():
    with pytest.raises(ValueError):
        parse_word("a*d", "abc")
    with pytest.raises(ValueError):
        parse_word("(a*b", "abc")
