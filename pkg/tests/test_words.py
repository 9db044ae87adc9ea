import pytest

from raagrh.graph import Graph, edgeless_graph, enumerate_graphs, path_graph
from raagrh.words import (
    Letter,
    Word,
    WordError,
    abelianize,
    equal_words,
    invert,
    multiply,
    normal_form,
)

from oracles import brute_equal

P3 = path_graph(["a", "b", "c"])
E3 = edgeless_graph(["a", "b", "c"])


def nf(G, text):
    return str(normal_form(G, Word.parse(G, text)))


def test_normal_form_examples():
    assert nf(P3, "a a^-1") == ""
    assert nf(P3, "b a") == "a b"
    assert nf(P3, "a c b c^-1 a^-1") == "b"
    assert nf(P3, "c a") == "c a"


def test_multiply_invert_equal():
    a, a_inv = Word.parse(P3, "a"), Word.parse(P3, "a^-1")
    assert len(multiply(P3, a, a_inv)) == 0
    assert str(invert(Word.parse(P3, "a b"))) == "a^-1 b^-1"
    assert equal_words(P3, Word.parse(P3, "b a"), Word.parse(P3, "a b"))
    assert not equal_words(E3, Word.parse(E3, "b a"), Word.parse(E3, "a b"))


def test_abelianize():
    G = edgeless_graph(["a", "b"])
    assert abelianize(G, Word.parse(G, "a b a^-1")) == {"a": 0, "b": 1}
    assert abelianize(G, Word.identity(G)) == {"a": 0, "b": 0}
    assert abelianize(G, Word.parse(G, "a b a b a b")) == {"a": 3, "b": 3}


def test_parse_print_round_trip():
    for text in ["", "a", "a b^-1 c", "c^-1 c^-1 a"]:
        assert str(Word.parse(P3, text)) == text
    assert Word.parse(P3, "a^1").letters == Word.parse(P3, "a").letters
    w = Word.from_letters(P3, [Letter("a", 1), Letter("c", -1)])
    assert w.as_letters() == (Letter("a", 1), Letter("c", -1))


def test_errors():
    with pytest.raises(WordError):
        Word.parse(P3, "z")
    with pytest.raises(WordError):
        multiply(P3, Word.parse(P3, "a"), Word.parse(E3, "a"))
    with pytest.raises(WordError):
        Word(P3, [0])


def _random_graph(rng, n):
    names = [f"x{i}" for i in range(n)]
    return Graph(names, [(u, v) for i, u in enumerate(names) for v in names[i + 1:] if rng.random() < 0.5])


def _random_letters(rng, n, length):
    return tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(length))


def _perturb(rng, G, letters, max_len=None):
    """An equal word: random insertions of x x^-1 and commuting swaps."""
    w = list(letters)
    k = G.word_kernel
    for _ in range(rng.randint(0, 4)):
        if (rng.random() < 0.5 or len(w) < 2) and (max_len is None or len(w) + 2 <= max_len):
            x = rng.choice((1, -1)) * rng.randint(1, G.n)
            i = rng.randint(0, len(w))
            w[i:i] = [x, -x]
        elif len(w) >= 2:
            i = rng.randrange(len(w) - 1)
            x, y = w[i], w[i + 1]
            if abs(x) != abs(y) and k.normal_form((x, y)) == k.normal_form((y, x)):
                w[i], w[i + 1] = y, x
    return tuple(w)


def test_equal_words_agrees_with_oracle(rng):
    mismatches = []
    for trial in range(10_000):
        G = _random_graph(rng, rng.randint(1, 4))
        u = _random_letters(rng, G.n, rng.randint(0, 8))
        v = _perturb(rng, G, u, 8) if trial % 2 else _random_letters(rng, G.n, rng.randint(0, 8))
        edges = [(G.index(a) + 1, G.index(b) + 1) for a, b in G.edges]
        got = equal_words(G, Word(G, u), Word(G, v))
        if got != brute_equal(u, v, edges):
            mismatches.append((G, u, v, got))
    assert not mismatches


def test_normal_form_idempotent_and_inverse_cancels(rng):
    for _ in range(10_000):
        G = _random_graph(rng, rng.randint(1, 6))
        w = Word(G, _random_letters(rng, G.n, rng.randint(0, 40)))
        once = normal_form(G, w)
        assert normal_form(G, once) == once
        assert len(multiply(G, w, invert(w))) == 0
        assert abelianize(G, once) == abelianize(G, w)


def test_congruence(rng):
    for _ in range(2000):
        G = _random_graph(rng, rng.randint(1, 5))
        u = _random_letters(rng, G.n, rng.randint(0, 10))
        v = _perturb(rng, G, u)
        x = Word(G, _random_letters(rng, G.n, rng.randint(0, 6)))
        U, V = Word(G, u), Word(G, v)
        assert equal_words(G, U, V)
        assert equal_words(G, multiply(G, x, U), multiply(G, x, V))
        assert equal_words(G, multiply(G, U, x), multiply(G, V, x))


def test_normal_form_is_lex_least_shuffle():
    # exhaustively over short reduced words on every 3-vertex graph
    import itertools

    from oracles import closure

    for G in enumerate_graphs(3, up_to_iso=False):
        edges = {frozenset((G.index(a) + 1, G.index(b) + 1)) for a, b in G.edges}
        commute = lambda i, j: frozenset((i, j)) in edges  # noqa: E731
        key = lambda w: tuple((abs(x), x < 0) for x in w)  # noqa: E731
        for length in range(5):
            for w in itertools.product([1, -1, 2, -2, 3, -3], repeat=length):
                reach = closure(w, commute)
                shortest = min(map(len, reach))
                want = min((r for r in reach if len(r) == shortest), key=key)
                assert G.word_kernel.normal_form(w) == want
