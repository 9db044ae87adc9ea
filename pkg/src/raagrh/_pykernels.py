"""Pure-Python versions of the hot kernels.

The compiled module ``raagrh._ckernels`` exposes the same names with the same
semantics; ``raagrh.kernels`` picks one at import time.

Letters are encoded as nonzero ints: ``i + 1`` for the i-th vertex and
``-(i + 1)`` for its inverse.
"""

from __future__ import annotations


class WordKernel:
    """Normal forms of RAAG words for a fixed graph.

    ``noncomm[i]`` lists the vertices j != i that do not commute with i.
    The reduction is the piling algorithm: one stack per vertex, a letter
    pushes itself on its own stack and a blank on every non-commuting stack.
    Depiling always takes the least available vertex, which yields the
    lexicographically least word among all commutation shuffles.
    """

    def __init__(self, noncomm):
        self.n = len(noncomm)
        self.noncomm = tuple(tuple(row) for row in noncomm)

    def normal_form(self, letters):
        noncomm = self.noncomm
        n = self.n
        piles = [[] for _ in range(n)]
        for x in letters:
            i = (x if x > 0 else -x) - 1
            pile = piles[i]
            if pile and pile[-1] == -x:
                pile.pop()
                for j in noncomm[i]:
                    piles[j].pop()
            else:
                pile.append(x)
                for j in noncomm[i]:
                    piles[j].append(0)

        heads = [0] * n
        out = []
        while True:
            for i in range(n):
                h = heads[i]
                pile = piles[i]
                if h < len(pile) and pile[h]:
                    break
            else:
                break
            out.append(piles[i][heads[i]])
            heads[i] += 1
            for j in noncomm[i]:
                heads[j] += 1
        return tuple(out)

    def substitute(self, word, images):
        """Normal form of the word obtained by replacing each letter by its image."""
        buf = []
        for x in word:
            if x > 0:
                buf.extend(images[x - 1])
            else:
                buf.extend(-y for y in reversed(images[-x - 1]))
        return self.normal_form(buf)

    def compose(self, outer, inner):
        """Images of ``outer`` after ``inner``."""
        return tuple(self.substitute(img, outer) for img in inner)


def canonical_code(n, adj):
    """Least graph6-order adjacency code over all vertex orderings.

    ``adj[i]`` is the neighbour bitmask of vertex i. Bits are taken column by
    column from the upper triangle, (0,1), (0,2), (1,2), (0,3), ... with the
    first bit most significant. Returns ``(code, order)`` where ``order[k]``
    is the original vertex placed at position k.
    """
    if n <= 1:
        return 0, tuple(range(n))
    total = n * (n - 1) // 2
    best = [1 << total, None]
    order = [0] * n
    used = [False] * n

    def search(k, prefix, nbits):
        if k == n:
            if prefix < best[0]:
                best[0] = prefix
                best[1] = tuple(order)
            return
        bound = best[0] >> (total - nbits - k)
        for v in range(n):
            if used[v]:
                continue
            code = prefix
            row = adj[v]
            for i in range(k):
                code = (code << 1) | ((row >> order[i]) & 1)
            if code > bound:
                continue
            used[v] = True
            order[k] = v
            search(k + 1, code, nbits + k)
            used[v] = False

    for v in range(n):
        used[v] = True
        order[0] = v
        search(1, 0, 0)
        used[v] = False
    return best[0], best[1]
