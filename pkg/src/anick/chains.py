"""Recognition and enumeration of overlap chains on reduced words.

An n-chain is a word tiled by n obstruction occurrences, each starting
strictly inside its predecessor and ending strictly beyond it, with
occurrence j+2 starting at or after the end of occurrence j, chosen so the
covered prefixes grow as slowly as possible.  Degree 0 chains are the single
generators; the chains of degree n >= 1 index the rank-n free summand of the
resolution built in :mod:`anick.morse`.

For a reduced obstruction set no two occurrences share a start position or
an end position, so the minimal tiling is found by a deterministic greedy
ladder; ``is_prechain`` keeps the raw backtracking definition around as an
independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import ComputationError, Presentation, render_word


class NotAChain(ComputationError):
    """Raised when a word fails to carry the requested chain structure."""


@dataclass(frozen=True)
class ChainElement:
    """A chain with its canonical factorization into bar-tuple entries."""

    word: str
    degree: int
    factors: tuple[str, ...]

    def __str__(self):
        return "|".join(render_word(f) for f in self.factors)


def _obstruction_data(source):
    """Alphabet and obstruction tuple from a Presentation or a word iterable."""
    if isinstance(source, Presentation):
        return source.alphabet, source.obstructions
    obs = tuple(source)
    alphabet = tuple(sorted({ch for w in obs for ch in w}))
    return alphabet, obs


def _occurrence_ends(word, obstructions):
    """Map start -> end over all obstruction occurrences in ``word``.

    A reduced obstruction set admits at most one occurrence per start
    position (two would make one lhs a prefix of the other); the same holds
    for end positions.  Both are checked.
    """
    ends = {}
    by_end = {}
    for v in obstructions:
        start = word.find(v)
        while start != -1:
            end = start + len(v)
            if start in ends or end in by_end:
                raise ValueError(
                    f"obstruction set is not reduced on {word!r}: "
                    "overlapping occurrences share an endpoint"
                )
            ends[start] = end
            by_end[end] = start
            start = word.find(v, start + 1)
    return ends


@lru_cache(maxsize=65536)
def _ladder(word, obstructions):
    """End positions of the minimal obstruction tiling, or None.

    The first rung is the occurrence at position 0.  Each later rung starts
    strictly inside the previous one, at or beyond the end of the one before
    that, and is taken with the smallest end that still extends the tiling.
    Returns the increasing tuple of ends; None when no occurrence starts at
    0 or the tiling strands before reaching the end of the word.
    """
    ends_at = _occurrence_ends(word, obstructions)
    if 0 not in ends_at:
        return None
    ends = [ends_at[0]]
    t = len(word)
    while ends[-1] < t:
        lo = ends[-2] if len(ends) > 1 else 1
        best = None
        for s in range(lo, ends[-1]):
            e = ends_at.get(s)
            if e is not None and e > ends[-1] and (best is None or e < best):
                best = e
        if best is None:
            return None
        ends.append(best)
    return tuple(ends)


def chain_degree(word, source):
    """Degree of ``word`` as a chain, or None if it is not one.

    Single generators have degree 0.  Longer words must be tiled exactly by
    the greedy ladder; a ladder that overshoots or strands means the word is
    not a chain of any degree.
    """
    alphabet, obstructions = _obstruction_data(source)
    if len(word) == 1:
        return 0 if word in alphabet else None
    if len(word) == 0:
        return None
    ends = _ladder(word, obstructions)
    if ends is None:
        return None
    return len(ends)


def chain_factorization(word, source):
    """The ChainElement for ``word``; raises NotAChain otherwise.

    Factors are the leading generator followed by the ladder increments:
    letter 0, then word[1:e_1], word[e_1:e_2], ...  A degree-n chain has
    n+1 factors.
    """
    alphabet, obstructions = _obstruction_data(source)
    if len(word) == 1:
        if word in alphabet:
            return ChainElement(word, 0, (word,))
        raise NotAChain(f"{word!r} is not a generator")
    n = chain_degree(word, source)
    if n is None:
        raise NotAChain(f"{render_word(word) or word!r} is not a chain")
    ends = _ladder(word, obstructions)
    cuts = (0, 1) + ends
    factors = tuple(word[a:b] for a, b in zip(cuts, cuts[1:]))
    return ChainElement(word, n, factors)


def is_prechain(word, n, source):
    """Raw definition: can ``word`` be tiled by n obstruction occurrences?

    Backtracks over all occurrence sequences (s_1,e_1)..(s_n,e_n) with
    s_1 = 0, e_n = len(word), ends strictly increasing, each s_{j+1} in
    [max(s_j + 1, e_{j-1}), e_j).  Exponential in the worst case; meant as
    an oracle for cross-checking the greedy ladder, not for production use.
    """
    _, obstructions = _obstruction_data(source)
    if n == 0:
        return len(word) == 1
    ends_at = _occurrence_ends(word, obstructions)

    def extend(prev_s, prev_e, prev_prev_e, k):
        if k == n:
            return prev_e == len(word)
        if prev_e == len(word):
            return False
        for s in range(max(prev_s + 1, prev_prev_e), prev_e):
            e = ends_at.get(s)
            if e is not None and e > prev_e and extend(s, e, prev_e, k + 1):
                return True
        return False

    if 0 not in ends_at:
        return False
    return extend(0, ends_at[0], 0, 1)


@lru_cache(maxsize=None)
def _enumerate_cached(n, alphabet, obstructions):
    if n == 0:
        return tuple(sorted(alphabet))
    if n == 1:
        return tuple(sorted(obstructions, key=render_word))
    source = obstructions
    out = set()
    for base in _enumerate_cached(n - 1, alphabet, obstructions):
        window = len(chain_factorization(base, source).factors[-1])
        for v in obstructions:
            for k in range(1, min(len(v), window + 1)):
                if base.endswith(v[:k]):
                    cand = base + v[k:]
                    if chain_degree(cand, source) == n:
                        out.add(cand)
    return tuple(sorted(out, key=render_word))


def enumerate_chains(n, source):
    """All degree-n chains, sorted by rendered word.

    Built by extending each (n-1)-chain with an obstruction overlapping its
    final factor; every n-chain arises this way because dropping the last
    ladder rung of an n-chain leaves an (n-1)-chain.
    """
    if n < 0:
        raise ValueError("chain degree must be nonnegative")
    alphabet, obstructions = _obstruction_data(source)
    return _enumerate_cached(n, alphabet, obstructions)
