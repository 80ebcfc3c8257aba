"""The group algebra presentation with relations a^2 = b^2 = c^2 = 1 and
bca = acb, together with closed formulas for its resolution differential.

The rewriting system adds the derived rule ba -> cabc so that the five-rule
system is confluent.  Chains then fall into five shapes per degree n:
the three powers a^{n+1}, b^{n+1}, c^{n+1}, plus b^i a^j and b^i c a^j with
i + j = n + 1, giving 2n + 3 chains in each degree n >= 1 (and the three
generators in degree 0).

``closed_form_differential`` evaluates the boundary of any such chain
directly from case formulas, without running the Morse path sum.  The two
low degrees are tabulated; from degree 2 on the general pattern applies,
branching on the parity of the degree and of the a-exponent.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from .algebra import DEFAULT_STEP_BUDGET, ComputationError, Presentation, RewriteRule, render_word
from .chains import ChainElement, chain_factorization

_G23_RULES = (
    ("aa", ""),
    ("bb", ""),
    ("cc", ""),
    ("ba", "cabc"),
    ("bca", "acb"),
)

ALPHABET = ("a", "b", "c")


class DegreeMismatch(ComputationError):
    """The word is not a chain of the requested (or any) degree here."""


@lru_cache(maxsize=None)
def g23_presentation(step_budget=DEFAULT_STEP_BUDGET):
    rules = tuple(RewriteRule.make(lhs, rhs) for lhs, rhs in _G23_RULES)
    return Presentation(ALPHABET, rules, step_budget)


def binomial(p, q):
    if p < 0 or q < 0 or q > p:
        return 0
    return math.comb(p, q)


def g23_chain_words(n):
    """Degree-n chain words, sorted by rendered form."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n == 0:
        return tuple(ALPHABET)
    words = ["a" * (n + 1), "b" * (n + 1), "c" * (n + 1)]
    for i in range(1, n + 1):
        j = n + 1 - i
        words.append("b" * i + "a" * j)
        words.append("b" * i + "c" + "a" * j)
    return tuple(sorted(words, key=render_word))


_POWER = re.compile(r"^(a+|b+|c+)$")
_BA = re.compile(r"^(b+)(a+)$")
_BCA = re.compile(r"^(b+)c(a+)$")


def _shape(word):
    """(kind, i, j) where kind is 'power', 'ba' or 'bca'; None otherwise."""
    if _POWER.match(word):
        return "power", len(word), 0
    m = _BA.match(word)
    if m:
        return "ba", len(m.group(1)), len(m.group(2))
    m = _BCA.match(word)
    if m:
        return "bca", len(m.group(1)), len(m.group(2))
    return None


def _unit(target, left="", right="", coef=1):
    return (target, left, right, Fraction(coef))


# Degree-1 chains: the five obstructions.  Terms are (target, left, right, coef).
_D2 = {
    "aa": [_unit("a", "a"), _unit("a", "", "a")],
    "bb": [_unit("b", "b"), _unit("b", "", "b")],
    "cc": [_unit("c", "c"), _unit("c", "", "c")],
    "ba": [
        _unit("a", "b"),
        _unit("b", "", "a"),
        _unit("c", "", "abc", -1),
        _unit("a", "c", "bc", -1),
        _unit("c", "cab", "", -1),
        _unit("b", "ca", "c", -1),
    ],
    "bca": [
        _unit("b", "", "ca"),
        _unit("a", "bc"),
        _unit("c", "b", "a"),
        _unit("a", "", "cb", -1),
        _unit("c", "a", "b", -1),
        _unit("b", "ac", "", -1),
    ],
}


def _terms_general(word, n):
    """Boundary terms for a degree-n chain, n >= 2."""
    kind, i, j = _shape(word)
    x = word[0]
    sign = (-1) ** (n + 1)
    if kind == "power":
        lower = x * n
        return [_unit(lower, x), _unit(lower, "", x, sign)]

    bi, aj = "b" * i, "a" * j
    bi1, aj1 = "b" * (i - 1), "a" * (j - 1)
    cn = "c" * n

    if n % 2 == 1:  # degree n odd, chain length n + 1 even
        if kind == "ba":
            if j == 1:
                return [
                    _unit(bi1 + "a", "b"),
                    _unit(bi, "", "a"),
                    _unit(bi1 + "ca", "", "bc", -1),
                    _unit(bi, "ca", "c", -1),
                    _unit(cn, "cab", "", -1),
                ]
            if i == 1:
                return [
                    _unit(aj, "b"),
                    _unit("b" + aj1, "", "a"),
                    _unit("bc" + aj1, "ca", "", -1),
                    _unit(aj, "c", "bc", -1),
                    _unit(cn, "", "abc", -1),
                ]
            if j % 2 == 0:
                return [
                    _unit(bi1 + aj, "b"),
                    _unit(bi + aj1, "", "a"),
                    _unit(bi1 + "c" + aj, "", "cb"),
                    _unit(bi + "c" + aj1, "ac", ""),
                ]
            return [
                _unit(bi1 + aj, "b"),
                _unit(bi + aj1, "", "a"),
                _unit(bi1 + "c" + aj, "", "bc", -1),
                _unit(bi + "c" + aj1, "ca", "", -1),
                _unit(cn, "cab", "", -binomial((n - 3) // 2, (i - 3) // 2)),
                _unit(cn, "", "abc", -binomial((n - 3) // 2, (j - 3) // 2)),
            ]
        # kind == "bca"
        if j == 1:
            return [
                _unit(bi1 + "ca", "b"),
                _unit(bi, "", "ca"),
                _unit(bi1 + "a", "", "cb", -1),
                _unit(bi, "ac", "", -1),
                _unit(cn, "a", "b", -1),
            ]
        if i == 1:
            return [
                _unit(aj, "bc"),
                _unit("bc" + aj1, "", "a"),
                _unit("b" + aj1, "ac", "", -1),
                _unit(aj, "", "cb", -1),
                _unit(cn, "a", "b", -1),
            ]
        if j % 2 == 0:
            return [
                _unit(bi1 + "c" + aj, "b"),
                _unit(bi + "c" + aj1, "", "a"),
                _unit(bi1 + aj, "", "bc"),
                _unit(bi + aj1, "ca", ""),
                _unit(cn, "cab", "abc", binomial((n - 3) // 2, (j - 2) // 2)),
                _unit(cn, "", "", -binomial((n - 3) // 2, (i - 2) // 2)),
            ]
        return [
            _unit(bi1 + "c" + aj, "b"),
            _unit(bi + "c" + aj1, "", "a"),
            _unit(bi1 + aj, "", "cb", -1),
            _unit(bi + aj1, "ac", "", -1),
            _unit(
                cn,
                "a",
                "b",
                -(binomial((n - 3) // 2, (i - 3) // 2) + binomial((n - 3) // 2, (j - 3) // 2)),
            ),
        ]

    # degree n even, chain length n + 1 odd
    if kind == "ba":
        if j == 1:
            return [
                _unit(bi1 + "a", "b"),
                _unit(bi, "", "a", -1),
                _unit(bi1 + "ca", "", "bc"),
                _unit(bi, "ac", "c"),
                _unit(cn, "a", ""),
            ]
        if i == 1:
            return [
                _unit(aj, "b"),
                _unit("b" + aj1, "", "a", -1),
                _unit("bc" + aj1, "ca", "", -1),
                _unit(aj, "c", "cb", -1),
                _unit(cn, "", "b", -1),
            ]
        if j % 2 == 0:
            return [
                _unit(bi1 + aj, "b"),
                _unit(bi + aj1, "", "a", -1),
                _unit(bi1 + "c" + aj, "", "cb", -1),
                _unit(bi + "c" + aj1, "ca", "", -1),
                _unit(cn, "", "b", -binomial((n - 2) // 2, (j - 2) // 2)),
            ]
        return [
            _unit(bi1 + aj, "b"),
            _unit(bi + aj1, "", "a", -1),
            _unit(bi1 + "c" + aj, "", "bc"),
            _unit(bi + "c" + aj1, "ac", ""),
            _unit(cn, "a", "", binomial((n - 2) // 2, (i - 2) // 2)),
        ]
    # kind == "bca"
    if j == 1:
        return [
            _unit(bi1 + "ca", "b"),
            _unit(bi, "", "ca", -1),
            _unit(bi1 + "a", "", "cb"),
            _unit(bi, "ca", ""),
            _unit(cn, "cab", "b"),
        ]
    if i == 1:
        return [
            _unit(aj, "bc"),
            _unit("bc" + aj1, "", "a", -1),
            _unit("b" + aj1, "ac", "", -1),
            _unit(aj, "", "bc", -1),
            _unit(cn, "a", "abc", -1),
        ]
    if j % 2 == 0:
        return [
            _unit(bi1 + "c" + aj, "b"),
            _unit(bi + "c" + aj1, "", "a", -1),
            _unit(bi1 + aj, "", "bc", -1),
            _unit(bi + aj1, "ac", "", -1),
            _unit(cn, "a", "abc", -binomial((n - 2) // 2, (j - 2) // 2)),
        ]
    return [
        _unit(bi1 + "c" + aj, "b"),
        _unit(bi + "c" + aj1, "", "a", -1),
        _unit(bi1 + aj, "", "cb"),
        _unit(bi + aj1, "ca", ""),
        _unit(cn, "cab", "b", binomial((n - 2) // 2, (i - 2) // 2)),
    ]


def closed_form_differential(chain_or_word, n=None):
    """Boundary of a degree-n chain as {target word: {(left, right): coef}}.

    Accepts a ChainElement or a plain word; ``n`` may be supplied as a
    consistency check and is otherwise inferred from the shape.  Degree-0
    chains map to the empty dict at the level of this table (the homology
    augmentation is handled by the cohomology layer).
    """
    if isinstance(chain_or_word, ChainElement):
        word = chain_or_word.word
        if n is None:
            n = chain_or_word.degree
    else:
        word = str(chain_or_word)
    shape = _shape(word)
    if shape is None:
        raise DegreeMismatch(f"{render_word(word) or word!r} is not a chain here")
    kind, i, j = shape
    degree = i - 1 if kind == "power" else i + j - 1
    if n is not None and n != degree:
        raise DegreeMismatch(
            f"{render_word(word)} is a chain of degree {degree}, not {n}"
        )
    n = degree
    if n == 0:
        return {}
    if n == 1:
        terms = _D2[word]
    else:
        terms = _terms_general(word, n)
    out = {}
    for target, left, right, coef in terms:
        if coef == 0:
            continue
        row = out.setdefault(target, {})
        key = (left, right)
        row[key] = row.get(key, Fraction(0)) + coef
        if not row[key]:
            del row[key]
    return {t: r for t, r in out.items() if r}


@lru_cache(maxsize=None)
def closed_form_table(n):
    """{chain word: boundary row} over all degree-n chains."""
    return {w: closed_form_differential(w, n) for w in g23_chain_words(n)}


def g23_chain_elements(n):
    """Chain factorizations for every degree-n chain word."""
    pres = g23_presentation()
    return tuple(chain_factorization(w, pres) for w in g23_chain_words(n))
