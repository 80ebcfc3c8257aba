"""Words, exact rational scalars, and rewriting for monomially headed algebras.

A word over the generator alphabet is a plain string, one character per
generator.  Noncommutative polynomials are dicts mapping words to nonzero
``Fraction`` coefficients.  A ``Presentation`` couples an alphabet with a
reduced rewriting system; the left-hand sides form the obstruction set, and
``normal_form`` rewrites any word into the span of obstruction-free words.
Presentations and rules are frozen (hashable), so results can be memoized
against them.
"""

from __future__ import annotations

import json
import re
from dataclasses import InitVar, dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

DEFAULT_STEP_BUDGET = 10_000

__all__ = [
    "DEFAULT_STEP_BUDGET",
    "ComputationError",
    "StepBudgetExceeded",
    "ParseError",
    "RewriteRule",
    "Presentation",
    "parse_word",
    "render_word",
    "parse_scalar",
    "normal_form",
    "reduce_poly",
    "poly_multiply",
    "render_poly",
    "presentation_to_json",
    "presentation_from_json",
    "load_presentation",
]


class ComputationError(Exception):
    """Base class for failures while rewriting or computing differentials."""


class StepBudgetExceeded(ComputationError):
    """A normal form computation ran past the presentation's step budget."""


class ParseError(ValueError):
    """Malformed word text; carries the offending position when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)
        self.position = position


_EXPONENT = re.compile(r"\^(\d+)")


def parse_word(text, alphabet=None):
    """Parse ``(<gen> | <gen>^<positive int>)*`` into an expanded word string."""
    letters = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "^":
            raise ParseError("exponent with no generator before it", i)
        if ch.isdigit():
            raise ParseError("digit outside an exponent", i)
        if alphabet is not None and ch not in alphabet:
            raise ParseError(f"unknown generator {ch!r}", i)
        i += 1
        if i < len(text) and text[i] == "^":
            m = _EXPONENT.match(text, i)
            if m is None:
                raise ParseError("malformed exponent", i)
            exp = int(m.group(1))
            if exp < 1:
                raise ParseError("exponent must be a positive integer", i + 1)
            letters.append(ch * exp)
            i = m.end()
        else:
            letters.append(ch)
    return "".join(letters)


def render_word(word):
    """Render with maximal exponent compression, e.g. ``bbca`` -> ``b^2ca``."""
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        out.append(word[i] if run == 1 else f"{word[i]}^{run}")
        i = j
    return "".join(out)


def parse_scalar(text):
    """Exact rational from a decimal string like ``-3`` or ``5/7``."""
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


@dataclass(frozen=True)
class RewriteRule:
    """A monic rule lhs -> rhs; the rhs is stored as sorted (word, coef) pairs."""

    lhs: str
    rhs: tuple[tuple[str, Fraction], ...]

    @staticmethod
    def make(lhs, rhs):
        """Build a rule from a word, a {word: coef} dict, or (word, coef) pairs."""
        if isinstance(rhs, str):
            rhs = {rhs: Fraction(1)}
        items = rhs.items() if isinstance(rhs, dict) else rhs
        terms = tuple(sorted((w, Fraction(c)) for w, c in items if c))
        return RewriteRule(lhs, terms)

    def rhs_poly(self):
        return dict(self.rhs)


@dataclass(frozen=True)
class Presentation:
    """Alphabet plus a reduced rewriting system.

    The alphabet tuple is ordered by precedence (highest first).  The rules
    are the primary data: no term order is reconstructed from them.  With
    ``strict`` left on, construction checks that symbols are single
    non-digit characters, that every rule stays inside the alphabet, that no
    left-hand side occurs inside another left-hand side or inside any
    right-hand side support word, and that coefficients are nonzero.
    """

    alphabet: tuple[str, ...]
    rules: tuple[RewriteRule, ...]
    step_budget: int = DEFAULT_STEP_BUDGET
    strict: InitVar[bool] = True

    def __post_init__(self, strict):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        if strict:
            self._validate()

    def _validate(self):
        seen = set()
        for g in self.alphabet:
            if not isinstance(g, str) or len(g) != 1 or g.isdigit() or g == "^":
                raise ValueError(f"bad generator symbol {g!r}")
            if g in seen:
                raise ValueError(f"duplicate generator {g!r}")
            seen.add(g)
        if self.step_budget < 1:
            raise ValueError("step budget must be at least 1")
        for rule in self.rules:
            if not rule.lhs:
                raise ValueError("empty rule left-hand side")
            for ch in rule.lhs:
                if ch not in seen:
                    raise ValueError(f"rule {rule.lhs!r} uses unknown generator {ch!r}")
            for word, coef in rule.rhs:
                if coef == 0:
                    raise ValueError(f"zero coefficient in rhs of {rule.lhs!r}")
                for ch in word:
                    if ch not in seen:
                        raise ValueError(f"rhs of {rule.lhs!r} uses unknown generator {ch!r}")
                if rule.lhs in word:
                    raise ValueError(f"rhs of {rule.lhs!r} is not reduced")
        lhss = [r.lhs for r in self.rules]
        for i, a in enumerate(lhss):
            for j, b in enumerate(lhss):
                if i != j and a in b:
                    raise ValueError(f"obstruction {a!r} occurs inside {b!r}: system not reduced")

    @cached_property
    def obstructions(self):
        return tuple(r.lhs for r in self.rules)

    @cached_property
    def _rules_longest_first(self):
        return tuple(sorted(self.rules, key=lambda r: -len(r.lhs)))

    def is_reduced_word(self, word):
        return not any(v in word for v in self.obstructions)


def _leftmost_redex(word, pres):
    # Longest lhs wins among rules matching at the same position.
    for i in range(len(word)):
        for rule in pres._rules_longest_first:
            if word.startswith(rule.lhs, i):
                return i, rule
    return None


def _rightmost_redex(word, pres):
    for i in range(len(word) - 1, -1, -1):
        for rule in pres._rules_longest_first:
            if word.startswith(rule.lhs, i):
                return i, rule
    return None


def _all_redexes(word, pres):
    return [
        (i, rule)
        for i in range(len(word))
        for rule in pres._rules_longest_first
        if word.startswith(rule.lhs, i)
    ]


@lru_cache(maxsize=65536)
def normal_form(word, pres, _redex=_leftmost_redex):
    """Rewrite ``word`` to a polynomial supported on obstruction-free words.

    Deterministic: each step rewrites the leftmost redex, taking the longest
    matching left-hand side when several start at the same position.  Raises
    StepBudgetExceeded after ``pres.step_budget`` rule applications.

    Results are cached; callers must treat the returned dict as read-only.
    """
    steps = pres.step_budget
    out = {}
    stack = [(word, Fraction(1))]
    while stack:
        w, c = stack.pop()
        hit = _redex(w, pres)
        if hit is None:
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
            continue
        if steps <= 0:
            raise StepBudgetExceeded(
                f"normal form of {word!r} exceeded {pres.step_budget} steps"
            )
        steps -= 1
        i, rule = hit
        head, tail = w[:i], w[i + len(rule.lhs):]
        for u, d in rule.rhs:
            stack.append((head + u + tail, c * d))
    return out


def reduce_poly(p, pres):
    """Normal form of a polynomial, term by term, zero terms dropped."""
    out = {}
    for w, c in p.items():
        for u, d in normal_form(w, pres).items():
            v = out.get(u, 0) + c * d
            if v:
                out[u] = v
            else:
                out.pop(u, None)
    return out


def poly_multiply(p, q, pres):
    """Product in the presented algebra, with reduced support."""
    out = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            for u, d in normal_form(w1 + w2, pres).items():
                v = out.get(u, 0) + c1 * c2 * d
                if v:
                    out[u] = v
                else:
                    out.pop(u, None)
    return out


def render_poly(p):
    """Human-readable polynomial; the empty word renders as ``1``."""
    if not p:
        return "0"
    bits = []
    for word in sorted(p):
        coef = p[word]
        mono = render_word(word) or "1"
        if mono == "1":
            term = str(abs(coef))
        elif abs(coef) == 1:
            term = mono
        else:
            term = f"{abs(coef)}{mono}"
        if not bits:
            bits.append(term if coef > 0 else f"-{term}")
        else:
            bits.append(f"+ {term}" if coef > 0 else f"- {term}")
    return " ".join(bits)


def presentation_to_json(pres):
    """JSON-ready dict with expanded words and decimal-string coefficients."""
    return {
        "generators": list(pres.alphabet),
        "rules": [
            {
                "lhs": rule.lhs,
                "rhs": [{"word": w, "coef": str(c)} for w, c in rule.rhs],
            }
            for rule in pres.rules
        ],
        "step_budget": pres.step_budget,
    }


def presentation_from_json(obj, step_budget=None):
    try:
        alphabet = tuple(obj["generators"])
        raw_rules = obj["rules"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"presentation JSON missing field: {exc}") from exc
    rules = []
    for raw in raw_rules:
        lhs = parse_word(raw["lhs"], alphabet)
        rhs = [(parse_word(t["word"], alphabet), parse_scalar(t["coef"])) for t in raw["rhs"]]
        rules.append(RewriteRule.make(lhs, rhs))
    budget = step_budget or obj.get("step_budget", DEFAULT_STEP_BUDGET)
    return Presentation(alphabet, tuple(rules), budget)


def load_presentation(path, step_budget=None):
    with open(path, encoding="utf-8") as fh:
        return presentation_from_json(json.load(fh), step_budget)
