"""Cohomology of the resolution with one-dimensional sign coefficients.

A sign character sends each generator to +1 or -1 and extends
multiplicatively; a pair of characters (left action, right action) makes
the ground field a bimodule.  Applying Hom(-, W) to the resolution turns
the rank-(2n+3) free module in degree n into the cochain space k^{V(n)},
and the boundary rows specialize by evaluating the left tensor coordinate
under the left character and the right coordinate under the right one.

Dimensions come from two independent exact rank routines over the
rationals: a fraction-free integer elimination used by default, and a
straightforward Gaussian elimination kept as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ComputationError
from .chains import enumerate_chains
from .g23 import closed_form_table, g23_chain_words, g23_presentation
from .morse import differential_table


class NegativeDimension(ComputationError):
    """A dimension count came out negative; the input complex is broken."""


@dataclass(frozen=True)
class SignCharacter:
    """Multiplicative map alphabet* -> {+1, -1}."""

    alphabet: tuple[str, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.alphabet) != len(self.signs) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("need one sign of +-1 per generator")

    def __call__(self, word):
        table = dict(zip(self.alphabet, self.signs))
        value = 1
        for ch in word:
            value *= table[ch]
        return value

    def render(self):
        return "".join("+" if s == 1 else "-" for s in self.signs)


@dataclass(frozen=True)
class OneDimBimodule:
    """The field with left action by ``left`` and right action by ``right``."""

    name: str
    left: SignCharacter
    right: SignCharacter

    def describe(self):
        return f"{self.left.render()}/{self.right.render()}"


def _character(alphabet, text):
    if len(text) != len(alphabet) or set(text) - {"+", "-"}:
        raise ValueError(f"bad sign string {text!r} for alphabet {''.join(alphabet)}")
    return SignCharacter(tuple(alphabet), tuple(1 if ch == "+" else -1 for ch in text))


def _preset_table(alphabet):
    specs = {
        "W1": ("+++", "+++"),
        "W2": ("+++", "---"),
        "W3": ("+++", "++-"),
        "W4": ("+++", "+--"),
        "W5": ("++-", "++-"),
        "W6": ("++-", "--+"),
        "W7": ("++-", "+--"),
        "W8": ("++-", "+-+"),
    }
    return {
        name: OneDimBimodule(name, _character(alphabet, l), _character(alphabet, r))
        for name, (l, r) in specs.items()
    }


PRESETS = _preset_table(("a", "b", "c"))

PRESET_NAMES = tuple(sorted(PRESETS, key=lambda s: int(s[1:])))


def parse_bimodule(text, alphabet=("a", "b", "c")):
    """Accept a preset name like ``W5`` or a sign pair like ``++-/+-+``."""
    text = text.strip()
    key = text.upper()
    if key in PRESETS and tuple(alphabet) == ("a", "b", "c"):
        return PRESETS[key]
    if "/" not in text:
        raise ValueError(
            f"bimodule {text!r} is neither a preset ({', '.join(PRESET_NAMES)}) "
            "nor a sign pair like ++-/+-+"
        )
    left, _, right = text.partition("/")
    return OneDimBimodule(text, _character(alphabet, left), _character(alphabet, right))


def specialize(row, bimodule):
    """Collapse a tensor-weighted boundary row to scalars.

    ``row`` maps target chain words to ``{(left, right): coef}``; each
    weight becomes sum of eps1(left) * eps2(right) * coef.
    """
    out = {}
    for target, weight in row.items():
        total = Fraction(0)
        for (l, r), c in weight.items():
            total += c * bimodule.left(l) * bimodule.right(r)
        if total:
            out[target] = total
    return out


class RationalMatrix:
    """Dense matrix of Fractions with labeled rows and columns."""

    def __init__(self, entries, row_labels, col_labels):
        self.entries = [list(row) for row in entries]
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        for row in self.entries:
            if len(row) != len(self.col_labels):
                raise ValueError("ragged matrix")

    @property
    def shape(self):
        return (len(self.row_labels), len(self.col_labels))

    def rank(self):
        """Fraction-free integer elimination (exact divisions throughout)."""
        rows = []
        for row in self.entries:
            den = math.lcm(*(f.denominator for f in row)) if row else 1
            rows.append([int(f * den) for f in row])
        nrows = len(rows)
        ncols = len(self.col_labels)
        prev = 1
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = next((i for i in range(r, nrows) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            pv = rows[r][c]
            for i in range(r + 1, nrows):
                f = rows[i][c]
                for j in range(c, ncols):
                    rows[i][j] = (rows[i][j] * pv - rows[r][j] * f) // prev
            prev = pv
            r += 1
        return r

    def rank_reference(self):
        """Plain Gaussian elimination over Fraction, for cross-checking."""
        rows = [list(row) for row in self.entries]
        rank = 0
        for c in range(len(self.col_labels)):
            piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            lead = rows[rank][c]
            for i in range(rank + 1, len(rows)):
                if rows[i][c]:
                    factor = rows[i][c] / lead
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
            rank += 1
        return rank


def _chain_words(n, source, pres):
    if source == "closed":
        return g23_chain_words(n)
    return enumerate_chains(n, pres)


def build_matrix(n, bimodule, source="morse", pres=None):
    """Matrix of the n-th cochain map, rows over degree-n chains.

    Columns are the degree-(n-1) chains (a single unit column when n = 0,
    where the entry at generator x is eps1(x) - eps2(x)).  ``source`` picks
    the boundary rows: ``morse`` runs the path sum, ``closed`` reads the
    tabulated formulas and only exists for the default presentation.
    """
    if pres is None:
        pres = g23_presentation()
    if source == "closed" and pres != g23_presentation(pres.step_budget):
        raise ValueError("closed-form rows only exist for the default presentation")
    if source not in ("morse", "closed"):
        raise ValueError(f"unknown source {source!r}")
    if n == 0:
        rows = _chain_words(0, source, pres)
        entries = [
            [Fraction(bimodule.left(x) - bimodule.right(x))] for x in rows
        ]
        return RationalMatrix(entries, rows, ("1",))
    row_words = _chain_words(n, source, pres)
    col_words = _chain_words(n - 1, source, pres)
    table = closed_form_table(n) if source == "closed" else differential_table(n, pres)
    index = {w: i for i, w in enumerate(col_words)}
    entries = []
    for w in row_words:
        line = [Fraction(0)] * len(col_words)
        for target, value in specialize(table[w], bimodule).items():
            line[index[target]] = value
        entries.append(line)
    return RationalMatrix(entries, row_words, col_words)


def cohomology_dim(n, bimodule, source="morse", pres=None, rank_of=None):
    """dim H^n with coefficients in the bimodule."""
    rank_of = rank_of or (lambda m: m.rank())
    out_rank = rank_of(build_matrix(n, bimodule, source, pres))
    if n == 0:
        dim = 1 - out_rank
    else:
        in_rank = rank_of(build_matrix(n - 1, bimodule, source, pres))
        chains = len(_chain_words(n - 1, source, pres or g23_presentation()))
        dim = chains - out_rank - in_rank
    if dim < 0:
        raise NegativeDimension(f"dim H^{n} computed as {dim}")
    return dim


@dataclass(frozen=True)
class DegreeRow:
    n: int
    chains: int
    rank_in: int
    rank_out: int
    dim: int


@dataclass(frozen=True)
class CohomologyReport:
    bimodule: str
    source: str
    rows: tuple[DegreeRow, ...]


def report(bimodule, max_n, source="morse", pres=None):
    """Dimension table for H^0 through H^max_n."""
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    ranks = {}
    for k in range(max_n + 1):
        ranks[k] = build_matrix(k, bimodule, source, pres).rank()
    rows = []
    for n in range(max_n + 1):
        chains = 1 if n == 0 else len(_chain_words(n - 1, source, pres or g23_presentation()))
        rank_in = ranks[n - 1] if n > 0 else 0
        rank_out = ranks[n]
        dim = chains - rank_in - rank_out
        if dim < 0:
            raise NegativeDimension(f"dim H^{n} computed as {dim}")
        rows.append(DegreeRow(n, chains, rank_in, rank_out, dim))
    return CohomologyReport(bimodule.name, source, tuple(rows))


def report_to_json_obj(rep):
    return {
        "bimodule": rep.bimodule,
        "source": rep.source,
        "rows": [
            {
                "n": row.n,
                "chains": row.chains,
                "rank_in": row.rank_in,
                "rank_out": row.rank_out,
                "dim": row.dim,
            }
            for row in rep.rows
        ],
    }
