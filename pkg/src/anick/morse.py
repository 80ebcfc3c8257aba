"""Resolution differentials via a Morse matching on the bar complex.

Vertices of the bar graph in homological degree m are tuples of m nonempty
reduced words; the differential of [w_1|...|w_m] drops a slot from either
end, carrying the dropped word into the left or right tensor coordinate, or
multiplies an adjacent pair, with the sign pattern +, (-1)^i, ..., (-1)^m.
Components whose product collapses to a scalar leave the complex and are
dropped.

``classify_vertex`` assigns each vertex one of three roles.  A vertex whose
cumulative prefixes are all chains is critical; it survives into the small
complex and corresponds to the chain factorization of its concatenated
word.  Otherwise the first prefix failure is repaired either by splitting
the offending slot (the partner has one slot more) or by merging it into
its predecessor (one slot less); the two repairs are mutually inverse, and
each matched edge carries an invertible scalar weight.

``anick_differential`` sums over the zigzag paths of the matched graph:
descend along an unmatched bar edge, climb a reversed matched edge with
weight -1/omega, and repeat until a critical vertex is reached.  Paths that
land on the source side of a matched edge can never climb back to a
critical vertex of the right degree, so exploration treats them as dead
ends.  Tensor weights compose with left words concatenating in traversal
order and right words in reverse traversal order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import ComputationError, normal_form, render_word
from .chains import ChainElement, chain_degree, chain_factorization, enumerate_chains

SCALAR_KEY = ("", "")

_UNIT = {SCALAR_KEY: Fraction(1)}


class CycleDetected(ComputationError):
    """Path exploration returned to a vertex already on the active stack."""


class DepthBudgetExceeded(ComputationError):
    """A zigzag path climbed more times than the depth budget allows."""


class NonScalarMatchWeight(ComputationError):
    """A matched edge weight is not an invertible scalar."""


class MatchingInconsistency(ComputationError):
    """The split/merge repairs failed to pair up as an involution."""


@dataclass(frozen=True)
class MatchInfo:
    """Role of a bar vertex: 'critical', or matched with the named partner.

    ``kind`` is 'finer' when the partner has one slot more (the vertex sits
    at the target end of the matched edge and exploration climbs), and
    'coarser' when the partner has one slot less (the vertex is the source
    end, a dead end for path sums).  ``omega`` is the scalar weight of the
    matched bar edge, oriented finer -> coarser.
    """

    kind: str
    partner: tuple | None = None
    omega: Fraction | None = None


def _compose(first, second, pres):
    """Compose two tensor weights along a path, ``first`` traversed first."""
    out = {}
    for (l1, r1), c1 in first.items():
        for (l2, r2), c2 in second.items():
            c = c1 * c2
            for lu, lc in normal_form(l1 + l2, pres).items():
                for ru, rc in normal_form(r2 + r1, pres).items():
                    key = (lu, ru)
                    v = out.get(key, 0) + c * lc * rc
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    return out


def _scale(weight, scalar):
    return {k: c * scalar for k, c in weight.items()}


def _add_into(acc, weight):
    for k, c in weight.items():
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


@lru_cache(maxsize=None)
def bar_edges(vertex, pres):
    """Outgoing bar-differential edges as a tuple of (target, weight) pairs.

    Targets are one slot shorter.  The head edge carries the first word on
    the left, the tail edge carries the last word on the right with sign
    (-1)^m, and the interior edge at position i multiplies slots i and i+1
    with sign (-1)^i, fanning out over the terms of the reduced product.
    Weights of coinciding targets are summed; zero weights are dropped.
    """
    m = len(vertex)
    if m == 0:
        return ()
    targets = []
    weights = {}

    def put(target, key, coef):
        if target not in weights:
            targets.append(target)
            weights[target] = {}
        w = weights[target]
        v = w.get(key, 0) + coef
        if v:
            w[key] = v
        else:
            w.pop(key, None)

    put(vertex[1:], (vertex[0], ""), Fraction(1))
    put(vertex[:-1], ("", vertex[-1]), Fraction((-1) ** m))
    for i in range(1, m):
        sign = (-1) ** i
        for u, c in normal_form(vertex[i - 1] + vertex[i], pres).items():
            if not u:
                continue  # scalar component, zero in the reduced complex
            put(vertex[:i - 1] + (u,) + vertex[i + 1:], SCALAR_KEY, sign * c)
    return tuple((t, weights[t]) for t in targets if weights[t])


def _check_entries(vertex, pres):
    for w in vertex:
        if not w or not pres.is_reduced_word(w):
            raise ValueError(f"bar vertex entry {w!r} is not a nonempty reduced word")
        for ch in w:
            if ch not in pres.alphabet:
                raise ValueError(f"bar vertex entry {w!r} leaves the alphabet")


def _ladder_index(vertex, pres):
    """Largest j such that every prefix concat through slot k <= j+1 is a
    (k-1)-chain; -1 when even the first slot is not a generator."""
    j = -1
    prefix = ""
    for k, w in enumerate(vertex, start=1):
        prefix += w
        if chain_degree(prefix, pres) != k - 1:
            break
        j = k - 1
    return j


def _split_cut(prefix, factor, j, pres):
    """Unique proper cut k with prefix + factor[:k] a (j+1)-chain, or None."""
    found = None
    for k in range(1, len(factor)):
        if chain_degree(prefix + factor[:k], pres) == j + 1:
            if found is not None:
                raise MatchingInconsistency(
                    f"two split points for {render_word(factor)} after {render_word(prefix)}"
                )
            found = k
    return found


def _matched_omega(finer, coarser, pres):
    """Scalar weight of the matched bar edge, with sanity checks."""
    for target, weight in bar_edges(finer, pres):
        if target == coarser:
            keys = set(weight)
            if keys != {SCALAR_KEY}:
                raise NonScalarMatchWeight(
                    f"matched edge {vertex_name(finer)} -> {vertex_name(coarser)} "
                    "has tensor weight"
                )
            return weight[SCALAR_KEY]
    raise MatchingInconsistency(
        f"no bar edge from {vertex_name(finer)} to {vertex_name(coarser)}"
    )


@lru_cache(maxsize=None)
def classify_vertex(vertex, pres):
    """MatchInfo for a bar vertex; raises MatchingInconsistency on defects."""
    _check_entries(vertex, pres)
    m = len(vertex)
    j = _ladder_index(vertex, pres)
    if j == m - 1:
        return MatchInfo("critical")
    prefix = "".join(vertex[:j + 1])
    factor = vertex[j + 1]
    k = _split_cut(prefix, factor, j, pres)
    if k is not None:
        partner = vertex[:j + 1] + (factor[:k], factor[k:]) + vertex[j + 2:]
        jp = _ladder_index(partner, pres)
        if jp != j + 1 or _split_cut(prefix + factor[:k], factor[k:], jp, pres) is not None:
            raise MatchingInconsistency(
                f"split partner of {vertex_name(vertex)} does not merge back"
            )
        return MatchInfo("finer", partner, _matched_omega(partner, vertex, pres))
    if j < 0:
        raise MatchingInconsistency(
            f"first slot of {vertex_name(vertex)} is not a generator"
        )
    merged = vertex[j] + vertex[j + 1]
    if not pres.is_reduced_word(merged):
        raise MatchingInconsistency(
            f"merge partner of {vertex_name(vertex)} is not reduced"
        )
    partner = vertex[:j] + (merged,) + vertex[j + 2:]
    jp = _ladder_index(partner, pres)
    if jp != j - 1 or _split_cut("".join(partner[:j]), merged, jp, pres) != len(vertex[j]):
        raise MatchingInconsistency(
            f"merge partner of {vertex_name(vertex)} does not split back"
        )
    # The edge weight is only needed when the partner climbs, so it is not
    # computed here; path sums treat this vertex as a dead end either way.
    return MatchInfo("coarser", partner)


@dataclass
class GraphRecorder:
    """Collects the subgraph touched while evaluating one differential."""

    start: tuple = ()
    kinds: dict = field(default_factory=dict)
    bar: dict = field(default_factory=dict)
    matched: dict = field(default_factory=dict)

    def see(self, vertex, info, pres):
        self.kinds[vertex] = info.kind
        if info.kind == "finer":
            self.matched[(info.partner, vertex)] = info.omega
        elif info.kind == "coarser":
            omega = info.omega
            if omega is None:
                omega = _matched_omega(vertex, info.partner, pres)
            self.matched[(vertex, info.partner)] = omega

    def edge(self, source, target, weight):
        self.bar[(source, target)] = dict(weight)


def default_depth_budget(n):
    return 10 * max(n, 1)


def anick_differential(chain_or_word, pres, depth_budget=None, recorder=None, _memo=None):
    """Boundary of a chain in the small complex: {target word: weight}.

    Weights live in the enveloping algebra, ``{(left, right): coef}``.  The
    empty-string target key names the degree-0 module when differentiating a
    generator.  ``recorder``, if given, collects the visited subgraph for
    rendering.  ``_memo`` lets batch callers share path sums between chains
    of the same degree.
    """
    if isinstance(chain_or_word, ChainElement):
        element = chain_or_word
    else:
        element = chain_factorization(str(chain_or_word), pres)
    start = element.factors
    budget = depth_budget if depth_budget is not None else default_depth_budget(element.degree)
    memo = _memo if _memo is not None and recorder is None else {}
    on_stack = set()

    def explore(v, depth):
        if v == ():
            return {"": dict(_UNIT)}
        if v in memo:
            return memo[v]
        if v in on_stack:
            raise CycleDetected(f"zigzag revisits {vertex_name(v)}")
        info = classify_vertex(v, pres)
        if recorder is not None:
            recorder.see(v, info, pres)
        if info.kind == "critical":
            result = {"".join(v): dict(_UNIT)}
        elif info.kind == "coarser":
            result = {}
        else:
            if depth >= budget:
                raise DepthBudgetExceeded(
                    f"more than {budget} climbs while differentiating "
                    f"{render_word(element.word)}"
                )
            on_stack.add(v)
            s = info.partner
            rho = Fraction(-1) / info.omega
            result = {}
            for target, weight in bar_edges(s, pres):
                if target == v:
                    continue
                if recorder is not None:
                    recorder.edge(s, target, weight)
                scaled = _scale(weight, rho)
                for word, tail_weight in explore(target, depth + 1).items():
                    acc = result.setdefault(word, {})
                    _add_into(acc, _compose(scaled, tail_weight, pres))
            result = {w: wt for w, wt in result.items() if wt}
            on_stack.discard(v)
        memo[v] = result
        return result

    if recorder is not None:
        recorder.start = start
        recorder.kinds[start] = "critical"
    out = {}
    for target, weight in bar_edges(start, pres):
        if recorder is not None:
            recorder.edge(start, target, weight)
        for word, tail_weight in explore(target, 0).items():
            acc = out.setdefault(word, {})
            _add_into(acc, _compose(weight, tail_weight, pres))
    return {w: wt for w, wt in out.items() if wt}


@lru_cache(maxsize=None)
def differential_table(n, pres, depth_budget=None):
    """{chain word: boundary row} over all degree-n chains."""
    shared = {}
    return {
        w: anick_differential(w, pres, depth_budget, _memo=shared)
        for w in enumerate_chains(n, pres)
    }


def compose_check(n, pres, source=None):
    """True when the degree-n boundary composed with degree-(n-1) vanishes."""
    table = source if source is not None else (lambda k: differential_table(k, pres))
    upper = table(n)
    lower = table(n - 1)
    for row in upper.values():
        acc = {}
        for mid, w1 in row.items():
            for target, w2 in lower.get(mid, {}).items():
                bucket = acc.setdefault(target, {})
                _add_into(bucket, _compose(w1, w2, pres))
        if any(weight for weight in acc.values()):
            return False
    return True


def vertex_name(vertex):
    return "[" + "|".join(render_word(w) for w in vertex) + "]"


def render_weight(weight):
    """Tensor weight as text, e.g. ``b(x)1 - 1(x)bc`` or a bare scalar."""
    if not weight:
        return "0"
    bits = []
    for (l, r) in sorted(weight):
        c = weight[(l, r)]
        if (l, r) == SCALAR_KEY:
            core = str(abs(c))
        else:
            lw = render_word(l) or "1"
            rw = render_word(r) or "1"
            core = f"{lw}(x){rw}"
            if abs(c) != 1:
                core = f"{abs(c)}{core}"
        if not bits:
            bits.append(core if c > 0 else f"-{core}")
        else:
            bits.append(f"+ {core}" if c > 0 else f"- {core}")
    return " ".join(bits)


def to_dot(recorder, title=None):
    """Graphviz text for a recorded subgraph.

    Critical vertices are boxed; matched edges are dashed and point from
    the finer vertex to its coarser partner.  Vertices and edges are sorted
    so the output is stable.
    """
    names = {}

    def name(v):
        if v not in names:
            names[v] = f"v{len(names)}"
        return names[v]

    vertices = set(recorder.kinds)
    for s, t in recorder.bar:
        vertices.update((s, t))
    for f, c in recorder.matched:
        vertices.update((f, c))
    ordered = sorted(vertices, key=lambda v: (-len(v), vertex_name(v)))
    lines = ["digraph anick {"]
    if title:
        lines.append(f'  label="{title}";')
    lines.append("  rankdir=TB;")
    for v in ordered:
        shape = "box" if recorder.kinds.get(v) == "critical" else "ellipse"
        lines.append(f'  {name(v)} [label="{vertex_name(v)}", shape={shape}];')
    matched = set(recorder.matched)
    for (s, t) in sorted(recorder.bar, key=lambda e: (vertex_name(e[0]), vertex_name(e[1]))):
        weight = recorder.bar[(s, t)]
        style = ", style=dashed" if (s, t) in matched else ""
        lines.append(
            f'  {names[s]} -> {names[t]} [label="{render_weight(weight)}"{style}];'
        )
    for (f, c) in sorted(recorder.matched, key=lambda e: (vertex_name(e[0]), vertex_name(e[1]))):
        if (f, c) in recorder.bar:
            continue
        omega = recorder.matched[(f, c)]
        lines.append(
            f'  {names[f]} -> {names[c]} [label="{omega}", style=dashed];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
