"""Finite-type recognition and spherical-subset combinatorics.

Two independent deciders live here.  ``is_spherical`` matches connected
subdiagrams against the classification of finite Coxeter groups
(A B D E F H I families).  ``coxeter_order_bfs`` knows nothing about the
classification: it closes the group generated by the exact reflection
matrices of the canonical geometric representation and reports the order,
or ``EXCEEDED_CAP``.  For labels in {2, 3, 4, 6, inf} the matrix entries
lie in Z[sqrt2, sqrt3] (see ``quadfield``), so the closure is exact; rank
at most 2 is answered by the dihedral formula |W| = 2m.  The two deciders
are played against each other in the test suite; they are not allowed to
disagree.

``max_spherical`` computes the size of a largest subset generating a
finite Coxeter group ("spherical dimension"), the quantity that equals
the cohomological dimension of the Artin group when the K(pi,1) property
holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .diagram import (
    INF,
    CoxeterDiagram,
    components,
    induced,
    subset_of,
)
from .quadfield import EXACT_LABELS, ZERO, Quad, qadd, qmul, qneg, two_cos

DEFAULT_CAP = 20000


class UnsupportedLabels(ValueError):
    """Exact reflection matrices are unavailable for these labels."""


class _ExceededCap:
    """Sentinel: the breadth-first closure grew past the cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ExceededCap"


EXCEEDED_CAP = _ExceededCap()


# ---------------------------------------------------------------------------
# classification matcher
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyTag:
    """An irreducible finite-type family: A_n, B_n, D_n, E_n, F_4, H_n, I_2(m)."""

    letter: str
    rank: int
    m: int | None = None

    @property
    def name(self) -> str:
        if self.letter == "I":
            return f"I_2({self.m})"
        return f"{self.letter}_{self.rank}"

    def order(self) -> int:
        letter, n = self.letter, self.rank
        if letter == "A":
            return math.factorial(n + 1)
        if letter == "B":
            return (2 ** n) * math.factorial(n)
        if letter == "D":
            return (2 ** (n - 1)) * math.factorial(n)
        if letter == "E":
            return {6: 51840, 7: 2903040, 8: 696729600}[n]
        if letter == "F":
            return 1152
        if letter == "H":
            return {3: 120, 4: 14400}[n]
        if letter == "I":
            return 2 * self.m
        raise ValueError(f"unknown family {self.letter}")

    def edge_labels(self) -> tuple[int, ...]:
        """All labels > 2 occurring in the family's diagram."""
        if self.letter == "I":
            return (self.m,)
        if self.letter in ("A", "D", "E"):
            return (3,) if self.rank >= 2 else ()
        if self.letter == "B" or self.letter == "F":
            return (3, 4) if self.rank >= 3 else (4,)
        if self.letter == "H":
            return (3, 5)
        raise ValueError(f"unknown family {self.letter}")

    def __repr__(self):
        return self.name


def all_family_tags(max_rank: int = 8, max_dihedral: int = 30) -> list[FamilyTag]:
    """The finite-type family table up to the given rank, for table scans."""
    tags = [FamilyTag("A", n) for n in range(1, max_rank + 1)]
    tags += [FamilyTag("B", n) for n in range(2, max_rank + 1)]
    tags += [FamilyTag("D", n) for n in range(4, max_rank + 1)]
    tags += [FamilyTag("E", n) for n in (6, 7, 8) if n <= max_rank]
    if max_rank >= 4:
        tags.append(FamilyTag("F", 4))
    tags += [FamilyTag("H", n) for n in (3, 4) if n <= max_rank]
    tags += [FamilyTag("I", 2, m) for m in range(5, max_dihedral + 1)]
    return tags


def classify_connected(d: CoxeterDiagram) -> FamilyTag | None:
    """Match a connected diagram against the finite-type table.

    Returns the family tag, or None when the Coxeter group is infinite.
    """
    n = d.rank
    if n == 0:
        raise ValueError("empty diagram is not a component")
    if n == 1:
        return FamilyTag("A", 1)
    if n == 2:
        s, t = sorted(d.generators)
        m = d.label(s, t)
        if m == INF:
            return None
        if m == 3:
            return FamilyTag("A", 2)
        if m == 4:
            return FamilyTag("B", 2)
        return FamilyTag("I", 2, m)

    edges = []
    for (s, t) in d.pairs():
        m = d.label(s, t)
        if m == INF:
            return None
        if m > 2:
            edges.append((s, t, m))
    if len(edges) != n - 1:
        # connected with n-1 edges is a tree; more means a cycle
        return None

    deg: dict[str, int] = {g: 0 for g in d.generators}
    for s, t, _ in edges:
        deg[s] += 1
        deg[t] += 1
    if max(deg.values()) >= 4:
        return None
    branch = sorted(g for g, k in deg.items() if k == 3)
    if len(branch) > 1:
        return None
    high = [(s, t, m) for s, t, m in edges if m >= 4]
    if len(high) > 1:
        return None

    if high:
        if branch:
            return None
        s, t, m = high[0]
        if m >= 6:
            return None
        terminal = deg[s] == 1 or deg[t] == 1
        if m == 4:
            if terminal:
                return FamilyTag("B", n)
            if n == 4:
                return FamilyTag("F", 4)
            return None
        # m == 5
        if not terminal:
            return None
        if n == 3:
            return FamilyTag("H", 3)
        if n == 4:
            return FamilyTag("H", 4)
        return None

    # simply laced tree
    if not branch:
        return FamilyTag("A", n)
    v = branch[0]
    arms = sorted(_arm_length(d, v, w) for w in d.neighbors(v))
    if arms[0] == 1 and arms[1] == 1:
        return FamilyTag("D", n)
    if arms == [1, 2, 2]:
        return FamilyTag("E", 6)
    if arms == [1, 2, 3]:
        return FamilyTag("E", 7)
    if arms == [1, 2, 4]:
        return FamilyTag("E", 8)
    return None


def _arm_length(d: CoxeterDiagram, branch: str, first: str) -> int:
    length = 1
    prev, cur = branch, first
    while True:
        nxt = [g for g in d.neighbors(cur) if g != prev]
        if not nxt:
            return length
        prev, cur = cur, nxt[0]
        length += 1


@dataclass(frozen=True)
class SphericalReport:
    """Verdict for a subset: finite type (with families and order) or not."""

    subset: tuple[str, ...]
    spherical: bool
    families: tuple[tuple[FamilyTag, tuple[str, ...]], ...]
    coxeter_order: int | None


def is_spherical(d: CoxeterDiagram, names: Iterable[str] | None = None) -> SphericalReport:
    """Decide whether a subset generates a finite Coxeter group.

    Splits the induced diagram into connected components and matches each
    against the finite-type table.
    """
    subset = subset_of(d, names) if names is not None else tuple(sorted(d.generators))
    return _is_spherical_cached(d, subset)


@lru_cache(maxsize=65536)
def _is_spherical_cached(d: CoxeterDiagram, subset: tuple[str, ...]) -> SphericalReport:
    sub = induced(d, subset)
    fams = []
    order = 1
    for comp in components(sub):
        tag = classify_connected(induced(sub, comp))
        if tag is None:
            return SphericalReport(subset, False, (), None)
        fams.append((tag, comp))
        order *= tag.order()
    return SphericalReport(subset, True, tuple(fams), order)


# ---------------------------------------------------------------------------
# breadth-first oracle
# ---------------------------------------------------------------------------

def _generator_data(d: CoxeterDiagram):
    """Per-generator sparse row updates for right multiplication.

    The reflection sending e_t to e_t + 2cos(pi/m_st) e_s (and e_s to -e_s)
    is I + R with R supported on row s; right-multiplying a matrix by it
    only touches the columns where that row is nonzero.
    """
    gens = sorted(d.generators)
    n = len(gens)
    idx = {g: i for i, g in enumerate(gens)}
    data = []
    for s in gens:
        i = idx[s]
        cols = [(i, (-2, 0, 0, 0))]
        for t in gens:
            if t == s:
                continue
            m = d.label(s, t)
            if m == 2:
                continue
            if m != INF and m not in EXACT_LABELS:
                raise UnsupportedLabels(
                    f"label {m} on ({s}, {t}) has no exact matrix at rank >= 3")
            cols.append((idx[t], two_cos(m)))
        data.append(tuple(cols))
    return gens, data


def _identity_state(n: int) -> tuple[Quad, ...]:
    one: Quad = (1, 0, 0, 0)
    state = [ZERO] * (n * n)
    for i in range(n):
        state[i * n + i] = one
    return tuple(state)


def _apply_gen(state, n: int, s_index: int, cols) -> tuple[Quad, ...]:
    new = list(state)
    for i in range(n):
        base = i * n
        x = state[base + s_index]
        if x == ZERO:
            continue
        for j, rv in cols:
            new[base + j] = qadd(new[base + j], qmul(x, rv))
    return tuple(new)


def coxeter_order_bfs(d: CoxeterDiagram, names: Iterable[str] | None = None,
                      cap: int = DEFAULT_CAP):
    """Exact order of the Coxeter group of a subset, or ``EXCEEDED_CAP``.

    Rank <= 2 is answered by the formula |W| = 2m; otherwise all labels
    must lie in {2, 3, 4, 6, inf} (raises ``UnsupportedLabels`` if not) and
    the group is closed under breadth-first multiplication of the exact
    reflection matrices.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    subset = subset_of(d, names) if names is not None else tuple(sorted(d.generators))
    sub = induced(d, subset)
    n = sub.rank
    if n == 0:
        return 1
    if n == 1:
        return 2 if 2 <= cap else EXCEEDED_CAP
    if n == 2:
        s, t = sorted(sub.generators)
        m = sub.label(s, t)
        if m == INF:
            return EXCEEDED_CAP
        return 2 * m if 2 * m <= cap else EXCEEDED_CAP

    _, data = _generator_data(sub)
    identity = _identity_state(n)
    seen = {identity}
    frontier = [identity]
    while frontier:
        next_frontier = []
        for state in frontier:
            for s_index in range(n):
                new = _apply_gen(state, n, s_index, data[s_index])
                if new not in seen:
                    seen.add(new)
                    if len(seen) > cap:
                        return EXCEEDED_CAP
                    next_frontier.append(new)
        frontier = next_frontier
    return len(seen)


def longest_element_word(d: CoxeterDiagram, names: Iterable[str] | None = None,
                         cap: int | None = None) -> tuple[str, ...]:
    """A reduced word for the longest element of a finite Coxeter group.

    Breadth-first closure with parent tracking; generators are expanded in
    sorted order, so the returned word is the lexicographically least
    reduced word.  Rank <= 2 uses the alternating word directly.
    """
    subset = subset_of(d, names) if names is not None else tuple(sorted(d.generators))
    report = is_spherical(d, subset)
    if not report.spherical:
        raise ValueError(f"subset {subset} is not spherical")
    sub = induced(d, subset)
    n = sub.rank
    if n == 0:
        return ()
    if n == 1:
        return (subset[0],)
    if n == 2:
        s, t = sorted(sub.generators)
        m = sub.label(s, t)
        return tuple([s, t][i % 2] for i in range(m))

    limit = report.coxeter_order if cap is None else cap
    gens, data = _generator_data(sub)
    identity = _identity_state(n)
    words: dict = {identity: ()}
    frontier = [identity]
    last = identity
    while frontier:
        next_frontier = []
        for state in frontier:
            for s_index in range(n):
                new = _apply_gen(state, n, s_index, data[s_index])
                if new not in words:
                    if len(words) >= limit:
                        raise ValueError("BFS exceeded the expected group order")
                    words[new] = words[state] + (gens[s_index],)
                    next_frontier.append(new)
                    last = new
        frontier = next_frontier
    # the final layer of a finite Coxeter group is the single longest element
    return words[last]


def longest_element_is_central(d: CoxeterDiagram,
                               names: Iterable[str] | None = None) -> bool:
    """Whether the longest element is central in the (finite) Coxeter group."""
    subset = subset_of(d, names) if names is not None else tuple(sorted(d.generators))
    sub = induced(d, subset)
    n = sub.rank
    if n <= 1:
        return True
    if n == 2:
        s, t = sorted(sub.generators)
        m = sub.label(s, t)
        if m == INF:
            raise ValueError("not spherical")
        return m % 2 == 0
    word = longest_element_word(d, subset)
    gens, data = _generator_data(sub)
    idx = {g: i for i, g in enumerate(gens)}
    w0 = _identity_state(n)
    for letter in word:
        w0 = _apply_gen(w0, n, idx[letter], data[idx[letter]])
    for i in range(n):
        # compare w0 * s with s * w0
        right = _apply_gen(w0, n, i, data[i])
        gen_state = _apply_gen(_identity_state(n), n, i, data[i])
        left = gen_state
        for letter in word:
            left = _apply_gen(left, n, idx[letter], data[idx[letter]])
        if left != right:
            return False
    return True


# ---------------------------------------------------------------------------
# floating-point cross-check
# ---------------------------------------------------------------------------

def gram_matrix(d: CoxeterDiagram, names: Iterable[str] | None = None):
    """The cosine matrix (-cos(pi/m_st), diagonal 1) as a numpy array."""
    import numpy as np

    subset = subset_of(d, names) if names is not None else tuple(sorted(d.generators))
    n = len(subset)
    g = np.eye(n)
    for i, s in enumerate(subset):
        for j, t in enumerate(subset):
            if i < j:
                m = d.label(s, t)
                val = -1.0 if m == INF else -math.cos(math.pi / m)
                g[i, j] = g[j, i] = val
    return g


def gram_positive_definite(d: CoxeterDiagram, names: Iterable[str] | None = None,
                           tol: float = 1e-9) -> bool:
    """Float positive-definiteness of the cosine form (cross-check only).

    Finite Coxeter groups are exactly those with positive definite cosine
    form; this check is used where the exact oracle lacks matrices.
    """
    import numpy as np

    g = gram_matrix(d, names)
    if g.shape[0] == 0:
        return True
    return bool(np.linalg.eigvalsh(g).min() > tol)


# ---------------------------------------------------------------------------
# subset enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CdReport:
    """Largest spherical subset size and all subsets realizing it."""

    value: int
    witnesses: tuple[tuple[str, ...], ...]


def spherical_subsets(d: CoxeterDiagram) -> tuple[tuple[str, ...], ...]:
    """All spherical subsets, in graded lexicographic order.

    Supersets are only explored once all their maximal proper subsets are
    known spherical (subdiagrams of finite-type diagrams are finite type),
    which prunes the enumeration hereditarily.
    """
    names = sorted(d.generators)
    out: list[tuple[str, ...]] = [()]
    layer: set[tuple[str, ...]] = {()}
    for _ in range(len(names)):
        candidates: set[tuple[str, ...]] = set()
        for sub in layer:
            present = set(sub)
            for g in names:
                if g in present:
                    continue
                cand = tuple(sorted(sub + (g,)))
                if cand in candidates:
                    continue
                if all(cand[:i] + cand[i + 1:] in layer for i in range(len(cand))):
                    candidates.add(cand)
        layer = {c for c in sorted(candidates) if is_spherical(d, c).spherical}
        if not layer:
            break
        out.extend(sorted(layer))
    return tuple(out)


def max_spherical(d: CoxeterDiagram) -> CdReport:
    """The spherical dimension of a diagram with its witnesses.

    Equals the cohomological dimension of the Artin group under the
    K(pi,1) property; 0 for the empty diagram.
    """
    subs = spherical_subsets(d)
    value = max(len(s) for s in subs)
    witnesses = tuple(s for s in subs if len(s) == value)
    return CdReport(value, witnesses)


def irreducible_spherical_subsets(d: CoxeterDiagram) -> tuple[tuple[str, ...], ...]:
    """Nonempty spherical subsets with connected induced diagram."""
    out = []
    for sub in spherical_subsets(d):
        if sub and len(components(induced(d, sub))) == 1:
            out.append(sub)
    return tuple(out)


@dataclass(frozen=True)
class FactorSplit:
    """Connected components split by the spherical verdict."""

    spherical: tuple[tuple[str, ...], ...]
    infinite: tuple[tuple[str, ...], ...]


def spherical_factors(d: CoxeterDiagram) -> FactorSplit:
    """Partition the connected components into spherical and infinite type."""
    sph, inf_type = [], []
    for comp in components(d):
        if is_spherical(d, comp).spherical:
            sph.append(comp)
        else:
            inf_type.append(comp)
    return FactorSplit(tuple(sph), tuple(inf_type))


def families_with_label_at_least(threshold: int, max_rank: int = 8,
                                 max_dihedral: int = 30) -> list[FamilyTag]:
    """Scan the family table for diagrams carrying a label >= threshold.

    Used to re-verify that dihedral groups are the only finite-type
    diagrams containing a label 7.
    """
    hits = []
    for tag in all_family_tags(max_rank, max_dihedral):
        if any(m >= threshold for m in tag.edge_labels()):
            hits.append(tag)
    return hits
