"""Labeled Coxeter diagrams and their combinatorics.

A diagram is a finite set of named generators together with a symmetric
label m(s, t) in {2, 3, 4, ...} or infinity for every unordered pair of
distinct generators.  The underlying graph has an edge between s and t
exactly when m(s, t) > 2; connected components, induced subdiagrams and
the small-type / free-of-infinity predicates are all read off that data.

Values are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union


class DiagramError(ValueError):
    """Raised for malformed diagram files or invalid diagram data."""


class Infinity:
    """The infinite label.  A single shared instance ``INF`` is exported.

    Compares strictly greater than every integer, equal only to other
    ``Infinity`` instances, and serializes as ``"inf"``.
    """

    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinity)

    def __ne__(self, other: object) -> bool:
        return not isinstance(other, Infinity)

    def __hash__(self) -> int:
        return hash("Infinity")

    def __gt__(self, other: object) -> bool:
        if isinstance(other, Infinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if isinstance(other, (Infinity, int)):
            return True
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (Infinity, int)):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        return isinstance(other, Infinity)

    def __reduce__(self):
        return (_get_inf, ())


def _get_inf() -> "Infinity":
    return INF


INF = Infinity()

Label = Union[int, Infinity]


def _check_label(m: object) -> Label:
    if isinstance(m, Infinity):
        return INF
    if isinstance(m, bool) or not isinstance(m, int):
        raise DiagramError(f"label must be an integer >= 2 or inf, got {m!r}")
    if m < 2:
        raise DiagramError(f"label below 2: {m}")
    return m


def pair_key(s: str, t: str) -> tuple[str, str]:
    return (s, t) if s < t else (t, s)


class CoxeterDiagram:
    """An immutable labeled Coxeter diagram.

    ``generators`` keeps the declaration order; all set-valued outputs of
    the query functions below are sorted by generator name so results do
    not depend on that order.
    """

    __slots__ = ("_generators", "_genset", "_labels", "_hash")

    def __init__(self, generators: Iterable[str],
                 labels: Mapping[tuple[str, str], Label] | None = None):
        gens = tuple(generators)
        seen = set()
        for g in gens:
            if not isinstance(g, str) or not g:
                raise DiagramError(f"generator names must be nonempty strings, got {g!r}")
            if g in seen:
                raise DiagramError(f"duplicate generator: {g}")
            seen.add(g)
        self._generators = gens
        self._genset = frozenset(gens)
        table: dict[tuple[str, str], Label] = {}
        if labels:
            for (s, t), m in labels.items():
                if s not in self._genset or t not in self._genset:
                    raise DiagramError(f"label for unknown generator pair ({s}, {t})")
                if s == t:
                    raise DiagramError(f"self label on generator {s}")
                m = _check_label(m)
                key = pair_key(s, t)
                if key in table and table[key] != m:
                    raise DiagramError(f"conflicting labels for pair {key}")
                if m != 2:
                    table[key] = m
        self._labels = table
        self._hash = hash((gens, tuple(sorted(table.items()))))

    @property
    def generators(self) -> tuple[str, ...]:
        return self._generators

    @property
    def rank(self) -> int:
        return len(self._generators)

    def label(self, s: str, t: str) -> Label:
        """The label m(s, t) of an unordered pair of distinct generators."""
        if s not in self._genset or t not in self._genset:
            raise DiagramError(f"unknown generator in pair ({s}, {t})")
        if s == t:
            raise DiagramError(f"no label for a generator with itself: {s}")
        return self._labels.get(pair_key(s, t), 2)

    def pairs(self) -> Iterable[tuple[str, str]]:
        """All unordered pairs of distinct generators, sorted."""
        names = sorted(self._generators)
        for i, s in enumerate(names):
            for t in names[i + 1:]:
                yield (s, t)

    def edges(self) -> tuple[tuple[str, str], ...]:
        """Pairs with label > 2, i.e. the edges of the diagram graph."""
        return tuple(sorted(self._labels))

    def neighbors(self, s: str) -> tuple[str, ...]:
        if s not in self._genset:
            raise DiagramError(f"unknown generator: {s}")
        out = [t for t in self._generators if t != s and self.label(s, t) != 2]
        return tuple(sorted(out))

    def __contains__(self, name: str) -> bool:
        return name in self._genset

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoxeterDiagram):
            return NotImplemented
        return (self._generators == other._generators
                and self._labels == other._labels)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(f"{s}-{t}:{m}" for (s, t), m in sorted(self._labels.items()))
        return f"CoxeterDiagram({' '.join(self._generators)}; {edges})"


def subset_of(d: CoxeterDiagram, names: Iterable[str]) -> tuple[str, ...]:
    """Canonical (sorted, duplicate-free) form of a subset of generators."""
    out = sorted(set(names))
    for g in out:
        if g not in d:
            raise DiagramError(f"unknown generator: {g}")
    return tuple(out)


def parse_diagram(text: str) -> CoxeterDiagram:
    """Parse a diagram file.

    Format: a line ``generators: n1 n2 ...``, an optional line
    ``default: 2|inf`` for the label of unlisted pairs, then lines
    ``n_i n_j m`` with m a decimal integer >= 2 or ``inf``.  ``#`` starts
    a comment, blank lines are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise DiagramError("missing generators line")
    head = lines[0].split()
    if head[0] != "generators:":
        raise DiagramError(f"first line must start with 'generators:', got {lines[0]!r}")
    gens = head[1:]
    if not gens:
        raise DiagramError("empty generators line")

    body = lines[1:]
    default: Label = 2
    if body and body[0].split()[0] == "default:":
        parts = body[0].split()
        if len(parts) != 2 or parts[1] not in ("2", "inf"):
            raise DiagramError(f"default line must be 'default: 2' or 'default: inf', got {body[0]!r}")
        default = INF if parts[1] == "inf" else 2
        body = body[1:]

    labels: dict[tuple[str, str], Label] = {}
    listed: set[tuple[str, str]] = set()
    genset = set(gens)
    if len(genset) != len(gens):
        dup = next(g for g in gens if gens.count(g) > 1)
        raise DiagramError(f"duplicate generator: {dup}")
    for line in body:
        parts = line.split()
        if len(parts) != 3:
            raise DiagramError(f"malformed label line: {line!r}")
        s, t, mtxt = parts
        if s not in genset:
            raise DiagramError(f"unknown generator in label line: {s}")
        if t not in genset:
            raise DiagramError(f"unknown generator in label line: {t}")
        if s == t:
            raise DiagramError(f"self label on generator {s}")
        if mtxt == "inf":
            m: Label = INF
        else:
            try:
                m = int(mtxt)
            except ValueError:
                raise DiagramError(f"malformed label: {mtxt!r}") from None
            if m < 2:
                raise DiagramError(f"label below 2: {m}")
        key = pair_key(s, t)
        if key in listed:
            raise DiagramError(f"conflicting duplicate label lines for pair {key}")
        listed.add(key)
        labels[key] = m

    if default != 2:
        names = sorted(gens)
        for i, s in enumerate(names):
            for t in names[i + 1:]:
                if (s, t) not in listed:
                    labels[(s, t)] = default
    return CoxeterDiagram(gens, labels)


def serialize_diagram(d: CoxeterDiagram) -> str:
    """Canonical file form: generator line plus one line per label != 2."""
    out = ["generators: " + " ".join(d.generators)]
    for (s, t), m in sorted(d._labels.items()):
        out.append(f"{s} {t} {'inf' if m == INF else m}")
    return "\n".join(out) + "\n"


def induced(d: CoxeterDiagram, names: Iterable[str]) -> CoxeterDiagram:
    """The subdiagram spanned by a subset of generators.

    Generator order is inherited from the ambient diagram.
    """
    keep = set(subset_of(d, names))
    gens = tuple(g for g in d.generators if g in keep)
    labels = {(s, t): m for (s, t), m in d._labels.items()
              if s in keep and t in keep}
    return CoxeterDiagram(gens, labels)


def components(d: CoxeterDiagram) -> tuple[tuple[str, ...], ...]:
    """Connected components of the diagram graph (edges are labels > 2).

    Each component is sorted; components are ordered by least member.
    """
    remaining = set(d.generators)
    comps = []
    for start in sorted(d.generators):
        if start not in remaining:
            continue
        comp = {start}
        stack = [start]
        remaining.discard(start)
        while stack:
            g = stack.pop()
            for h in d.neighbors(g):
                if h in remaining:
                    remaining.discard(h)
                    comp.add(h)
                    stack.append(h)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def is_connected(d: CoxeterDiagram) -> bool:
    return len(components(d)) <= 1


def is_small_type(d: CoxeterDiagram) -> bool:
    """True when every label lies in {2, 3}."""
    return all(m == 3 for m in d._labels.values())


def is_free_of_infinity(d: CoxeterDiagram) -> bool:
    """True when no label is infinite."""
    return all(m != INF for m in d._labels.values())


def disjoint_union(d1: CoxeterDiagram, d2: CoxeterDiagram) -> CoxeterDiagram:
    """Disjoint union; generator names must not collide."""
    clash = set(d1.generators) & set(d2.generators)
    if clash:
        raise DiagramError(f"generator names collide in union: {sorted(clash)}")
    labels: dict[tuple[str, str], Label] = {}
    labels.update(d1._labels)
    labels.update(d2._labels)
    return CoxeterDiagram(d1.generators + d2.generators, labels)


def relabel(d: CoxeterDiagram, changes: Mapping[tuple[str, str], Label]) -> CoxeterDiagram:
    """A copy of ``d`` with the labels of the given pairs replaced."""
    labels = dict(d._labels)
    for (s, t), m in changes.items():
        if s not in d or t not in d or s == t:
            raise DiagramError(f"bad pair in relabel: ({s}, {t})")
        key = pair_key(s, t)
        m = _check_label(m)
        if m == 2:
            labels.pop(key, None)
        else:
            labels[key] = m
    return CoxeterDiagram(d.generators, labels)
