"""Simple undirected graphs: representation, named families, graph6 codec, sources.

Vertices are dense integers 0..n-1. Graphs are immutable after construction;
every module reads adjacency through the same accessors (``Graph.edges`` for
edge iteration, ``Graph.neighbors`` for per-vertex sorted neighbor lists).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph construction or vertex out of range."""


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the byte offset of the problem."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1 with a sorted edge tuple."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphError(f"edge ({u},{v}) out of range for n={self.n}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u},{v})")
            seen.add((u, v))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a Graph, normalizing edge endpoint order and sorting the edge list."""
    norm = {(min(u, v), max(u, v)) for u, v in edges}
    return Graph(n, tuple(sorted(norm)))


# ---------------------------------------------------------------------------
# graph6 codec (short form, n <= 62)

_G6_MIN, _G6_MAX = 63, 126


def parse_graph6(text: str) -> Graph:
    """Decode a one-line graph6 string (header-free short form)."""
    text = text.strip()
    if not text:
        raise Graph6Error("empty graph6 string", 0)
    data = text.encode("ascii", errors="replace")
    for i, b in enumerate(data):
        if not (_G6_MIN <= b <= _G6_MAX):
            raise Graph6Error(f"character {chr(b)!r} outside graph6 range 63..126", i)
    if data[0] == 126:
        raise Graph6Error("extended-length graph6 forms are not supported", 0)
    n = data[0] - 63
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - 1 != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, got {len(data) - 1}", 0
        )
    bits = []
    for i, b in enumerate(data[1:]):
        val = b - 63
        for shift in range(5, -1, -1):
            bits.append((val >> shift) & 1)
    for j in range(nbits, len(bits)):
        if bits[j]:
            raise Graph6Error("nonzero padding bits", 1 + j // 6)
    edges = []
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if bits[idx]:
                edges.append((u, v))
            idx += 1
    return graph_from_edges(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode a graph in canonical graph6 short form (requires n <= 62)."""
    if g.n > 62:
        raise GraphError(f"graph6 short form supports n <= 62, got n={g.n}")
    bits = []
    es = g.edge_set
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if (u, v) in es else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


# ---------------------------------------------------------------------------
# Structural helpers

def components_info(g: Graph) -> tuple[list[frozenset[int]], int]:
    """Connected components as vertex sets, plus the size of the largest one."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    n_prime = max((len(c) for c in comps), default=0)
    return comps, n_prime


def induced_subgraph(g: Graph, u: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``u``, relabeled to 0..|u|-1.

    Returns the subgraph and the relabeling map (new index -> old vertex).
    """
    verts = sorted(set(u))
    for v in verts:
        if not (0 <= v < g.n):
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(verts)}
    edges = [
        (pos[a], pos[b]) for a, b in g.edges if a in pos and b in pos
    ]
    return graph_from_edges(len(verts), edges), verts


def edge_subgraph(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    """Spanning subgraph of g with only the given edges (vertex set unchanged)."""
    es = set()
    for u, v in edges:
        if u > v:
            u, v = v, u
        if (u, v) not in g.edge_set:
            raise GraphError(f"({u},{v}) is not an edge of the graph")
        es.add((u, v))
    return Graph(g.n, tuple(sorted(es)))


def remove_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph with the given edges deleted; vertices stay in place."""
    drop = {(min(u, v), max(u, v)) for u, v in edges}
    return Graph(g.n, tuple(e for e in g.edges if e not in drop))


def conjugate_degrees(g: Graph) -> list[int]:
    """Conjugate degree sequence: entry i-1 counts vertices of degree >= i."""
    degs = g.degrees()
    return [sum(1 for d in degs if d >= i) for i in range(1, g.n + 1)]


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union by explicit vertex-offset composition."""
    n = 0
    edges: list[tuple[int, int]] = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return graph_from_edges(n, edges)


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    """A 2-coloring (sides as sorted lists), or None if not bipartite."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return None
    a = [v for v in range(g.n) if color[v] == 0]
    b = [v for v in range(g.n) if color[v] == 1]
    return a, b


def non_isolated_count(g: Graph) -> int:
    return sum(1 for v in range(g.n) if g.degree(v) > 0)


def is_forest(g: Graph) -> bool:
    comps, _ = components_info(g)
    return g.m == g.n - len(comps)


# ---------------------------------------------------------------------------
# Named families

@dataclass(frozen=True)
class FamilyId:
    tag: str
    args: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.tag}:{','.join(map(str, self.args))}"


_FAMILY_ARITY = {
    "complete": 1,
    "star": 1,
    "path": 1,
    "cycle": 1,
    "complete-bipartite": 2,
    "split-s": 2,
    "empty": 1,
}

_FAMILY_ALIASES = {"kbip": "complete-bipartite", "split": "split-s"}


def parse_family(text: str) -> FamilyId:
    """Parse a family descriptor like ``star:6`` or ``complete-bipartite:3,5``."""
    if ":" not in text:
        raise GraphError(f"bad family descriptor {text!r}; expected NAME:ARGS")
    name, argtext = text.split(":", 1)
    name = _FAMILY_ALIASES.get(name.lower(), name.lower())
    if name not in _FAMILY_ARITY:
        raise GraphError(f"unknown family {name!r}")
    try:
        args = tuple(int(a) for a in argtext.split(","))
    except ValueError:
        raise GraphError(f"non-integer family arguments in {text!r}") from None
    if len(args) != _FAMILY_ARITY[name]:
        raise GraphError(
            f"family {name!r} expects {_FAMILY_ARITY[name]} arguments, got {len(args)}"
        )
    return FamilyId(name, args)


def make_family(fam: FamilyId | str) -> Graph:
    """Construct a named family graph with its canonical vertex labeling."""
    if isinstance(fam, str):
        fam = parse_family(fam)
    tag, args = fam.tag, fam.args
    if tag == "complete":
        (n,) = args
        _check_positive(n)
        return graph_from_edges(n, combinations(range(n), 2))
    if tag == "star":
        (n,) = args
        _check_positive(n)
        return graph_from_edges(n, ((0, v) for v in range(1, n)))
    if tag == "path":
        (n,) = args
        _check_positive(n)
        return graph_from_edges(n, ((v, v + 1) for v in range(n - 1)))
    if tag == "cycle":
        (n,) = args
        if n < 3:
            raise GraphError(f"cycle needs n >= 3, got {n}")
        return graph_from_edges(n, [(v, (v + 1) % n) for v in range(n)])
    if tag == "complete-bipartite":
        a, b = args
        _check_positive(a)
        _check_positive(b)
        return graph_from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))
    if tag == "split-s":
        n, r = args
        _check_positive(n)
        if not 1 <= r <= n:
            raise GraphError(f"split-S requires 1 <= r <= n, got r={r}, n={n}")
        # vertices 1..n shifted to 0-based: edges {i,j} with i <= r, i < j <= n
        return graph_from_edges(
            n, ((i, j) for i in range(r) for j in range(i + 1, n))
        )
    if tag == "empty":
        (n,) = args
        _check_positive(n)
        return Graph(n, ())
    raise GraphError(f"unknown family tag {tag!r}")


def _check_positive(n: int):
    if n < 1:
        raise GraphError(f"family parameter must be >= 1, got {n}")


# ---------------------------------------------------------------------------
# Graph sources

ALL_LABELED_CAP = 7

_PAIRS_CACHE: dict[int, list[tuple[int, int]]] = {}


def _pairs(n: int) -> list[tuple[int, int]]:
    if n not in _PAIRS_CACHE:
        _PAIRS_CACHE[n] = list(combinations(range(n), 2))
    return _PAIRS_CACHE[n]


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^C(n,2) labeled graphs on n vertices, in edge-mask order (n <= 7)."""
    if n > ALL_LABELED_CAP:
        raise GraphError(
            f"all-labeled enumeration capped at n={ALL_LABELED_CAP}; "
            "use a graph6 file for larger exhaustive runs"
        )
    pairs = _pairs(n)
    for mask in range(1 << len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if mask >> i & 1)
        yield Graph(n, edges)


def gnp_graphs(n: int, p: float, count: int, seed: int) -> Iterator[Graph]:
    """Reproducible G(n,p) samples from a seeded generator."""
    if not 0 <= p <= 1:
        raise GraphError(f"p must be in [0,1], got {p}")
    rng = random.Random(seed)
    pairs = _pairs(n)
    for _ in range(count):
        edges = tuple(e for e in pairs if rng.random() < p)
        yield Graph(n, edges)


def read_graph6_file(path: str, strict: bool = True) -> Iterator[Graph]:
    """Graphs from a file with one graph6 string per line.

    Malformed lines raise (strict) or are reported to stderr and skipped.
    """
    import sys

    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                yield parse_graph6(line)
            except Graph6Error as exc:
                if strict:
                    raise Graph6Error(f"{path}:{lineno}: {exc}", exc.offset) from exc
                print(f"error: {path}:{lineno}: {exc}", file=sys.stderr)


def parse_edge_list(text: str) -> Graph:
    """Edge-list text format: first line ``n m``, then m lines ``u v`` (0-based)."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"bad header line {lines[0]!r}; expected 'n m'")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphError(f"header declares {m} edges but found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return graph_from_edges(n, edges)


@dataclass(frozen=True)
class GraphSource:
    """A deterministic stream of graphs for scans.

    kinds: ``all-labeled`` (args: n), ``graph6-file`` (path), ``gnp``
    (n, p, count, seed), ``single`` (one Graph).
    """

    kind: str
    n: int = 0
    p: float = 0.0
    count: int = 0
    seed: int = 0
    path: str = ""
    graph: Graph | None = None

    def describe(self) -> str:
        if self.kind == "all-labeled":
            return f"all-labeled:{self.n}"
        if self.kind == "graph6-file":
            return f"graph6-file:{self.path}"
        if self.kind == "gnp":
            return f"gnp:n={self.n},p={self.p},count={self.count},seed={self.seed}"
        if self.kind == "single":
            assert self.graph is not None
            return f"single:{encode_graph6(self.graph)}"
        raise GraphError(f"unknown source kind {self.kind!r}")


def graph_stream(src: GraphSource, strict: bool = True) -> Iterator[Graph]:
    """Deterministic iterator of graphs for the given source."""
    if src.kind == "all-labeled":
        return all_labeled_graphs(src.n)
    if src.kind == "graph6-file":
        return read_graph6_file(src.path, strict=strict)
    if src.kind == "gnp":
        return gnp_graphs(src.n, src.p, src.count, src.seed)
    if src.kind == "single":
        if src.graph is None:
            raise GraphError("single source without a graph")
        return iter([src.graph])
    raise GraphError(f"unknown source kind {src.kind!r}")
