"""Finite simple graphs and the exact combinatorics used everywhere else.

Contains the SimpleGraph value type, subgraph containment (non-induced
throughout), exact chromatic number, clique/independent-set partitions,
a homegrown canonical form with automorphism counting, and graph6 I/O.

All exact searches carry explicit vertex budgets and raise BudgetError
beyond them rather than approximating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from .errors import BudgetError, ValidationError

CHROMATIC_BUDGET = 16
CRS_BUDGET = 14
CANONICAL_BUDGET = 12


# ---------------------------------------------------------------------------
# SimpleGraph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices 0..n-1.

    Edges are stored as a frozenset of pairs (i, j) with i < j; no loops,
    no multi-edges.
    """

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("vertex count must be nonnegative")
        for e in self.edges:
            if not (isinstance(e, tuple) and len(e) == 2):
                raise ValidationError(f"edge {e!r} is not a pair")
            i, j = e
            if i == j:
                raise ValidationError(f"loop at vertex {i}")
            if not (0 <= i < j < self.n):
                raise ValidationError(f"edge {e!r} out of range for n={self.n}")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple]) -> "SimpleGraph":
        normalized = frozenset((min(i, j), max(i, j)) for i, j in edges)
        return SimpleGraph(n, normalized)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def adjacency_masks(self) -> list:
        """Per-vertex neighbor bitmasks; the workhorse of every search here."""
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    def degrees(self) -> list:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def relabeled(self, perm: list) -> "SimpleGraph":
        """Apply vertex relabeling v -> perm[v]."""
        return SimpleGraph.from_edges(
            self.n, ((perm[i], perm[j]) for i, j in self.edges)
        )

    # -- named constructors used throughout tests and demos --

    @staticmethod
    def empty(n: int) -> "SimpleGraph":
        return SimpleGraph(n, frozenset())

    @staticmethod
    def complete(n: int) -> "SimpleGraph":
        return SimpleGraph.from_edges(n, combinations(range(n), 2))

    @staticmethod
    def cycle(n: int) -> "SimpleGraph":
        if n < 3:
            raise ValidationError("cycle needs at least 3 vertices")
        return SimpleGraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @staticmethod
    def path(n: int) -> "SimpleGraph":
        return SimpleGraph.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @staticmethod
    def complete_bipartite(a: int, b: int) -> "SimpleGraph":
        return SimpleGraph.from_edges(
            a + b, ((i, a + j) for i in range(a) for j in range(b))
        )

    @staticmethod
    def petersen() -> "SimpleGraph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return SimpleGraph.from_edges(10, outer + spokes + inner)


def all_pairs(n: int) -> list:
    """Vertex pairs (i, j), i < j, in lexicographic order.

    This order is the canonical pair order shared by the samplers and the
    census code; edge/bit indexing must agree across modules.
    """
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def graph_from_mask(n: int, mask: int, pairs: list) -> SimpleGraph:
    edges = [pairs[b] for b in range(len(pairs)) if mask >> b & 1]
    return SimpleGraph.from_edges(n, edges)


def mask_from_graph(G: SimpleGraph, pairs: list) -> int:
    index = {p: b for b, p in enumerate(pairs)}
    mask = 0
    for e in G.edges:
        mask |= 1 << index[e]
    return mask


# ---------------------------------------------------------------------------
# Subgraph containment (non-induced)
# ---------------------------------------------------------------------------

def contains_subgraph(G: SimpleGraph, F: SimpleGraph) -> bool:
    """True iff some subgraph of G (not necessarily induced) is isomorphic to F.

    Backtracking injective homomorphism search: F-edges must map onto
    G-edges, F-non-edges are unconstrained.  F-vertices are matched in a
    connectivity-first, high-degree-first order; candidates are pruned by
    degree and by adjacency to already-placed vertices.
    """
    if F.n > G.n:
        return False
    if F.n == 0:
        return True

    deg_f = F.degrees()
    deg_g = G.degrees()
    # sorted-degree domination: the k-th largest F-degree cannot exceed
    # the k-th largest G-degree under any embedding
    for df, dg in zip(sorted(deg_f, reverse=True), sorted(deg_g, reverse=True)):
        if df > dg:
            return False

    adj_f = F.adjacency_masks()
    adj_g = G.adjacency_masks()

    order = _matching_order(F.n, adj_f, deg_f)
    placed_neighbors = []  # for order[k]: earlier positions adjacent in F
    pos_of = {v: k for k, v in enumerate(order)}
    for k, v in enumerate(order):
        placed_neighbors.append(
            [pos_of[u] for u in range(F.n) if adj_f[v] >> u & 1 and pos_of[u] < k]
        )

    images = [0] * F.n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == F.n:
            return True
        v = order[k]
        need = deg_f[v]
        required = 0
        for p in placed_neighbors[k]:
            required |= 1 << images[p]
        for t in range(G.n):
            if used >> t & 1 or deg_g[t] < need:
                continue
            if required & ~adj_g[t]:
                continue
            images[k] = t
            used |= 1 << t
            if extend(k + 1):
                return True
            used &= ~(1 << t)
        return False

    return extend(0)


def _matching_order(n: int, adj: list, deg: list) -> list:
    order = []
    chosen = 0
    for _ in range(n):
        best, best_key = -1, None
        for v in range(n):
            if chosen >> v & 1:
                continue
            anchored = bin(adj[v] & chosen).count("1")
            key = (anchored, deg[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        chosen |= 1 << best
    return order


# ---------------------------------------------------------------------------
# Forbidden families
# ---------------------------------------------------------------------------

class ForbiddenFamily:
    """Finite list of forbidden subgraphs, deduplicated up to isomorphism.

    An empty family forbids nothing: every graph is family-free and the
    coloring number is infinite.
    """

    def __init__(self, members: Iterable[SimpleGraph] = ()):
        unique = []
        seen = set()
        for F in members:
            key = canonical_key(F)
            if key not in seen:
                seen.add(key)
                unique.append(F)
        self.members = tuple(unique)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self) -> str:
        return f"ForbiddenFamily({list(self.members)!r})"

    def key(self) -> tuple:
        return tuple(sorted((F.n, canonical_key(F)) for F in self.members))


def is_family_free(G: SimpleGraph, fam: ForbiddenFamily) -> bool:
    return all(not contains_subgraph(G, F) for F in fam)


def coloring_number(fam: ForbiddenFamily):
    """Minimum chromatic number over the family; math.inf for the empty one."""
    if len(fam) == 0:
        return math.inf
    return min(chromatic_number(F) for F in fam)


# ---------------------------------------------------------------------------
# Exact chromatic number
# ---------------------------------------------------------------------------

def chromatic_number(G: SimpleGraph) -> int:
    """Exact chromatic number; branch and bound, n <= 16."""
    if G.n > CHROMATIC_BUDGET:
        raise BudgetError(f"chromatic_number limited to n <= {CHROMATIC_BUDGET}")
    if G.n == 0:
        return 0
    if not G.edges:
        return 1

    adj = G.adjacency_masks()
    deg = G.degrees()
    clique = _greedy_clique(G.n, adj, deg)
    lower = len(clique)
    upper, _ = _dsatur(G.n, adj, deg)
    if lower == upper:
        return lower

    # clique vertices first: the used+1 color rule then forces them onto
    # distinct colors, which breaks color-permutation symmetry for free
    rest = sorted((v for v in range(G.n) if v not in clique),
                  key=lambda v: -deg[v])
    order = list(clique) + rest

    for k in range(lower, upper):
        if _colorable(G.n, adj, order, k):
            return k
    return upper


def _greedy_clique(n: int, adj: list, deg: list) -> list:
    best = []
    for start in sorted(range(n), key=lambda v: -deg[v])[:4]:
        clique = [start]
        common = adj[start]
        while common:
            v = max((u for u in range(n) if common >> u & 1),
                    key=lambda u: bin(common & adj[u]).count("1"))
            clique.append(v)
            common &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _dsatur(n: int, adj: list, deg: list):
    colors = [-1] * n
    neighbor_colors = [0] * n
    for _ in range(n):
        v = max((u for u in range(n) if colors[u] == -1),
                key=lambda u: (bin(neighbor_colors[u]).count("1"), deg[u]))
        c = 0
        while neighbor_colors[v] >> c & 1:
            c += 1
        colors[v] = c
        for u in range(n):
            if adj[v] >> u & 1:
                neighbor_colors[u] |= 1 << c
    return max(colors) + 1, colors


def _colorable(n: int, adj: list, order: list, k: int) -> bool:
    colors = [-1] * n

    def rec(idx: int, used: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        banned = 0
        for u in range(n):
            if adj[v] >> u & 1 and colors[u] >= 0:
                banned |= 1 << colors[u]
        for c in range(min(used + 1, k)):
            if banned >> c & 1:
                continue
            colors[v] = c
            if rec(idx + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return rec(0, 0)


# ---------------------------------------------------------------------------
# Partitions into cliques and independent sets
# ---------------------------------------------------------------------------

class PartKind(Enum):
    CLIQUE = "clique"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class CrsWitness:
    """Partition witness: vertex -> (part index, part kind)."""

    assignment: dict

    def verify(self, G: SimpleGraph, r: int, s: int) -> bool:
        if set(self.assignment) != set(range(G.n)):
            return False
        parts = {}
        for v, (idx, kind) in self.assignment.items():
            if not 0 <= idx < r:
                return False
            expected = PartKind.CLIQUE if idx < s else PartKind.INDEPENDENT
            if kind is not expected:
                return False
            parts.setdefault(idx, []).append(v)
        for idx, vs in parts.items():
            kind = PartKind.CLIQUE if idx < s else PartKind.INDEPENDENT
            for a, b in combinations(vs, 2):
                if kind is PartKind.CLIQUE and not G.has_edge(a, b):
                    return False
                if kind is PartKind.INDEPENDENT and G.has_edge(a, b):
                    return False
        return True


def crs_member(G: SimpleGraph, r: int, s: int) -> Optional[CrsWitness]:
    """Witness that G splits into s cliques and r-s independent sets, or None.

    Parts may be empty.  Backtracking over vertex assignments; empty parts
    of the same kind are interchangeable, so only the first empty part of
    each kind is ever tried.  n <= 14.
    """
    if r < 1:
        raise ValidationError("r must be a positive integer")
    if not 0 <= s <= r:
        raise ValidationError("s must satisfy 0 <= s <= r")
    if G.n > CRS_BUDGET:
        raise BudgetError(f"crs_member limited to n <= {CRS_BUDGET}")

    adj = G.adjacency_masks()
    deg = G.degrees()
    order = sorted(range(G.n), key=lambda v: -deg[v])
    part_masks = [0] * r
    assignment = {}

    def rec(idx: int) -> bool:
        if idx == G.n:
            return True
        v = order[idx]
        tried_empty_clique = False
        tried_empty_independent = False
        for p in range(r):
            kind = PartKind.CLIQUE if p < s else PartKind.INDEPENDENT
            if part_masks[p] == 0:
                if kind is PartKind.CLIQUE:
                    if tried_empty_clique:
                        continue
                    tried_empty_clique = True
                else:
                    if tried_empty_independent:
                        continue
                    tried_empty_independent = True
            if kind is PartKind.CLIQUE:
                if part_masks[p] & ~adj[v]:
                    continue
            else:
                if part_masks[p] & adj[v]:
                    continue
            part_masks[p] |= 1 << v
            assignment[v] = (p, kind)
            if rec(idx + 1):
                return True
            part_masks[p] &= ~(1 << v)
            del assignment[v]
        return False

    if rec(0):
        return CrsWitness(dict(assignment))
    return None


# ---------------------------------------------------------------------------
# Canonical form and automorphisms
# ---------------------------------------------------------------------------

def canonical_form(G: SimpleGraph):
    """Canonical edge list plus |Aut(G)|; invariant under relabeling, n <= 12.

    The canonical labeling minimizes the adjacency bit string read off
    level by level (each new vertex contributes its adjacency bits to the
    already-ordered prefix).  Vertices whose swap is an automorphism
    ("twins") are collapsed at every branch point, which keeps highly
    symmetric graphs cheap.
    """
    return canonical_key(G), automorphism_count(G)


@lru_cache(maxsize=65536)
def canonical_key(G: SimpleGraph) -> tuple:
    if G.n > CANONICAL_BUDGET:
        raise BudgetError(f"canonical_form limited to n <= {CANONICAL_BUDGET}")
    n = G.n
    if n == 0:
        return ()
    adj = G.adjacency_masks()

    # twin[u][v]: exchanging u and v is an automorphism
    twin = [[False] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            strip = ~((1 << u) | (1 << v))
            if adj[u] & strip == adj[v] & strip:
                twin[u][v] = twin[v][u] = True

    best = None
    cur = [0] * n  # cur[t] = adjacency bits of vertex at position t to prefix
    order = [0] * n
    used = 0

    def level_code(v: int, t: int) -> int:
        code = 0
        for p in range(t):
            code = (code << 1) | (adj[v] >> order[p] & 1)
        return code

    def rec(t: int, free: bool) -> bool:
        # entry invariant: free means cur[:t] undercuts best (or best unset);
        # otherwise cur[:t] == best[:t].  Returns True iff best was replaced.
        nonlocal best, used
        if t == n:
            if free:
                best = list(cur)
                return True
            return False
        candidates = sorted(
            (level_code(v, t), v) for v in range(n) if not used >> v & 1
        )
        tried = []
        updated = False
        for code, v in candidates:
            if any(twin[v][u] for u in tried):
                continue
            tried.append(v)
            if not free:
                if code > best[t]:
                    break  # sorted candidates: the rest are worse too
                child_free = code < best[t]
            else:
                child_free = True
            cur[t] = code
            order[t] = v
            used |= 1 << v
            if rec(t + 1, child_free):
                # the new best shares our prefix, so this node is tight now
                updated = True
                free = False
            used &= ~(1 << v)
        return updated

    rec(0, True)

    edges = []
    for t in range(1, n):
        code = best[t]
        for p in range(t):
            if code >> (t - 1 - p) & 1:
                edges.append((p, t))
    return tuple(sorted(edges))


def automorphism_count(G: SimpleGraph) -> int:
    """|Aut(G)| by the orbit-stabilizer chain over the vertex base 0..n-1.

    The orbit of base vertex i under the pointwise stabilizer of 0..i-1 is
    found by one constrained-isomorphism search per candidate image; the
    group order is the product of the orbit sizes.
    """
    if G.n > CANONICAL_BUDGET:
        raise BudgetError(f"canonical_form limited to n <= {CANONICAL_BUDGET}")
    n = G.n
    if n <= 1:
        return 1
    adj = G.adjacency_masks()
    deg = G.degrees()

    total = 1
    for i in range(n):
        orbit = 1
        for u in range(i + 1, n):
            if deg[u] == deg[i] and _extends_to_automorphism(n, adj, deg, i, u):
                orbit += 1
        total *= orbit
    return total


def _extends_to_automorphism(n: int, adj: list, deg: list, i: int, u: int) -> bool:
    """Is there an automorphism fixing 0..i-1 pointwise with i -> u?"""
    for v in range(i):  # prescribed part must already be consistent
        if adj[i] >> v & 1 != adj[u] >> v & 1:
            return False
    image = list(range(i)) + [u]
    used = (1 << i) - 1 | (1 << u)

    def rec(v: int) -> bool:
        nonlocal used
        if v == n:
            return True
        required = 0
        image_mask = 0
        for w in range(v):
            image_mask |= 1 << image[w]
            if adj[v] >> w & 1:
                required |= 1 << image[w]
        for t in range(n):
            if used >> t & 1 or deg[t] != deg[v]:
                continue
            if adj[t] & image_mask != required:
                continue
            image.append(t)
            used |= 1 << t
            if rec(v + 1):
                return True
            image.pop()
            used &= ~(1 << t)
        return False

    # position i itself is already assigned; continue from i+1
    return rec(i + 1)


def isomorphic(G: SimpleGraph, H: SimpleGraph) -> bool:
    return G.n == H.n and canonical_key(G) == canonical_key(H)


# ---------------------------------------------------------------------------
# graph6 encoding (bit-exact per the published format, n <= 62)
# ---------------------------------------------------------------------------

GRAPH6_HEADER = ">>graph6<<"


def to_graph6(G: SimpleGraph) -> str:
    if G.n > 62:
        raise ValidationError("graph6 support is limited to n <= 62 here")
    n = G.n
    out = [chr(n + 63)]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if G.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        out.append(chr(value + 63))
    return "".join(out)


def from_graph6(text: str) -> SimpleGraph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise ValidationError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise ValidationError(f"invalid graph6 character {ch!r}")
    n = ord(s[0]) - 63
    if n > 62:
        raise ValidationError("graph6 support is limited to n <= 62 here")
    body = s[1:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise ValidationError(
            f"graph6 body has {len(body)} characters, expected {expected}"
        )
    bits = []
    for ch in body:
        value = ord(ch) - 63
        for shift in range(5, -1, -1):
            bits.append(value >> shift & 1)
    if any(bits[nbits:]):
        raise ValidationError("nonzero padding bits in graph6 string")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return SimpleGraph.from_edges(n, edges)


def write_graph6_lines(graphs: Iterable[SimpleGraph]) -> str:
    return "".join(to_graph6(G) + "\n" for G in graphs)


def load_family(path) -> ForbiddenFamily:
    """Read a family file: one graph6 string per line, '#' lines are comments."""
    members = []
    with open(path, "r", encoding="ascii") as handle:
        for line in handle:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            members.append(from_graph6(line))
    return ForbiddenFamily(members)
