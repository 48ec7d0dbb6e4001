"""Small-size structure counts in graphs and the root regions of their polynomials.

Counts m_k (matchings), i_k (independent sets) and u_k (unbranched
subgraphs: edge sets with every vertex degree <= 2) are exact Python ints
produced by depth-limited enumeration. Full totals for small graphs come
from separate algorithms so that they can serve as oracles.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .approximator import Estimate, approximate_derivative_ratio, approximate_p1
from .errors import KTooLarge, NotClawFree, ParseError, TooLargeForOracle
from .poly import PolynomialPrefix
from .transforms import STABLE_DELTA_CAP, RootRegion, plan_for

ORACLE_LIMIT = 24


class Kind(str, enum.Enum):
    MATCHINGS = "matchings"
    INDEPENDENT = "independent"
    UNBRANCHED = "unbranched"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..v-1."""

    v: int
    edges: tuple
    adjacency: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.v < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        edges = []
        for u, w in self.edges:
            u, w = int(u), int(w)
            if u == w:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.v and 0 <= w < self.v):
                raise ValueError(f"edge ({u}, {w}) out of range for v={self.v}")
            e = (min(u, w), max(u, w))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            edges.append(e)
        adj = [[] for _ in range(self.v)]
        for u, w in edges:
            adj[u].append(w)
            adj[w].append(u)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def e(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])


def max_degree(G: Graph) -> int:
    return max((len(a) for a in G.adjacency), default=0)


@dataclass(frozen=True)
class CountVector:
    kind: Kind
    counts: tuple

    @property
    def upto(self) -> int:
        return len(self.counts) - 1

    def total(self) -> int:
        return sum(self.counts)


# ---------------------------------------------------------------- parsing

def parse_graph(text: str) -> Graph:
    """Parse ``v e`` followed by e lines ``u w``; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append((lineno, line.split()))
    if not rows:
        raise ParseError("empty graph file")
    lineno, head = rows[0]
    try:
        v, e = (int(x) for x in head)
    except ValueError:
        raise ParseError("expected header 'v e'", lineno) from None
    if v < 0 or e < 0:
        raise ParseError("negative counts in header", lineno)
    if len(rows) - 1 != e:
        raise ParseError(f"header announces {e} edges, found {len(rows) - 1}")
    seen = {}
    edges = []
    for lineno, parts in rows[1:]:
        try:
            u, w = (int(x) for x in parts)
        except ValueError:
            raise ParseError("expected edge 'u w'", lineno) from None
        if u == w:
            raise ParseError(f"loop at vertex {u}", lineno)
        if not (0 <= u < v and 0 <= w < v):
            raise ParseError(f"vertex out of range 0..{v - 1}", lineno)
        key = (min(u, w), max(u, w))
        if key in seen:
            raise ParseError(f"duplicate edge {key} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        edges.append(key)
    return Graph(v, tuple(edges))


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def format_graph(G: Graph) -> str:
    return "\n".join([f"{G.v} {G.e}", *(f"{u} {w}" for u, w in G.edges)]) + "\n"


# ------------------------------------------------------- graph generators

def line_graph(H: Graph) -> Graph:
    """Vertices are the edges of H, adjacent when they share an endpoint."""
    edges = [
        (i, j)
        for (i, e), (j, f) in itertools.combinations(enumerate(H.edges), 2)
        if set(e) & set(f)
    ]
    return Graph(H.e, tuple(edges))


def random_graph(v: int, max_deg: int, n_edges: int, rng: random.Random) -> Graph:
    """Random simple graph with at most ``n_edges`` edges and degrees <= max_deg."""
    pairs = list(itertools.combinations(range(v), 2))
    rng.shuffle(pairs)
    deg = [0] * v
    edges = []
    for u, w in pairs:
        if len(edges) == n_edges:
            break
        if deg[u] < max_deg and deg[w] < max_deg:
            edges.append((u, w))
            deg[u] += 1
            deg[w] += 1
    return Graph(v, tuple(edges))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


# ------------------------------------------------------------ predicates

def is_claw_free(G: Graph) -> bool:
    """No vertex has three pairwise non-adjacent neighbours."""
    adj = [set(a) for a in G.adjacency]
    for nbrs in G.adjacency:
        if len(nbrs) < 3:
            continue
        for x, y, z in itertools.combinations(nbrs, 3):
            if y not in adj[x] and z not in adj[x] and z not in adj[y]:
                return False
    return True


def delta_for(kind: Kind | str, G: Graph) -> RootRegion:
    """Root region of the counting polynomial, from the max degree.

    Matchings: real roots <= -1/(4(D-1)). Independent sets of a claw-free
    graph: real roots, |root| >= (D-1)^(D-1) / D^D. Unbranched subgraphs:
    Re(root) <= -2 / (D (D-1)^2). Here D = max(max degree, 2).
    """
    kind = Kind(kind)
    D = max(max_degree(G), 2)
    if kind is Kind.MATCHINGS:
        return RootRegion.real_rooted(1.0 / (4 * (D - 1)))
    if kind is Kind.INDEPENDENT:
        if not is_claw_free(G):
            raise NotClawFree("graph contains an induced claw K_{1,3}")
        return RootRegion.real_rooted(float(Fraction((D - 1) ** (D - 1), D**D)))
    return RootRegion.stable(min(2.0 / (D * (D - 1) ** 2), STABLE_DELTA_CAP))


def polynomial_degree(G: Graph, kind: Kind | str) -> int:
    """Declared degree n of the counting polynomial (an upper bound)."""
    return G.e if Kind(kind) is Kind.UNBRANCHED else G.v


def _size_limit(G: Graph, kind: Kind) -> int:
    return G.v if kind is Kind.INDEPENDENT else G.e


# -------------------------------------------------------------- counting

def structure_counts(G: Graph, kind: Kind | str, K: int) -> CountVector:
    """Exact numbers of structures of each size 0..K by depth-limited DFS."""
    kind = Kind(kind)
    limit = _size_limit(G, kind)
    if K < 0 or K > limit:
        raise KTooLarge(f"K={K} exceeds the largest possible size {limit}")
    counts = [0] * (K + 1)
    if kind is Kind.MATCHINGS:
        _count_matchings(G, K, counts)
    elif kind is Kind.INDEPENDENT:
        _count_independent(G, K, counts)
    else:
        _count_unbranched(G, K, counts)
    return CountVector(kind, tuple(counts))


def _count_matchings(G, K, counts):
    masks = [(1 << u) | (1 << w) for u, w in G.edges]
    E = len(masks)

    def rec(start, used, depth):
        counts[depth] += 1
        if depth == K:
            return
        for i in range(start, E):
            if not used & masks[i]:
                rec(i + 1, used | masks[i], depth + 1)

    rec(0, 0, 0)


def _count_independent(G, K, counts):
    closed = [(1 << u) | sum(1 << w for w in G.adjacency[u]) for u in range(G.v)]

    def rec(start, blocked, depth):
        counts[depth] += 1
        if depth == K:
            return
        for u in range(start, G.v):
            if not blocked >> u & 1:
                rec(u + 1, blocked | closed[u], depth + 1)

    rec(0, 0, 0)


def _count_unbranched(G, K, counts):
    ends = [((1 << u), (1 << w)) for u, w in G.edges]
    E = len(ends)

    # once: vertices with one chosen edge; full: vertices with two
    def rec(start, once, full, depth):
        counts[depth] += 1
        if depth == K:
            return
        for i in range(start, E):
            bu, bw = ends[i]
            if (bu | bw) & full:
                continue
            o, f = once, full
            for b in (bu, bw):
                if o & b:
                    o ^= b
                    f |= b
                else:
                    o |= b
            rec(i + 1, o, f, depth + 1)

    rec(0, 0, 0, 0)


# --------------------------------------------------------------- oracles

def exact_polynomial(G: Graph, kind: Kind | str) -> CountVector:
    """All counts, by algorithms independent of :func:`structure_counts`.

    Matchings and independent sets use vertex-deletion recursions memoized
    on the remaining vertex set; unbranched subgraphs use an edge-by-edge
    transfer over vertex degree states.
    """
    kind = Kind(kind)
    if kind is Kind.UNBRANCHED:
        if G.e > ORACLE_LIMIT:
            raise TooLargeForOracle(f"|E|={G.e} > {ORACLE_LIMIT}")
        return CountVector(kind, _unbranched_transfer(G))
    if G.v > ORACLE_LIMIT:
        raise TooLargeForOracle(f"v={G.v} > {ORACLE_LIMIT}")
    nbr = [sum(1 << w for w in G.adjacency[u]) for u in range(G.v)]

    @lru_cache(maxsize=None)
    def matchings(mask):
        if not mask:
            return (1,)
        u = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << u)
        out = list(matchings(rest))
        partners = nbr[u] & rest
        while partners:
            w = (partners & -partners).bit_length() - 1
            partners &= partners - 1
            _add_shifted(out, matchings(rest & ~(1 << w)))
        return tuple(out)

    @lru_cache(maxsize=None)
    def independent(mask):
        if not mask:
            return (1,)
        u = (mask & -mask).bit_length() - 1
        out = list(independent(mask & ~(1 << u)))
        _add_shifted(out, independent(mask & ~(1 << u) & ~nbr[u]))
        return tuple(out)

    full = (1 << G.v) - 1
    poly = matchings(full) if kind is Kind.MATCHINGS else independent(full)
    return CountVector(kind, _strip(poly))


def _add_shifted(acc: list, poly: tuple):
    """acc += x * poly, in place."""
    need = len(poly) + 1
    if len(acc) < need:
        acc.extend([0] * (need - len(acc)))
    for k, c in enumerate(poly):
        acc[k + 1] += c


def _strip(poly) -> tuple:
    poly = list(poly)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _unbranched_transfer(G: Graph) -> tuple:
    last = {}
    for i, (u, w) in enumerate(G.edges):
        last[u] = i
        last[w] = i
    states = {(0,) * G.v: [1]}
    for i, (u, w) in enumerate(G.edges):
        nxt = {}
        for deg, poly in states.items():
            for take in (False, True):
                if take and (deg[u] == 2 or deg[w] == 2):
                    continue
                d = list(deg)
                if take:
                    d[u] += 1
                    d[w] += 1
                # forget vertices that have no edges left
                for x in (u, w):
                    if last[x] == i:
                        d[x] = 0
                key = tuple(d)
                shifted = [0] + poly if take else poly
                cur = nxt.setdefault(key, [])
                if len(cur) < len(shifted):
                    cur.extend([0] * (len(shifted) - len(cur)))
                for k, c in enumerate(shifted):
                    cur[k] += c
        states = nxt
    total = [0]
    for poly in states.values():
        if len(total) < len(poly):
            total.extend([0] * (len(poly) - len(total)))
        for k, c in enumerate(poly):
            total[k] += c
    return _strip(total)


def exact_total(G: Graph, kind: Kind | str) -> int:
    """M(G), I(G) or U(G) by full enumeration (small graphs only)."""
    return exact_polynomial(G, kind).total()


# -------------------------------------------------------------- pipeline

def required_k(G: Graph, kind: Kind | str, eps: float) -> int:
    """Largest structure size the estimator will ask for at error eps."""
    kind = Kind(kind)
    region = delta_for(kind, G)
    return plan_for(region, polynomial_degree(G, kind), eps / 2).m


def counting_prefix(G: Graph, kind: Kind | str, m: int) -> PolynomialPrefix:
    """Coefficient prefix a_0..a_min(m, n) of the counting polynomial.

    Sizes past the largest possible structure are known zeros and are
    filled in without enumeration.
    """
    kind = Kind(kind)
    n = polynomial_degree(G, kind)
    want = min(m, n)
    K = min(want, _size_limit(G, kind))
    counts = list(structure_counts(G, kind, K).counts)
    counts.extend([0] * (want - K))
    return PolynomialPrefix(n, tuple(counts))


def estimate_total(G: Graph, kind: Kind | str, eps: float, precision="auto") -> tuple[Estimate, PolynomialPrefix]:
    """Estimate the total number of structures within relative error eps."""
    kind = Kind(kind)
    region = delta_for(kind, G)
    prefix = counting_prefix(G, kind, required_k(G, kind, eps))
    return approximate_p1(prefix, region, eps, precision), prefix


def estimate_average_size(G: Graph, kind: Kind | str, eps: float, precision="auto"):
    """Average structure size p'(1)/p(1) within relative error eps."""
    kind = Kind(kind)
    region = delta_for(kind, G)
    # the ratio runs each log at eps/2; p' needs one coefficient more
    prefix = counting_prefix(G, kind, required_k(G, kind, eps / 2) + 1)
    return approximate_derivative_ratio(prefix, region, eps, precision)
