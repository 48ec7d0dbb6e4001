import math
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from truncapprox.errors import KTooLarge, NotClawFree, ParseError, TooLargeForOracle
from truncapprox.graphcount import (
    Graph,
    Kind,
    complete_graph,
    cycle_graph,
    delta_for,
    estimate_average_size,
    estimate_total,
    exact_polynomial,
    exact_total,
    format_graph,
    is_claw_free,
    line_graph,
    parse_graph,
    path_graph,
    petersen_graph,
    random_graph,
    required_k,
    structure_counts,
)
from truncapprox.transforms import real_rooted_parameters, required_order

TRIANGLE = cycle_graph(3)
P3 = path_graph(3)
SINGLE = Graph(1, ())


@st.composite
def graphs(draw, max_v=9):
    v = draw(st.integers(1, max_v))
    pairs = [(u, w) for u in range(v) for w in range(u + 1, v)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=14)) if pairs else []
    return Graph(v, tuple(chosen))


@pytest.mark.parametrize(
    "G, kind, total",
    [
        (P3, "matchings", 3), (TRIANGLE, "matchings", 4), (SINGLE, "matchings", 1),
        (P3, "independent", 5), (TRIANGLE, "independent", 4), (SINGLE, "independent", 2),
        (P3, "unbranched", 4), (TRIANGLE, "unbranched", 8), (SINGLE, "unbranched", 1),
    ],
)
def test_small_totals(G, kind, total):
    assert exact_total(G, kind) == total
    K = G.v if kind == "independent" else G.e
    assert structure_counts(G, kind, K).total() == total


def test_count_examples():
    assert structure_counts(P3, "matchings", 2).counts == (1, 2, 0)
    assert structure_counts(complete_graph(4), "matchings", 2).counts == (1, 6, 3)
    assert structure_counts(TRIANGLE, "unbranched", 3).counts == (1, 3, 3, 1)
    with pytest.raises(KTooLarge):
        structure_counts(P3, "matchings", 3)
    with pytest.raises(KTooLarge):
        structure_counts(P3, "independent", 4)


@pytest.mark.parametrize("n", range(1, 9))
def test_complete_graph_matchings(n):
    # perfect-matching style closed form: C(n, 2k) (2k)! / (2^k k!)
    want = [comb(n, 2 * k) * math.factorial(2 * k) // (2**k * math.factorial(k)) for k in range(n // 2 + 1)]
    K = min(n // 2 + 1, comb(n, 2))
    got = structure_counts(complete_graph(n), "matchings", K).counts
    assert list(got[: len(want)]) == want[: len(got)]
    assert all(c == 0 for c in got[len(want):])


@settings(max_examples=60, deadline=None)
@given(G=graphs())
def test_counts_agree_with_oracles(G):
    for kind in Kind:
        K = G.v if kind is Kind.INDEPENDENT else G.e
        cv = structure_counts(G, kind, K)
        want = exact_polynomial(G, kind).counts + (0,) * (K + 1)
        assert cv.counts == want[: K + 1]
        assert cv.total() == exact_total(G, kind)


@settings(max_examples=60, deadline=None)
@given(G=graphs())
def test_count_identities(G):
    K = min(3, G.e)
    m = structure_counts(G, "matchings", K).counts
    u = structure_counts(G, "unbranched", K).counts
    assert all(a <= b for a, b in zip(m, u))
    if G.e:
        assert m[1] == u[1] == G.e
    i = structure_counts(G, "independent", min(1, G.v)).counts
    assert i[0] == 1 and (G.v == 0 or i[1] == G.v)


@settings(max_examples=40, deadline=None)
@given(G=graphs(max_v=7))
def test_line_graphs_are_claw_free(G):
    L = line_graph(G)
    assert is_claw_free(L)
    # independent sets of L(G) are matchings of G
    assert exact_total(L, "independent") == exact_total(G, "matchings")


@settings(max_examples=40, deadline=None)
@given(G=graphs(), seed=st.integers(0, 2**32))
def test_edge_order_and_labels_do_not_matter(G, seed):
    rng = random.Random(seed)
    perm = list(range(G.v))
    rng.shuffle(perm)
    edges = [(perm[u], perm[w]) for u, w in G.edges]
    rng.shuffle(edges)
    H = Graph(G.v, tuple(edges))
    for kind in Kind:
        K = min(3, G.v if kind is Kind.INDEPENDENT else G.e)
        assert structure_counts(G, kind, K) == structure_counts(H, kind, K)


def test_claw_detection():
    claw = Graph(4, ((0, 1), (0, 2), (0, 3)))
    assert not is_claw_free(claw)
    assert is_claw_free(TRIANGLE) and is_claw_free(cycle_graph(6))
    with pytest.raises(NotClawFree):
        delta_for("independent", claw)


def test_deltas():
    G = petersen_graph()  # 3-regular
    assert delta_for("matchings", G).delta == pytest.approx(1 / 8)
    assert delta_for("independent", cycle_graph(5)).delta == pytest.approx(1 / 4)
    assert delta_for("unbranched", G).delta == pytest.approx(2 / 12)
    # max degree below 2 is treated as 2
    assert delta_for("unbranched", path_graph(2)).delta == 0.99
    assert delta_for("matchings", path_graph(2)).delta == pytest.approx(1 / 4)


def test_petersen_required_k():
    _, _, beta = real_rooted_parameters(1 / 8)
    assert required_k(petersen_graph(), "matchings", 1e-2) == required_order(beta, 40, 5e-3)


def test_required_k_monotone():
    G = petersen_graph()
    ks = [required_k(G, "matchings", 10.0**-e) for e in range(1, 9)]
    assert ks == sorted(ks)


def test_parse_graph_errors():
    with pytest.raises(ParseError) as info:
        parse_graph("3 2\n0 1\n1 0\n")
    assert info.value.line == 3 and "line 2" in str(info.value)
    with pytest.raises(ParseError):
        parse_graph("3 1\n0 0\n")
    with pytest.raises(ParseError):
        parse_graph("3 1\n0 3\n")
    with pytest.raises(ParseError):
        parse_graph("3 2\n0 1\n")
    with pytest.raises(ParseError):
        parse_graph("")


def test_graph_format_roundtrip():
    G = petersen_graph()
    assert parse_graph(format_graph(G)) == G


def test_oracle_limit():
    with pytest.raises(TooLargeForOracle):
        exact_total(path_graph(40), "matchings")


def test_estimate_total_petersen():
    G = petersen_graph()
    est, prefix = estimate_total(G, "matchings", 1e-2)
    assert abs(est.log_value - math.log(exact_total(G, "matchings"))) <= 1e-2
    assert prefix.K == min(est.order_used, G.v)


def test_estimate_average_size():
    G = cycle_graph(8)
    poly = exact_polynomial(G, "matchings").counts
    exact = sum(k * c for k, c in enumerate(poly)) / sum(poly)
    avg = estimate_average_size(G, "matchings", 1e-2)
    assert abs(math.log(complex(avg).real / exact)) <= 1e-2


def test_random_graph_respects_degree():
    G = random_graph(12, 3, 30, random.Random(1))
    assert max(G.degree(u) for u in range(G.v)) <= 3
    assert G.e <= 30
