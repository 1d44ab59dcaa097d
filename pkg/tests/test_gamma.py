import numpy as np
import pytest

from gba.errors import MultipleInvolutionClassesError, PreconditionError
from gba.gamma import (CommGraph, check_aschbacher_dichotomy, check_component_in_stabilizer,
                       component_groups_conjugate, edge_count_profile, gamma_graph,
                       is_strongly_embedded, to_dot)
from gba.groups import FiniteGroup, normalizer, sylow_subgroup
from gba.matgroups import build_group, build_psl2


def test_psl2_4_involution_graph():
    G = build_psl2(4)
    g = gamma_graph(G, G.involution_classes()[0])
    prof = edge_count_profile(g)
    assert (prof.vertices, prof.edges) == (15, 15)
    assert prof.degree_histogram == {2: 15}
    assert prof.component_sizes == [3] * 5
    assert component_groups_conjugate(G, g)


def test_gamma_edges_by_brute_force():
    G = build_psl2(7)
    C = G.involution_classes()[0]
    g = gamma_graph(G, C)
    adj = g.adjacency()
    V = C.members
    for i, x in enumerate(V[:8]):
        for j, y in enumerate(V):
            x, y = int(x), int(y)
            comm = G.mul1(x, y) == G.mul1(y, x)
            rel = C.mask[G.mul1(x, int(G.inv[y]))] or C.mask[G.mul1(y, int(G.inv[x]))]
            assert adj[i, j] == (i != j and comm and rel)


@pytest.mark.parametrize("label,branch", [("PSL2(4)", "strongly-embedded"),
                                          ("PSL2(7)", "connected"),
                                          ("PSL2(8)", "strongly-embedded"),
                                          ("PSL2(9)", "connected")])
def test_dichotomy(label, branch):
    r = check_aschbacher_dichotomy(build_group(label))
    assert r.holds and r.branch == branch
    if branch == "strongly-embedded":
        assert r.strongly_embedded and r.readings_agree


def _d8():
    r, f = (1, 2, 3, 0), (0, 3, 2, 1)
    elems, frontier = {(0, 1, 2, 3)}, [(0, 1, 2, 3)]
    while frontier:
        x = frontier.pop()
        for g in (r, f):
            y = tuple(g[x[k]] for k in range(4))
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return FiniteGroup(np.array(sorted(elems)), "D8")


def test_dichotomy_needs_one_involution_class():
    G = _d8()
    assert G.order == 8 and len(G.involution_classes()) == 3
    with pytest.raises(MultipleInvolutionClassesError):
        check_aschbacher_dichotomy(G)


def test_strongly_embedded():
    G = build_psl2(8)
    N = normalizer(G, sylow_subgroup(G, 2))
    assert N.order == 56 and is_strongly_embedded(G, N)
    G7 = build_psl2(7)
    assert not is_strongly_embedded(G7, normalizer(G7, sylow_subgroup(G7, 2)))
    with pytest.raises(PreconditionError):
        is_strongly_embedded(G, G.whole())
    with pytest.raises(PreconditionError):
        is_strongly_embedded(G, sylow_subgroup(G, 7))


def test_component_in_stabilizer_even_q():
    G = build_psl2(8)
    S = sylow_subgroup(G, 2)
    r = check_component_in_stabilizer(G, S, 2)
    assert r.holds and r.component_orders == [8]
    with pytest.raises(PreconditionError):
        check_component_in_stabilizer(G, sylow_subgroup(G, 7), 2)


def test_gamma_needs_nontrivial_class():
    G = build_psl2(7)
    with pytest.raises(PreconditionError):
        gamma_graph(G, G.conjugacy_classes()[0])


def test_graph_basics_and_dot():
    g = CommGraph(np.array([3, 5, 9, 11]), np.array([[0, 1], [2, 3]]), "toy")
    assert g.num_components == 2 and not g.is_connected()
    assert g.component_sizes() == [2, 2]
    assert list(g.degrees()) == [1, 1, 1, 1]
    sub = g.induced(np.array([3, 5]))
    assert sub.n == 2 and sub.is_connected()
    dot = to_dot(g, name="toy")
    assert dot.startswith("graph toy") and dot.count("--") == 2
