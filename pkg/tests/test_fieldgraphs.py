import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gba.errors import EvenQError, NotApplicableError, WrongFieldShapeError
from gba.ffield import field_of_order, prime_power
from gba.fieldgraphs import (check_star_solution, consecutive_squares, consecutive_squares_count,
                             consecutive_squares_formula, consecutive_squares_map,
                             csv_row, cube_graph, cube_graph_analysis, gf2_rank, graph_dot,
                             solve_star_equation, square_graph, square_graph_analysis,
                             squares_graph_matches_gamma)

ODD_Q = [q for q in range(3, 400) if (pp := prime_power(q)) and pp[0] != 2]


def test_gf2_rank():
    assert gf2_rank([1, 2, 3]) == 2
    assert gf2_rank([0, 0]) == 0
    assert gf2_rank([1, 2, 4, 8, 15]) == 4


@pytest.mark.parametrize("q,cubes", [(8, 21), (32, 341)])
def test_cube_graph(q, cubes):
    r = cube_graph_analysis(q)
    assert r.cubes == cubes == (q * q - 1) // 3
    assert r.connected and r.span_full
    assert r.subfield_neighbours_of_one and r.roots_neighbours_of_one
    assert r.neighbours_generate


def test_cube_graph_edges_by_definition():
    g, F = cube_graph(8)
    cubes = set(g.vertices.tolist())
    adj = g.adjacency()
    for i, a in enumerate(g.vertices):
        for j, b in enumerate(g.vertices):
            assert adj[i, j] == (i != j and int(F.add(int(a), int(b))) in cubes)


@pytest.mark.parametrize("q", [2, 4, 16, 3, 128])
def test_cube_graph_shape_errors(q):
    with pytest.raises(WrongFieldShapeError):
        cube_graph(q)


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29])
def test_square_graph(q):
    r = square_graph_analysis(q)
    assert r.vertices == (q - 1) // 2
    assert r.consistent


def test_square_graph_even_q():
    with pytest.raises(EvenQError):
        square_graph(8)
    with pytest.raises(EvenQError):
        consecutive_squares(16)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ODD_Q))
def test_consecutive_squares_formula(q):
    F = field_of_order(q)
    sq = {int(F.mul(x, x)) for x in range(1, q)}
    brute = sum(1 for x in range(q) if x in sq and int(F.add(x, 1)) in sq)
    assert brute == consecutive_squares_formula(q) == consecutive_squares_count(q)


@pytest.mark.parametrize("q", [7, 11, 13, 19, 23])
def test_consecutive_squares_map(q):
    m = consecutive_squares_map(q)
    assert m["onto"] and m["fibre_sizes"] == [4]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([q for q in range(4, 400) if (pp := prime_power(q)) and pp[0] != 3
                        and not (pp[0] == 2 and pp[1] % 2)]))
def test_star_equation(q):
    sol = solve_star_equation(q)
    assert sol.solvable
    F = field_of_order(q)
    x, y = sol.x, sol.y
    lhs = F.add(F.add(F.mul(y, y), F.mul(F.add(x, 1), y)), F.add(F.add(F.mul(x, x), x), 1))
    assert int(lhs) == 0
    chk = check_star_solution(sol)
    assert chk["det"] == 1
    assert chk["order_g1"] == chk["order_g2"] == chk["order_g1g2"] == 3
    assert chk["distinct_subgroups"]


@pytest.mark.parametrize("q", [8, 32, 128])
def test_star_equation_even_odd_degree(q):
    # lambda^2 + lambda + 1 needs GF(4) inside GF(q)
    sol = solve_star_equation(q)
    assert not sol.solvable and sol.lam is None


def test_star_equation_small_cases():
    s7 = solve_star_equation(7)
    assert (s7.x, s7.route) == (0, "x=0") and s7.y in (2, 4)
    s16 = solve_star_equation(16)
    assert s16.solvable and s16.lam is not None


@pytest.mark.parametrize("q", [3, 9, 27])
def test_star_equation_char_3(q):
    with pytest.raises(NotApplicableError):
        solve_star_equation(q)


@pytest.mark.parametrize("q", [7, 9, 11, 13])
def test_squares_graph_inside_gamma(q):
    assert squares_graph_matches_gamma(q)


def test_outputs():
    r = cube_graph_analysis(8)
    text = csv_row(r)
    assert text.splitlines()[0].startswith("q,field_order,cubes")
    g, _ = cube_graph(8)
    assert graph_dot(g, "cubes8").count("--") == int(len(g.edges))
    assert np.all(np.diff(square_graph(13).vertices) > 0)
