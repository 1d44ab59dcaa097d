"""Independent brute-force cross-checks for the computed (not quoted) results."""

import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gba.actions import CosetAction, decide_binary, r_related, relational_complexity
from gba.groups import closure, normalizer, subgroups_up_to_conjugacy
from gba.matgroups import build_group, build_psl2, build_sz, class_product_count, named_subgroup


# -- tuple-orbit brute force --------------------------------------------------------------

def _orbit_ids(P: np.ndarray, n: int, m: int) -> np.ndarray:
    """G-orbit label (smallest code in the orbit) of every m-tuple, tuples coded base n."""
    tuples = np.array(list(itertools.product(range(n), repeat=m)), dtype=np.int64).reshape(-1, m)
    weights = n ** np.arange(m - 1, -1, -1)
    best = None
    for g in range(P.shape[0]):
        codes = P[g][tuples] @ weights
        best = codes if best is None else np.minimum(best, codes)
    return best


def _k_profile(tables, n, m, k) -> np.ndarray:
    """For each m-tuple, the vector of orbit labels of all its k-subtuples."""
    tuples = np.array(list(itertools.product(range(n), repeat=m)), dtype=np.int64).reshape(-1, m)
    weights = n ** np.arange(k - 1, -1, -1)
    cols = [tables[k][tuples[:, list(c)] @ weights]
            for c in itertools.combinations(range(m), k)]
    return np.stack(cols, axis=1)


def brute_levels(A: CosetAction, max_m: int):
    """{(k, m): k-related implies m-related} for 2 <= k < m <= max_m."""
    P = A.perms(np.arange(A.G.order)).astype(np.int64)
    n = A.n
    tables = {m: _orbit_ids(P, n, m) for m in range(1, max_m + 1)}
    out = {}
    for m in range(3, max_m + 1):
        orbits = len(np.unique(tables[m]))
        for k in range(2, m):
            prof = _k_profile(tables, n, m, k)
            out[(k, m)] = len(np.unique(prof, axis=0)) == orbits
    return out


def brute_rc(A: CosetAction, max_m: int) -> int:
    lv = brute_levels(A, max_m)
    for k in range(2, max_m + 1):
        if all(lv[(k, m)] for m in range(k + 1, max_m + 1)):
            return k
    return max_m


def _small_actions(label, max_points):
    G = build_group(label)
    for S in subgroups_up_to_conjugacy(G, proper=True):
        n = G.order // S.order
        if 2 < n <= max_points:
            yield G, S, CosetAction(G, S)


@pytest.mark.parametrize("label", ["PSL2(4)", "PSL2(7)"])
def test_relational_complexity_brute_force(label):
    seen = 0
    for G, S, A in _small_actions(label, 7):
        # full length up to 6 points, tuples of length <= 5 beyond that
        m = min(A.n, 5) if A.n > 6 else A.n
        assert relational_complexity(A, max_len=m) == brute_rc(A, m), (label, S.order)
        seen += 1
    assert seen >= 2


@pytest.mark.parametrize("label,max_points,max_m", [("PSL2(4)", 12, 4), ("PSL2(7)", 14, 4),
                                                    ("PSL2(8)", 9, 5)])
def test_binary_verdicts_brute_force(label, max_points, max_m):
    for G, S, A in _small_actions(label, max_points):
        v = decide_binary(G, S, A)
        lv = brute_levels(A, min(max_m, A.n))
        brute_ok = all(lv[(2, m)] for m in range(3, min(max_m, A.n) + 1))
        if v.status == "Binary":
            assert brute_ok, (label, S.order)
        else:
            assert v.status == "NotBinary"
            if v.witness is not None and len(v.witness.I) <= max_m:
                assert not brute_ok, (label, S.order)


# -- transporter against a scan of the group ------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.data())
def test_related_matches_group_scan(data):
    G = build_psl2(7)
    S = named_subgroup(G, "borel")
    A = CosetAction(G, S)
    P = A.perms(np.arange(G.order))
    m = data.draw(st.integers(1, 4))
    I = data.draw(st.lists(st.integers(0, A.n - 1), min_size=m, max_size=m))
    g = data.draw(st.integers(0, G.order - 1))
    # half the time J is a genuine image, otherwise arbitrary
    if data.draw(st.booleans()):
        J = [int(P[g, i]) for i in I]
    else:
        J = data.draw(st.lists(st.integers(0, A.n - 1), min_size=m, max_size=m))
    for r in range(1, m + 1):
        brute = all(
            np.any(np.all(P[:, [I[k] for k in c]] == [J[k] for k in c], axis=1))
            for c in itertools.combinations(range(m), r))
        assert r_related(A, I, J, r) == brute


# -- subgroup classes of PSL2(4) against the permutation model of A5 ----------------------------

def test_a5_models_agree():
    M, A5 = build_psl2(4), build_group("A5")
    assert Counter(M.element_orders.tolist()) == Counter(A5.element_orders.tolist())
    assert sorted(C.size for C in M.conjugacy_classes()) == \
        sorted(C.size for C in A5.conjugacy_classes())

    def verdicts(G):
        return sorted((S.order, decide_binary(G, S).status)
                      for S in subgroups_up_to_conjugacy(G, proper=True))
    assert verdicts(M) == verdicts(A5)


# -- 2-subgroups of Sz(8) by enumeration inside one Sylow subgroup ------------------------------

def _all_subgroups(G, P_members):
    found = {frozenset([0])}
    frontier = [np.array([0])]
    while frontier:
        nxt = []
        for mem in frontier:
            ms = set(mem.tolist())
            for x in P_members:
                if int(x) in ms:
                    continue
                T = frozenset(closure(G, np.append(mem, x)).tolist())
                if T not in found:
                    found.add(T)
                    nxt.append(np.array(sorted(T)))
        frontier = nxt
    return found


def test_suzuki_two_subgroup_classes():
    """A Sylow 2-subgroup of Sz(8) is TI, so two of its subgroups are conjugate in
    G iff they are conjugate under its normalizer; count those orbits directly."""
    G = build_sz(8)
    P = named_subgroup(G, "U2")
    N = normalizer(G, P)
    subs = _all_subgroups(G, P.members[1:])
    orbits = 0
    left = set(subs)
    while left:
        S = left.pop()
        orbit, stack = {S}, [S]
        while stack:
            T = stack.pop()
            arr = np.fromiter(T, dtype=np.int64)
            for g in N.gens:
                U = frozenset(G.conj(arr, int(g)).tolist())
                if U not in orbit:
                    orbit.add(U)
                    stack.append(U)
        left -= orbit
        orbits += 1
    nontrivial = orbits - 1
    swept = subgroups_up_to_conjugacy(G, max_order=64, proper=True)
    two_groups = [S for S in swept if S.order > 1 and (S.order & (S.order - 1)) == 0]
    assert nontrivial == len(two_groups)
    # Z(P) is the only nontrivial 2-subgroup class acting binarily
    binary = [S.order for S in two_groups if decide_binary(G, S).status == "Binary"]
    assert binary == [8]


# -- class products ---------------------------------------------------------------------------

def test_class_products_brute_force_psl2_8():
    G = build_psl2(8)
    classes = G.conjugacy_classes()
    for C in classes:
        for D in classes[:4]:
            h = C.rep
            brute = sum(int(G.mul1(int(x), int(y)) == h) for x in C.members for y in D.members) \
                if C.size * D.size <= 10**5 else None
            if brute is not None:
                assert class_product_count(G, C, D, h) == brute
