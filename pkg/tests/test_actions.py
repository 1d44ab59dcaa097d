import numpy as np
import pytest

from gba.actions import (CosetAction, RelWitness, check_pseudo_frobenius, decide_binary,
                         exhaustive_check, frobenius_profile, height, is_ti, r_related, restrict,
                         relational_complexity, su3_witness_tuples, suborbit_actions,
                         ti_triple_search, triple_witness, unital_lambda_action,
                         witt_pair_transitivity)
from gba.errors import (CapExceededError, LengthMismatchError, NotASubgroupError,
                        PreconditionError)
from gba.groups import normalizer, subgroups_up_to_conjugacy, sylow_subgroup
from gba.matgroups import build_psl2, build_psu3, named_subgroup


@pytest.fixture(scope="module")
def psl27():
    return build_psl2(7)


def test_coset_action_is_a_homomorphism(psl27):
    G = psl27
    A = CosetAction(G, named_subgroup(G, "borel"))
    assert A.n == 8
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, G.order, size=(30, 2)):
        # right action: p^(ab) = (p^a)^b
        assert np.array_equal(A.perm(G.mul1(int(a), int(b))), A.perm(b)[A.perm(a)])
    assert np.array_equal(A.perm(0), np.arange(8))


def test_transporter_and_lengths(psl27):
    A = CosetAction(psl27, named_subgroup(psl27, "borel"))
    t = A.transporter([0, 1], [2, 3])
    # 2-transitive on 8 points, so a two-point stabilizer has order 168 / 56
    assert t.size == 3
    with pytest.raises(LengthMismatchError):
        r_related(A, [0, 1], [0], 1)
    with pytest.raises(LengthMismatchError):
        r_related(A, [0, 1], [0, 1], 3)


def test_witness_replays_in_psl2_9():
    G = build_psl2(9)
    S = sylow_subgroup(G, 3)
    A = CosetAction(G, S)
    w = triple_witness(A)
    assert w is not None and w.verify(A)
    v = decide_binary(G, S, A)
    assert v.status == "NotBinary" and v.method == "triple-witness"
    assert not RelWitness(w.I, w.I).verify(A)


def test_regular_normal_and_trivial(psl27):
    G = psl27
    assert decide_binary(G, G.trivial()).method == "regular"
    assert decide_binary(G, G.whole()).method == "trivial"
    B = named_subgroup(G, "borel")
    Bg, U = restrict(named_subgroup(G, "unipotent"), B)
    v = decide_binary(Bg, U)
    assert v.status == "Binary" and v.method == "normal"


def test_restrict_rejects_non_subgroup(psl27):
    B = named_subgroup(psl27, "borel")
    with pytest.raises(NotASubgroupError):
        restrict(sylow_subgroup(psl27, 2), B)


@pytest.mark.parametrize("q", [4, 8])
def test_sylow_two_in_even_q_is_binary_ti(q):
    G = build_psl2(q)
    S = sylow_subgroup(G, 2)
    assert is_ti(G, S) and is_ti(G, S, CosetAction(G, S))
    assert ti_triple_search(G, S) is None
    assert decide_binary(G, S).status == "Binary"


def test_ti_triple_for_odd_sylow():
    G = build_psl2(7)
    S = sylow_subgroup(G, 7)
    assert is_ti(G, S)
    t = ti_triple_search(G, S)
    assert t is not None and t.verify()
    t2 = ti_triple_search(G, S, exhaustive=True)
    assert t2 is not None and t2.verify()
    with pytest.raises(PreconditionError):
        ti_triple_search(G, sylow_subgroup(G, 2))   # D8 is not TI


def test_exhaustive_agrees_with_cascade():
    G = build_psl2(8)
    for S in subgroups_up_to_conjugacy(G, proper=True):
        if S.order == 1:
            continue
        A = CosetAction(G, S)
        assert exhaustive_check(A).binary == (decide_binary(G, S, A).status == "Binary")


def test_height_and_rc_bound():
    G = build_psl2(4)
    for S in subgroups_up_to_conjugacy(G, proper=True):
        A = CosetAction(G, S)
        if A.n > 12:
            continue
        assert relational_complexity(A) <= height(A) + 1
    # A5 on 5 points: relational complexity n - 1
    A = CosetAction(G, normalizer(G, sylow_subgroup(G, 2)))
    assert A.n == 5 and relational_complexity(A, max_len=5) == 4


def test_caps():
    G = build_psl2(13)
    with pytest.raises(CapExceededError):
        CosetAction(G, G.trivial(), cap_omega=100)
    v = decide_binary(G, sylow_subgroup(G, 3), cap_omega=10)
    assert v.status == "Unknown" and v.method == "cap"


def test_frobenius_borel_suborbit():
    G = build_psl2(11)
    B = named_subgroup(G, "borel")
    A = CosetAction(G, B)
    assert frobenius_profile(A) is None          # the torus fixes two points
    sub = suborbit_actions(A)
    assert sorted(s.size for s in sub) == [1, 11]
    assert any(s.frobenius for s in sub if s.size == 11)


@pytest.fixture(scope="module")
def psu34():
    return build_psu3(4)


def test_unitary_witnesses(psu34):
    A, I, J, info = su3_witness_tuples(4, G=psu34)
    assert A.n == 975
    w = RelWitness(I, J)
    assert w.verify(A)
    A5, I5, J5, info5 = su3_witness_tuples(4, t1_order=5, G=psu34)
    assert A5.n == 195 and RelWitness(I5, J5).verify(A5)


def test_unitary_structure(psu34):
    assert witt_pair_transitivity(psu34)
    lam = unital_lambda_action(psu34)
    assert lam.two_transitive


def test_pseudo_frobenius_borel():
    G = build_psl2(7)
    B = named_subgroup(G, "borel")
    Bg, U = restrict(named_subgroup(G, "unipotent"), B)
    T = Bg.subgroup_from_members(np.searchsorted(B.members, named_subgroup(G, "torus-split").members))
    r = check_pseudo_frobenius(Bg, U, Bg.trivial(), T, T)
    assert r.hypotheses_hold
    assert r.verdict.status == "NotBinary"
