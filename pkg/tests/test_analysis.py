import pytest

from nilmult.analysis import TripleSpec, check_lemma41, covering_pair_decision, pair_class
from nilmult.groups import AbelianStructure, FgAbelianGroup, PairSpec, parse_group_spec as G
from nilmult.grid import chain_pairs
from nilmult.multiplier import MultiplierRequest, pair_multiplier


def pair(n, k="1"):
    return PairSpec(G(n), G(k))


def test_covering_examples():
    dec = covering_pair_decision(pair("Z/4", "Z/4"), 2, verify=True)
    assert (dec.verdict, dec.justification) == ("not_exists", "thm33_nontrivial")
    assert dec.multiplier == AbelianStructure(0, (4, 4))
    dec = covering_pair_decision(pair("1", "Z/6"), 5)
    assert (dec.verdict, dec.justification) == ("exists", "cor34_trivial_N")
    dec = covering_pair_decision(pair("Z/2", "Z/2"), 1)
    assert (dec.verdict, dec.justification) == ("exists", "c1_ellis")


def test_covering_c1_infinite_group():
    dec = covering_pair_decision(pair("Z^2"), 1)
    assert dec.verdict == "unknown_out_of_scope"
    # a trivial multiplier still gives the inclusion, infinite or not
    dec = covering_pair_decision(pair("Z"), 1)
    assert (dec.verdict, dec.justification) == ("exists", "trivial_multiplier_inclusion")


def test_covering_matches_multiplier_triviality():
    for p in chain_pairs(3):
        for c in (2, 3):
            dec = covering_pair_decision(p, c)
            mult, _ = pair_multiplier(MultiplierRequest(p, c))
            assert (dec.verdict == "exists") == mult.is_trivial


@pytest.mark.parametrize("n", ["Z/2", "Z/12", "Z"])
@pytest.mark.parametrize("c", [2, 3])
def test_cyclic_n_equal_g_has_trivial_multiplier(n, c):
    # N = G cyclic: the multiplier vanishes, so the inclusion is a c-covering pair
    # even though N is nontrivial
    dec = covering_pair_decision(pair(n), c, verify=True)
    assert dec.multiplier.is_trivial
    assert (dec.verdict, dec.justification) == ("exists", "trivial_multiplier_inclusion")


def test_pair_class():
    assert pair_class(pair("1")) == 0
    assert pair_class(pair("Z/2")) == 1
    assert pair_class(pair("Z^2", "Z/3")) == 1


def clause_map(report):
    return {cl["clause"]: cl for cl in report["clauses"]}


def test_triple_klein():
    tri = TripleSpec(G("Z/2"), G("Z/2"))
    rep = check_lemma41(tri, 1, verify=True)
    assert rep["multipliers"] == {"G,N": "Z/2", "G/K,N/K": "1", "G,K": "Z/2"}
    cl = clause_map(rep)
    assert (cl["i"]["lhs"], cl["i"]["rhs"], cl["i"]["holds"]) == (2, 2, True)
    assert rep["passed"]


def test_triple_z4_z4():
    rep = check_lemma41(TripleSpec(G("Z/4"), G("Z/4")), 1, verify=True)
    cl = clause_map(rep)
    assert (cl["i"]["lhs"], cl["i"]["rhs"]) == (4, 4)
    assert rep["passed"]


@pytest.mark.parametrize("n, kc", [("Z/2 * Z/4", "Z/8"), ("Z/3 * Z/9", "1"), ("Z", "Z/2")])
def test_triple_trivial_k(n, kc):
    rep = check_lemma41(TripleSpec(G("1"), G(n), G(kc)), 2)
    assert rep["multipliers"]["G,N"] == rep["multipliers"]["G/K,N/K"]
    assert rep["multipliers"]["G,K"] == "1"
    assert rep["passed"]


def test_triple_infinite_clauses_skipped():
    rep = check_lemma41(TripleSpec(G("Z"), G("Z/2"), G("Z")), 1)
    cl = clause_map(rep)
    assert cl["i"]["skipped"] and cl["i"]["holds"] is None
    assert cl["iii"]["skipped"]
    assert cl["ii"]["holds"] and cl["iv"]["holds"]
    assert rep["passed"]


def test_triple_split():
    tri = TripleSpec.split(G("Z * Z/2 * Z/4"), 2, G("Z/3"))
    assert tri.K == G("Z * Z/2") and tri.L == G("Z/4") and tri.K_complement == G("Z/3")
    assert tri.N == G("Z * Z/2 * Z/4")
    with pytest.raises(ValueError):
        TripleSpec.split(G("Z/2"), 3, G("1"))
    pairs = tri.pairs()
    assert pairs["G,K"].K == G("Z/4 * Z/3")
