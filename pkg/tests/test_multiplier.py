import itertools
import logging
import random
from math import comb

import pytest

from nilmult import multiplier as mp
from nilmult.errors import PipelineDisagreement, ResourceLimitError
from nilmult.groups import AbelianStructure, FgAbelianGroup, PairSpec, parse_group_spec as G
from nilmult.grid import chain_pairs
from nilmult.multiplier import (
    MultiplierRequest,
    closed_form,
    count_general,
    lemma23_basis,
    lemma23_verify,
    nilpotent_multiplier,
    oracle,
    pair_multiplier,
    schur_multiplier,
)
from oracles import classical_schur


def req(n, k, c, **kw):
    return MultiplierRequest(PairSpec(G(n), G(k)), c, **kw)


def struct(spec):
    g = G(spec)
    return AbelianStructure(g.free_rank, g.invariant_factors)


def test_closed_form_examples():
    assert closed_form(req("Z/2", "Z/2", 1)) == struct("Z/2")
    assert closed_form(req("Z^2", "1", 2)) == struct("Z^2")
    for k in ("Z/6", "Z^3 * Z/2", "1"):
        for c in (1, 2, 3):
            assert closed_form(req("1", k, c)).is_trivial


def test_closed_form_multiplicities_z2_z2():
    # f1 = chi_2(2) - chi_2(1) = 1, f2 - g2 = (chi_2(1) - chi_2(0)) - (chi_2(1) - chi_2(0)) = 0
    r = closed_form(req("Z/2", "Z/2", 1))
    assert r.primary_form == (2,) and r.labels == ("x1",)


def test_closed_form_falls_back_off_chain(caplog):
    with caplog.at_level(logging.WARNING):
        r = closed_form(req("Z/4", "Z/2", 1))
    assert "chain" in caplog.text
    assert r == count_general(req("Z/4", "Z/2", 1))


def test_count_general_examples():
    assert count_general(req("Z/4 * Z/16", "Z/8 * Z/32", 1)) == struct("Z/4 * Z/4 * Z/4 * Z/8 * Z/16")
    r = count_general(req("Z/2 * Z/4", "1", 1))
    assert r == struct("Z/2") and r.labels == ("[x2,x1]",)
    assert count_general(req("Z/2", "Z/3", 1)).is_trivial


def test_oracle_examples():
    assert oracle(req("Z/2", "Z/2", 1)) == struct("Z/2")
    assert oracle(req("1", "Z/4 * Z", 2)).is_trivial
    assert oracle(req("Z", "Z", 1)) == struct("Z")


def test_pair_multiplier_examples():
    result, report = pair_multiplier(req("Z/2 * Z/2", "1", 1), verify=True)
    assert result == struct("Z/2")
    assert report["agree"] and report["ran"] == ["closed_form", "count_general", "oracle"]
    assert pair_multiplier(req("Z/4", "Z/4", 2), verify=True)[0] == struct("Z/4 * Z/4")
    assert pair_multiplier(req("1", "1", 3), verify=True)[0].is_trivial


def test_pair_multiplier_off_chain_skips_closed_form():
    _, report = pair_multiplier(req("Z/3", "Z/2", 1), verify=True)
    assert report["ran"] == ["count_general", "oracle"]
    assert report["results"]["closed_form"] is None


def test_disagreement_is_fatal(monkeypatch):
    monkeypatch.setattr(mp, "oracle", lambda r: AbelianStructure(5))
    with pytest.raises(PipelineDisagreement) as info:
        pair_multiplier(req("Z/2", "Z/2", 1), verify=True)
    assert set(info.value.results) == {"closed_form", "count_general", "oracle"}


def test_nilpotent_multiplier_examples():
    assert nilpotent_multiplier(G("Z/2 * Z/4 * Z/8"), 1, verify=True) == struct("Z/2 * Z/2 * Z/4")
    for dd in range(1, 5):
        assert nilpotent_multiplier(FgAbelianGroup(dd), 1, verify=True) == AbelianStructure(comb(dd, 2))
    for r in (2, 5, 12):
        for c in (1, 2, 3):
            assert nilpotent_multiplier(FgAbelianGroup(0, (r,)), c).is_trivial
    assert schur_multiplier(G("Z/2 * Z/2")) == struct("Z/2")


def test_schur_matches_classical_formula_with_free_part():
    for spec in ("Z * Z/2", "Z^2 * Z/3 * Z/6", "Z^3 * Z/4", "Z/2 * Z/4 * Z/4"):
        g = G(spec)
        free, orders = classical_schur(g.free_rank, g.invariant_factors)
        assert nilpotent_multiplier(g, 1, verify=True) == AbelianStructure(free, tuple(orders))


def test_torsion_basis_examples():
    assert lemma23_verify(req("Z/2", "Z/4", 1)) == (True, None)
    assert lemma23_verify(req("Z/2 * Z/4", "1", 2)) == (True, None)
    assert lemma23_verify(req("Z", "Z", 1)) == (True, None)
    assert lemma23_basis(req("Z", "Z", 1)) == []


def test_torsion_basis_requires_chain():
    with pytest.raises(ValueError):
        lemma23_verify(req("Z/4", "Z/2", 1))


def test_torsion_basis_detects_a_wrong_basis(monkeypatch):
    original = mp.lemma23_basis
    monkeypatch.setattr(mp, "lemma23_basis", lambda r: original(r)[1:])
    ok, witness = lemma23_verify(req("Z/2 * Z/4", "1", 1))
    assert not ok and witness["row"] == 0


def test_resource_guards():
    big = req("Z^6", "Z/2 * Z/4", 5, max_dim=100)
    with pytest.raises(ResourceLimitError) as info:
        oracle(big)
    assert info.value.predicted == big.ambient_dim
    with pytest.raises(ResourceLimitError):
        count_general(big)
    with pytest.raises(ResourceLimitError):
        oracle(req("Z^3", "Z/2", 4, max_tuples=100))
    with pytest.raises(ValueError):
        req("Z", "Z", 0)


@pytest.mark.parametrize("c, k", [(1, 4), (2, 3)])
def test_three_way_agreement_sample(c, k):
    for pair in itertools.islice(chain_pairs(k), 0, None, 7):
        r = MultiplierRequest(pair, c)
        assert closed_form(r) == count_general(r) == oracle(r), pair


def test_counting_agrees_with_oracle_off_chain():
    rng = random.Random(5)
    pool = (2, 3, 4, 5, 6, 8, 9, 10, 12, 15)
    for _ in range(40):
        n_orders = [rng.choice(pool) for _ in range(rng.randint(0, 2))]
        k_orders = [rng.choice(pool) for _ in range(rng.randint(0, 2))]
        pair = PairSpec(FgAbelianGroup.from_json({"free_rank": rng.randint(0, 1), "torsion": n_orders}),
                        FgAbelianGroup.from_json({"free_rank": rng.randint(0, 1), "torsion": k_orders}))
        c = rng.randint(1, 2)
        r = MultiplierRequest(pair, c)
        assert count_general(r) == oracle(r), (pair, c)


def test_oracle_independent_of_generator_order():
    rng = random.Random(9)
    for n, k, c in [("Z * Z/2", "Z/4", 2), ("Z/2 * Z/6", "Z/3 * Z", 1), ("Z/4 * Z/8", "Z/2", 2), ("Z^2", "Z/3", 2)]:
        r = req(n, k, c)
        base = oracle(r)
        for _ in range(3):
            order = list(r.pair.generators)
            rng.shuffle(order)
            assert oracle(r, order) == base, order


def test_adding_free_summand_to_n_never_lowers_free_rank():
    for pair in itertools.islice(chain_pairs(3), 0, None, 5):
        bigger = PairSpec(pair.N + FgAbelianGroup(1), pair.K)
        for c in (1, 2):
            assert count_general(MultiplierRequest(bigger, c)).free_rank >= count_general(MultiplierRequest(pair, c)).free_rank


def test_triviality_criterion():
    for pair in chain_pairs(3):
        for c in (1, 2):
            trivial = count_general(MultiplierRequest(pair, c)).is_trivial
            if pair.N.is_trivial:
                assert trivial
            elif pair.K.is_trivial:
                cyclic = (pair.N.free_rank + len(pair.N.invariant_factors)) == 1
                assert trivial == cyclic, (pair, c)
