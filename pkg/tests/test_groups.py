import math
import random

import pytest
from hypothesis import given, strategies as st

from nilmult.errors import ParseError
from nilmult.groups import (
    AbelianStructure,
    FgAbelianGroup,
    PairSpec,
    d,
    direct_sum,
    exp,
    invariant_factors,
    normalize,
    order,
    parse_group_spec,
)
from oracles import element_order_histogram


def test_normalize_examples():
    assert normalize([4, 2, 8]).invariant_factors == (2, 4, 8)
    assert normalize([2, 3]).invariant_factors == (6,)
    assert normalize([4, 2, 8, 3]).invariant_factors == (2, 4, 24)


def test_normalize_example_by_brute_force():
    assert element_order_histogram([4, 2, 8, 3]) == element_order_histogram([2, 4, 24])


def test_normalize_rejects_small_orders():
    with pytest.raises(ValueError):
        normalize([2, 1])


orders = st.lists(st.integers(2, 64), max_size=5)


@given(orders, st.randoms(use_true_random=False))
def test_normalize_idempotent_and_order_free(rs, rnd):
    g = normalize(rs)
    assert normalize(g.invariant_factors) == g
    shuffled = list(rs)
    rnd.shuffle(shuffled)
    assert normalize(shuffled) == g


def test_normalize_preserves_isomorphism_type():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        rs = [rng.randint(2, 64) for _ in range(rng.randint(1, 5))]
        if math.prod(rs) > 10**5:
            continue
        assert element_order_histogram(rs) == element_order_histogram(normalize(rs).invariant_factors), rs
        checked += 1


@given(orders)
def test_d_counts_largest_prime_rank(rs):
    primes = {p for r in rs for p in range(2, r + 1) if r % p == 0 and all(p % q for q in range(2, p))}
    expected = max((sum(1 for r in rs if r % p == 0) for p in primes), default=0)
    assert d(normalize(rs)) == expected


def test_invariants_of_examples():
    g = FgAbelianGroup(0, (2, 4, 8))
    assert (d(g), exp(g), order(g)) == (3, 8, 64)
    t = FgAbelianGroup()
    assert (d(t), exp(t), order(t)) == (0, 1, 1)
    z = FgAbelianGroup(2, (6,))
    assert (d(z), exp(z), order(z)) == (3, 0, math.inf)


def test_group_validation():
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        FgAbelianGroup(-1)


@pytest.mark.parametrize(
    "text, free, factors",
    [
        ("Z^2 * Z/4 * Z/12", 2, (4, 12)),
        ("1", 0, ()),
        ("Z/6 * Z/4", 0, (2, 12)),
        (" Z * Z ", 2, ()),
        ("Z^0*Z/2", 0, (2,)),
    ],
)
def test_parse(text, free, factors):
    assert parse_group_spec(text) == FgAbelianGroup(free, factors)


@pytest.mark.parametrize("text", ["", "Z/1", "Z^-1", "Q", "Z/4 *", "Z/4 Z/2", "Z/x", "2"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_group_spec(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_group_spec("Z/4 * Z/1")
    assert info.value.position == 6


@given(st.integers(0, 4), orders)
def test_print_parse_roundtrip(free, rs):
    g = normalize(rs, free)
    assert parse_group_spec(str(g)) == g


def test_json_roundtrip():
    g = FgAbelianGroup.from_json({"free_rank": 1, "torsion": [12, 4]})
    assert g == FgAbelianGroup(1, (4, 12))
    assert FgAbelianGroup.from_json(g.to_json()) == g


def test_direct_sum():
    assert direct_sum(parse_group_spec("Z/2"), parse_group_spec("Z/3"), parse_group_spec("Z")) == FgAbelianGroup(1, (6,))


def test_pair_alphabet():
    pair = PairSpec(parse_group_spec("Z^2 * Z/2 * Z/4"), parse_group_spec("Z * Z/8"))
    assert (pair.l, pair.s, pair.m, pair.t, pair.n) == (2, 1, 3, 2, 3)
    assert pair.Y1 == ("y1", "y2") and pair.Y2 == ("y3",)
    assert pair.X1 == ("x1", "x2") and pair.X2 == ("x3",)
    assert pair.generators == ("y1", "y2", "y3", "x1", "x2", "x3")
    assert pair.orders == {"y1": 0, "y2": 0, "y3": 0, "x1": 2, "x2": 4, "x3": 8}
    assert pair.n_part == {"y1", "y2", "x1", "x2"}
    assert pair.has_global_chain()
    assert not PairSpec(parse_group_spec("Z/4"), parse_group_spec("Z/2")).has_global_chain()
    assert pair.G == FgAbelianGroup(3, (2, 4, 8))


def test_pair_custom_order():
    pair = PairSpec(parse_group_spec("Z/2"), parse_group_spec("Z"))
    assert pair.alphabet(["x1", "y1"]).symbols == ("x1", "y1")
    with pytest.raises(ValueError):
        pair.alphabet(["x1"])


def test_abelian_structure_equality_is_canonical():
    a = AbelianStructure(1, (2, 3), ("a", "b"))
    b = AbelianStructure(1, (6,))
    assert a == b and hash(a) == hash(b)
    assert a.canonical == FgAbelianGroup(1, (6,))
    assert a.to_json() == {"free_rank": 1, "torsion_primary": [2, 3], "invariant_factors": [6]}
    assert AbelianStructure(0).is_trivial
    with pytest.raises(ValueError):
        AbelianStructure(0, (2,), ("a", "b"))


def test_invariant_factors_empty():
    assert invariant_factors([]) == ()
