import pytest

from fincat.kernel import build_category, build_functor, build_nat_trans, identity_functor


@pytest.fixture
def two():
    return build_category(["0", "1"], [("i", "0", "1")], name="two")


@pytest.fixture
def two_plus_two():
    return build_category(
        ["0", "1", "0'", "1'"],
        [("i", "0", "1"), ("i'", "0'", "1'")],
        name="two_plus_two",
    )


@pytest.fixture
def one_plus_one():
    return build_category(["0", "0'"], [], name="one_plus_one")


@pytest.fixture
def disjoint_inclusion(two_plus_two, one_plus_one):
    """The inclusion of the two arrow sources into two disjoint arrows."""
    return build_functor(
        one_plus_one, two_plus_two, {"0": "0", "0'": "0'"}, {}, name="U"
    )


@pytest.fixture
def chain3():
    return build_category(
        ["p0", "p1", "p2"],
        [("a01", "p0", "p1"), ("a12", "p1", "p2"), ("a02", "p0", "p2")],
        name="chain3",
    )


@pytest.fixture
def upper_chain(chain3):
    return build_category(["p1", "p2"], [("b12", "p1", "p2")], name="upper")


@pytest.fixture
def upper_inclusion(chain3, upper_chain):
    return build_functor(
        upper_chain, chain3, {"p1": "p1", "p2": "p2"}, {"b12": "a12"}, name="U"
    )


@pytest.fixture
def closure(chain3):
    """The monotone map 0 -> 1, 1 -> 1, 2 -> 2 on the 3-chain."""
    return build_functor(
        chain3,
        chain3,
        {"p0": "p1", "p1": "p1", "p2": "p2"},
        {"a01": "id_p1", "a12": "a12", "a02": "a12"},
        name="c",
    )


@pytest.fixture
def closure_unit(chain3, closure):
    return build_nat_trans(
        identity_functor(chain3),
        closure,
        {"p0": "a01", "p1": "id_p1", "p2": "id_p2"},
        name="eta",
    )
