import pytest

from fincat.diagrams import (
    Diagram,
    colimit,
    comma_category,
    creates_limit,
    diagram_from_objects,
    empty_diagram,
    limit,
    shape_library,
    shape_parallel_pair,
    terminal_cones,
)
from fincat.kernel import (
    build_category,
    build_functor,
    identity_functor,
    opposite,
)


class TestLimit:
    def test_empty_diagram_in_arrow_category(self, two):
        res = limit(empty_diagram(two))
        assert res is not None
        assert res[0] == "1"

    def test_empty_diagram_no_terminal_object(self, two_plus_two):
        assert limit(empty_diagram(two_plus_two)) is None

    def test_discrete_meet_in_chain(self, chain3):
        res = limit(diagram_from_objects(chain3, ["p1", "p2"]))
        assert res is not None
        apex, cone = res
        assert apex == "p1"
        assert cone.legs == {"d0": "id_p1", "d1": "a12"}

    def test_limit_of_point_diagram_is_the_object(self, chain3):
        res = limit(diagram_from_objects(chain3, ["p2"]))
        assert res is not None
        assert res[0] == "p2"

    def test_product_needs_lower_bound(self, two_plus_two):
        assert limit(diagram_from_objects(two_plus_two, ["0", "0'"])) is None

    def test_equalizer_of_parallel_identical(self, chain3):
        shape = shape_parallel_pair()
        d = Diagram(
            shape,
            build_functor(
                shape, chain3,
                {"d0": "p0", "d1": "p1"},
                {"u": "a01", "v": "a01"},
            ),
        )
        res = limit(d)
        assert res is not None
        assert res[0] == "p0"


class TestColimit:
    def test_empty_colimit_is_initial(self, two):
        res = colimit(empty_diagram(two))
        assert res is not None
        assert res[0] == "0"

    def test_discrete_join_in_chain(self, chain3):
        res = colimit(diagram_from_objects(chain3, ["p1", "p2"]))
        assert res is not None
        apex, cocone = res
        assert apex == "p2"
        assert cocone.legs == {"d0": "a12", "d1": "id_p2"}

    def test_coequalizer_of_equal_pair(self, chain3):
        shape = shape_parallel_pair()
        d = Diagram(
            shape,
            build_functor(
                shape, chain3,
                {"d0": "p0", "d1": "p1"},
                {"u": "a01", "v": "a01"},
            ),
        )
        res = colimit(d)
        assert res is not None
        apex, cocone = res
        assert apex == "p1"
        assert cocone.legs["d1"] == "id_p1"

    def test_duality_against_limit(self, chain3):
        d = diagram_from_objects(chain3, ["p0", "p2"])
        op = diagram_from_objects(opposite(chain3), ["p0", "p2"])
        lim = limit(d)
        colim_in_op = colimit(op)
        assert lim is not None and colim_in_op is not None
        assert lim[0] == colim_in_op[0] == "p0"


class TestCanonicalization:
    def test_permuted_presentations_give_isomorphic_limits(self):
        a = build_category(
            ["x", "y", "z"],
            [("f", "x", "y"), ("g", "x", "z"), ("h", "x", "x")],
            [("h", "h", "h"), ("f", "h", "f"), ("g", "h", "g")],
        )
        b = build_category(
            ["z", "y", "x"],
            [("g", "x", "z"), ("h", "x", "x"), ("f", "x", "y")],
            [("h", "h", "h"), ("f", "h", "f"), ("g", "h", "g")],
        )
        ra = limit(empty_diagram(a))
        rb = limit(empty_diagram(b))
        assert (ra is None) == (rb is None)
        if ra is not None:
            # same canonical apex regardless of declaration order
            assert ra[0] == rb[0]

    def test_all_terminal_cones_factor_through_each_other(self, chain3):
        d = diagram_from_objects(chain3, ["p1", "p2"])
        terms = terminal_cones(d)
        assert len(terms) == 1


class TestComma:
    def test_empty_comma(self, two_plus_two, disjoint_inclusion):
        c = comma_category("1", disjoint_inclusion)
        assert c.category.objects == ()
        assert limit(empty_diagram(two_plus_two)) is None

    def test_single_object_comma(self, disjoint_inclusion):
        c = comma_category("0", disjoint_inclusion)
        assert len(c.category.objects) == 1
        (obj,) = c.category.objects
        assert c.object_info[obj] == ("0", "id_0")
        assert len(c.category.morphisms) == 1

    def test_chain_comma_has_connecting_morphism(self, upper_inclusion):
        c = comma_category("p0", upper_inclusion)
        assert len(c.category.objects) == 2
        infos = sorted(c.object_info.values())
        assert infos == [("p1", "a01"), ("p2", "a02")]
        non_id = [m for m in c.category.morphisms if not c.category.is_identity(m.name)]
        assert len(non_id) == 1
        assert c.projection.on_mor(non_id[0].name) == "b12"

    def test_projection_is_validated_functor(self, upper_inclusion):
        c = comma_category("p0", upper_inclusion)
        assert c.projection.source == c.category


class TestCreatesLimit:
    def test_identity_creates_everything(self, chain3):
        for shape in shape_library().values():
            if not shape.objects:
                v = creates_limit(identity_functor(chain3), empty_diagram(chain3))
                assert v.ok
        v = creates_limit(
            identity_functor(chain3), diagram_from_objects(chain3, ["p1", "p2"])
        )
        assert v.ok

    def test_creation_fails_when_nothing_above(self, two):
        point = build_category(["x"], [], name="point")
        u = build_functor(point, two, {"x": "0"}, {})
        v = creates_limit(u, empty_diagram(point))
        assert not v.ok
        assert "lifts" in v.reason

    def test_disjoint_inclusion_creates_library_limits(
        self, one_plus_one, disjoint_inclusion
    ):
        from fincat.kernel import enumerate_functors

        for shape in shape_library().values():
            for f in enumerate_functors(shape, one_plus_one):
                v = creates_limit(disjoint_inclusion, Diagram(shape, f))
                assert v.ok, (shape.name, f.object_map, v.reason)

    def test_shape_library_contents(self):
        lib = shape_library()
        assert set(lib) == {
            "empty", "point", "discrete2", "discrete3",
            "parallel_pair", "span", "cospan",
        }
        assert shape_library(["empty", "span"]).keys() == {"empty", "span"}
        with pytest.raises(ValueError):
            shape_library(["nope"])
