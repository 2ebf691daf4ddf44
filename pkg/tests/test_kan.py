import pytest

from fincat.diagrams import diagram_from_objects, empty_diagram, limit
from fincat.errors import MissingCommaLimit, SearchSpaceExceeded
from fincat.kan import (
    adjunction,
    build_monad,
    codensity_monad,
    identity_monad,
    is_pointwise,
    is_pointwise_hom,
    left_adjoint,
    right_kan,
    right_kan_pointwise,
    right_kan_search,
    universal_arrow,
    verify_universality,
)
from fincat.kernel import (
    build_category,
    build_functor,
    build_nat_trans,
    compose_functors,
    functor_power,
    identity_functor,
    identity_nat,
)


class TestRightKanSearch:
    def test_identity_extension(self, chain3):
        i = identity_functor(chain3)
        res = right_kan_search(i, i)
        assert res is not None
        assert res.extension == i
        assert res.counit == identity_nat(i)
        assert res.pointwise

    def test_trivial_extension_on_disjoint_arrows(
        self, two_plus_two, disjoint_inclusion
    ):
        u = disjoint_inclusion
        res = right_kan_search(u, u)
        assert res is not None
        assert res.extension == identity_functor(two_plus_two)
        assert not res.pointwise

    def test_closure_is_the_extension_for_upper_inclusion(
        self, chain3, upper_inclusion, closure
    ):
        u = upper_inclusion
        res = right_kan_search(u, u)
        assert res is not None
        assert res.extension == closure
        assert res.pointwise

    def test_budget_is_enforced(self, chain3):
        i = identity_functor(chain3)
        with pytest.raises(SearchSpaceExceeded):
            right_kan_search(i, i, budget=3)


class TestRightKanPointwise:
    def test_identity(self, chain3):
        i = identity_functor(chain3)
        res = right_kan_pointwise(i, i)
        assert res is not None
        assert res.extension == i

    def test_upper_inclusion_gives_closure(self, upper_inclusion, closure):
        res = right_kan_pointwise(upper_inclusion, upper_inclusion)
        assert res is not None
        assert res.extension == closure
        assert res.pointwise

    def test_missing_comma_limit_on_disjoint_arrows(self, disjoint_inclusion):
        assert right_kan_pointwise(disjoint_inclusion, disjoint_inclusion) is None
        with pytest.raises(MissingCommaLimit) as exc:
            right_kan_pointwise(disjoint_inclusion, disjoint_inclusion, strict=True)
        assert exc.value.base_object in {"1", "1'"}

    def test_cross_check_fills_certificate(self, upper_inclusion):
        res = right_kan_pointwise(
            upper_inclusion, upper_inclusion, cross_check_budget=10_000
        )
        assert res is not None
        assert res.certificate is not None
        assert len(res.certificate) > 0

    def test_agrees_with_search(self, upper_inclusion):
        a = right_kan_pointwise(upper_inclusion, upper_inclusion)
        b = right_kan_search(upper_inclusion, upper_inclusion)
        assert a is not None and b is not None
        assert a.extension == b.extension
        assert a.counit == b.counit


class TestPointwiseness:
    def test_identity_extension_is_pointwise(self, chain3):
        i = identity_functor(chain3)
        res = right_kan_search(i, i)
        assert is_pointwise(res, i, i)
        assert is_pointwise_hom(res, i, i)

    def test_trivial_extension_is_not_pointwise(self, disjoint_inclusion):
        u = disjoint_inclusion
        res = right_kan_search(u, u)
        assert not is_pointwise(res, u, u)
        assert not is_pointwise_hom(res, u, u)

    def test_chain_closure_extension_is_pointwise(self, upper_inclusion):
        u = upper_inclusion
        res = right_kan_pointwise(u, u)
        assert is_pointwise(res, u, u)
        assert is_pointwise_hom(res, u, u)

    def test_criteria_agree_on_small_instances(self, chain3, upper_inclusion):
        for s, u in [
            (identity_functor(chain3), identity_functor(chain3)),
            (upper_inclusion, upper_inclusion),
        ]:
            res = right_kan(s, u)
            assert is_pointwise(res, s, u) == is_pointwise_hom(res, s, u)


class TestLimitsAsKanExtensions:
    def test_limit_agrees_with_kan_along_terminal_functor(self, chain3):
        point = build_category(["*"], [], name="point")
        d = diagram_from_objects(chain3, ["p1", "p2"])
        t = build_functor(d.shape, point, {x: "*" for x in d.shape.objects}, {})
        res = right_kan_search(d.functor, t)
        lim = limit(d)
        assert res is not None and lim is not None
        assert res.extension.on_obj("*") == lim[0]
        # counit components are exactly the limiting legs
        assert {x: res.counit.at(x) for x in d.shape.objects} == lim[1].legs

    def test_no_limit_no_kan(self, two_plus_two):
        point = build_category(["*"], [], name="point")
        d = empty_diagram(two_plus_two)
        t = build_functor(d.shape, point, {}, {})
        assert right_kan_search(d.functor, t) is None
        assert limit(d) is None


class TestUniversalArrow:
    def test_identity_functor_universal_arrow(self, chain3):
        assert universal_arrow("p1", identity_functor(chain3)) == ("p1", "id_p1")

    def test_no_universal_arrow_for_arrow_target(self, disjoint_inclusion):
        assert universal_arrow("1", disjoint_inclusion) is None

    def test_least_upper_element(self, upper_inclusion):
        assert universal_arrow("p0", upper_inclusion) == ("p1", "a01")


class TestAdjoint:
    def test_identity_adjoint(self, chain3):
        i = identity_functor(chain3)
        assert left_adjoint(i) == i

    def test_no_adjoint_for_disjoint_inclusion(self, disjoint_inclusion):
        assert left_adjoint(disjoint_inclusion) is None

    def test_closure_corestriction_is_the_adjoint(self, upper_inclusion, chain3):
        l = left_adjoint(upper_inclusion)
        assert l is not None
        assert l.object_map == {"p0": "p1", "p1": "p1", "p2": "p2"}
        # composite with the inclusion is the closure endomap
        c = compose_functors(upper_inclusion, l)
        assert c.on_obj("p0") == "p1"

    def test_adjunction_monad_equals_codensity(self, upper_inclusion):
        adj = adjunction(upper_inclusion)
        cod = codensity_monad(upper_inclusion)
        assert adj is not None and cod is not None
        induced = adj.induced_monad()
        assert induced.functor == cod.monad.functor
        assert induced.unit == cod.monad.unit
        assert induced.mult == cod.monad.mult
        assert cod.pointwise


class TestMonadLaws:
    def test_identity_monad(self, chain3):
        m = identity_monad(chain3)
        assert m.functor == identity_functor(chain3)

    def test_closure_monad_laws(self, chain3, closure, closure_unit):
        cc = functor_power(closure, 2)
        mu = build_nat_trans(
            cc, closure, {"p0": "id_p1", "p1": "id_p1", "p2": "id_p2"}
        )
        m = build_monad(closure, closure_unit, mu)
        assert m.functor == closure

    def test_broken_unit_rejected(self, chain3, closure):
        from fincat.errors import LawViolation

        cc = functor_power(closure, 2)
        mu = build_nat_trans(cc, closure, {"p0": "id_p1", "p1": "id_p1", "p2": "id_p2"})
        # a unit for the wrong functor pair
        bad_unit = identity_nat(identity_functor(chain3))
        with pytest.raises(LawViolation):
            build_monad(closure, bad_unit, mu)


class TestCodensity:
    def test_identity_codensity(self, chain3):
        i = identity_functor(chain3)
        res = codensity_monad(i)
        assert res is not None
        assert res.monad.functor == i
        assert res.pointwise

    def test_trivial_codensity_not_pointwise(self, two_plus_two, disjoint_inclusion):
        res = codensity_monad(disjoint_inclusion)
        assert res is not None
        assert res.monad.functor == identity_functor(two_plus_two)
        assert res.monad.unit == identity_nat(identity_functor(two_plus_two))
        assert not res.pointwise

    def test_closure_codensity(self, upper_inclusion, closure, closure_unit):
        res = codensity_monad(upper_inclusion)
        assert res is not None
        assert res.monad.functor == closure
        assert res.monad.unit == closure_unit
        assert res.pointwise

    def test_universality_certificate_of_codensity(self, upper_inclusion):
        res = codensity_monad(upper_inclusion)
        cert = verify_universality(
            res.ran.extension, res.ran.counit, upper_inclusion, upper_inclusion
        )
        assert cert
