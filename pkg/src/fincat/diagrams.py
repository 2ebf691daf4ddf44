"""Diagrams, cones, limits and colimits by exhaustive search, comma
categories, and limit-creation checks.

Limits are found by enumerating every cone over a diagram and verifying
terminality by enumerating every factorization; the canonical choice
among isomorphic limits is the first in lexicographic cone order
(apex first, then legs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .kernel import (
    FinCategory,
    Functor,
    Morphism,
    Verdict,
    build_functor,
    compose_functors,
    opposite,
    opposite_functor,
)


@dataclass(frozen=True)
class Diagram:
    """A shape category together with a functor out of it."""

    shape: FinCategory
    functor: Functor

    def __post_init__(self):
        if self.functor.source != self.shape:
            raise ValueError("diagram functor does not start at the shape")

    @property
    def target(self) -> FinCategory:
        return self.functor.target


@dataclass
class Cone:
    """An apex with one leg into each diagram value, commuting with the
    diagram's arrows."""

    apex: str
    diagram: Diagram
    legs: dict[str, str]


@dataclass
class Cocone:
    apex: str
    diagram: Diagram
    legs: dict[str, str]


def all_cones(d: Diagram) -> list[Cone]:
    """Every cone over the diagram, in canonical order."""
    cat = d.target
    shape_objs = d.shape.sorted_objects()
    cones = []
    for apex in cat.sorted_objects():
        lists = [cat.hom(apex, d.functor.on_obj(x)) for x in shape_objs]
        if any(not l for l in lists):
            continue
        for choice in iproduct(*lists):
            legs = dict(zip(shape_objs, choice))
            if _is_cone(d, apex, legs):
                cones.append(Cone(apex, d, legs))
    return cones


def _is_cone(d: Diagram, apex: str, legs: dict[str, str]) -> bool:
    cat = d.target
    for m in d.shape.morphisms:
        if cat.compose(d.functor.on_mor(m.name), legs[m.source]) != legs[m.target]:
            return False
    return True


def factorizations(cand: Cone, other: Cone) -> list[str]:
    """Morphisms u: other.apex -> cand.apex with cand.legs . u = other.legs."""
    cat = cand.diagram.target
    result = []
    for u in cat.hom(other.apex, cand.apex):
        if all(
            cat.compose(cand.legs[x], u) == other.legs[x]
            for x in cand.diagram.shape.objects
        ):
            result.append(u)
    return result


def terminal_cones(d: Diagram) -> list[Cone]:
    """All limiting cones: every cone factors through them uniquely."""
    cones = all_cones(d)
    return [
        c for c in cones
        if all(len(factorizations(c, other)) == 1 for other in cones)
    ]


def limit(d: Diagram) -> tuple[str, Cone] | None:
    """The canonical limiting cone, or None when no limit exists."""
    terminal = terminal_cones(d)
    if not terminal:
        return None
    best = terminal[0]
    return best.apex, best


def colimit(d: Diagram) -> tuple[str, Cocone] | None:
    """The canonical colimiting cocone, computed as a limit in the duals."""
    op = Diagram(opposite(d.shape), opposite_functor(d.functor))
    res = limit(op)
    if res is None:
        return None
    apex, cone = res
    return apex, Cocone(apex, d, dict(cone.legs))


def empty_diagram(cat: FinCategory) -> Diagram:
    shape = FinCategory((), (), {}, {}, name="empty")
    return Diagram(shape, Functor(shape, cat, {}, {}, name="empty"))


def diagram_from_objects(cat: FinCategory, objs: list[str]) -> Diagram:
    """Discrete diagram selecting the given objects."""
    shape = shape_discrete(len(objs))
    omap = {f"d{i}": o for i, o in enumerate(objs)}
    mmap = {shape.id_of(x): cat.id_of(omap[x]) for x in shape.objects}
    return Diagram(shape, Functor(shape, cat, omap, mmap))


# -- shape library ---------------------------------------------------------

def shape_empty() -> FinCategory:
    return FinCategory((), (), {}, {}, name="empty")


def shape_point() -> FinCategory:
    from .kernel import build_category

    return build_category(["d0"], [], name="point")


def shape_discrete(n: int) -> FinCategory:
    from .kernel import build_category

    return build_category([f"d{i}" for i in range(n)], [], name=f"discrete{n}")


def shape_parallel_pair() -> FinCategory:
    from .kernel import build_category

    return build_category(
        ["d0", "d1"], [("u", "d0", "d1"), ("v", "d0", "d1")], name="parallel_pair"
    )


def shape_span() -> FinCategory:
    from .kernel import build_category

    return build_category(
        ["d0", "d1", "d2"], [("l", "d0", "d1"), ("r", "d0", "d2")], name="span"
    )


def shape_cospan() -> FinCategory:
    from .kernel import build_category

    return build_category(
        ["d0", "d1", "d2"], [("l", "d0", "d2"), ("r", "d1", "d2")], name="cospan"
    )


SHAPE_LIBRARY: dict[str, FinCategory] = {}


def shape_library(names: list[str] | None = None) -> dict[str, FinCategory]:
    """The fixed library of shapes used by "creates all limits" checks:
    empty, point, discrete 2, discrete 3, parallel pair, span, cospan."""
    if not SHAPE_LIBRARY:
        SHAPE_LIBRARY.update(
            {
                "empty": shape_empty(),
                "point": shape_point(),
                "discrete2": shape_discrete(2),
                "discrete3": shape_discrete(3),
                "parallel_pair": shape_parallel_pair(),
                "span": shape_span(),
                "cospan": shape_cospan(),
            }
        )
    if names is None:
        return dict(SHAPE_LIBRARY)
    unknown = [n for n in names if n not in SHAPE_LIBRARY]
    if unknown:
        raise ValueError(f"unknown shapes: {unknown}; known: {sorted(SHAPE_LIBRARY)}")
    return {n: SHAPE_LIBRARY[n] for n in names}


# -- comma categories ------------------------------------------------------

def comma_object_name(x: str, f: str) -> str:
    return f"<{x},{f}>"


def comma_morphism_name(h: str, src: str) -> str:
    return f"{h}@{src}"


@dataclass
class CommaCategory:
    """The category of arrows A -> U(X) and commuting triangles.

    ``object_info`` maps each comma object name back to its pair
    (X, f: A -> U X); ``projection`` is the forgetful functor to the
    source of U.
    """

    base_object: str
    functor: Functor
    category: FinCategory
    projection: Functor
    object_info: dict[str, tuple[str, str]] = field(default_factory=dict)


def comma_category(a: str, u: Functor) -> CommaCategory:
    """All pairs (X, f: a -> U X) with the morphisms of U's source that
    make the evident triangles commute. The empty result is legal."""
    dom, base = u.source, u.target
    if a not in base.objects:
        raise ValueError(f"{a!r} is not an object of {base.describe()}")

    objects = []
    info: dict[str, tuple[str, str]] = {}
    for x in dom.sorted_objects():
        for f in base.hom(a, u.on_obj(x)):
            name = comma_object_name(x, f)
            objects.append(name)
            info[name] = (x, f)

    morphisms = []
    identity = {}
    proj_mor = {}
    for src in objects:
        x, f = info[src]
        for h in dom.out_of(x):
            g = base.compose(u.on_mor(h.name), f)
            tgt = comma_object_name(h.target, g)
            if tgt not in info:
                continue
            name = comma_morphism_name(h.name, src)
            morphisms.append(Morphism(name, src, tgt))
            proj_mor[name] = h.name
            if h.name == dom.id_of(x):
                identity[src] = name

    composition = {}
    m_by_name = {m.name: m for m in morphisms}
    for m1 in morphisms:
        for m2 in morphisms:
            if m_by_name[m1.name].target != m_by_name[m2.name].source:
                continue
            comp = dom.compose(proj_mor[m2.name], proj_mor[m1.name])
            composition[(m2.name, m1.name)] = comma_morphism_name(comp, m1.source)

    cat = FinCategory(objects, morphisms, identity, composition, name=f"({a} | {u.describe()})")
    projection = Functor(
        cat, dom,
        {o: info[o][0] for o in objects},
        proj_mor,
        name=f"Q_{a}",
    )
    return CommaCategory(a, u, cat, projection, info)


# -- limit creation --------------------------------------------------------

def lifts_of_cone(u: Functor, d: Diagram, base_cone: Cone) -> list[Cone]:
    """Cones over d whose image under u is exactly base_cone."""
    cat = d.target
    shape_objs = d.shape.sorted_objects()
    result = []
    for apex in cat.sorted_objects():
        if u.on_obj(apex) != base_cone.apex:
            continue
        lists = []
        feasible = True
        for x in shape_objs:
            cands = [
                m for m in cat.hom(apex, d.functor.on_obj(x))
                if u.on_mor(m) == base_cone.legs[x]
            ]
            if not cands:
                feasible = False
                break
            lists.append(cands)
        if not feasible:
            continue
        for choice in iproduct(*lists):
            legs = dict(zip(shape_objs, choice))
            if _is_cone(d, apex, legs):
                result.append(Cone(apex, d, legs))
    return result


def creates_limit(u: Functor, d: Diagram) -> Verdict:
    """Strict creation: for every limiting cone of u . d downstairs there
    is exactly one cone upstairs mapping onto it, and that cone is a
    limit. Vacuously true when u . d has no limit."""
    if d.target != u.source:
        raise ValueError("diagram does not live in the functor's source")
    base_diagram = Diagram(d.shape, compose_functors(u, d.functor))
    base_terminals = terminal_cones(base_diagram)
    if not base_terminals:
        return Verdict(True, reason="no limit downstairs; creation is vacuous")

    upstairs = all_cones(d)
    for base_cone in base_terminals:
        lifts = lifts_of_cone(u, d, base_cone)
        if len(lifts) != 1:
            return Verdict(
                False,
                witness=(base_cone.apex, len(lifts)),
                reason=(
                    f"limiting cone at {base_cone.apex!r} downstairs has "
                    f"{len(lifts)} lifts, wanted exactly 1"
                ),
            )
        lifted = lifts[0]
        if any(len(factorizations(lifted, other)) != 1 for other in upstairs):
            return Verdict(
                False,
                witness=lifted.apex,
                reason=f"unique lift at {lifted.apex!r} is not a limiting cone",
            )
    return Verdict(True)
