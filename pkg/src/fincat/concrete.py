"""Concrete categories over a base and their limits.

A concrete category is a total category with a faithful forgetful
functor; concrete functors commute with the forgetful functors on the
nose. Products are computed fibre-wise, equalizers as agreement
subcategories, and general limits as compatible families inside the
fibre-wise product. The Beck property (the forgetful functor creates
limits and coequalizers of absolute pairs) is checked over a bounded
shape library, with split forks as the decidable proxy for absolute
pairs, and creation meant strictly (unique lifts on the nose).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product as iproduct

from .diagrams import Diagram, creates_limit, shape_library
from .errors import LawViolation, NotFAlgebraic, SearchSpaceExceeded
from .kernel import (
    FinCategory,
    Functor,
    Morphism,
    Verdict,
    build_functor,
    check_faithful,
    compose_functors,
    identity_functor,
)

DEFAULT_ISO_BUDGET = 200_000


@dataclass
class AlgebraTag:
    """Construction tag carried by categories of functor algebras:
    the endofunctor and, per total object, the structure morphism."""

    endofunctor: Functor
    structures: dict[str, str]


@dataclass
class ConcreteCategory:
    total: FinCategory
    forgetful: Functor
    base: FinCategory
    name: str = ""
    algebra_tag: AlgebraTag | None = None
    l_algebraic: bool = False
    homogenous: bool = False

    def fibre(self, a: str) -> tuple[str, ...]:
        return tuple(
            x for x in self.total.sorted_objects() if self.forgetful.on_obj(x) == a
        )

    def describe(self) -> str:
        return self.name or self.total.describe()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConcreteCategory):
            return NotImplemented
        return (
            self.total == other.total
            and self.forgetful == other.forgetful
            and self.base == other.base
        )

    def __hash__(self) -> int:
        return hash((self.total, self.forgetful, self.base))


def concrete_category(
    total: FinCategory,
    forgetful: Functor,
    base: FinCategory,
    name: str = "",
    algebra_tag: AlgebraTag | None = None,
    l_algebraic: bool = False,
    homogenous: bool = False,
) -> ConcreteCategory:
    if forgetful.source != total or forgetful.target != base:
        raise LawViolation("forgetful functor endpoints do not match total and base")
    verdict = check_faithful(forgetful)
    if not verdict.ok:
        raise LawViolation(f"forgetful functor is not faithful: {verdict.reason}")
    return ConcreteCategory(
        total, forgetful, base, name, algebra_tag, l_algebraic, homogenous
    )


def base_as_concrete(base: FinCategory, name: str = "") -> ConcreteCategory:
    """The terminal concrete category over the base: the base itself."""
    return concrete_category(
        base,
        identity_functor(base),
        base,
        name=name or base.name,
        l_algebraic=True,
    )


@dataclass
class ConcreteFunctor:
    source: ConcreteCategory
    target: ConcreteCategory
    functor: Functor
    name: str = ""

    def describe(self) -> str:
        return self.name or self.functor.describe()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConcreteFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.functor == other.functor
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.functor))


def concrete_functor(
    source: ConcreteCategory,
    target: ConcreteCategory,
    functor: Functor,
    name: str = "",
) -> ConcreteFunctor:
    if functor.source != source.total or functor.target != target.total:
        raise LawViolation("functor endpoints do not match the concrete categories")
    if compose_functors(target.forgetful, functor) != source.forgetful:
        raise LawViolation(
            f"{name or functor.describe()} does not commute with the forgetful functors"
        )
    return ConcreteFunctor(source, target, functor, name)


def identity_concrete_functor(cc: ConcreteCategory) -> ConcreteFunctor:
    return ConcreteFunctor(cc, cc, identity_functor(cc.total))


def concrete_inclusion(sub: ConcreteCategory, sup: ConcreteCategory) -> ConcreteFunctor:
    f = build_functor(
        sub.total,
        sup.total,
        {x: x for x in sub.total.objects},
        {m.name: m.name for m in sub.total.morphisms},
    )
    return concrete_functor(sub, sup, f)


# -- fibre-wise products -----------------------------------------------------

def tuple_name(parts: tuple[str, ...]) -> str:
    return "(" + ",".join(parts) + ")"


@dataclass
class ProductResult:
    category: ConcreteCategory
    projections: list[ConcreteFunctor]
    obj_components: dict[str, tuple[str, ...]]
    mor_components: dict[str, tuple[str, ...]]


def concrete_product(
    factors: list[ConcreteCategory], base: FinCategory | None = None
) -> ProductResult:
    """Fibre-wise product: the fibre over each base object is the
    product of the factor fibres, and likewise for morphisms over each
    base morphism. The empty product is the base itself."""
    if factors:
        base = factors[0].base
        for f in factors[1:]:
            if f.base != base:
                raise ValueError("concrete product needs a common base")
    elif base is None:
        raise ValueError("empty product needs an explicit base")

    if not factors:
        cc = base_as_concrete(base)
        return ProductResult(
            cc,
            [],
            {a: () for a in base.objects},
            {m.name: () for m in base.morphisms},
        )
    if len(factors) == 1:
        cc = factors[0]
        return ProductResult(
            cc,
            [identity_concrete_functor(cc)],
            {x: (x,) for x in cc.total.objects},
            {m.name: (m.name,) for m in cc.total.morphisms},
        )

    objects = []
    obj_components = {}
    for a in base.sorted_objects():
        for combo in iproduct(*(f.fibre(a) for f in factors)):
            name = tuple_name(combo)
            objects.append(name)
            obj_components[name] = combo

    mor_fibres: list[dict[str, list[Morphism]]] = []
    for f in factors:
        by_image: dict[str, list[Morphism]] = {}
        for m in f.total.morphisms:
            by_image.setdefault(f.forgetful.on_mor(m.name), []).append(m)
        mor_fibres.append(by_image)

    morphisms = []
    mor_components = {}
    forgetful_mor = {}
    for g in sorted(m.name for m in base.morphisms):
        lists = [mf.get(g, []) for mf in mor_fibres]
        if any(not l for l in lists):
            continue
        for combo in iproduct(*lists):
            name = tuple_name(tuple(m.name for m in combo))
            src = tuple_name(tuple(m.source for m in combo))
            tgt = tuple_name(tuple(m.target for m in combo))
            morphisms.append(Morphism(name, src, tgt))
            mor_components[name] = tuple(m.name for m in combo)
            forgetful_mor[name] = g

    identity = {}
    for name, combo in obj_components.items():
        identity[name] = tuple_name(
            tuple(f.total.id_of(x) for f, x in zip(factors, combo))
        )

    composition = {}
    by_name = {m.name: m for m in morphisms}
    for m1 in morphisms:
        for m2 in morphisms:
            if m1.target != m2.source:
                continue
            comp = tuple(
                f.total.compose(c2, c1)
                for f, c2, c1 in zip(
                    factors, mor_components[m2.name], mor_components[m1.name]
                )
            )
            composition[(m2.name, m1.name)] = tuple_name(comp)

    total = FinCategory(
        objects, morphisms, identity, composition,
        name=" x ".join(f.describe() for f in factors),
    )
    forgetful = Functor(
        total, base,
        {name: base_of for name, base_of in (
            (n, factors[0].forgetful.on_obj(c[0])) for n, c in obj_components.items()
        )},
        forgetful_mor,
    )
    cc = concrete_category(total, forgetful, base, name=total.name)

    projections = []
    for i, f in enumerate(factors):
        proj = Functor(
            total, f.total,
            {n: c[i] for n, c in obj_components.items()},
            {n: c[i] for n, c in mor_components.items()},
            name=f"pi{i}",
        )
        projections.append(concrete_functor(cc, f, proj, name=f"pi{i}"))
    return ProductResult(cc, projections, obj_components, mor_components)


# -- equalizers and general limits -------------------------------------------

def subcategory(
    cc: ConcreteCategory,
    keep_objects: set[str],
    keep_morphisms: set[str],
    name: str = "",
    full: bool = False,
    **tags,
) -> ConcreteCategory:
    """The subcategory on the given objects and morphisms (or the full
    subcategory on the objects); identities of kept objects are always
    kept and the composition table is restricted."""
    total = cc.total
    objects = [o for o in total.objects if o in keep_objects]
    if full:
        keep_morphisms = {
            m.name
            for m in total.morphisms
            if m.source in keep_objects and m.target in keep_objects
        }
    else:
        keep_morphisms = set(keep_morphisms)
        keep_morphisms.update(total.id_of(o) for o in objects)
    morphisms = [m for m in total.morphisms if m.name in keep_morphisms]
    for m in morphisms:
        if m.source not in keep_objects or m.target not in keep_objects:
            raise LawViolation(f"kept morphism {m.name!r} has dropped endpoints")
    identity = {o: total.id_of(o) for o in objects}
    composition = {
        (g, f): h
        for (g, f), h in total.composition.items()
        if g in keep_morphisms and f in keep_morphisms
    }
    for (g, f), h in composition.items():
        if h not in keep_morphisms:
            raise LawViolation(
                f"subcategory not closed under composition: {g} . {f} = {h}"
            )
    sub_total = FinCategory(objects, morphisms, identity, composition, name=name)
    forgetful = build_functor(
        sub_total,
        cc.base,
        {o: cc.forgetful.on_obj(o) for o in objects},
        {m.name: cc.forgetful.on_mor(m.name) for m in morphisms},
    )
    return concrete_category(sub_total, forgetful, cc.base, name=name, **tags)


def concrete_equalizer(
    f: ConcreteFunctor, g: ConcreteFunctor, name: str = ""
) -> ConcreteCategory:
    """The subcategory of the common source where f and g agree."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("equalizer needs a parallel pair of concrete functors")
    src = f.source
    keep_obj = {
        x for x in src.total.objects if f.functor.on_obj(x) == g.functor.on_obj(x)
    }
    keep_mor = {
        m.name
        for m in src.total.morphisms
        if m.source in keep_obj
        and m.target in keep_obj
        and f.functor.on_mor(m.name) == g.functor.on_mor(m.name)
    }
    return subcategory(src, keep_obj, keep_mor, name=name)


@dataclass
class ConcreteDiagram:
    """A shape whose objects carry concrete categories and whose
    morphisms carry concrete functors, functorially."""

    shape: FinCategory
    categories: dict[str, ConcreteCategory]
    functors: dict[str, ConcreteFunctor] = field(default_factory=dict)
    base: FinCategory | None = None

    def __post_init__(self):
        if self.base is None:
            if not self.categories:
                raise ValueError("empty concrete diagram needs an explicit base")
            self.base = next(iter(self.categories.values())).base
        for d, cc in self.categories.items():
            if cc.base != self.base:
                raise ValueError(f"category at {d!r} is over a different base")
        for d in self.shape.objects:
            if d not in self.categories:
                raise ValueError(f"no category assigned to shape object {d!r}")
            iname = self.shape.id_of(d)
            self.functors.setdefault(
                iname, identity_concrete_functor(self.categories[d])
            )
        for m in self.shape.morphisms:
            cf = self.functors.get(m.name)
            if cf is None:
                raise ValueError(f"no concrete functor assigned to {m.name!r}")
            if cf.source != self.categories[m.source] or cf.target != self.categories[m.target]:
                raise LawViolation(f"assignment at {m.name!r} has wrong endpoints")
        for (g, f), h in self.shape.composition.items():
            lhs = compose_functors(self.functors[g].functor, self.functors[f].functor)
            if lhs != self.functors[h].functor:
                raise LawViolation(
                    f"diagram is not functorial on ({g}, {f})", (g, f)
                )


@dataclass
class ConcreteLimitResult:
    category: ConcreteCategory
    legs: dict[str, ConcreteFunctor]
    obj_components: dict[str, dict[str, str]]
    mor_components: dict[str, dict[str, str]]


def concrete_limit(d: ConcreteDiagram, name: str = "") -> ConcreteLimitResult:
    """Limit in the slice over the base: the compatible families inside
    the fibre-wise product of the diagram's categories."""
    ds = d.shape.sorted_objects()
    if not ds:
        cc = base_as_concrete(d.base)
        return ConcreteLimitResult(cc, {}, {a: {} for a in d.base.objects}, {})

    prod = concrete_product([d.categories[x] for x in ds])
    obj_comp = {
        n: dict(zip(ds, combo)) for n, combo in prod.obj_components.items()
    }
    mor_comp = {
        n: dict(zip(ds, combo)) for n, combo in prod.mor_components.items()
    }

    non_id = [m for m in d.shape.morphisms if not d.shape.is_identity(m.name)]
    keep_obj = {
        n
        for n, comp in obj_comp.items()
        if all(
            d.functors[m.name].functor.on_obj(comp[m.source]) == comp[m.target]
            for m in non_id
        )
    }
    keep_mor = {
        n
        for n, comp in mor_comp.items()
        if prod.category.total.morphism(n).source in keep_obj
        and prod.category.total.morphism(n).target in keep_obj
        and all(
            d.functors[m.name].functor.on_mor(comp[m.source]) == comp[m.target]
            for m in non_id
        )
    }
    cc = subcategory(prod.category, keep_obj, keep_mor, name=name)

    legs = {}
    for i, x in enumerate(ds):
        proj = prod.projections[i]
        leg = build_functor(
            cc.total,
            d.categories[x].total,
            {o: proj.functor.on_obj(o) for o in cc.total.objects},
            {m.name: proj.functor.on_mor(m.name) for m in cc.total.morphisms},
            name=f"L_{x}",
        )
        legs[x] = concrete_functor(cc, d.categories[x], leg, name=f"L_{x}")

    return ConcreteLimitResult(
        cc,
        legs,
        {n: obj_comp[n] for n in cc.total.objects},
        {m.name: mor_comp[m.name] for m in cc.total.morphisms},
    )


def concrete_cone_factorization(
    lim: ConcreteLimitResult,
    shape: FinCategory,
    apex: ConcreteCategory,
    cone: dict[str, ConcreteFunctor],
) -> ConcreteFunctor:
    """The unique concrete functor from the apex of a compatible cone
    into the limit, commuting with every leg."""
    index = {
        tuple(sorted(comp.items())): n for n, comp in lim.obj_components.items()
    }
    mindex = {
        tuple(sorted(comp.items())): n for n, comp in lim.mor_components.items()
    }
    ds = shape.sorted_objects()
    omap = {}
    for k in apex.total.objects:
        key = tuple(sorted((x, cone[x].functor.on_obj(k)) for x in ds))
        if key not in index:
            raise LawViolation(f"cone is not compatible at object {k!r}")
        omap[k] = index[key]
    mmap = {}
    for m in apex.total.morphisms:
        key = tuple(sorted((x, cone[x].functor.on_mor(m.name)) for x in ds))
        if key not in mindex:
            raise LawViolation(f"cone is not compatible at morphism {m.name!r}")
        mmap[m.name] = mindex[key]
    f = Functor(apex.total, lim.category.total, omap, mmap, name="mediating")
    return concrete_functor(apex, lim.category, f, name="mediating")


# -- l-algebraic categories ----------------------------------------------------

def build_l_algebraic(d: ConcreteDiagram, name: str = "") -> ConcreteLimitResult:
    """Limit of a diagram of functor-algebra categories; the result's
    objects are verified to be exactly the compatible structure
    families, and the result is tagged homogenous when the shape has a
    weakly initial object."""
    for x in d.shape.objects:
        if d.categories[x].algebra_tag is None:
            raise NotFAlgebraic(
                f"diagram object {x!r} is not a functor-algebra category"
            )
    res = concrete_limit(d, name=name)
    cc = res.category

    ds = d.shape.sorted_objects()
    if ds:
        # re-derive the compatible structure families directly
        expected = 0
        for a in d.base.objects:
            for family in iproduct(*(d.categories[x].fibre(a) for x in ds)):
                comp = dict(zip(ds, family))
                if all(
                    d.functors[m.name].functor.on_obj(comp[m.source]) == comp[m.target]
                    for m in d.shape.morphisms
                ):
                    expected += 1
        if expected != len(cc.total.objects):
            raise LawViolation(
                f"limit objects ({len(cc.total.objects)}) do not match the "
                f"compatible structure families ({expected})"
            )
        for n, comp in res.obj_components.items():
            carriers = {
                d.categories[x].forgetful.on_obj(comp[x]) for x in ds
            }
            if len(carriers) != 1:
                raise LawViolation(f"family {n!r} mixes carriers: {carriers}")

    cc.l_algebraic = True
    cc.homogenous = any(
        all(d.shape.hom(w, x) for x in d.shape.objects) for w in d.shape.objects
    )
    return res


# -- the Beck property ---------------------------------------------------------

@dataclass
class BeckCheck:
    kind: str
    description: str
    status: str  # "pass" | "fail" | "skipped"
    witness: str = ""


@dataclass
class BeckVerdict:
    ok: bool
    checks: list[BeckCheck]
    notes: list[str]

    def __bool__(self) -> bool:
        return self.ok


def split_coequalizers(base: FinCategory, f: str, g: str):
    """All split forks over the parallel pair (f, g): morphisms e with
    sections s, t making the fork absolute. Yields distinct e names."""
    a, b = base.source(f), base.target(f)
    seen = set()
    for e in base.out_of(b):
        if base.compose(e.name, f) != base.compose(e.name, g):
            continue
        if e.name in seen:
            continue
        for s in base.hom(e.target, b):
            if base.compose(e.name, s) != base.id_of(e.target):
                continue
            for t in base.hom(b, a):
                if (
                    base.compose(f, t) == base.id_of(b)
                    and base.compose(g, t) == base.compose(s, e.name)
                ):
                    seen.add(e.name)
                    yield e.name, s, t
                    break
            if e.name in seen:
                break


def _creates_split_coequalizer(
    x: ConcreteCategory, f: str, g: str, e: str
) -> Verdict:
    total, base, u = x.total, x.base, x.forgetful
    b = total.target(f)
    lifts = [
        m.name
        for m in total.out_of(b)
        if u.on_mor(m.name) == e
        and total.compose(m.name, f) == total.compose(m.name, g)
    ]
    if len(lifts) != 1:
        return Verdict(
            False,
            witness=(f, g, e),
            reason=f"{len(lifts)} lifts of the split coequalizer {e!r}, wanted 1",
        )
    q = lifts[0]
    cocones = [
        m.name
        for m in total.out_of(b)
        if total.compose(m.name, f) == total.compose(m.name, g)
    ]
    for q2 in cocones:
        ws = [
            w
            for w in total.hom(total.target(q), total.target(q2))
            if total.compose(w, q) == q2
        ]
        if len(ws) != 1:
            return Verdict(
                False,
                witness=(f, g, e, q2),
                reason=f"lift {q!r} is not a coequalizer: cocone {q2!r} "
                f"factors {len(ws)} ways",
            )
    return Verdict(True)


def is_beck(
    x: ConcreteCategory,
    shapes: list[str] | None = None,
    budget: int | None = 200_000,
) -> BeckVerdict:
    """Check the Beck property over the bounded shape library.

    Limit creation is checked for every diagram of every library shape;
    coequalizer creation is checked for every parallel pair whose image
    admits a split fork in the base. Split forks stand in for absolute
    pairs, and creation is strict.
    """
    from .kernel import enumerate_functors

    checks: list[BeckCheck] = []
    notes = [
        "absolute pairs are proxied by split forks",
        "creation is strict: unique lifts on the nose",
    ]

    for shape_name, shape in shape_library(shapes).items():
        counter = [0]
        n = 0
        failure = None
        try:
            for df in enumerate_functors(shape, x.total, budget=budget, counter=counter):
                n += 1
                v = creates_limit(x.forgetful, Diagram(shape, df))
                if not v.ok:
                    failure = (df, v)
                    break
            if failure is None:
                checks.append(
                    BeckCheck(
                        "limits",
                        f"creates limits of shape {shape_name} ({n} diagrams)",
                        "pass",
                    )
                )
            else:
                df, v = failure
                checks.append(
                    BeckCheck(
                        "limits",
                        f"creates limits of shape {shape_name}",
                        "fail",
                        witness=f"diagram {df.object_map}: {v.reason}",
                    )
                )
        except SearchSpaceExceeded:
            checks.append(
                BeckCheck(
                    "limits",
                    f"creates limits of shape {shape_name}",
                    "skipped",
                    witness=f"budget of {budget} exceeded",
                )
            )

    total = x.total
    pairs = 0
    failed = None
    for f in total.morphisms:
        for g in total.hom(f.source, f.target):
            for e, _s, _t in split_coequalizers(
                x.base, x.forgetful.on_mor(f.name), x.forgetful.on_mor(g)
            ):
                pairs += 1
                v = _creates_split_coequalizer(x, f.name, g, e)
                if not v.ok:
                    failed = v
                    break
            if failed:
                break
        if failed:
            break
    if failed is None:
        checks.append(
            BeckCheck(
                "split_coequalizers",
                f"creates split coequalizers ({pairs} forks)",
                "pass",
            )
        )
    else:
        checks.append(
            BeckCheck(
                "split_coequalizers",
                "creates split coequalizers",
                "fail",
                witness=failed.reason,
            )
        )

    ok = all(c.status != "fail" for c in checks)
    return BeckVerdict(ok, checks, notes)


# -- concrete isomorphism search -----------------------------------------------

def concrete_iso_search(
    x: ConcreteCategory, y: ConcreteCategory, budget: int = DEFAULT_ISO_BUDGET
) -> ConcreteFunctor | None:
    """Backtracking search for an invertible concrete functor x -> y.

    A concrete functor is determined by a fibre-preserving object map
    (faithfulness forces the morphism images), so the search runs over
    fibrewise object bijections.
    """
    if x.base != y.base:
        raise ValueError("concrete isomorphism needs a common base")
    base = x.base
    objs = base.sorted_objects()
    xf = {a: x.fibre(a) for a in objs}
    yf = {a: y.fibre(a) for a in objs}
    if any(len(xf[a]) != len(yf[a]) for a in objs):
        return None
    if len(x.total.morphisms) != len(y.total.morphisms):
        return None

    y_by_key = {}
    for m in y.total.morphisms:
        y_by_key[(m.source, m.target, y.forgetful.on_mor(m.name))] = m.name

    tried = 0
    fibre_perms = [permutations(yf[a]) for a in objs]
    for combo in iproduct(*fibre_perms):
        tried += 1
        if tried > budget:
            raise SearchSpaceExceeded(budget, "concrete isomorphism search")
        omap = {}
        for a, perm in zip(objs, combo):
            omap.update(dict(zip(xf[a], perm)))
        mmap = {}
        ok = True
        for m in x.total.morphisms:
            key = (omap[m.source], omap[m.target], x.forgetful.on_mor(m.name))
            img = y_by_key.get(key)
            if img is None:
                ok = False
                break
            mmap[m.name] = img
        if not ok or len(set(mmap.values())) != len(y.total.morphisms):
            continue
        try:
            f = Functor(x.total, y.total, omap, mmap, name="iso")
        except LawViolation:
            continue
        return concrete_functor(x, y, f, name="iso")
    return None
