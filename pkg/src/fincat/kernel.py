"""Finite categories, functors, and natural transformations.

Everything here is exhaustively validated at construction time: a value
you can hold is a value whose laws have been checked. Categories are
assumed small enough (tens of morphisms) that the quadratic and cubic
law checks are instant. All values are immutable after validation and
all operations are pure.

Identifiers are plain strings; wherever a canonical choice among
isomorphic answers is needed, lexicographic order on identifiers is the
tie-breaker.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterable, Iterator, Mapping

from .errors import (
    FunctorialityViolation,
    LawViolation,
    MissingComposite,
    NaturalitySquareViolation,
)


@dataclass(frozen=True)
class Morphism:
    """A named arrow with explicit endpoints."""

    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Verdict:
    """Boolean answer that can carry a witness for the negative case."""

    ok: bool
    witness: object = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def identity_name(obj: str) -> str:
    return f"id_{obj}"


class FinCategory:
    """An explicit finite category.

    Holds the object list, the morphism list, the identity assignment
    and the total composition table. ``composition[(g, f)]`` is the name
    of ``g after f`` and is defined exactly for the composable pairs.
    The constructor checks totality, identity laws and associativity
    over all composable pairs and triples.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[Morphism],
        identity: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
        name: str = "",
    ):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.identity = dict(identity)
        self.composition = dict(composition)
        self._by_name = {m.name: m for m in self.morphisms}
        hom: dict[tuple[str, str], list[str]] = {}
        for m in self.morphisms:
            hom.setdefault((m.source, m.target), []).append(m.name)
        self._hom = {k: tuple(sorted(v)) for k, v in hom.items()}
        self._out: dict[str, tuple[Morphism, ...]] = {}
        for m in self.morphisms:
            self._out.setdefault(m.source, ())
        for a in self.objects:
            self._out[a] = tuple(m for m in self.morphisms if m.source == a)
        self._hash: int | None = None
        self._validate()

    # -- queries ---------------------------------------------------------

    def morphism(self, name: str) -> Morphism:
        return self._by_name[name]

    def has_morphism(self, name: str) -> bool:
        return name in self._by_name

    def source(self, name: str) -> str:
        return self._by_name[name].source

    def target(self, name: str) -> str:
        return self._by_name[name].target

    def id_of(self, obj: str) -> str:
        return self.identity[obj]

    def is_identity(self, name: str) -> bool:
        m = self._by_name[name]
        return m.source == m.target and self.identity[m.source] == name

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        """Morphism names a -> b in lexicographic order."""
        return self._hom.get((a, b), ())

    def out_of(self, a: str) -> tuple[Morphism, ...]:
        return self._out.get(a, ())

    def compose(self, g: str, f: str) -> str:
        """Name of ``g after f``; raises for non-composable arguments."""
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise ValueError(
                f"morphisms not composable: {g} . {f} in {self.describe()}"
            ) from None

    def non_identity_morphisms(self) -> tuple[Morphism, ...]:
        return tuple(m for m in self.morphisms if not self.is_identity(m.name))

    def sorted_objects(self) -> tuple[str, ...]:
        return tuple(sorted(self.objects))

    def describe(self) -> str:
        return self.name or f"<category on {len(self.objects)} objects>"

    def __repr__(self) -> str:
        return (
            f"FinCategory({self.describe()}: {len(self.objects)} objects, "
            f"{len(self.morphisms)} morphisms)"
        )

    # -- identity-sensitive equality (names matter, metadata does not) ---

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identity == other.identity
            and self.composition == other.composition
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    self.objects,
                    self.morphisms,
                    tuple(sorted(self.identity.items())),
                    tuple(sorted(self.composition.items())),
                )
            )
        return self._hash

    # -- validation ------------------------------------------------------

    def _validate(self) -> None:
        seen_obj = set()
        for a in self.objects:
            if a in seen_obj:
                raise LawViolation(f"duplicate object name {a!r}", a)
            seen_obj.add(a)
        seen_mor = set()
        for m in self.morphisms:
            if m.name in seen_mor:
                raise LawViolation(f"duplicate morphism name {m.name!r}", m.name)
            seen_mor.add(m.name)
            if m.source not in seen_obj or m.target not in seen_obj:
                raise LawViolation(
                    f"morphism {m.name!r} has undeclared endpoint "
                    f"{m.source!r} -> {m.target!r}",
                    m.name,
                )

        if set(self.identity) != seen_obj:
            missing = seen_obj.symmetric_difference(self.identity)
            raise LawViolation(f"identity table does not match objects: {sorted(missing)}")
        for a, i in self.identity.items():
            if i not in self._by_name:
                raise LawViolation(f"identity {i!r} of {a!r} is not a declared morphism")
            m = self._by_name[i]
            if m.source != a or m.target != a:
                raise LawViolation(f"identity {i!r} of {a!r} is not an endomorphism of {a!r}")

        # composition table: defined exactly on composable pairs,
        # endpoints consistent
        for (g, f), h in self.composition.items():
            if g not in self._by_name or f not in self._by_name or h not in self._by_name:
                raise LawViolation(f"composition entry ({g}, {f}) -> {h} names unknown morphisms")
            mg, mf, mh = self._by_name[g], self._by_name[f], self._by_name[h]
            if mf.target != mg.source:
                raise LawViolation(
                    f"composition declared for non-composable pair {g} . {f}", (g, f)
                )
            if mh.source != mf.source or mh.target != mg.target:
                raise LawViolation(
                    f"composite {g} . {f} = {h} has wrong endpoints", (g, f, h)
                )
        for f in self.morphisms:
            for g in self._out[f.target]:
                if (g.name, f.name) not in self.composition:
                    raise MissingComposite(
                        f"no composite declared for {g.name} . {f.name}", (g.name, f.name)
                    )

        # identity laws
        for f in self.morphisms:
            left = self.composition[(self.identity[f.target], f.name)]
            right = self.composition[(f.name, self.identity[f.source])]
            if left != f.name or right != f.name:
                raise LawViolation(
                    f"identity law fails at {f.name}: "
                    f"id.{f.name} = {left}, {f.name}.id = {right}",
                    f.name,
                )

        # associativity over all composable triples
        for f in self.morphisms:
            for g in self._out[f.target]:
                gf = self.composition[(g.name, f.name)]
                for h in self._out[g.target]:
                    left = self.composition[(h.name, gf)]
                    right = self.composition[(self.composition[(h.name, g.name)], f.name)]
                    if left != right:
                        raise LawViolation(
                            f"associativity fails on ({h.name}, {g.name}, {f.name}): "
                            f"{h.name}.({g.name}.{f.name}) = {left} but "
                            f"({h.name}.{g.name}).{f.name} = {right}",
                            (h.name, g.name, f.name),
                        )


def build_category(
    objects: Iterable[str],
    morphisms: Iterable[tuple[str, str, str] | Morphism],
    compose_facts: Iterable[tuple[str, str, str]] = (),
    name: str = "",
) -> FinCategory:
    """Build a category from a presentation.

    Identities are implicit and auto-inserted as ``id_<object>``.
    Composition facts are triples ``(g, f, h)`` meaning ``g . f = h``.
    Facts may be omitted whenever the composite is forced, either by an
    identity law or because the relevant hom-set is a singleton; any
    genuinely ambiguous omission is rejected with a MissingComposite
    naming the pair.
    """
    objects = list(objects)
    declared = [m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms]
    obj_set = set(objects)
    if len(obj_set) != len(objects):
        raise LawViolation("duplicate object names in presentation")
    names = set()
    for m in declared:
        if m.name in names:
            raise LawViolation(f"duplicate morphism name {m.name!r}")
        names.add(m.name)
        if m.source not in obj_set or m.target not in obj_set:
            raise LawViolation(
                f"morphism {m.name!r}: undeclared endpoint {m.source!r} -> {m.target!r}"
            )

    identity = {}
    all_morphisms = list(declared)
    for a in objects:
        iname = identity_name(a)
        if iname in names:
            raise LawViolation(
                f"name {iname!r} collides with the implicit identity of {a!r}"
            )
        identity[a] = iname
        all_morphisms.append(Morphism(iname, a, a))

    by_name = {m.name: m for m in all_morphisms}
    hom: dict[tuple[str, str], list[str]] = {}
    for m in all_morphisms:
        hom.setdefault((m.source, m.target), []).append(m.name)

    table: dict[tuple[str, str], str] = {}
    for m in all_morphisms:
        table[(identity[m.target], m.name)] = m.name
        table[(m.name, identity[m.source])] = m.name

    for g, f, h in compose_facts:
        for x in (g, f, h):
            if x not in by_name:
                raise ValueError(f"composition fact references unknown morphism {x!r}")
        if by_name[f].target != by_name[g].source:
            raise LawViolation(f"composition fact for non-composable pair {g} . {f}")
        if (g, f) in table and table[(g, f)] != h:
            raise LawViolation(
                f"contradictory composites for {g} . {f}: {table[(g, f)]} vs {h}",
                (g, f),
            )
        table[(g, f)] = h

    # fill remaining composites forced by singleton hom-sets
    for f in all_morphisms:
        for g in all_morphisms:
            if f.target != g.source or (g.name, f.name) in table:
                continue
            candidates = hom.get((f.source, g.target), [])
            if len(candidates) == 1:
                table[(g.name, f.name)] = candidates[0]
            elif not candidates:
                raise MissingComposite(
                    f"pair {g.name} . {f.name} has no possible composite: "
                    f"hom({f.source}, {g.target}) is empty",
                    (g.name, f.name),
                )
            else:
                raise MissingComposite(
                    f"composite of {g.name} . {f.name} is ambiguous: "
                    f"candidates {sorted(candidates)}",
                    (g.name, f.name),
                )

    return FinCategory(objects, all_morphisms, identity, table, name=name)


class Functor:
    """A structure-preserving map between finite categories.

    ``object_map`` and ``morphism_map`` are total; the constructor
    checks preservation of endpoints, identities and all composites.
    """

    def __init__(
        self,
        source: FinCategory,
        target: FinCategory,
        object_map: Mapping[str, str],
        morphism_map: Mapping[str, str],
        name: str = "",
    ):
        self.name = name
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)
        self._hash: int | None = None
        self._validate()

    def on_obj(self, a: str) -> str:
        return self.object_map[a]

    def on_mor(self, f: str) -> str:
        return self.morphism_map[f]

    def is_endofunctor(self) -> bool:
        return self.source == self.target

    def describe(self) -> str:
        return self.name or "<functor>"

    def __repr__(self) -> str:
        return f"Functor({self.describe()}: {self.source.describe()} -> {self.target.describe()})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.object_map == other.object_map
            and self.morphism_map == other.morphism_map
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    self.source,
                    self.target,
                    tuple(sorted(self.object_map.items())),
                    tuple(sorted(self.morphism_map.items())),
                )
            )
        return self._hash

    def _validate(self) -> None:
        src, tgt = self.source, self.target
        if set(self.object_map) != set(src.objects):
            raise FunctorialityViolation(
                f"object map of {self.describe()} is not total on the source objects"
            )
        if set(self.morphism_map) != {m.name for m in src.morphisms}:
            raise FunctorialityViolation(
                f"morphism map of {self.describe()} is not total on the source morphisms"
            )
        for a, x in self.object_map.items():
            if x not in tgt.objects:
                raise FunctorialityViolation(
                    f"{self.describe()} sends {a!r} outside the target category", a
                )
        for f in src.morphisms:
            img = self.morphism_map[f.name]
            if not tgt.has_morphism(img):
                raise FunctorialityViolation(
                    f"{self.describe()} sends {f.name!r} to unknown morphism {img!r}", f.name
                )
            m = tgt.morphism(img)
            if m.source != self.object_map[f.source] or m.target != self.object_map[f.target]:
                raise FunctorialityViolation(
                    f"{self.describe()} breaks endpoints on {f.name!r}", f.name
                )
        for a in src.objects:
            if self.morphism_map[src.id_of(a)] != tgt.id_of(self.object_map[a]):
                raise FunctorialityViolation(
                    f"{self.describe()} does not preserve the identity of {a!r}", a
                )
        for (g, f), h in src.composition.items():
            img = tgt.compose(self.morphism_map[g], self.morphism_map[f])
            if img != self.morphism_map[h]:
                raise FunctorialityViolation(
                    f"{self.describe()} breaks composition on ({g}, {f}): "
                    f"F(g).F(f) = {img} but F(g.f) = {self.morphism_map[h]}",
                    (g, f),
                )


def build_functor(
    source: FinCategory,
    target: FinCategory,
    object_map: Mapping[str, str],
    morphism_map: Mapping[str, str],
    name: str = "",
) -> Functor:
    """Validated functor; identity images may be omitted (they are forced)."""
    mmap = dict(morphism_map)
    for a in source.objects:
        i = source.id_of(a)
        if i not in mmap:
            if a not in object_map:
                raise FunctorialityViolation(f"object map misses {a!r}")
            mmap[i] = target.id_of(object_map[a])
    return Functor(source, target, object_map, mmap, name=name)


def identity_functor(cat: FinCategory, name: str = "") -> Functor:
    return Functor(
        cat,
        cat,
        {a: a for a in cat.objects},
        {m.name: m.name for m in cat.morphisms},
        name=name or f"Id_{cat.name}" if cat.name else "Id",
    )


def compose_functors(outer: Functor, inner: Functor, name: str = "") -> Functor:
    """``outer after inner``."""
    if inner.target != outer.source:
        raise ValueError(
            f"functors not composable: {outer.describe()} . {inner.describe()}"
        )
    return Functor(
        inner.source,
        outer.target,
        {a: outer.object_map[x] for a, x in inner.object_map.items()},
        {f: outer.morphism_map[g] for f, g in inner.morphism_map.items()},
        name=name,
    )


_POWER_CACHE: dict[tuple[Functor, int], Functor] = {}


def functor_power(f: Functor, n: int) -> Functor:
    """n-fold self-composition of an endofunctor; power 0 is the identity."""
    if not f.is_endofunctor():
        raise ValueError("functor powers need an endofunctor")
    if n < 0:
        raise ValueError("negative functor power")
    key = (f, n)
    if key not in _POWER_CACHE:
        if n == 0:
            _POWER_CACHE[key] = identity_functor(f.source)
        elif n == 1:
            _POWER_CACHE[key] = f
        else:
            _POWER_CACHE[key] = compose_functors(f, functor_power(f, n - 1))
    return _POWER_CACHE[key]


class NatTrans:
    """An object-indexed family of morphisms with commuting squares."""

    def __init__(
        self,
        source_functor: Functor,
        target_functor: Functor,
        components: Mapping[str, str],
        name: str = "",
    ):
        self.name = name
        self.source_functor = source_functor
        self.target_functor = target_functor
        self.components = dict(components)
        self._hash: int | None = None
        self._validate()

    def at(self, a: str) -> str:
        return self.components[a]

    def describe(self) -> str:
        return self.name or "<nat>"

    def __repr__(self) -> str:
        return f"NatTrans({self.describe()})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (
            self.source_functor == other.source_functor
            and self.target_functor == other.target_functor
            and self.components == other.components
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    self.source_functor,
                    self.target_functor,
                    tuple(sorted(self.components.items())),
                )
            )
        return self._hash

    def _validate(self) -> None:
        f, g = self.source_functor, self.target_functor
        if f.source != g.source or f.target != g.target:
            raise NaturalitySquareViolation(
                f"{self.describe()}: functors do not share source and target"
            )
        dom, cod = f.source, f.target
        if set(self.components) != set(dom.objects):
            raise NaturalitySquareViolation(
                f"components of {self.describe()} are not total on objects"
            )
        for a, c in self.components.items():
            if not cod.has_morphism(c):
                raise NaturalitySquareViolation(
                    f"component at {a!r} is unknown morphism {c!r}", a
                )
            m = cod.morphism(c)
            if m.source != f.object_map[a] or m.target != g.object_map[a]:
                raise NaturalitySquareViolation(
                    f"component at {a!r} has wrong endpoints: "
                    f"{m.source} -> {m.target}, wanted "
                    f"{f.object_map[a]} -> {g.object_map[a]}",
                    a,
                )
        for m in dom.morphisms:
            lhs = cod.compose(g.morphism_map[m.name], self.components[m.source])
            rhs = cod.compose(self.components[m.target], f.morphism_map[m.name])
            if lhs != rhs:
                raise NaturalitySquareViolation(
                    f"naturality square fails at {m.name!r}: {lhs} != {rhs}", m.name
                )


def build_nat_trans(
    source_functor: Functor,
    target_functor: Functor,
    components: Mapping[str, str],
    name: str = "",
) -> NatTrans:
    return NatTrans(source_functor, target_functor, components, name=name)


def identity_nat(f: Functor, name: str = "") -> NatTrans:
    return NatTrans(
        f,
        f,
        {a: f.target.id_of(f.object_map[a]) for a in f.source.objects},
        name=name,
    )


def vertical(after: NatTrans, before: NatTrans, name: str = "") -> NatTrans:
    """Vertical composite: ``before: F -> G``, ``after: G -> H`` gives F -> H."""
    if after.source_functor != before.target_functor:
        raise ValueError("vertical composite of non-matching transformations")
    cod = before.source_functor.target
    return NatTrans(
        before.source_functor,
        after.target_functor,
        {a: cod.compose(after.components[a], before.components[a])
         for a in before.components},
        name=name,
    )


def whisker_functor_nat(h: Functor, alpha: NatTrans, name: str = "") -> NatTrans:
    """``H . alpha``: components H(alpha_A), a transformation HF -> HG."""
    return NatTrans(
        compose_functors(h, alpha.source_functor),
        compose_functors(h, alpha.target_functor),
        {a: h.morphism_map[c] for a, c in alpha.components.items()},
        name=name,
    )


def whisker_nat_functor(alpha: NatTrans, k: Functor, name: str = "") -> NatTrans:
    """``alpha . K``: components alpha_{K A}, a transformation FK -> GK."""
    return NatTrans(
        compose_functors(alpha.source_functor, k),
        compose_functors(alpha.target_functor, k),
        {a: alpha.components[k.object_map[a]] for a in k.source.objects},
        name=name,
    )


def check_faithful(u: Functor) -> Verdict:
    """True iff the morphism map is injective on every hom-set."""
    seen: dict[tuple[str, str, str], str] = {}
    for m in u.source.morphisms:
        key = (m.source, m.target, u.morphism_map[m.name])
        if key in seen:
            return Verdict(
                False,
                witness=(seen[key], m.name),
                reason=f"{seen[key]!r} and {m.name!r} are parallel with equal images",
            )
        seen[key] = m.name
    return Verdict(True)


def opposite(cat: FinCategory, name: str = "") -> FinCategory:
    """Formal dual: same names, endpoints swapped, composition transposed."""
    return FinCategory(
        cat.objects,
        tuple(Morphism(m.name, m.target, m.source) for m in cat.morphisms),
        cat.identity,
        {(f, g): h for (g, f), h in cat.composition.items()},
        name=name or (f"{cat.name}_op" if cat.name else ""),
    )


def opposite_functor(f: Functor, name: str = "") -> Functor:
    return Functor(
        opposite(f.source),
        opposite(f.target),
        f.object_map,
        f.morphism_map,
        name=name,
    )


def enumerate_functors(
    source: FinCategory,
    target: FinCategory,
    budget: int | None = None,
    counter: list[int] | None = None,
) -> Iterator[Functor]:
    """All functors source -> target, lexicographic on object maps then
    morphism maps. ``counter`` accumulates the number of raw candidates
    examined; the caller may pair it with a budget.
    """
    from .errors import SearchSpaceExceeded

    objs = source.sorted_objects()
    gens = source.non_identity_morphisms()
    tobjs = target.sorted_objects()
    count = counter if counter is not None else [0]

    for obj_choice in iproduct(tobjs, repeat=len(objs)):
        omap = dict(zip(objs, obj_choice))
        candidate_lists = []
        feasible = True
        for m in gens:
            cands = target.hom(omap[m.source], omap[m.target])
            if not cands:
                feasible = False
                break
            candidate_lists.append(cands)
        count[0] += 1
        if budget is not None and count[0] > budget:
            raise SearchSpaceExceeded(budget, "functor enumeration")
        if not feasible:
            continue
        for mor_choice in iproduct(*candidate_lists):
            count[0] += 1
            if budget is not None and count[0] > budget:
                raise SearchSpaceExceeded(budget, "functor enumeration")
            mmap = {m.name: c for m, c in zip(gens, mor_choice)}
            for a in objs:
                mmap[source.id_of(a)] = target.id_of(omap[a])
            if _is_functorial(source, target, omap, mmap):
                yield Functor(source, target, omap, mmap)


def _is_functorial(source, target, omap, mmap) -> bool:
    for (g, f), h in source.composition.items():
        if target.compose(mmap[g], mmap[f]) != mmap[h]:
            return False
    return True


def enumerate_nat_trans(f: Functor, g: Functor) -> Iterator[NatTrans]:
    """All natural transformations f -> g, lexicographic on components."""
    if f.source != g.source or f.target != g.target:
        return
    dom, cod = f.source, f.target
    objs = dom.sorted_objects()
    lists = [cod.hom(f.object_map[a], g.object_map[a]) for a in objs]
    if any(not l for l in lists):
        return
    for choice in iproduct(*lists):
        comp = dict(zip(objs, choice))
        if all(
            cod.compose(g.morphism_map[m.name], comp[m.source])
            == cod.compose(comp[m.target], f.morphism_map[m.name])
            for m in dom.morphisms
        ):
            yield NatTrans(f, g, comp)
