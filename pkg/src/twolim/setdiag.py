"""Colimits and limits of finite-set-valued diagrams over finite categories.

This is the engine behind every hom-set computation in the package: glued
hom-sets are colimits of set diagrams over cospan categories, and hom-sets of
glued limit categories are limits of set diagrams.  Elements may be any
hashable values; declaration order (index objects first, then elements) fixes
canonical representatives.

A limit here is always taken covariantly over the index as given: families
``{x_o}`` with ``action(m)(x_dom) == x_cod`` for every ``m``.  Callers pass an
explicitly built opposite index when their diagram is contravariant.
"""

import itertools

from .errors import NotFunctorial, ShapeMismatch


class SetDiagram:
    """A functor from a finite index category to finite sets.

    ``sets`` maps index objects to element sequences; ``actions`` maps index
    morphisms to dicts sending elements of the source set into the target set.
    """

    def __init__(self, index, sets, actions):
        self.index = index
        self.sets = {o: tuple(sets[o]) for o in index.objects}
        self.actions = {m: dict(actions[m]) for m in index.mor_names}
        self._validated = False

    def act(self, m, x):
        return self.actions[m][x]


def validate_set_diagram(diag):
    """Exhaustively check functoriality of the actions."""
    if diag._validated:
        return diag
    idx = diag.index
    for o in idx.objects:
        if len(set(diag.sets[o])) != len(diag.sets[o]):
            raise ShapeMismatch(f"duplicate elements at {o!r}", obj=o)
    for m in idx.mor_names:
        src, tgt = set(diag.sets[idx.dom[m]]), set(diag.sets[idx.cod[m]])
        if set(diag.actions[m]) != src:
            raise ShapeMismatch(f"action of {m!r} is not total", morphism=m)
        if not set(diag.actions[m].values()) <= tgt:
            raise ShapeMismatch(f"action of {m!r} leaves the target set", morphism=m)
    for o in idx.objects:
        act = diag.actions[idx.identity[o]]
        for x in diag.sets[o]:
            if act[x] != x:
                raise NotFunctorial(
                    f"identity action at {o!r} moves {x!r}", obj=o, element=x
                )
    for g, f in idx.composable_pairs():
        gf = diag.actions[idx.table[(g, f)]]
        af, ag = diag.actions[f], diag.actions[g]
        for x in diag.sets[idx.dom[f]]:
            if gf[x] != ag[af[x]]:
                raise NotFunctorial(
                    f"actions do not compose on ({g}, {f}) at {x!r}", g=g, f=f, element=x
                )
    diag._validated = True
    return diag


class _UnionFind:
    def __init__(self, elements):
        self.parent = {e: e for e in elements}

    def find(self, e):
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:  # path compression
            self.parent[e], e = root, self.parent[e]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


class ColimSet:
    """The quotient of the disjoint union of the diagram's sets by the
    equivalence closure of ``x ~ action(m)(x)``.

    Elements of the disjoint union are ``(index_object, element)`` pairs; the
    canonical representative of a class is its least member in (index-object
    declaration order, element declaration order).
    """

    def __init__(self, diagram, classes, canon):
        self.diagram = diagram
        self.classes = classes
        self.canon = canon

    def class_of(self, o, x):
        return self.canon[(o, x)]

    def elements(self):
        return list(self.canon)

    def members(self, rep):
        for cls in self.classes:
            if cls[0] == rep:
                return cls
        raise KeyError(rep)

    def __len__(self):
        return len(self.classes)


def colim_set(diag):
    """Union-find closure of the element graph; no filteredness shortcut is
    taken: the general equivalence closure is always computed."""
    validate_set_diagram(diag)
    idx = diag.index
    order = {}
    elements = []
    for o in idx.objects:
        for x in diag.sets[o]:
            order[(o, x)] = len(order)
            elements.append((o, x))
    uf = _UnionFind(elements)
    for m in idx.mor_names:
        src = idx.dom[m]
        tgt = idx.cod[m]
        for x in diag.sets[src]:
            uf.union((src, x), (tgt, diag.actions[m][x]))
    groups = {}
    for e in elements:
        groups.setdefault(uf.find(e), []).append(e)
    classes = []
    canon = {}
    for members in groups.values():
        members.sort(key=order.__getitem__)
        classes.append(tuple(members))
    classes.sort(key=lambda cls: order[cls[0]])
    for cls in classes:
        for e in cls:
            canon[e] = cls[0]
    return ColimSet(diag, tuple(classes), canon)


class LimSet:
    """All compatible families of the diagram, exhaustively enumerated.

    A family is a tuple aligned with the index's object declaration order.
    """

    def __init__(self, diagram, families):
        self.diagram = diagram
        self.families = families

    def as_dict(self, family):
        return dict(zip(self.diagram.index.objects, family))

    def __len__(self):
        return len(self.families)

    def __contains__(self, family):
        return family in set(self.families)


def lim_set(diag):
    validate_set_diagram(diag)
    idx = diag.index
    pos = {o: k for k, o in enumerate(idx.objects)}
    families = []
    for choice in itertools.product(*(diag.sets[o] for o in idx.objects)):
        if all(
            diag.actions[m][choice[pos[idx.dom[m]]]] == choice[pos[idx.cod[m]]]
            for m in idx.mor_names
        ):
            families.append(choice)
    return LimSet(diag, tuple(families))


# ---------------------------------------------------------------------------
# bi-indexed diagrams and the canonical interchange map
# ---------------------------------------------------------------------------


class BiSetDiagram:
    """Finite sets indexed over ``colim_index`` x ``lim_index`` with commuting
    actions: covariant in both, the first leg feeding colimits and the second
    feeding limits."""

    def __init__(self, colim_index, lim_index, sets, colim_actions, lim_actions):
        self.colim_index = colim_index
        self.lim_index = lim_index
        self.sets = {k: tuple(v) for k, v in sets.items()}
        self.colim_actions = colim_actions  # (s, lim_obj) -> dict
        self.lim_actions = lim_actions  # (colim_obj, m) -> dict
        self._validated = False


def validate_bi_diagram(bi):
    if bi._validated:
        return bi
    ci, li = bi.colim_index, bi.lim_index
    for i in ci.objects:
        for x in li.objects:
            if (i, x) not in bi.sets:
                raise ShapeMismatch(f"missing set at ({i!r}, {x!r})", at=(i, x))
    for x in li.objects:
        slice_diag = SetDiagram(
            ci,
            {i: bi.sets[(i, x)] for i in ci.objects},
            {s: bi.colim_actions[(s, x)] for s in ci.mor_names},
        )
        validate_set_diagram(slice_diag)
    for i in ci.objects:
        slice_diag = SetDiagram(
            li,
            {x: bi.sets[(i, x)] for x in li.objects},
            {m: bi.lim_actions[(i, m)] for m in li.mor_names},
        )
        validate_set_diagram(slice_diag)
    for s in ci.mor_names:
        i, i2 = ci.dom[s], ci.cod[s]
        for m in li.mor_names:
            x, y = li.dom[m], li.cod[m]
            for e in bi.sets[(i, x)]:
                one = bi.lim_actions[(i2, m)][bi.colim_actions[(s, x)][e]]
                two = bi.colim_actions[(s, y)][bi.lim_actions[(i, m)][e]]
                if one != two:
                    raise ShapeMismatch(
                        f"actions of {s!r} and {m!r} do not commute at {e!r}",
                        s=s,
                        m=m,
                        element=e,
                    )
    bi._validated = True
    return bi


class InterchangeSetResult:
    """The canonical map from the colimit of limits to the limit of colimits,
    with a bijectivity verdict and an explicit witness.

    ``witness`` is the inverse mapping when bijective, otherwise a tuple
    ``("not-surjective", family)`` or ``("not-injective", class1, class2)``.
    """

    def __init__(self, source, target, mapping, bijective, witness):
        self.source = source  # ColimSet of limit families
        self.target = target  # LimSet of colimit classes
        self.mapping = mapping
        self.bijective = bijective
        self.witness = witness


def interchange_map_set(bi):
    """Send the class of a family to the family of classes, then decide
    bijectivity by exhaustion."""
    validate_bi_diagram(bi)
    ci, li = bi.colim_index, bi.lim_index

    lims = {}
    for i in ci.objects:
        lims[i] = lim_set(
            SetDiagram(
                li,
                {x: bi.sets[(i, x)] for x in li.objects},
                {m: bi.lim_actions[(i, m)] for m in li.mor_names},
            )
        )
    pos = {x: k for k, x in enumerate(li.objects)}

    def push_family(s, fam):
        return tuple(
            bi.colim_actions[(s, x)][fam[pos[x]]] for x in li.objects
        )

    family_actions = {}
    for s in ci.mor_names:
        act = {}
        for fam in lims[ci.dom[s]].families:
            out = push_family(s, fam)
            if out not in set(lims[ci.cod[s]].families):
                raise ShapeMismatch(
                    f"action of {s!r} does not preserve compatible families",
                    s=s,
                    family=fam,
                )
            act[fam] = out
        family_actions[s] = act
    source = colim_set(
        SetDiagram(ci, {i: lims[i].families for i in ci.objects}, family_actions)
    )

    colims = {}
    for x in li.objects:
        colims[x] = colim_set(
            SetDiagram(
                ci,
                {i: bi.sets[(i, x)] for i in ci.objects},
                {s: bi.colim_actions[(s, x)] for s in ci.mor_names},
            )
        )
    class_actions = {}
    for m in li.mor_names:
        x, y = li.dom[m], li.cod[m]
        act = {}
        for cls in colims[x].classes:
            images = {
                colims[y].class_of(i, bi.lim_actions[(i, m)][e]) for i, e in cls
            }
            if len(images) != 1:
                raise ShapeMismatch(
                    f"class action of {m!r} is not well defined", m=m, cls=cls[0]
                )
            act[cls[0]] = images.pop()
        class_actions[m] = act
    target = lim_set(
        SetDiagram(
            li,
            {x: tuple(cls[0] for cls in colims[x].classes) for x in li.objects},
            class_actions,
        )
    )

    mapping = {}
    for cls in source.classes:
        i, fam = cls[0]
        image = tuple(colims[x].class_of(i, fam[pos[x]]) for x in li.objects)
        if image not in set(target.families):
            raise ShapeMismatch(
                "canonical image is not a compatible family", cls=cls[0]
            )
        mapping[cls[0]] = image

    hit = {}
    witness = None
    bijective = True
    for rep, image in mapping.items():
        if image in hit:
            bijective = False
            witness = ("not-injective", hit[image], rep)
            break
        hit[image] = rep
    if bijective:
        for fam in target.families:
            if fam not in hit:
                bijective = False
                witness = ("not-surjective", fam)
                break
    if bijective:
        witness = dict(hit)
    return InterchangeSetResult(source, target, mapping, bijective, witness)
