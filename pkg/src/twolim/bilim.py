"""The glued category of compatible families over a finite index.

An object is a choice of one value object per index object together with an
invertible transition onto the transported choice for every index morphism,
subject to a unit condition and a cocycle condition.  Hom-sets are limits of
the componentwise hom-sets, i.e. exhaustively enumerated compatible families.

The index is taken covariantly as given; a contravariant system is passed as
a pseudofunctor on an explicitly built opposite category.  Transitions are
stored for every index morphism (not only generators) and validated globally.
"""

import itertools

from .errors import (
    BadEndpoints,
    IncompatibleCells,
    InternalInvariantError,
    NotACone,
)
from .fincat import (
    FinFunctor,
    NatTransformation,
    compose_functors,
    validate_category,
    validate_functor,
    validate_nat,
)
from .pseudo import validate_pseudofunctor, validate_pseudonat
from .setdiag import SetDiagram, lim_set


class TwoLimObject:
    """``parts[x]``: the chosen object of at(x); ``transitions[m]``: the
    invertible comparison ``parts[y] -> on(m)(parts[x])`` for ``m: x -> y``."""

    def __init__(self, parts, transitions):
        self.parts = dict(parts)
        self.transitions = dict(transitions)

    def key(self, index):
        return (
            tuple(self.parts[x] for x in index.objects),
            tuple(self.transitions[m] for m in index.mor_names),
        )


def check_object_conditions(pf, parts, transitions):
    """Decide the two object conditions for candidate data.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness tags the
    first failure: ``("iso", m)``, ``("unit", x)`` or ``("cocycle", (m1, m2))``.
    Malformed endpoints raise instead of returning a verdict.
    """
    idx = pf.index
    for x in idx.objects:
        if parts.get(x) not in pf.at[x]._obj_index:
            raise BadEndpoints(f"no chosen object at {x!r}", obj=x)
    for m in idx.mor_names:
        x, y = idx.dom[m], idx.cod[m]
        cat = pf.at[y]
        tr = transitions.get(m)
        if tr not in cat.dom:
            raise BadEndpoints(f"no transition at {m!r}", morphism=m)
        if cat.dom[tr] != parts[y] or cat.cod[tr] != pf.on[m].ob_of(parts[x]):
            raise BadEndpoints(
                f"transition at {m!r} has wrong endpoints", morphism=m
            )
    for m in idx.mor_names:
        if not pf.at[idx.cod[m]].is_iso(transitions[m]):
            return False, ("iso", m)
    for x in idx.objects:
        cat = pf.at[x]
        got = cat.compose(pf.unit_at(x, parts[x]), transitions[idx.identity[x]])
        if got != cat.identity[parts[x]]:
            return False, ("unit", x)
    for m1, m2 in idx.composable_pairs():
        z = idx.dom[m2]
        cat = pf.at[idx.cod[m1]]
        one = cat.compose(pf.on[m1].mor_of(transitions[m2]), transitions[m1])
        two = cat.compose(
            pf.comp_at(m1, m2, parts[z]), transitions[idx.table[(m1, m2)]]
        )
        if one != two:
            return False, ("cocycle", (m1, m2))
    return True, None


class HomLim:
    def __init__(self, source, target, diagram, limset):
        self.source = source
        self.target = target
        self.diagram = diagram
        self.limset = limset
        self.family_name = {}  # family tuple -> base morphism name

    def name_of(self, family):
        return self.family_name[tuple(family)]


class TwoLimCategory:
    def __init__(self, pf, base, objects, obj_name, homs, mor_family,
                 projections, cells):
        self.pf = pf
        self.base = base
        self.objects = objects  # base object name -> TwoLimObject
        self.obj_name = obj_name  # content key -> base object name
        self.homs = homs  # (O1, O2) -> HomLim
        self.mor_family = mor_family  # base morphism -> (O1, O2, family tuple)
        self.projections = projections  # x -> FinFunctor base -> at(x)
        self.cells = cells  # m -> NatTransformation proj[y] => on(m) . proj[x]

    def object_of(self, name):
        return self.objects[name]

    def named(self, parts, transitions):
        """Base object with exactly this content, or None."""
        return self.obj_name.get(TwoLimObject(parts, transitions).key(self.pf.index))

    def hom_lim(self, o1, o2):
        return self.homs[(o1, o2)]

    def __repr__(self):
        return f"TwoLimCategory({self.pf.name!r}, {len(self.base.objects)} objects)"


def _invertible_into(cat, src, tgt):
    return [m for m in cat.hom(src, tgt) if cat.is_iso(m)]


def build_2lim(pf):
    """Enumerate every coherent family exhaustively and glue them into one
    category with componentwise composition."""
    validate_pseudofunctor(pf)
    idx = pf.index

    candidates = []
    nonid = [m for m in idx.mor_names if not idx.is_identity(m)]
    for choice in itertools.product(*(pf.at[x].objects for x in idx.objects)):
        parts = dict(zip(idx.objects, choice))
        forced = {}
        ok = True
        for x in idx.objects:
            cell = pf.unit_at(x, parts[x])
            inv = pf.at[x].inverse(cell)
            if inv is None:  # unreachable for validated cells
                ok = False
                break
            forced[idx.identity[x]] = inv
        if not ok:
            continue
        pools = []
        for m in nonid:
            x, y = idx.dom[m], idx.cod[m]
            pools.append(
                _invertible_into(pf.at[y], parts[y], pf.on[m].ob_of(parts[x]))
            )
        for picks in itertools.product(*pools):
            transitions = dict(forced)
            transitions.update(zip(nonid, picks))
            verdict, _ = check_object_conditions(pf, parts, transitions)
            if verdict:
                candidates.append(TwoLimObject(parts, transitions))

    obj_name = {}
    objects = {}
    names = []
    for cand in candidates:
        key = cand.key(idx)
        name = "l(" + ",".join(key[0]) + ";" + ",".join(key[1]) + ")"
        obj_name[key] = name
        objects[name] = cand
        names.append(name)

    homs = {}
    morphisms = []
    mor_family = {}
    pos = {x: k for k, x in enumerate(idx.objects)}
    for o1 in names:
        c1 = objects[o1]
        for o2 in names:
            c2 = objects[o2]
            sets = {x: pf.at[x].hom(c1.parts[x], c2.parts[x]) for x in idx.objects}
            actions = {}
            for m in idx.mor_names:
                x, y = idx.dom[m], idx.cod[m]
                cat = pf.at[y]
                back = cat.inverse(c2.transitions[m])
                act = {}
                for h in sets[x]:
                    act[h] = cat.compose(
                        back, cat.compose(pf.on[m].mor_of(h), c1.transitions[m])
                    )
                actions[m] = act
            diagram = SetDiagram(idx, sets, actions)
            hl = HomLim(o1, o2, diagram, lim_set(diagram))
            homs[(o1, o2)] = hl
            for family in hl.limset.families:
                name = f"f({o1}>{o2};" + ",".join(family) + ")"
                hl.family_name[family] = name
                morphisms.append((name, o1, o2))
                mor_family[name] = (o1, o2, family)

    identity = {}
    for o1 in names:
        c1 = objects[o1]
        fam = tuple(pf.at[x].identity[c1.parts[x]] for x in idx.objects)
        identity[o1] = homs[(o1, o1)].name_of(fam)

    table = {}
    for (o1, o2), hf in homs.items():
        for (o2b, o3), hg in homs.items():
            if o2b != o2:
                continue
            for f_fam in hf.limset.families:
                for g_fam in hg.limset.families:
                    glued = tuple(
                        pf.at[x].compose(g_fam[pos[x]], f_fam[pos[x]])
                        for x in idx.objects
                    )
                    table[(hg.name_of(g_fam), hf.name_of(f_fam))] = homs[
                        (o1, o3)
                    ].name_of(glued)

    base = validate_category(
        {
            "name": f"2lim({pf.name})",
            "objects": names,
            "morphisms": morphisms,
            "identity": identity,
            "compose": table,
        }
    )

    projections = {}
    for x in idx.objects:
        projections[x] = validate_functor(
            FinFunctor(
                f"proj[{x}]({pf.name})",
                base,
                pf.at[x],
                {o: objects[o].parts[x] for o in names},
                {m: mor_family[m][2][pos[x]] for m in base.mor_names},
            )
        )

    cells = {}
    for m in idx.mor_names:
        x, y = idx.dom[m], idx.cod[m]
        cells[m] = validate_nat(
            NatTransformation(
                f"cell[{m}]({pf.name})",
                projections[y],
                compose_functors(pf.on[m], projections[x]),
                {o: objects[o].transitions[m] for o in names},
            ),
            require_iso=True,
        )

    return TwoLimCategory(
        pf, base, objects, obj_name, homs, mor_family, projections, cells
    )


def lim_hom_family(l, o1, o2):
    """The exhaustively enumerated compatible families between two objects."""
    return l.homs[(o1, o2)].limset


def one_object_degeneration(l):
    """For a one-object, identity-only index: the explicit isomorphism from
    the glued category onto the single value category."""
    idx = l.pf.index
    if len(idx.objects) != 1 or len(idx.morphisms) != 1:
        raise InternalInvariantError("index is not the one-object identity shape")
    star = idx.objects[0]
    cat = l.pf.at[star]
    ob = {o: l.objects[o].parts[star] for o in l.base.objects}
    mor = {m: l.mor_family[m][2][0] for m in l.base.mor_names}
    fun = validate_functor(FinFunctor(f"degen({l.pf.name})", l.base, cat, ob, mor))
    if len(set(ob.values())) != len(cat.objects) or len(ob) != len(cat.objects):
        raise InternalInvariantError("degeneration map is not an object bijection")
    if len(set(mor.values())) != len(cat.morphisms) or len(mor) != len(cat.morphisms):
        raise InternalInvariantError("degeneration map is not a morphism bijection")
    return fun


# ---------------------------------------------------------------------------
# cones and strong factorization
# ---------------------------------------------------------------------------


class Cone:
    """Functors ``legs[x]: apex -> at(x)`` with invertible cells
    ``cells[m]: legs[y] => on(m) . legs[x]`` for ``m: x -> y``, coherent with
    the pseudofunctor's cells.  Missing cells default to identities."""

    def __init__(self, name, pf, apex, legs, cells=None):
        self.name = name
        self.pf = pf
        self.apex = apex
        self.legs = dict(legs)
        self.cells = dict(cells or {})
        self._validated = False


def validate_cone(rho):
    if rho._validated:
        return rho
    pf = rho.pf
    idx = pf.index
    validate_pseudofunctor(pf)
    for x in idx.objects:
        leg = rho.legs.get(x)
        if leg is None:
            raise NotACone(f"{rho.name}: missing leg at {x!r}", obj=x)
        validate_functor(leg)
    from .fincat import functor_tables_equal, identity_nat

    for m in idx.mor_names:
        x, y = idx.dom[m], idx.cod[m]
        expected_tgt = compose_functors(pf.on[m], rho.legs[x])
        if m not in rho.cells:
            try:
                rho.cells[m] = identity_nat(
                    rho.legs[y], expected_tgt, name=f"{rho.name}.cell[{m}]"
                )
            except Exception as exc:
                raise NotACone(
                    f"{rho.name}: strict cell at {m!r} impossible: {exc}",
                    morphism=m,
                ) from exc
        cell = rho.cells[m]
        validate_nat(cell, require_iso=True)
        if not functor_tables_equal(cell.target, expected_tgt):
            raise NotACone(f"{rho.name}: cell at {m!r} has wrong endpoints", morphism=m)
    for x in idx.objects:
        cat = pf.at[x]
        m0 = idx.identity[x]
        for d in rho.apex.objects:
            got = cat.compose(
                pf.unit_at(x, rho.legs[x].ob_of(d)), rho.cells[m0].at(d)
            )
            if got != cat.identity[rho.legs[x].ob_of(d)]:
                raise NotACone(
                    f"{rho.name}: unit coherence fails at {x!r} on {d!r}", obj=x, d=d
                )
    for m1, m2 in idx.composable_pairs():
        z = idx.dom[m2]
        cat = pf.at[idx.cod[m1]]
        for d in rho.apex.objects:
            one = cat.compose(pf.on[m1].mor_of(rho.cells[m2].at(d)), rho.cells[m1].at(d))
            two = cat.compose(
                pf.comp_at(m1, m2, rho.legs[z].ob_of(d)),
                rho.cells[idx.table[(m1, m2)]].at(d),
            )
            if one != two:
                raise NotACone(
                    f"{rho.name}: cocycle coherence fails on ({m1}, {m2}) at {d!r}",
                    pair=(m1, m2),
                    d=d,
                )
    rho._validated = True
    return rho


def strong_factor_lim(l, rho):
    """The unique functor into the glued category whose projections are the
    cone legs on the nose and whose transitions are the cone cells."""
    validate_cone(rho)
    if rho.pf is not l.pf:
        raise NotACone("cone is over a different pseudofunctor")
    idx = l.pf.index
    ob = {}
    for d in rho.apex.objects:
        parts = {x: rho.legs[x].ob_of(d) for x in idx.objects}
        transitions = {m: rho.cells[m].at(d) for m in idx.mor_names}
        name = l.named(parts, transitions)
        if name is None:
            raise InternalInvariantError(
                f"cone value at {d!r} is not a glued object", d=d
            )
        ob[d] = name
    mor = {}
    for g in rho.apex.mor_names:
        fam = tuple(rho.legs[x].mor_of(g) for x in idx.objects)
        hl = l.homs[(ob[rho.apex.dom[g]], ob[rho.apex.cod[g]])]
        if tuple(fam) not in hl.family_name:
            raise InternalInvariantError(
                f"cone image of {g!r} is not a compatible family", morphism=g
            )
        mor[g] = hl.name_of(fam)
    fun = validate_functor(
        FinFunctor(f"factor({rho.name})", rho.apex, l.base, ob, mor)
    )
    for x in idx.objects:
        stacked = compose_functors(l.projections[x], fun)
        from .fincat import functor_tables_equal

        if not functor_tables_equal(stacked, rho.legs[x]):
            raise InternalInvariantError(
                f"factorization does not project onto the leg at {x!r}", obj=x
            )
    return fun


def induced_functor_lim(l_src, l_tgt, nu):
    """Extend a componentwise family to the glued limit categories:
    objectwise application with conjugated transitions, familywise on
    morphisms; validated exhaustively."""
    validate_pseudonat(nu)
    if nu.source is not l_src.pf or nu.target is not l_tgt.pf:
        raise IncompatibleCells(
            f"{nu.name}: family does not connect the two glued categories"
        )
    idx = l_src.pf.index
    pos = {x: k for k, x in enumerate(idx.objects)}
    ob = {}
    for o, cand in l_src.objects.items():
        parts = {x: nu.at[x].ob_of(cand.parts[x]) for x in idx.objects}
        transitions = {}
        for m in idx.mor_names:
            x, y = idx.dom[m], idx.cod[m]
            cat = l_tgt.pf.at[y]
            transitions[m] = cat.compose(
                nu.cell_at(m, cand.parts[x]), nu.at[y].mor_of(cand.transitions[m])
            )
        name = l_tgt.named(parts, transitions)
        if name is None:
            raise IncompatibleCells(
                f"{nu.name}: image of {o!r} is not a glued object", obj=o
            )
        ob[o] = name
    mor = {}
    for name, (o1, o2, family) in l_src.mor_family.items():
        fam = tuple(
            nu.at[x].mor_of(family[pos[x]]) for x in idx.objects
        )
        hl = l_tgt.homs[(ob[o1], ob[o2])]
        if fam not in hl.family_name:
            raise IncompatibleCells(
                f"{nu.name}: image of {name!r} is not a compatible family",
                morphism=name,
            )
        mor[name] = hl.name_of(fam)
    return validate_functor(
        FinFunctor(f"lim({nu.name})", l_src.base, l_tgt.base, ob, mor)
    )
