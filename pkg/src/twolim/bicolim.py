"""The glued category of a pseudofunctor over a filtered index.

Objects are pairs ``(i, X)``; the hom-set between two such pairs is the
colimit, over the category of cospans out of the two feet, of value-category
hom-sets, transported along cospan morphisms by coherence-conjugated functor
application.  Composition picks representatives, pushes them to a common
equalized vertex, and composes there; the result is independent of every
choice made, which the validator re-checks exhaustively.

Construction is refused for a non-filtered index: class composition needs
cocones and equalization, so soundness wins over generality here.
"""

from .errors import (
    BadRepresentative,
    IncompatibleCells,
    InternalInvariantError,
    NonWellDefined,
    NotACocone,
    NotFiltered,
)
from .fincat import (
    FinFunctor,
    NatTransformation,
    cocone_and_equalize,
    compose_functors,
    cospan_category,
    find_isomorphism,
    functor_tables_equal,
    identity_nat,
    is_filtered,
    validate_category,
    validate_functor,
    validate_nat,
)
from .pseudo import validate_pseudofunctor, validate_pseudonat
from .setdiag import SetDiagram, colim_set


class HomColim:
    """One glued hom-set: the cospan index, the set diagram of value hom-sets,
    its colimit, and the naming of classes as base morphisms."""

    def __init__(self, source, target, cospans, diagram, colim):
        self.source = source
        self.target = target
        self.cospans = cospans
        self.diagram = diagram
        self.colim = colim
        self.class_name = {}  # canonical representative -> base morphism name

    def name_of(self, cospan_obj, element):
        return self.class_name[self.colim.class_of(cospan_obj, element)]

    def transport(self, cospan_obj, element, base_mor):
        """Push a representative along the cospan morphism over ``base_mor``."""
        mor = self.cospans.morphism_from(cospan_obj, base_mor)
        return (
            self.cospans.category.cod[mor],
            self.diagram.actions[mor][element],
        )


class TwoColimCategory:
    def __init__(self, pf, witness, base, obj_name, obj_pair, homs, mor_info,
                 injections, cells, cospans):
        self.pf = pf
        self.witness = witness
        self.base = base
        self.obj_name = obj_name  # (i, X) -> base object
        self.obj_pair = obj_pair  # base object -> (i, X)
        self.homs = homs  # (P, Q) -> HomColim
        self.mor_info = mor_info  # base morphism -> (P, Q, canonical rep)
        self.injections = injections  # i -> FinFunctor at(i) -> base
        self.cells = cells  # s -> NatTransformation inj[i] => inj[i2] . on(s)
        self.cospans = cospans  # (i, i2) -> CospanCategory

    def hom_colim(self, p, q):
        return self.homs[(p, q)]

    def __repr__(self):
        return f"TwoColimCategory({self.pf.name!r}, {len(self.base.objects)} objects)"


def _hom_diagram(pf, cospans, x_obj, y_obj):
    """Value hom-sets indexed over the cospan category, transported by
    coherence-conjugated application: a cospan morphism over ``t`` sends ``h``
    to ``comp(t, right)^-1 . on(t)(h) . comp(t, left)``."""
    idx = pf.index
    sets = {}
    for a_name, (apex, s, s2) in cospans.triple_of.items():
        cat = pf.at[apex]
        sets[a_name] = tuple(
            cat.hom(pf.on[s].ob_of(x_obj), pf.on[s2].ob_of(y_obj))
        )
    actions = {}
    for (src, t), mor in cospans._mor_by_src.items():
        apex, s, s2 = cospans.triple_of[src]
        tgt_cat = pf.at[idx.cod[t]]
        pre = pf.comp_at(t, s, x_obj)
        post = tgt_cat.inverse(pf.comp_at(t, s2, y_obj))
        act = {}
        for h in sets[src]:
            act[h] = tgt_cat.compose(post, tgt_cat.compose(pf.on[t].mor_of(h), pre))
        actions[mor] = act
    return SetDiagram(cospans.category, sets, actions)


def build_2colim(pf):
    """Glue a pseudofunctor over a filtered index into one category, with the
    canonical injections and their invertible comparison cells."""
    validate_pseudofunctor(pf)
    idx = pf.index
    witness = is_filtered(idx)
    if not witness.verdict:
        raise NotFiltered(
            f"{pf.name}: index {idx.name} is not filtered"
            f" (condition {witness.condition})",
            witness=witness,
        )

    obj_name = {}
    obj_pair = {}
    objects = []
    for i in idx.objects:
        for x_obj in pf.at[i].objects:
            name = f"({i}|{x_obj})"
            obj_name[(i, x_obj)] = name
            obj_pair[name] = (i, x_obj)
            objects.append(name)

    cospans = {}
    for i in idx.objects:
        for i2 in idx.objects:
            cospans[(i, i2)] = cospan_category(idx, i, i2)

    homs = {}
    morphisms = []
    mor_info = {}
    for p in objects:
        i, x_obj = obj_pair[p]
        for q in objects:
            i2, y_obj = obj_pair[q]
            csp = cospans[(i, i2)]
            diagram = _hom_diagram(pf, csp, x_obj, y_obj)
            hc = HomColim(p, q, csp, diagram, colim_set(diagram))
            homs[(p, q)] = hc
            for cls in hc.colim.classes:
                a_name, elem = cls[0]
                name = f"c({p}>{q};{a_name};{elem})"
                hc.class_name[cls[0]] = name
                morphisms.append((name, p, q))
                mor_info[name] = (p, q, cls[0])

    identity = {}
    for p in objects:
        i, x_obj = obj_pair[p]
        csp = cospans[(i, i)]
        a0 = csp.object_named(i, idx.identity[i], idx.identity[i])
        elem = pf.at[i].identity[pf.on[idx.identity[i]].ob_of(x_obj)]
        identity[p] = homs[(p, p)].name_of(a0, elem)

    table = {}
    for (p, q), hf in homs.items():
        for (q2, r), hg in homs.items():
            if q2 != q:
                continue
            for fcls in hf.colim.classes:
                for gcls in hg.colim.classes:
                    fname = hf.class_name[fcls[0]]
                    gname = hg.class_name[gcls[0]]
                    table[(gname, fname)] = _compose_reps(
                        pf, witness, homs, (p, q, r), fcls[0], gcls[0]
                    )

    base = validate_category(
        {
            "name": f"2colim({pf.name})",
            "objects": objects,
            "morphisms": morphisms,
            "identity": identity,
            "compose": table,
        }
    )

    injections = {}
    for i in idx.objects:
        cat = pf.at[i]
        csp = cospans[(i, i)]
        a0 = csp.object_named(i, idx.identity[i], idx.identity[i])
        mor = {}
        for h in cat.mor_names:
            x_obj, y_obj = cat.dom[h], cat.cod[h]
            conj = cat.compose(
                cat.inverse(pf.unit_at(i, y_obj)),
                cat.compose(h, pf.unit_at(i, x_obj)),
            )
            mor[h] = homs[(obj_name[(i, x_obj)], obj_name[(i, y_obj)])].name_of(
                a0, conj
            )
        injections[i] = validate_functor(
            FinFunctor(
                f"inj[{i}]({pf.name})",
                cat,
                base,
                {x: obj_name[(i, x)] for x in cat.objects},
                mor,
            )
        )

    cells = {}
    for s in idx.mor_names:
        i, i2 = idx.dom[s], idx.cod[s]
        csp = cospans[(i, i2)]
        a_s = csp.object_named(i2, s, idx.identity[i2])
        comps = {}
        for x_obj in pf.at[i].objects:
            img = pf.on[s].ob_of(x_obj)
            elem = pf.at[i2].inverse(pf.unit_at(i2, img))
            comps[x_obj] = homs[
                (obj_name[(i, x_obj)], obj_name[(i2, img)])
            ].name_of(a_s, elem)
        cells[s] = validate_nat(
            NatTransformation(
                f"cell[{s}]({pf.name})",
                injections[i],
                compose_functors(injections[i2], pf.on[s]),
                comps,
            ),
            require_iso=True,
        )

    return TwoColimCategory(
        pf, witness, base, obj_name, obj_pair, homs, mor_info, injections, cells,
        cospans,
    )


def _compose_reps(pf, witness, homs, triple, rep_f, rep_g):
    """Compose representatives ``rep_g . rep_f`` by pushing both to a common
    vertex whose legs make the middle cospan legs agree."""
    p, q, r = triple
    hf, hg = homs[(p, q)], homs[(q, r)]
    a1, h1 = rep_f
    a2, h2 = rep_g
    m1, _s, s2 = hf.cospans.triple_of[a1]
    m2, u, u2 = hg.cospans.triple_of[a2]
    idx = pf.index
    vertex, legs = cocone_and_equalize(idx, witness, [m1, m2], [(s2, u)])
    a1v, h1v = hf.transport(a1, h1, legs[m1])
    a2v, h2v = hg.transport(a2, h2, legs[m2])
    _, left, _ = hf.cospans.triple_of[a1v]
    _, _, right = hg.cospans.triple_of[a2v]
    glued = pf.at[vertex].compose(h2v, h1v)
    target = homs[(p, r)]
    a_name = target.cospans.object_named(vertex, left, right)
    return target.name_of(a_name, glued)


def colim_hom_class(b, p, q, triple, element):
    """Canonical class of a representative: ``triple`` is a cospan
    ``(apex, s, s2)`` and ``element`` a value morphism between the transported
    objects there."""
    if (p, q) not in b.homs:
        raise BadRepresentative(f"no hom-set {p} -> {q}", source=p, target=q)
    hc = b.homs[(p, q)]
    a_name = hc.cospans.object_named(*triple)
    if a_name is None:
        raise BadRepresentative(f"{triple} is not a cospan object", triple=triple)
    if element not in hc.diagram.sets[a_name]:
        raise BadRepresentative(
            f"{element!r} is not a morphism between the transported objects at"
            f" {a_name}",
            element=element,
        )
    return hc.name_of(a_name, element)


def compose_in_colim(b, g_name, f_name):
    """Compose two classes of the glued category (g after f)."""
    if g_name not in b.mor_info or f_name not in b.mor_info:
        raise BadRepresentative("unknown class", g=g_name, f=f_name)
    p, q, rep_f = b.mor_info[f_name]
    q2, r, rep_g = b.mor_info[g_name]
    if q != q2:
        raise BadRepresentative("classes are not composable", g=g_name, f=f_name)
    return _compose_reps(b.pf, b.witness, b.homs, (p, q, r), rep_f, rep_g)


def verify_composition_soundness(b):
    """Recompose every composable pair from *every* pair of representatives and
    check the results agree with the installed table; returns the number of
    representative pairs exhausted."""
    checked = 0
    for (g_name, f_name), installed in b.base.table.items():
        p, q, _ = b.mor_info[f_name]
        _, r, _ = b.mor_info[g_name]
        hf, hg = b.homs[(p, q)], b.homs[(q, r)]
        for rep_f in hf.colim.members(b.mor_info[f_name][2]):
            for rep_g in hg.colim.members(b.mor_info[g_name][2]):
                got = _compose_reps(
                    b.pf, b.witness, b.homs, (p, q, r), rep_f, rep_g
                )
                if got != installed:
                    raise NonWellDefined(
                        f"composition of {g_name} . {f_name} depends on"
                        f" representatives",
                        expected=installed,
                        got=got,
                        rep_f=rep_f,
                        rep_g=rep_g,
                    )
                checked += 1
    return checked


def one_object_degeneration(b):
    """For a one-object, identity-only index: the explicit isomorphism from
    the glued category onto the single value category."""
    idx = b.pf.index
    if len(idx.objects) != 1 or len(idx.morphisms) != 1:
        raise InternalInvariantError("index is not the one-object identity shape")
    star = idx.objects[0]
    cat = b.pf.at[star]
    ob = {b.obj_name[(star, x)]: x for x in cat.objects}
    mor = {}
    for name, (p, q, (a_name, elem)) in b.mor_info.items():
        x_obj = b.obj_pair[p][1]
        y_obj = b.obj_pair[q][1]
        mor[name] = cat.compose(
            b.pf.unit_at(star, y_obj),
            cat.compose(elem, cat.inverse(b.pf.unit_at(star, x_obj))),
        )
    fun = validate_functor(
        FinFunctor(f"degen({b.pf.name})", b.base, cat, ob, mor)
    )
    if len(set(mor.values())) != len(mor) or len(set(ob.values())) != len(ob):
        raise InternalInvariantError("degeneration map is not injective")
    if len(mor) != len(cat.morphisms) or len(ob) != len(cat.objects):
        raise InternalInvariantError("degeneration map is not surjective")
    return fun


# ---------------------------------------------------------------------------
# cocones, strong factorization, modifications
# ---------------------------------------------------------------------------


class Cocone:
    """Functors ``legs[i]: at(i) -> target`` with invertible cells
    ``cells[s]: legs[i] => legs[i2] . on(s)``, coherent with the
    pseudofunctor's own cells.  Missing cells default to identities."""

    def __init__(self, name, pf, target, legs, cells=None):
        self.name = name
        self.pf = pf
        self.target = target
        self.legs = dict(legs)
        self.cells = dict(cells or {})
        self._validated = False


def validate_cocone(rho):
    if rho._validated:
        return rho
    pf = rho.pf
    idx = pf.index
    validate_pseudofunctor(pf)
    for i in idx.objects:
        leg = rho.legs.get(i)
        if leg is None:
            raise NotACocone(f"{rho.name}: missing leg at {i!r}", obj=i)
        validate_functor(leg)
    for s in idx.mor_names:
        i, i2 = idx.dom[s], idx.cod[s]
        expected_tgt = compose_functors(rho.legs[i2], pf.on[s])
        if s not in rho.cells:
            try:
                rho.cells[s] = identity_nat(
                    rho.legs[i], expected_tgt, name=f"{rho.name}.cell[{s}]"
                )
            except Exception as exc:
                raise NotACocone(
                    f"{rho.name}: strict cell at {s!r} impossible: {exc}", morphism=s
                ) from exc
        cell = rho.cells[s]
        validate_nat(cell, require_iso=True)
        if not functor_tables_equal(cell.target, expected_tgt):
            raise NotACocone(
                f"{rho.name}: cell at {s!r} has wrong endpoints", morphism=s
            )
    tgt = rho.target
    for i in idx.objects:
        s0 = idx.identity[i]
        for x in pf.at[i].objects:
            got = tgt.compose(
                rho.legs[i].mor_of(pf.unit_at(i, x)), rho.cells[s0].at(x)
            )
            if got != tgt.identity[rho.legs[i].ob_of(x)]:
                raise NotACocone(
                    f"{rho.name}: unit coherence fails at {i!r} on {x!r}",
                    obj=i,
                    x=x,
                )
    for s2, s1 in idx.composable_pairs():
        i0 = idx.dom[s1]
        for x in pf.at[i0].objects:
            one = tgt.compose(
                rho.cells[s2].at(pf.on[s1].ob_of(x)), rho.cells[s1].at(x)
            )
            two = tgt.compose(
                rho.legs[idx.cod[s2]].mor_of(pf.comp_at(s2, s1, x)),
                rho.cells[idx.table[(s2, s1)]].at(x),
            )
            if one != two:
                raise NotACocone(
                    f"{rho.name}: composition coherence fails on ({s2}, {s1})"
                    f" at {x!r}",
                    pair=(s2, s1),
                    x=x,
                )
    rho._validated = True
    return rho


class LaxFactorization:
    """A functor out of the glued category together with the comparison cells
    against the cocone legs (identities in the strong case)."""

    def __init__(self, target, functor, cells):
        self.target = target
        self.functor = functor
        self.cells = cells


def strong_factor_colim(b, rho):
    """The unique functor with ``F . inj[i] == legs[i]`` on the nose.

    A class is evaluated through any representative, conjugated by the cocone
    cells; every representative is exhausted to certify well-definedness.
    """
    validate_cocone(rho)
    if rho.pf is not b.pf:
        raise NotACocone("cocone is over a different pseudofunctor")
    tgt = rho.target
    ob = {}
    for p in b.base.objects:
        i, x_obj = b.obj_pair[p]
        ob[p] = rho.legs[i].ob_of(x_obj)
    mor = {}
    for name, (p, q, rep) in b.mor_info.items():
        i, x_obj = b.obj_pair[p]
        i2, y_obj = b.obj_pair[q]
        hc = b.homs[(p, q)]
        value = None
        for a_name, elem in hc.colim.members(rep):
            apex, s, s2 = hc.cospans.triple_of[a_name]
            got = tgt.compose(
                tgt.inverse(rho.cells[s2].at(y_obj)),
                tgt.compose(rho.legs[apex].mor_of(elem), rho.cells[s].at(x_obj)),
            )
            if value is None:
                value = got
            elif got != value:
                raise NonWellDefined(
                    f"{rho.name}: two representatives of {name} disagree",
                    cls=name,
                    one=value,
                    other=got,
                )
        mor[name] = value
    fun = validate_functor(
        FinFunctor(f"factor({rho.name})", b.base, tgt, ob, mor)
    )
    cells = {}
    for i in b.pf.index.objects:
        stacked = compose_functors(fun, b.injections[i])
        if not functor_tables_equal(stacked, rho.legs[i]):
            raise InternalInvariantError(
                f"factorization does not restrict to the leg at {i!r}", obj=i
            )
        cells[i] = identity_nat(rho.legs[i], stacked, name=f"phi[{i}]")
    return LaxFactorization(tgt, fun, cells)


class Modification:
    """Componentwise morphism of cocones: ``at[i]: legs[i] => other.legs[i]``
    commuting with both families of cells."""

    def __init__(self, name, source, target, at):
        self.name = name
        self.source = source
        self.target = target
        self.at = dict(at)


def validate_modification(lam):
    validate_cocone(lam.source)
    validate_cocone(lam.target)
    pf = lam.source.pf
    idx = pf.index
    tgt = lam.source.target
    for i in idx.objects:
        validate_nat(lam.at[i])
    for s in idx.mor_names:
        i, i2 = idx.dom[s], idx.cod[s]
        for x in pf.at[i].objects:
            one = tgt.compose(
                lam.at[i2].at(pf.on[s].ob_of(x)), lam.source.cells[s].at(x)
            )
            two = tgt.compose(lam.target.cells[s].at(x), lam.at[i].at(x))
            if one != two:
                raise IncompatibleCells(
                    f"{lam.name}: modification square fails at {s!r} on {x!r}",
                    morphism=s,
                    x=x,
                )
    return lam


def modification_nat(b, fact_f, fact_g, lam):
    """The unique transformation between two strong factorizations whose
    restriction along every injection is the given modification."""
    validate_modification(lam)
    comps = {}
    for p in b.base.objects:
        i, x_obj = b.obj_pair[p]
        comps[p] = lam.at[i].at(x_obj)
    return validate_nat(
        NatTransformation(
            f"lambda({lam.name})", fact_f.functor, fact_g.functor, comps
        )
    )


# ---------------------------------------------------------------------------
# functors between glued categories induced by functor families
# ---------------------------------------------------------------------------


def induced_functor_colim(b_src, b_tgt, nu):
    """Extend a componentwise family to the glued categories: objectwise
    application, classwise conjugated transport of representatives; checked on
    every representative and validated exhaustively."""
    validate_pseudonat(nu)
    if nu.source is not b_src.pf or nu.target is not b_tgt.pf:
        raise IncompatibleCells(
            f"{nu.name}: family does not connect the two glued categories"
        )
    ob = {}
    for p in b_src.base.objects:
        i, x_obj = b_src.obj_pair[p]
        ob[p] = b_tgt.obj_name[(i, nu.at[i].ob_of(x_obj))]
    mor = {}
    for name, (p, q, rep) in b_src.mor_info.items():
        i, x_obj = b_src.obj_pair[p]
        i2, y_obj = b_src.obj_pair[q]
        hc_src = b_src.homs[(p, q)]
        hc_tgt = b_tgt.homs[(ob[p], ob[q])]
        value = None
        for a_name, elem in hc_src.colim.members(rep):
            apex, s, s2 = hc_src.cospans.triple_of[a_name]
            cat = b_tgt.pf.at[apex]
            moved = cat.compose(
                nu.cell_at(s2, y_obj),
                cat.compose(
                    nu.at[apex].mor_of(elem), cat.inverse(nu.cell_at(s, x_obj))
                ),
            )
            got = hc_tgt.name_of(a_name, moved)
            if value is None:
                value = got
            elif got != value:
                raise IncompatibleCells(
                    f"{nu.name}: image of {name} depends on the representative",
                    cls=name,
                )
        mor[name] = value
    return validate_functor(
        FinFunctor(f"colim({nu.name})", b_src.base, b_tgt.base, ob, mor)
    )
