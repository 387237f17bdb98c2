"""Pseudofunctors to the universe of finite categories, with explicit
coherence cells and exhaustive coherence checking.

A pseudofunctor assigns a category to every index object and a functor to
every index morphism, preserving identities and composition only up to the
invertible ``unit`` and ``comp`` cells.  Contravariance is always represented
by indexing over an explicitly built opposite category, never by implicit
flips.  Strict input is the default: omitted cells mean identities, which
forces the corresponding functor tables to agree on the nose.
"""

import itertools

from . import fincat
from .errors import (
    IncoherentAssoc,
    IncoherentUnit,
    IncompatibleCells,
    NotIsoCell,
    NotNatural,
    UnknownObject,
)
from .fincat import (
    FinFunctor,
    NatTransformation,
    compose_functors,
    identity_functor,
    identity_nat,
    validate_functor,
    validate_nat,
)


class PseudoFunctor:
    """``at``: index object -> category; ``on``: index morphism -> functor;
    ``unit[i]``: on(Id_i) => Id; ``comp[(g, f)]``: on(g.f) => on(g) . on(f)."""

    def __init__(self, name, index, at, on, unit=None, comp=None):
        self.name = name
        self.index = index
        self.at = dict(at)
        self.on = dict(on)
        self.unit = dict(unit or {})
        self.comp = dict(comp or {})
        self._validated = False

    def unit_at(self, i, x):
        """Component of the unit cell at object x of at(i)."""
        return self.unit[i].at(x)

    def comp_at(self, g, f, x):
        """Component of the composition cell for (g, f) at object x."""
        return self.comp[(g, f)].at(x)

    def __repr__(self):
        return f"PseudoFunctor({self.name!r} on {self.index.name})"


def strict_pseudofunctor(name, index, at, on_nonid):
    """Build a pseudofunctor whose cells are identities.

    ``on_nonid`` gives the functor for every non-identity index morphism;
    identities get identity functors.  Validation rejects the result unless
    the functor tables compose strictly.
    """
    on = dict(on_nonid)
    for i in index.objects:
        on.setdefault(index.identity[i], identity_functor(at[i]))
    return validate_pseudofunctor(PseudoFunctor(name, index, at, on))


def validate_pseudofunctor(pf):
    """Complete missing cells with identities, then exhaustively check that
    every cell is an invertible natural transformation and that the unit and
    associativity coherence laws hold on all objects."""
    if pf._validated:
        return pf
    idx = pf.index
    for i in idx.objects:
        if i not in pf.at:
            raise UnknownObject(f"{pf.name}: no value category at {i!r}", obj=i)
    for m in idx.mor_names:
        fun = pf.on.get(m)
        if fun is None:
            raise IncompatibleCells(f"{pf.name}: no functor on {m!r}", morphism=m)
        if fun.source is not pf.at[idx.dom[m]] or fun.target is not pf.at[idx.cod[m]]:
            if not (
                fincat.same_tables(fun.source, pf.at[idx.dom[m]])
                and fincat.same_tables(fun.target, pf.at[idx.cod[m]])
            ):
                raise IncompatibleCells(
                    f"{pf.name}: functor on {m!r} has wrong endpoints", morphism=m
                )
        validate_functor(fun)

    for i in idx.objects:
        if i not in pf.unit:
            try:
                pf.unit[i] = identity_nat(
                    pf.on[idx.identity[i]],
                    identity_functor(pf.at[i]),
                    name=f"{pf.name}.unit[{i}]",
                )
            except NotNatural as exc:
                raise IncoherentUnit(
                    f"{pf.name}: strict unit at {i!r} impossible: {exc}", obj=i
                ) from exc
        cell = pf.unit[i]
        validate_nat(cell)
        if not cell.is_iso:
            raise NotIsoCell(f"{pf.name}: unit cell at {i!r} not invertible", obj=i)

    for g, f in idx.composable_pairs():
        if (g, f) not in pf.comp:
            try:
                pf.comp[(g, f)] = identity_nat(
                    pf.on[idx.table[(g, f)]],
                    compose_functors(pf.on[g], pf.on[f]),
                    name=f"{pf.name}.comp[{g},{f}]",
                )
            except NotNatural as exc:
                raise IncoherentAssoc(
                    f"{pf.name}: strict composition on ({g}, {f}) impossible: {exc}",
                    g=g,
                    f=f,
                ) from exc
        cell = pf.comp[(g, f)]
        validate_nat(cell)
        if not cell.is_iso:
            raise NotIsoCell(
                f"{pf.name}: composition cell ({g}, {f}) not invertible", g=g, f=f
            )

    # unit coherence, checked pointwise on objects
    for f in idx.mor_names:
        i, j = idx.dom[f], idx.cod[f]
        src, tgt = pf.at[i], pf.at[j]
        fof = pf.on[f]
        for x in src.objects:
            left = tgt.compose(
                pf.unit_at(j, fof.ob_of(x)), pf.comp_at(idx.identity[j], f, x)
            )
            if left != tgt.identity[fof.ob_of(x)]:
                raise IncoherentUnit(
                    f"{pf.name}: left unit law fails on {f!r} at {x!r}",
                    morphism=f,
                    obj=x,
                )
            right = tgt.compose(
                fof.mor_of(pf.unit_at(i, x)), pf.comp_at(f, idx.identity[i], x)
            )
            if right != tgt.identity[fof.ob_of(x)]:
                raise IncoherentUnit(
                    f"{pf.name}: right unit law fails on {f!r} at {x!r}",
                    morphism=f,
                    obj=x,
                )

    # associativity coherence
    for g, f in idx.composable_pairs():
        for h in idx.morphisms_from(idx.cod[g]):
            tgt = pf.at[idx.cod[h]]
            gf = idx.table[(g, f)]
            hg = idx.table[(h, g)]
            for x in pf.at[idx.dom[f]].objects:
                one = tgt.compose(
                    pf.comp_at(h, g, pf.on[f].ob_of(x)), pf.comp_at(hg, f, x)
                )
                two = tgt.compose(
                    pf.on[h].mor_of(pf.comp_at(g, f, x)), pf.comp_at(h, gf, x)
                )
                if one != two:
                    raise IncoherentAssoc(
                        f"{pf.name}: associativity coherence fails on"
                        f" ({h}, {g}, {f}) at {x!r}",
                        h=h,
                        g=g,
                        f=f,
                        obj=x,
                    )
    pf._validated = True
    return pf


def is_strict(pf):
    """True when every cell is an identity transformation."""
    for i, cell in pf.unit.items():
        cat = pf.at[i]
        if any(not cat.is_identity(c) for c in cell.components.values()):
            return False
    for (g, _f), cell in pf.comp.items():
        cat = pf.at[pf.index.cod[g]]
        if any(not cat.is_identity(c) for c in cell.components.values()):
            return False
    return True


# ---------------------------------------------------------------------------
# product index with a reversed second leg
# ---------------------------------------------------------------------------


def product_index(left, right):
    """The product of ``left`` with the opposite of ``right``.

    Objects are pairs ``(i,j)``; a morphism ``(s,t)`` with ``s: i -> i2`` and
    ``t: j -> j2`` runs from ``(i, j2)`` to ``(i2, j)``; composition is
    componentwise with the second leg reversed.
    """
    objects = [f"({i},{j})" for i in left.objects for j in right.objects]
    morphisms = []
    identity = {}
    for s in left.mor_names:
        for t in right.mor_names:
            name = f"({s},{t})"
            dom = f"({left.dom[s]},{right.cod[t]})"
            cod = f"({left.cod[s]},{right.dom[t]})"
            morphisms.append((name, dom, cod))
    for i in left.objects:
        for j in right.objects:
            identity[f"({i},{j})"] = f"({left.identity[i]},{right.identity[j]})"
    compose = {}
    for s1 in left.mor_names:
        for t1 in right.mor_names:
            for s2 in left.morphisms_from(left.cod[s1]):
                for t2 in right.mor_names:
                    if right.cod[t2] != right.dom[t1]:
                        continue
                    compose[(f"({s2},{t2})", f"({s1},{t1})")] = (
                        f"({left.table[(s2, s1)]},{right.table[(t1, t2)]})"
                    )
    return fincat.validate_category(
        {
            "name": f"{left.name}x{right.name}^op",
            "objects": objects,
            "morphisms": morphisms,
            "identity": identity,
            "compose": compose,
        }
    )


def pair_obj(i, j):
    return f"({i},{j})"


def pair_mor(s, t):
    return f"({s},{t})"


class BiIndexedPseudoFunctor:
    """A pseudofunctor on ``product_index(I, J)``: covariant along the first
    leg, contravariant along the second.

    ``op_right`` is the explicitly built opposite of the second index, shared
    by all first-leg slices.
    """

    def __init__(self, name, left, right, underlying):
        self.name = name
        self.left = left
        self.right = right
        self.op_right = fincat.opposite_category(right)
        self.underlying = underlying
        self.filtered_witness = None

    def at(self, i, j):
        return self.underlying.at[pair_obj(i, j)]

    def on_left(self, s, j):
        """The functor along ``(s, Id_j)``."""
        return self.underlying.on[pair_mor(s, self.right.identity[j])]

    def on_right(self, i, t):
        """The functor along ``(Id_i, t)``; for ``t: j -> j2`` it maps
        ``at(i, j2)`` to ``at(i, j)``."""
        return self.underlying.on[pair_mor(self.left.identity[i], t)]

    def on_pair(self, s, t):
        return self.underlying.on[pair_mor(s, t)]

    def __repr__(self):
        return f"BiIndexedPseudoFunctor({self.name!r}: {self.left.name} x {self.right.name}^op)"


def validate_bi_pseudofunctor(bi, require_filtered=True):
    validate_pseudofunctor(bi.underlying)
    bi.filtered_witness = fincat.is_filtered(bi.left)
    if require_filtered and not bi.filtered_witness.verdict:
        from .errors import NotFiltered

        raise NotFiltered(
            f"{bi.name}: first index {bi.left.name} is not filtered",
            witness=bi.filtered_witness,
        )
    return bi


def strict_bi_pseudofunctor(name, left, right, at, on_left, on_right,
                            require_filtered=True):
    """Assemble a strict bi-indexed pseudofunctor from its two morphism legs.

    ``at[(i, j)]`` are the value categories, ``on_left[(s, j)]`` the functors
    along ``(s, Id_j)`` and ``on_right[(i, t)]`` those along ``(Id_i, t)``.
    Each leg must be strictly functorial and the two legs must commute; the
    general square ``(s, t)`` is the composite of its legs.
    """
    for s in left.nonidentity_morphisms():
        for j in right.objects:
            if (s, j) not in on_left:
                raise IncompatibleCells(f"{name}: missing left leg ({s}, {j})")
    for i in left.objects:
        for t in right.nonidentity_morphisms():
            if (i, t) not in on_right:
                raise IncompatibleCells(f"{name}: missing right leg ({i}, {t})")
    full_left = dict(on_left)
    for i in left.objects:
        for j in right.objects:
            full_left[(left.identity[i], j)] = identity_functor(at[(i, j)])
    full_right = dict(on_right)
    for i in left.objects:
        for j in right.objects:
            full_right[(i, right.identity[j])] = identity_functor(at[(i, j)])

    for s2, s1 in left.composable_pairs():
        for j in right.objects:
            direct = full_left[(left.table[(s2, s1)], j)]
            stacked = compose_functors(full_left[(s2, j)], full_left[(s1, j)])
            if not fincat.functor_tables_equal(direct, stacked):
                raise IncompatibleCells(
                    f"{name}: left leg not strictly functorial on ({s2}, {s1}) at {j!r}",
                    pair=(s2, s1),
                    obj=j,
                )
    for t1, t2 in right.composable_pairs():
        # contravariant: the image of t1 . t2 is on(t2) then on(t1)
        for i in left.objects:
            direct = full_right[(i, right.table[(t1, t2)])]
            stacked = compose_functors(full_right[(i, t2)], full_right[(i, t1)])
            if not fincat.functor_tables_equal(direct, stacked):
                raise IncompatibleCells(
                    f"{name}: right leg not strictly functorial on ({t1}, {t2}) at {i!r}",
                    pair=(t1, t2),
                    obj=i,
                )
    for s in left.mor_names:
        i, i2 = left.dom[s], left.cod[s]
        for t in right.mor_names:
            j, j2 = right.dom[t], right.cod[t]
            one = compose_functors(full_left[(s, j)], full_right[(i, t)])
            two = compose_functors(full_right[(i2, t)], full_left[(s, j2)])
            if not fincat.functor_tables_equal(one, two):
                raise IncompatibleCells(
                    f"{name}: legs do not commute on ({s}, {t})", s=s, t=t
                )

    index = product_index(left, right)
    at_full = {pair_obj(i, j): at[(i, j)] for i in left.objects for j in right.objects}
    on = {}
    for s in left.mor_names:
        for t in right.mor_names:
            on[pair_mor(s, t)] = compose_functors(
                full_left[(s, right.dom[t])],
                full_right[(left.dom[s], t)],
                name=f"{name}({s},{t})",
            )
    underlying = validate_pseudofunctor(PseudoFunctor(name, index, at_full, on))
    return validate_bi_pseudofunctor(
        BiIndexedPseudoFunctor(name, left, right, underlying),
        require_filtered=require_filtered,
    )


def slice_at(bi, i=None, j=None):
    """Freeze one leg of a bi-indexed pseudofunctor.

    Fixing ``j`` yields the pseudofunctor ``a(., j)`` on the first index;
    fixing ``i`` yields ``a(i, .)`` on the explicit opposite of the second.
    Coherence cells are restricted accordingly and the slice is re-validated.
    """
    if (i is None) == (j is None):
        raise UnknownObject("slice_at needs exactly one of i, j")
    under = bi.underlying
    if j is not None:
        if j not in bi.right.objects:
            raise UnknownObject(f"{bi.name}: unknown second-leg object {j!r}", obj=j)
        left = bi.left
        idj = bi.right.identity[j]
        at = {x: bi.at(x, j) for x in left.objects}
        on = {s: bi.on_left(s, j) for s in left.mor_names}
        unit = {
            x: under.unit[pair_obj(x, j)].components
            for x in left.objects
        }
        comp = {
            (g, f): under.comp[(pair_mor(g, idj), pair_mor(f, idj))].components
            for g, f in left.composable_pairs()
        }
        return _rebuild_slice(f"{bi.name}(.,{j})", left, at, on, unit, comp)
    if i not in bi.left.objects:
        raise UnknownObject(f"{bi.name}: unknown first-leg object {i!r}", obj=i)
    opp = bi.op_right
    idi = bi.left.identity[i]
    at = {x: bi.at(i, x) for x in opp.objects}
    on = {t: bi.on_right(i, t) for t in opp.mor_names}
    unit = {x: under.unit[pair_obj(i, x)].components for x in opp.objects}
    comp = {}
    for m1, m2 in opp.composable_pairs():
        # m1, m2 are names of second-index morphisms t: dom -> cod read backwards
        comp[(m1, m2)] = under.comp[(pair_mor(idi, m1), pair_mor(idi, m2))].components
    return _rebuild_slice(f"{bi.name}({i},.)", opp, at, on, unit, comp)


def _rebuild_slice(name, index, at, on, unit_components, comp_components):
    unit = {
        x: NatTransformation(
            f"{name}.unit[{x}]",
            on[index.identity[x]],
            identity_functor(at[x]),
            comps,
        )
        for x, comps in unit_components.items()
    }
    comp = {
        key: NatTransformation(
            f"{name}.comp[{key[0]},{key[1]}]",
            on[index.table[key]],
            compose_functors(on[key[0]], on[key[1]]),
            comps,
        )
        for key, comps in comp_components.items()
    }
    return validate_pseudofunctor(PseudoFunctor(name, index, at, on, unit, comp))


# ---------------------------------------------------------------------------
# componentwise functor families between pseudofunctors
# ---------------------------------------------------------------------------


class PseudoNat:
    """A family of functors ``at[i]: source.at(i) -> target.at(i)`` with
    invertible compatibility cells ``cells[s]: at[i2] . source.on(s) =>
    target.on(s) . at[i]`` for ``s: i -> i2``."""

    def __init__(self, name, source, target, at, cells=None):
        self.name = name
        self.source = source
        self.target = target
        self.at = dict(at)
        self.cells = dict(cells or {})
        self._validated = False

    def cell_at(self, s, x):
        return self.cells[s].at(x)


def validate_pseudonat(nu):
    """Check every cell is an invertible natural transformation satisfying the
    unit and composition coherence against both pseudofunctors' cells."""
    if nu._validated:
        return nu
    src, tgt = nu.source, nu.target
    idx = src.index
    if tgt.index is not idx and not fincat.same_tables(tgt.index, idx):
        raise IncompatibleCells(f"{nu.name}: indexes differ")
    validate_pseudofunctor(src)
    validate_pseudofunctor(tgt)
    for i in idx.objects:
        validate_functor(nu.at[i])
    for s in idx.mor_names:
        i, i2 = idx.dom[s], idx.cod[s]
        upper = compose_functors(nu.at[i2], src.on[s])
        lower = compose_functors(tgt.on[s], nu.at[i])
        if s not in nu.cells:
            nu.cells[s] = identity_nat(upper, lower, name=f"{nu.name}.cell[{s}]")
        cell = nu.cells[s]
        validate_nat(cell)
        if not cell.is_iso:
            raise NotIsoCell(f"{nu.name}: cell at {s!r} not invertible", morphism=s)
        if not (
            fincat.functor_tables_equal(cell.source, upper)
            and fincat.functor_tables_equal(cell.target, lower)
        ):
            raise IncompatibleCells(
                f"{nu.name}: cell at {s!r} has wrong endpoints", morphism=s
            )
    for i in idx.objects:
        cat = tgt.at[i]
        s0 = idx.identity[i]
        for x in src.at[i].objects:
            one = nu.at[i].mor_of(src.unit_at(i, x))
            two = cat.compose(tgt.unit_at(i, nu.at[i].ob_of(x)), nu.cell_at(s0, x))
            if one != two:
                raise IncompatibleCells(
                    f"{nu.name}: unit coherence fails at {i!r} on {x!r}", obj=i, x=x
                )
    for s2, s1 in idx.composable_pairs():
        i0 = idx.dom[s1]
        cat = tgt.at[idx.cod[s2]]
        for x in src.at[i0].objects:
            one = cat.compose(
                tgt.on[s2].mor_of(nu.cell_at(s1, x)),
                cat.compose(
                    nu.cell_at(s2, src.on[s1].ob_of(x)),
                    nu.at[idx.cod[s2]].mor_of(src.comp_at(s2, s1, x)),
                ),
            )
            two = cat.compose(
                tgt.comp_at(s2, s1, nu.at[i0].ob_of(x)),
                nu.cell_at(idx.table[(s2, s1)], x),
            )
            if one != two:
                raise IncompatibleCells(
                    f"{nu.name}: composition coherence fails on ({s2}, {s1}) at {x!r}",
                    pair=(s2, s1),
                    x=x,
                )
    nu._validated = True
    return nu


def strict_pseudonat(name, source, target, at):
    return validate_pseudonat(PseudoNat(name, source, target, at))
