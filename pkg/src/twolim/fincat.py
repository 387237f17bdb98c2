"""Finite categories, functors, natural transformations, and filteredness.

Everything is table-driven: a category is a finite list of objects, a finite
list of morphisms, and a total composition table over the composable pairs.
All laws (associativity, units, functoriality, naturality) are checked by
exhaustive enumeration, so a validated value doubles as a proof that the laws
hold.  Values are immutable after validation and safe to share.

Composition is written application-style throughout: ``compose(g, f)`` is
"g after f" and requires ``cod(f) == dom(g)``.
"""

import itertools

from .errors import (
    BadEndpoints,
    BadIdentity,
    DuplicateIdentifier,
    InternalInvariantError,
    MissingComposite,
    NonAssociative,
    NotFunctorial,
    NotIso,
    NotNatural,
    SearchExhausted,
)


class FinCategory:
    """A finite category with an explicit, total composition table.

    ``morphisms`` is a sequence of ``(name, dom, cod)`` triples; declaration
    order is significant everywhere (searches and canonical choices follow it).
    """

    def __init__(self, name, objects, morphisms, identity, compose):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple((m, d, c) for (m, d, c) in morphisms)
        self.identity = dict(identity)
        self.table = dict(compose)
        self.dom = {m: d for m, d, _ in self.morphisms}
        self.cod = {m: c for m, _, c in self.morphisms}
        self.mor_names = tuple(m for m, _, _ in self.morphisms)
        self._hom = {}
        for m, d, c in self.morphisms:
            self._hom.setdefault((d, c), []).append(m)
        self._mor_from = {}
        for m, d, _ in self.morphisms:
            self._mor_from.setdefault(d, []).append(m)
        self._obj_index = {o: k for k, o in enumerate(self.objects)}
        self._mor_index = {m: k for k, m in enumerate(self.mor_names)}
        self._inverses = {}

    # -- lookups ---------------------------------------------------------

    def hom(self, a, b):
        """Morphisms a -> b in declaration order."""
        return self._hom.get((a, b), [])

    def morphisms_from(self, a):
        return self._mor_from.get(a, [])

    def compose(self, g, f):
        try:
            return self.table[(g, f)]
        except KeyError:
            raise MissingComposite(
                f"{self.name}: no composite for ({g}, {f})", g=g, f=f
            ) from None

    def compose_path(self, *path):
        """Compose a nonempty path given in application order (first applied first)."""
        m = path[0]
        for nxt in path[1:]:
            m = self.compose(nxt, m)
        return m

    def is_identity(self, m):
        return self.identity.get(self.dom.get(m)) == m

    def obj_index(self, o):
        return self._obj_index[o]

    def mor_index(self, m):
        return self._mor_index[m]

    def nonidentity_morphisms(self):
        return [m for m in self.mor_names if not self.is_identity(m)]

    def composable_pairs(self):
        """All (g, f) with cod(f) == dom(g), in declaration order of (f, g)."""
        for f in self.mor_names:
            for g in self._mor_from.get(self.cod[f], []):
                yield g, f

    def parallel_pairs(self):
        """Unordered pairs of distinct parallel morphisms."""
        for mors in self._hom.values():
            for s, s2 in itertools.combinations(mors, 2):
                yield s, s2

    # -- isomorphisms ------------------------------------------------------

    def inverse(self, m):
        """The first two-sided inverse of ``m`` in declaration order, or None."""
        if m in self._inverses:
            return self._inverses[m]
        a, b = self.dom[m], self.cod[m]
        inv = None
        for w in self.hom(b, a):
            if (
                self.compose(w, m) == self.identity[a]
                and self.compose(m, w) == self.identity[b]
            ):
                inv = w
                break
        self._inverses[m] = inv
        return inv

    def is_iso(self, m):
        return self.inverse(m) is not None

    def __repr__(self):
        return (
            f"FinCategory({self.name!r}, {len(self.objects)} objects,"
            f" {len(self.morphisms)} morphisms)"
        )


def validate_category(data):
    """Check every category law on ``data`` and return the FinCategory.

    ``data`` is either a FinCategory or a mapping with keys ``name``,
    ``objects``, ``morphisms``, ``identity``, ``compose``.
    """
    if isinstance(data, FinCategory):
        cat = data
    else:
        cat = FinCategory(
            data["name"],
            data["objects"],
            data["morphisms"],
            data["identity"],
            data["compose"],
        )
    seen = set()
    for o in cat.objects:
        if o in seen:
            raise DuplicateIdentifier(f"{cat.name}: duplicate object {o!r}", name=o)
        seen.add(o)
    seen = set()
    for m, d, c in cat.morphisms:
        if m in seen:
            raise DuplicateIdentifier(f"{cat.name}: duplicate morphism {m!r}", name=m)
        seen.add(m)
        if d not in cat._obj_index or c not in cat._obj_index:
            raise BadEndpoints(
                f"{cat.name}: morphism {m!r} has unknown endpoint", morphism=m
            )
    for o in cat.objects:
        i = cat.identity.get(o)
        if i is None or i not in cat.dom:
            raise BadIdentity(f"{cat.name}: no identity morphism for {o!r}", obj=o)
        if cat.dom[i] != o or cat.cod[i] != o:
            raise BadIdentity(
                f"{cat.name}: identity of {o!r} is not an endomorphism", obj=o
            )
    # the table is defined on exactly the composable pairs
    for key in cat.table:
        g, f = key
        if f not in cat.dom or g not in cat.dom:
            raise BadEndpoints(
                f"{cat.name}: composite declared for unknown morphisms {key}", pair=key
            )
        if cat.cod[f] != cat.dom[g]:
            raise BadEndpoints(
                f"{cat.name}: composite declared for non-composable pair {key}",
                pair=key,
            )
    for g, f in cat.composable_pairs():
        if (g, f) not in cat.table:
            raise MissingComposite(
                f"{cat.name}: composable pair ({g}, {f}) absent from the table",
                g=g,
                f=f,
            )
        h = cat.table[(g, f)]
        if h not in cat.dom:
            raise BadEndpoints(
                f"{cat.name}: composite of ({g}, {f}) is unknown morphism {h!r}",
                g=g,
                f=f,
                result=h,
            )
        if cat.dom[h] != cat.dom[f] or cat.cod[h] != cat.cod[g]:
            raise BadEndpoints(
                f"{cat.name}: composite {h!r} of ({g}, {f}) has wrong endpoints",
                g=g,
                f=f,
                result=h,
            )
    for m in cat.mor_names:
        if cat.table[(m, cat.identity[cat.dom[m]])] != m:
            raise BadIdentity(
                f"{cat.name}: right unit law fails for {m!r}", morphism=m
            )
        if cat.table[(cat.identity[cat.cod[m]], m)] != m:
            raise BadIdentity(f"{cat.name}: left unit law fails for {m!r}", morphism=m)
    for g, f in cat.composable_pairs():
        gf = cat.table[(g, f)]
        for h in cat.morphisms_from(cat.cod[g]):
            if cat.table[(h, gf)] != cat.table[(cat.table[(h, g)], f)]:
                raise NonAssociative(
                    f"{cat.name}: associativity fails on ({h}, {g}, {f})",
                    h=h,
                    g=g,
                    f=f,
                )
    return cat


def build_category(name, objects, arrows=(), compose=None, id_prefix="id_"):
    """Assemble and validate a category from its non-identity data.

    Identities are synthesized as ``id_<obj>`` and all unit composites are
    filled in; ``compose`` only needs the pairs of non-identity morphisms.
    """
    objects = list(objects)
    identity = {o: f"{id_prefix}{o}" for o in objects}
    morphisms = [(identity[o], o, o) for o in objects] + [tuple(a) for a in arrows]
    dom = {m: d for m, d, _ in morphisms}
    cod = {m: c for m, _, c in morphisms}
    table = {}
    for m, d, c in morphisms:
        table[(m, identity[d])] = m
        table[(identity[c], m)] = m
    for (g, f), h in (compose or {}).items():
        table[(g, f)] = h
    return validate_category(
        {
            "name": name,
            "objects": objects,
            "morphisms": morphisms,
            "identity": identity,
            "compose": table,
        }
    )


def opposite_category(cat):
    """Same objects and morphism names, endpoints and composition reversed."""
    return validate_category(
        {
            "name": f"{cat.name}^op",
            "objects": cat.objects,
            "morphisms": [(m, c, d) for m, d, c in cat.morphisms],
            "identity": cat.identity,
            "compose": {(g, f): h for (f, g), h in cat.table.items()},
        }
    )


# ---------------------------------------------------------------------------
# functors and natural transformations
# ---------------------------------------------------------------------------


class FinFunctor:
    def __init__(self, name, source, target, ob, mor):
        self.name = name
        self.source = source
        self.target = target
        self.ob = dict(ob)
        self.mor = dict(mor)

    def ob_of(self, x):
        return self.ob[x]

    def mor_of(self, m):
        return self.mor[m]

    def __repr__(self):
        return f"FinFunctor({self.name!r}: {self.source.name} -> {self.target.name})"


def validate_functor(fun):
    """Exhaustively check totality and preservation of endpoints, identities,
    and composition."""
    src, tgt = fun.source, fun.target
    for x in src.objects:
        if fun.ob.get(x) not in tgt._obj_index:
            raise NotFunctorial(
                f"{fun.name}: object {x!r} has no valid image", obj=x
            )
    for m in src.mor_names:
        fm = fun.mor.get(m)
        if fm not in tgt.dom:
            raise NotFunctorial(
                f"{fun.name}: morphism {m!r} has no valid image", morphism=m
            )
        if tgt.dom[fm] != fun.ob[src.dom[m]] or tgt.cod[fm] != fun.ob[src.cod[m]]:
            raise NotFunctorial(
                f"{fun.name}: image of {m!r} has wrong endpoints", morphism=m
            )
    for x in src.objects:
        if fun.mor[src.identity[x]] != tgt.identity[fun.ob[x]]:
            raise NotFunctorial(
                f"{fun.name}: identity of {x!r} not preserved", obj=x
            )
    for g, f in src.composable_pairs():
        if fun.mor[src.table[(g, f)]] != tgt.table[(fun.mor[g], fun.mor[f])]:
            raise NotFunctorial(
                f"{fun.name}: composition not preserved on ({g}, {f})", g=g, f=f
            )
    return fun


def identity_functor(cat, name=None):
    return FinFunctor(
        name or f"Id({cat.name})",
        cat,
        cat,
        {o: o for o in cat.objects},
        {m: m for m in cat.mor_names},
    )


def compose_functors(g, f, name=None):
    """The functor g after f."""
    if f.target is not g.source and not same_tables(f.target, g.source):
        raise NotFunctorial(
            f"cannot compose {g.name} after {f.name}: middle categories differ"
        )
    return FinFunctor(
        name or f"{g.name}*{f.name}",
        f.source,
        g.target,
        {x: g.ob[f.ob[x]] for x in f.source.objects},
        {m: g.mor[f.mor[m]] for m in f.source.mor_names},
    )


def functor_tables_equal(f, g):
    return f.ob == g.ob and f.mor == g.mor


def same_tables(c, d):
    return (
        c.objects == d.objects
        and c.morphisms == d.morphisms
        and c.identity == d.identity
        and c.table == d.table
    )


class NatTransformation:
    """Components live in the shared target category of ``source``/``target``."""

    def __init__(self, name, source, target, components):
        self.name = name
        self.source = source
        self.target = target
        self.components = dict(components)
        self.is_iso = False  # set by validate_nat

    def at(self, x):
        return self.components[x]

    def __repr__(self):
        return f"NatTransformation({self.name!r}: {self.source.name} => {self.target.name})"


def validate_nat(nat, require_iso=False):
    """Check the naturality square for every morphism of the source category."""
    f, g = nat.source, nat.target
    if f.source is not g.source and not same_tables(f.source, g.source):
        raise NotNatural(f"{nat.name}: functors have different sources")
    if f.target is not g.target and not same_tables(f.target, g.target):
        raise NotNatural(f"{nat.name}: functors have different targets")
    cat = f.source
    tgt = f.target
    for x in cat.objects:
        c = nat.components.get(x)
        if c not in tgt.dom:
            raise NotNatural(f"{nat.name}: component at {x!r} missing", obj=x)
        if tgt.dom[c] != f.ob[x] or tgt.cod[c] != g.ob[x]:
            raise NotNatural(
                f"{nat.name}: component at {x!r} has wrong endpoints", obj=x
            )
    for m in cat.mor_names:
        x, y = cat.dom[m], cat.cod[m]
        lhs = tgt.table[(g.mor[m], nat.components[x])]
        rhs = tgt.table[(nat.components[y], f.mor[m])]
        if lhs != rhs:
            raise NotNatural(
                f"{nat.name}: naturality fails at {m!r}", morphism=m
            )
    nat.is_iso = all(tgt.is_iso(nat.components[x]) for x in cat.objects)
    if require_iso and not nat.is_iso:
        bad = next(x for x in cat.objects if not tgt.is_iso(nat.components[x]))
        raise NotIso(
            f"{nat.name}: component at {bad!r} is not invertible", obj=bad
        )
    return nat


def identity_nat(fun, other=None, name=None):
    """The identity transformation fun => other, requiring equal tables."""
    other = other or fun
    if not functor_tables_equal(fun, other):
        bad = next(
            (
                x
                for x in fun.source.objects
                if fun.ob[x] != other.ob[x]
            ),
            None,
        )
        if bad is None:
            bad = next(
                m for m in fun.source.mor_names if fun.mor[m] != other.mor[m]
            )
        raise NotNatural(
            f"identity cell {fun.name} => {other.name}: tables differ at {bad!r}",
            witness_at=bad,
        )
    tgt = fun.target
    nat = NatTransformation(
        name or f"id({fun.name})",
        fun,
        other,
        {x: tgt.identity[fun.ob[x]] for x in fun.source.objects},
    )
    return validate_nat(nat, require_iso=True)


def inverse_nat(nat, name=None):
    tgt = nat.source.target
    comps = {}
    for x, c in nat.components.items():
        inv = tgt.inverse(c)
        if inv is None:
            raise NotIso(f"{nat.name}: component at {x!r} is not invertible", obj=x)
        comps[x] = inv
    return validate_nat(
        NatTransformation(name or f"{nat.name}^-1", nat.target, nat.source, comps)
    )


# ---------------------------------------------------------------------------
# brute-force functor search
# ---------------------------------------------------------------------------


def count_functor_candidates(src, tgt):
    """Number of endpoint-respecting assignments considered by enumerate_functors."""
    total = 0
    gens = src.nonidentity_morphisms()
    for ob in itertools.product(tgt.objects, repeat=len(src.objects)):
        obmap = dict(zip(src.objects, ob))
        n = 1
        for m in gens:
            n *= len(tgt.hom(obmap[src.dom[m]], obmap[src.cod[m]]))
            if n == 0:
                break
        total += n
    return total


def enumerate_functors(src, tgt, limit=None):
    """Yield every functor src -> tgt, by exhaustive search.

    ``limit`` bounds the number of endpoint-respecting candidates inspected;
    exceeding it raises SearchExhausted.
    """
    gens = src.nonidentity_morphisms()
    inspected = 0
    for ob in itertools.product(tgt.objects, repeat=len(src.objects)):
        obmap = dict(zip(src.objects, ob))
        choices = [tgt.hom(obmap[src.dom[m]], obmap[src.cod[m]]) for m in gens]
        if any(not c for c in choices):
            continue
        for assignment in itertools.product(*choices):
            inspected += 1
            if limit is not None and inspected > limit:
                raise SearchExhausted(
                    f"functor search {src.name} -> {tgt.name} exceeded {limit} candidates"
                )
            mor = dict(zip(gens, assignment))
            for x in src.objects:
                mor[src.identity[x]] = tgt.identity[obmap[x]]
            ok = all(
                tgt.table[(mor[g], mor[f])] == mor[src.table[(g, f)]]
                for g, f in src.composable_pairs()
            )
            if ok:
                yield FinFunctor(
                    f"enum({src.name}->{tgt.name})", src, tgt, obmap, mor
                )


def find_isomorphism(c, d):
    """An invertible functor c -> d, or None.

    Backtracks over object bijections filtered by hom-set sizes, then over
    hom-set bijections consistent with identities and composition.
    """
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None

    def profile(cat, o):
        ins = sorted(len(cat.hom(p, o)) for p in cat.objects)
        outs = sorted(len(cat.hom(o, p)) for p in cat.objects)
        return (ins, outs, len(cat.hom(o, o)))

    cprof = {o: profile(c, o) for o in c.objects}
    dprof = {o: profile(d, o) for o in d.objects}

    def extend_objects(k, obmap, used):
        if k == len(c.objects):
            yield dict(obmap)
            return
        o = c.objects[k]
        for cand in d.objects:
            if cand in used or dprof[cand] != cprof[o]:
                continue
            if any(
                len(c.hom(o, prev)) != len(d.hom(cand, obmap[prev]))
                or len(c.hom(prev, o)) != len(d.hom(obmap[prev], cand))
                for prev in c.objects[:k]
            ):
                continue
            obmap[o] = cand
            used.add(cand)
            yield from extend_objects(k + 1, obmap, used)
            del obmap[o]
            used.discard(cand)

    gens = [m for m in c.mor_names if not c.is_identity(m)]

    for obmap in extend_objects(0, {}, set()):
        mor = {c.identity[o]: d.identity[obmap[o]] for o in c.objects}
        used = set(mor.values())

        def extend_mors(k):
            if k == len(gens):
                fun = FinFunctor(f"iso({c.name}~{d.name})", c, d, obmap, mor)
                try:
                    validate_functor(fun)
                except NotFunctorial:
                    return None
                return fun
            m = gens[k]
            for cand in d.hom(obmap[c.dom[m]], obmap[c.cod[m]]):
                if cand in used or d.is_identity(cand):
                    continue
                mor[m] = cand
                used.add(cand)
                ok = True
                # partial composition consistency over already-assigned pairs
                for g, f in ((m, x) for x in list(mor)):
                    if f in mor and c.cod[f] == c.dom[g]:
                        h = c.table[(g, f)]
                        if h in mor and d.table[(mor[g], mor[f])] != mor[h]:
                            ok = False
                            break
                if ok:
                    for g, f in ((x, m) for x in list(mor)):
                        if g in mor and c.cod[f] == c.dom[g]:
                            h = c.table[(g, f)]
                            if h in mor and d.table[(mor[g], mor[f])] != mor[h]:
                                ok = False
                                break
                if ok:
                    res = extend_mors(k + 1)
                    if res is not None:
                        return res
                del mor[m]
                used.discard(cand)
            return None

        res = extend_mors(0)
        if res is not None:
            return res
    return None


# ---------------------------------------------------------------------------
# filteredness
# ---------------------------------------------------------------------------


class FilteredWitness:
    """Verdict plus a replayable counterexample when the verdict is negative.

    ``condition`` is one of "i", "ii", "iii"; ``data`` carries the offending
    objects or parallel pair.  ``cocone_cache`` maps object pairs to the first
    cospan found while checking condition (ii).
    """

    def __init__(self, verdict, condition=None, data=None, cocone_cache=None):
        self.verdict = verdict
        self.condition = condition
        self.data = data
        self.cocone_cache = cocone_cache

    def __bool__(self):
        return self.verdict

    def __repr__(self):
        if self.verdict:
            return "FilteredWitness(True)"
        return f"FilteredWitness(False, condition={self.condition!r}, data={self.data!r})"


def is_filtered(cat):
    """Decide filteredness by exhaustive search over the three conditions:
    nonempty, every object pair admits a cospan, every parallel pair is
    equalized by some later morphism."""
    if not cat.objects:
        return FilteredWitness(False, "i", ())
    cache = {}
    for a in cat.objects:
        for b in cat.objects:
            found = None
            for k in cat.objects:
                la, lb = cat.hom(a, k), cat.hom(b, k)
                if la and lb:
                    found = (k, la[0], lb[0])
                    break
            if found is None:
                return FilteredWitness(False, "ii", (a, b))
            cache[(a, b)] = found
    for s, s2 in cat.parallel_pairs():
        b = cat.cod[s]
        if not any(
            cat.compose(h, s) == cat.compose(h, s2) for h in cat.morphisms_from(b)
        ):
            return FilteredWitness(False, "iii", (s, s2))
    return FilteredWitness(True, cocone_cache=cache)


def replay_filtered_counterexample(cat, witness):
    """True iff the recorded counterexample is a genuine violation."""
    if witness.verdict:
        return False
    if witness.condition == "i":
        return not cat.objects
    if witness.condition == "ii":
        a, b = witness.data
        return not any(cat.hom(a, k) and cat.hom(b, k) for k in cat.objects)
    if witness.condition == "iii":
        s, s2 = witness.data
        if (cat.dom[s], cat.cod[s]) != (cat.dom[s2], cat.cod[s2]) or s == s2:
            return False
        return not any(
            cat.compose(h, s) == cat.compose(h, s2)
            for h in cat.morphisms_from(cat.cod[s])
        )
    return False


# ---------------------------------------------------------------------------
# the category of cospans out of a fixed object pair
# ---------------------------------------------------------------------------


class CospanCategory:
    """Cospans i -> apex <- i' of a base category, with commuting-triangle
    morphisms.

    ``triple_of`` maps each object name to its ``(apex, left_leg, right_leg)``
    and ``under`` maps each morphism name to the underlying base morphism.
    """

    def __init__(self, category, triple_of, under, obj_name, mor_by_src):
        self.category = category
        self.triple_of = dict(triple_of)
        self.under = dict(under)
        self._obj_name = dict(obj_name)
        self._mor_by_src = dict(mor_by_src)
        self.lemma_checked = False

    def object_named(self, apex, left, right):
        return self._obj_name.get((apex, left, right))

    def morphism_from(self, src_obj, base_mor):
        """The cospan morphism out of ``src_obj`` lying over ``base_mor``."""
        return self._mor_by_src[(src_obj, base_mor)]

    def target_of(self, src_obj, base_mor):
        return self.category.cod[self.morphism_from(src_obj, base_mor)]


def cospan_category(base, left_foot, right_foot, check_filtered=True):
    """Materialize every cospan ``left_foot -> apex <- right_foot`` eagerly.

    A morphism out of a cospan is any base morphism from its apex; the target
    cospan is obtained by post-composing both legs.  When the base category is
    filtered the result is checked to be filtered as well (skipped and flagged
    on an empty result).
    """
    objects = []
    triple_of = {}
    obj_name = {}
    for apex in base.objects:
        for s in base.hom(left_foot, apex):
            for s2 in base.hom(right_foot, apex):
                name = f"({apex};{s};{s2})"
                objects.append(name)
                triple_of[name] = (apex, s, s2)
                obj_name[(apex, s, s2)] = name
    morphisms = []
    identity = {}
    under = {}
    mor_by_src = {}
    for src in objects:
        apex, s, s2 = triple_of[src]
        for t in base.morphisms_from(apex):
            tgt = obj_name[(base.cod[t], base.compose(t, s), base.compose(t, s2))]
            name = f"({t}@{src})"
            morphisms.append((name, src, tgt))
            under[name] = t
            mor_by_src[(src, t)] = name
            if t == base.identity[apex]:
                identity[src] = name
    compose = {}
    for fname, fsrc, ftgt in morphisms:
        for gname, gsrc, gtgt in morphisms:
            if gsrc != ftgt:
                continue
            compose[(gname, fname)] = mor_by_src[
                (fsrc, base.compose(under[gname], under[fname]))
            ]
    cat = validate_category(
        {
            "name": f"{base.name}[{left_foot},{right_foot}]",
            "objects": objects,
            "morphisms": morphisms,
            "identity": identity,
            "compose": compose,
        }
    )
    result = CospanCategory(cat, triple_of, under, obj_name, mor_by_src)
    if check_filtered and objects and is_filtered(base).verdict:
        if not is_filtered(cat).verdict:
            raise InternalInvariantError(
                f"cospan category over filtered {base.name} is not filtered",
                pair=(left_foot, right_foot),
            )
        result.lemma_checked = True
    return result


# ---------------------------------------------------------------------------
# cocones with equalized legs
# ---------------------------------------------------------------------------


def cocone_and_equalize(base, witness, tips, constraints=()):
    """Find a vertex receiving every tip, with legs equalizing the constraints.

    ``constraints`` is a sequence of pairs ``(p, q)`` of morphisms with a
    common source; the codomain of each is adjoined to the tips, and the
    returned legs satisfy ``legs[cod p] . p == legs[cod q] . q``.  The search
    is exhaustive in declaration order; the first solution wins.  For a
    genuinely filtered finite category a solution always exists.
    """
    if witness is not None and not witness.verdict:
        raise SearchExhausted(
            f"{base.name} is not filtered; cocone search refused"
        )
    tip_list = []
    for t in tips:
        if t not in tip_list:
            tip_list.append(t)
    pairs = []
    for p, q in constraints:
        if base.dom[p] != base.dom[q]:
            raise BadEndpoints(
                f"constraint ({p}, {q}) has mismatched sources", p=p, q=q
            )
        for m in (p, q):
            if base.cod[m] not in tip_list:
                tip_list.append(base.cod[m])
        pairs.append((p, q))

    def admissible(legs):
        for p, q in pairs:
            lp = legs.get(base.cod[p])
            lq = legs.get(base.cod[q])
            if lp is not None and lq is not None:
                if base.compose(lp, p) != base.compose(lq, q):
                    return False
        return True

    for vertex in base.objects:
        legs = {}

        def assign(k):
            if k == len(tip_list):
                return True
            tip = tip_list[k]
            for leg in base.hom(tip, vertex):
                legs[tip] = leg
                if admissible(legs) and assign(k + 1):
                    return True
                del legs[tip]
            return False

        if assign(0):
            return vertex, legs
    raise SearchExhausted(
        f"no equalizing cocone over {tip_list} in {base.name}",
        tips=tuple(tip_list),
        constraints=tuple(pairs),
    )
