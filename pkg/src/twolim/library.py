"""Bundled shape library and random instance generation.

The first-index shapes are all filtered; the second-index shapes are small
finite diagrams.  Value categories are deliberately tiny so that exhaustive
verification stays fast.  Everything produced here is deterministic given a
``random.Random`` instance.
"""

import random

from . import fincat, pseudo
from .fincat import FinFunctor, build_category, validate_category, validate_functor
from .pseudo import PseudoFunctor, strict_bi_pseudofunctor, validate_pseudofunctor


# -- index shapes -------------------------------------------------------------


def terminal(name="One"):
    return build_category(name, ["*"])


def walking_arrow(name="Two"):
    return build_category(name, ["0", "1"], [("f", "0", "1")])


def discrete(n, name=None):
    objs = [f"d{k}" for k in range(n)]
    return build_category(name or f"Disc{n}", objs)


def parallel_pair(name="Pair"):
    return build_category(name, ["a", "b"], [("s", "a", "b"), ("s2", "a", "b")])


def cospan_shape(name="Cospan"):
    return build_category(
        name, ["a", "b", "c"], [("f", "a", "c"), ("g", "b", "c")]
    )


def chain3(name="Chain3"):
    return build_category(
        name,
        ["0", "1", "2"],
        [("f", "0", "1"), ("g", "1", "2"), ("gf", "0", "2")],
        {("g", "f"): "gf"},
    )


def equalizing_endo(name="Endo"):
    """Two parallel arrows caught by an idempotent endomorphism downstream."""
    return build_category(
        name,
        ["a", "b"],
        [
            ("s", "a", "b"),
            ("s2", "a", "b"),
            ("e", "b", "b"),
            ("es", "a", "b"),
        ],
        {
            ("e", "s"): "es",
            ("e", "s2"): "es",
            ("e", "e"): "e",
            ("e", "es"): "es",
        },
    )


def filtered_shapes():
    return [terminal(), walking_arrow(), cospan_shape(), equalizing_endo()]


def finite_shapes():
    return [terminal(), walking_arrow(), parallel_pair(), cospan_shape()]


# -- value categories -----------------------------------------------------------


def arrow_value(name="ArrowV"):
    return build_category(name, ["X", "Y"], [("w", "X", "Y")])


def iso_pair(name="IsoPair"):
    return build_category(
        name,
        ["A", "B"],
        [("u", "A", "B"), ("v", "B", "A")],
        {("v", "u"): "id_A", ("u", "v"): "id_B"},
    )


def endo_idem(name="Idem"):
    return build_category(name, ["P"], [("u", "P", "P")], {("u", "u"): "u"})


def endo_idem_ufirst(name="IdemU"):
    """Same as ``endo_idem`` but with the idempotent declared before the
    identity, so it wins canonical-representative contests."""
    return validate_category(
        {
            "name": name,
            "objects": ["P"],
            "morphisms": [("u", "P", "P"), ("id_P", "P", "P")],
            "identity": {"P": "id_P"},
            "compose": {
                ("u", "u"): "u",
                ("u", "id_P"): "u",
                ("id_P", "u"): "u",
                ("id_P", "id_P"): "id_P",
            },
        }
    )


def value_categories():
    return [
        discrete(1, "V1"),
        discrete(2, "V2"),
        discrete(3, "V3"),
        arrow_value(),
        iso_pair(),
        endo_idem(),
    ]


# -- canned pseudofunctors --------------------------------------------------------


def swap_pseudofunctor(name="Swap"):
    """A genuinely non-strict pseudofunctor on the one-object index: the value
    is the isomorphic pair and the identity acts by the swap autoequivalence,
    with the coherence cells given by the chosen isomorphisms."""
    idx = terminal()
    val = iso_pair()
    swap = validate_functor(
        FinFunctor(
            "swap",
            val,
            val,
            {"A": "B", "B": "A"},
            {"id_A": "id_B", "id_B": "id_A", "u": "v", "v": "u"},
        )
    )
    star = idx.identity["*"]
    unit = fincat.NatTransformation(
        f"{name}.unit",
        swap,
        fincat.identity_functor(val),
        {"A": "v", "B": "u"},
    )
    comp = fincat.NatTransformation(
        f"{name}.comp",
        swap,
        fincat.compose_functors(swap, swap),
        {"A": "v", "B": "u"},
    )
    return validate_pseudofunctor(
        PseudoFunctor(name, idx, {"*": val}, {star: swap},
                      {"*": unit}, {(star, star): comp})
    )


def constant_functor(src, tgt, obj, name=None):
    return validate_functor(
        FinFunctor(
            name or f"const[{obj}]",
            src,
            tgt,
            {x: obj for x in src.objects},
            {m: tgt.identity[obj] for m in src.mor_names},
        )
    )


# -- random generation ------------------------------------------------------------


def random_functor(rng, src, tgt):
    """A uniformly-shuffled backtracking search for any functor src -> tgt.

    A constant functor always exists, so the search always succeeds.
    """
    gens = src.nonidentity_morphisms()
    objs = list(tgt.objects)

    def assign_objects(k, obmap):
        if k == len(src.objects):
            mor = {src.identity[x]: tgt.identity[obmap[x]] for x in src.objects}
            return assign_mors(0, obmap, mor)
        order = objs[:]
        rng.shuffle(order)
        for cand in order:
            obmap[src.objects[k]] = cand
            res = assign_objects(k + 1, obmap)
            if res is not None:
                return res
            del obmap[src.objects[k]]
        return None

    def assign_mors(k, obmap, mor):
        if k == len(gens):
            fun = FinFunctor("rand", src, tgt, dict(obmap), dict(mor))
            try:
                return validate_functor(fun)
            except Exception:
                return None
        m = gens[k]
        cands = list(tgt.hom(obmap[src.dom[m]], obmap[src.cod[m]]))
        rng.shuffle(cands)
        for cand in cands:
            mor[m] = cand
            ok = True
            for g, f in src.composable_pairs():
                if g in mor and f in mor and src.table[(g, f)] in mor:
                    if tgt.table[(mor[g], mor[f])] != mor[src.table[(g, f)]]:
                        ok = False
                        break
            if ok:
                res = assign_mors(k + 1, obmap, mor)
                if res is not None:
                    return res
            del mor[m]
        return None

    fun = assign_objects(0, {})
    if fun is None:  # fall back to a constant functor
        obj = rng.choice(list(tgt.objects))
        return constant_functor(src, tgt, obj)
    return fun


def _rand_value(rng, pool):
    return rng.choice(pool)


def random_instance(rng, name="fuzz"):
    """One strict square of categories over a filtered first index and a
    finite second index.

    Three strategies keep strictness constructive: an active first leg with an
    identity second leg, the reverse, or both legs active over the walking
    arrow with constant second-leg functors.
    """
    pool = value_categories()
    left = rng.choice(filtered_shapes())
    right = rng.choice(finite_shapes())
    strategies = ["left-active", "right-active"]
    if len(left.nonidentity_morphisms()) <= 1:
        strategies.append("both-active")
    strategy = rng.choice(strategies)

    if strategy == "left-active":
        vals = {i: _rand_value(rng, pool) for i in left.objects}
        at = {(i, j): vals[i] for i in left.objects for j in right.objects}
        on_left = {}
        for s, legs in _strict_left_leg(rng, left, vals).items():
            for j in right.objects:
                on_left[(s, j)] = legs
        on_right = {
            (i, t): fincat.identity_functor(vals[i])
            for i in left.objects
            for t in right.nonidentity_morphisms()
        }
    elif strategy == "right-active":
        vals = {j: _rand_value(rng, pool) for j in right.objects}
        at = {(i, j): vals[j] for i in left.objects for j in right.objects}
        on_left = {
            (s, j): fincat.identity_functor(vals[j])
            for s in left.nonidentity_morphisms()
            for j in right.objects
        }
        on_right = {}
        for t in right.nonidentity_morphisms():
            fun = random_functor(rng, vals[right.cod[t]], vals[right.dom[t]])
            for i in left.objects:
                on_right[(i, t)] = fun
    else:
        at = {
            (i, j): _rand_value(rng, pool)
            for i in left.objects
            for j in right.objects
        }
        s = left.nonidentity_morphisms()[0] if left.nonidentity_morphisms() else None
        on_left = {}
        if s is not None:
            i0, i1 = left.dom[s], left.cod[s]
            for j in right.objects:
                on_left[(s, j)] = random_functor(rng, at[(i0, j)], at[(i1, j)])
        on_right = {}
        for t in right.nonidentity_morphisms():
            j0, j1 = right.dom[t], right.cod[t]
            if s is None:
                for i in left.objects:
                    on_right[(i, t)] = random_functor(rng, at[(i, j1)], at[(i, j0)])
            else:
                i0, i1 = left.dom[s], left.cod[s]
                z0 = rng.choice(list(at[(i0, j0)].objects))
                on_right[(i0, t)] = constant_functor(at[(i0, j1)], at[(i0, j0)], z0)
                z1 = on_left[(s, j0)].ob_of(z0)
                on_right[(i1, t)] = constant_functor(at[(i1, j1)], at[(i1, j0)], z1)

    bi = strict_bi_pseudofunctor(name, left, right, at, on_left, on_right)
    return bi, {"left": left.name, "right": right.name, "strategy": strategy}


def _strict_left_leg(rng, left, vals):
    """Functor images for the non-identity morphisms of a filtered shape,
    strictly respecting its composition relations."""
    legs = {}
    nonid = left.nonidentity_morphisms()
    if not nonid:
        return legs
    if left.name.startswith("Endo"):
        # idempotent via a constant functor; the parallel pair stays free
        z = rng.choice(list(vals["b"].objects))
        legs["e"] = constant_functor(vals["b"], vals["b"], z)
        legs["s"] = random_functor(rng, vals["a"], vals["b"])
        legs["s2"] = random_functor(rng, vals["a"], vals["b"])
        legs["es"] = constant_functor(vals["a"], vals["b"], z)
        return legs
    # shapes without composition relations among non-identities
    for s in nonid:
        legs[s] = random_functor(rng, vals[left.dom[s]], vals[left.cod[s]])
    return legs


def instance_from_seed(seed, name=None):
    rng = random.Random(seed)
    return random_instance(rng, name or f"fuzz[{seed}]")
