"""Seeded random models, morphisms and elements for property tests.

Differentials are built degree by degree: the value on a generator is drawn
from the space of decomposable cycles one degree down, which forces d^2 = 0
by construction.  Morphisms are built the same way, solving the chain
condition degree by degree and falling back to smaller values when a solve
has no solution.
"""
from __future__ import annotations

import random

from dglcalc import DglModel, DglMorphism, FreeLieAlgebra
from dglcalc.complexes import DglComplex
from dglcalc.lie import transport
from dglcalc import linalg

NAMES = "abcdefgh"


def random_degrees(rng, max_gens=3, min_degree=2, max_degree=4, degree_one_budget=0):
    n = rng.randint(1, max_gens)
    out = []
    ones = 0
    for _ in range(n):
        d = rng.randint(min_degree - (1 if ones < degree_one_budget else 0), max_degree)
        if d < min_degree:
            ones += 1
        out.append(max(d, 1))
    out.sort()
    return out


def random_cycle_vector(rng, model, degree, decomposable=False):
    """A random small-integer cycle of the model in the given degree."""
    if degree < 1 or degree > model.truncation:
        return model.algebra.zero(degree)
    cx = DglComplex(model)
    words = cx.labels(degree)
    if not words:
        return model.algebra.zero(degree)
    cols = cx.d_columns(degree)
    if decomposable:
        idx = [i for i, w in enumerate(words) if len(w) >= 2]
    else:
        idx = list(range(len(words)))
    kernel = linalg.kernel_of_columns([cols[i] for i in idx])
    out = model.algebra.zero(degree)
    for vec in kernel:
        c = rng.choice([-2, -1, 0, 0, 1, 1, 2])
        if c:
            lifted = {idx[i]: v for i, v in vec.items()}
            out = out + c * cx.from_vector(degree, lifted)
    return out


def random_model(seed, max_gens=3, truncation=8, min_degree=2, max_degree=4,
                 degree_one_budget=0):
    """A random validated minimal model (decomposable differential, d^2 = 0)."""
    rng = random.Random(seed)
    degrees = random_degrees(rng, max_gens, min_degree, max_degree, degree_one_budget)
    gens = [(NAMES[i], d) for i, d in enumerate(degrees)]
    alg = FreeLieAlgebra(gens, truncation=truncation)
    diff = {}
    for name, d in gens:
        partial = DglModel(alg, diff)
        value = random_cycle_vector(rng, partial, d - 1, decomposable=True)
        if not value.is_zero():
            diff[name] = value
    return DglModel(alg, diff)


def extend_to_supermodel(seed, base, extra=1, max_degree=5):
    """A model containing the base's generators plus a few new ones."""
    rng = random.Random(seed)
    gens = [(g.name, g.degree) for g in base.generators]
    used = {g.name for g in base.generators}
    pool = [c for c in "uvwpqr" if c not in used]
    for i in range(extra):
        gens.append((pool[i], rng.randint(2, max_degree)))
    gens.sort(key=lambda t: t[1])
    alg = FreeLieAlgebra(gens, truncation=base.truncation)
    diff = {}
    for name, d in gens:
        if name in used:
            old = base.diff.get(name)
            if old is not None:
                value = transport(old, alg)
                if not value.is_zero():
                    diff[name] = value
            continue
        partial = DglModel(alg, diff)
        value = random_cycle_vector(rng, partial, d - 1, decomposable=True)
        if not value.is_zero():
            diff[name] = value
    model = DglModel(alg, diff)
    values = {g.name: alg.gen(g.name) for g in base.generators}
    incl = DglMorphism(base, model, values, name="incl")
    return model, incl


def random_morphism(seed, src, dst):
    """A random chain map src -> dst, or None when the solves obstruct it."""
    rng = random.Random(seed)
    values = {}
    cx = DglComplex(dst)
    for g in sorted(src.generators, key=lambda g: g.degree):
        partial = DglMorphism(src, dst, {**values, **{
            h.name: dst.algebra.zero(h.degree)
            for h in src.generators if h.name not in values
        }}, check=False)
        rhs = partial.apply(src.diff_of(g.name))
        if g.degree > dst.truncation:
            return None
        target = cx.to_vector(g.degree - 1, rhs) if not rhs.is_zero() else {}
        sol = linalg.solve_columns(cx.d_columns(g.degree), target)
        if sol is None:
            return None
        value = cx.from_vector(g.degree, sol)
        value = value + random_cycle_vector(rng, dst, g.degree)
        values[g.name] = value
    return DglMorphism(src, dst, values)


def random_validated_morphism(seed, max_gens=3, truncation=8):
    """Draws from several shapes: endomorphism, inclusion, zero, general."""
    rng = random.Random(seed)
    kind = rng.choice(["endo", "inclusion", "zero", "general", "general"])
    src = random_model(rng.randint(0, 10**6), max_gens=max_gens, truncation=truncation)
    if kind == "inclusion":
        _, incl = extend_to_supermodel(rng.randint(0, 10**6), src, extra=rng.randint(1, 2))
        return incl
    if kind == "endo":
        dst = src
    elif kind == "zero":
        from dglcalc import zero_morphism

        dst = random_model(rng.randint(0, 10**6), max_gens=max_gens, truncation=truncation)
        return zero_morphism(src, dst)
    else:
        dst = random_model(rng.randint(0, 10**6), max_gens=max_gens, truncation=truncation)
    phi = random_morphism(rng.randint(0, 10**6), src, dst)
    if phi is None:
        from dglcalc import zero_morphism

        return zero_morphism(src, dst)
    return phi
