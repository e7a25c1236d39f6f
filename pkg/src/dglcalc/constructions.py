"""Product models, linearization, cylinder objects and homotopy verification.

The product construction attaches to a minimal model L(W; d) one generator v
of degree n-1 per sphere factor and a shifted copy W' = s^n W, with

    d(w') = [v, w] + (-1)^n S(d(w)),

where S is the degree-n suspension derivation along the inclusion.  The
cylinder of L(V; d) is L(V, sV, V^; D) with D(sv) = v^, D(v^) = 0; the far
end inclusion is exp([D, sigma]) applied to the near end, where sigma is the
degree-1 derivation v -> sv.  Homotopies out of the cylinder are verified,
not searched for: the end condition is polynomial in the suspension values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping, Optional

from . import linalg
from .complexes import DglComplex
from .derivations import GenDerivation
from .errors import InternalError, PreconditionError, TruncationError
from .lie import FreeLieAlgebra, Generator, LieElement, transport as _transport
from .model import DglModel, DglMorphism


def _fresh_name(base: str, used: set) -> str:
    name = base
    while name in used:
        name = name + "_"
    used.add(name)
    return name


# -- product with a wedge of spheres ----------------------------------------------


@dataclass
class ProductModel:
    base: DglModel
    spheres: list
    model: DglModel
    inclusion: DglMorphism  # base -> model
    sphere_generators: list  # one generator name per sphere
    suspensions: list  # the degree-n_i suspension derivations along the inclusion
    suspended_names: list  # per sphere: dict base-generator name -> shifted name


def product_model(base: DglModel, spheres, names: Optional[list] = None) -> ProductModel:
    """Model of (wedge of spheres) x (space of the base model)."""
    spheres = list(spheres)
    if any(n < 2 for n in spheres):
        raise PreconditionError("sphere dimensions must be at least 2")
    trunc = base.truncation
    used = {g.name for g in base.generators}
    gens = [Generator(g.name, g.degree, g.upper) for g in base.generators]
    sphere_names = []
    suspended_names = []
    for i, n in enumerate(spheres):
        vname = _fresh_name("v" if len(spheres) == 1 else f"v{i + 1}", used)
        sphere_names.append(vname)
        if n - 1 > trunc:
            raise TruncationError(f"sphere generator of degree {n - 1} exceeds truncation")
        gens.append(Generator(vname, n - 1))
        shifted = {}
        for g in base.generators:
            if g.degree + n > trunc:
                raise TruncationError(
                    f"suspended generator of degree {g.degree + n} exceeds truncation"
                )
            suffix = "'" if len(spheres) == 1 else f"'{i + 1}"
            shifted[g.name] = _fresh_name(g.name + suffix, used)
            gens.append(Generator(shifted[g.name], g.degree + n))
        suspended_names.append(shifted)

    alg = FreeLieAlgebra(gens, truncation=trunc)

    def transport(element: LieElement) -> LieElement:
        return _transport(element, alg)

    diff = {}
    for g in base.generators:
        value = base.diff_of(g.name)
        if not value.is_zero():
            diff[g.name] = transport(value)

    # suspension derivations, evaluated before the result model exists: the
    # recursion only needs the algebra bracket and the inclusion of letters
    for i, n in enumerate(spheres):
        v = alg.gen(sphere_names[i])
        shifted = suspended_names[i]
        cache: dict = {}

        def s_word(word, _n=n, _shifted=shifted, _cache=cache):
            if word in _cache:
                return _cache[word]
            if len(word) == 1:
                gname = base.algebra.generators[word[0]].name
                out = alg.gen(_shifted[gname])
            else:
                prefix, last = word[:-1], word[-1:]
                a = s_word(prefix)
                lam_prefix = transport(base.algebra.monomial(prefix))
                lam_last = transport(base.algebra.monomial(last))
                out = alg.bracket(a, lam_last)
                sign = -1 if (_n * base.algebra.word_degree(prefix)) % 2 else 1
                out = out + sign * alg.bracket(lam_prefix, s_word(last))
            _cache[word] = out
            return out

        def s_apply(element: LieElement, _s_word=s_word, _n=n) -> LieElement:
            out = alg.zero(element.degree + _n)
            for word, c in element.terms.items():
                out = out + c * _s_word(word)
            return out

        sign = -1 if n % 2 else 1
        for g in base.generators:
            w = transport(base.algebra.gen(g.name))
            dw = base.diff_of(g.name)
            value = alg.bracket(v, w) + sign * s_apply(dw)
            diff[shifted[g.name]] = value

    model = DglModel(alg, diff, name=(base.name or "X") + "_product")
    inclusion = DglMorphism(
        base, model, {g.name: alg.gen(g.name) for g in base.generators}, name="incl"
    )
    suspensions = []
    for i, n in enumerate(spheres):
        values = {g.name: alg.gen(suspended_names[i][g.name]) for g in base.generators}
        suspensions.append(GenDerivation(inclusion, n, values))
    return ProductModel(
        base=base,
        spheres=spheres,
        model=model,
        inclusion=inclusion,
        sphere_generators=sphere_names,
        suspensions=suspensions,
        suspended_names=suspended_names,
    )


def sphere_wedge_model(spheres, truncation: int) -> DglModel:
    """L(v_1, ..., v_k; d = 0) with |v_i| = n_i - 1."""
    gens = []
    for i, n in enumerate(spheres):
        gens.append((("v" if len(spheres) == 1 else f"v{i + 1}"), n - 1))
    return DglModel(FreeLieAlgebra(gens, truncation=truncation), {}, name="wedge")


# -- linearization ----------------------------------------------------------------


@dataclass
class LinearizationReport:
    source_linear_homology: dict
    target_linear_homology: dict
    linear_quasi_iso: bool
    full_quasi_iso: Optional[bool]
    window: list

    @property
    def verdicts_agree(self) -> bool:
        return self.full_quasi_iso is None or self.linear_quasi_iso == self.full_quasi_iso


class _LinearComplex:
    """The generator span of a free model with the linear part of d.

    The generating space is finite, so every degree is complete and the
    homology verdict is global.
    """

    def __init__(self, model: DglModel):
        self.model = model
        self.by_degree = {}
        for i, g in enumerate(model.generators):
            self.by_degree.setdefault(g.degree, []).append(i)
        self.max_degree = max(self.by_degree, default=0)

    def dim(self, n):
        return len(self.by_degree.get(n, []))

    def basis(self, n):
        return self.by_degree.get(n, [])

    def d_columns(self, n):
        cols = []
        tgt = {gi: k for k, gi in enumerate(self.basis(n - 1))}
        for gi in self.basis(n):
            g = self.model.generators[gi]
            linear = self.model.diff_of(g.name).linear_part()
            col = {}
            for word, c in linear.terms.items():
                col[tgt[word[0]]] = c
            cols.append(col)
        return cols

    def homology_data(self, n):
        cycles = linalg.kernel_of_columns(self.d_columns(n))
        boundaries = linalg.rref(self.d_columns(n + 1))
        reduced = []
        for row in linalg.rref(cycles).rows:
            residual, _ = boundaries.reduce(row)
            if residual:
                reduced.append(residual)
        return linalg.rref(reduced).rows


def linear_part_map(phi: DglMorphism):
    """Per-degree columns of the linearization of a morphism."""
    src = _LinearComplex(phi.source)
    dst = _LinearComplex(phi.target)
    cols_by_degree = {}
    for n, basis in src.by_degree.items():
        tgt = {gi: k for k, gi in enumerate(dst.basis(n))}
        cols = []
        for gi in basis:
            g = phi.source.generators[gi]
            linear = phi.values[g.name].linear_part()
            col = {}
            for word, c in linear.terms.items():
                col[tgt[word[0]]] = c
            cols.append(col)
        cols_by_degree[n] = cols
    return src, dst, cols_by_degree


def linearization(phi: DglMorphism) -> LinearizationReport:
    """Linear chain map between generator spans, with quasi-iso verdicts.

    The linear verdict is exact and global; the full verdict is computed on
    the trusted window of the two models and cross-checked against it.
    """
    src, dst, cols_by_degree = linear_part_map(phi)
    top = max(src.max_degree, dst.max_degree) + 1
    linear_ok = True
    src_h, dst_h = {}, {}
    for n in range(1, top + 1):
        hs = src.homology_data(n)
        hd = dst.homology_data(n)
        src_h[n] = len(hs)
        dst_h[n] = len(hd)
        # induced map on linear homology
        cols = cols_by_degree.get(n, [])
        dst_cycles = linalg.rref(linalg.kernel_of_columns(dst.d_columns(n)))
        dst_bnd = linalg.rref(dst.d_columns(n + 1))
        image_classes = []
        for row in hs:
            img = {}
            for j, c in row.items():
                img = linalg.vec_add(img, cols[j] if j < len(cols) else {}, c)
            residual, _ = dst_bnd.reduce(img)
            image_classes.append(residual)
        rk = linalg.rank(image_classes)
        if rk != len(hs) or len(hs) != len(hd):
            linear_ok = False
    # full quasi-isomorphism test on the trusted window
    csrc = DglComplex(phi.source)
    cdst = DglComplex(phi.target)
    window = [
        n
        for n in range(1, min(phi.source.truncation, phi.target.truncation))
        if csrc.complete(n + 1) and cdst.complete(n + 1)
    ]
    full_ok: Optional[bool] = None
    if window:
        from .complexes import induced_matrix

        full_ok = True
        for n in window:
            hs = csrc.homology(n)
            hd = cdst.homology(n)
            cols = induced_matrix(csrc, n, cdst, n, phi.apply)
            if hs.dim != hd.dim or linalg.rank(cols) != hs.dim:
                full_ok = False
    return LinearizationReport(
        source_linear_homology=src_h,
        target_linear_homology=dst_h,
        linear_quasi_iso=linear_ok,
        full_quasi_iso=full_ok,
        window=window,
    )


# -- cylinder objects ---------------------------------------------------------------


@dataclass
class CylinderModel:
    source: DglModel
    model: DglModel
    near_end: DglMorphism  # the sub-DGL inclusion
    far_end: DglMorphism  # exp([D, sigma]) applied to the near end
    projection: DglMorphism
    sigma: GenDerivation
    conjugation: GenDerivation  # [D, sigma], a degree-0 cycle derivation
    suspension_names: dict
    hat_names: dict
    exp_cap: int


def _exp_apply(theta: GenDerivation, element: LieElement, cap: int) -> LieElement:
    out = element
    term = element
    for r in range(1, cap + 1):
        term = theta.apply(term)
        if term.is_zero():
            return out
        out = out + Fraction(1, factorial(r)) * term
    if not theta.apply(term).is_zero():
        raise InternalError(
            "exponential cap exceeded: the conjugation derivation failed to be "
            f"nilpotent within {cap} steps"
        )
    return out


def cylinder(source: DglModel) -> CylinderModel:
    """The cylinder object of a free model."""
    if not source.generators:
        raise PreconditionError("cylinder of the zero model is not defined")
    trunc = source.truncation
    used = {g.name for g in source.generators}
    gens = [Generator(g.name, g.degree) for g in source.generators]
    s_names, hat_names = {}, {}
    for g in source.generators:
        if g.degree + 1 > trunc:
            raise TruncationError("suspended cylinder generator exceeds truncation")
        s_names[g.name] = _fresh_name(f"s{g.name}", used)
        hat_names[g.name] = _fresh_name(f"{g.name}^", used)
    for g in source.generators:
        gens.append(Generator(s_names[g.name], g.degree + 1))
    for g in source.generators:
        gens.append(Generator(hat_names[g.name], g.degree))
    alg = FreeLieAlgebra(gens, truncation=trunc)
    diff = {}
    for g in source.generators:
        value = source.diff_of(g.name)
        if not value.is_zero():
            diff[g.name] = _transport(value, alg)
        diff[s_names[g.name]] = alg.gen(hat_names[g.name])
    model = DglModel(alg, diff, name=(source.name or "L") + "_cyl")

    ident = DglMorphism.identity(model)
    sigma_values = {g.name: alg.gen(s_names[g.name]) for g in source.generators}
    sigma = GenDerivation(ident, 1, sigma_values)
    conj_values = {}
    for g in model.generators:
        conj_values[g.name] = model.d(sigma.values[g.name]) + sigma.apply(
            model.diff_of(g.name)
        )
    conjugation = GenDerivation(ident, 0, conj_values)

    near = DglMorphism(
        source, model, {g.name: alg.gen(g.name) for g in source.generators}, name="near"
    )
    min_deg = min(g.degree for g in source.generators)
    cap = trunc // min_deg + 1
    far_values = {
        g.name: _exp_apply(conjugation, alg.gen(g.name), cap) for g in source.generators
    }
    far = DglMorphism(source, model, far_values, name="far")
    # projection kills sV and V^
    pvals = {g.name: source.algebra.gen(g.name) for g in source.generators}
    for g in source.generators:
        pvals[s_names[g.name]] = source.algebra.zero(g.degree + 1)
        pvals[hat_names[g.name]] = source.algebra.zero(g.degree)
    projection = DglMorphism(model, source, pvals, name="proj")
    for end in (near, far):
        composed = projection.compose(end)
        for g in source.generators:
            if composed.values[g.name] != source.algebra.gen(g.name):
                raise InternalError("cylinder projection does not retract the end inclusion")
    return CylinderModel(
        source=source,
        model=model,
        near_end=near,
        far_end=far,
        projection=projection,
        sigma=sigma,
        conjugation=conjugation,
        suspension_names=s_names,
        hat_names=hat_names,
        exp_cap=cap,
    )


def exp_automorphism(cyl: CylinderModel, element: LieElement, inverse: bool = False) -> LieElement:
    theta = cyl.conjugation if not inverse else -1 * cyl.conjugation
    return _exp_apply(theta, element, cyl.exp_cap)


# -- homotopy verification -------------------------------------------------------------


@dataclass
class HomotopyReport:
    holds: bool
    mismatches: list = field(default_factory=list)


def verify_homotopy(
    cyl: CylinderModel,
    target: DglModel,
    start: DglMorphism,
    svalues: Mapping,
    end: DglMorphism,
) -> HomotopyReport:
    """Whether the homotopy with the given suspension values ends at `end`.

    The homotopy out of the cylinder is forced: it restricts to `start` on
    the source, sends each suspended generator to the given value and each
    hat generator to the differential of that value.
    """
    source = cyl.source
    if start.source is not source or start.target is not target:
        raise PreconditionError("start morphism must map the cylinder source to the target")
    if end.source is not source or end.target is not target:
        raise PreconditionError("end morphism must map the cylinder source to the target")
    values = {}
    for g in source.generators:
        values[g.name] = start.values[g.name]
        sval = svalues.get(g.name)
        if sval is None:
            sval = target.algebra.zero(g.degree + 1)
        if sval.algebra is not target.algebra:
            raise PreconditionError(f"suspension value for {g.name} lives outside the target")
        if not sval.is_zero() and sval.degree != g.degree + 1:
            raise PreconditionError(
                f"suspension value for {g.name} must have degree {g.degree + 1}"
            )
        values[cyl.suspension_names[g.name]] = sval
        values[cyl.hat_names[g.name]] = target.d(sval)
    homotopy = DglMorphism(cyl.model, target, values, name="H")
    mismatches = []
    for g in source.generators:
        got = homotopy.apply(cyl.far_end.values[g.name])
        want = end.values[g.name]
        if got != want:
            mismatches.append((g.name, got, want))
    return HomotopyReport(holds=not mismatches, mismatches=mismatches)
