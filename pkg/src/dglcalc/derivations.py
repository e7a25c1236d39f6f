"""Generalized derivation spaces of a DGL map and their chain complex.

For a map psi: L -> K, a degree-n derivation along psi is a linear map
raising degree by n with

    theta([a, b]) = [theta(a), psi(b)] + (-1)^{n|a|} [psi(a), theta(b)],

determined by its values on free generators.  The differential is

    D(theta) = d_K o theta - (-1)^{|theta|} theta o d_L.

The degree-n basis of the complex pairs each source generator g with a basis
monomial of the target in degree |g|+n, so the whole complex reduces to exact
sparse linear algebra.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .complexes import ChainComplex, HomologyReport, induced_matrix
from .errors import PreconditionError, TruncationError
from .lie import LieElement
from .model import DglMorphism, DglModel


class GenDerivation:
    """A derivation along a morphism, stored by its values on generators."""

    def __init__(self, along: DglMorphism, degree: int, values: Mapping = None):
        self.along = along
        self.degree = degree
        self.values = {}
        target = along.target.algebra
        values = values or {}
        for g in along.source.generators:
            v = values.get(g.name)
            if v is None or v.is_zero():
                self.values[g.name] = target.zero(g.degree + degree)
                continue
            if v.algebra is not target:
                raise PreconditionError(f"value for {g.name} lives outside the target algebra")
            if v.degree != g.degree + degree:
                raise PreconditionError(
                    f"value for {g.name} must have degree {g.degree + degree}, got {v.degree}"
                )
            self.values[g.name] = v
        self._word_cache = {}

    @property
    def source(self) -> DglModel:
        return self.along.source

    @property
    def target(self) -> DglModel:
        return self.along.target

    def _apply_word(self, word) -> LieElement:
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        src = self.source.algebra
        tgt = self.target.algebra
        if len(word) == 1:
            out = self.values[src.generators[word[0]].name]
        else:
            prefix, last = word[:-1], word[-1:]
            ta = self._apply_word(prefix)
            tb = self._apply_word(last)
            pa = self.along._apply_word(prefix)
            pb = self.along._apply_word(last)
            out = tgt.bracket(ta, pb)
            sign = -1 if (self.degree * src.word_degree(prefix)) % 2 else 1
            out = out + sign * tgt.bracket(pa, tb)
        self._word_cache[word] = out
        return out

    def apply(self, element: LieElement) -> LieElement:
        if element.algebra is not self.source.algebra:
            raise PreconditionError("element is not in the source algebra")
        out = self.target.algebra.zero(element.degree + self.degree)
        for word, c in element.terms.items():
            out = out + c * self._apply_word(word)
        return out

    __call__ = apply

    def differential(self) -> "GenDerivation":
        """D(theta) = d_K o theta - (-1)^{|theta|} theta o d_L."""
        sign = -1 if self.degree % 2 else 1
        values = {}
        for g in self.source.generators:
            values[g.name] = self.target.d(self.values[g.name]) - sign * self.apply(
                self.source.diff_of(g.name)
            )
        return GenDerivation(self.along, self.degree - 1, values)

    def is_cycle(self) -> bool:
        return self.differential().is_zero()

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def __add__(self, other: "GenDerivation") -> "GenDerivation":
        if other.along is not self.along or other.degree != self.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise PreconditionError("cannot add derivations of different kinds")
        return GenDerivation(
            self.along,
            self.degree,
            {g: self.values[g] + other.values[g] for g in self.values},
        )

    def __neg__(self) -> "GenDerivation":
        return GenDerivation(self.along, self.degree, {g: -v for g, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar) -> "GenDerivation":
        return GenDerivation(
            self.along, self.degree, {g: scalar * v for g, v in self.values.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GenDerivation):
            return NotImplemented
        return (
            self.along.source is other.along.source
            and self.along.target is other.along.target
            and self.degree == other.degree
            and all(self.values[g] == other.values[g] for g in self.values)
        )

    def __repr__(self):
        vals = ", ".join(f"{g} -> {v}" for g, v in self.values.items() if not v.is_zero())
        return f"<GenDerivation deg {self.degree}: {vals or '0'}>"


def extend_derivation(along: DglMorphism, degree: int, values: Mapping) -> GenDerivation:
    """Package generator values as a derivation evaluator along a morphism."""
    return GenDerivation(along, degree, values)


def adjoint(psi: DglMorphism, y: LieElement) -> GenDerivation:
    """The derivation g -> [y, psi(g)] attached to an element of the target."""
    if y.algebra is not psi.target.algebra:
        raise PreconditionError("adjoint element must live in the target of the morphism")
    tgt = psi.target.algebra
    values = {}
    for g in psi.source.generators:
        values[g.name] = tgt.bracket(y, psi.values[g.name])
    return GenDerivation(psi, y.degree, values)


def der_bracket(t1: GenDerivation, t2: GenDerivation) -> GenDerivation:
    """Commutator bracket on derivations along the identity."""
    for t in (t1, t2):
        if t.along.source is not t.along.target:
            raise PreconditionError("der_bracket requires derivations along the identity")
    if t1.along.source is not t2.along.source:
        raise PreconditionError("derivations live on different models")
    sign = -1 if (t1.degree * t2.degree) % 2 else 1
    values = {}
    for g in t1.source.generators:
        values[g.name] = t1.apply(t2.values[g.name]) - sign * t2.apply(t1.values[g.name])
    return GenDerivation(t1.along, t1.degree + t2.degree, values)


class DerComplex(ChainComplex):
    """The DG vector space of derivations along a fixed morphism."""

    def __init__(self, psi: DglMorphism):
        super().__init__()
        self.psi = psi
        self.trunc = min(psi.source.truncation, psi.target.truncation)
        self._max_src = psi.source.max_generator_degree

    def complete(self, n: int) -> bool:
        return self._max_src + n <= self.trunc

    def labels(self, n: int) -> list:
        out = []
        for gi, g in enumerate(self.psi.source.generators):
            d = g.degree + n
            if d < 1:
                continue
            if d > self.trunc:
                raise TruncationError(f"derivation degree {n} is outside the truncation window")
            for word in self.psi.target.algebra._basis_data(d).words:
                out.append((gi, word))
        return out

    def dim(self, n: int) -> int:
        return len(self.labels(n))

    def from_vector(self, n: int, vec) -> GenDerivation:
        labels = self.labels(n)
        tgt = self.psi.target.algebra
        values = {}
        for i, c in vec.items():
            gi, word = labels[i]
            gname = self.psi.source.generators[gi].name
            add = c * LieElement(tgt, tgt.word_degree(word), {word: Fraction(1)})
            values[gname] = values.get(gname, tgt.zero(add.degree)) + add
        return GenDerivation(self.psi, n, values)

    def to_vector(self, n: int, theta: GenDerivation) -> dict:
        index = {lab: i for i, lab in enumerate(self.labels(n))}
        vec = {}
        for gi, g in enumerate(self.psi.source.generators):
            value = theta.values[g.name]
            for word, c in value.terms.items():
                vec[index[(gi, word)]] = c
        return vec

    def d_columns(self, n: int) -> list:
        cols = []
        for gi, word in self.labels(n):
            gname = self.psi.source.generators[gi].name
            tgt = self.psi.target.algebra
            theta = GenDerivation(
                self.psi, n, {gname: LieElement(tgt, tgt.word_degree(word), {word: Fraction(1)})}
            )
            cols.append(self.to_vector(n - 1, theta.differential()))
        return cols


def der_complex(psi: DglMorphism) -> DerComplex:
    return DerComplex(psi)


def identity_der_complex(model: DglModel) -> DerComplex:
    return DerComplex(DglMorphism.identity(model))


def der_homology(psi: DglMorphism, degrees) -> HomologyReport:
    """Homology of the derivation complex along a morphism."""
    return DerComplex(psi).homology_report(degrees)


class InducedDerivation:
    """The homology-level derivation induced by a derivation cycle.

    Tabulates, for each source homology class within the checkable window,
    the class of the image in the target homology.
    """

    def __init__(self, theta: GenDerivation):
        if not theta.is_cycle():
            raise PreconditionError("induced_derivation requires a D-cycle")
        from .complexes import DglComplex

        self.theta = theta
        self.src = DglComplex(theta.source)
        self.dst = DglComplex(theta.target)
        n = theta.degree
        trunc = min(self.src.trunc, self.dst.trunc)
        self.checked_degrees = [
            j for j in range(1, trunc + 1) if j + 1 <= self.src.trunc and j + n + 1 <= self.dst.trunc and j + n >= 1
        ]
        self.table = {}
        for j in self.checked_degrees:
            cols = induced_matrix(self.src, j, self.dst, j + n, theta.apply)
            self.table[j] = cols

    def on_class(self, degree: int, index: int) -> dict:
        return self.table[degree][index]

    def is_zero(self) -> bool:
        return all(not col for cols in self.table.values() for col in cols)


def induced_derivation(theta: GenDerivation) -> InducedDerivation:
    return InducedDerivation(theta)
