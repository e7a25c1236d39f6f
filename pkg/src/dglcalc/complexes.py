"""Chain-complex engine: bases, differentials, homology with representatives.

Every complex in the package (a DGL, a derivation space, a relativization)
implements the same small interface: a dimension, a completeness predicate
saying whether the degree is fully known under the truncation, differential
columns, and conversions between basis vectors and domain objects.  Homology
slices carry deterministic representative cycles and can express the class of
any cycle in coordinates, which is all the downstream subgroup machinery
needs.

Truncation discipline: H_n needs C_{n-1}, C_n, C_{n+1}.  The first two are
required to compute anything; if C_{n+1} is incomplete the slice is computed
with an empty boundary space and flagged untrusted rather than silently
reported.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import linalg
from .errors import InternalError, PreconditionError, TruncationError
from .lie import LieElement
from .model import DglModel


@dataclass
class HomologySliceReport:
    degree: int  # internal degree
    dim: int
    cycle_dim: int
    boundary_dim: int
    representatives: list
    trusted: bool
    low_degree_caveat: bool


@dataclass
class HomologyReport:
    slices: dict

    def dims(self) -> dict:
        return {n: s.dim for n, s in self.slices.items()}


class HomologySlice:
    """Homology of one degree of a complex, with class-coordinate access."""

    def __init__(self, degree: int, cycles: linalg.Rref, boundaries: linalg.Rref, trusted: bool):
        self.degree = degree
        self.cycles = cycles
        self.boundaries = boundaries
        self.trusted = trusted
        reduced = []
        for row in cycles.rows:
            residual, _ = boundaries.reduce(row)
            if residual:
                reduced.append(residual)
        rr = linalg.rref(reduced)
        self.rep_rows = rr.rows
        self.rep_pivots = rr.pivots
        if len(self.rep_rows) != cycles.rank - boundaries.rank:
            raise InternalError("homology dimensions are inconsistent")

    @property
    def dim(self) -> int:
        return len(self.rep_rows)

    def class_coords(self, vec) -> dict:
        """Coordinates of a cycle's class over the representative rows."""
        residual, _ = self.boundaries.reduce(vec)
        coords = {}
        for i, (p, row) in enumerate(zip(self.rep_pivots, self.rep_rows)):
            c = residual.get(p)
            if c:
                residual = linalg.vec_add(residual, row, -c)
                coords[i] = c
        if residual:
            raise PreconditionError("vector is not a cycle of this slice")
        return coords

    def is_cycle(self, vec) -> bool:
        try:
            self.class_coords(vec)
            return True
        except PreconditionError:
            return False


class ChainComplex:
    """Base class; subclasses fill in dims, columns and object conversion."""

    trunc: int

    def __init__(self):
        self._homology_cache = {}

    def dim(self, n: int) -> int:
        raise NotImplementedError

    def complete(self, n: int) -> bool:
        raise NotImplementedError

    def d_columns(self, n: int) -> list:
        """Images in C_{n-1} of the basis vectors of C_n."""
        raise NotImplementedError

    def labels(self, n: int) -> list:
        raise NotImplementedError

    def from_vector(self, n: int, vec):
        raise NotImplementedError

    def to_vector(self, n: int, obj):
        raise NotImplementedError

    # -- homology -------------------------------------------------------------

    def homology(self, n: int) -> HomologySlice:
        cached = self._homology_cache.get(n)
        if cached is not None:
            return cached
        if not (self.complete(n) and self.complete(n - 1)):
            raise TruncationError(f"degree {n} homology is outside the computable window")
        cycles = linalg.rref(linalg.kernel_of_columns(self.d_columns(n)))
        trusted = self.complete(n + 1)
        if trusted:
            boundaries = linalg.rref(self.d_columns(n + 1))
        else:
            boundaries = linalg.rref([])
        slice_ = HomologySlice(n, cycles, boundaries, trusted)
        self._homology_cache[n] = slice_
        return slice_

    def homology_representatives(self, n: int) -> list:
        return [self.from_vector(n, row) for row in self.homology(n).rep_rows]

    def homology_report(self, degrees) -> HomologyReport:
        slices = {}
        for n in degrees:
            h = self.homology(n)
            slices[n] = HomologySliceReport(
                degree=n,
                dim=h.dim,
                cycle_dim=h.cycles.rank,
                boundary_dim=h.boundaries.rank,
                representatives=self.homology_representatives(n),
                trusted=h.trusted,
                low_degree_caveat=n <= 2,
            )
        return HomologyReport(slices=slices)


def induced_matrix(
    src: ChainComplex,
    n_src: int,
    dst: ChainComplex,
    n_dst: int,
    fn: Callable,
) -> list:
    """Columns of the map induced on homology by a chain-level function.

    fn maps objects of src degree n_src to objects of dst degree n_dst; the
    j-th column holds the class coordinates of the image of the j-th homology
    representative.
    """
    hs = src.homology(n_src)
    hd = dst.homology(n_dst)
    cols = []
    for row in hs.rep_rows:
        obj = src.from_vector(n_src, row)
        img = fn(obj)
        cols.append(hd.class_coords(dst.to_vector(n_dst, img)))
    return cols


class DglComplex(ChainComplex):
    """The underlying chain complex of a DGL model."""

    def __init__(self, model: DglModel):
        super().__init__()
        self.model = model
        self.trunc = model.truncation

    def dim(self, n: int) -> int:
        if n < 1:
            return 0
        if n > self.trunc:
            raise TruncationError(f"degree {n} exceeds truncation {self.trunc}")
        return self.model.algebra.dim(n)

    def complete(self, n: int) -> bool:
        return n <= self.trunc

    def labels(self, n: int) -> list:
        if n < 1:
            return []
        return list(self.model.algebra._basis_data(n).words)

    def d_columns(self, n: int) -> list:
        cols = []
        for word in self.labels(n):
            img = self.model._d_word(word)
            cols.append(self.to_vector(n - 1, img))
        return cols

    def from_vector(self, n: int, vec) -> LieElement:
        words = self.labels(n)
        terms = {words[i]: c for i, c in vec.items()}
        return LieElement(self.model.algebra, n, terms)

    def to_vector(self, n: int, obj: LieElement) -> dict:
        if obj.is_zero():
            return {}
        if obj.degree != n:
            raise InternalError("degree mismatch while vectorising an element")
        words = self.labels(n)
        index = {w: i for i, w in enumerate(words)}
        return {index[w]: c for w, c in obj.terms.items()}


def model_homology(model: DglModel, degrees) -> HomologyReport:
    return DglComplex(model).homology_report(degrees)


def model_is_boundary(model: DglModel, cycle: LieElement) -> Optional[LieElement]:
    """A preimage of a cycle under d, or None.

    On a bigraded model with an upper-homogeneous cycle of upper degree i the
    solve is first restricted to the upper-degree-(i+1) slice of the sources,
    matching the degreewise construction used by the coformal machinery.
    """
    if not model.d(cycle).is_zero():
        raise PreconditionError("is_boundary requires a cycle")
    if cycle.is_zero():
        return model.algebra.zero(cycle.degree + 1)
    n = cycle.degree + 1
    if n > model.truncation:
        raise TruncationError("preimage degree exceeds the truncation degree")
    cx = DglComplex(model)
    target = cx.to_vector(cycle.degree, cycle)
    words = cx.labels(n)
    cols = cx.d_columns(n)
    if model.bigraded:
        upper = cycle.upper_degree()
        if upper is not None:
            idx = [i for i, w in enumerate(words) if model.algebra.word_upper(w) == upper + 1]
            sol = linalg.solve_columns([cols[i] for i in idx], target)
            if sol is not None:
                vec = {idx[i]: c for i, c in sol.items()}
                return cx.from_vector(n, vec)
    sol = linalg.solve_columns(cols, target)
    if sol is None:
        return None
    return cx.from_vector(n, sol)
