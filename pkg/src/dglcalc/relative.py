"""Relativization (mapping cone) of a chain map and the long exact sequences.

For a chain map phi: V -> W the relativization has Rel_n = W_n + V_{n-1} with

    delta(w, v) = (phi(v) - d_W(w), d_V(v)),

inclusion J(w) = (w, 0) and projection P(w, v) = v.  J satisfies the
anti-chain identity delta o J = -J o d_W, and the three maps string together
into the long exact homology sequence

    ... -> H_{n+1}(Rel) -P-> H_n(V) -phi-> H_n(W) -J-> H_n(Rel) -> ...

Applying the construction to the adjoint map of a DGL morphism gives the long
exact derivation homology sequence; applying it to post-composition on
derivation spaces gives the relative complex used by the relative evaluation
subgroups.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import linalg
from .complexes import ChainComplex, DglComplex, induced_matrix
from .derivations import DerComplex, GenDerivation, adjoint
from .model import DglMorphism


class RelComplex(ChainComplex):
    """Mapping cone of a chain map between two package complexes."""

    def __init__(self, V: ChainComplex, W: ChainComplex, phi: Callable, name: str = ""):
        super().__init__()
        self.V = V
        self.W = W
        self.phi = phi  # object-level map, degree 0
        self.name = name
        self.trunc = min(V.trunc, W.trunc)

    def complete(self, n: int) -> bool:
        return self.W.complete(n) and self.V.complete(n - 1)

    def dim(self, n: int) -> int:
        return self.W.dim(n) + self.V.dim(n - 1)

    def labels(self, n: int) -> list:
        return [("W", lab) for lab in self.W.labels(n)] + [
            ("V", lab) for lab in self.V.labels(n - 1)
        ]

    def split(self, n: int, vec):
        wdim = self.W.dim(n)
        wvec, vvec = {}, {}
        for i, c in vec.items():
            if i < wdim:
                wvec[i] = c
            else:
                vvec[i - wdim] = c
        return wvec, vvec

    def join(self, n: int, wvec, vvec):
        wdim = self.W.dim(n)
        out = dict(wvec)
        for i, c in vvec.items():
            out[i + wdim] = c
        return out

    def from_vector(self, n: int, vec):
        wvec, vvec = self.split(n, vec)
        return (self.W.from_vector(n, wvec), self.V.from_vector(n - 1, vvec))

    def to_vector(self, n: int, obj):
        w, v = obj
        return self.join(n, self.W.to_vector(n, w), self.V.to_vector(n - 1, v))

    def d_columns(self, n: int) -> list:
        cols = []
        dW = self.W.d_columns(n)
        for col in dW:
            cols.append(self.join(n - 1, {k: -c for k, c in col.items()}, {}))
        dV = self.V.d_columns(n - 1)
        for j in range(self.V.dim(n - 1)):
            vobj = self.V.from_vector(n - 1, {j: linalg.Fraction(1)})
            wpart = self.W.to_vector(n - 1, self.phi(vobj))
            cols.append(self.join(n - 1, wpart, dV[j]))
        return cols

    # -- the short exact sequence -----------------------------------------------

    def include(self, n: int, wvec):
        """J at the vector level."""
        return self.join(n, wvec, {})

    def project(self, n: int, vec):
        """P at the vector level."""
        _, vvec = self.split(n, vec)
        return vvec


def rel_of_chain_map(V: ChainComplex, W: ChainComplex, phi: Callable, name: str = "") -> RelComplex:
    return RelComplex(V, W, phi, name)


def rel_of_morphism(psi: DglMorphism) -> RelComplex:
    """Rel(psi) for a DGL map viewed as a chain map of the underlying complexes."""
    return RelComplex(DglComplex(psi.source), DglComplex(psi.target), psi.apply, name="rel")


def rel_of_adjoint(psi: DglMorphism) -> RelComplex:
    """Relativization of the adjoint map K -> Der(L, K; psi)."""
    return RelComplex(
        DglComplex(psi.target),
        DerComplex(psi),
        lambda y: adjoint(psi, y),
        name="rel-adjoint",
    )


def rel_of_morphism_star(psi: DglMorphism) -> RelComplex:
    """Relativization of post-composition Der(L,L;1) -> Der(L,K;psi)."""
    der_id = DerComplex(DglMorphism.identity(psi.source))
    der_psi = DerComplex(psi)

    def post(theta: GenDerivation) -> GenDerivation:
        values = {g: psi.apply(v) for g, v in theta.values.items()}
        return GenDerivation(psi, theta.degree, values)

    return RelComplex(der_id, der_psi, post, name="rel-star")


def pair_map_to_star(psi: DglMorphism, rel: RelComplex, rel_star: RelComplex) -> Callable:
    """(ad_psi, ad): Rel(psi) -> Rel(psi_star), (k, l) -> (ad_psi(k), ad(l))."""
    identity = rel_star.V.psi  # identity morphism of the source model

    def fn(pair):
        k, l = pair
        return (adjoint(psi, k), adjoint(identity, l))

    return fn


# -- long exact sequence reports ------------------------------------------------


@dataclass
class LesNode:
    degree: int
    position: str  # "V", "W" or "Rel"
    dim: int
    incoming_rank: int
    outgoing_kernel_dim: int
    exact: Optional[bool]  # None when untrusted
    trusted: bool


@dataclass
class LesReport:
    nodes: list = field(default_factory=list)

    @property
    def all_exact(self) -> bool:
        return all(n.exact for n in self.nodes if n.trusted)

    def trusted_nodes(self) -> list:
        return [n for n in self.nodes if n.trusted]


def _h_trusted(cplx: ChainComplex, n: int) -> bool:
    return cplx.complete(n + 1) and cplx.complete(n) and cplx.complete(n - 1)


def assemble_les_of_chain_map(
    V: ChainComplex, W: ChainComplex, phi: Callable, degrees
) -> LesReport:
    """Check exactness of ... -> H_{n+1}(Rel) -> H_n(V) -> H_n(W) -> H_n(Rel) -> ...

    For each requested degree n the three nodes H_n(V), H_n(W), H_n(Rel) are
    examined; a node is trusted only when its own homology and both neighbours
    in the sequence are boundary-complete under the truncation.
    """
    rel = RelComplex(V, W, phi)
    report = LesReport()
    _P, _phi, _J = {}, {}, {}

    def mat_P(n):
        if n not in _P:
            _P[n] = induced_matrix(rel, n + 1, V, n, lambda pair: pair[1])
        return _P[n]

    def mat_phi(n):
        if n not in _phi:
            _phi[n] = induced_matrix(V, n, W, n, phi)
        return _phi[n]

    def mat_J(n):
        if n not in _J:
            _J[n] = induced_matrix(W, n, rel, n, lambda w: (w, V.from_vector(n - 1, {})))
        return _J[n]

    for n in degrees:
        # node at H_n(V): im H(P) = ker H(phi)
        trusted = _h_trusted(rel, n + 1) and _h_trusted(V, n) and _h_trusted(W, n)
        if trusted:
            inc = linalg.rref(mat_P(n)).rank
            out_kernel = len(linalg.kernel_of_columns(mat_phi(n)))
            exact = inc == out_kernel and _composite_zero(mat_P(n), mat_phi(n))
            report.nodes.append(LesNode(n, "V", V.homology(n).dim, inc, out_kernel, exact, True))
        else:
            report.nodes.append(LesNode(n, "V", -1, -1, -1, None, False))
        # node at H_n(W): im H(phi) = ker H(J)
        trusted = _h_trusted(V, n) and _h_trusted(W, n) and _h_trusted(rel, n)
        if trusted:
            inc = linalg.rref(mat_phi(n)).rank
            out_kernel = len(linalg.kernel_of_columns(mat_J(n)))
            exact = inc == out_kernel and _composite_zero(mat_phi(n), mat_J(n))
            report.nodes.append(LesNode(n, "W", W.homology(n).dim, inc, out_kernel, exact, True))
        else:
            report.nodes.append(LesNode(n, "W", -1, -1, -1, None, False))
        # node at H_n(Rel): im H(J) = ker H(P)
        trusted = _h_trusted(W, n) and _h_trusted(rel, n) and _h_trusted(V, n - 1)
        if trusted:
            inc = linalg.rref(mat_J(n)).rank
            out_kernel = len(linalg.kernel_of_columns(mat_P(n - 1)))
            exact = inc == out_kernel and _composite_zero(mat_J(n), mat_P(n - 1))
            report.nodes.append(
                LesNode(n, "Rel", rel.homology(n).dim, inc, out_kernel, exact, True)
            )
        else:
            report.nodes.append(LesNode(n, "Rel", -1, -1, -1, None, False))
    return report


def _composite_zero(cols_first: list, cols_second_mat: list) -> bool:
    """True when (second o first) = 0, with maps given by class-coordinate columns."""
    for col in cols_first:
        out = {}
        for j, c in col.items():
            out = linalg.vec_add(out, cols_second_mat[j], c)
        if out:
            return False
    return True


def assemble_les(psi: DglMorphism, degrees) -> LesReport:
    """The long exact derivation homology sequence of a DGL morphism.

    This is the long exact sequence of the adjoint map K -> Der(L, K; psi).
    """
    return assemble_les_of_chain_map(
        DglComplex(psi.target), DerComplex(psi), lambda y: adjoint(psi, y), degrees
    )
