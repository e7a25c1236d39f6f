"""Evaluation subgroups, Gottlieb groups, Whitehead centers and the G-sequence.

All subgroups are kernels of maps induced on homology by adjoints:

  G_n(K,L;psi)      = ker{ H(ad_psi): H_{n-1}(K)  -> H_{n-1}(Der(L,K;psi)) }
  G_n(L)            = the psi = identity case
  P_n               = ker{ ad on homology: H_{n-1}(K) -> Der(H(L),H(K);H(psi)) }
  G^rel_n(K,L;psi)  = ker{ H(ad_psi, ad): H_{n-1}(Rel(psi)) -> H_{n-1}(Rel(psi_*)) }

Degrees are topological on the reports (internal degree = topological - 1).
The G-sequence is the chain complex G_n(L) -> G_n(K,L;psi) -> G^rel_n -> ...
restricted from the long exact homology sequence of the map, and its
omega-homology is measured at the G_n(L) term.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .complexes import ChainComplex, DglComplex, HomologySlice, induced_matrix
from .derivations import DerComplex, GenDerivation, adjoint
from .errors import InternalError, PreconditionError, TruncationError
from .lie import LieElement
from .model import DglModel, DglMorphism
from .relative import pair_map_to_star, rel_of_morphism, rel_of_morphism_star


@dataclass
class SubspaceReport:
    topological: int
    internal: int
    ambient_dim: int
    dimension: int
    representatives: list
    trusted: bool
    low_degree_caveat: bool
    checked_source_degrees: Optional[tuple] = None  # only for homology-level kernels

    @property
    def full(self) -> bool:
        return self.dimension == self.ambient_dim


@dataclass
class GvpReport:
    topological: int
    internal: int
    evaluation: SubspaceReport
    center: SubspaceReport
    quotient_dim: int
    witness: list  # basis of ker(induced-derivation map) & im(adjoint on homology)
    trusted: bool


@dataclass
class GSequenceTerm:
    topological: int
    internal: int
    gottlieb_dim: int
    evaluation_dim: int
    relative_dim: int
    omega_dim: int
    homology_at_evaluation: int
    homology_at_relative: int
    composites_zero: bool
    omega_representatives: list
    trusted: bool
    low_degree_caveat: bool


@dataclass
class GSequenceReport:
    terms: dict

    def omega_dims(self) -> dict:
        return {n: t.omega_dim for n, t in self.terms.items()}


@dataclass
class CoformalReport:
    bigraded_ok: bool
    upper_homology_ok: bool
    window: list
    failures: list = field(default_factory=list)
    morphism_bigraded: Optional[bool] = None

    @property
    def coformal(self) -> bool:
        return (
            self.bigraded_ok
            and self.upper_homology_ok
            and self.morphism_bigraded is not False
        )


class _Subgroup:
    """A kernel subspace of one homology group, in class coordinates."""

    def __init__(self, cplx: ChainComplex, degree: int, vectors: list, trusted: bool):
        self.cplx = cplx
        self.degree = degree
        self.vectors = vectors  # RREF rows over homology representative indices
        self.trusted = trusted

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def ambient(self) -> HomologySlice:
        return self.cplx.homology(self.degree)

    def element_vectors(self) -> list:
        out = []
        h = self.ambient()
        for v in self.vectors:
            vec = {}
            for i, c in v.items():
                vec = linalg.vec_add(vec, h.rep_rows[i], c)
            out.append(vec)
        return out

    def representatives(self) -> list:
        return [self.cplx.from_vector(self.degree, v) for v in self.element_vectors()]

    def coords_of(self, class_vec) -> Optional[dict]:
        """Coordinates of a homology-class vector over the subgroup basis."""
        return linalg.solve_columns(self.vectors, class_vec)


def _h_trusted(cplx: ChainComplex, n: int) -> bool:
    return cplx.complete(n + 1) and cplx.complete(n) and cplx.complete(n - 1)


def _computable(cplx: ChainComplex, n: int) -> bool:
    return cplx.complete(n) and cplx.complete(n - 1)


class EvaluationContext:
    """Caches the complexes attached to one morphism."""

    def __init__(self, psi: DglMorphism):
        self.psi = psi
        self.L = psi.source
        self.K = psi.target
        self.cL = DglComplex(self.L)
        self.cK = DglComplex(self.K)
        self.der_LK = DerComplex(psi)
        self.identity = DglMorphism.identity(self.L)
        self.der_LL = DerComplex(self.identity)
        self.rel = rel_of_morphism(psi)
        self.rel_star = rel_of_morphism_star(psi)
        self.pair_map = pair_map_to_star(psi, self.rel, self.rel_star)
        self._kernels = {}

    # -- kernels of the three vertical maps ---------------------------------

    def _kernel(self, kind: str, m: int) -> _Subgroup:
        key = (kind, m)
        if key in self._kernels:
            return self._kernels[key]
        if kind == "gottlieb":
            src, dst, fn = self.cL, self.der_LL, lambda x: adjoint(self.identity, x)
        elif kind == "evaluation":
            src, dst, fn = self.cK, self.der_LK, lambda y: adjoint(self.psi, y)
        elif kind == "relative":
            src, dst, fn = self.rel, self.rel_star, self.pair_map
        else:  # pragma: no cover
            raise InternalError(f"unknown subgroup kind {kind}")
        if m < 1 and kind != "relative":
            group = _Subgroup(src, m, [], True)
        elif not (_computable(src, m) and _computable(dst, m)):
            raise TruncationError(
                f"{kind} subgroup at internal degree {m} is outside the computable window"
            )
        else:
            cols = induced_matrix(src, m, dst, m, fn)
            vectors = linalg.kernel_of_columns(cols)
            trusted = _h_trusted(src, m) and _h_trusted(dst, m)
            group = _Subgroup(src, m, vectors, trusted)
        self._kernels[key] = group
        return group

    # -- public subgroup reports ---------------------------------------------

    def _report(self, kind: str, top: int) -> SubspaceReport:
        m = top - 1
        group = self._kernel(kind, m)
        ambient_dim = group.ambient().dim if m >= 1 or kind == "relative" else 0
        return SubspaceReport(
            topological=top,
            internal=m,
            ambient_dim=ambient_dim,
            dimension=group.dim,
            representatives=group.representatives() if group.dim else [],
            trusted=group.trusted,
            low_degree_caveat=m <= 2,
        )

    def evaluation_subgroup(self, top: int) -> SubspaceReport:
        return self._report("evaluation", top)

    def rel_evaluation_subgroup(self, top: int) -> SubspaceReport:
        return self._report("relative", top)

    def gottlieb_of_source(self, top: int) -> SubspaceReport:
        return self._report("gottlieb", top)

    # -- Whitehead center -------------------------------------------------------

    def _homology_window(self) -> int:
        """Largest source degree whose homology classes can be tested."""
        return min(self.L.truncation, self.K.truncation) - 1

    def whitehead_center(self, top: int) -> SubspaceReport:
        m = top - 1
        if m < 1:
            return SubspaceReport(top, m, 0, 0, [], True, True)
        if not _computable(self.cK, m):
            raise TruncationError("center degree is outside the computable window")
        hK = self.cK.homology(m)
        ys = [self.cK.from_vector(m, row) for row in hK.rep_rows]
        j_max = min(self.L.truncation - 1, self.K.truncation - 1 - m)
        cols = [dict() for _ in range(hK.dim)]
        offset = 0
        for j in range(1, j_max + 1):
            hL = self.cL.homology(j)
            if not hL.dim:
                continue
            hKjm = self.cK.homology(j + m)
            for xi_row in hL.rep_rows:
                xi = self.psi.apply(self.cL.from_vector(j, xi_row))
                for k, y in enumerate(ys):
                    bracket = self.K.algebra.bracket(y, xi)
                    for idx, c in hKjm.class_coords(
                        self.cK.to_vector(j + m, bracket)
                    ).items():
                        cols[k][offset + idx] = c
                offset += hKjm.dim
        vectors = linalg.kernel_of_columns(cols)
        group = _Subgroup(self.cK, m, vectors, hK.trusted)
        return SubspaceReport(
            topological=top,
            internal=m,
            ambient_dim=hK.dim,
            dimension=group.dim,
            representatives=group.representatives(),
            trusted=hK.trusted,
            low_degree_caveat=m <= 2,
            checked_source_degrees=(1, j_max),
        )

    # -- the center/evaluation comparison ---------------------------------------

    def g_vs_p(self, top: int) -> GvpReport:
        m = top - 1
        ev = self.evaluation_subgroup(top)
        ce = self.whitehead_center(top)
        quotient = ce.dimension - ev.dimension
        witness_rows: list = []
        if m >= 1 and _computable(self.der_LK, m):
            ad_cols = induced_matrix(
                self.cK, m, self.der_LK, m, lambda y: adjoint(self.psi, y)
            )
            image_rows = linalg.rref(ad_cols).rows
            hDer = self.der_LK.homology(m)
            thetas = [self.der_LK.from_vector(m, row) for row in hDer.rep_rows]
            j_max = min(self.L.truncation - 1, self.K.truncation - 1 - m)
            icols = [dict() for _ in range(hDer.dim)]
            offset = 0
            for j in range(1, j_max + 1):
                hL = self.cL.homology(j)
                if not hL.dim:
                    continue
                hKjm = self.cK.homology(j + m)
                for xi_row in hL.rep_rows:
                    xi = self.cL.from_vector(j, xi_row)
                    for k, theta in enumerate(thetas):
                        value = theta.apply(xi)
                        for idx, c in hKjm.class_coords(
                            self.cK.to_vector(j + m, value)
                        ).items():
                            icols[k][offset + idx] = c
                    offset += hKjm.dim
            ker_i_rows = linalg.kernel_of_columns(icols)
            witness_rows = linalg.intersect(image_rows, ker_i_rows)
        if len(witness_rows) != quotient:
            raise InternalError(
                "quotient dimension disagrees with the kernel/image intersection: "
                f"{quotient} vs {len(witness_rows)}"
            )
        hDer = self.der_LK.homology(m) if m >= 1 else None
        witnesses = []
        if hDer is not None:
            for row in witness_rows:
                vec = {}
                for i, c in row.items():
                    vec = linalg.vec_add(vec, hDer.rep_rows[i], c)
                witnesses.append(self.der_LK.from_vector(m, vec))
        return GvpReport(
            topological=top,
            internal=m,
            evaluation=ev,
            center=ce,
            quotient_dim=quotient,
            witness=witnesses,
            trusted=ev.trusted and ce.trusted,
        )

    # -- the G-sequence -----------------------------------------------------------

    def _restricted_map(
        self,
        src_group: _Subgroup,
        dst_group: _Subgroup,
        cols: list,
    ) -> list:
        """Columns of a homology map restricted to subgroup coordinates."""
        out = []
        for v in src_group.vectors:
            img = {}
            for j, c in v.items():
                img = linalg.vec_add(img, cols[j], c)
            coords = dst_group.coords_of(img)
            if coords is None:
                raise InternalError("ladder restriction failed; image leaves the subgroup")
            out.append(coords)
        return out

    def g_sequence(self, tops) -> GSequenceReport:
        tops = sorted(tops)
        terms = {}
        for top in tops:
            m = top - 1
            gl = self._kernel("gottlieb", m)
            gk = self._kernel("evaluation", m)
            grel = self._kernel("relative", m)
            grel_up = self._kernel("relative", m + 1)
            gl_down = self._kernel("gottlieb", m - 1)

            psi_cols = (
                induced_matrix(self.cL, m, self.cK, m, self.psi.apply) if m >= 1 else []
            )
            j_cols = induced_matrix(
                self.cK, m, self.rel, m,
                lambda k: (k, self.L.algebra.zero(m - 1)),
            )
            p_cols = induced_matrix(self.rel, m, self.cL, m - 1, lambda pair: pair[1])
            p_up_cols = induced_matrix(self.rel, m + 1, self.cL, m, lambda pair: pair[1])

            r_psi = self._restricted_map(gl, gk, psi_cols)
            r_j = self._restricted_map(gk, grel, j_cols)
            r_p = self._restricted_map(grel, gl_down, p_cols)
            r_p_up = self._restricted_map(grel_up, gl, p_up_cols)

            comp1 = _composite_zero(r_psi, r_j)
            comp2 = _composite_zero(r_j, r_p)
            comp3 = _composite_zero(r_p_up, r_psi)

            # homology of the kernel sequence at each term
            omega_dim, omega_reps = _term_homology(gl, r_p_up, r_psi, self.cL, m)
            h_eval, _ = _term_homology(gk, r_psi, r_j, self.cK, m)
            h_rel, _ = _term_homology(grel, r_j, r_p, self.rel, m)

            trusted = gl.trusted and gk.trusted and grel.trusted and grel_up.trusted
            terms[top] = GSequenceTerm(
                topological=top,
                internal=m,
                gottlieb_dim=gl.dim,
                evaluation_dim=gk.dim,
                relative_dim=grel.dim,
                omega_dim=omega_dim,
                homology_at_evaluation=h_eval,
                homology_at_relative=h_rel,
                composites_zero=comp1 and comp2 and comp3,
                omega_representatives=omega_reps,
                trusted=trusted,
                low_degree_caveat=m <= 2,
            )
        return GSequenceReport(terms=terms)

    def omega_homology(self, tops) -> dict:
        report = self.g_sequence(tops)
        return {
            n: (t.omega_dim, t.trusted, t.low_degree_caveat)
            for n, t in report.terms.items()
        }

    # -- degree windows ----------------------------------------------------------

    def _g_sequence_degree_ok(self, top: int, predicate) -> bool:
        m = top - 1
        complexes = (self.cL, self.cK, self.der_LL, self.der_LK, self.rel, self.rel_star)
        return all(predicate(c, m) for c in complexes) and predicate(
            self.rel, m + 1
        ) and predicate(self.rel_star, m + 1)

    def computable_tops(self, start: int = 2) -> list:
        out = []
        top = start
        while self._g_sequence_degree_ok(top, _computable):
            out.append(top)
            top += 1
        return out

    def trusted_tops(self, start: int = 2) -> list:
        out = []
        top = start
        while self._g_sequence_degree_ok(top, _h_trusted):
            out.append(top)
            top += 1
        return out


def _composite_zero(first_cols: list, second_cols: list) -> bool:
    for col in first_cols:
        out = {}
        for j, c in col.items():
            out = linalg.vec_add(out, second_cols[j], c)
        if out:
            return False
    return True


def _term_homology(group: _Subgroup, incoming_cols, outgoing_cols, cplx, m):
    """ker(outgoing)/im(incoming) inside a subgroup, with representatives."""
    kernel = linalg.kernel_of_columns(outgoing_cols)  # over group coordinates
    image = linalg.rref(incoming_cols).rows
    if not kernel:
        return 0, []
    quotient = linalg.quotient_basis(kernel, image)
    reps = []
    h = group.ambient()
    for q in quotient:
        class_vec = {}
        for j, c in q.items():
            class_vec = linalg.vec_add(class_vec, group.vectors[j], c)
        vec = {}
        for i, c in class_vec.items():
            vec = linalg.vec_add(vec, h.rep_rows[i], c)
        reps.append(cplx.from_vector(m, vec))
    return len(quotient), reps


# -- public operations ---------------------------------------------------------


def gottlieb(model: DglModel, top: int) -> SubspaceReport:
    """Gottlieb subgroup: the evaluation subgroup along the identity."""
    return EvaluationContext(DglMorphism.identity(model)).evaluation_subgroup(top)


def evaluation_subgroup(psi: DglMorphism, top: int) -> SubspaceReport:
    return EvaluationContext(psi).evaluation_subgroup(top)


def whitehead_center(psi: DglMorphism, top: int) -> SubspaceReport:
    return EvaluationContext(psi).whitehead_center(top)


def g_vs_p(psi: DglMorphism, top: int) -> GvpReport:
    return EvaluationContext(psi).g_vs_p(top)


def rel_evaluation_subgroup(psi: DglMorphism, top: int) -> SubspaceReport:
    return EvaluationContext(psi).rel_evaluation_subgroup(top)


def g_sequence(psi: DglMorphism, tops) -> GSequenceReport:
    return EvaluationContext(psi).g_sequence(tops)


def omega_homology(psi: DglMorphism, tops) -> dict:
    return EvaluationContext(psi).omega_homology(tops)


# -- coformality ------------------------------------------------------------------


def coformal_check(subject) -> CoformalReport:
    """Coformality verdict for a bigraded model or a morphism of such."""
    if isinstance(subject, DglMorphism):
        src = coformal_check(subject.source)
        dst = coformal_check(subject.target)
        return CoformalReport(
            bigraded_ok=src.bigraded_ok and dst.bigraded_ok,
            upper_homology_ok=src.upper_homology_ok and dst.upper_homology_ok,
            window=sorted(set(src.window) | set(dst.window)),
            failures=src.failures + dst.failures,
            morphism_bigraded=subject.bigraded,
        )
    model: DglModel = subject
    if not model.bigraded:
        raise PreconditionError("coformal_check requires an upper grading on every generator")
    report = model.validate()
    failures = list(report.problems)
    bigraded_ok = bool(report.bigraded_ok)
    cx = DglComplex(model)
    window = [n for n in range(1, model.truncation) if _h_trusted(cx, n)]
    upper_ok = True
    alg = model.algebra
    for n in window:
        words_n = cx.labels(n)
        cols_n = cx.d_columns(n)
        words_up = cx.labels(n + 1)
        cols_up = cx.d_columns(n + 1)
        uppers = sorted({alg.word_upper(w) for w in words_n if alg.word_upper(w)})
        for i in uppers:
            idx = [k for k, w in enumerate(words_n) if alg.word_upper(w) == i]
            cycles = linalg.kernel_of_columns([cols_n[k] for k in idx])
            bnd = [
                cols_up[k]
                for k, w in enumerate(words_up)
                if alg.word_upper(w) == i + 1
            ]
            h_dim = len(cycles) - linalg.rank(bnd)
            if h_dim:
                upper_ok = False
                failures.append(
                    f"upper-degree-{i} homology is nonzero in internal degree {n}"
                )
    return CoformalReport(
        bigraded_ok=bigraded_ok,
        upper_homology_ok=upper_ok,
        window=window,
        failures=failures,
    )


def coformal_bounding_derivation(psi: DglMorphism, xi: LieElement) -> GenDerivation:
    """Degreewise construction of theta with D(theta) = ad_psi(xi).

    Requires a coformal morphism and an upper-degree-0 cycle xi in the target.
    The value on a generator of upper degree u is solved inside the upper
    (u+1)-slice one internal degree up; a failed solve reports the generator.
    """
    verdict = coformal_check(psi)
    if not verdict.coformal:
        raise PreconditionError("coformal_bounding_derivation requires a coformal morphism")
    K = psi.target
    L = psi.source
    if xi.algebra is not K.algebra:
        raise PreconditionError("cycle must live in the target model")
    if not K.d(xi).is_zero():
        raise PreconditionError("xi must be a cycle")
    if xi.is_zero():
        return GenDerivation(psi, xi.degree + 1, {})
    if xi.upper_degree() != 0:
        raise PreconditionError("xi must be upper-homogeneous of upper degree 0")
    n = xi.degree
    sign = -1 if (n + 1) % 2 else 1
    cK = DglComplex(K)
    values = {}
    order = sorted(range(len(L.generators)), key=lambda i: (L.generators[i].upper, i))
    for gi in order:
        g = L.generators[gi]
        partial = GenDerivation(psi, n + 1, values)
        rhs = K.algebra.bracket(xi, psi.values[g.name]) + sign * partial.apply(
            L.diff_of(g.name)
        )
        deg = g.degree + n + 1
        if deg > K.truncation:
            raise TruncationError(
                f"bounding derivation for {g.name} needs degree {deg} beyond truncation"
            )
        if rhs.is_zero():
            continue
        words = cK.labels(deg)
        cols = cK.d_columns(deg)
        idx = [
            k for k, w in enumerate(words) if K.algebra.word_upper(w) == g.upper + 1
        ]
        target = cK.to_vector(deg - 1, rhs)
        sol = linalg.solve_columns([cols[k] for k in idx], target)
        if sol is None:
            raise PreconditionError(
                f"no bounding value exists for generator {g.name} inside upper degree {g.upper + 1}"
            )
        values[g.name] = cK.from_vector(deg, {idx[k]: c for k, c in sol.items()})
    theta = GenDerivation(psi, n + 1, values)
    if theta.differential() != adjoint(psi, xi):
        raise InternalError("constructed derivation does not bound the adjoint")
    return theta
