"""Morphisms between n-ary algebras and their deformation-controlling complex.

The complex attached to a morphism is a direct sum of three cochain spaces
(self-valued on the source, self-valued on the target, module-valued one
degree down) with a coupling term in the differential.  Cohomology of that
complex classifies simultaneous deformations of source, target, and the
morphism between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from .algebra import (
    FundamentalObject,
    NLieAlgebra,
    ValidationReport,
    validate_algebra,
    wedge_decompose,
)
from .cochains import (
    Cochain,
    CochainSpace,
    CohomologyReport,
    coboundary_matrix_module,
    coboundary_matrix_self,
    cohomology,
)
from .errors import (
    ArityMismatch,
    DegreeMismatch,
    DimensionMismatch,
    InvalidMorphism,
    NotCocycle,
)
from .linalg import Matrix, Vector, solve, vector


@dataclass(frozen=True)
class MorphismFailure:
    """Basis tuple where the structure-preservation equation breaks."""

    bracket_tuple: tuple[int, ...]
    residual: Vector


@dataclass(frozen=True)
class Morphism:
    """Linear map between two algebras of the same arity.

    Column j of ``matrix`` is the image of the j-th source basis vector.
    Structure preservation is checked by :func:`validate_morphism`, not at
    construction.
    """

    source: NLieAlgebra
    target: NLieAlgebra
    matrix: Matrix
    name: str = ""

    def __post_init__(self):
        if self.source.arity != self.target.arity:
            raise ArityMismatch(
                f"source arity {self.source.arity} != target arity {self.target.arity}"
            )
        if (self.matrix.rows, self.matrix.cols) != (self.target.dim, self.source.dim):
            raise DimensionMismatch(
                f"morphism matrix must be {self.target.dim}x{self.source.dim}"
            )

    @classmethod
    def from_columns(
        cls, source: NLieAlgebra, target: NLieAlgebra, columns: Sequence[Sequence], name: str = ""
    ) -> "Morphism":
        return cls(source, target, Matrix.from_columns(columns), name)

    @classmethod
    def identity(cls, alg: NLieAlgebra) -> "Morphism":
        return cls(alg, alg, Matrix.identity(alg.dim), "id")

    @classmethod
    def zero(cls, source: NLieAlgebra, target: NLieAlgebra) -> "Morphism":
        return cls(source, target, Matrix.zero(target.dim, source.dim), "0")

    def apply(self, v: Sequence) -> Vector:
        return self.matrix.mul_vector(v)

    @cached_property
    def _report(self) -> ValidationReport:
        return validate_morphism(self)

    @property
    def is_valid(self) -> bool:
        return self._report.is_valid


def validate_morphism(phi: Morphism) -> ValidationReport:
    """Check structure preservation on every increasing basis tuple."""
    src, tgt = phi.source, phi.target
    for alg in (src, tgt):
        rep = validate_algebra(alg)
        if not rep.is_valid:
            return ValidationReport(
                phi.name or "morphism", "morphism", rep.failures
            )
    failures = []
    for key in src.bracket_keys():
        lhs = phi.apply(src.bracket_on_basis(key))
        rhs = tgt.bracket(*(phi.matrix.column(i) for i in key))
        residual = tuple(a - b for a, b in zip(lhs, rhs))
        if any(residual):
            failures.append(MorphismFailure(key, residual))
    return ValidationReport(phi.name or "morphism", "morphism", tuple(failures))


def module_action(phi: Morphism, x: FundamentalObject, z: Sequence) -> Vector:
    """Action of a source block on the target through the morphism.

    Computes the bracket of the mapped block components with z in the
    target, extended linearly over the wedge decomposition of x.
    """
    z = vector(z)
    if len(z) != phi.target.dim or x.dim != phi.source.dim:
        raise DimensionMismatch("module action shape mismatch")
    if x.components is not None:
        imgs = [phi.apply(v) for v in x.components]
        return phi.target.bracket(*imgs, z)
    out = [Fraction(0)] * phi.target.dim
    for key, c in x.decomposition().items():
        imgs = [phi.matrix.column(i) for i in key]
        val = phi.target.bracket(*imgs, z)
        for t, a in enumerate(val):
            if a:
                out[t] += c * a
    return tuple(out)


def wedge_image(phi: Morphism, x: FundamentalObject) -> FundamentalObject:
    """Image of an argument block under the morphism, component-wise."""
    if x.components is not None:
        return FundamentalObject(
            [phi.apply(v) for v in x.components], dim=phi.target.dim
        )
    combo: dict[tuple[int, ...], Fraction] = {}
    for key, c in x.decomposition().items():
        imgs = [phi.matrix.column(i) for i in key]
        for wkey, wc in wedge_decompose(imgs).items():
            cur = combo.get(wkey, Fraction(0)) + c * wc
            if cur:
                combo[wkey] = cur
            else:
                combo.pop(wkey, None)
    return FundamentalObject.from_combination(phi.target.dim, x.width, combo)


@dataclass(frozen=True)
class CochainTriple:
    """Element of the morphism complex: two self-valued cochains plus a
    module-valued one a degree lower (absent at degree zero)."""

    degree: int
    c1: Cochain
    c2: Cochain
    c3: Optional[Cochain]

    def __post_init__(self):
        if self.degree < 0:
            raise DegreeMismatch("triple degree must be nonnegative")
        if self.c1.space.degree != self.degree or self.c2.space.degree != self.degree:
            raise DegreeMismatch("component degrees disagree with the triple degree")
        if self.degree == 0:
            if self.c3 is not None:
                raise DegreeMismatch("degree-0 triples have no third component")
        else:
            if self.c3 is None or self.c3.space.degree != self.degree - 1:
                raise DegreeMismatch("third component must sit one degree lower")

    def is_zero(self) -> bool:
        return (
            self.c1.is_zero()
            and self.c2.is_zero()
            and (self.c3 is None or self.c3.is_zero())
        )

    def sub(self, other: "CochainTriple") -> "CochainTriple":
        if other.degree != self.degree:
            raise DegreeMismatch("triple degrees differ")
        return CochainTriple(
            self.degree,
            self.c1.sub(other.c1),
            self.c2.sub(other.c2),
            None if self.c3 is None else self.c3.sub(other.c3),
        )


class TripleComplex:
    """Matrices and coordinate helpers for the complex of one morphism."""

    def __init__(self, phi: Morphism):
        if not phi.is_valid:
            raise InvalidMorphism("the morphism fails structure preservation")
        self.phi = phi
        self._delta_cache: dict[int, Matrix] = {}
        self._pull_cache: dict[int, Matrix] = {}
        self._post_cache: dict[int, Matrix] = {}

    # -- spaces -------------------------------------------------------------
    def space_source(self, m: int) -> CochainSpace:
        return CochainSpace(self.phi.source, m, self.phi.source.dim)

    def space_target(self, m: int) -> CochainSpace:
        return CochainSpace(self.phi.target, m, self.phi.target.dim)

    def space_module(self, m: int) -> Optional[CochainSpace]:
        if m == 0:
            return None
        return CochainSpace(self.phi.source, m - 1, self.phi.target.dim)

    def dim(self, m: int) -> int:
        mod = self.space_module(m)
        return (
            self.space_source(m).dim
            + self.space_target(m).dim
            + (mod.dim if mod else 0)
        )

    def zero_triple(self, m: int) -> CochainTriple:
        mod = self.space_module(m)
        return CochainTriple(
            m,
            self.space_source(m).zero(),
            self.space_target(m).zero(),
            mod.zero() if mod else None,
        )

    # -- coordinates ---------------------------------------------------------
    def vectorize(self, t: CochainTriple) -> Vector:
        parts = list(t.c1.as_flat()) + list(t.c2.as_flat())
        if t.c3 is not None:
            parts += list(t.c3.as_flat())
        return tuple(parts)

    def unvectorize(self, m: int, flat: Sequence) -> CochainTriple:
        s1, s2, s3 = self.space_source(m), self.space_target(m), self.space_module(m)
        flat = vector(flat)
        a = s1.dim
        b = a + s2.dim
        c1 = Cochain.from_flat(s1, flat[:a])
        c2 = Cochain.from_flat(s2, flat[a:b])
        c3 = Cochain.from_flat(s3, flat[b:]) if s3 else None
        return CochainTriple(m, c1, c2, c3)

    # -- structure matrices ---------------------------------------------------
    def post_matrix(self, m: int) -> Matrix:
        """Post-composition with the morphism, source-self to module cochains."""
        cached = self._post_cache.get(m)
        if cached is not None:
            return cached
        src_space = self.space_source(m)
        keys = src_space.domain_keys
        d, dp = self.phi.source.dim, self.phi.target.dim
        phi = self.phi.matrix
        zero = Fraction(0)
        rows = [[zero] * (len(keys) * d) for _ in range(len(keys) * dp)]
        for pos in range(len(keys)):
            for s in range(dp):
                row = rows[pos * dp + s]
                for t in range(d):
                    a = phi.entry(s, t)
                    if a:
                        row[pos * d + t] = a
        out = Matrix(len(keys) * dp, len(keys) * d, rows)
        self._post_cache[m] = out
        return out

    def _pull_combo(self, key) -> dict:
        """Decompose a source domain key through mapped blocks and vectors."""
        phi = self.phi
        if isinstance(key, int):
            return {
                j: c for j, c in enumerate(phi.matrix.column(key)) if c
            }
        n = phi.source.arity
        blocks = key[:-1]
        k = key[-1]
        parts = []
        for idx in blocks:
            fo = wedge_image(phi, FundamentalObject.from_basis(phi.source.dim, idx))
            parts.append(fo.decomposition())
        kvecs = [phi.matrix.column(i) for i in k]
        last = wedge_decompose(kvecs)  # over n-subsets of the target
        out: dict = {}

        def rec(i: int, prefix: tuple, coeff: Fraction) -> None:
            if not coeff:
                return
            if i == len(parts):
                for kkey, kc in last.items():
                    full = prefix + (kkey,)
                    cur = out.get(full, Fraction(0)) + coeff * kc
                    if cur:
                        out[full] = cur
                    else:
                        out.pop(full, None)
                return
            for bkey, bc in parts[i].items():
                rec(i + 1, prefix + (bkey,), coeff * bc)

        rec(0, (), Fraction(1))
        return out

    def pull_matrix(self, m: int) -> Matrix:
        """Pre-composition with mapped blocks, target-self to module cochains."""
        cached = self._pull_cache.get(m)
        if cached is not None:
            return cached
        src_space = self.space_source(m)
        tgt_space = self.space_target(m)
        dp = self.phi.target.dim
        zero = Fraction(0)
        nrows = len(src_space.domain_keys) * dp
        rows = [[zero] * tgt_space.dim for _ in range(nrows)]
        for pos, key in enumerate(src_space.domain_keys):
            combo = self._pull_combo(key)
            for dkey, c in combo.items():
                col_base = tgt_space._key_pos[dkey] * dp
                for s in range(dp):
                    rows[pos * dp + s][col_base + s] = c
        out = Matrix(nrows, tgt_space.dim, rows)
        self._pull_cache[m] = out
        return out

    def delta_matrix(self, m: int) -> Matrix:
        """Block differential out of triple degree m."""
        cached = self._delta_cache.get(m)
        if cached is not None:
            return cached
        phi = self.phi
        d_src = coboundary_matrix_self(phi.source, m)
        d_tgt = coboundary_matrix_self(phi.target, m)
        post = self.post_matrix(m)
        pull = self.pull_matrix(m)
        dims_in = (
            self.space_source(m).dim,
            self.space_target(m).dim,
            self.space_module(m).dim if self.space_module(m) else 0,
        )
        d_mod = (
            coboundary_matrix_module(phi.source, phi.target, phi.matrix, m - 1)
            if m >= 1
            else None
        )
        sign = Fraction((-1) ** m)
        zero = Fraction(0)
        rows: list[list[Fraction]] = []
        for i in range(d_src.rows):
            rows.append(
                list(d_src.data[i]) + [zero] * dims_in[1] + [zero] * dims_in[2]
            )
        for i in range(d_tgt.rows):
            rows.append(
                [zero] * dims_in[0] + list(d_tgt.data[i]) + [zero] * dims_in[2]
            )
        mod_rows = post.rows
        for i in range(mod_rows):
            part1 = [sign * x for x in post.data[i]]
            part2 = [-sign * x for x in pull.data[i]]
            part3 = list(d_mod.data[i]) if d_mod is not None else []
            rows.append(part1 + part2 + part3)
        out = Matrix(len(rows), sum(dims_in), rows)
        self._delta_cache[m] = out
        return out

    # -- operations -----------------------------------------------------------
    def coboundary(self, t: CochainTriple) -> CochainTriple:
        mat = self.delta_matrix(t.degree)
        return self.unvectorize(t.degree + 1, mat.mul_vector(self.vectorize(t)))

    def is_cocycle(self, t: CochainTriple) -> bool:
        return self.coboundary(t).is_zero()

    def cohomology(self, r: int) -> CohomologyReport:
        if r < 1:
            raise DegreeMismatch("report degree starts at 1")
        m = r - 1
        delta_out = self.delta_matrix(m)
        delta_in = self.delta_matrix(m - 1) if m >= 1 else None
        return cohomology(delta_in, delta_out)

    def cohomologous(
        self, a: CochainTriple, b: CochainTriple
    ) -> Optional[CochainTriple]:
        if a.degree != b.degree:
            raise DegreeMismatch("triples of different degree")
        if a.degree < 1:
            raise DegreeMismatch("no witnesses below degree 1")
        if not self.is_cocycle(a) or not self.is_cocycle(b):
            raise NotCocycle("cohomologous-class check needs cocycles")
        m = a.degree
        diff = self.vectorize(a.sub(b))
        x = solve(self.delta_matrix(m - 1), diff)
        if x is None:
            return None
        return self.unvectorize(m - 1, x)


@lru_cache(maxsize=None)
def triple_complex(phi: Morphism) -> TripleComplex:
    return TripleComplex(phi)


def triple_coboundary(phi: Morphism, t: CochainTriple) -> CochainTriple:
    """Differential of the morphism complex applied to one triple."""
    return triple_complex(phi).coboundary(t)


def morphism_cohomology(phi: Morphism, r: int) -> CohomologyReport:
    """Cohomology of the morphism complex in classical labelling (r >= 1)."""
    return triple_complex(phi).cohomology(r)


def cohomologous_check(
    phi: Morphism, a: CochainTriple, b: CochainTriple
) -> Optional[CochainTriple]:
    """Witness whose coboundary is a - b, or None when classes differ."""
    return triple_complex(phi).cohomologous(a, b)
