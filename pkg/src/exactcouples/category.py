"""Preabelian category layer.

A :class:`Backend` supplies the model-specific data: objects, valid
morphism matrices, kernels, cokernels, pullbacks and pushouts.  Everything
else here is generic and purely diagrammatic: images, coimages, the
canonical (co)image comparison morphism, strictness, subobject equality,
universal-property mediation and semistability probing.

All solving goes through exact linear algebra, so "unique mediation" is
literally "the homogeneous solution space has dimension zero".
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Optional

from .errors import (
    BackendError,
    MediationError,
    MorphismError,
    NotKernelError,
)
from .linalg import Matrix, solve, solve_right, solve_unique


@dataclass(frozen=True)
class Morphism:
    """Arrow in a backend category; data is a rational matrix."""

    backend: "Backend"
    source: Any
    target: Any
    matrix: Matrix

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition: (self @ other) = self after other."""
        if not self.backend.objects_equal(self.source, other.target):
            raise MorphismError("composition source/target mismatch")
        return Morphism(self.backend, other.source, self.target, self.matrix * other.matrix)

    def __add__(self, other: "Morphism") -> "Morphism":
        if not (
            self.backend.objects_equal(self.source, other.source)
            and self.backend.objects_equal(self.target, other.target)
        ):
            raise MorphismError("addition of non-parallel morphisms")
        return Morphism(self.backend, self.source, self.target, self.matrix + other.matrix)

    def __neg__(self) -> "Morphism":
        return Morphism(self.backend, self.source, self.target, -self.matrix)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Morphism)
            and self.backend is other.backend
            and self.backend.objects_equal(self.source, other.source)
            and self.backend.objects_equal(self.target, other.target)
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash(self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_monic(self) -> bool:
        return self.matrix.is_injective()

    def is_epic(self) -> bool:
        return self.matrix.is_surjective()


@dataclass(frozen=True)
class Square:
    """A pullback or pushout square.

    Pullback of (f: X->Z, g: Y->Z): first: P->X, second: P->Y.
    Pushout of (f: X->Y, g: X->Z): first: Y->Q, second: Z->Q.
    """

    kind: str  # "pullback" | "pushout"
    obj: Any
    first: Morphism
    second: Morphism
    f: Morphism
    g: Morphism


class Backend(ABC):
    """Capability interface for a concrete preabelian category."""

    name: str = "?"
    #: every morphism is strict and every (co)kernel is semistable
    abelian: bool = False
    #: kernels stable under pushout, cokernels under pullback
    quasiabelian: bool = False

    @abstractmethod
    def dim(self, obj) -> int: ...

    @abstractmethod
    def objects_equal(self, a, b) -> bool: ...

    @abstractmethod
    def zero_object(self): ...

    @abstractmethod
    def matrix_witness(self, source, target, matrix: Matrix):
        """None when the matrix is a valid morphism source -> target,
        otherwise a model-specific witness of the violation."""

    @abstractmethod
    def kernel(self, f: Morphism) -> Morphism: ...

    @abstractmethod
    def cokernel(self, f: Morphism) -> Morphism: ...

    @abstractmethod
    def pullback(self, f: Morphism, g: Morphism) -> Square: ...

    @abstractmethod
    def pushout(self, f: Morphism, g: Morphism) -> Square: ...

    @abstractmethod
    def random_object(self, rng: random.Random, max_dim: int = 4): ...

    @abstractmethod
    def random_morphism(self, rng: random.Random, source, target) -> Morphism: ...

    # -- generic conveniences --------------------------------------------

    def morphism(self, source, target, matrix: Matrix) -> Morphism:
        if matrix.rows != self.dim(target) or matrix.cols != self.dim(source):
            raise MorphismError(
                f"matrix shape {matrix.rows}x{matrix.cols} does not match "
                f"{self.dim(target)}x{self.dim(source)}"
            )
        witness = self.matrix_witness(source, target, matrix)
        if witness is not None:
            raise MorphismError(f"invalid morphism: {witness}")
        return Morphism(self, source, target, matrix)

    def identity(self, obj) -> Morphism:
        return Morphism(self, obj, obj, Matrix.identity(self.dim(obj)))

    def zero(self, source, target) -> Morphism:
        return Morphism(self, source, target, Matrix.zero(self.dim(target), self.dim(source)))


# ---------------------------------------------------------------------------
# generic diagrammatic operations
# ---------------------------------------------------------------------------


def image(f: Morphism) -> Morphism:
    """The monic part ker(cok f): Im f -> target(f)."""
    return f.backend.kernel(f.backend.cokernel(f))


def coimage(f: Morphism) -> Morphism:
    """The epic part cok(ker f): source(f) -> Coim f."""
    return f.backend.cokernel(f.backend.kernel(f))


@dataclass(frozen=True)
class Factorization:
    """f = im o bar o coim with coim epic, im monic; bar is unique."""

    coim: Morphism
    im: Morphism
    bar: Morphism


def factorize(f: Morphism) -> Factorization:
    """Compute the canonical Coim -> Im comparison morphism.

    bar is obtained by solving im o bar o coim = f in two stages; epicness
    of coim and monicness of im make each stage uniquely solvable.  Failure
    of either solve means the backend is broken.
    """
    be = f.backend
    co = coimage(f)
    im = image(f)
    try:
        partial = solve_unique(im.matrix, f.matrix)  # partial = bar o coim
    except ValueError as exc:
        raise BackendError(f"no factorization through the image: {exc}") from exc
    res = solve_right(co.matrix, partial)
    if res is None:
        raise BackendError("no factorization through the coimage")
    barm = res.particular
    bar = be.morphism(co.target, im.source, barm)
    if im.matrix * barm * co.matrix != f.matrix:
        raise BackendError("factorization identity violated")
    return Factorization(co, im, bar)


@dataclass(frozen=True)
class Strictness:
    strict: bool
    factorization: Factorization
    #: two-sided inverse of bar when strict
    inverse: Optional[Morphism]
    #: model-specific witness of failure when not strict
    witness: Any


def is_strict(f: Morphism) -> Strictness:
    """Decide strictness by attempting to invert the comparison morphism."""
    fac = factorize(f)
    barm = fac.bar.matrix
    if barm.rows != barm.cols or barm.rank() != barm.rows:
        return Strictness(False, fac, None, "comparison morphism is not bijective")
    inv = barm.inverse()
    witness = f.backend.matrix_witness(fac.im.source, fac.coim.target, inv)
    if witness is not None:
        return Strictness(False, fac, None, witness)
    return Strictness(True, fac, Morphism(f.backend, fac.im.source, fac.coim.target, inv), None)


def subobject_equal(m1: Morphism, m2: Morphism) -> Optional[Morphism]:
    """Mediating iso u with m2 o u = m1, or None if the subobjects differ.

    Both arguments must be monic with the same target.
    """
    if not (m1.is_monic() and m2.is_monic()):
        raise MorphismError("subobject_equal requires monic inputs")
    if not m1.backend.objects_equal(m1.target, m2.target):
        raise MorphismError("subobject_equal requires a common target")
    be = m1.backend
    u = solve(m2.matrix, m1.matrix)
    v = solve(m1.matrix, m2.matrix)
    if u is None or v is None:
        return None
    if be.matrix_witness(m1.source, m2.source, u.particular) is not None:
        return None
    if be.matrix_witness(m2.source, m1.source, v.particular) is not None:
        return None
    return Morphism(be, m1.source, m2.source, u.particular)


def quotient_equal(q1: Morphism, q2: Morphism) -> Optional[Morphism]:
    """Dual of subobject_equal: iso u with u o q1 = q2 for epics q1, q2."""
    if not (q1.is_epic() and q2.is_epic()):
        raise MorphismError("quotient_equal requires epic inputs")
    if not q1.backend.objects_equal(q1.source, q2.source):
        raise MorphismError("quotient_equal requires a common source")
    be = q1.backend
    u = solve_right(q1.matrix, q2.matrix)
    v = solve_right(q2.matrix, q1.matrix)
    if u is None or v is None:
        return None
    if be.matrix_witness(q1.target, q2.target, u.particular) is not None:
        return None
    if be.matrix_witness(q2.target, q1.target, v.particular) is not None:
        return None
    return Morphism(be, q1.target, q2.target, u.particular)


def mediate_pullback(sq: Square, u: Morphism, v: Morphism) -> Morphism:
    """Unique w into the pullback with first o w = u and second o w = v."""
    if sq.kind != "pullback":
        raise MediationError("not a pullback square")
    if sq.f.matrix * u.matrix != sq.g.matrix * v.matrix:
        raise MediationError("cone does not commute")
    stacked = sq.first.matrix.vstack(sq.second.matrix)
    rhs = u.matrix.vstack(v.matrix)
    res = solve(stacked, rhs)
    if res is None:
        raise MediationError("no mediation (broken pullback)")
    if not res.unique:
        raise MediationError("non-unique mediation (broken pullback)")
    be = sq.first.backend
    if be.matrix_witness(u.source, sq.obj, res.particular) is not None:
        raise BackendError("pullback mediation violates the model constraints")
    return Morphism(be, u.source, sq.obj, res.particular)


def mediate_pushout(sq: Square, u: Morphism, v: Morphism) -> Morphism:
    """Unique w out of the pushout with w o first = u and w o second = v."""
    if sq.kind != "pushout":
        raise MediationError("not a pushout square")
    if u.matrix * sq.f.matrix != v.matrix * sq.g.matrix:
        raise MediationError("cocone does not commute")
    joined = sq.first.matrix.hstack(sq.second.matrix)
    rhs = u.matrix.hstack(v.matrix)
    res = solve_right(joined, rhs)
    if res is None:
        raise MediationError("no mediation (broken pushout)")
    if not res.unique:
        raise MediationError("non-unique mediation (broken pushout)")
    be = sq.first.backend
    if be.matrix_witness(sq.obj, u.target, res.particular) is not None:
        raise BackendError("pushout mediation violates the model constraints")
    return Morphism(be, sq.obj, u.target, res.particular)


def is_kernel_morphism(f: Morphism) -> bool:
    """In a preabelian category: f is a kernel iff f is monic and strict."""
    return f.is_monic() and is_strict(f).strict


def is_cokernel_morphism(f: Morphism) -> bool:
    return f.is_epic() and is_strict(f).strict


@dataclass(frozen=True)
class SemistableVerdict:
    verdict: str  # "certified-true" | "probed-true" | "false-with-witness"
    witness: Any = None

    @property
    def holds(self) -> bool:
        return self.verdict in ("certified-true", "probed-true")


def is_semistable_kernel(f: Morphism, probes: int = 25, seed: int = 0) -> SemistableVerdict:
    """Is every pushout of the kernel f again a kernel?

    Finite computation cannot certify the universally quantified statement,
    so the verdict is three-valued: the backend may certify it wholesale
    (abelian, or quasiabelian), otherwise we push out along random
    morphisms and either find a counterexample or report "probed-true".
    """
    if not is_kernel_morphism(f):
        raise NotKernelError("morphism is not a kernel")
    be = f.backend
    if be.abelian or be.quasiabelian:
        return SemistableVerdict("certified-true")
    rng = random.Random(seed)
    for _ in range(probes):
        tgt = be.random_object(rng)
        s = be.random_morphism(rng, f.source, tgt)
        sq = be.pushout(f, s)
        if not is_kernel_morphism(sq.second):
            return SemistableVerdict("false-with-witness", witness=s)
    return SemistableVerdict("probed-true")


def is_semistable_cokernel(f: Morphism, probes: int = 25, seed: int = 0) -> SemistableVerdict:
    """Dual verdict: every pullback of the cokernel f is again a cokernel."""
    if not is_cokernel_morphism(f):
        raise NotKernelError("morphism is not a cokernel")
    be = f.backend
    if be.abelian or be.quasiabelian:
        return SemistableVerdict("certified-true")
    rng = random.Random(seed)
    for _ in range(probes):
        src = be.random_object(rng)
        t = be.random_morphism(rng, src, f.target)
        sq = be.pullback(f, t)
        if not is_cokernel_morphism(sq.second):
            return SemistableVerdict("false-with-witness", witness=t)
    return SemistableVerdict("probed-true")
