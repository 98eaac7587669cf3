"""Finite-dimensional Hermitian spaces over exact fields and their subspace lattices.

The form is linear in the first slot and *-linear in the second:
``f(u, v) = sum_jk u_j H[j][k] v_k*``.  Subspaces are stored as canonical
reduced row-echelon bases, so equal subspaces compare equal structurally.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import (NotAnAtom, NotHermitian, NotOrthogonal, NotPositiveDefinite,
                     SpaceMismatch)
from .report import CheckReport
from .scalars import QQ, FieldDescriptor, FieldScalar, format_scalar, is_rational_square


class HermitianSpace:
    def __init__(self, field: FieldDescriptor = QQ, dim: int = 3, form=None, name: str | None = None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.field = field
        self.dim = dim
        if form is None:
            form = linalg.identity(dim, field)
        form = tuple(tuple(field.coerce(x) for x in row) for row in form)
        if len(form) != dim or any(len(row) != dim for row in form):
            raise ValueError(f"form must be {dim}x{dim}")
        self.form = form
        self.standard = all(form[i][j] == (1 if i == j else 0) for i in range(dim) for j in range(dim))
        self.name = name or f"{field}^{dim}"
        self._check_form()
        self._interned: dict = {}
        self._meets: dict = {}
        self._joins: dict = {}
        self.zero = self.subspace([])
        self.whole = self.subspace(linalg.identity(dim, field))

    def _check_form(self):
        H, n = self.form, self.dim
        for i in range(n):
            for j in range(n):
                if H[i][j].conj() != H[j][i]:
                    raise NotHermitian(f"form entry ({i},{j}) is not the conjugate of ({j},{i})")
        for k, minor in enumerate(linalg.leading_minors(H, self.field), start=1):
            # Hermitian minors are fixed by the involution, hence real
            if minor.sign() <= 0:
                raise NotPositiveDefinite(f"leading principal minor {k} is {minor}, not positive")

    def __eq__(self, other):
        return self is other or (isinstance(other, HermitianSpace) and self.field == other.field
                                 and self.dim == other.dim and self.form == other.form)

    def __hash__(self):
        return hash((self.field, self.dim, self.form))

    def __repr__(self):
        return f"HermitianSpace({self.name})"

    # construction helpers
    def vector(self, coords) -> Vector:
        coords = tuple(self.field.coerce(x) for x in coords)
        if len(coords) != self.dim:
            raise SpaceMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        return Vector(coords, self)

    def basis_vector(self, i: int) -> Vector:
        return self.vector([1 if j == i else 0 for j in range(self.dim)])

    def subspace(self, rows) -> Subspace:
        rows = [self._coords(r) for r in rows]
        basis, pivots = linalg.rref(rows, self.field)
        return self._intern(basis, pivots)

    def span(self, *vectors) -> Subspace:
        return self.subspace(vectors)

    def atom(self, v) -> Subspace:
        s = self.subspace([v])
        if s.dim != 1:
            raise ValueError("the zero vector spans no atom")
        return s

    def _coords(self, v):
        if isinstance(v, Vector):
            if v.space != self:
                raise SpaceMismatch("vector from another space")
            return v.coords
        coords = tuple(self.field.coerce(x) for x in v)
        if len(coords) != self.dim:
            raise SpaceMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        return coords

    def _span_rows(self, rows) -> Subspace:
        # rows are already coordinate tuples of this space
        return self._intern(*linalg.rref(rows, self.field))

    def _intern(self, basis, pivots) -> Subspace:
        s = self._interned.get(basis)
        if s is None:
            s = Subspace(self, basis, pivots)
            self._interned[basis] = s
        return s

    def form_eval(self, u, v) -> FieldScalar:
        return form_eval(u, v)

    # random sampling
    def random_scalar(self, rng: random.Random, bound: int = 3) -> FieldScalar:
        a = rng.randint(-bound, bound)
        if self.field.d is None:
            return self.field(a)
        return self.field(a, rng.randint(-bound, bound))

    def random_vector(self, rng: random.Random, bound: int = 3) -> Vector:
        while True:
            v = self.vector([self.random_scalar(rng, bound) for _ in range(self.dim)])
            if not v.is_zero():
                return v

    def random_subspace(self, rng: random.Random, k: int | None = None, bound: int = 3) -> Subspace:
        if k is None:
            k = rng.randint(0, self.dim)
        while True:
            s = self.subspace([self.random_vector(rng, bound) for _ in range(k)])
            if s.dim == k:
                return s

    def random_atom(self, rng: random.Random, bound: int = 3) -> Subspace:
        return self.atom(self.random_vector(rng, bound))


@dataclass(frozen=True, repr=False)
class Vector:
    coords: tuple
    space: HermitianSpace

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise SpaceMismatch("coordinate count differs from the space dimension")

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _same(self, other):
        if not isinstance(other, Vector) or other.space != self.space:
            raise SpaceMismatch("vectors from different spaces")

    def __add__(self, other):
        self._same(other)
        return Vector(tuple(x + y for x, y in zip(self.coords, other.coords)), self.space)

    def __sub__(self, other):
        self._same(other)
        return Vector(tuple(x - y for x, y in zip(self.coords, other.coords)), self.space)

    def __neg__(self):
        return Vector(tuple(-x for x in self.coords), self.space)

    def scale(self, lam) -> Vector:
        lam = self.space.field.coerce(lam)
        return Vector(tuple(lam * x for x in self.coords), self.space)

    def __rmul__(self, lam):
        return self.scale(lam)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.coords)

    def describe(self) -> str:
        return "(" + ", ".join(format_scalar(x) for x in self.coords) + ")"

    __str__ = describe

    def __repr__(self):
        return f"Vector{self.describe()}"


class Subspace:
    """An element of the subspace lattice, held as a canonical RREF basis."""

    __slots__ = ("space", "basis", "pivots", "_ortho", "_ann", "_int_rows", "_int_ann", "_hash", "__weakref__")

    def __init__(self, space: HermitianSpace, basis, pivots):
        self.space = space
        self.basis = basis
        self.pivots = pivots
        self._ortho = None
        self._ann = None
        self._int_rows = None
        self._int_ann = None
        self._hash = hash(basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_atom(self) -> bool:
        return len(self.basis) == 1

    @property
    def generator(self) -> Vector:
        if len(self.basis) != 1:
            raise NotAnAtom(f"{self.describe()} is not an atom")
        return Vector(self.basis[0], self.space)

    def vectors(self) -> list[Vector]:
        return [Vector(r, self.space) for r in self.basis]

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Subspace) and self.basis == other.basis
                and self.space == other.space)

    def __hash__(self):
        return self._hash

    def __le__(self, other):
        return leq(self, other)

    def __ge__(self, other):
        return leq(other, self)

    def __contains__(self, v) -> bool:
        coords = self.space._coords(v)
        return _in_rref(coords, self.basis, self.pivots)

    def __repr__(self):
        return f"Subspace({self.describe()})"

    def describe(self) -> str:
        if not self.basis:
            return "{0}"
        rows = ", ".join("(" + ", ".join(format_scalar(x) for x in r) + ")" for r in self.basis)
        if len(self.basis) == 1:
            return f"[{rows}]"
        return "span{" + rows + "}"

    # cached derived data
    def annihilator(self):
        """Rows ``a`` with ``v . a = 0`` (plain dot product) exactly on this subspace."""
        if self._ann is None:
            self._ann = tuple(linalg.kernel(self.basis, self.space.dim, self.space.field))
        return self._ann

    def int_rows(self):
        if self._int_rows is None:
            self._int_rows = tuple(_integer_row(r) for r in self.basis)
        return self._int_rows

    def int_annihilator(self):
        if self._int_ann is None:
            self._int_ann = tuple(_integer_row(r) for r in self.annihilator())
        return self._int_ann


def _integer_row(row):
    from math import lcm
    den = 1
    for x in row:
        den = lcm(den, int(x.a.denominator))
    return tuple(int(x.a * den) for x in row)


def _in_rref(coords, basis, pivots) -> bool:
    r = list(coords)
    for row, p in zip(basis, pivots):
        c = r[p]
        if c:
            r = [x - c * y if y else x for x, y in zip(r, row)]
    return all(x.is_zero() for x in r)


def _check_same(*subspaces):
    s0 = subspaces[0].space
    for s in subspaces[1:]:
        if s.space is not s0 and s.space != s0:
            raise SpaceMismatch("subspaces from different spaces")
    return s0


def form_eval(u: Vector, v: Vector) -> FieldScalar:
    """f(u, v), linear in u and *-linear in v."""
    if u.space != v.space:
        raise SpaceMismatch("vectors from different spaces")
    space = u.space
    H = space.form
    n = space.dim
    vc = [x.conj() for x in v.coords]
    total = space.field.zero
    if space.standard:
        for x, y in zip(u.coords, vc):
            if x and y:
                total = total + x * y
        return total
    for j in range(n):
        if u.coords[j]:
            s = space.field.zero
            Hj = H[j]
            for k in range(n):
                if Hj[k] and vc[k]:
                    s = s + Hj[k] * vc[k]
            total = total + u.coords[j] * s
    return total


def _form_rows(space: HermitianSpace, rows):
    """Rows w(x) with f(v, x) = v . w(x)."""
    H, n = space.form, space.dim
    out = []
    for x in rows:
        xc = [c.conj() for c in x]
        if space.standard:
            out.append(tuple(xc))
        else:
            out.append(tuple(sum((H[j][k] * xc[k] for k in range(n)), space.field.zero) for j in range(n)))
    return out


def ortho(M: Subspace) -> Subspace:
    """M^perp = {v : f(v, x) = 0 for all x in M}."""
    if M._ortho is None:
        space = M.space
        if not M.basis:
            perp = space.whole
        elif M.dim == space.dim:
            perp = space.zero
        else:
            perp = space._span_rows(linalg.kernel(_form_rows(space, M.basis), space.dim, space.field))
        M._ortho = perp
        if perp._ortho is None:
            perp._ortho = M
    return M._ortho


def join(M: Subspace, N: Subspace) -> Subspace:
    space = _check_same(M, N)
    if M is N or not N.basis or M.dim == space.dim:
        return M
    if not M.basis or N.dim == space.dim:
        return N
    key = (M.basis, N.basis)
    r = space._joins.get(key)
    if r is None:
        r = space._span_rows(M.basis + N.basis)
        space._joins[key] = r
    return r


def meet(M: Subspace, N: Subspace) -> Subspace:
    """Exact intersection, computed from plain annihilators (independent of the form)."""
    space = _check_same(M, N)
    if M is N or not M.basis or N.dim == space.dim:
        return M
    if not N.basis or M.dim == space.dim:
        return N
    key = (M.basis, N.basis)
    r = space._meets.get(key)
    if r is None:
        r = space._span_rows(linalg.kernel(M.annihilator() + N.annihilator(), space.dim, space.field))
        space._meets[key] = r
    return r


def leq(M: Subspace, N: Subspace) -> bool:
    """Subspace inclusion M <= N."""
    if M is N:
        return True
    _check_same(M, N)
    if M.dim > N.dim:
        return False
    if M.dim == N.dim:
        return M.basis == N.basis
    if not M.basis:
        return True
    if M.space.field.d is None:
        ann = N.int_annihilator()
        return all(sum(x * y for x, y in zip(r, a)) == 0 for r in M.int_rows() for a in ann)
    return all(_in_rref(r, N.basis, N.pivots) for r in M.basis)


def _int_rank(rows) -> int:
    m = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        pr = m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [pr[c] * x - f * y for x, y in zip(m[i], pr)]
        rank += 1
        if rank == len(m):
            break
    return rank


def intersection_dim(M: Subspace, N: Subspace) -> int:
    """dim(M ^ N) = dim M + dim N - dim(M v N), by exact rank computation."""
    _check_same(M, N)
    if M.space.field.d is None:
        return M.dim + N.dim - _int_rank(M.int_rows() + N.int_rows())
    return M.dim + N.dim - linalg.rank(M.basis + N.basis, M.space.field)


def covering_dim(a: Subspace, p: Subspace) -> int:
    """dim((a v p) ^ a^perp) without building the intermediate subspaces."""
    ap = ortho(a)
    if a.space.field.d is None:
        rows = a.int_rows() + p.int_rows()
        j = _int_rank(rows)
        return j + ap.dim - _int_rank(rows + ap.int_rows())
    return intersection_dim(join(a, p), ap)


def _escapes(gens, ann):
    """For each integer row in ``gens``: is its dot product with some row of ``ann`` nonzero?"""
    if not ann:
        return np.zeros(len(gens), dtype=bool)
    A = np.array(ann, dtype=object)
    bound = int(abs(gens).max()) * int(abs(A).max()) * A.shape[1]
    if bound < 2**62:
        return (gens.astype(np.int64) @ A.astype(np.int64).T != 0).any(axis=1)
    return (gens @ A.T != 0).any(axis=1)


def covering_dims(a: Subspace, atoms) -> list[int]:
    """covering_dim(a, p) for many atoms p, sharing the work that depends only on a.

    dim((a v p) ^ a') = dim(a v p) + dim a' - dim(a v p v a'), and each join
    with p adds one dimension exactly when p escapes the annihilator test.
    """
    atoms = list(atoms)
    if a.space.field.d is not None or not atoms:
        return [covering_dim(a, p) for p in atoms]
    ap = ortho(a)
    whole = join(a, ap)
    gens = np.array([p.int_rows()[0] for p in atoms], dtype=object)
    j = a.dim + _escapes(gens, a.int_annihilator())
    k = whole.dim + _escapes(gens, whole.int_annihilator())
    return [int(x) for x in j + ap.dim - k]


def orthogonal(M: Subspace, N: Subspace) -> bool:
    return leq(M, ortho(N))


def is_f_closed(M: Subspace) -> bool:
    return ortho(ortho(M)) == M


def projection(M: Subspace, v: Vector) -> Vector:
    """The M-component of v in the decomposition V = M + M^perp."""
    space = M.space
    if v.space != space:
        raise SpaceMismatch("vector from another space")
    if not M.basis:
        return Vector(tuple(space.field.zero for _ in range(space.dim)), space)
    if M.dim == space.dim:
        return v
    b = M.vectors()
    gram = [[form_eval(bi, bj) for bi in b] for bj in b]
    rhs = [form_eval(v, bj) for bj in b]
    c = linalg.solve(gram, rhs, space.field)
    coords = [space.field.zero] * space.dim
    for ci, bi in zip(c, b):
        if ci:
            coords = [x + ci * y for x, y in zip(coords, bi.coords)]
    return Vector(tuple(coords), space)


def sasaki(a: Subspace, p: Subspace) -> Subspace:
    """(p v a^perp) ^ a for an atom p; an atom or {0}."""
    if not p.is_atom():
        raise NotAnAtom(f"{p.describe()} is not an atom")
    return meet(join(p, ortho(a)), a)


def check_orthomodular_space(space: HermitianSpace, sample) -> CheckReport:
    """M + M^perp = V on every sampled subspace (dimension count and trivial meet)."""
    witnesses = []
    for M in sample:
        P = ortho(M)
        if M.dim + P.dim != space.dim:
            witnesses.append({"M": M, "dim M": M.dim, "dim M^perp": P.dim})
        elif meet(M, P).dim != 0:
            witnesses.append({"M": M, "M ^ M^perp": meet(M, P)})
        elif join(M, P) != space.whole:
            witnesses.append({"M": M, "M + M^perp": join(M, P)})
    return CheckReport.from_witnesses("orthomodular-space", space.name, witnesses,
                                      stats={"subspaces": len(sample)})


def check_covering(space: HermitianSpace, atoms, elements) -> CheckReport:
    """(a v p) ^ a^perp is an atom or {0} for every pair."""
    witnesses = []
    pairs = 0
    for a in elements:
        ap = ortho(a)
        for p in atoms:
            if not p.is_atom():
                raise NotAnAtom(f"{p.describe()} is not an atom")
            pairs += 1
            c = meet(join(a, p), ap)
            if c.dim > 1:
                witnesses.append({"a": a, "p": p, "(a v p) ^ a'": c})
    return CheckReport.from_witnesses("covering", space.name, witnesses, stats={"pairs": pairs})


def unit_vector_in_atom(p: Subspace) -> Vector | None:
    """A vector q/|q| in the atom when |q|^2 is a rational square, else None."""
    if not p.is_atom():
        raise NotAnAtom(f"{p.describe()} is not an atom")
    if p.space.field.d is not None:
        raise ValueError("unit vectors are only decided over Q")
    q = p.generator
    r = is_rational_square(form_eval(q, q).rational())
    if r is None:
        return None
    return q.scale(1 / r)


def equal_norm_representatives(p: Subspace, q: Subspace) -> tuple[Vector, Vector] | None:
    """Generators x' of p and y' of q with f(x',x') = f(y',y'), if they exist over Q."""
    if not (p.is_atom() and q.is_atom()):
        raise NotAnAtom("equal-norm representatives need two atoms")
    if p.space.field.d is not None:
        raise ValueError("equal-norm representatives are only decided over Q")
    if not orthogonal(p, q):
        raise NotOrthogonal(f"{p.describe()} and {q.describe()} are not orthogonal")
    x, y = p.generator, q.generator
    ratio = norm_ratio(p, q)
    r = is_rational_square(ratio)
    if r is None:
        return None
    return x.scale(1 / r), y


def norm_ratio(p: Subspace, q: Subspace) -> Fraction:
    """f(x,x)/f(y,y) for the canonical generators; its square class is intrinsic."""
    x, y = p.generator, q.generator
    return form_eval(x, x).rational() / form_eval(y, y).rational()
