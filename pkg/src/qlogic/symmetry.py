"""Semilinear symmetries of Hermitian spaces and the maps they induce on atoms and subspaces."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import hermitian as hg
from . import linalg
from .errors import (ExtensionInconsistent, HypothesesUnmet, IdentityFails, NormsUnequal,
                     NotInvertible, NotOrthogonal)
from .report import CheckReport
from .scalars import FieldAutomorphism, automorphism, format_scalar, is_rational_square


class LinearSymmetry:
    """v -> S g(v): g-linear, invertible."""

    def __init__(self, space: hg.HermitianSpace, matrix, g: FieldAutomorphism | None = None, name: str = "S"):
        self.space = space
        self.g = g or automorphism(space.field, "id")
        self.matrix = tuple(tuple(space.field.coerce(x) for x in row) for row in matrix)
        if len(self.matrix) != space.dim or any(len(r) != space.dim for r in self.matrix):
            raise ValueError(f"matrix must be {space.dim}x{space.dim}")
        self.det = linalg.det(self.matrix, space.field)
        if self.det.is_zero():
            raise NotInvertible(f"{name} is singular")
        self.name = name

    def __repr__(self):
        return f"LinearSymmetry({self.name}, g={self.g})"

    def describe(self) -> str:
        rows = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.matrix)
        return f"{self.name}=[{rows}] g={self.g}"

    def apply(self, v: hg.Vector) -> hg.Vector:
        gv = [self.g(x) for x in v.coords]
        return hg.Vector(tuple(linalg.matvec(self.matrix, gv, self.space.field)), self.space)

    __call__ = apply

    def image(self, M: hg.Subspace) -> hg.Subspace:
        return self.space.subspace([self.apply(v) for v in M.vectors()])

    def compose(self, other: LinearSymmetry) -> LinearSymmetry:
        """self after other."""
        g_other = [[self.g(x) for x in row] for row in other.matrix]
        m = linalg.matmul(self.matrix, g_other, self.space.field)
        return LinearSymmetry(self.space, m, self.g.compose(other.g), f"{self.name}{other.name}")

    def inverse(self) -> LinearSymmetry:
        ginv = self.g.inverse()
        inv = linalg.inverse(self.matrix, self.space.field)
        return LinearSymmetry(self.space, [[ginv(x) for x in row] for row in inv], ginv, f"{self.name}^-1")

    def same_map(self, other: LinearSymmetry) -> bool:
        return self.matrix == other.matrix and self.g.name == other.g.name


def scalar_symmetry(space: hg.HermitianSpace, lam) -> LinearSymmetry:
    lam = space.field.coerce(lam)
    n = space.dim
    return LinearSymmetry(space, [[lam if i == j else 0 for j in range(n)] for i in range(n)],
                          name=f"{format_scalar(lam)}I")


def permutation_symmetry(space: hg.HermitianSpace, perm) -> LinearSymmetry:
    """e_i -> e_perm[i]."""
    n = space.dim
    m = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        m[j][i] = 1
    return LinearSymmetry(space, m, name="P" + "".join(str(p + 1) for p in perm))


@dataclass
class AtomMap:
    mapping: dict

    def __post_init__(self):
        if len(set(self.mapping.values())) != len(self.mapping):
            raise ValueError("atom map is not injective on its domain")

    def __call__(self, p):
        return self.mapping[p]

    @property
    def domain(self) -> list:
        return list(self.mapping)

    def check_orthosymmetry(self, L=None) -> CheckReport:
        """p perp q iff image(p) perp image(q), for all domain pairs."""
        witnesses = []
        dom = self.domain

        def perp(x, y):
            return L.leq(x, L.ortho(y)) if L is not None else hg.orthogonal(x, y)

        lab = L.label if L is not None else (lambda x: x.describe() if hasattr(x, "describe") else str(x))
        for p, q in combinations(dom, 2):
            if perp(p, q) != perp(self.mapping[p], self.mapping[q]):
                witnesses.append({"p": lab(p), "q": lab(q)})
        return CheckReport.from_witnesses("orthosymmetry", "atom map", witnesses,
                                          stats={"domain": len(dom)})


def induced_atom_map(S: LinearSymmetry, atoms) -> AtomMap:
    return AtomMap({p: S.image(p) for p in atoms})


def _rho_candidate(S: LinearSymmetry, u, v):
    fuv = hg.form_eval(u, v)
    if fuv.is_zero():
        return None
    g_rho = hg.form_eval(S(u), S(v)) / S.g(fuv)
    return S.g.inverse()(g_rho)


def verify_form_identity(S: LinearSymmetry, pairs) -> CheckReport:
    """f(Su, Sv) = g(rho) g(f(u, v)) with one rho for all sampled pairs."""
    pairs = list(pairs)
    rho = next((r for r in (_rho_candidate(S, u, v) for u, v in pairs) if r is not None), None)
    if rho is None:
        raise HypothesesUnmet("every sampled pair is orthogonal; rho is undetermined")
    grho = S.g(rho)
    witnesses = []
    for u, v in pairs:
        lhs = hg.form_eval(S(u), S(v))
        rhs = grho * S.g(hg.form_eval(u, v))
        if lhs != rhs:
            witnesses.append({"u": u, "v": v, "f(Su,Sv)": lhs, "g(rho) g(f(u,v))": rhs})
    stats = {"pairs": len(pairs), "rho": rho, "rho self-adjoint": rho.conj() == rho}
    return CheckReport.from_witnesses("form-identity", S.name, witnesses, stats=stats)


def form_identity_rho(S: LinearSymmetry, pairs):
    rep = verify_form_identity(S, pairs)
    if not rep.passed:
        w = rep.witnesses[0]
        raise IdentityFails(f"{S.name} does not scale the form uniformly", (w["u"], w["v"]))
    return rep.stats["rho"]


@dataclass
class LatticeMap:
    logic: object
    mapping: dict

    def __call__(self, x):
        return self.mapping[x]

    def check(self) -> CheckReport:
        """Bijective, order preserving both ways, commutes with the orthocomplement."""
        L = self.logic
        lab = L.label
        witnesses = []
        if len(set(self.mapping.values())) != len(self.mapping):
            witnesses.append({"law": "injective"})
        for x in L.elements:
            if self.mapping.get(L.ortho(x)) != L.ortho(self.mapping[x]):
                witnesses.append({"law": "ortho", "M": lab(x)})
        for x in L.elements:
            for y in L.elements:
                if L.leq(x, y) != L.leq(self.mapping[x], self.mapping[y]):
                    witnesses.append({"law": "order", "M": lab(x), "N": lab(y)})
        return CheckReport.from_witnesses("lattice-automorphism", getattr(L, "name", "logic"),
                                          witnesses, stats={"elements": len(L.elements)})


def extend_atom_map(lo: AtomMap, L) -> LatticeMap:
    """M -> join of the images of the atoms under M, for every element of L."""
    ats = L.atoms()
    missing = [p for p in ats if p not in lo.mapping]
    if missing:
        raise ExtensionInconsistent(f"atom map undefined on {L.label(missing[0])}")
    mapping = {}
    for M in L.elements:
        under = [p for p in ats if L.leq(p, M)]
        span, image = L.bottom, L.bottom
        for p in under:
            span = L.join(span, p)
            image = L.join(image, lo(p))
        if span != M:
            raise ExtensionInconsistent(f"{L.label(M)} is not the join of the atoms below it")
        if not L.contains(image):
            raise ExtensionInconsistent(f"image of {L.label(M)} leaves the logic")
        mapping[M] = image
    return LatticeMap(L, mapping)


def check_extension_agrees(ext: LatticeMap, S: LinearSymmetry) -> CheckReport:
    L = ext.logic
    witnesses = [{"M": M, "extension": ext(M), "S(M)": S.image(M)}
                 for M in L.elements if ext(M) != S.image(M)]
    return CheckReport.from_witnesses("extension-agrees", S.name, witnesses,
                                      stats={"elements": len(L.elements)})


def swap_symmetry(x: hg.Vector, y: hg.Vector, lam=1) -> LinearSymmetry:
    """U(a x + b y) = lam (a y + b x) on span{x, y}, lam on the orthocomplement."""
    space = x.space
    lam = space.field.coerce(lam)
    if lam.is_zero():
        raise ValueError("lambda must be nonzero")
    if not hg.form_eval(x, y).is_zero():
        raise NotOrthogonal(f"{x} and {y} are not orthogonal")
    nx, ny = hg.form_eval(x, x), hg.form_eval(y, y)
    if nx != ny:
        raise NormsUnequal(f"f(x,x) = {nx} but f(y,y) = {ny}")
    rest = hg.ortho(space.span(x, y)).vectors()
    src = [x, y] + rest
    dst = [y.scale(lam), x.scale(lam)] + [r.scale(lam) for r in rest]
    src_cols = [[v.coords[i] for v in src] for i in range(space.dim)]
    dst_cols = [[v.coords[i] for v in dst] for i in range(space.dim)]
    U = linalg.matmul(dst_cols, linalg.inverse(src_cols, space.field), space.field)
    return LinearSymmetry(space, U, name="U")


def check_swap(U: LinearSymmetry, x: hg.Vector, y: hg.Vector, lam=1, samples=()) -> CheckReport:
    space = x.space
    lam = space.field.coerce(lam)
    X, Y, Vbar = space.atom(x), space.atom(y), space.atom(x + y)
    witnesses = []
    if U.image(X) != Y:
        witnesses.append({"law": "[x] -> [y]", "image": U.image(X)})
    if U.image(Y) != X:
        witnesses.append({"law": "[y] -> [x]", "image": U.image(Y)})
    if U.image(Vbar) != Vbar:
        witnesses.append({"law": "[x+y] fixed", "image": U.image(Vbar)})
    k = lam * lam.conj()
    for u, v in combinations(list(samples), 2):
        if hg.form_eval(U(u), U(v)) != k * hg.form_eval(u, v):
            witnesses.append({"law": "f(Uu,Uv) = lam lam* f(u,v)", "u": u, "v": v})
    for w in (x, y):
        if U(U(w)) != w.scale(lam * lam):
            witnesses.append({"law": "U^2 = lam^2 on M", "v": w})
    return CheckReport.from_witnesses("swap", f"{x}, {y}", witnesses,
                                      stats={"lambda": lam, "fixed atom": Vbar, "samples": len(samples)})


def check_abundance(atoms, target: str = "atoms") -> CheckReport:
    """Every orthogonal atom pair is swapped by a symmetry fixing one of its superpositions."""
    atoms = list(atoms)
    witnesses, swappable, pairs = [], 0, 0
    for p, q in combinations(atoms, 2):
        if not hg.orthogonal(p, q):
            continue
        pairs += 1
        reps = hg.equal_norm_representatives(p, q)
        if reps is None:
            witnesses.append({"p": p, "q": q, "obstructed": True, "norm ratio": hg.norm_ratio(p, q)})
            continue
        U = swap_symmetry(*reps)
        rep = check_swap(U, *reps)
        if rep.passed:
            swappable += 1
        else:
            witnesses.append({"p": p, "q": q, "swap failed": rep.witnesses[0]})
    return CheckReport.from_witnesses("abundance", target, witnesses,
                                      stats={"orthogonal pairs": pairs, "swappable": swappable,
                                             "obstructed": pairs - swappable})


def abundance_verdicts(atoms) -> dict:
    """(p, q) -> True when swappable, for every orthogonal pair."""
    out = {}
    for p, q in combinations(list(atoms), 2):
        if hg.orthogonal(p, q):
            out[(p, q)] = hg.equal_norm_representatives(p, q) is not None
    return out


def check_regularity(space: hg.HermitianSpace, vectors) -> CheckReport:
    """g(f(v,v)) = f(v,v) for every field automorphism g and sampled v."""
    witnesses = []
    auts = space.field.automorphisms()
    vectors = list(vectors)
    for v in vectors:
        n = hg.form_eval(v, v)
        for g in auts:
            if g(n) != n:
                witnesses.append({"v": v, "g": g.name, "f(v,v)": n, "g(f(v,v))": g(n)})
    return CheckReport.from_witnesses("regularity", space.name, witnesses,
                                      stats={"vectors": len(vectors), "automorphisms": len(auts)},
                                      notes=["scalars commute, so f(v,v) is always central"])


def check_lemma4_consistency(x: hg.Vector, y: hg.Vector, S: LinearSymmetry, samples=()) -> CheckReport:
    """Replay: fixed superposition gives lam, g(rho) = lam lam*, and f(ay, ay) = f(lam x, lam x)."""
    space = x.space
    K = space.field
    X, Y = space.atom(x), space.atom(y)
    if not hg.orthogonal(X, Y):
        raise HypothesesUnmet("the atoms are not orthogonal")
    if S.image(X) != Y or S.image(Y) != X:
        raise HypothesesUnmet(f"{S.name} does not swap the two atoms")
    if S.g.name != "id":
        raise HypothesesUnmet("fixed superpositions are solved for linear symmetries only")
    Sx, Sy = S(x), S(y)
    alpha = _coefficient(Sx, y)
    beta = _coefficient(Sy, x)
    # S(x + mu y) = lam (x + mu y) with lam = mu beta and mu^2 beta = alpha
    mu = K.sqrt(alpha / beta)
    if mu is None:
        raise HypothesesUnmet("no superposition of the two atoms is fixed")
    lam = mu * beta
    v = x + y.scale(mu)
    if S(v) != v.scale(lam):
        raise HypothesesUnmet("fixed superposition could not be confirmed")
    pairs = [(a, b) for a in [x, y, v] + list(samples) for b in [x, y, v] + list(samples)]
    rho = form_identity_rho(S, pairs)
    witnesses = []
    if S.g(rho) != lam * lam.conj():
        witnesses.append({"law": "g(rho) = lam lam*", "rho": rho, "lambda": lam})
    xp, yp = x.scale(lam), y.scale(alpha)
    if hg.form_eval(xp, xp) != hg.form_eval(yp, yp):
        witnesses.append({"law": "f(x',x') = f(y',y')", "x'": xp, "y'": yp})
    stats = {"lambda": lam, "rho": rho, "alpha": alpha, "fixed atom": space.atom(v),
             "x'": xp, "y'": yp}
    return CheckReport.from_witnesses("lemma4", S.name, witnesses, stats=stats)


def _coefficient(w: hg.Vector, y: hg.Vector):
    """The scalar c with w = c y."""
    for a, b in zip(w.coords, y.coords):
        if not b.is_zero():
            c = a / b
            if w != y.scale(c):
                raise HypothesesUnmet("image is not a multiple of the partner vector")
            return c
    raise ValueError("zero vector")


def orbit(generators, base: hg.Subspace, cap: int = 256) -> list:
    seen = [base]
    known = {base}
    i = 0
    while i < len(seen) and len(seen) < cap:
        for S in generators:
            img = S.image(seen[i])
            if img not in known:
                known.add(img)
                seen.append(img)
        i += 1
    return seen


def orbit_superposition_check(generators, base: hg.Subspace, tests) -> CheckReport:
    """Each test atom lies in the orbit or under the join of two orbit atoms."""
    orb = orbit(generators, base)
    witnesses, found = [], []
    for t in tests:
        if t in orb:
            continue
        hit = next(((p, q) for p, q in combinations(orb, 2) if hg.leq(t, hg.join(p, q))), None)
        if hit is None:
            witnesses.append(t)
        elif len(found) < 3:
            found.append(f"{t.describe()} <= {hit[0].describe()} v {hit[1].describe()}")
    return CheckReport.from_witnesses("orbit-superposition", base.describe(), witnesses,
                                      stats={"orbit size": len(orb), "tests": len(list(tests))},
                                      notes=found)


def norm_ratio_is_square(p: hg.Subspace, q: hg.Subspace) -> bool:
    return is_rational_square(hg.norm_ratio(p, q)) is not None
