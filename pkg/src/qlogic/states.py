"""Probability measures on finite logics and the exact state polytope."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import hermitian as hg
from . import linalg
from .errors import (BadWeights, CapExceeded, FragmentNotDim2, ToleranceViolation,
                     ValidationError, ZeroVector)
from .logic import GeneratedSublattice
from .report import CheckReport, describe
from .scalars import QQ, FieldScalar

DEFAULT_CAP_ELEMENTS = 64
DEFAULT_CAP_VERTICES = 10_000


def _exact(x):
    """Normalize a scalar value: rationals become Fractions, others stay FieldScalars."""
    if isinstance(x, FieldScalar):
        return x.rational() if x.is_rational() else x
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if type(x).__name__ == "mpq":
        return Fraction(int(x.numerator), int(x.denominator))
    return x


@dataclass(eq=False)
class StateMeasure:
    logic: object
    values: dict
    name: str = "state"
    approx: bool = False
    tolerance: float = 0.0
    meta: dict = field(default_factory=dict)

    def __call__(self, x):
        try:
            return self.values[x]
        except KeyError:
            raise ValidationError("state has no value here", self.logic.label(x)) from None

    def describe(self) -> str:
        return self.name

    def _close(self, x, y) -> bool:
        if self.approx:
            return abs(float(x) - float(y)) <= self.tolerance
        return x == y

    def violations(self) -> list:
        L = self.logic
        out = []
        missing = [x for x in L.elements if x not in self.values]
        if missing:
            return [{"law": "value defined", "element": L.label(missing[0])}]
        for x in L.elements:
            v = self.values[x]
            lo, hi = (-self.tolerance, 1 + self.tolerance) if self.approx else (0, 1)
            if not (lo <= v <= hi):
                out.append({"law": "0 <= m <= 1", "element": L.label(x), "value": v})
        if not self._close(self.values[L.bottom], 0):
            out.append({"law": "m(0) = 0", "value": self.values[L.bottom]})
        if not self._close(self.values[L.top], 1):
            out.append({"law": "m(1) = 1", "value": self.values[L.top]})
        for a, b, j in orthogonal_join_triples(L):
            lhs, rhs = self.values[j], self.values[a] + self.values[b]
            if not self._close(lhs, rhs):
                out.append({"law": "additivity", "a": L.label(a), "b": L.label(b),
                            "m(a v b)": lhs, "m(a) + m(b)": rhs})
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def validate(self) -> StateMeasure:
        bad = self.violations()
        if bad:
            raise ValidationError(f"not a probability measure: {describe(bad[0])}", self.name)
        return self

    def same_as(self, other: StateMeasure) -> bool:
        return all(self.values[x] == other.values[x] for x in self.logic.elements)

    def key(self) -> tuple:
        return tuple(self.values[x] for x in self.logic.elements)


def orthogonal_join_triples(L) -> list:
    """(a, b, a v b) for distinct orthogonal pairs whose join lies in L, cached per logic."""
    cached = getattr(L, "_orth_triples", None)
    if cached is not None:
        return cached
    out = []
    for a, b in combinations(L.elements, 2):
        if L.leq(a, L.ortho(b)):
            j = L.join(a, b)
            if j is not None and L.contains(j):
                out.append((a, b, j))
    try:
        L._orth_triples = out
    except AttributeError:
        pass
    return out


def orthogonal_atom_triples(L) -> list:
    """Pairwise orthogonal atom triples of L whose join is the top element."""
    ats = L.atoms()
    out = []
    for p, q, r in combinations(ats, 3):
        if L.leq(p, L.ortho(q)) and L.leq(p, L.ortho(r)) and L.leq(q, L.ortho(r)):
            j = L.join(L.join(p, q), r)
            if j == L.top:
                out.append((p, q, r))
    return out


# the polytope

@dataclass
class StatePolytope:
    logic: object
    x0: list
    directions: list
    equalities: int
    feasible: bool
    cap_vertices: int = DEFAULT_CAP_VERTICES
    _vertices: list | None = None

    @property
    def dimension(self) -> int:
        return len(self.directions) if self.feasible else -1

    def point(self, t) -> list:
        n = len(self.x0)
        return [self.x0[i] + sum((d[i] * ti for d, ti in zip(self.directions, t)), Fraction(0))
                for i in range(n)]

    def state(self, xs, name: str) -> StateMeasure:
        return StateMeasure(self.logic, dict(zip(self.logic.elements, xs)), name)

    def contains(self, alpha: StateMeasure) -> bool:
        return not alpha.approx and alpha.logic is self.logic and alpha.is_valid()


def build_polytope(L, cap_elements: int = DEFAULT_CAP_ELEMENTS,
                   cap_vertices: int = DEFAULT_CAP_VERTICES) -> StatePolytope:
    els = L.elements
    n = len(els)
    if n > cap_elements:
        raise CapExceeded(f"{n} logic elements exceed the cap of {cap_elements}")
    idx = {x: i for i, x in enumerate(els)}
    zero = QQ.zero
    rows = []

    def row(coeffs, rhs):
        r = [zero] * (n + 1)
        for i, c in coeffs:
            r[i] = r[i] + QQ(c)
        r[n] = QQ(rhs)
        rows.append(r)

    row([(idx[L.bottom], 1)], 0)
    row([(idx[L.top], 1)], 1)
    for a, b, j in orthogonal_join_triples(L):
        row([(idx[j], 1), (idx[a], -1), (idx[b], -1)], 0)
    basis, pivots = linalg.rref(rows, QQ)
    if pivots and pivots[-1] == n:
        return StatePolytope(L, [], [], len(rows), False, cap_vertices)
    x0 = [Fraction(0)] * n
    for r, p in zip(basis, pivots):
        x0[p] = r[n].rational()
    free = [c for c in range(n) if c not in pivots]
    directions = []
    for f in free:
        d = [Fraction(0)] * n
        d[f] = Fraction(1)
        for r, p in zip(basis, pivots):
            d[p] = -r[f].rational()
        directions.append(d)
    return StatePolytope(L, x0, directions, len(rows), True, cap_vertices)


def _primitive(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _int_row(fracs):
    den = 1
    for x in fracs:
        den = math.lcm(den, x.denominator)
    return [int(x * den) for x in fracs]


def _double_description(A, cap: int):
    """Extreme rays of the pointed cone {y : A y >= 0}, A integer with full column rank."""
    d = len(A[0])
    # choose d independent rows for the initial simplicial cone
    chosen, basis_rows = [], []
    for i, r in enumerate(A):
        trial = basis_rows + [[QQ(x) for x in r]]
        if linalg.rank(trial, QQ) > len(basis_rows):
            basis_rows = trial
            chosen.append(i)
            if len(chosen) == d:
                break
    if len(chosen) < d:
        raise ValueError("constraint matrix does not have full column rank")
    inv = linalg.inverse(basis_rows, QQ)
    rays = []
    for c in range(d):
        col = [inv[r][c].rational() for r in range(d)]
        rays.append(_primitive(_int_row(col)))

    def zero_set(y, rows_done):
        z = 0
        for k in rows_done:
            if sum(a * b for a, b in zip(A[k], y)) == 0:
                z |= 1 << k
        return z

    done = list(chosen)
    zs = [zero_set(y, done) for y in rays]
    for k in range(len(A)):
        if k in chosen:
            continue
        a = A[k]
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zs = [zs[i] for i in pos] + [zs[i] | 1 << k for i in zer]
        for i in pos:
            for j in neg:
                common = zs[i] & zs[j]
                if bin(common).count("1") < d - 2:
                    continue
                if any(m != i and m != j and zs[m] & common == common for m in range(len(rays))):
                    continue
                vi, vj = vals[i], -vals[j]
                y = _primitive([vj * x + vi * z for x, z in zip(rays[i], rays[j])])
                new_rays.append(y)
                new_zs.append(common | 1 << k)
                if len(new_rays) > cap:
                    raise CapExceeded(f"more than {cap} extreme rays during enumeration")
        rays, zs = new_rays, new_zs
        done.append(k)
    return rays


def enumerate_pure_states(P: StatePolytope) -> list[StateMeasure]:
    """Vertices of the state polytope, exact and revalidated, in a fixed order."""
    if P._vertices is not None:
        return P._vertices
    if not P.feasible:
        P._vertices = []
        return []
    n, k = len(P.x0), len(P.directions)
    if k == 0:
        pts = [P.x0] if all(0 <= x <= 1 for x in P.x0) else []
    else:
        # homogenized cone in (t, s): s >= 0, x0 s + N t >= 0, s - x0 s - N t >= 0
        A = [_int_row([Fraction(0)] * k + [Fraction(1)])]
        for i in range(n):
            lower = [d[i] for d in P.directions] + [P.x0[i]]
            A.append(_int_row(lower))
            A.append(_int_row([-x for x in lower[:-1]] + [1 - P.x0[i]]))
        rays = _double_description(A, P.cap_vertices)
        pts = []
        for y in rays:
            s = y[-1]
            if s > 0:
                pts.append(P.point([Fraction(t, s) for t in y[:-1]]))
    seen, uniq = set(), []
    for p in pts:
        t = tuple(p)
        if t not in seen:
            seen.add(t)
            uniq.append(p)
    if len(uniq) > P.cap_vertices:
        raise CapExceeded(f"{len(uniq)} vertices exceed the cap of {P.cap_vertices}")
    uniq.sort(key=lambda p: tuple(-x for x in p))
    out = []
    for i, p in enumerate(uniq, start=1):
        out.append(P.state(p, f"v{i}").validate())
    P._vertices = out
    return out


def polytope_report(P: StatePolytope) -> CheckReport:
    verts = enumerate_pure_states(P)
    bad = [v.name for v in verts if not v.is_valid()]
    stats = {"elements": len(P.logic.elements), "equalities": P.equalities,
             "dimension": P.dimension, "vertices": len(verts)}
    return CheckReport.from_witnesses("state-polytope", getattr(P.logic, "name", "logic"), bad,
                                      stats=stats)


# supports and regularity properties

def support(alpha: StateMeasure):
    L = alpha.logic
    certain = [x for x in L.elements if alpha.values[x] == 1]
    for m in certain:
        if all(L.leq(m, y) for y in certain):
            return m
    return None


def _state_label(alpha):
    return alpha.name


def check_jauch_piron(L, states) -> CheckReport:
    witnesses = []
    for alpha in states:
        certain = [x for x in L.elements if alpha.values[x] == 1]
        for a, b in combinations(certain, 2):
            if L.leq(a, b) or L.leq(b, a):
                continue
            if not any(L.leq(c, a) and L.leq(c, b) for c in certain):
                witnesses.append({"state": alpha.name, "a": L.label(a), "b": L.label(b)})
    return CheckReport.from_witnesses("jauch-piron", getattr(L, "name", "logic"), witnesses,
                                      stats={"states": len(states)})


def check_sufficiency(L, pure_states) -> CheckReport:
    witnesses = [L.label(a) for a in L.elements
                 if a != L.bottom and not any(s.values[a] == 1 for s in pure_states)]
    return CheckReport.from_witnesses("sufficiency", getattr(L, "name", "logic"), witnesses,
                                      stats={"pure states": len(pure_states)})


def check_identification(L, pure_states) -> CheckReport:
    """beta(s(alpha)) = 1 implies beta = alpha."""
    witnesses, unsupported = [], 0
    for alpha in pure_states:
        s = support(alpha)
        if s is None:
            unsupported += 1
            continue
        for beta in pure_states:
            if beta is not alpha and beta.values[s] == 1 and not beta.same_as(alpha):
                witnesses.append({"alpha": alpha.name, "beta": beta.name, "s(alpha)": L.label(s)})
    notes = [f"{unsupported} pure states without support skipped"] if unsupported else []
    return CheckReport.from_witnesses("identification", getattr(L, "name", "logic"), witnesses,
                                      stats={"pure states": len(pure_states)}, notes=notes)


def check_minimal_disturbance(L, pure_states) -> CheckReport:
    """For alpha(a) != 0 some pure beta has s(beta) <= a and alpha(s(beta)) = alpha(a)."""
    supports = [(b, support(b)) for b in pure_states]
    supports = [(b, s) for b, s in supports if s is not None]
    witnesses, found = [], []
    for alpha in pure_states:
        for a in L.elements:
            if alpha.values[a] == 0:
                continue
            hit = next((b for b, s in supports if L.leq(s, a) and alpha.values[s] == alpha.values[a]), None)
            if hit is None:
                witnesses.append({"alpha": alpha.name, "a": L.label(a)})
            elif len(found) < 3:
                found.append({"alpha": alpha.name, "a": L.label(a), "beta": hit.name})
    notes = [f"example: {describe(f)}" for f in found] if not witnesses else []
    return CheckReport.from_witnesses("minimal-disturbance", getattr(L, "name", "logic"), witnesses,
                                      stats={"pure states": len(pure_states)}, notes=notes)


def check_order_determining(L, states) -> CheckReport:
    """a <= b iff alpha(a) <= alpha(b) for every listed state."""
    witnesses = []
    for a in L.elements:
        for b in L.elements:
            order = L.leq(a, b)
            dominated = all(s.values[a] <= s.values[b] for s in states)
            if order != dominated:
                witnesses.append({"a": L.label(a), "b": L.label(b), "a <= b": order,
                                  "m(a) <= m(b) for all states": dominated})
    return CheckReport.from_witnesses("order-determining", getattr(L, "name", "logic"), witnesses,
                                      stats={"states": len(states)})


def check_strong_ordering(L, states) -> CheckReport:
    """If a^1 is nonempty and a^1 is contained in b^1 then a <= b, where x^1 = {alpha : alpha(x) = 1}."""
    ones = {x: frozenset(i for i, s in enumerate(states) if s.values[x] == 1) for x in L.elements}
    witnesses = [{"a": L.label(a), "b": L.label(b)}
                 for a in L.elements for b in L.elements
                 if ones[a] and ones[a] <= ones[b] and not L.leq(a, b)]
    return CheckReport.from_witnesses("strong-ordering", getattr(L, "name", "logic"), witnesses,
                                      stats={"states": len(states)})


# states of subspace fragments

def atom_induced_state(v: hg.Vector, fragment: GeneratedSublattice, name: str | None = None) -> StateMeasure:
    """alpha(M) = f(v, P_M v) / f(v, v) on every fragment element."""
    if v.is_zero():
        raise ZeroVector("a state needs a nonzero vector")
    nv = hg.form_eval(v, v)
    values = {}
    for M in fragment.elements:
        if M.dim == 0:
            values[M] = Fraction(0)
        elif M.dim == v.space.dim:
            values[M] = Fraction(1)
        else:
            values[M] = _exact(hg.form_eval(v, hg.projection(M, v)) / nv)
    atom = v.space.atom(v)
    alpha = StateMeasure(fragment, values, name or f"alpha{atom.describe()}",
                         meta={"vector": v, "atom": atom})
    return alpha.validate()


def parse_float_vector(text: str) -> list[float]:
    """Comma separated reals; each entry is a decimal, p/q, or sqrt(k)."""
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        if tok.startswith("sqrt(") and tok.endswith(")"):
            out.append(math.sqrt(float(Fraction(tok[5:-1]))))
        elif tok.startswith("-sqrt(") and tok.endswith(")"):
            out.append(-math.sqrt(float(Fraction(tok[6:-1]))))
        else:
            out.append(float(Fraction(tok)))
    return out


def extension_state(v, fragment: GeneratedSublattice, tolerance: float = 1e-9) -> StateMeasure:
    """The real vector state restricted to a rational fragment (float arithmetic)."""
    space = fragment.space
    if space.field.d is not None:
        raise ValueError("extension states are defined on fragments over Q")
    v = np.asarray(v, dtype=float)
    if v.shape != (space.dim,):
        raise ValueError(f"expected {space.dim} coordinates")
    if not np.any(v):
        raise ZeroVector("a state needs a nonzero vector")
    H = np.array([[float(x) for x in row] for row in space.form])
    nv = float(v @ H @ v)
    values = {}
    for M in fragment.elements:
        if M.dim == 0:
            values[M] = 0.0
        elif M.dim == space.dim:
            values[M] = 1.0
        else:
            B = np.array([[float(x) for x in r] for r in M.basis])
            c = np.linalg.solve(B @ H @ B.T, B @ H @ v)
            pv = c @ B
            values[M] = float(pv @ H @ pv) / nv
    alpha = StateMeasure(fragment, values, "alpha[" + ", ".join(f"{x:.6g}" for x in v) + "]",
                         approx=True, tolerance=tolerance, meta={"vector": tuple(v)})
    bad = alpha.violations()
    if bad:
        raise ToleranceViolation(f"additivity fails beyond {tolerance}: {describe(bad[0])}")
    return alpha


def max_additivity_deviation(alpha: StateMeasure) -> float:
    L = alpha.logic
    devs = [abs(float(alpha.values[j]) - float(alpha.values[a]) - float(alpha.values[b]))
            for a, b, j in orthogonal_join_triples(L)]
    return max(devs, default=0.0)


def extension_state_report(alpha: StateMeasure, delta: float = 1e-6) -> CheckReport:
    """No fragment atom is certain or impossible: every atom value lies in (delta, 1 - delta)."""
    L = alpha.logic
    ats = L.atoms()
    vals = [alpha.values[p] for p in ats]
    witnesses = [{"atom": L.label(p), "value": alpha.values[p]} for p in ats
                 if not (delta < alpha.values[p] < 1 - delta)]
    stats = {"atoms": len(ats), "max additivity deviation": max_additivity_deviation(alpha),
             "tolerance": alpha.tolerance,
             "min atom value": min(vals, default=None), "max atom value": max(vals, default=None)}
    notes = []
    if L.space.dim == 2:
        notes.append("in dimension 2 the top is the only certain element; "
                     "the witness shows no fragment atom carries the state")
    return CheckReport.from_witnesses("extension-state", getattr(L, "name", "fragment"), witnesses,
                                      stats=stats, notes=notes)


def anomalous_dim2_state(fragment: GeneratedSublattice) -> StateMeasure:
    """A dispersion-free measure on a fragment of the plane: [(1, t)] gets 1 iff t >= 0."""
    space = fragment.space
    if space.dim != 2 or space.field.d is not None:
        raise FragmentNotDim2("the sign construction needs a fragment of Q^2")
    values = {}
    for M in fragment.elements:
        if M.dim == 0:
            values[M] = Fraction(0)
        elif M.dim == 2:
            values[M] = Fraction(1)
        else:
            row = M.basis[0]
            values[M] = Fraction(1) if row[0] == 1 and row[1].sign() >= 0 else Fraction(0)
    return StateMeasure(fragment, values, "dispersion-free sign state").validate()


def first_disagreement(alpha: StateMeasure, beta: StateMeasure, elements=None):
    for x in elements if elements is not None else alpha.logic.elements:
        if alpha.values[x] != beta.values[x]:
            return x
    return None


def convex_mix(states, weights, name: str = "mixture") -> StateMeasure:
    weights = [Fraction(w) for w in weights]
    states = list(states)
    if len(weights) != len(states) or not states:
        raise BadWeights("one weight per state is required")
    if any(w < 0 for w in weights) or sum(weights) != 1:
        raise BadWeights("weights must be nonnegative and sum to 1")
    L = states[0].logic
    if any(s.logic is not L for s in states):
        raise ValueError("states live on different logics")
    if any(s.approx for s in states):
        raise ValueError("approximate states cannot be mixed with exact ones")
    values = {x: sum((w * s.values[x] for w, s in zip(weights, states)), Fraction(0))
              for x in L.elements}
    values = {x: _exact(v) for x, v in values.items()}
    return StateMeasure(L, values, name, meta={"components": list(zip(weights, states))}).validate()


def check_mixture_support(mix: StateMeasure) -> CheckReport:
    """s(mix) equals the join of the atoms of the components with nonzero weight."""
    L = mix.logic
    comps = mix.meta.get("components", [])
    expected = L.bottom
    for w, s in comps:
        if w != 0:
            expected = L.join(expected, s.meta["atom"])
    got = support(mix)
    witnesses = [] if got == expected else [{"expected": expected, "support": got}]
    return CheckReport.from_witnesses("mixture-support", mix.name, witnesses,
                                      stats={"components": len(comps)})
