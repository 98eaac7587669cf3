"""Effects, observables, operations and Lüders filters on finite state families."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import hermitian as hg
from .errors import NotAPartition, OutsideGeneratedCone, ValidationError
from .logic import FiniteLogic, check_orthomodular, check_ortholattice
from .report import CheckReport
from .states import StateMeasure, atom_induced_state, support


@dataclass(frozen=True)
class Effect:
    """A [0,1]-valued function given by its values on a fixed list of pure states."""

    values: tuple
    name: str = "f"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __eq__(self, other):
        return isinstance(other, Effect) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __len__(self):
        return len(self.values)

    @classmethod
    def constant(cls, c, n: int, name: str | None = None) -> Effect:
        return cls((Fraction(c),) * n, name or str(Fraction(c)))

    def __add__(self, other: Effect) -> Effect:
        return Effect(tuple(x + y for x, y in zip(self.values, other.values)), f"{self.name}+{other.name}")

    def __sub__(self, other: Effect) -> Effect:
        return Effect(tuple(x - y for x, y in zip(self.values, other.values)), f"{self.name}-{other.name}")

    def __le__(self, other: Effect) -> bool:
        return all(x <= y for x, y in zip(self.values, other.values))

    def complement(self) -> Effect:
        return Effect(tuple(1 - x for x in self.values), f"{self.name}'")

    def in_unit_interval(self) -> bool:
        return all(0 <= x <= 1 for x in self.values)

    def describe(self) -> str:
        return self.name


def _sum(effects, n):
    total = [Fraction(0)] * n
    for f in effects:
        for i, x in enumerate(f.values):
            total[i] += x
    return tuple(total)


def _dedupe(candidates) -> list[Effect]:
    seen, out = set(), []
    for f in candidates:
        if f.values not in seen:
            seen.add(f.values)
            out.append(f)
    return out


def with_bounds(candidates) -> list[Effect]:
    """The candidate set with the zero and unit effects adjoined, duplicates removed."""
    cands = _dedupe(candidates)
    if not cands:
        return cands
    n = len(cands[0])
    return _dedupe([Effect.constant(0, n, "0")] + cands + [Effect.constant(1, n, "e")])


def check_orthogonality_postulate(candidates, max_seq_len: int = 4, strict: bool = True,
                                  adjoin_bounds: bool = True, target: str = "candidates") -> CheckReport:
    """Every pairwise orthogonal sequence (with repetition, up to ``max_seq_len``) is orthogonal.

    ``strict``: the completing effect g must lie in the candidate set;
    otherwise any g with values in [0, 1] is allowed.
    """
    cands = with_bounds(candidates) if adjoin_bounds else _dedupe(candidates)
    if not cands:
        return CheckReport("orthogonality-postulate", target, stats={"candidates": 0})
    n = len(cands[0])
    if any(len(f) != n for f in cands):
        raise ValidationError("effects are defined on different state lists")
    members = {f.values: f for f in cands}
    k = len(cands)
    # orth[i][j]: f_i + f_j <= e
    orth = [[all(x + y <= 1 for x, y in zip(cands[i].values, cands[j].values)) for j in range(k)]
            for i in range(k)]
    witnesses, checked = [], 0
    by_len: dict = {}

    def visit(seq, total):
        nonlocal checked
        checked += 1
        g = tuple(1 - x for x in total)
        ok = g in members if strict else all(0 <= x <= 1 for x in g)
        if not ok:
            by_len.setdefault(len(seq), 0)
            by_len[len(seq)] += 1
            witnesses.append({"sequence": [cands[i].name for i in seq], "length": len(seq),
                              "sum": list(total)})
        if len(seq) == max_seq_len:
            return
        for j in range(seq[-1], k):
            if all(orth[i][j] for i in seq):
                visit(seq + [j], tuple(x + y for x, y in zip(total, cands[j].values)))

    for i in range(k):
        visit([i], cands[i].values)
    witnesses.sort(key=lambda w: (w["length"], w["sequence"]))
    stats = {"candidates": k, "max sequence length": max_seq_len,
             "pairwise orthogonal sequences": checked,
             "g ranges over": "candidate set" if strict else "[0, e]"}
    if witnesses:
        stats["shortest witness"] = witnesses[0]["length"]
    name = "orthogonality-postulate" if strict else "orthogonality-postulate-loose"
    notes = ["0 and e adjoined to the candidate set"] if adjoin_bounds else []
    return CheckReport.from_witnesses(name, target, witnesses, stats=stats, notes=notes)


def effect_logic(candidates, adjoin_bounds: bool = True, name: str = "effects") -> FiniteLogic:
    """The poset of candidate effects under pointwise order with f' = e - f."""
    cands = with_bounds(candidates) if adjoin_bounds else _dedupe(candidates)
    labels = [f.name for f in cands]
    if len(set(labels)) != len(labels):
        labels = [f"{f.name}#{i}" for i, f in enumerate(cands)]
    by_vals = {f.values: lab for f, lab in zip(cands, labels)}
    ortho = {}
    for f, lab in zip(cands, labels):
        c = f.complement().values
        if c not in by_vals:
            raise ValidationError("complement e - f is not a candidate", lab)
        ortho[lab] = by_vals[c]
    matrix = [[f <= g for g in cands] for f in cands]
    return FiniteLogic(labels, matrix, ortho, name=name)


def check_theorem2_conclusions(candidates, adjoin_bounds: bool = True,
                               target: str = "candidates") -> CheckReport:
    """Orthocomplemented, orthomodular, and f1 + f2 is the join of orthogonal f1, f2."""
    cands = with_bounds(candidates) if adjoin_bounds else _dedupe(candidates)
    witnesses = []
    vals = {f.values for f in cands}
    missing = [f.name for f in cands if f.complement().values not in vals]
    for m in missing:
        witnesses.append({"law": "complement in set", "f": m})
    stats = {"candidates": len(cands)}
    if missing:
        return CheckReport.from_witnesses("theorem2-conclusions", target, witnesses, stats=stats)
    L = effect_logic(cands, adjoin_bounds=False)
    for sub in (check_ortholattice(L), check_orthomodular(L)):
        for w in sub.witnesses:
            witnesses.append({"law": sub.check, **w} if isinstance(w, dict) else {"law": sub.check, "w": w})
    label = dict(zip([f.values for f in cands], L.elements))
    pairs = 0
    for f1, f2 in combinations(cands, 2):
        s = f1 + f2
        if not all(x <= 1 for x in s.values):
            continue
        pairs += 1
        j = L.join(label[f1.values], label[f2.values])
        if s.values not in label:
            witnesses.append({"law": "f1 + f2 in set", "f1": f1.name, "f2": f2.name})
        elif j != label[s.values]:
            witnesses.append({"law": "f1 + f2 is the join", "f1": f1.name, "f2": f2.name, "join": j})
    stats.update({"orthogonal pairs": pairs, "boolean": not _has_complementary_pair(L)})
    return CheckReport.from_witnesses("theorem2-conclusions", target, witnesses, stats=stats)


def _has_complementary_pair(L) -> bool:
    return any(L.meet(a, b) == L.bottom and not L.leq(a, L.ortho(b))
               for a, b in combinations(L.elements, 2))


def partition_indicators(blocks: int) -> list[Effect]:
    """All 2^k unions of a k-block partition of k dispersion-free states."""
    out = []
    for mask in range(1 << blocks):
        vals = tuple(Fraction(mask >> i & 1) for i in range(blocks))
        name = "0" if mask == 0 else ("e" if mask == (1 << blocks) - 1 else
                                       "1_" + "".join(str(i + 1) for i in range(blocks) if mask >> i & 1))
        out.append(Effect(vals, name))
    return out


def half_triple(n_states: int = 2) -> list[Effect]:
    h = Effect.constant(Fraction(1, 2), n_states, "h")
    return [h, h, h]


# pure states of a fragment and operations on their cone

class AtomStates:
    """The atom-induced pure states of a fragment, one per atom."""

    def __init__(self, fragment):
        self.fragment = fragment
        self.atoms = fragment.atoms()
        self.states = [atom_induced_state(p.generator, fragment) for p in self.atoms]
        self._by_atom = {p: i for i, p in enumerate(self.atoms)}

    def __len__(self):
        return len(self.states)

    def index_of_atom(self, p):
        return self._by_atom.get(p)

    def index_of(self, alpha: StateMeasure) -> int:
        for i, s in enumerate(self.states):
            if s is alpha:
                return i
        for i, s in enumerate(self.states):
            if s.same_as(alpha):
                return i
        raise OutsideGeneratedCone(f"{alpha.name} is not one of the generating pure states")

    def effect(self, a, name: str | None = None) -> Effect:
        return Effect(tuple(s.values[a] for s in self.states), name or self.fragment.label(a))


@dataclass
class Operation:
    """Linear map on the cone of a finite pure-state family.

    ``images[i]`` is ``(w, j)``: generator i goes to w times generator j, or to 0 when j is None.
    """

    family: AtomStates
    images: list
    name: str = "phi"
    truncated: int = 0
    meta: dict = field(default_factory=dict)

    def intensity(self, i: int) -> Fraction:
        return self.images[i][0]

    def apply(self, alpha: StateMeasure):
        w, j = self.images[self.family.index_of(alpha)]
        return w, (None if j is None else self.family.states[j])

    def apply_mixture(self, components) -> dict:
        """Image of sum_i c_i alpha_i as {generator index: coefficient}."""
        out: dict = {}
        for c, alpha in components:
            w, j = self.images[self.family.index_of(alpha)]
            if j is not None and w:
                out[j] = out.get(j, Fraction(0)) + c * w
        return out

    def compose(self, other: Operation) -> Operation:
        """self after other."""
        imgs = []
        for w, j in other.images:
            if j is None or w == 0:
                imgs.append((Fraction(0), None))
            else:
                w2, k = self.images[j]
                imgs.append((w * w2, k if w * w2 else None))
        return Operation(self.family, imgs, f"{self.name}.{other.name}")


def identity_operation(family: AtomStates) -> Operation:
    return Operation(family, [(Fraction(1), i) for i in range(len(family))], "id")


def zero_operation(family: AtomStates) -> Operation:
    return Operation(family, [(Fraction(0), None) for _ in range(len(family))], "0")


def measure_and_prepare(f: Effect, family: AtomStates, beta: int) -> Operation:
    """alpha -> f(alpha) beta."""
    return Operation(family, [(w, beta if w else None) for w in f.values], f"{f.name}*beta")


def effect_of(phi: Operation) -> Effect:
    return Effect(tuple(w for w, _ in phi.images), f"e.{phi.name}")


def isotonic(phi: Operation, psi: Operation) -> bool:
    return effect_of(phi) == effect_of(psi)


def luders_filter(a, family: AtomStates) -> Operation:
    """alpha_[v] -> alpha_[v](a) alpha_[P_a v]."""
    imgs, missing = [], 0
    for p, s in zip(family.atoms, family.states):
        w = s.values[a]
        if w == 0:
            imgs.append((Fraction(0), None))
            continue
        target = family.fragment.space.atom(hg.projection(a, p.generator))
        j = family.index_of_atom(target)
        if j is None:
            missing += 1
            imgs.append((Fraction(w), None))
        else:
            imgs.append((Fraction(w), j))
    return Operation(family, imgs, f"phi{family.fragment.label(a)}", truncated=missing, meta={"element": a})


def atom_filter(i: int, family: AtomStates) -> Operation:
    return luders_filter(family.atoms[i], family)


def check_filter_axioms(phi: Operation, a=None) -> list[CheckReport]:
    """P1, F1, F2, I1, repeatability and support transport for one filter; S2 when ``a`` is given."""
    fam = phi.family
    target = phi.name
    n = len(fam)
    reports = []

    def rep(check, witnesses, **kw):
        if phi.truncated:
            reports.append(CheckReport(check, target, "truncated", witnesses,
                                       {"cap": fam.fragment.cap, "images outside fragment": phi.truncated}))
        else:
            reports.append(CheckReport.from_witnesses(check, target, witnesses, stats={"pure states": n}, **kw))

    rep("P1", [fam.states[i].name for i, (w, j) in enumerate(phi.images)
               if not (0 <= w <= 1) or (w and j is None and not phi.truncated)])
    rep("F1", [fam.states[i].name for i, (w, j) in enumerate(phi.images) if w == 1 and j != i])
    sq = phi.compose(phi)
    rep("F2", [fam.states[i].name for i in range(n) if sq.intensity(i) != phi.intensity(i)])
    rep("repeatable", [fam.states[i].name for i in range(n) if sq.images[i] != phi.images[i]])
    i1 = []
    for i, (w, j) in enumerate(phi.images):
        if w and j is not None:
            filt = atom_filter(j, fam)
            if filt.intensity(i) != w:
                i1.append({"alpha": fam.states[i].name, "e(phi(alpha))": w,
                           "e(phi_alpha'(alpha))": filt.intensity(i)})
    rep("I1", i1)
    if a is not None:
        rep("S2", [] if effect_of(luders_filter(hg.ortho(a), fam)) == effect_of(phi).complement()
            else [{"a": fam.fragment.label(a)}])
        transport = []
        for i, (w, j) in enumerate(phi.images):
            if j is None:
                continue
            expected = hg.sasaki(a, support(fam.states[i]))
            got = support(fam.states[j])
            if got != expected:
                transport.append({"alpha": fam.states[i].name, "s(phi(alpha))": got, "sasaki": expected})
        rep("support-transport", transport)
    return reports


def check_s1(family: AtomStates) -> CheckReport:
    """Each atom filter gives intensity 1 only on its own pure state."""
    witnesses = []
    for k in range(len(family)):
        filt = atom_filter(k, family)
        for i in range(len(family)):
            if filt.intensity(i) == 1 and i != k:
                witnesses.append({"filter": filt.name, "beta": family.states[i].name})
    return CheckReport.from_witnesses("S1", family.fragment.name, witnesses,
                                      stats={"atom filters": len(family)})


def check_projection_postulate(family: AtomStates) -> CheckReport:
    """a(alpha) = e(phi_a(alpha)) for all a and pure alpha; a -> phi_a injective up to isotony."""
    L = family.fragment
    witnesses = []
    seen: dict = {}
    for a in L.elements:
        phi = luders_filter(a, family)
        eff = effect_of(phi)
        for i, s in enumerate(family.states):
            if s.values[a] != eff.values[i]:
                witnesses.append({"a": L.label(a), "alpha": s.name})
        if eff.values in seen:
            witnesses.append({"law": "injective", "a": L.label(a), "b": L.label(seen[eff.values])})
        seen[eff.values] = a
    ident = luders_filter(L.top, family).images == identity_operation(family).images
    zero = all(w == 0 for w, _ in luders_filter(L.bottom, family).images)
    if not ident:
        witnesses.append({"law": "phi_e is the identity"})
    if not zero:
        witnesses.append({"law": "phi_0 is zero"})
    return CheckReport.from_witnesses("projection-postulate", L.name, witnesses,
                                      stats={"elements": len(L.elements), "pure states": len(family)})


def check_eigenstate_preservation(phi1: Operation, phi2: Operation) -> CheckReport:
    """If phi1.phi2 and phi2.phi1 are isotonic, phi1 keeps eigenstates of phi2 as eigenstates."""
    fam = phi1.family
    a, b = phi1.compose(phi2), phi2.compose(phi1)
    if not isotonic(a, b):
        return CheckReport("eigenstates", f"{phi1.name}, {phi2.name}", "pass",
                           notes=["filters do not commute weakly; nothing to check"])
    witnesses = []
    for i in range(len(fam)):
        if phi2.intensity(i) == 1:
            w, j = phi1.images[i]
            if j is not None and phi2.intensity(j) != 1:
                witnesses.append({"alpha": fam.states[i].name, "phi1(alpha)": fam.states[j].name})
    return CheckReport.from_witnesses("eigenstates", f"{phi1.name}, {phi2.name}", witnesses)


@dataclass
class Observable:
    """A logic-valued measure on a finite outcome set."""

    logic: object
    outcomes: dict

    def element(self, subset):
        L = self.logic
        out = L.bottom
        for k in subset:
            out = L.join(out, self.outcomes[k])
        return out

    def distribution(self, alpha: StateMeasure) -> dict:
        return {k: alpha.values[x] for k, x in self.outcomes.items()}

    def check_additivity(self, states) -> CheckReport:
        """For disjoint outcome sets X, Y and each state, alpha(M(X u Y)) = alpha(M(X)) + alpha(M(Y))."""
        keys = list(self.outcomes)
        witnesses = []
        for r in range(1, len(keys)):
            for X in combinations(keys, r):
                Y = [k for k in keys if k not in X]
                mx, my, mxy = self.element(X), self.element(Y), self.element(keys)
                for s in states:
                    if s.values.get(mxy, None) is None or mx not in s.values or my not in s.values:
                        continue
                    if s.values[mxy] != s.values[mx] + s.values[my]:
                        witnesses.append({"X": list(X), "state": s.name})
        bad = [s.name for s in states if sum(self.distribution(s).values()) != 1]
        witnesses += [{"law": "distribution sums to 1", "state": b} for b in bad]
        return CheckReport.from_witnesses("observable", ",".join(map(str, keys)), witnesses,
                                          stats={"outcomes": len(keys), "states": len(states)})


def observable_from_partition(L, elements, labels=None) -> Observable:
    elements = list(elements)
    labels = list(labels) if labels is not None else [str(i + 1) for i in range(len(elements))]
    for x, y in combinations(elements, 2):
        if not L.leq(x, L.ortho(y)):
            raise NotAPartition(f"{L.label(x)} and {L.label(y)} are not orthogonal")
    top = L.bottom
    for x in elements:
        top = L.join(top, x)
    if top != L.top:
        raise NotAPartition("the elements do not join to the top element")
    return Observable(L, dict(zip(labels, elements)))


def instrument_from_filters(obs: Observable, family: AtomStates) -> dict:
    return {k: luders_filter(x, family) for k, x in obs.outcomes.items()}


def check_instrument(obs: Observable, family: AtomStates) -> CheckReport:
    inst = instrument_from_filters(obs, family)
    witnesses = [k for k, phi in inst.items()
                 if effect_of(phi) != family.effect(obs.outcomes[k])]
    return CheckReport.from_witnesses("instrument", ",".join(inst), witnesses,
                                      stats={"outcomes": len(inst)})
