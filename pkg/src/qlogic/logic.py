"""Finite orthocomplemented posets and the checkers for their lattice axioms.

Two implementations share one duck-typed interface:

* ``FiniteLogic``: an explicit table of labels, order and orthocomplement.
* ``GeneratedSublattice``: the closure of a few subspaces of a Hermitian
  space under meet, join and orthocomplement, capped at a configured size.

Interface: ``elements``, ``bottom``, ``top``, ``contains(x)``, ``leq(x, y)``,
``ortho(x)``, ``meet(x, y)`` / ``join(x, y)`` (``None`` when absent),
``atoms()``, ``label(x)`` and ``name``.
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from . import hermitian as hg
from .errors import HypothesesUnmet, MalformedTable, NotAnAtom
from .report import CheckReport


class FiniteLogic:
    def __init__(self, elements, leq, ortho, bottom=None, top=None, name: str = "logic"):
        """``leq`` is either a full boolean matrix or a collection of pairs.

        Pairs are closed reflexively and transitively; a matrix must already
        be a partial order.
        """
        self.elements = list(elements)
        self.name = name
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise MalformedTable("duplicate element labels")
        self._index = {x: i for i, x in enumerate(self.elements)}
        if isinstance(leq, (list, tuple)) and leq and isinstance(leq[0], (list, tuple)) \
                and len(leq) == n and all(len(r) == n and all(isinstance(b, bool) for b in r) for r in leq):
            up = [sum(1 << j for j in range(n) if leq[i][j]) for i in range(n)]
            self._validate_matrix(up)
        else:
            up = [1 << i for i in range(n)]
            for a, b in leq:
                up[self._idx(a)] |= 1 << self._idx(b)
            changed = True
            while changed:
                changed = False
                for i in range(n):
                    acc = up[i]
                    for j in _bits(up[i]):
                        acc |= up[j]
                    if acc != up[i]:
                        up[i], changed = acc, True
            for i in range(n):
                for j in range(i + 1, n):
                    if up[i] >> j & 1 and up[j] >> i & 1:
                        raise MalformedTable("order is not antisymmetric",
                                             f"{self.elements[i]}, {self.elements[j]}")
        self._up = up
        self._down = [sum(1 << i for i in range(n) if up[i] >> j & 1) for j in range(n)]

        omap = dict(ortho)
        for a, b in list(omap.items()):
            omap.setdefault(b, a)
        for x in self.elements:
            if x not in omap:
                raise MalformedTable("orthocomplement undefined", x)
        self._ortho = [self._idx(omap[x]) for x in self.elements]
        if sorted(self._ortho) != list(range(n)):
            dup = next(x for x in self.elements
                       if sum(1 for y in self._ortho if y == self._ortho[self._index[x]]) > 1)
            raise MalformedTable("orthocomplement is not a bijection", dup)

        full = (1 << n) - 1
        bots = [i for i in range(n) if self._up[i] == full]
        tops = [i for i in range(n) if self._down[i] == full]
        if bottom is None:
            if not bots:
                raise MalformedTable("no least element")
            bottom = self.elements[bots[0]]
        if top is None:
            if not tops:
                raise MalformedTable("no greatest element")
            top = self.elements[tops[0]]
        self.bottom, self.top = bottom, top
        if self._up[self._idx(bottom)] != full:
            raise MalformedTable("designated bottom is not below every element", bottom)
        if self._down[self._idx(top)] != full:
            raise MalformedTable("designated top is not above every element", top)
        self._meets: dict = {}
        self._joins: dict = {}

    def _validate_matrix(self, up):
        n = len(up)
        for i in range(n):
            if not up[i] >> i & 1:
                raise MalformedTable("order is not reflexive", self.elements[i])
            for j in _bits(up[i]):
                if j != i and up[j] >> i & 1:
                    raise MalformedTable("order is not antisymmetric",
                                         f"{self.elements[i]}, {self.elements[j]}")
                if up[j] & ~up[i]:
                    k = next(_bits(up[j] & ~up[i]))
                    raise MalformedTable("order is not transitive",
                                         f"{self.elements[i]} <= {self.elements[j]} <= {self.elements[k]}")

    def _idx(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise MalformedTable("unknown element", x) from None

    def __repr__(self):
        return f"FiniteLogic({self.name}, {len(self.elements)} elements)"

    def __len__(self):
        return len(self.elements)

    def contains(self, x) -> bool:
        return x in self._index

    def index(self, x) -> int:
        return self._idx(x)

    def label(self, x) -> str:
        return str(x)

    def leq(self, x, y) -> bool:
        return bool(self._up[self._idx(x)] >> self._idx(y) & 1)

    def ortho(self, x):
        return self.elements[self._ortho[self._idx(x)]]

    def meet(self, x, y):
        i, j = self._idx(x), self._idx(y)
        key = (i, j) if i <= j else (j, i)
        if key not in self._meets:
            lb = self._down[i] & self._down[j]
            self._meets[key] = next((m for m in _bits(lb) if self._down[m] == lb), None)
        m = self._meets[key]
        return None if m is None else self.elements[m]

    def join(self, x, y):
        i, j = self._idx(x), self._idx(y)
        key = (i, j) if i <= j else (j, i)
        if key not in self._joins:
            ub = self._up[i] & self._up[j]
            self._joins[key] = next((m for m in _bits(ub) if self._up[m] == ub), None)
        m = self._joins[key]
        return None if m is None else self.elements[m]

    def atoms(self) -> list:
        b = self._idx(self.bottom)
        return [x for i, x in enumerate(self.elements)
                if i != b and self._down[i] == (1 << i) | (1 << b)]


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


# standard tables

def boolean(n: int) -> FiniteLogic:
    """The Boolean algebra of subsets of {1..n}."""
    full = (1 << n) - 1

    def lab(s):
        if s == 0:
            return "0"
        if s == full:
            return "1"
        return "{" + ",".join(str(k + 1) for k in range(n) if s >> k & 1) + "}"

    subsets = list(range(1 << n))
    labels = [lab(s) for s in subsets]
    matrix = [[s & t == s for t in subsets] for s in subsets]
    return FiniteLogic(labels, matrix, {lab(s): lab(full ^ s) for s in subsets}, "0", "1",
                       name=f"boolean-{n}")


def mo2() -> FiniteLogic:
    """Two incompatible yes/no questions: 0, a, a', b, b', 1 with the four atoms incomparable."""
    els = ["0", "a", "a'", "b", "b'", "1"]
    leq = [("0", x) for x in els] + [(x, "1") for x in els]
    return FiniteLogic(els, leq, {"a": "a'", "b": "b'", "0": "1"}, "0", "1", name="mo2")


def o6() -> FiniteLogic:
    """The hexagon 0 < a < b < 1, 0 < b' < a' < 1: orthocomplemented, not orthomodular."""
    els = ["0", "a", "b", "b'", "a'", "1"]
    leq = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")]
    return FiniteLogic(els, leq, {"a": "a'", "b": "b'", "0": "1"}, "0", "1", name="o6")


def chain3_self_ortho() -> FiniteLogic:
    """0 < m < 1 with m' = m; a broken complement used as a negative example."""
    return FiniteLogic(["0", "m", "1"], [("0", "m"), ("m", "1")], {"0": "1", "m": "m"},
                       "0", "1", name="chain3")


class GeneratedSublattice:
    """Finite fragment of the subspace lattice generated by some subspaces.

    The closure is breadth-first and deterministic.  An element is always
    added together with its orthocomplement, so the fragment is ortho-closed
    even when truncated by ``cap``.
    """

    def __init__(self, space: hg.HermitianSpace, generators, cap: int = 512, name: str | None = None):
        self.space = space
        self.cap = cap
        self.generators = [g if isinstance(g, hg.Subspace) else space.atom(g) for g in generators]
        self.name = name or f"fragment of {space.name}"
        self.bottom, self.top = space.zero, space.whole
        self.elements: list = []
        self._index: dict = {}
        self.truncated = False
        self._up = None
        self._close()

    def _add(self, x) -> bool:
        if x in self._index:
            return True
        xp = hg.ortho(x)
        need = 1 if xp == x or xp in self._index else 2
        if len(self.elements) + need > self.cap:
            self.truncated = True
            return False
        for y in (x, xp):
            if y not in self._index:
                self._index[y] = len(self.elements)
                self.elements.append(y)
        return True

    def _close(self):
        for x in [self.bottom] + self.generators:
            if not self._add(x):
                return
        i = 0
        while i < len(self.elements):
            x = self.elements[i]
            for j in range(i):
                y = self.elements[j]
                if not (self._add(hg.meet(x, y)) and self._add(hg.join(x, y))):
                    return
            i += 1

    def __repr__(self):
        flag = ", truncated" if self.truncated else ""
        return f"GeneratedSublattice({self.name}, {len(self.elements)} elements{flag})"

    def __len__(self):
        return len(self.elements)

    def contains(self, x) -> bool:
        return x in self._index

    def index(self, x) -> int:
        return self._index[x]

    def label(self, x) -> str:
        return x.describe()

    def leq(self, x, y) -> bool:
        i, j = self._index.get(x), self._index.get(y)
        if i is None or j is None:
            return hg.leq(x, y)
        return bool(self.up_sets()[i] >> j & 1)

    def up_sets(self) -> list[int]:
        """Bitmask of the elements above each element, computed once."""
        if self._up is None:
            els = self.elements
            if self.space.field.d is None:
                up = self._rational_up_sets()
            else:
                up = []
                for x in els:
                    mask = 0
                    for j, y in enumerate(els):
                        if (y.dim > x.dim and hg.leq(x, y)) or y is x:
                            mask |= 1 << j
                    up.append(mask)
            self._up = up
        return self._up

    def _rational_up_sets(self) -> list[int]:
        # x <= y iff every row of x is killed by every annihilator row of y
        els = self.elements
        rows, owner = [], []
        for i, x in enumerate(els):
            rows += x.int_rows()
            owner += [i] * x.dim
        R = np.array(rows, dtype=object).reshape(len(rows), self.space.dim)
        owner = np.array(owner, dtype=np.int64)
        dims = np.array([x.dim for x in els])
        up = [0] * len(els)
        for j, y in enumerate(els):
            ann = y.int_annihilator()
            below = dims < y.dim
            if ann and len(rows):
                bad = hg._escapes(R, ann)
                hit = np.zeros(len(els), dtype=bool)
                hit[owner[bad]] = True
                below &= ~hit
            below[j] = True
            for i in np.flatnonzero(below):
                up[i] |= 1 << j
        return up

    def ortho(self, x):
        return hg.ortho(x)

    def meet(self, x, y):
        return hg.meet(x, y)

    def join(self, x, y):
        return hg.join(x, y)

    def atoms(self) -> list:
        """The one-dimensional members, i.e. the fragment's atoms of the host lattice."""
        return [x for x in self.elements if x.dim == 1]

    def stats(self) -> dict:
        d = {"elements": len(self.elements), "atoms": len(self.atoms()), "truncated": self.truncated}
        if self.truncated:
            d["cap"] = self.cap
        return d


def _target(L) -> str:
    return getattr(L, "name", repr(L))


def _fragment_stats(L) -> dict:
    return L.stats() if hasattr(L, "stats") else {"elements": len(L.elements)}


def _pairs_leq(L):
    els = L.elements
    if hasattr(L, "up_sets"):
        return [(a, els[j]) for a, mask in zip(els, L.up_sets()) for j in _bits(mask)]
    return [(a, b) for a in els for b in els if L.leq(a, b)]


def check_ortholattice(L) -> CheckReport:
    witnesses = []
    missing = 0
    lab = L.label
    for a in L.elements:
        if not L.leq(L.bottom, a) or not L.leq(a, L.top):
            witnesses.append({"law": "bounds", "a": lab(a)})
        ap = L.ortho(a)
        if L.ortho(ap) != a:
            witnesses.append({"law": "involution", "a": lab(a), "a''": lab(L.ortho(ap))})
        m, j = L.meet(a, ap), L.join(a, ap)
        if m is None or j is None:
            missing += 1
        if m is not None and m != L.bottom:
            witnesses.append({"law": "a ^ a' = 0", "a": lab(a), "a ^ a'": lab(m)})
        if j is not None and j != L.top:
            witnesses.append({"law": "a v a' = 1", "a": lab(a), "a v a'": lab(j)})
    comparable = _pairs_leq(L)
    for a, b in comparable:
        if not L.leq(L.ortho(b), L.ortho(a)):
            witnesses.append({"law": "order reversal", "a": lab(a), "b": lab(b)})
    stats = _fragment_stats(L)
    stats.update({"comparable pairs": len(comparable), "complements without meet/join": missing})
    return CheckReport.from_witnesses("ortholattice", _target(L), witnesses, stats=stats)


def check_orthomodular(L) -> CheckReport:
    """b = a v (b ^ a') for every a <= b."""
    witnesses = []
    pairs = 0
    for a, b in _pairs_leq(L):
        pairs += 1
        m = L.meet(b, L.ortho(a))
        j = None if m is None else L.join(a, m)
        if j != b:
            witnesses.append({"a": L.label(a), "b": L.label(b),
                              "b ^ a'": None if m is None else L.label(m),
                              "a v (b ^ a')": None if j is None else L.label(j)})
    stats = _fragment_stats(L)
    stats["comparable pairs"] = pairs
    return CheckReport.from_witnesses("orthomodular", _target(L), witnesses, stats=stats)


def atoms(L) -> list:
    return L.atoms()


def minimal_elements(L) -> list:
    """Minimal nonzero elements, computed from the order alone."""
    nz = [x for x in L.elements if x != L.bottom]
    return [x for x in nz if not any(y != x and L.leq(y, x) for y in nz)]


def check_atomicity(L) -> CheckReport:
    ats = L.atoms()
    witnesses = [L.label(a) for a in L.elements
                 if a != L.bottom and not any(L.leq(p, a) for p in ats)]
    return CheckReport.from_witnesses("atomicity", _target(L), witnesses,
                                      stats={"atoms": len(ats)})


def check_covering_abstract(L) -> CheckReport:
    """(a v p) ^ a' is an atom or 0 for every element a and atom p."""
    ats = L.atoms()
    atom_set = set(ats)
    witnesses = []
    pairs = 0
    fast = isinstance(L, GeneratedSublattice)
    for a in L.elements:
        ap = L.ortho(a)
        dims = hg.covering_dims(a, ats) if fast else [None] * len(ats)
        for p, d in zip(ats, dims):
            pairs += 1
            if d is not None and d <= 1:
                continue
            j = L.join(a, p)
            c = None if j is None else L.meet(j, ap)
            if c is None:
                witnesses.append({"a": L.label(a), "p": L.label(p), "missing": "meet or join"})
            elif c != L.bottom and c not in atom_set and not _host_atom(c):
                witnesses.append({"a": L.label(a), "p": L.label(p), "(a v p) ^ a'": L.label(c)})
    stats = _fragment_stats(L)
    stats["pairs"] = pairs
    return CheckReport.from_witnesses("covering", _target(L), witnesses, stats=stats)


def _host_atom(x) -> bool:
    return isinstance(x, hg.Subspace) and x.dim == 1


def is_central(L, c) -> bool:
    cp = L.ortho(c)
    for a in L.elements:
        m1, m2 = L.meet(a, c), L.meet(a, cp)
        if m1 is None or m2 is None or L.join(m1, m2) != a:
            return False
    return True


def center(L) -> list:
    return [c for c in L.elements if is_central(L, c)]


def check_irreducible(L) -> bool:
    return set(center(L)) == {L.bottom, L.top}


def check_center_trivial(L) -> CheckReport:
    cent = center(L)
    extra = [L.label(c) for c in cent if c not in (L.bottom, L.top)]
    stats = _fragment_stats(L)
    stats["center size"] = len(cent)
    return CheckReport.from_witnesses("center", _target(L), extra, stats=stats)


def orthogonal(L, a, b) -> bool:
    return L.leq(a, L.ortho(b))


def complementary_pairs(L) -> list:
    """Pairs with a ^ b = 0 that are not orthogonal."""
    out = []
    for a, b in combinations(L.elements, 2):
        if L.meet(a, b) == L.bottom and not orthogonal(L, a, b):
            out.append((a, b))
    return out


def superposition_atoms(L, p1, p2) -> list:
    ats = L.atoms()
    if p1 not in ats or p2 not in ats:
        raise NotAnAtom("superposition needs two atoms of the logic")
    if p1 == p2:
        raise HypothesesUnmet("superposition needs two distinct atoms")
    j = L.join(p1, p2)
    if j is None:
        return []
    return [q for q in ats if q != p1 and q != p2 and L.leq(q, j)]


def check_proper_quantum(L) -> CheckReport:
    """Every pair of distinct atoms has a third atom under their join."""
    ats = L.atoms()
    witnesses = [(L.label(p), L.label(q)) for p, q in combinations(ats, 2)
                 if not superposition_atoms(L, p, q)]
    return CheckReport.from_witnesses("superposition", _target(L), witnesses,
                                      stats={"atom pairs": len(ats) * (len(ats) - 1) // 2})


def chain_length(L) -> int:
    """Number of strict steps in a longest chain from bottom to top."""
    els = sorted(L.elements, key=lambda x: sum(1 for y in L.elements if L.leq(y, x)))
    height = {}
    for x in els:
        below = [height[y] for y in height if y != x and L.leq(y, x)]
        height[x] = 1 + max(below) if below else 0
    return height[L.top]


def check_separability(L) -> CheckReport:
    return CheckReport("separability", _target(L), "pass",
                       stats={"elements": len(L.elements)},
                       notes=["every finite family of orthogonal elements is countable"])


def check_orthocomplete(L) -> CheckReport:
    """Finite orthocompleteness: every orthogonal pair has a join in the logic."""
    witnesses = []
    for a, b in combinations(L.elements, 2):
        if orthogonal(L, a, b):
            j = L.join(a, b)
            if j is None or not L.contains(j):
                witnesses.append((L.label(a), L.label(b)))
    stats = _fragment_stats(L)
    if getattr(L, "truncated", False):
        stats["missing joins"] = len(witnesses)
        return CheckReport("orthocomplete", _target(L), "truncated", witnesses, stats)
    return CheckReport.from_witnesses("orthocomplete", _target(L), witnesses, stats=stats)


def ac_reports(L) -> list[CheckReport]:
    """The lattice checks used for the atomistic/covering/irreducible profile."""
    return [check_ortholattice(L), check_orthomodular(L), check_atomicity(L),
            check_covering_abstract(L), check_center_trivial(L), check_separability(L)]
