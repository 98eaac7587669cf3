"""Named check suites: deterministic lists of reports for a target."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import effects as fx
from . import formats
from . import hermitian as hg
from . import logic as lg
from . import states as st
from . import symmetry as sy
from .config import RunConfig
from .errors import UnknownSuite, ValidationError
from .report import CheckReport
from .scalars import is_rational_square

PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)


def _rational_space(target, default):
    space = formats.load_space(target or default)
    if space.field.d is not None:
        raise ValidationError("this suite needs a space over Q", space.name)
    return space


def basis_atoms(space):
    return [space.atom(space.basis_vector(i)) for i in range(space.dim)]


def irrational_vector(dim: int) -> list[float]:
    """(1, sqrt 2, sqrt 3, sqrt 5, ...): coordinates independent over Q."""
    return [1.0] + [math.sqrt(p) for p in PRIMES[: dim - 1]]


def plane_fragment(space, cap):
    """Ten atoms of the plane: five generators and their complements."""
    gens = [space.atom(v) for v in [(1, 0), (1, 1), (1, 2), (2, 1), (1, 3)]]
    return lg.GeneratedSublattice(space, gens, cap=cap, name="ten-atom plane fragment")


def vector_fragment(space, v, cap):
    return lg.GeneratedSublattice(space, [space.atom(v)] + basis_atoms(space), cap=cap,
                                  name=f"fragment of {v}")


def real_embedding_report(fragment) -> CheckReport:
    """M -> orthogonal projector of the real span: injective, and P(M') = I - P(M)."""
    space = fragment.space
    n = space.dim
    proj = {}
    for M in fragment.elements:
        if M.dim == 0:
            proj[M] = np.zeros((n, n))
            continue
        B = np.array([[float(x) for x in r] for r in M.basis])
        proj[M] = B.T @ np.linalg.solve(B @ B.T, B)
    witnesses = []
    keys = {}
    for M, P in proj.items():
        k = tuple(np.round(P, 9).ravel())
        if k in keys:
            witnesses.append({"law": "injective", "M": M, "N": keys[k]})
        keys[k] = M
        if not np.allclose(proj[hg.ortho(M)], np.eye(n) - P, atol=1e-9):
            witnesses.append({"law": "P(M') = I - P(M)", "M": M})
    return CheckReport.from_witnesses("real-embedding", fragment.name, witnesses,
                                      stats={"elements": len(fragment.elements)})


def _atom_state_reports(space, cfg: RunConfig, count: int = 20) -> list[CheckReport]:
    rng = cfg.rng("atom-states")
    additivity, triples, supports = [], [], []
    n_triples = n_elements = 0
    for k in range(count):
        v = space.random_vector(rng)
        F = vector_fragment(space, v, min(cfg.cap_elements, 64))
        alpha = st.atom_induced_state(v, F)
        n_elements += len(F.elements)
        bad = alpha.violations()
        if bad:
            additivity.append({"v": v, "violation": bad[0]})
        for p, q, r in st.orthogonal_atom_triples(F):
            n_triples += 1
            if alpha(p) + alpha(q) + alpha(r) != 1:
                triples.append({"v": v, "triple": (p, q, r)})
        if F.contains(space.atom(v)) and st.support(alpha) != space.atom(v):
            supports.append({"v": v, "support": st.support(alpha)})
    return [
        CheckReport.from_witnesses("atom-state-additivity", space.name, additivity,
                                   stats={"vectors": count, "fragment elements": n_elements}),
        CheckReport.from_witnesses("orthogonal-triple-sum", space.name, triples,
                                   stats={"triples": n_triples}),
        CheckReport.from_witnesses("atom-state-support", space.name, supports, stats={"vectors": count}),
    ]


def suite_rational_space(target, cfg: RunConfig) -> list[CheckReport]:
    space = _rational_space(target, "q3")
    rng = cfg.rng("subspaces")
    sample = [space.random_subspace(rng) for _ in range(cfg.samples)]
    reports = [hg.check_orthomodular_space(space, sample)]
    closed = [M for M in sample if not hg.is_f_closed(M)]
    reports.append(CheckReport.from_witnesses("f-closed", space.name, closed,
                                              stats={"subspaces": len(sample)}))
    rng = cfg.rng("fragment")
    F = lg.GeneratedSublattice(space, [space.random_atom(rng) for _ in range(5)],
                               cap=cfg.cap_elements, name="fragment of 5 random atoms")
    reports += [lg.check_ortholattice(F), lg.check_orthomodular(F),
                lg.check_covering_abstract(F), lg.check_center_trivial(F)]
    reports += _atom_state_reports(space, cfg)
    if space.dim == 2:
        E = plane_fragment(space, cfg.cap_elements)
    else:
        rng = cfg.rng("extension")
        E = lg.GeneratedSublattice(space, basis_atoms(space) + [space.random_atom(rng) for _ in range(3)],
                                   cap=min(cfg.cap_elements, 64), name="extension fragment")
    alpha = st.extension_state(irrational_vector(space.dim), E, cfg.tolerance)
    reports.append(st.extension_state_report(alpha, cfg.delta))
    reports.append(real_embedding_report(E))
    return reports


def suite_norm_conditions(target, cfg: RunConfig) -> list[CheckReport]:
    space = _rational_space(target, "q2")
    reports = []
    rng = cfg.rng("unit-vectors")
    atoms = [space.random_atom(rng) for _ in range(cfg.samples // 5 or 1)] + basis_atoms(space)
    mismatch, with_unit = [], 0
    for p in atoms:
        u = hg.unit_vector_in_atom(p)
        square = is_rational_square(hg.form_eval(p.generator, p.generator).rational()) is not None
        if (u is not None) != square or (u is not None and hg.form_eval(u, u) != 1):
            mismatch.append(p)
        with_unit += u is not None
    reports.append(CheckReport.from_witnesses("unit-vectors", space.name, mismatch,
                                              stats={"atoms": len(atoms), "with unit vector": with_unit}))
    if space.dim == 2:
        F = plane_fragment(space, cfg.cap_elements)
        anomaly = st.anomalous_dim2_state(F)
        reports.append(CheckReport.from_witnesses("dispersion-free-state", F.name, anomaly.violations(),
                                                  stats={"atoms": len(F.atoms())}))
        agree = []
        for p in F.atoms():
            beta = st.atom_induced_state(p.generator, F)
            if st.first_disagreement(anomaly, beta, F.atoms()) is None:
                agree.append(p)
        reports.append(CheckReport.from_witnesses("differs-from-vector-states", F.name, agree,
                                                  stats={"vector states": len(F.atoms())}))
    return reports


def _effects_target(target):
    return formats.load_effects(target or "half_triple")


def suite_theorem2(target, cfg: RunConfig) -> list[CheckReport]:
    cands = _effects_target(target)
    name = target or "half-triple"
    return [fx.check_orthogonality_postulate(cands, cfg.max_seq_len, strict=True, target=name),
            fx.check_orthogonality_postulate(cands, cfg.max_seq_len, strict=False, target=name),
            fx.check_theorem2_conclusions(cands, target=name)]


def load_logic_target(target, cfg: RunConfig, default="mo2"):
    """A table name or file, or ``fragment:<space>`` for the closure of random atoms."""
    target = target or default
    if target.startswith("fragment:"):
        space = formats.load_space(target.split(":", 1)[1])
        rng = cfg.rng("logic-fragment")
        return lg.GeneratedSublattice(space, [space.random_atom(rng) for _ in range(4)],
                                      cap=cfg.cap_elements)
    return formats.load_logic(target)


def suite_ac_lattice(target, cfg: RunConfig) -> list[CheckReport]:
    L = load_logic_target(target, cfg)
    reports = lg.ac_reports(L)
    reports.append(lg.check_orthocomplete(L))
    if len(L.atoms()) >= 2:
        reports.append(lg.check_proper_quantum(L))
    reports.append(CheckReport("structure", getattr(L, "name", "logic"), "pass",
                               stats={"chain length": lg.chain_length(L),
                                      "complementary pairs": len(lg.complementary_pairs(L))}))
    return reports


def suite_swap(target, cfg: RunConfig) -> list[CheckReport]:
    space = _rational_space(target, "q3")
    vecs = [space.basis_vector(i) for i in range(space.dim)]
    rng = cfg.rng("swap")
    samples = [space.random_vector(rng) for _ in range(5)]
    reports = []
    for i in range(space.dim):
        for j in range(i + 1, space.dim):
            x, y = vecs[i], vecs[j]
            for lam in (1, rng.randint(2, 9)):
                U = sy.swap_symmetry(x, y, lam)
                reports.append(sy.check_swap(U, x, y, lam, samples))
                reports.append(sy.check_lemma4_consistency(x, y, U, samples))
    reports.append(sy.check_abundance(basis_atoms(space), space.name))
    return reports


def filter_fragment(space, cfg: RunConfig, atoms_file=None):
    if atoms_file:
        gens = formats.load_atoms(atoms_file, space)
    elif space.dim == 3:
        gens = formats.load_atoms("q3_atoms", space)
    else:
        gens = basis_atoms(space) + [space.atom([1] * space.dim)]
    return lg.GeneratedSublattice(space, gens, cap=min(cfg.cap_elements, 64), name="filter fragment")


def filter_reports(F) -> list[CheckReport]:
    fam = fx.AtomStates(F)
    merged: dict = {}
    for a in F.elements:
        for r in fx.check_filter_axioms(fx.luders_filter(a, fam), a):
            slot = merged.setdefault(r.check, {"witnesses": [], "truncated": False, "count": 0})
            slot["count"] += 1
            slot["witnesses"] += r.witnesses
            slot["truncated"] |= r.verdict == "truncated"
    reports = []
    for check, slot in merged.items():
        if slot["truncated"]:
            reports.append(CheckReport(check, F.name, "truncated", slot["witnesses"],
                                       {"filters": slot["count"], "cap": F.cap}))
        else:
            reports.append(CheckReport.from_witnesses(check, F.name, slot["witnesses"],
                                                      stats={"filters": slot["count"]}))
    reports.append(fx.check_s1(fam))
    reports.append(fx.check_projection_postulate(fam))
    frame = _orthogonal_frame(F, F.atoms())
    if frame:
        obs = fx.observable_from_partition(F, frame)
        reports.append(obs.check_additivity(fam.states))
        reports.append(fx.check_instrument(obs, fam))
    return reports


def _orthogonal_frame(F, atoms):
    for p in atoms:
        frame = [p]
        for q in atoms:
            if all(hg.orthogonal(q, r) for r in frame):
                frame.append(q)
        if len(frame) == F.space.dim:
            return frame
    return None


def suite_filters(target, cfg: RunConfig) -> list[CheckReport]:
    space = _rational_space(target, "q3")
    return filter_reports(filter_fragment(space, cfg))


def suite_symmetry(target, cfg: RunConfig) -> list[CheckReport]:
    space = _rational_space(target, "q3")
    rng = cfg.rng("symmetry")
    vs = [space.random_vector(rng) for _ in range(5)]
    pairs = [(u, v) for u in vs for v in vs]
    reports = []
    rhos = []
    for _ in range(20):
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1))
        rep = sy.verify_form_identity(sy.scalar_symmetry(space, lam), pairs)
        if not rep.passed or rep.stats["rho"] != lam * lam:
            rhos.append({"lambda": lam, "rho": rep.stats["rho"]})
    reports.append(CheckReport.from_witnesses("rho-equals-lambda-squared", space.name, rhos,
                                              stats={"lambdas": 20}))
    atoms = list(dict.fromkeys([space.random_atom(rng, bound=2) for _ in range(10)] + basis_atoms(space)))
    reports.append(sy.check_abundance(atoms, f"{len(atoms)} atoms"))
    reports.append(sy.check_regularity(space, vs))
    return reports


def suite_polytope(target, cfg: RunConfig) -> list[CheckReport]:
    L = load_logic_target(target, cfg)
    P = st.build_polytope(L, cfg.cap_logic, cfg.cap_vertices)
    verts = st.enumerate_pure_states(P)
    return [st.polytope_report(P), st.check_jauch_piron(L, verts), st.check_sufficiency(L, verts),
            st.check_identification(L, verts), st.check_minimal_disturbance(L, verts),
            st.check_order_determining(L, verts), st.check_strong_ordering(L, verts)]


SUITES = {
    "section5.4": suite_rational_space,
    "rational-space": suite_rational_space,
    "section5.3": suite_norm_conditions,
    "norm-conditions": suite_norm_conditions,
    "theorem2": suite_theorem2,
    "orthogonality-postulate": suite_theorem2,
    "corollary1": suite_ac_lattice,
    "ac-lattice": suite_ac_lattice,
    "lemma-swap": suite_swap,
    "swap": suite_swap,
    "filters": suite_filters,
    "symmetry": suite_symmetry,
    "polytope": suite_polytope,
}


def run_suite(name: str, target=None, cfg: RunConfig | None = None) -> list[CheckReport]:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    return SUITES[name](target, cfg or RunConfig())
