"""Command line front end.  Exit status: 0 all checks pass, 1 some check fails, 2 bad input."""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import formats
from . import hermitian as hg
from . import logic as lg
from . import states as st
from . import suites
from . import symmetry as sy
from .config import RunConfig
from .errors import QLogicError
from .report import CheckReport, all_passed, describe, render

GLOBAL_DEFAULTS = {"format": "text", "seed": 0, "cap_elements": 512, "cap_vertices": 10_000,
                   "max_seq_len": 4}


def _global_flags(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS lets the flags appear before or after the verb without clobbering each other
    S = argparse.SUPPRESS
    parser.add_argument("--format", choices=["text", "machine"], default=S)
    parser.add_argument("--seed", type=int, default=S)
    parser.add_argument("--cap-elements", type=int, default=S)
    parser.add_argument("--cap-vertices", type=int, default=S)
    parser.add_argument("--max-seq-len", type=int, default=S)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlogic", description="Checks for finite quantum logics "
                                     "and Hermitian spaces over exact fields.")
    _global_flags(parser)
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, help_):
        p = sub.add_parser(name, help=help_)
        _global_flags(p)
        return p

    p = verb("check-logic", "ortholattice, orthomodularity, atomicity, covering and center of a table")
    p.add_argument("logic", help="logic file or built-in name (bool2, bool3, mo2, o6)")

    p = verb("check-space", "orthomodular identity on random subspaces and form regularity")
    p.add_argument("space", help="space file or built-in name (q2, q3, qi3, q2_root2)")
    p.add_argument("--samples", type=int, default=100)

    p = verb("sublattice", "close a set of atoms under meet, join and ortho, then check it")
    p.add_argument("--space", required=True)
    p.add_argument("--atoms", required=True)

    p = verb("states", "state polytope of a finite logic")
    p.add_argument("logic")
    p.add_argument("--vertices", action="store_true", help="list the pure states")
    p.add_argument("--state", help="also validate this state file against the logic")

    p = verb("atom-state", "the state induced by a vector on a fragment")
    p.add_argument("--space", default="q3")
    p.add_argument("--atoms", help="generators of the fragment (default: the vector's atom and the basis)")
    p.add_argument("--vector", required=True, help="comma separated coordinates, e.g. 1,1,0")

    p = verb("extension-state", "the state induced on rational atoms by a real vector")
    p.add_argument("--space", default="q2")
    p.add_argument("--atoms", help="generators of the fragment (default: ten atoms of the plane)")
    p.add_argument("--vector", required=True, help="real coordinates, e.g. 1,sqrt(2)")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--delta", type=float, default=1e-6)

    p = verb("filters", "filter axioms for the projection filters of a fragment")
    p.add_argument("--space", default="q3")
    p.add_argument("--atoms")

    p = verb("symmetry", "swap symmetries, abundance and regularity")
    p.add_argument("action", choices=["swap", "abundance", "regularity"])
    p.add_argument("--space", default="q3")
    p.add_argument("--x", help="first vector of the swapped pair (swap)")
    p.add_argument("--y", help="second vector of the swapped pair (swap)")
    p.add_argument("--lam", default="1", help="scale factor (swap)")
    p.add_argument("--atoms", help="atoms to test (abundance)")
    p.add_argument("--symmetry", help="symmetry file whose form identity is checked (regularity)")

    p = verb("suite", "run a named suite")
    p.add_argument("name", help=", ".join(sorted(suites.SUITES)))
    p.add_argument("--target", help="file or built-in name the suite runs on")
    return parser


def _config(args) -> RunConfig:
    return replace(RunConfig(), seed=args.seed, cap_elements=args.cap_elements,
                   cap_vertices=args.cap_vertices, max_seq_len=args.max_seq_len)


def cmd_check_logic(args, cfg):
    L = formats.load_logic(args.logic)
    return lg.ac_reports(L)


def cmd_check_space(args, cfg):
    space = formats.load_space(args.space)
    rng = cfg.rng("subspaces")
    sample = [space.random_subspace(rng) for _ in range(args.samples)]
    vecs = [space.random_vector(rng) for _ in range(args.samples)] + [space.basis_vector(i) for i in range(space.dim)]
    return [hg.check_orthomodular_space(space, sample), sy.check_regularity(space, vecs)]


def cmd_sublattice(args, cfg):
    space = formats.load_space(args.space)
    F = lg.GeneratedSublattice(space, formats.load_atoms(args.atoms, space), cap=cfg.cap_elements,
                               name=f"fragment of {args.atoms}")
    return [lg.check_ortholattice(F), lg.check_orthomodular(F), lg.check_covering_abstract(F),
            lg.check_center_trivial(F)]


def cmd_states(args, cfg):
    L = formats.load_logic(args.logic)
    P = st.build_polytope(L, cfg.cap_logic, cfg.cap_vertices)
    verts = st.enumerate_pure_states(P)
    rep = st.polytope_report(P)
    if args.vertices:
        rep.notes.extend(f"{v.name}: " + ", ".join(f"{L.label(x)}={describe(v(x))}" for x in L.elements)
                         for v in verts)
    reports = [rep, st.check_jauch_piron(L, verts)]
    if args.state:
        alpha = formats.load_state(args.state, L)
        reports.append(CheckReport.from_witnesses("state", alpha.name, alpha.violations(),
                                                  stats={"in polytope": P.contains(alpha)}))
    return reports


def _fragment_for(space, atoms_file, extra, cap):
    if atoms_file:
        gens = formats.load_atoms(atoms_file, space)
    else:
        gens = suites.basis_atoms(space)
    return lg.GeneratedSublattice(space, list(extra) + list(gens), cap=cap)


def cmd_atom_state(args, cfg):
    space = formats.load_space(args.space)
    v = formats.parse_vector_text(args.vector, space)
    F = _fragment_for(space, args.atoms, [space.atom(v)], min(cfg.cap_elements, cfg.cap_logic))
    alpha = st.atom_induced_state(v, F)
    sup = st.support(alpha)
    rep = CheckReport.from_witnesses("atom-state", describe(v), alpha.violations(),
                                     stats={**F.stats(), "support": sup})
    rep.notes.extend(f"{F.label(x)}: {describe(alpha(x))}" for x in F.atoms())
    return [rep]


def cmd_extension_state(args, cfg):
    space = formats.load_space(args.space)
    v = st.parse_float_vector(args.vector)
    if args.atoms:
        F = _fragment_for(space, args.atoms, [], cfg.cap_elements)
    elif space.dim == 2:
        F = suites.plane_fragment(space, cfg.cap_elements)
    else:
        F = _fragment_for(space, None, [space.atom([1] * space.dim)], cfg.cap_elements)
    alpha = st.extension_state(v, F, args.tolerance)
    return [st.extension_state_report(alpha, args.delta)]


def cmd_filters(args, cfg):
    space = formats.load_space(args.space)
    return suites.filter_reports(suites.filter_fragment(space, cfg, args.atoms))


def cmd_symmetry(args, cfg):
    space = formats.load_space(args.space)
    rng = cfg.rng("symmetry")
    samples = [space.random_vector(rng) for _ in range(10)]
    if args.action == "swap":
        if not (args.x and args.y):
            raise QLogicError("symmetry swap needs --x and --y")
        x, y = formats.parse_vector_text(args.x, space), formats.parse_vector_text(args.y, space)
        lam = space.field.parse(args.lam)
        U = sy.swap_symmetry(x, y, lam)
        return [sy.check_swap(U, x, y, lam, samples), sy.check_lemma4_consistency(x, y, U, samples)]
    if args.action == "abundance":
        if args.atoms:
            ats = formats.load_atoms(args.atoms, space)
        else:
            ats = list(dict.fromkeys(space.random_atom(rng, bound=2) for _ in range(10)))
        return [sy.check_abundance(ats, args.atoms or f"{len(ats)} random atoms")]
    vecs = samples + [space.basis_vector(i) for i in range(space.dim)]
    reports = [sy.check_regularity(space, vecs)]
    if args.symmetry:
        S = formats.load_symmetry(args.symmetry, space)
        reports.append(sy.verify_form_identity(S, [(u, v) for u in vecs for v in vecs]))
    return reports


def cmd_suite(args, cfg):
    return suites.run_suite(args.name, args.target, cfg)


COMMANDS = {
    "check-logic": cmd_check_logic,
    "check-space": cmd_check_space,
    "sublattice": cmd_sublattice,
    "states": cmd_states,
    "atom-state": cmd_atom_state,
    "extension-state": cmd_extension_state,
    "filters": cmd_filters,
    "symmetry": cmd_symmetry,
    "suite": cmd_suite,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    cfg = _config(args)
    try:
        reports = COMMANDS[args.verb](args, cfg)
    except (QLogicError, FileNotFoundError) as e:
        print(f"qlogic: error: {e}", file=sys.stderr)
        return 2
    out = render(reports, args.format)
    sys.stdout.write(out if out.endswith("\n") else out + "\n")
    return 0 if all_passed(reports) else 1


if __name__ == "__main__":
    sys.exit(main())
