"""Walk through the rational plane and space: fragments, vector states, and states with no rational support."""
from __future__ import annotations

import argparse
import math

from qlogic import logic as lg
from qlogic import states as st
from qlogic.config import RunConfig
from qlogic.hermitian import HermitianSpace
from qlogic.scalars import QQ
from qlogic.suites import plane_fragment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--atoms", type=int, default=5, help="random generators for the Q^3 fragment")
    args = ap.parse_args()
    cfg = RunConfig(seed=args.seed)

    q3 = HermitianSpace(QQ, 3)
    rng = cfg.rng("fragment")
    F = lg.GeneratedSublattice(q3, [q3.random_atom(rng) for _ in range(args.atoms)], cap=cfg.cap_elements)
    print(f"Q^3 fragment from {args.atoms} random atoms: {F.stats()}")
    for rep in lg.ac_reports(F):
        print("  " + rep.to_text(max_witnesses=1).splitlines()[0])

    q2 = HermitianSpace(QQ, 2)
    P = plane_fragment(q2, cfg.cap_elements)
    print(f"\nplane fragment: {len(P.atoms())} atoms")
    beta = st.atom_induced_state(q2.vector((1, 2)), P)
    ext = st.extension_state([1.0, math.sqrt(2)], P)
    anomaly = st.anomalous_dim2_state(P)
    print(f"  {'atom':>10}  {'v=(1,2)':>8}  {'(1,sqrt2)':>9}  {'two-valued':>10}")
    for p in P.atoms():
        print(f"  {p.describe():>10}  {str(beta(p)):>8}  {float(ext(p)):9.4f}  {str(anomaly(p)):>10}")
    print(f"  extension state additivity deviation: {st.max_additivity_deviation(ext):.2e}")
    print(f"  extension state support: {st.extension_state_report(ext).verdict}"
          " (pass = no rational atom is certain)")


if __name__ == "__main__":
    main()
