from __future__ import annotations

import random
from dataclasses import dataclass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    cap_elements: int = 512        # closure cap for generated fragments
    cap_vertices: int = 10_000
    cap_logic: int = 64            # largest logic handed to the polytope builder
    max_seq_len: int = 4
    tolerance: float = 1e-9
    delta: float = 1e-6            # margin for "strictly inside (0, 1)"
    samples: int = 100

    def rng(self, salt: str = "") -> random.Random:
        # one stream per purpose so adding a check does not shift the others
        return random.Random(f"{self.seed}:{salt}")
