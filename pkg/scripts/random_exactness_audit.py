#!/usr/bin/env python3
"""Randomized audit of the long exact sequence and the product construction.

Draws seeded random models and morphisms, assembles the long exact derivation
homology sequence, and checks exactness at every trusted node; then builds
random product models and checks the homology additivity they must satisfy.
"""
from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from dglcalc import assemble_les
from dglcalc.complexes import DglComplex
from dglcalc.constructions import product_model, sphere_wedge_model

from tests.helpers import random_model, random_validated_morphism


@dataclass
class Config:
    morphisms: int = 50
    products: int = 20
    max_generators: int = 4
    truncation: int = 8
    seed_offset: int = 0


def audit_les(cfg: Config):
    trusted = 0
    failures = []
    for seed in range(cfg.seed_offset, cfg.seed_offset + cfg.morphisms):
        psi = random_validated_morphism(seed, max_gens=cfg.max_generators, truncation=cfg.truncation)
        report = assemble_les(psi, range(1, cfg.truncation - 2))
        for node in report.trusted_nodes():
            trusted += 1
            if not node.exact:
                failures.append((seed, node))
    print(f"long exact sequence: {trusted} trusted nodes, {len(failures)} failures")
    return not failures


def audit_products(cfg: Config):
    failures = []
    for seed in range(cfg.seed_offset, cfg.seed_offset + cfg.products):
        base = random_model(seed, max_gens=2, truncation=cfg.truncation + 1, max_degree=3)
        spheres = [2] if seed % 3 == 0 else ([3] if seed % 3 == 1 else [2, 2])
        pm = product_model(base, spheres)
        if not pm.model.validate().d_squared_ok:
            failures.append((seed, "d^2"))
            continue
        wedge = sphere_wedge_model(spheres, truncation=base.truncation)
        cx = DglComplex(pm.model)
        for n in range(1, pm.model.truncation):
            if not cx.complete(n + 1):
                break
            lhs = pm.model.homology([n]).dims()[n]
            rhs = wedge.homology([n]).dims()[n] + base.homology([n]).dims()[n]
            if lhs != rhs:
                failures.append((seed, n, lhs, rhs))
    print(f"product models: {cfg.products} checked, {len(failures)} failures")
    return not failures


def main():
    cfg = Config()
    start = time.perf_counter()
    ok = audit_les(cfg) and audit_products(cfg)
    print(f"total {time.perf_counter() - start:.2f}s")
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
