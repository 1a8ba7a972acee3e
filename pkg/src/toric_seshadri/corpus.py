"""The bundled fan corpus and seeded random complete fans."""

from __future__ import annotations

import functools
import random
from pathlib import Path

from .exact_math import primitive
from .fan import (
    Fan,
    dump_fan,
    gen_hirzebruch,
    gen_product,
    gen_projective_space,
    star_subdivision,
)

BUNDLED_DIR = Path(__file__).parent / "data" / "corpus"


def weighted_p1123() -> Fan:
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -2, -3)]
    cones = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    return Fan(3, rays, cones, name="p1123")


def _renamed(f: Fan, name: str) -> Fan:
    return Fan(f.dim, f.rays, f.max_cones, name=name)


def standard_corpus() -> list[Fan]:
    pn = {n: gen_projective_space(n) for n in range(1, 5)}
    fans = list(pn.values())
    fans.append(weighted_p1123())
    fans += [gen_hirzebruch(r) for r in range(6)]
    fans.append(_renamed(gen_product(pn[1], pn[1]), "p1xp1"))
    fans.append(_renamed(gen_product(pn[1], pn[2]), "p1xp2"))
    fans.append(_renamed(gen_product(gen_product(pn[1], pn[1]), pn[1]), "p1xp1xp1"))
    fans.append(_renamed(gen_product(pn[2], pn[2]), "p2xp2"))
    fans.append(_renamed(gen_product(pn[1], pn[3]), "p1xp3"))
    bl1 = star_subdivision(pn[2], (1, 1), name="bl1_p2")
    fans.append(bl1)
    fans.append(star_subdivision(bl1, (-1, 0), name="bl2_p2"))
    fans.append(star_subdivision(pn[3], (1, 1, 1), name="bl1_p3"))
    fans.append(star_subdivision(pn[4], (1, 1, 1, 1), name="bl1_p4"))
    return fans


def write_corpus(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for f in standard_corpus():
        path = directory / (f.name + ".json")
        dump_fan(f, path)
        out.append(path)
    return out


def _angle_cmp(u, v) -> int:
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cross = u[0] * v[1] - u[1] * v[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def random_complete_fan_2d(rng: random.Random, nrays: int = 5, height: int = 6) -> Fan:
    """Random primitive rays sorted by angle, consecutive pairs as cones;
    resampled until every angular gap is below a half turn."""
    while True:
        rays = set()
        while len(rays) < nrays:
            v = (rng.randint(-height, height), rng.randint(-height, height))
            if v != (0, 0):
                rays.add(primitive(v))
        order = sorted(rays, key=functools.cmp_to_key(_angle_cmp))
        ok = True
        for k in range(len(order)):
            u, v = order[k], order[(k + 1) % len(order)]
            if u[0] * v[1] - u[1] * v[0] <= 0:
                ok = False
                break
        if ok:
            cones = [tuple(sorted((k, (k + 1) % len(order)))) for k in range(len(order))]
            return Fan(2, order, cones, name="random2d")


def random_complete_fan(rng: random.Random, dim: int, steps: int = 3,
                        coeff: int = 3) -> Fan:
    """Random star subdivisions of P^n or (P^1)^n at primitive lattice points
    of random faces; complete and simplicial, usually singular."""
    if dim == 2 and rng.random() < 0.5:
        return random_complete_fan_2d(rng, rng.randint(3, 7))
    if rng.random() < 0.5:
        f = gen_projective_space(dim)
    else:
        f = gen_projective_space(1)
        for _ in range(dim - 1):
            f = gen_product(f, gen_projective_space(1))
    for _ in range(steps):
        cone = rng.choice(f.max_cones)
        lam = [rng.randint(0, coeff) for _ in cone]
        if sum(1 for x in lam if x) < 2:
            continue
        v = [sum(l * f.rays[i][k] for l, i in zip(lam, cone)) for k in range(dim)]
        f = star_subdivision(f, primitive(v))
    return Fan(f.dim, f.rays, f.max_cones, name="random%dd" % dim)
