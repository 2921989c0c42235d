"""H^1 and integrability of the identity inclusion for random matrix Lie algebras.

Draws subalgebras of gl(n) spanned by random strictly lower triangular
matrices closed under brackets (so they are nilpotent), computes the
cohomology of the inclusion, and tries to integrate all H^1
representatives at once.  Reports dims, the order reached, and whether
an obstruction appeared.

    python3 scripts/random_algebras.py --trials 20 --n 4 --seed 1
"""
import argparse
import random
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction

from liedeform.cohomology import cohomology
from liedeform.deformation import GuardExceeded, ObstructionReport, integrate, mc_residual
from liedeform.exact import SubspaceBasis
from liedeform.lie import GlElement, LinearEmbedding, algebra_from_matrices, commutator, gl


@dataclass
class Config:
    trials: int = 20
    n: int = 4
    seed: int = 1
    max_order: int = 3
    max_gens: int = 3


def random_lower(rng, n):
    rows = [[Fraction(rng.randint(-2, 2)) if i > j else Fraction(0) for j in range(n)]
            for i in range(n)]
    return GlElement.from_rows(rows)


def bracket_closure(gens):
    """Basis of the Lie subalgebra generated by ``gens``."""
    n = gens[0].n
    basis = SubspaceBasis.span([], n * n)
    elems = []
    queue = list(gens)
    while queue:
        x = queue.pop()
        if basis.contains(x.coords()):
            continue
        basis = SubspaceBasis.span(list(basis.vectors) + [x.coords()], n * n)
        queue.extend(commutator(x, y) for y in elems)
        elems.append(x)
    return elems


def one_trial(rng, cfg):
    elems = bracket_closure([random_lower(rng, cfg.n) for _ in range(rng.randint(1, cfg.max_gens))])
    if not elems:
        return None
    alg, inc = algebra_from_matrices(elems)
    rho = LinearEmbedding(alg, gl(cfg.n), inc.images)
    rep = cohomology(1, rho)
    row = {"dim": alg.dim, "H1": rep.dims[2]}
    try:
        res = integrate(rho, list(rep.representatives), max_order=cfg.max_order)
    except GuardExceeded as exc:
        return {**row, "outcome": f"no termination through order {cfg.max_order}"}
    if isinstance(res, ObstructionReport):
        return {**row, "outcome": f"obstructed at order {res.order}"}
    assert mc_residual(res).is_zero()
    return {**row, "outcome": f"polynomial, degree {res.max_degree}"}


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    for name, default in asdict(Config()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = Config(**vars(p.parse_args()))
    rng = random.Random(cfg.seed)
    tally = Counter()
    for t in range(cfg.trials):
        row = one_trial(rng, cfg)
        if row is None:
            continue
        print(f"trial {t:3d}: dim h = {row['dim']}, dim H1 = {row['H1']:2d}, {row['outcome']}")
        tally[row["outcome"].split(",")[0].split(" at")[0].split(" through")[0]] += 1
    print(dict(tally))


if __name__ == "__main__":
    main()
