"""Random-pair separation check for the 4d-4 point design.

    python scripts/run_injectivity.py --dmax 10 --pairs 1000
"""

import argparse
from dataclasses import dataclass

from polyretrieval.experiments import injectivity_trial


@dataclass
class InjectivityConfig:
    dmin: int = 2
    dmax: int = 8
    pairs: int = 1000
    alpha: float = 1.0
    seed: int = 0


def main():
    cfg = InjectivityConfig()
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, value in vars(cfg).items():
        p.add_argument(f"--{name}", type=type(value), default=value)
    cfg = InjectivityConfig(**vars(p.parse_args()))
    print(f"{'d':>3} {'points':>6} {'collisions':>10} {'min separation':>15}")
    for d in range(cfg.dmin, cfg.dmax + 1):
        r = injectivity_trial(d, cfg.pairs, alpha=cfg.alpha, seed=cfg.seed + d)
        print(f"{d:>3} {4 * d - 4:>6} {r['collisions']:>10} {r['min_separation']:>15.4g}")


if __name__ == "__main__":
    main()
