"""Roots of a family of Yamada polynomials, written to CSV with a JSON summary.

    python scripts/density_scan.py --family inf+ --s 3 --n 10,20,40 --out out/infplus_s3
"""

import argparse

from yamadapoly.config import Config
from yamadapoly.zeros import FAMILIES, density_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=FAMILIES, default="theta")
    ap.add_argument("--s", type=int, default=3)
    ap.add_argument("--n", default="10,25,50")
    ap.add_argument("--out")
    ap.add_argument("--config")
    ap.add_argument("--threads", type=int)
    args = ap.parse_args()
    cfg = Config.load(args.config).with_overrides(threads=args.threads)
    out = args.out or f"{cfg.out_dir}/{args.family}_s{args.s}"
    summary = density_scan(args.family, args.s, [int(x) for x in args.n.split(",")], out=out,
                           tol=cfg.root_tol, threads=cfg.threads, max_degree=cfg.max_root_degree,
                           exclusion=cfg.region_eps)
    if summary["degenerate"]:
        print("degenerate family, nothing scanned")
        return
    for row in summary["per_n"]:
        print(f"n={row['n']:4d} degree={row['degree']:5d} max_residual={row['max_residual']:.2e} "
              f"max_bkw={row['max_bkw_residual']:.4f} excluded={row['excluded_near_singular']}")
    print(f"wrote {out}/roots.csv and {out}/summary.json")


if __name__ == "__main__":
    main()
