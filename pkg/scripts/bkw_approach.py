"""Track how close the roots of R[C_n(bead)] sit to the equal-modulus curve.

For each family and each s, scans the listed n and prints the largest
simplified equal-modulus residual over all roots (roots within the exclusion
radius of sigma = 0 are left out).  Writes a JSON table next to the printout.

    python scripts/bkw_approach.py --families theta,inf+ --s 2,3,4 --n 25,50,100
"""

import argparse
import json
import time
from pathlib import Path

from yamadapoly.config import Config
from yamadapoly.zeros import is_degenerate, scan_one


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--families", default="theta,inf+,inf-")
    ap.add_argument("--s", default="2,3,4")
    ap.add_argument("--n", default="25,50,100")
    ap.add_argument("--config")
    ap.add_argument("--out", default="out/bkw_approach.json")
    args = ap.parse_args()
    cfg = Config.load(args.config)
    table = []
    for fam in args.families.split(","):
        for s in map(int, args.s.split(",")):
            if is_degenerate(fam, s):
                print(f"{fam:6s} s={s}: degenerate, skipped")
                continue
            row = {"family": fam, "s": s, "n": [], "max_bkw_residual": [], "seconds": []}
            for n in map(int, args.n.split(",")):
                t = time.perf_counter()
                res = scan_one(fam, s, n, tol=cfg.root_tol, max_degree=cfg.max_root_degree,
                               exclusion=cfg.region_eps)
                row["n"].append(n)
                row["max_bkw_residual"].append(res["max_bkw_residual"])
                row["seconds"].append(round(time.perf_counter() - t, 2))
            vals = "  ".join(f"n={n}: {v:.4f}" for n, v in zip(row["n"], row["max_bkw_residual"]))
            print(f"{fam:6s} s={s}  {vals}")
            table.append(row)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(table, indent=2) + "\n")


if __name__ == "__main__":
    main()
