"""Shade a density region and overlay the roots of one family member.

    python scripts/region_plot.py --which omega --family inf+ --s 3 --n 40 --out out/omega.svg
"""

import argparse
from pathlib import Path

from yamadapoly.zeros import FAMILIES, family_roots, grid_region, region_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--which", default="omega", choices=["omega", "sigma", "plus", "minus"])
    ap.add_argument("--window", default="-3,3,-3,3", help="re_min,re_max,im_min,im_max")
    ap.add_argument("--res", type=int, default=300)
    ap.add_argument("--family", choices=FAMILIES)
    ap.add_argument("--s", type=int, default=3)
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--px", type=float, default=120.0)
    ap.add_argument("--out", default="out/region.svg")
    args = ap.parse_args()
    a, b, c, d = (float(x) for x in args.window.split(","))
    grid = grid_region(args.which, (a, b), (c, d), args.res)
    roots = family_roots(args.family, args.s, args.n).roots if args.family else []
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(region_svg(grid, (a, b), (c, d), roots=roots, px_per_unit=args.px))
    inside = sum(map(sum, grid))
    print(f"{inside}/{args.res ** 2} cells inside {args.which}; {len(roots)} roots; wrote {out}")


if __name__ == "__main__":
    main()
