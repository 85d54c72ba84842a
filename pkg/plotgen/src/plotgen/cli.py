"""plotgen <csv> [--ese <json>] -o <png>"""

from __future__ import annotations

import argparse
import sys

from . import PlotDataError, PlotSpec, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotgen",
        description="Render site-occupation probability curves from plot-data CSV.")
    parser.add_argument("csv", help="input CSV with header t,p_first,p_last")
    parser.add_argument("--ese", default=None,
                        help="event-report JSON; its root times become markers")
    parser.add_argument("--title", default="")
    parser.add_argument("--curves", choices=["p_first", "p_last", "both"], default="both")
    parser.add_argument("-o", "--output", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        render(PlotSpec(args.csv, args.output, title=args.title,
                        curves=args.curves, ese_json_path=args.ese))
    except PlotDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
