"""plotkit <kind> --in <csv...> --out <png/svg>"""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, PlotSpec, RenderError, render


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="plotkit",
                                description="Render operator-growth CSV artifacts")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--in", dest="inputs", nargs="+", required=True, help="input CSV files")
    p.add_argument("--out", required=True, help="output image (.png or .svg)")
    p.add_argument("--title", default=None)
    p.add_argument("--logy", action="store_true", help="logarithmic ordinate")
    p.add_argument("--label", dest="labels", action="append", default=[],
                   help="legend label override, one per input (repeatable)")
    args = p.parse_args(argv)
    try:
        spec = PlotSpec(kind=args.kind, inputs=args.inputs, output=args.out,
                        title=args.title, logy=args.logy, labels=args.labels)
        out = render(spec)
    except RenderError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
