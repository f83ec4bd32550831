"""Command line: plot --kind KIND --in CSV --out IMG [--window a,b]"""

import argparse
import sys

from .errors import PlotKitError
from .figures import KINDS, FigureSpec, render


def _parse_window(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("window must be 'a,b'")
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad window {text!r}") from None
    if not a <= b:
        raise argparse.ArgumentTypeError("window must satisfy a <= b")
    return (a, b)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render one panel from a spinsync CSV file")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="csv_path", required=True,
                        metavar="CSV", help="input trajectory.csv/sweep.csv")
    parser.add_argument("--out", required=True, metavar="IMG",
                        help="output image path (extension picks the format)")
    parser.add_argument("--window", type=_parse_window, default=None,
                        metavar="a,b", help="restrict to t (or n_m) in [a,b]")
    args = parser.parse_args(argv)

    spec = FigureSpec(csv_path=args.csv_path, kind=args.kind,
                      out_path=args.out, window=args.window)
    try:
        out = render(spec)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PlotKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
