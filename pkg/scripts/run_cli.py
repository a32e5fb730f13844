import sys
from typing import Optional, Sequence

from src.cli.app import JacobiCellsCLI
from src.settings import SettingsError


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        return JacobiCellsCLI().run(list(argv))
    except SettingsError as exc:
        print(f"jacobi-cells: error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("\nAborted.", file=sys.stderr)
        return 130


if __name__ == "__main__":
    raise SystemExit(main())
