import argparse
import json
from typing import Any, Dict, List, Sequence, TextIO

import pandas as pd

from src.catalog import Catalog
from src.cellgeom import CellGeometryError, certify
from src.cli.base import (
    EXIT_FAILURE,
    EXIT_OK,
    CommandApp,
    CommandNode,
    GroupNode,
    nonnegative_int,
    positive_int,
)
from src.diagram import DiagramError, YoungDiagram
from src.gmap import NotInImageError, d_prime, reconstruct_nnp1
from src.hilbert import HilbertError
from src.qtpoly import (
    LaurentBivariate,
    PolynomialError,
    area_generating,
    hilbert_cell_poly,
    poincare,
    qt_catalan,
)
from src.semigroup import SemigroupError
from src.semimodule import (
    SemiModule,
    SemiModuleError,
    dimension,
    gaps_count,
    p_basis,
    q_cogenerators,
    to_diagram,
)
from src.settings import SettingsError, read_settings
from src.verify import CATALAN_BOUND, SCHEMA, SCOPES, VerifyError, run

FORMATS = ("table", "json", "csv")
TEXT_FORMATS = ("text", "json")


def format_tuple(values: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def format_module(module: SemiModule) -> str:
    missing = module.missing()
    if not missing:
        return "ℤ≥0"
    return "ℤ≥0∖{" + ",".join(str(n) for n in missing) + "}"


def write_json(out: TextIO, payload: Dict[str, Any]) -> None:
    out.write(json.dumps({"schema": SCHEMA, **payload}, indent=2, ensure_ascii=False))
    out.write("\n")


def enumeration_records(p: int, q: int) -> List[Dict[str, Any]]:
    # stable sort keeps the canonical order among equal areas
    modules = sorted(Catalog.semimodules(p, q), key=lambda m: len(m.cogaps))
    return [
        {
            "module": module,
            "diagram": to_diagram(module),
            "p_generators": p_basis(module),
            "q_cogenerators": q_cogenerators(module),
            "dual": d_prime(module),
            "dim": dimension(module),
            "gaps": gaps_count(module),
        }
        for module in modules
    ]


class EnumerateCommand(CommandNode):
    name = "enumerate"
    help = "list every semi-module of (p,q) with its diagrams and generators"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("p", type=positive_int)
        parser.add_argument("q", type=positive_int)
        parser.add_argument("--format", choices=FORMATS, default="table")

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        records = enumeration_records(args.p, args.q)
        if args.format == "json":
            write_json(
                out,
                {
                    "p": args.p,
                    "q": args.q,
                    "records": [
                        {
                            "cogaps": list(r["module"].cogaps),
                            "diagram": list(r["diagram"].columns),
                            "p_generators": list(r["p_generators"]),
                            "q_cogenerators": list(r["q_cogenerators"]),
                            "dual": list(r["dual"].columns),
                            "dim": r["dim"],
                            "gaps": r["gaps"],
                        }
                        for r in records
                    ],
                },
            )
            return EXIT_OK

        frame = pd.DataFrame(
            [
                {
                    "Δ": format_module(r["module"]),
                    "D(Δ)": str(r["diagram"]),
                    "p-generators": format_tuple(r["p_generators"]),
                    "q-cogenerators": format_tuple(r["q_cogenerators"]),
                    "D′(Δ)": str(r["dual"]),
                    "dim": r["dim"],
                    "gaps": r["gaps"],
                }
                for r in records
            ]
        )
        if args.format == "csv":
            out.write(frame.to_csv(index=False))
        else:
            out.write(frame.to_string(index=False))
            out.write("\n")
        return EXIT_OK


def write_polynomial(
    out: TextIO, fmt: str, poly: LaurentBivariate, payload: Dict[str, Any]
) -> None:
    if fmt == "json":
        write_json(out, {**payload, "polynomial": poly.to_dict()})
    else:
        out.write(f"{poly}\n")


class PoincareCommand(CommandNode):
    name = "poincare"
    help = "Poincaré polynomial of the Jacobi factor, checked against the area sum"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("p", type=positive_int)
        parser.add_argument("q", type=positive_int)
        parser.add_argument("--format", choices=TEXT_FORMATS, default="text")

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        poly = poincare(args.p, args.q)
        areas = area_generating(args.p, args.q)
        match = poly == areas
        if args.format == "json":
            write_json(
                out,
                {
                    "p": args.p,
                    "q": args.q,
                    "poincare": poly.to_dict(),
                    "area_generating": areas.to_dict(),
                    "match": match,
                },
            )
        elif match:
            out.write(f"{poly} | MATCH\n")
        else:
            out.write(f"{poly} | DIFFER: {areas}\n")
        return EXIT_OK if match else EXIT_FAILURE


class CatalanCommand(CommandNode):
    name = "catalan"
    help = "q,t-Catalan polynomial C_n(q,t)"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("n", type=positive_int)
        parser.add_argument("--format", choices=TEXT_FORMATS, default="text")

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        write_polynomial(out, args.format, qt_catalan(args.n), {"n": args.n})
        return EXIT_OK


class HilbertCommand(CommandNode):
    name = "hilbert"
    help = "virtual Poincaré polynomial of the colength-h Hilbert scheme locus"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("p", type=positive_int)
        parser.add_argument("q", type=positive_int)
        parser.add_argument("h", type=nonnegative_int)
        parser.add_argument("--format", choices=TEXT_FORMATS, default="text")

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        poly = hilbert_cell_poly(args.p, args.q, args.h)
        write_polynomial(out, args.format, poly, {"p": args.p, "q": args.q, "h": args.h})
        return EXIT_OK


class VerifyCommand(CommandNode):
    name = "verify"
    help = "run invariant suites over every coprime pair (or n) within a bound"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("scope", choices=SCOPES)
        parser.add_argument("bound", type=positive_int, nargs="?")
        parser.add_argument("--threads", type=positive_int)
        parser.add_argument("--format", choices=TEXT_FORMATS, default="text")

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        settings = read_settings()
        bound = args.bound
        if bound is None:
            bound = CATALAN_BOUND if args.scope == "catalan" else settings.verify_bound
        threads = args.threads or settings.threads
        report = run(args.scope, bound, threads, command=f"verify {args.scope} {bound}")

        if args.format == "json":
            out.write(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))
            out.write("\n")
        else:
            out.write(report.summary().to_string(index=False))
            out.write("\n")
            for line in report.counterexamples:
                out.write(f"COUNTEREXAMPLE {line}\n")
            out.write(f"{'PASS' if report.passed else 'FAIL'} {report.command}\n")
        return EXIT_OK if report.passed else EXIT_FAILURE


class GmapCommand(CommandNode):
    name = "gmap"
    help = "the map D -> G(D) on the staircase subdiagrams of (p,q) as JSON"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("p", type=positive_int)
        parser.add_argument("q", type=positive_int)

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        permutation = Catalog.permutation(args.p, args.q)
        write_json(out, permutation.to_dict())
        return EXIT_OK if permutation.is_bijective else EXIT_FAILURE


class ReconstructCommand(CommandNode):
    name = "reconstruct"
    help = "rebuild D from D' = G(D) in the (n, n+1) case"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("n", type=positive_int)
        parser.add_argument("columns", type=positive_int, nargs="*")

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        diagram = reconstruct_nnp1(YoungDiagram(tuple(args.columns)), args.n)
        out.write(f"{diagram}\n")
        return EXIT_OK


class CertifyCommand(CommandNode):
    name = "certify"
    help = "print the U/V bijection certificate of a diagram as JSON"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("p", type=positive_int)
        parser.add_argument("q", type=positive_int)
        parser.add_argument("columns", type=positive_int, nargs="*")

    def run(self, args: argparse.Namespace, out: TextIO) -> int:
        certificate = certify(YoungDiagram(tuple(args.columns)), args.p, args.q)
        write_json(out, certificate.to_dict())
        return EXIT_OK


class JacobiCellsCLI(CommandApp):
    usage_errors = (
        SemigroupError,
        DiagramError,
        SemiModuleError,
        CellGeometryError,
        NotInImageError,
        PolynomialError,
        HilbertError,
        VerifyError,
        SettingsError,
    )

    def __init__(self) -> None:
        root = GroupNode(
            "jacobi-cells",
            "Semi-module cells of Jacobi factors with one Puiseux pair (p,q).",
        )
        for command in (
            EnumerateCommand(),
            PoincareCommand(),
            CatalanCommand(),
            HilbertCommand(),
            VerifyCommand(),
            GmapCommand(),
            ReconstructCommand(),
            CertifyCommand(),
        ):
            root.add_command(command)
        super().__init__(root)

    def prepare(self, args: argparse.Namespace) -> None:
        read_settings()
