"""
Command line: `brauer mul | homology | tor | verify`. Results go to stdout
as JSON (sorted keys) or TSV; logs go to stderr and logs/cli.log.
"""
import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, TextIO

import pandas as pd

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from app.cli.schemas import CheckRow, ElementModel, HomologyRow, RunConfig, parse_model, validate_config
from app.services.verify_service import VerificationService
from src.brauer.algebra import AlgebraElement
from src.brauer.coefficients import parse_ring
from src.brauer.errors import BrauerError, ParseError, SemanticError
from src.complexes.brauer_complex import build_cn, filter_cnk, split_cn
from src.complexes.chain_complex import ChainComplex
from src.complexes.inductive import build_inductive
from src.complexes.injective_words import build_w
from src.homology.bar import BarAlgebra, ModuleFactory, bar_tor
from src.homology.groups import complex_homology, vanishing_failures
from utils.config import get_defaults, get_log_level
from utils.logger import set_level, setup_logger
from utils.paths import get_export_path, get_log_path

# --- CONFIGURATION ---
EXIT_OK = 0
EXIT_VERIFY_FAILED = 5
LOGGER_NAMES = ("cli", "bar", "homology", "induced", "checks", "verify_service")
LETTERS = "abcdefgh"

logger = setup_logger(get_log_path("cli"), "cli")


# --- argument parsing ---
def _subset(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from e


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on its own; route that through ParseError instead."""

    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    defaults = get_defaults()
    common = _Parser(add_help=False)
    common.add_argument("--ring", default=None, help="Z, Q, Fp:<p> or Zmod:<m>")
    common.add_argument("--delta", default=None, help="loop parameter (integer or rational)")
    common.add_argument("--output", choices=["json", "tsv"], default=defaults.get("output", "json"))
    common.add_argument("--budget", type=int, default=None, help="override the bar complex size ceiling")
    common.add_argument("--progress", action="store_true", help="show progress bars")

    parser = _Parser(prog="brauer", description="Exact homology of Brauer algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    mul = sub.add_parser("mul", parents=[common], help="multiply elements read as JSON")
    mul.add_argument("files", nargs="*", type=Path, help="element JSON files (stdin when omitted)")

    hom = sub.add_parser("homology", parents=[common], help="homology of C_n, C_n^(k), W_X^(s) or C(X,x)/D(X,x,y)")
    hom.add_argument("--target", choices=["cn", "cnk", "w", "inductive"], required=True)
    hom.add_argument("--n", type=int)
    hom.add_argument("--k", type=int)
    hom.add_argument("--j", type=int)
    hom.add_argument("--letters", type=int)
    hom.add_argument("--seps", type=int)
    hom.add_argument("--X", type=_subset)
    hom.add_argument("--x", type=int)
    hom.add_argument("--y", type=int)
    hom.add_argument("--maxdeg", type=int, help="truncation degree")
    hom.add_argument("--tensor-trivial", action="store_true", help="inductive target: apply t (x) -")
    hom.add_argument("--export", nargs="?", const="", default=None,
                     help="write the complex as sparse triplets (default path under data/exports)")

    tor = sub.add_parser("tor", parents=[common], help="Tor^A(t, M) from the normalized bar complex")
    tor.add_argument("--algebra", choices=["brauer", "sym"], required=True)
    tor.add_argument("--n", type=int, required=True)
    tor.add_argument("--maxdeg", type=int, default=int(defaults.get("max_degree", 2)))
    tor.add_argument("--module", choices=["trivial", "induced", "quotient", "restricted"], default="trivial")
    tor.add_argument("--m", type=int)
    tor.add_argument("--X", type=_subset)
    tor.add_argument("--N", type=int)

    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=VerificationService().accepted)
    for flag in ("--n", "--m", "--i", "--maxdeg"):
        ver.add_argument(flag, type=int)
    return parser


def to_config(args: argparse.Namespace) -> RunConfig:
    fields = {k: v for k, v in vars(args).items() if v is not None and k != "files"}
    fields.pop("tensor_trivial", None)
    fields["export"] = Path(args.export) if getattr(args, "export", None) else None
    for key in ("ring", "delta"):
        fields.setdefault(key, str(get_defaults().get(key, "Z" if key == "ring" else "0")))
    return validate_config(**fields)


# --- output ---
def _native(value):
    """numpy scalars from DataFrame cells."""
    return value.item() if hasattr(value, "item") else str(value)


def emit(frame: pd.DataFrame, fmt: str, stream: TextIO) -> None:
    if fmt == "tsv":
        flat = frame.copy()
        for col in flat.columns:
            if flat[col].map(lambda v: isinstance(v, list)).any():
                flat[col] = flat[col].map(lambda v: ",".join(map(str, v)))
        flat.to_csv(stream, sep="\t", index=False)
        return
    stream.write(json.dumps(frame.to_dict(orient="records"), sort_keys=True, indent=2, default=_native) + "\n")


def homology_frame(groups) -> pd.DataFrame:
    rows = [HomologyRow.from_group(p, H).model_dump() for p, H in sorted(groups.items())]
    return pd.DataFrame.from_records(rows, columns=["degree", "free_rank", "torsion"])


@contextmanager
def budget_override(budget: Optional[int]) -> Iterator[None]:
    if budget is None:
        yield
        return
    previous = os.environ.get("BRAUER_BUDGET")
    os.environ["BRAUER_BUDGET"] = str(budget)
    try:
        yield
    finally:
        if previous is None:
            os.environ.pop("BRAUER_BUDGET", None)
        else:
            os.environ["BRAUER_BUDGET"] = previous


# --- commands ---
def _read_elements(files: Sequence[Path], stdin: TextIO) -> List[ElementModel]:
    sources = [(str(f), f.read_text(encoding="utf-8")) for f in files] if files else [("stdin", stdin.read())]
    models = []
    for name, text in sources:
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"{name}: not valid JSON ({e.msg})") from e
        for item in payload if isinstance(payload, list) else [payload]:
            if not isinstance(item, dict):
                raise ParseError(f"{name}: expected element objects")
            models.append(parse_model(ElementModel, item))
    if not models:
        raise ParseError("no elements to multiply")
    return models


def cmd_mul(args: argparse.Namespace, stdin: TextIO, stdout: TextIO) -> int:
    models = _read_elements(args.files, stdin)
    declared = {(m.ring, m.delta) for m in models if m.ring is not None or m.delta is not None}
    if args.ring is None and args.delta is None and len(declared) > 1:
        raise SemanticError(f"elements disagree on the ring: {sorted(map(str, declared))}")
    first_ring, first_delta = next(iter(declared)) if declared else (None, None)
    defaults = get_defaults()
    ring = parse_ring(
        args.ring or first_ring or defaults.get("ring", "Z"),
        args.delta if args.delta is not None else (first_delta or str(defaults.get("delta", "0"))),
    )
    product: AlgebraElement = models[0].to_element(ring)
    for model in models[1:]:
        product = product * model.to_element(ring)
    logger.info(f"✅ Multiplied {len(models)} factors in {ring}")
    if args.output == "tsv":
        terms = [{"coeff": str(c), "pairs": [list(p) for p in d.pairs]} for d, c in product.items()]
        emit(pd.DataFrame.from_records(terms, columns=["coeff", "pairs"]), "tsv", stdout)
    else:
        stdout.write(json.dumps(product.to_json(), sort_keys=True) + "\n")
    return EXIT_OK


def _require(cfg: RunConfig, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(cfg, n) is None]
    if missing:
        raise ParseError(f"{cfg.target or cfg.command} needs {', '.join(missing)}")


def _homology_target(cfg: RunConfig, tensor_trivial: bool):
    """(complex, degree through which homology must vanish)."""
    ring = cfg.make_ring()
    if cfg.target == "cn":
        _require(cfg, "n")
        return build_cn(cfg.n, ring, top=cfg.maxdeg), (cfg.n - 3) // 2
    if cfg.target == "cnk":
        _require(cfg, "n", "k")
        parts = split_cn(build_cn(cfg.n, ring))
        if cfg.k >= len(parts):
            raise SemanticError(f"k={cfg.k} exceeds n/2 for n={cfg.n}")
        if cfg.j is None:
            return parts[cfg.k], cfg.n - cfg.k - 2
        _, quotient = filter_cnk(parts[cfg.k], cfg.j)
        return quotient, cfg.n - cfg.k - 2 + cfg.j
    if cfg.target == "w":
        _require(cfg, "letters", "seps")
        if cfg.letters > len(LETTERS):
            raise SemanticError(f"at most {len(LETTERS)} letters")
        return build_w(LETTERS[:cfg.letters], cfg.seps, ring, top=cfg.maxdeg), cfg.letters - 2
    _require(cfg, "n", "X", "x")
    D = cfg.maxdeg or 4
    C = build_inductive(cfg.n, cfg.X, cfg.x, ring, y=cfg.y, D=D, tensor_trivial=tensor_trivial)
    return C, D - 1


def cmd_homology(cfg: RunConfig, args: argparse.Namespace, stdout: TextIO) -> int:
    C, through = _homology_target(cfg, args.tensor_trivial)
    if args.export is not None:
        path = Path(args.export) if args.export else get_export_path(C.name.replace("/", "_"))
        C.export(path)
        logger.info(f"Exported {C.name} to {path}")
    groups = complex_homology(C, progress=cfg.progress)
    emit(homology_frame(groups), cfg.output, stdout)
    failures = vanishing_failures(groups, through)
    if failures:
        logger.warning(f"⚠️ {C.name}: nonzero homology in degrees {failures} (expected zero through {through})")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_tor(cfg: RunConfig, stdout: TextIO) -> int:
    kind = "symmetric" if cfg.algebra == "sym" else "brauer"
    algebra = BarAlgebra(kind, cfg.n, cfg.make_ring())
    extra = {"trivial": (), "induced": ("m",), "quotient": ("X",), "restricted": ("N",)}[cfg.module]
    _require(cfg, *extra)
    module = ModuleFactory.get_module(cfg.module, algebra, *(getattr(cfg, name) for name in extra))
    D = cfg.maxdeg if cfg.maxdeg is not None else int(get_defaults().get("max_degree", 2))
    result = bar_tor(algebra, module, D, progress=cfg.progress)
    emit(homology_frame(result.groups), cfg.output, stdout)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args: argparse.Namespace, stdout: TextIO) -> int:
    overrides = {"n": cfg.n, "m": cfg.m, "i": cfg.i, "maxdeg": cfg.maxdeg, "ring": args.ring, "delta": args.delta}
    report = VerificationService().run(cfg.suite, overrides)
    rows = [r.model_dump() for r in CheckRow.from_report(report)]
    frame = pd.DataFrame.from_records(rows, columns=list(CheckRow.model_fields))
    emit(frame, cfg.output, stdout)
    for note in report.notes:
        logger.info(f"note: {note}")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def main(argv: Optional[Sequence[str]] = None, stdin: TextIO = None, stdout: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    level = get_log_level()
    for name in LOGGER_NAMES:
        set_level(logging.getLogger(name), level)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "mul":
            return cmd_mul(args, stdin, stdout)
        cfg = to_config(args)
        with budget_override(cfg.budget):
            if cfg.command == "homology":
                return cmd_homology(cfg, args, stdout)
            if cfg.command == "tor":
                return cmd_tor(cfg, stdout)
            return cmd_verify(cfg, args, stdout)
    except BrauerError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"❌ {e}")
        return ParseError.exit_code


if __name__ == "__main__":
    sys.exit(main())
