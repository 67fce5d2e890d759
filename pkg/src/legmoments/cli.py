"""Command-line front end.

Subcommands::

    legmoments list
    legmoments verify --id ID [--nu RE[,IM]] [--n N] [--x X] [--y Y]
                      [--mu MU] [--a A] [--b B] [--c C] [--tol T]
    legmoments suite  [--profile quick|full] [--tol-override ID=T ...]
                      [--parallelism K] [--seed S]
    legmoments sweep  --id ID --nu-start RE[,IM] --nu-end RE[,IM] --steps K
    legmoments asym   --check hh|taylor|bound|cubic

Every subcommand except ``list`` accepts ``--out PATH``, ``--format
json|csv|text`` and ``--config PATH``. ``verify`` prints JSON by default,
the others a text table.

Exit codes: 0 every record passed, 1 at least one failed, 2 usage or
configuration error, 3 a record could not be computed to the requested
accuracy (takes precedence over 1).

The environment variable ``LM_DEFAULT_TOL`` replaces the catalog tolerance
whenever no tolerance is given on the command line or in the config file.
"""
from __future__ import annotations

import argparse
import math
import os
import re
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .asymptotics import ASYM_CHECKS, check_records
from .errors import DomainError, LegMomentsError, UnknownIdentityError
from .identities import (CATALOG, FULL_GRID, QUICK_GRID, get_spec, identity_ids,
                         normalize_params)
from .identities.engine import (PROFILES, make_document, now_utc, resolve_tolerances, run_tasks,
                                suite_tasks)
from .report import ReportDocument

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NO_CONVERGENCE = 3

FORMATS = ("json", "csv", "text")
ENV_TOL = "LM_DEFAULT_TOL"


class UsageError(LegMomentsError):
    """Bad flags, config or output location; maps to exit code 2."""


# ------------------------------------------------------------- parsing

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_COMPLEX_RE = re.compile(rf"^\s*({_NUM})\s*(?:,\s*({_NUM})\s*)?$")


def parse_degree(text: str) -> float | complex:
    """``"RE"`` or ``"RE,IM"`` to a float or complex number."""
    m = _COMPLEX_RE.match(str(text))
    if not m:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")
    re_ = float(m.group(1))
    if m.group(2) is None:
        return re_
    im = float(m.group(2))
    return complex(re_, im) if im != 0.0 else re_


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text!r}")
    return v


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _override(text: str) -> tuple[str, float]:
    key, sep, val = str(text).partition("=")
    if not sep or not key.strip():
        raise argparse.ArgumentTypeError(f"expected ID=T, got {text!r}")
    return key.strip(), _positive_float(val.strip())


# value converters shared by flags and config-file keys
_CONVERTERS = {
    "id": str, "nu": parse_degree, "n": _int, "x": _float, "y": _float, "mu": _float,
    "a": _float, "b": _float, "c": _float, "tol": _positive_float,
    "profile": str, "out": str, "format": str, "parallelism": _int, "seed": _int,
    "tol_override": _override, "nu_start": parse_degree, "nu_end": parse_degree,
    "steps": _int, "check": str,
}
_LIST_KEYS = {"tol_override"}
_IDENTITY_PARAMS = ("nu", "n", "x", "y", "mu", "a", "b", "c")
# flags whose value may legitimately start with a minus sign
_VALUE_FLAGS = {"--nu", "--x", "--y", "--mu", "--a", "--b", "--c", "--nu-start", "--nu-end"}


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-0.25,0.1" as an option; glue such values to their flag
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and _COMPLEX_RE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key=value file; keys as the long flags")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--format", choices=FORMATS, help="report format")

    p = argparse.ArgumentParser(prog="legmoments",
                                description="Verify Legendre moment identities numerically.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    sub.add_parser("list", help="print the identity catalog")

    v = sub.add_parser("verify", parents=[common], help="check one identity at one point")
    v.add_argument("--id", type=str)
    v.add_argument("--nu", type=parse_degree, metavar="RE[,IM]")
    v.add_argument("--n", type=_int)
    for name in ("x", "y", "mu", "a", "b", "c"):
        v.add_argument(f"--{name}", type=_float)
    v.add_argument("--tol", type=_positive_float)

    s = sub.add_parser("suite", parents=[common], help="run a fixed parameter grid")
    s.add_argument("--profile", choices=PROFILES)
    s.add_argument("--tol", type=_positive_float, help="tolerance for every identity")
    s.add_argument("--tol-override", type=_override, action="append", metavar="ID=T")
    s.add_argument("--parallelism", type=_int)
    s.add_argument("--seed", type=_int, help="jitter pointwise x-values reproducibly")

    w = sub.add_parser("sweep", parents=[common], help="check one identity along a line in nu")
    w.add_argument("--id", type=str)
    w.add_argument("--nu-start", type=parse_degree, metavar="RE[,IM]")
    w.add_argument("--nu-end", type=parse_degree, metavar="RE[,IM]")
    w.add_argument("--steps", type=_int)
    w.add_argument("--tol", type=_positive_float)

    a = sub.add_parser("asym", parents=[common], help="asymptotic and expansion checks")
    a.add_argument("--check", choices=ASYM_CHECKS)
    return p


# -------------------------------------------------------------- config

def read_config(path: str) -> dict:
    """Parse a flat ``key = value`` file.

    Keys are the long flag names with or without leading dashes; ``-`` and
    ``_`` are interchangeable. ``tol-override`` may repeat. Blank lines and
    ``#`` comments are skipped.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise UsageError(f"cannot read config {path!r}: {e.strerror or e}") from None
    cfg: dict = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key = key.strip().lstrip("-").replace("-", "_")
        if key not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            value = _CONVERTERS[key](val.strip())
        except argparse.ArgumentTypeError as e:
            raise UsageError(f"{path}:{lineno}: {e}") from None
        if key in _LIST_KEYS:
            cfg.setdefault(key, []).append(value)
        else:
            cfg[key] = value
    return cfg


def _env_tol() -> float | None:
    raw = os.environ.get(ENV_TOL)
    if raw is None or not raw.strip():
        return None
    try:
        return _positive_float(raw.strip())
    except argparse.ArgumentTypeError as e:
        raise UsageError(f"{ENV_TOL}: {e}") from None


# ----------------------------------------------------------- RunConfig

@dataclass
class RunConfig:
    """Resolved settings shared by the report-producing subcommands."""

    profile: str = "quick"
    tol_overrides: dict = field(default_factory=dict)
    output_path: str | None = None
    format: str = "text"
    parallelism: int = 1
    seed: int | None = None

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise UsageError(f"profile must be one of {PROFILES}, got {self.profile!r}")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}, got {self.format!r}")
        if isinstance(self.parallelism, bool) or not isinstance(self.parallelism, int) \
                or self.parallelism < 1:
            raise UsageError(f"parallelism must be an integer >= 1, got {self.parallelism!r}")
        overrides = {}
        for k, v in self.tol_overrides.items():
            try:
                key = get_spec(k).id
            except UnknownIdentityError:
                raise UsageError(f"tolerance override for unknown identity {k!r}") from None
            if not (float(v) > 0 and math.isfinite(float(v))):
                raise UsageError(f"tolerance override for {key} must be positive")
            overrides[key] = float(v)
        self.tol_overrides = overrides


def render(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json()
    if fmt == "csv":
        return doc.to_csv()
    if fmt == "text":
        return doc.to_text()
    raise UsageError(f"unknown format {fmt!r}")


def emit_report(doc: ReportDocument, cfg: RunConfig, stream=None) -> None:
    """Write ``doc`` in ``cfg.format`` to ``cfg.output_path`` or ``stream``.

    Raises
    ------
    UsageError
        The output path cannot be written.
    """
    text = render(doc, cfg.format)
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as e:
            raise UsageError(f"cannot write {cfg.output_path!r}: {e.strerror or e}") from None
    else:
        (stream or sys.stdout).write(text)


def exit_code(doc: ReportDocument) -> int:
    if not doc.all_converged:
        return EXIT_NO_CONVERGENCE
    return EXIT_OK if doc.n_failed == 0 else EXIT_FAIL


# ---------------------------------------------------------- subcommands

def _merged(args: argparse.Namespace, key: str, default=None):
    v = getattr(args, key, None)
    return default if v is None else v


def _config_for(args, **extra) -> RunConfig:
    return RunConfig(output_path=_merged(args, "out"), format=_merged(args, "format", "text"),
                     **extra)


def _cmd_list(args, out) -> int:
    rows = [("id", "params", "tol", "formula")]
    for i in identity_ids():
        spec = CATALOG[i]
        rows.append((i, ",".join(spec.params) or "-", f"{spec.default_tol:.0e}", spec.anchor))
    widths = [max(len(r[k]) for r in rows) for k in range(3)]
    for r in rows:
        out.write("  ".join(c.ljust(w) for c, w in zip(r[:3], widths)) + "  " + r[3] + "\n")
    return EXIT_OK


def _require_id(args) -> str:
    if not getattr(args, "id", None):
        raise UsageError("--id is required")
    return get_spec(args.id).id


def _cmd_verify(args, out) -> int:
    id_ = _require_id(args)
    spec = CATALOG[id_]
    params = {}
    for name in _IDENTITY_PARAMS:
        v = getattr(args, name, None)
        if v is None:
            continue
        if name not in spec.params:
            raise UsageError(f"{id_} takes no parameter {name!r} (accepts: {', '.join(spec.params) or 'none'})")
        params[name] = v
    tol = _merged(args, "tol", _env_tol())
    cfg = RunConfig(output_path=args.out, format=args.format or "json")
    started, t0 = now_utc(), time.perf_counter()
    tasks = [(id_, params, tol if tol is not None else spec.default_tol)]
    records = run_tasks(tasks)
    doc = make_document(records, "verify", {id_: tasks[0][2]}, started, time.perf_counter() - t0)
    emit_report(doc, cfg, out)
    return exit_code(doc)


def _cmd_suite(args, out) -> int:
    overrides = dict(args.tol_override or [])
    cfg = _config_for(args, profile=_merged(args, "profile", "quick"), tol_overrides=overrides,
                      parallelism=_merged(args, "parallelism", 1), seed=args.seed)
    grid = QUICK_GRID if cfg.profile == "quick" else FULL_GRID
    base = _merged(args, "tol", _env_tol())
    if base is not None:
        cfg_tols = {i: base for i in grid}
        cfg_tols.update({k: v for k, v in cfg.tol_overrides.items() if k in grid})
    else:
        cfg_tols = resolve_tolerances(cfg.tol_overrides, grid)
    started, t0 = now_utc(), time.perf_counter()
    records = run_tasks(suite_tasks(cfg.profile, cfg_tols, cfg.seed), cfg.parallelism)
    doc = make_document(records, cfg.profile, cfg_tols, started, time.perf_counter() - t0)
    emit_report(doc, cfg, out)
    return exit_code(doc)


def _cmd_sweep(args, out) -> int:
    id_ = _require_id(args)
    spec = CATALOG[id_]
    if "nu" not in spec.params:
        raise UsageError(f"{id_} has no degree parameter to sweep")
    if args.nu_start is None or args.nu_end is None or args.steps is None:
        raise UsageError("sweep needs --nu-start, --nu-end and --steps")
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    start, end = complex(args.nu_start), complex(args.nu_end)
    if args.steps == 1:
        pts = [start]
    else:
        pts = list(np.linspace(start, end, args.steps))
    nus = [complex(v) if v.imag != 0 else float(v.real) for v in pts]
    tol = _merged(args, "tol", _env_tol())
    tol = spec.default_tol if tol is None else tol
    cfg = _config_for(args)
    # validate every point before spending time on any of them
    for nu in nus:
        normalize_params(spec, {"nu": nu})
    started, t0 = now_utc(), time.perf_counter()
    records = run_tasks([(id_, {"nu": nu}, tol) for nu in nus])
    doc = make_document(records, "sweep", {id_: tol}, started, time.perf_counter() - t0)
    emit_report(doc, cfg, out)
    return exit_code(doc)


def _cmd_asym(args, out) -> int:
    if not args.check:
        raise UsageError("--check is required")
    if args.check not in ASYM_CHECKS:
        raise UsageError(f"--check must be one of {ASYM_CHECKS}")
    cfg = _config_for(args)
    started, t0 = now_utc(), time.perf_counter()
    records = check_records(args.check)
    doc = make_document(records, f"asym:{args.check}", {}, started, time.perf_counter() - t0)
    emit_report(doc, cfg, out)
    return exit_code(doc)


_COMMANDS = {"list": _cmd_list, "verify": _cmd_verify, "suite": _cmd_suite,
             "sweep": _cmd_sweep, "asym": _cmd_asym}


def _apply_config(args: argparse.Namespace) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    for key, value in read_config(path).items():
        if not hasattr(args, key):
            continue  # a key meant for another subcommand
        if key in _LIST_KEYS:
            setattr(args, key, list(value) + list(getattr(args, key) or []))
        elif getattr(args, key) is None:
            setattr(args, key, value)
    if getattr(args, "format", None) not in (None,) + FORMATS:
        raise UsageError(f"format must be one of {FORMATS}")
    if getattr(args, "profile", None) not in (None,) + PROFILES:
        raise UsageError(f"profile must be one of {PROFILES}")
    if getattr(args, "check", None) not in (None,) + ASYM_CHECKS:
        raise UsageError(f"check must be one of {ASYM_CHECKS}")


def run(argv=None, stdout=None, stderr=None) -> int:
    """Execute one command line and return its exit code."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse has already printed usage to stderr
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        _apply_config(args)
        return _COMMANDS[args.command](args, out)
    except UnknownIdentityError as e:
        err.write(f"legmoments: {e.args[0]}\n")
        return EXIT_USAGE
    except (UsageError, DomainError) as e:
        err.write(f"legmoments: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


__all__ = ["RunConfig", "UsageError", "build_parser", "emit_report", "exit_code", "main",
           "parse_degree", "read_config", "render", "run"]
