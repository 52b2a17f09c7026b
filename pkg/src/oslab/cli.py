"""``oslab`` command line: run verification suites and write JSON/CSV reports.

Exit status is 0 when every certified check passes, 1 when any check fails
and 2 when the configuration or an input file is invalid.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__, fourier, hochschild, suites
from .errors import InvalidInput
from .tensor import TensorElement

SCHEMA = "oslab/1"
MAX_DIM = 8
MAX_GROUP_ORDER = 24
TENSOR_COMMANDS = ("norms", "twisted-chain", "rainwater")
COMMANDS = TENSOR_COMMANDS + ("cocycle", "fourier", "all")
DEFAULT_TOL = {"norms": 1e-9, "twisted-chain": 1e-9, "rainwater": 1e-6}
DEFAULT_RESTARTS = 4


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    suite: str = "all"
    input: str | None = None
    random: bool = False
    count: int = 10
    dims: tuple[int, int] = (3, 3)
    seed: int = 0
    restarts: int = DEFAULT_RESTARTS
    tol: float | None = None
    jobs: int = 1
    output: str | None = None
    format: str = "json"
    group: str = "S3"
    max_dim: int = MAX_DIM
    max_group_order: int = MAX_GROUP_ORDER

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidInput(f"command: unknown {self.command!r}; expected one of {COMMANDS}")
        if self.tol is not None and not (self.tol > 0 and math.isfinite(self.tol)):
            raise InvalidInput(f"tol: must be positive, got {self.tol}")
        if len(self.dims) != 2 or not all(1 <= d <= self.max_dim for d in self.dims):
            raise InvalidInput(f"dims: each must lie in [1, {self.max_dim}], got {list(self.dims)}")
        if self.count < 0:
            raise InvalidInput(f"count: must be nonnegative, got {self.count}")
        if self.restarts < 1:
            raise InvalidInput(f"restarts: must be at least 1, got {self.restarts}")
        if self.jobs < 1:
            raise InvalidInput(f"jobs: must be at least 1, got {self.jobs}")
        if self.format not in ("json", "csv"):
            raise InvalidInput(f"format: expected json or csv, got {self.format!r}")

    def tolerance(self, command: str) -> float:
        return self.tol if self.tol is not None else DEFAULT_TOL.get(command, 1e-9)


# -- float formatting ---------------------------------------------------------


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats written to 17 significant digits."""
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# -- inputs -------------------------------------------------------------------


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON ({exc.msg})") from None


def load_tensors(path: str) -> list[TensorElement]:
    data = _load_json(path)
    if isinstance(data, dict) and "tensors" in data:
        data, where = data["tensors"], "tensors"
    elif isinstance(data, dict) and "pairs" in data:
        data, where = [data], ""
    else:
        where = ""
    if not isinstance(data, list):
        raise InvalidInput(f"{path}: expected a list of tensor elements or {{'tensors': [...]}}")
    out = []
    for i, obj in enumerate(data):
        try:
            out.append(TensorElement.from_json(obj))
        except InvalidInput as exc:
            raise InvalidInput(f"{path}: {where}[{i}]: {exc}") from None
    return out


def load_group(path: str) -> fourier.FiniteGroup:
    data = _load_json(path)
    try:
        return fourier.FiniteGroup.from_json(data)
    except InvalidInput as exc:
        raise InvalidInput(f"{path}: {exc}") from None


def load_algebras(path: str) -> list[hochschild.CommutativeAlgebra]:
    data = _load_json(path)
    if isinstance(data, dict) and "algebras" in data:
        data = data["algebras"]
    elif isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise InvalidInput(f"{path}: expected a list of algebras")
    out = []
    for i, obj in enumerate(data):
        try:
            out.append(hochschild.CommutativeAlgebra.from_json(obj, name=f"input[{i}]"))
        except InvalidInput as exc:
            raise InvalidInput(f"{path}: [{i}]: {exc}") from None
    return out


# -- tensor sweeps --------------------------------------------------------------

_ROW_FUNCS = {
    "norms": suites.norms_rows,
    "twisted-chain": suites.chain_rows,
    "rainwater": suites.rainwater_rows,
}


def _instance_seed(seed: int, index: int) -> int:
    return int(np.random.default_rng([seed, index, 1]).integers(2**31))


def _tensor_task(task):
    command, index, w_json, restarts, seed, tol = task
    w = TensorElement.from_json(w_json)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rows = _ROW_FUNCS[command](index, w, restarts, _instance_seed(seed, index), tol)
    return rows, [f"instance {index}: {m.message}" for m in caught]


def _tensor_instances(config: ExperimentConfig) -> list[TensorElement]:
    if config.input is not None:
        tensors = load_tensors(config.input)
        for i, w in enumerate(tensors):
            if max(w.dimE, w.dimF) > config.max_dim:
                raise InvalidInput(f"{config.input}: [{i}]: dims ({w.dimE}, {w.dimF}) exceed maximum {config.max_dim}")
        return tensors
    if config.random:
        E, F = config.dims
        return [suites.random_instance(config.seed, i, E, F) for i in range(config.count)]
    return []


def _run_tensor(command: str, config: ExperimentConfig):
    tol = config.tolerance(command)
    tasks = [(command, i, w.to_json(), config.restarts, config.seed, tol)
             for i, w in enumerate(_tensor_instances(config))]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_tensor_task, tasks))
    else:
        results = [_tensor_task(t) for t in tasks]
    rows, warns = [], []
    for r, w in results:
        rows += r
        warns += w
    return rows, warns


# -- other suites ------------------------------------------------------------------


def _run_cocycle(config: ExperimentConfig):
    if config.suite not in ("all",) + suites.COCYCLE_SUITES:
        raise InvalidInput(f"suite: cocycle expects one of {('all',) + suites.COCYCLE_SUITES}, got {config.suite!r}")
    algebras = load_algebras(config.input) if config.input is not None else None
    for i, A in enumerate(algebras or []):
        if A.dim > config.max_dim:
            raise InvalidInput(f"{config.input}: [{i}]: dim {A.dim} exceeds maximum {config.max_dim}")
    return suites.cocycle_rows(config.count, config.seed, config.suite, algebras), []


def _run_fourier(config: ExperimentConfig):
    if config.suite not in ("all",) + suites.FOURIER_SUITES:
        raise InvalidInput(f"suite: fourier expects one of {('all',) + suites.FOURIER_SUITES}, got {config.suite!r}")
    G = load_group(config.input) if config.input is not None else fourier.group_by_name(config.group)
    if G.order > config.max_group_order:
        raise InvalidInput(f"group: order {G.order} exceeds maximum {config.max_group_order}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rows = suites.fourier_rows(G, config.suite, config.count, config.seed)
    return rows, [str(m.message) for m in caught]


def _run_command(command: str, config: ExperimentConfig):
    if command in TENSOR_COMMANDS:
        return _run_tensor(command, config)
    if command == "cocycle":
        return _run_cocycle(config)
    return _run_fourier(config)


def run(config: ExperimentConfig) -> tuple[int, dict]:
    """Run the configured suite; write the report if ``config.output`` is set."""
    if config.command == "all":
        sections = []
        for cmd in COMMANDS[:-1]:
            sub = ExperimentConfig(**{**asdict(config), "command": cmd, "input": None,
                                      "random": True, "suite": "all", "output": None})
            sections.append((cmd, *_run_command(cmd, sub)))
    else:
        sections = [(config.command, *_run_command(config.command, config))]

    rows, warns = [], []
    for cmd, r, w in sections:
        rows += [{"command": cmd, **row.to_json()} for row in r]
        warns += [f"{cmd}: {m}" for m in w]
    failed = sum(not row["pass"] for row in rows)
    report = {
        "schema": SCHEMA,
        "version": __version__,
        "command": config.command,
        "config": {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(config).items()
                   if k not in ("output",)},
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "summary": {"checks": len(rows), "failed": failed, "passed": failed == 0},
        "warnings": warns,
        "rows": rows,
    }
    if config.output is not None:
        text = render(report, config.format)
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return (0 if failed == 0 else 1), report


def render(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps(report) + "\n"
    buf = io.StringIO()
    cols = ["command", "name", "instance", "inputs_hash", "lhs", "rhs", "margin", "pass"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in report["rows"]:
        writer.writerow([_fmt_float(row[c]) if isinstance(row[c], float) else row[c] for c in cols])
    return buf.getvalue()


# -- argument parsing ---------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--suite", default="all", help="sub-suite for cocycle/fourier (default: all)")
    common.add_argument("--input", metavar="FILE", help="JSON instances (tensors, algebras or a group table)")
    common.add_argument("--random", action="store_true", help="generate random instances")
    common.add_argument("--count", type=int, default=10, help="number of random instances")
    common.add_argument("--dims", type=int, nargs=2, metavar=("E", "F"), default=(3, 3))
    common.add_argument("--seed", type=int, default=None, help="master seed (fallback: $OSLAB_SEED, then 0)")
    common.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    common.add_argument("--tol", type=float, default=None, help="inequality slack / equality tolerance")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for instance sweeps")
    common.add_argument("--output", metavar="FILE", help="write report here (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--group", default="S3", help="built-in group name, e.g. Z6, D4, S3, Q8, Z3xZ4")

    p = argparse.ArgumentParser(prog="oslab", description="Certified checks for operator-space tensor norms, "
                                "Hochschild cocycles and Fourier algebras of finite groups.")
    p.add_argument("--version", action="version", version=f"oslab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        sub.add_parser(cmd, parents=[common])
    return p


def _seed(arg) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("OSLAB_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise InvalidInput(f"OSLAB_SEED: expected an integer, got {env!r}") from None


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = ExperimentConfig(
            command=args.command, suite=args.suite, input=args.input, random=args.random,
            count=args.count, dims=tuple(args.dims), seed=_seed(args.seed), restarts=args.restarts,
            tol=args.tol, jobs=args.jobs, output=args.output, format=args.format, group=args.group,
        )
        code, report = run(config)
    except InvalidInput as exc:
        print(f"oslab: invalid input: {exc}", file=sys.stderr)
        return 2
    if config.output is None:
        sys.stdout.write(render(report, config.format))
    s = report["summary"]
    print(f"oslab {config.command}: {s['checks']} checks, {s['failed']} failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
