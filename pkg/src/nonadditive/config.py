"""Flat ``key = value`` experiment configs.

Unknown or repeated keys are errors.  File paths are resolved relative to
the config file's directory.  Keys starting with ``expect.`` name a dotted
path into the command's JSON report and the value it must have; ``--check``
turns any mismatch into exit status 1.

Documented keys::

    command     pressure | battery | equivalence | cohomology | cocycle |
                classify | rotation | reproduce-paper
    mode        cohomology: certificate | solve | meancycle | decompose
                cocycle: sequence | distortion | fl | kln
    sequence    birkhoff | measure | cocycle | explicit | type1 | type1-recentered
    potential, weights, generator   input files for the first sequence
    rule        explicit sequences: sqrt | sqrt:SCALE | linear:C | const:C
    offset      added n * offset to a measure sequence
    alpha       dither amplitude added to the first sequence
    sequence2, potential2, weights2, generator2, rule2, offset2, alpha2
                the second sequence (equivalence, classify pool reference)
    alphabet    number of symbols for explicit sequences (default 2)
    pool        classify: ';'-separated potential files (default: fitted pool)
    direction   meancycle: max | min
    N, P, L, s, grid     horizons and sizes
    rotation    rotation number, "p/q" or a decimal literal
    trig        "f:a:b;f:a:b;..." cosine/sine coefficients
    bounded_ratio, bounded_abs_tol, bounded_rel_tol, vanish_rel, vanish_abs
                trend thresholds
    budget      enumeration budget for word tables
    out         output directory
    expect_tol  numeric tolerance for expect.* checks (default 1e-9)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import FormatError

COMMANDS = ("pressure", "battery", "equivalence", "cohomology", "cocycle", "classify",
            "rotation", "reproduce-paper")
MODES = {"cohomology": ("certificate", "solve", "meancycle", "decompose"),
         "cocycle": ("sequence", "distortion", "fl", "kln")}
SEQUENCES = ("birkhoff", "measure", "cocycle", "explicit", "type1", "type1-recentered")
FILE_KEYS = ("potential", "weights", "generator", "potential2", "weights2", "generator2")
INT_KEYS = ("N", "P", "L", "s", "grid", "alphabet", "budget")
FLOAT_KEYS = ("offset", "offset2", "alpha", "alpha2", "bounded_ratio", "bounded_abs_tol",
              "bounded_rel_tol", "vanish_rel", "vanish_abs", "expect_tol")
STR_KEYS = ("command", "mode", "sequence", "sequence2", "rule", "rule2", "rotation", "trig",
            "direction", "out", "pool")
THRESHOLD_KEYS = ("bounded_ratio", "bounded_abs_tol", "bounded_rel_tol", "vanish_rel",
                  "vanish_abs")
KNOWN = set(FILE_KEYS + INT_KEYS + FLOAT_KEYS + STR_KEYS)


@dataclass
class ExperimentConfig:
    path: Path = None
    values: dict = field(default_factory=dict)  # parsed, typed values
    raw: dict = field(default_factory=dict)  # as written, for embedding in reports
    expect: dict = field(default_factory=dict)  # dotted path -> expected value
    lines: dict = field(default_factory=dict)  # key -> line number

    def get(self, key, default=None):
        return self.values.get(key, default)

    def __contains__(self, key):
        return key in self.values

    @property
    def command(self):
        return self.values.get("command")

    def thresholds(self) -> dict:
        return {k: self.values[k] for k in THRESHOLD_KEYS if k in self.values}

    def file(self, key) -> Path:
        return self.values[key]

    def error(self, key, message):
        return FormatError(self.path, self.lines.get(key, 0), message)


def _expect_value(text):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_config(text: str, path=None) -> ExperimentConfig:
    path = Path(path) if path is not None else Path("<config>")
    base = path.parent if path.name != "<config>" else Path(".")
    cfg = ExperimentConfig(path=path)
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(path, ln, "expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise FormatError(path, ln, "empty key or value")
        if key in cfg.lines:
            raise FormatError(path, ln, f"duplicate key {key!r} (first on line {cfg.lines[key]})")
        cfg.lines[key] = ln
        cfg.raw[key] = value
        if key.startswith("expect."):
            cfg.expect[key[len("expect."):]] = _expect_value(value)
            continue
        if key not in KNOWN:
            raise FormatError(path, ln, f"unknown key {key!r}")
        try:
            if key in INT_KEYS:
                v = int(value)
                if v < 0 or (v == 0 and key not in ("s",)):
                    raise FormatError(path, ln, f"{key} must be positive")
            elif key in FLOAT_KEYS:
                v = float(value)
                if key in THRESHOLD_KEYS + ("expect_tol",) and not v > 0:
                    raise FormatError(path, ln, f"{key} must be positive")
                if key.startswith("alpha") and v < 0:
                    raise FormatError(path, ln, f"{key} must be nonnegative")
            elif key in FILE_KEYS:
                v = (base / value).resolve() if not Path(value).is_absolute() else Path(value)
                if not v.is_file():
                    raise FormatError(path, ln, f"{key} file not found: {value}")
            elif key == "pool":
                v = []
                for item in value.split(";"):
                    p = Path(item.strip())
                    p = p if p.is_absolute() else (base / p).resolve()
                    if not p.is_file():
                        raise FormatError(path, ln, f"pool file not found: {item.strip()}")
                    v.append(p)
            else:
                v = value
        except ValueError:
            raise FormatError(path, ln, f"bad value for {key}: {value!r}") from None
        cfg.values[key] = v
    _validate(cfg)
    return cfg


def _validate(cfg: ExperimentConfig):
    cmd = cfg.get("command")
    if cmd is not None and cmd not in COMMANDS:
        raise cfg.error("command", f"unknown command {cmd!r}")
    mode = cfg.get("mode")
    if mode is not None:
        allowed = MODES.get(cmd, ())
        if mode not in allowed:
            raise cfg.error("mode", f"mode {mode!r} not valid for command {cmd!r}")
    for key in ("sequence", "sequence2"):
        if key in cfg and cfg.get(key) not in SEQUENCES:
            raise cfg.error(key, f"unknown sequence kind {cfg.get(key)!r}")
    if "direction" in cfg and cfg.get("direction") not in ("max", "min"):
        raise cfg.error("direction", "direction must be max or min")
    if "trig" in cfg:
        parse_trig(cfg.get("trig"), cfg)


def parse_trig(text, cfg=None):
    out = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        parts = item.split(":")
        try:
            if len(parts) != 3:
                raise ValueError
            out.append((float(parts[0]), float(parts[1]), float(parts[2])))
        except ValueError:
            if cfg is not None:
                raise cfg.error("trig", f"bad trig term {item!r}, expected f:a:b") from None
            raise
    return out


def parse_rule(text):
    """``sqrt``, ``sqrt:SCALE``, ``linear:C`` or ``const:C`` as ``(name, parameter)``."""
    name, _, arg = text.partition(":")
    if name == "sqrt":
        return name, float(arg) if arg else 1.0
    if name in ("linear", "const") and arg:
        return name, float(arg)
    raise ValueError(f"bad rule {text!r}")


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(path, 0, f"cannot read config: {exc.strerror}") from None
    return parse_config(text, path)
