"""Command-line front end: count, points, crosscheck, constant, fit."""

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import __version__
from .errors import ChateletError

HEADER = "# chatelet-manin v%s" % __version__
COMMANDS = ("count", "points", "crosscheck", "constant", "fit")


@dataclass
class RunConfig:
    command: str
    surface: tuple = (1, 1, 1, -1)
    bound: int = None
    bounds: tuple = ()
    lmax: int = 15
    bmax: int = 5
    p0: int = 10 ** 5
    n_max: int = 12
    out: str = None
    format: str = "csv"
    threads: int = 1
    t_weight: str = "r"

    def check(self):
        if self.command not in COMMANDS:
            raise ValueError("unknown command %r" % self.command)
        if self.format not in ("csv", "jsonl"):
            raise ValueError("format must be csv or jsonl")
        if self.t_weight not in ("r", "primitive"):
            raise ValueError("t-weight must be r or primitive")
        for name in ("lmax", "bmax", "p0", "n_max", "threads"):
            if int(getattr(self, name)) < 1:
                raise ValueError("%s must be positive" % name)
        if any(B < 1 for B in self.B_list()):
            raise ValueError("bounds must be >= 1")
        if len(self.surface) != 4:
            raise ValueError("surface needs four coefficients a3,b3,a4,b4")

    def B_list(self):
        if self.bounds:
            return list(self.bounds)
        if self.bound is not None:
            return [self.bound]
        return []


def _ints(s):
    return tuple(int(float(x)) for x in str(s).replace(" ", "").split(",") if x)


def _int(s):
    return int(float(s))


CONVERT = {"surface": _ints, "bound": _int, "bounds": _ints, "lmax": _int, "bmax": _int,
           "p0": _int, "n_max": _int, "threads": _int, "out": str, "format": str,
           "t_weight": str, "command": str}


def load_config(path):
    """Key = value lines (# comments allowed) or one JSON object."""
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError("%s:%d: bad JSON: %s" % (path, exc.lineno, exc.msg))
        items = [(0, k, v) for k, v in raw.items()]
    else:
        items = []
        for no, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("%s:%d: expected key = value" % (path, no))
            k, v = line.split("=", 1)
            items.append((no, k.strip(), v.strip()))
    out = {}
    for no, k, v in items:
        key = k.replace("-", "_").lower()
        where = "%s:%d" % (path, no) if no else path
        if key not in CONVERT:
            raise ValueError("%s: unknown key %r" % (where, k))
        try:
            out[key] = CONVERT[key](",".join(map(str, v)) if isinstance(v, list) else v)
        except (TypeError, ValueError):
            raise ValueError("%s: bad value %r for %s" % (where, v, k))
    return out


def build_parser():
    # SUPPRESS keeps a flag given before the subcommand from being reset after it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--surface", type=_ints, help="a3,b3,a4,b4")
    common.add_argument("--bound", type=_int)
    common.add_argument("--bounds", type=_ints)
    common.add_argument("--lmax", type=_int)
    common.add_argument("--bmax", type=_int)
    common.add_argument("--p0", type=_int)
    common.add_argument("--n-max", dest="n_max", type=_int)
    common.add_argument("--out")
    common.add_argument("--format", choices=("csv", "jsonl"))
    common.add_argument("--threads", type=_int)
    common.add_argument("--t-weight", dest="t_weight", choices=("r", "primitive"))
    common.add_argument("--config")
    ap = argparse.ArgumentParser(prog="chatelet-manin", parents=[common],
                                 description="Rational points of bounded height on "
                                             "Y^2 + Z^2 = X (a3 X + b3)(a4 X + b4).")
    ap.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {"count": "N(B) table, nondegenerate and degenerate",
             "points": "all points of height <= B with class, color and component",
             "crosscheck": "Moebius decomposition against the direct count for B = 1..bound",
             "constant": "leading constant as JSON",
             "fit": "counts against c f(B)"}
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return ap


def config_from_args(argv=None):
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(ns.command)
    if getattr(ns, "config", None):
        for k, v in load_config(ns.config).items():
            if k != "command":
                setattr(cfg, k, v)
    # explicit flags win over the config file
    for f in fields(RunConfig):
        v = getattr(ns, f.name, None)
        if v is not None and f.name != "command":
            setattr(cfg, f.name, v)
    cfg.check()
    return cfg


class _Writer:
    def __init__(self, cfg, columns):
        self.cfg = cfg
        self.columns = columns
        self.lines = [HEADER, ",".join(columns)] if cfg.format == "csv" else []

    def row(self, values):
        if self.cfg.format == "csv":
            self.lines.append(",".join(_fmt(v) for v in values))
        else:
            self.lines.append(json.dumps(dict(zip(self.columns, values)), sort_keys=False))

    def text(self):
        return "\n".join(self.lines) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(cfg, text, stdout):
    if cfg.out:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _spec(cfg):
    from .surface import validate
    return validate(*cfg.surface)


def cmd_count(cfg, stdout):
    from .points import count_points
    spec = _spec(cfg)
    Bs = cfg.B_list()
    if not Bs:
        raise ValueError("count needs --bound or --bounds")
    w = _Writer(cfg, ["B", "nondegenerate", "degenerate"])
    for B in Bs:
        n, d = count_points(spec, B, workers=cfg.threads)
        w.row([B, n, d])
    _emit(cfg, w.text(), stdout)
    return 0


def cmd_points(cfg, stdout):
    from .points import enumerate_points
    spec = _spec(cfg)
    if cfg.bound is None:
        raise ValueError("points needs --bound")
    cols = ["x", "y", "t", "u", "v", "height", "m1", "m2", "m3", "m4",
            "degenerate", "color", "component"]
    w = _Writer(cfg, cols)
    for r in enumerate_points(spec, cfg.bound):
        P = r.point
        w.row([P.x, P.y, P.t, P.u, P.v, P.height, *r.torsor_class.m,
               int(r.degenerate), r.figure_color, r.real_component])
    _emit(cfg, w.text(), stdout)
    return 0


def cmd_crosscheck(cfg, stdout):
    from .points import count_histogram
    from .sums import moebius_counts
    spec = _spec(cfg)
    if cfg.bound is None:
        raise ValueError("crosscheck needs --bound")
    B = cfg.bound
    direct = np.cumsum(count_histogram(spec, B))
    moeb = moebius_counts(spec, B, cfg.t_weight)
    eq = direct[1:] == moeb[1:]
    if cfg.out:
        w = _Writer(cfg, ["B", "direct", "moebius"])
        for b in range(1, B + 1):
            w.row([b, int(direct[b]), int(moeb[b])])
        _emit(cfg, w.text(), stdout)
    k = int(eq.sum())
    if k == B:
        stdout.write("OK: %d/%d values equal\n" % (k, B))
        return 0
    first = int(np.nonzero(~eq)[0][0]) + 1
    stdout.write("FAIL: %d/%d values equal; first mismatch at B=%d (direct %d, moebius %d)\n"
                 % (k, B, first, direct[first], moeb[first]))
    return 1


def cmd_constant(cfg, stdout):
    from .densities import assemble_constant
    spec = _spec(cfg)
    rep = assemble_constant(spec, cfg.lmax, cfg.bmax, cfg.p0)
    d = json.loads(rep.to_json())
    d["surface"] = list(cfg.surface)
    _emit(cfg, json.dumps(d, sort_keys=True, indent=1) + "\n", stdout)
    return 0


def cmd_fit(cfg, stdout):
    from .densities import assemble_constant, fit_empirical
    spec = _spec(cfg)
    Bs = cfg.B_list() or [10 ** 4, 10 ** 5, 10 ** 6]
    rep = assemble_constant(spec, cfg.lmax, cfg.bmax, cfg.p0)
    w = _Writer(cfg, ["B", "nondegenerate", "c_f", "ratio", "ratio_primitive"])
    for r in fit_empirical(spec, Bs, rep):
        w.row([r.B, r.N, r.cf, r.ratio, r.ratio_primitive])
    _emit(cfg, w.text(), stdout)
    return 0


RUNNERS = {"count": cmd_count, "points": cmd_points, "crosscheck": cmd_crosscheck,
           "constant": cmd_constant, "fit": cmd_fit}


def run(cfg, stdout=None):
    stdout = sys.stdout if stdout is None else stdout
    return RUNNERS[cfg.command](cfg, stdout)


def main(argv=None):
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    except (ChateletError, ValueError, OSError) as exc:
        sys.stderr.write("chatelet-manin: error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
