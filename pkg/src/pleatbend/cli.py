"""Command line front end.

Subcommands map one-to-one onto the library's experiment surface:
classify words, realize a pleated surface, report bending data,
integrate volume change along paths (per endpoint selection or summed
over all cuff orientations), probe loop defects, compare peripheral
fingerprints, compute peripheral-map ranks, and emit SVG plots.

Exit codes: 0 on success, 2 when a library precondition fails, 3 when
an input file or the command line cannot be parsed.  All numeric
output uses 15 significant digits and fixed key order, so identical
invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .errors import PleatbendError
from .moebius import classify, complex_length, fixed_points, trace_squared
from .pleated import (EndpointChoice, TruncationConvention, bending_data,
                      check_adapted, realize)
from .representation import (conjugacy_residual, evaluate_word, fingerprint,
                             jacobian_rank, load_path, load_rep,
                             peripheral_fingerprint, standard_word_list)
from .topology import build_lamination, enumerate_orientations, load_document
from .volume import (integrate_volume_change, loop_defect,
                     orientation_start_endpoints, vol_gamma_change)

LOOP_TOL = 1e-6


class _ParseFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParseFailure(message)


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a subcommand needs, normalized from the command line."""

    command: str
    input: tuple[str, ...]
    pd: str | None = None
    inclusion: str | None = None
    words: tuple[str, ...] = ()
    tolerance: float = 1e-9
    steps: int | None = None
    horoball: float = 1.0
    seed: int = 0
    fmt: str = "text"
    endpoints: str = "attracting"
    rank: bool = False
    output: str | None = None
    quantity: str = "volume"


def _num(x: float) -> str:
    return f"{x:.15g}"


def _cnum(z: complex) -> str:
    re, im = z.real + 0.0, z.imag + 0.0
    return f"{re:.15g}{im:+.15g}j"


def _point(p) -> str:
    if p is None:
        return "-"
    return "inf" if p.is_infinity() else _cnum(p.to_complex())


def _emit(cfg: ExperimentConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dump(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(cfg: ExperimentConfig) -> int:
    rep = load_rep(cfg.input[0])
    if not cfg.words:
        raise PleatbendError("classify needs --words")
    rows = []
    for w in cfg.words:
        m = evaluate_word(rep, w)
        kind = classify(m, eps_class=cfg.tolerance)
        tau = trace_squared(m)
        try:
            lam = _cnum(complex_length(m, eps_class=cfg.tolerance))
        except PleatbendError:
            lam = "-"
        try:
            fp = fixed_points(m, eps_class=cfg.tolerance)
            fps = [_point(p) for p in fp]
        except PleatbendError:
            fps = ["-", "-"]
        rows.append({"word": w, "class": str(kind), "trace_squared": _cnum(tau),
                     "complex_length": lam, "fixed_points": fps})
    if cfg.fmt == "json":
        _emit(cfg, _json_dump({"rows": rows}))
    else:
        lines = [f"{'word':<12} {'class':<12} {'trace_squared':<42} "
                 f"{'complex_length':<42} fixed_points"]
        for r in rows:
            lines.append(f"{r['word']:<12} {r['class']:<12} "
                         f"{r['trace_squared']:<42} {r['complex_length']:<42} "
                         f"{r['fixed_points'][0]} {r['fixed_points'][1]}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _load_surface(cfg: ExperimentConfig):
    if not cfg.pd:
        raise PleatbendError(f"{cfg.command} needs --pd")
    pd, inc = load_document(cfg.pd)
    pd.validate()
    return pd, inc


def cmd_pleat(cfg: ExperimentConfig) -> int:
    rep = load_rep(cfg.input[0])
    pd, _ = _load_surface(cfg)
    report = check_adapted(rep, pd, eps_class=cfg.tolerance)
    lam = build_lamination(pd)
    real = realize(rep, pd, lam, EndpointChoice.uniform(cfg.endpoints))
    payload = {
        "adapted": report.adapted,
        "adaptedness": report.summary(),
        "cuff_lengths": {c: _cnum(v) for c, v in real.cuff_lengths.items()},
        "vertices": {str(p): [_point(q) for q in triple]
                     for p, triple in enumerate(real.xi)},
    }
    if cfg.fmt == "json":
        _emit(cfg, _json_dump(payload))
    else:
        lines = [f"adapted: {payload['adapted']}", payload["adaptedness"]]
        for c in sorted(payload["cuff_lengths"]):
            lines.append(f"cuff {c}: length {payload['cuff_lengths'][c]}")
        for p, triple in payload["vertices"].items():
            lines.append(f"pants {p}: " + " ".join(triple))
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def cmd_bend(cfg: ExperimentConfig) -> int:
    rep = load_rep(cfg.input[0])
    pd, _ = _load_surface(cfg)
    lam = build_lamination(pd)
    real = realize(rep, pd, lam, EndpointChoice.uniform(cfg.endpoints))
    conv = TruncationConvention.uniform(pd, cfg.horoball)
    data = bending_data(real, conv)
    rows = []
    for c in pd.cuffs:
        rows.append({"kind": "cuff", "id": c.id,
                     "angle": data.cuff_angles[c.id],
                     "length": data.cuff_lengths[c.id]})
    for key in sorted(data.leaf_angles):
        rows.append({"kind": "leaf", "id": f"{key[0]}:{key[1]}",
                     "angle": data.leaf_angles[key],
                     "length": data.leaf_lengths[key]})
    if cfg.fmt == "json":
        out = [{**r, "angle": _num(r["angle"]), "length": _num(r["length"])}
               for r in rows]
        _emit(cfg, _json_dump({"rows": out}))
    elif cfg.fmt == "csv":
        lines = ["kind,id,angle,length"]
        for r in rows:
            lines.append(f"{r['kind']},{r['id']},{_num(r['angle'])},"
                         f"{_num(r['length'])}")
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        lines = [f"{'kind':<6} {'id':<8} {'angle':<24} length"]
        for r in rows:
            lines.append(f"{r['kind']:<6} {r['id']:<8} "
                         f"{_num(r['angle']):<24} {_num(r['length'])}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _load_pathfile(cfg: ExperimentConfig):
    pd, _ = _load_surface(cfg)
    path = load_path(cfg.input[0], pd=pd)
    return pd, path


def _loop_check(path) -> tuple[bool, float]:
    words = standard_word_list(path.reps[0].generators)
    d = fingerprint(path.reps[0], words).distance(
        fingerprint(path.reps[-1], words))
    return d <= 1e-8, d


def cmd_volume_path(cfg: ExperimentConfig) -> int:
    pd, path = _load_pathfile(cfg)
    conv = TruncationConvention.uniform(pd, cfg.horoball)
    zeta = EndpointChoice.uniform(cfg.endpoints)
    result = integrate_volume_change(path, zeta, conv, steps=cfg.steps)
    is_loop, _ = _loop_check(path)
    loop_line = None
    if is_loop:
        defect = vol_gamma_change(path, conv)
        verdict = "PASS" if abs(defect) < LOOP_TOL else "FAIL"
        loop_line = f"loop defect {verdict}: {_num(defect)}"
    if cfg.fmt == "json":
        payload = {
            "delta_v": _num(result.delta_v),
            "error_estimate": _num(result.error_estimate),
            "steps": result.steps,
            "ts": [_num(t) for t in result.ts],
            "cumulative": [_num(c) for c in result.cumulative],
            "per_step": [_num(c) for c in result.per_step],
        }
        if loop_line is not None:
            payload["loop_defect"] = loop_line
        _emit(cfg, _json_dump(payload))
    elif cfg.fmt == "csv":
        lines = ["t,per_step,cumulative"]
        for i, t in enumerate(result.ts):
            step = result.per_step[i - 1] if i else 0.0
            lines.append(f"{_num(t)},{_num(step)},{_num(result.cumulative[i])}")
        if loop_line is not None:
            lines.append(loop_line)
        _emit(cfg, "\n".join(lines) + "\n")
    elif cfg.fmt == "svg":
        _emit(cfg, _svg_plot(result.ts, {"dV": result.cumulative},
                             "t", "cumulative dV"))
    else:
        lines = [f"delta_v: {_num(result.delta_v)}",
                 f"error_estimate: {_num(result.error_estimate)}",
                 f"steps: {result.steps}"]
        if loop_line is not None:
            lines.append(loop_line)
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def cmd_vol_gamma(cfg: ExperimentConfig) -> int:
    pd, path = _load_pathfile(cfg)
    conv = TruncationConvention.uniform(pd, cfg.horoball)
    per_orientation = []
    cumulative = None
    for ori in enumerate_orientations(pd):
        zeta0 = orientation_start_endpoints(path, ori)
        lam = build_lamination(pd, ori)
        result = integrate_volume_change(path, zeta0, conv, steps=cfg.steps,
                                         lamination=lam)
        label = "".join("+" if b else "-" for b in ori.forward)
        per_orientation.append((label, result))
        if cumulative is None:
            cumulative = list(result.cumulative)
        else:
            cumulative = [a + b for a, b in zip(cumulative, result.cumulative)]
    total = sum(r.delta_v for _, r in per_orientation)
    if cfg.fmt == "json":
        payload = {
            "total": _num(total),
            "orientations": {label: _num(r.delta_v)
                             for label, r in per_orientation},
        }
        _emit(cfg, _json_dump(payload))
    elif cfg.fmt == "csv":
        labels = [label for label, _ in per_orientation]
        lines = ["t," + ",".join(f"dv[{la}]" for la in labels) + ",cumulative"]
        ts = per_orientation[0][1].ts
        for i, t in enumerate(ts):
            steps = [r.per_step[i - 1] if i else 0.0
                     for _, r in per_orientation]
            lines.append(f"{_num(t)}," + ",".join(_num(s) for s in steps)
                         + f",{_num(cumulative[i])}")
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        lines = [f"vol_gamma_change: {_num(total)}"]
        for label, r in per_orientation:
            lines.append(f"orientation {label}: {_num(r.delta_v)}")
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def cmd_loop_defect(cfg: ExperimentConfig) -> int:
    pd, path = _load_pathfile(cfg)
    conv = TruncationConvention.uniform(pd, cfg.horoball)
    report = loop_defect(path, conv)
    verdict = "PASS" if abs(report.defect) < LOOP_TOL else "FAIL"
    if cfg.fmt == "json":
        _emit(cfg, _json_dump({
            "defect": _num(report.defect),
            "error_estimate": _num(report.error_estimate),
            "fingerprint_distance": _num(report.fingerprint_distance),
            "verdict": verdict,
        }))
    else:
        _emit(cfg, "\n".join([
            f"loop defect {verdict}: {_num(report.defect)}",
            f"error_estimate: {_num(report.error_estimate)}",
            f"fingerprint_distance: {_num(report.fingerprint_distance)}",
        ]) + "\n")
    return 0


def _load_inclusion(cfg: ExperimentConfig):
    if not cfg.inclusion:
        raise PleatbendError(f"{cfg.command} needs --inclusion")
    pd, inc = load_document(cfg.inclusion)
    if inc is None:
        raise PleatbendError(
            f"document {cfg.inclusion} carries no boundary inclusion")
    return pd, inc


def cmd_peripheral(cfg: ExperimentConfig) -> int:
    pd, inc = _load_inclusion(cfg)
    reps = [load_rep(f) for f in cfg.input]
    prints = [peripheral_fingerprint(r, inc) for r in reps]
    lines = []
    payload: dict = {"fingerprints": []}
    for f, fp in zip(cfg.input, prints):
        payload["fingerprints"].append(
            {"file": f, "words": list(fp.words),
             "values": [_cnum(v) for v in fp.values]})
        lines.append(f"{f}:")
        for w, v in zip(fp.words, fp.values):
            lines.append(f"  {w:<12} {_cnum(v)}")
    if len(reps) == 2:
        d = prints[0].distance(prints[1])
        residual = conjugacy_residual(reps[0], reps[1])
        verdict = "conjugate" if residual < 1e-6 else "distinct"
        payload["distance"] = _num(d)
        payload["conjugacy_residual"] = _num(residual)
        payload["verdict"] = verdict
        lines.append(f"fingerprint distance: {_num(d)}")
        lines.append(f"conjugacy residual: {_num(residual)} ({verdict})")
    if cfg.rank:
        expected = 3 * len(inc.generators) - 3
        payload["rank"] = []
        for f, r in zip(cfg.input, reps):
            rank, sv = jacobian_rank(r, inc)
            payload["rank"].append({"file": f, "rank": rank,
                                    "expected": expected,
                                    "singular_values": [_num(s) for s in sv]})
            lines.append(f"rank {rank} of {expected} expected ({f})")
    if cfg.fmt == "json":
        _emit(cfg, _json_dump(payload))
    elif cfg.fmt == "csv":
        rows = ["word,re,im"]
        for fp in prints:
            for w, v in zip(fp.words, fp.values):
                rows.append(f"{w},{_num(v.real)},{_num(v.imag)}")
        _emit(cfg, "\n".join(rows) + "\n")
    else:
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def cmd_rank(cfg: ExperimentConfig) -> int:
    pd, inc = _load_inclusion(cfg)
    rep = load_rep(cfg.input[0])
    rank, sv = jacobian_rank(rep, inc)
    expected = 3 * len(inc.generators) - 3
    gap = sv[rank - 1] / sv[rank] if rank and rank < len(sv) and sv[rank] > 0 \
        else math.inf
    if cfg.fmt == "json":
        _emit(cfg, _json_dump({
            "rank": rank, "expected": expected,
            "singular_values": [_num(s) for s in sv],
            "gap": _num(gap),
        }))
    else:
        _emit(cfg, "\n".join([
            f"rank {rank} of {expected} expected",
            "singular values: " + " ".join(_num(s) for s in sv),
            f"gap: {_num(gap)}",
        ]) + "\n")
    return 0


def cmd_plot(cfg: ExperimentConfig) -> int:
    pd, path = _load_pathfile(cfg)
    conv = TruncationConvention.uniform(pd, cfg.horoball)
    zeta = EndpointChoice.uniform(cfg.endpoints)
    if cfg.quantity == "angles":
        from .volume import _realized_samples
        samples = _realized_samples(path, list(range(len(path))), zeta, conv)
        series = {}
        for c in pd.cuffs:
            series[f"angle[{c.id}]"] = [s.data.cuff_angles[c.id]
                                        for s in samples]
        svg = _svg_plot(tuple(s.t for s in samples), series, "t", "bending angle")
    else:
        result = integrate_volume_change(path, zeta, conv, steps=cfg.steps)
        svg = _svg_plot(result.ts, {"dV": result.cumulative},
                        "t", "cumulative dV")
    _emit(cfg, svg)
    return 0


# ---------------------------------------------------------------------------
# svg plotting (deterministic, no dependencies)

_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
               "#8c564b", "#e377c2", "#7f7f7f")


def _svg_plot(ts, series: dict, xlabel: str, ylabel: str) -> str:
    width, height, margin = 640, 400, 56
    xs = list(ts)
    all_ys = [y for ys in series.values() for y in ys]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(all_ys), max(all_ys)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def sx(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">',
             f'<rect width="{width}" height="{height}" fill="white"/>',
             f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
             f'y2="{height - margin}" stroke="black"/>',
             f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
             f'y2="{height - margin}" stroke="black"/>']
    for k in range(5):
        xv = x0 + k * (x1 - x0) / 4
        yv = y0 + k * (y1 - y0) / 4
        parts.append(f'<text x="{sx(xv):.2f}" y="{height - margin + 18}" '
                     f'font-size="11" text-anchor="middle">{xv:.15g}</text>')
        parts.append(f'<text x="{margin - 6}" y="{sy(yv):.2f}" font-size="11" '
                     f'text-anchor="end">{yv:.15g}</text>')
    parts.append(f'<text x="{width / 2}" y="{height - 12}" font-size="13" '
                 f'text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="16" y="{height / 2}" font-size="13" '
                 f'text-anchor="middle" transform="rotate(-90 16 {height / 2})">'
                 f'{ylabel}</text>')
    for i, (name, ys) in enumerate(series.items()):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        pts = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline fill="none" stroke="{color}" '
                     f'stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{width - margin - 4}" '
                     f'y="{margin + 16 + 16 * i}" font-size="12" '
                     f'text-anchor="end" fill="{color}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# argument plumbing


_COMMANDS = {
    "classify": cmd_classify,
    "pleat": cmd_pleat,
    "bend": cmd_bend,
    "volume-path": cmd_volume_path,
    "vol-gamma": cmd_vol_gamma,
    "loop-defect": cmd_loop_defect,
    "peripheral": cmd_peripheral,
    "rank": cmd_rank,
    "plot": cmd_plot,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="pleatbend",
                     description="pleated-surface and volume experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, nargs="+",
                       help="input file(s): representation or path JSON")
        p.add_argument("--pd", help="surface document (pants decomposition)")
        p.add_argument("--inclusion",
                       help="document carrying a boundary inclusion")
        p.add_argument("--words", help="comma-separated word list")
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--steps", type=int)
        p.add_argument("--horoball", type=float, default=1.0,
                       help="uniform truncation scale")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", dest="fmt", default="text",
                       choices=("text", "json", "csv", "svg"))
        p.add_argument("--endpoints", default="attracting",
                       choices=("attracting", "repelling"))
        p.add_argument("--rank", action="store_true",
                       help="include jacobian rank in peripheral reports")
        p.add_argument("--output", help="write to this file instead of stdout")
        p.add_argument("--quantity", default="volume",
                       choices=("volume", "angles"), help="plot quantity")
    return parser


def _config_from_args(args) -> ExperimentConfig:
    words = tuple(w for w in (args.words or "").split(",") if w)
    return ExperimentConfig(
        command=args.command, input=tuple(args.input), pd=args.pd,
        inclusion=args.inclusion, words=words, tolerance=args.tolerance,
        steps=args.steps, horoball=args.horoball, seed=args.seed,
        fmt=args.fmt, endpoints=args.endpoints, rank=args.rank,
        output=args.output, quantity=args.quantity)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    cfg = _config_from_args(args)
    try:
        return _COMMANDS[cfg.command](cfg)
    except PleatbendError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"parse error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
