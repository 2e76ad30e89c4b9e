"""Replicate aggregation, error series and SVG plots."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

from .environment import Environment
from .errors import InvalidInputError
from .scenario_io import fmt6
from .simulator import RunResult, extract_path


@dataclass(frozen=True)
class ReplicateReport:
    """Step-count distribution over a batch of runs.

    Step statistics cover converged runs only and are None when no run
    converged.
    """

    scenario_id: str
    runs: int
    converged_count: int
    steps_min: int | None
    steps_median: float | None
    steps_max: int | None
    steps_mean: float | None
    failure_seeds: tuple[int, ...]

    def to_text(self) -> str:
        def fmt(v):
            if v is None:
                return "none"
            return fmt6(v) if isinstance(v, float) else str(v)

        return (
            f"scenario_id={self.scenario_id}\n"
            f"runs={self.runs}\n"
            f"converged_count={self.converged_count}\n"
            f"steps_min={fmt(self.steps_min)}\n"
            f"steps_median={fmt(self.steps_median)}\n"
            f"steps_max={fmt(self.steps_max)}\n"
            f"steps_mean={fmt(self.steps_mean)}\n"
            f"failure_seeds={','.join(str(s) for s in self.failure_seeds)}\n"
        )


def lower_median(values) -> float:
    ordered = sorted(values)
    return float(ordered[(len(ordered) - 1) // 2])


def aggregate(results, scenario_id: str = "scenario") -> ReplicateReport:
    results = list(results)
    if not results:
        raise InvalidInputError("aggregate needs at least one run")
    steps = sorted(r.steps for r in results if r.converged)
    failures = tuple(sorted(r.seed for r in results if not r.converged))
    if steps:
        stats = (steps[0], lower_median(steps), steps[-1], math.fsum(steps) / len(steps))
    else:
        stats = (None, None, None, None)
    return ReplicateReport(scenario_id, len(results), len(steps), *stats, failures)


def runs_csv(results) -> str:
    """One row per run, in the order given."""
    lines = ["seed,converged,steps,final_error"]
    for r in results:
        lines.append(f"{r.seed},{'true' if r.converged else 'false'},{r.steps},{fmt6(r.final_error)}")
    return "\n".join(lines) + "\n"


def error_series_csv(result: RunResult) -> str:
    lines = ["iteration,error"]
    lines += [f"{i},{fmt6(e)}" for i, e in enumerate(result.error_series)]
    return "\n".join(lines) + "\n"


# --- SVG -----------------------------------------------------------------

_CANVAS = 600
_PAD = 40


class _Frame:
    """Maps world coordinates into a square canvas with y pointing up."""

    def __init__(self, env: Environment):
        b = env.bounds
        self.x0, self.y0 = b.min_corner.x, b.min_corner.y
        self.scale = (_CANVAS - 2 * _PAD) / max(b.width, b.height)
        self.height = b.height

    def x(self, wx: float) -> str:
        return f"{_PAD + (wx - self.x0) * self.scale:.2f}"

    def y(self, wy: float) -> str:
        return f"{_PAD + (self.height - (wy - self.y0)) * self.scale:.2f}"

    def length(self, d: float) -> str:
        return f"{d * self.scale:.2f}"


def _svg(width: int, height: int, body: list[str], title: str) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f"<title>{escape(title)}</title>\n"
        f'<rect class="background" x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def trace_svg(result: RunResult) -> str:
    env, start = result.environment, result.start
    f = _Frame(env)
    b = env.bounds
    body = [
        f'<rect class="bounds" x="{f.x(b.min_corner.x)}" y="{f.y(b.max_corner.y)}" '
        f'width="{f.length(b.width)}" height="{f.length(b.height)}" fill="none" stroke="black"/>'
    ]
    for r in env.obstacles:
        body.append(
            f'<rect class="obstacle" x="{f.x(r.min_corner.x)}" y="{f.y(r.max_corner.y)}" '
            f'width="{f.length(r.width)}" height="{f.length(r.height)}" fill="dimgray"/>'
        )

    # older iterations fade out
    n_iter = len(result.trace)
    body.append('<g class="particles" fill="steelblue">')
    for it, positions in enumerate(result.trace):
        opacity = 0.1 + 0.9 * (it + 1) / n_iter
        body.append(f'<g opacity="{opacity:.3f}">')
        body.extend(f'<circle cx="{f.x(p.x)}" cy="{f.y(p.y)}" r="1.5"/>' for p in positions)
        body.append("</g>")
    body.append("</g>")

    path = extract_path(result)
    points = " ".join(f"{f.x(p.x)},{f.y(p.y)}" for p in path)
    body.append(f'<polyline class="gbest" points="{points}" fill="none" stroke="crimson" stroke-width="1.5"/>')
    body.append(f'<circle class="start" cx="{f.x(start.x)}" cy="{f.y(start.y)}" r="5" fill="green"/>')
    t = result.target
    body.append(
        f'<circle class="target" cx="{f.x(t.x)}" cy="{f.y(t.y)}" r="{max(3.0, result.epsilon * f.scale):.2f}" '
        'fill="none" stroke="red" stroke-width="2"/>'
    )
    title = f"particle trace, seed {result.seed}, steps {result.steps}"
    return _svg(_CANVAS, _CANVAS, body, title)


def error_svg(result: RunResult) -> str:
    width, height = 600, 400
    errors = result.error_series
    top = max(errors) or 1.0
    span = max(len(errors) - 1, 1)
    plot_w, plot_h = width - 2 * _PAD, height - 2 * _PAD

    def px(i):
        return f"{_PAD + plot_w * i / span:.2f}"

    def py(e):
        return f"{height - _PAD - plot_h * e / top:.2f}"

    body = [
        f'<line class="axis" x1="{_PAD}" y1="{height - _PAD}" x2="{width - _PAD}" y2="{height - _PAD}" stroke="black"/>',
        f'<line class="axis" x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" y2="{height - _PAD}" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 8}" text-anchor="middle" font-size="12">iteration</text>',
        f'<text x="12" y="{height / 2:.0f}" font-size="12" transform="rotate(-90 12 {height / 2:.0f})" '
        'text-anchor="middle">error</text>',
        f'<text x="{_PAD - 4}" y="{_PAD + 4}" text-anchor="end" font-size="10">{top:.1f}</text>',
        f'<text x="{width - _PAD}" y="{height - _PAD + 14}" text-anchor="end" font-size="10">{len(errors) - 1}</text>',
    ]
    points = " ".join(f"{px(i)},{py(e)}" for i, e in enumerate(errors))
    body.append(f'<polyline class="error" points="{points}" fill="none" stroke="crimson" stroke-width="1.5"/>')
    return _svg(width, height, body, f"error per step, seed {result.seed}")


def emit_plots(result: RunResult, out_dir) -> list[Path]:
    """Write ``trace.svg`` and ``error.svg`` into ``out_dir``; returns their paths."""
    out = Path(out_dir)
    if not out.is_dir() or not os.access(out, os.W_OK):
        raise OSError(f"output directory is not writable: {out}")
    written = []
    for name, text in (("trace.svg", trace_svg(result)), ("error.svg", error_svg(result))):
        path = out / name
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written
