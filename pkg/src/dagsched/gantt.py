"""Plain-text Gantt rendering for terminals."""

from __future__ import annotations

from .schedule import Schedule

WIDTH = 72


def _column(t, makespan, scale):
    if scale:
        return t * scale
    return t * WIDTH // makespan


def render_ascii(schedule: Schedule) -> str:
    """One lane per processor; ``[id----]`` blocks, ``.`` for idle time."""
    ms = schedule.makespan
    scale = max(1, WIDTH // ms) if 0 < ms <= WIDTH else (0 if ms else 1)
    total_cols = _column(ms, ms, scale) if ms else 0
    name_w = len(f"P{schedule.p - 1}")
    lines = []
    for proc, lane in enumerate(schedule.lanes()):
        row = ["."] * total_cols
        for pl in lane:
            a, b = _column(pl.start, ms, scale), _column(pl.finish, ms, scale)
            width = b - a
            label = str(pl.task)
            if width >= len(label) + 2:
                text = "[" + label.ljust(width - 2, "-") + "]"
            elif width >= len(label):
                text = label.ljust(width, "#")
            else:
                text = "#" * width
            row[a:b] = list(text)
        lines.append(f"{f'P{proc}'.rjust(name_w)} |{''.join(row)}|")
    axis = "0".ljust(max(total_cols, 1))
    end = str(ms)
    if total_cols > len(end):
        axis = axis[: total_cols - len(end) + 1] + end
    lines.append(" " * (name_w + 2) + axis)
    for proc, lane in enumerate(schedule.lanes()):
        blocks = " ".join(f"{pl.task}[{pl.start},{pl.finish})" for pl in lane) or "(idle)"
        lines.append(f"{f'P{proc}'.rjust(name_w)}: {blocks}")
    lines.append(f"makespan = {ms}")
    return "\n".join(lines) + "\n"
