import shutil
import textwrap
from typing import List

from gasing_trig.backend.messages import StepDocument

MIN_WIDTH = 40


def get_width() -> int:
    return max(MIN_WIDTH, shutil.get_terminal_size().columns)


def wrap_preserve_newlines(text: str, width: int, indent: str = "") -> List[str]:
    """
    Split text on '\n', wrap each paragraph at `width`, and preserve blank lines.
    Continuation lines carry `indent`.
    """
    lines: List[str] = []
    for para in text.split("\n"):
        if para:
            wrapped = textwrap.wrap(
                para,
                width=width,
                subsequent_indent=indent,
                break_long_words=False,
                break_on_hyphens=False,
            )
            lines.extend(wrapped or [""])
        else:
            lines.append("")
    return lines


def wrap_step(number: int, step: StepDocument, width: int) -> List[str]:
    """One numbered step: description and reference, then the equation."""
    head = f"{number:>3}. "
    pad = " " * len(head)
    reference = f" [{step.reference}]" if step.reference else ""
    lines = wrap_preserve_newlines(head + step.description + reference, width, pad)
    lines += wrap_preserve_newlines(f"{pad}{step.lhs} = {step.rhs}", width, pad + "    ")
    return lines


def frame(lines: List[str], title: str = "") -> List[str]:
    """Box the lines the way the trace panel is drawn."""
    inner = max([len(line) for line in lines] + [len(title) + 2])
    top = f"╭─{title}" + "─" * (inner + 1 - len(title)) + "╮" if title else "╭" + "─" * (inner + 2) + "╮"
    body = ["│ " + line.ljust(inner) + " │" for line in lines]
    return [top, *body, "╰" + "─" * (inner + 2) + "╯"]


def trace_panel(steps: List[StepDocument], width: int) -> List[str]:
    if not steps:
        return []
    inner = width - 4
    lines: List[str] = []
    for number, step in enumerate(steps, start=1):
        lines.extend(wrap_step(number, step, inner))
    return frame(lines, " trace ")
