import sys
from typing import TextIO

from gasing_trig.backend.messages import TraceBundle, TraceDocument
from gasing_trig.frontend.ascii import get_width, trace_panel, wrap_preserve_newlines


class View:
    """
    Console output. Documents print as text, or as one JSON bundle when
    asked; errors go to the error stream on one line.
    """

    def __init__(self, *, logger, out: TextIO | None = None, err: TextIO | None = None, width: int | None = None):
        self.logger = logger
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.width = width or get_width()

    def _print(self, line: str = "") -> None:
        print(line, file=self.out)

    def show_document(self, document: TraceDocument, trace: bool = False) -> None:
        heading = document.operation
        if document.verdict is not None:
            heading = f"{heading}: {document.verdict}"
        self._print(heading)
        for line in wrap_preserve_newlines(document.result, self.width - 2, "    "):
            self._print(f"  {line}")
        if document.side_conditions:
            self._print("  provided " + ", ".join(document.side_conditions))
        if trace:
            for line in trace_panel(document.steps, self.width):
                self._print(line)

    def show_documents(self, bundle: TraceBundle, trace: bool = False, as_json: bool = False) -> None:
        if as_json:
            self._print(bundle.model_dump_json(indent=2))
            return
        for index, document in enumerate(bundle.documents):
            if index:
                self._print()
            self.show_document(document, trace)

    def show_text(self, text: str) -> None:
        self.out.write(text)

    def show_message(self, message: str) -> None:
        self._print(message)

    def show_error(self, message: str) -> None:
        self.logger.info("Reporting error: %s", message)
        print(f"error: {message}", file=self.err)
