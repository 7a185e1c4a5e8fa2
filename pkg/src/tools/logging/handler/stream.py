"""Stream handler."""

import sys
from typing import TextIO

from tools.logging.handler.abc import BaseHandler


class Stream(BaseHandler):

    """Stream handler, writing to stderr unless told otherwise."""

    default_format = "[{level}] {message}"

    def setup(self, output: TextIO | None = None) -> None:
        """Configure the stream handler.

        Args:
            output (stream, optional): the output stream.  The stream
                    is looked up on each write when not given, so that
                    pytest's capture keeps working.

        """
        self.output = output

    def write(self, text: str) -> None:
        """Write to the stream."""
        output = self.output if self.output is not None else sys.stderr
        output.write(text)
