"""File handler."""

import codecs
from pathlib import Path
from typing import TextIO

from tools.logging.handler.abc import BaseHandler

DEFAULT_FORMAT = "{tick:>12} {sim_seconds:>12}s [{level}] {message}"


class File(BaseHandler):

    """File handler.

    Unlike a stream, the file is opened lazily on the first write and
    kept open until `close` is called: simulations may write a lot of
    debug lines and reopening the file for each is costly.

    """

    default_format = DEFAULT_FORMAT

    def setup(self, output_file: str | Path, encoding: str = "utf-8") -> None:
        """Configure the file handler.

        Args:
            output_file (str or Path): the output file.  Relative paths
                    are placed in the logger's directory, if set.
            encoding (str, optional): the encoding.  By default, utf-8.

        """
        path = Path(output_file)
        if not path.is_absolute() and self.logger.directory is not None:
            path = self.logger.directory / path

        codecs.lookup(encoding)
        self.output_file = path
        self.encoding = encoding
        self._file: TextIO | None = None

    def write(self, text: str) -> None:
        """Append a line to the file."""
        if self._file is None:
            self.output_file.parent.mkdir(parents=True, exist_ok=True)
            self._file = self.output_file.open("a", encoding=self.encoding)

        self._file.write(text)

    def close(self) -> None:
        """Close the file, if open."""
        if self._file is not None:
            self._file.close()
            self._file = None
