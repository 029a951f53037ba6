"""
Colored log output for the wfano command line.

Reports go to stdout, so log records go to stderr (or to the log file given
with -l). Colors are used only when stderr is an ANSI-capable terminal.
"""

import logging
import platform
import sys

RESET = "\x1b[0m"
LEVEL_COLORS = [(logging.CRITICAL, "\x1b[31m"),  # red
                (logging.ERROR, "\x1b[31m"),
                (logging.WARNING, "\x1b[33m"),  # yellow
                (logging.INFO, "\x1b[94m"),  # light blue
                (logging.DEBUG, "\x1b[32m")]  # green

FORMAT = "%(asctime)s %(name)s[%(process)d] %(levelname)s %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def level_color(levelno):
    for level, color in LEVEL_COLORS:
        if levelno >= level:
            return color
    return RESET


def supports_color(stream):
    if platform.system() == "Windows":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


class LevelColorFormatter(logging.Formatter):
    def __init__(self, fmt=FORMAT, datefmt=DATE_FORMAT, colored=True):
        super().__init__(fmt, datefmt)
        self.colored = colored

    def format(self, record):
        text = super().format(record)
        if not self.colored:
            return text
        return "{}{}{}".format(level_color(record.levelno), text, RESET)


def enable_color_logging(debug_lvl=logging.DEBUG, stream=None):
    """Sets the root level and gives the console handler a level-colored format.

    Reuses the stream handler installed by logging.basicConfig when there is
    one; with a log file a second handler echoes warnings to the console.
    """
    stream = stream or sys.stderr
    root = logging.getLogger()
    root.setLevel(debug_lvl)

    formatter = LevelColorFormatter(colored=supports_color(stream))
    for handler in root.handlers:
        if type(handler) is logging.StreamHandler:
            handler.setFormatter(formatter)
            return handler

    handler = logging.StreamHandler(stream)
    handler.setLevel(max(debug_lvl, logging.WARNING))
    handler.setFormatter(formatter)
    root.addHandler(handler)
    return handler
