"""
Process pool for the family search and the table reports.

Workers log their own tracebacks through multiprocessing's logger, so a
failing partition is visible in the log before the parent re-raises it.
"""

import multiprocessing
import traceback
from multiprocessing.pool import Pool


# Shortcut to multiprocessing's logger
def error(msg, *args):
    return multiprocessing.get_logger().error(msg, *args)


class LogExceptions:
    def __init__(self, task):
        self.task = task

    def __call__(self, *args, **kwargs):
        try:
            return self.task(*args, **kwargs)
        except Exception:
            error("Task {}{} failed:\n{}".format(getattr(self.task, "__name__", self.task), args,
                                                 traceback.format_exc()))
            raise


class LoggingPool(Pool):
    def apply_async(self, func, args=(), kwds=None, callback=None, error_callback=None):
        return Pool.apply_async(self, LogExceptions(func), args, kwds or {}, callback, error_callback)

    def starmap_ordered(self, func, arguments):
        """Runs func(*args) for every tuple in `arguments`; results keep the input order."""
        pending = [self.apply_async(func, tuple(args)) for args in arguments]
        return [result.get() for result in pending]
