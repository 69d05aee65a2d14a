import typing
import os
import sys
import io
import logging
import hashlib
from contextlib import contextmanager, nullcontext
from multiprocessing import Pool
import numpy as np
import psutil
from agutil import status_bar

class ChampError(Exception):
    """
    Base class for errors raised by champ
    """
    pass

class ValidationError(ChampError, ValueError):
    """
    Raised when an input (network, partition, range, ensemble) fails validation
    """
    pass

class UsageError(ValidationError):
    """
    Raised when a run configuration is invalid before any work begins
    """
    pass

class DegenerateNetworkError(ChampError):
    """
    Raised when a network with zero total weight is used where the null model
    is required
    """
    pass

class UndefinedAdjustmentError(ChampError, ArithmeticError):
    """
    Raised when the chance adjustment of mutual information has a vanishing
    denominator but MI differs from its expectation
    """
    pass

def isatty(*streams: typing.IO) -> bool:
    """
    Returns true if all of the provided streams are ttys
    """
    for stream in streams:
        try:
            if not (hasattr(stream, 'fileno') and os.isatty(stream.fileno())):
                return False
        except io.UnsupportedOperation:
            return False
    return True

def check_range(name: str, bounds: typing.Sequence[float], lower: typing.Optional[float] = None) -> typing.Tuple[float, float]:
    """
    Validates a (lo, hi) pair and returns it as floats.
    Raises a UsageError if the pair is malformed, unordered, or below lower
    """
    if bounds is None or len(bounds) != 2:
        raise UsageError("{} must be a pair of numbers (lo, hi)".format(name))
    try:
        lo, hi = float(bounds[0]), float(bounds[1])
    except (TypeError, ValueError):
        raise UsageError("{} must be a pair of numbers (lo, hi), got {}".format(name, bounds))
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise UsageError("{} must be finite, got ({}, {})".format(name, lo, hi))
    if lo >= hi:
        raise UsageError("{} must satisfy lo < hi, got ({}, {})".format(name, lo, hi))
    if lower is not None and lo < lower:
        raise UsageError("{} must start at or above {}, got {}".format(name, lower, lo))
    return lo, hi

def worker_count(requested: typing.Optional[int] = None) -> int:
    """
    Number of worker processes to use.
    Defaults to the physical core count, and is capped by $CHAMP_THREADS
    """
    count = requested
    if count is None:
        count = psutil.cpu_count(logical=False) or 1
    if 'CHAMP_THREADS' in os.environ:
        try:
            count = min(count, int(os.environ['CHAMP_THREADS']))
        except ValueError:
            champ_logging.warning("Ignoring malformed CHAMP_THREADS={}".format(os.environ['CHAMP_THREADS']))
    return max(1, int(count))

@contextmanager
def terminating(obj):
    """
    Context manager which terminates a worker pool on exit
    """
    try:
        yield obj
    finally:
        obj.terminate()

def parallel_map(func: typing.Callable, items: typing.Sequence[typing.Any], workers: int = 1, chunksize: typing.Optional[int] = None, progress: typing.Optional[str] = None) -> typing.List[typing.Any]:
    """
    Maps func over items, returning results in input order.
    With more than one worker, func and items must be picklable and the work
    is distributed over a process pool.
    If progress is set and stdout is a terminal, a status bar prefixed by
    progress is displayed
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        results = map(func, items)
        pool = None
    else:
        if chunksize is None:
            chunksize = max(1, len(items) // (workers * 4))
        pool = Pool(processes=min(workers, len(items)))
        results = pool.imap(func, items, chunksize=chunksize)
    with terminating(pool) if pool is not None else nullcontext():
        if progress is None or not isatty(sys.stdout):
            return list(results)
        output = []
        with status_bar(len(items), prepend=progress + ' ') as bar:
            for result in results:
                output.append(result)
                bar.update(len(output))
        return output

def base32(buf: bytes):
    """
    Convert a byte array into a base32 encoded string
    """
    table = np.array(list("abcdefghijklmnopqrstuvwxyz012345"))

    bits = np.unpackbits(np.frombuffer(buf, dtype = np.uint8))
    bits = np.pad(bits, (0, (5 - (len(bits) % 5)) % 5), constant_values = 0).reshape(-1, 5)
    return "".join(table[np.ravel(bits@2**np.c_[4:-1:-1])])

def sha1_base32(buf: bytes, n: int = None):
    """
    Return a base32 representation of the first n bytes of SHA1(buf).
    If n = None, the entire buffer will be encoded.
    """

    return base32(hashlib.sha1(buf).digest()[slice(0, n)])

## Hook for get external logging module

CHAMP_GET_LOGGER_HOOK = None

class champ_logging:

    @staticmethod
    def set_get_logger_hook(func):
        global CHAMP_GET_LOGGER_HOOK
        CHAMP_GET_LOGGER_HOOK = func

    @staticmethod
    def log(level, msg, *args, **kwargs):
        if not CHAMP_GET_LOGGER_HOOK:
            return print(msg)
        else:
            return CHAMP_GET_LOGGER_HOOK().log(level, msg, *args, **kwargs)

    @staticmethod
    def info(msg):
        if not CHAMP_GET_LOGGER_HOOK:
            return print(msg)
        else:
            return CHAMP_GET_LOGGER_HOOK().info(msg)

    ## Progress messages are logged one step above INFO so that they can be
    ## filtered apart from library chatter in an interactive session.
    @staticmethod
    def info1(msg):
        if not CHAMP_GET_LOGGER_HOOK:
            return print(msg)
        else:
            return CHAMP_GET_LOGGER_HOOK().log(logging.INFO + 1, msg)

    @staticmethod
    def info2(msg):
        if not CHAMP_GET_LOGGER_HOOK:
            return print(msg)
        else:
            return CHAMP_GET_LOGGER_HOOK().log(logging.INFO + 2, msg)

    @staticmethod
    def warning(msg):
        if not CHAMP_GET_LOGGER_HOOK:
            return print(msg, file=sys.stderr)
        else:
            return CHAMP_GET_LOGGER_HOOK().warning(msg)

    @staticmethod
    def debug(msg):
        if not CHAMP_GET_LOGGER_HOOK:
            return None
        else:
            return CHAMP_GET_LOGGER_HOOK().debug(msg)

    @staticmethod
    def error(msg):
        if not CHAMP_GET_LOGGER_HOOK:
            return print(msg, file=sys.stderr)
        else:
            return CHAMP_GET_LOGGER_HOOK().error(msg)

    @staticmethod
    def print(*args, **kwargs):
        "print-like logging function"
        ## kwargs will be passed to print, but won't be used if logging hook is enabled
        if not CHAMP_GET_LOGGER_HOOK:
            return print(*args, **kwargs)
        args = [str(x) for x in args]
        msg = " ".join(args)
        return CHAMP_GET_LOGGER_HOOK().log(logging.INFO+1, msg) # info1

# Redirect warnings to logging
logging.captureWarnings(True)
