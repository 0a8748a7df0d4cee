import datetime
import time
from collections import deque
from concurrent.futures import Executor, Future, ProcessPoolExecutor, ThreadPoolExecutor
from contextlib import suppress
from typing import Callable, Deque, Iterator, NamedTuple, Optional, TypeVar, Union

from spincorr.util.loggertools import get_logger
from spincorr.util.validationtools import (
    validate_base,
    validate_buffersize,
    validate_concurrency,
    validate_iterator,
    validate_via,
)

with suppress(ImportError):
    from typing import Literal

T = TypeVar("T")
U = TypeVar("U")


class ProgressIterator(Iterator[T]):
    """
    Passes elements through, logging a progress line after 1, `base`, `base`^2, ... calls and once more when exhausted.
    Elements for which `is_flagged` holds are counted and reported next to the errors.
    """

    def __init__(
        self,
        iterator: Iterator[T],
        what: str,
        is_flagged: Optional[Callable[[T], bool]] = None,
        base: int = 2,
    ) -> None:
        validate_iterator(iterator)
        validate_base(base)
        self.iterator = iterator
        self.what = what
        self.is_flagged = is_flagged
        self.base = base

        self._n_calls = 0
        self._n_yields = 0
        self._n_errors = 0
        self._n_flagged = 0
        self._n_calls_at_last_log = 0
        self._next_log_at = 1
        self._start = time.perf_counter()

    def _log(self) -> None:
        elapsed = datetime.timedelta(seconds=time.perf_counter() - self._start)
        get_logger().info(
            "%s %s yielded [elapsed=%s errors=%s flagged=%s]",
            self._n_yields,
            self.what,
            elapsed,
            self._n_errors,
            self._n_flagged,
        )
        self._n_calls_at_last_log = self._n_calls
        self._next_log_at = self.base * self._n_calls

    def _count_call(self) -> None:
        self._n_calls += 1
        if self._n_calls >= self._next_log_at:
            self._log()

    def __next__(self) -> T:
        try:
            elem = next(self.iterator)
        except StopIteration:
            if self._n_calls != self._n_calls_at_last_log:
                self._log()
            raise
        except Exception:
            self._n_errors += 1
            self._count_call()
            raise
        self._n_yields += 1
        if self.is_flagged is not None and self.is_flagged(elem):
            self._n_flagged += 1
        self._count_call()
        return elem


class _Failure(NamedTuple):
    exception: Exception


# module-level so that process workers can unpickle it
def _call(transformation: Callable[[T], U], elem: T) -> Union[U, _Failure]:
    try:
        return transformation(elem)
    except Exception as e:
        return _Failure(e)


class OrderedMapIterator(Iterator[U]):
    """
    Maps `transformation` over `iterator` on `concurrency` threads or processes with at most `buffersize`
    elements in flight. Results come back in input order whatever the completion order; an element whose
    transformation failed re-raises its exception at its own position, and iteration can go on after it.
    """

    def __init__(
        self,
        iterator: Iterator[T],
        transformation: Callable[[T], U],
        concurrency: int,
        buffersize: int,
        via: "Literal['thread', 'process']",
    ) -> None:
        validate_iterator(iterator)
        validate_concurrency(concurrency)
        validate_buffersize(buffersize)
        validate_via(via)
        self.iterator = iterator
        self.transformation = transformation
        self.concurrency = concurrency
        self.buffersize = buffersize
        self.via = via
        self._results = self._ordered_results()

    def _executor(self) -> Executor:
        if self.via == "process":
            return ProcessPoolExecutor(max_workers=self.concurrency)
        return ThreadPoolExecutor(max_workers=self.concurrency)

    def _ordered_results(self) -> Iterator[Union[U, _Failure]]:
        with self._executor() as executor:
            in_flight: Deque["Future[Union[U, _Failure]]"] = deque()

            def submit_next() -> bool:
                try:
                    elem = next(self.iterator)
                except StopIteration:
                    return False
                in_flight.append(executor.submit(_call, self.transformation, elem))
                return True

            while len(in_flight) < self.buffersize and submit_next():
                pass
            while in_flight:
                result = in_flight.popleft().result()
                submit_next()
                yield result

    def __next__(self) -> U:
        result = next(self._results)
        if isinstance(result, _Failure):
            raise result.exception
        return result
