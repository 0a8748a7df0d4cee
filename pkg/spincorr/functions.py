import builtins
from typing import Callable, Iterator, Optional, TypeVar

from spincorr.iterators import OrderedMapIterator, ProgressIterator
from spincorr.util.validationtools import (
    validate_concurrency,
    validate_iterator,
    validate_via,
)

T = TypeVar("T")
U = TypeVar("U")


def map(
    transformation: Callable[[T], U],
    iterator: Iterator[T],
    concurrency: int = 1,
    via: str = "thread",
) -> Iterator[U]:
    """
    Lazily applies `transformation` to the elements of `iterator`, in input order.

    Args:
        transformation (Callable[[T], U]): Applied to each element. Must be picklable if `via` is "process".
        iterator (Iterator[T]): Source elements.
        concurrency (int, optional): Number of workers. 1 maps in the calling thread (default: 1).
        via (str, optional): "thread" or "process" workers when `concurrency` > 1 (default: "thread").

    Returns:
        Iterator[U]: The transformed elements.
    """
    validate_iterator(iterator)
    validate_concurrency(concurrency)
    validate_via(via)
    if concurrency == 1:
        return builtins.map(transformation, iterator)
    return OrderedMapIterator(
        iterator,
        transformation,
        concurrency=concurrency,
        buffersize=concurrency,
        via=via,  # type: ignore
    )


def observe(
    iterator: Iterator[T],
    what: str,
    is_flagged: Optional[Callable[[T], bool]] = None,
) -> ProgressIterator[T]:
    validate_iterator(iterator)
    return ProgressIterator(iterator, what, is_flagged)
