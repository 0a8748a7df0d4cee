import math
from numbers import Integral, Real
from typing import Iterator, Optional, Sequence

from spincorr.util.constants import MAX_N_ATOMS


def validate_iterator(iterator: Iterator):
    if not isinstance(iterator, Iterator):
        raise TypeError(f"`iterator` must be an Iterator but got a {type(iterator)}")


def validate_base(base: int):
    if base <= 0:
        raise ValueError(f"`base` must be > 0 but got {base}")


def validate_concurrency(concurrency: int) -> None:
    if not isinstance(concurrency, Integral) or isinstance(concurrency, bool):
        raise TypeError(f"`concurrency` must be an int but got {repr(concurrency)}")
    if concurrency < 1:
        raise ValueError(f"`concurrency` must be >= 1 but got {concurrency}")


def validate_buffersize(buffersize: int) -> None:
    if buffersize < 1:
        raise ValueError(f"`buffersize` must be >= 1 but got {buffersize}")


def validate_via(via: str) -> None:
    if via not in ["thread", "process"]:
        raise TypeError(f"`via` must be 'thread' or 'process' but got {repr(via)}")


def validate_int(name: str, value: int) -> None:
    if not isinstance(value, Integral) or isinstance(value, bool):
        raise TypeError(f"`{name}` must be an int but got {repr(value)}")


def validate_n_atoms(
    n_atoms: int, max_n_atoms: int = MAX_N_ATOMS, name: str = "n_atoms"
) -> None:
    validate_int(name, n_atoms)
    if n_atoms < 1:
        raise ValueError(f"`{name}` must be >= 1 but got {n_atoms}")
    if n_atoms > max_n_atoms:
        raise ValueError(f"`{name}` must be <= {max_n_atoms} but got {n_atoms}")


def validate_dimension(name: str, expected: int, got: int) -> None:
    if expected != got:
        raise ValueError(f"`{name}` must have dimension {expected} but got {got}")


def validate_axis(axis: str) -> None:
    if axis not in ["X", "Y", "Z"]:
        raise ValueError(f"`axis` must be 'X', 'Y' or 'Z' but got {repr(axis)}")


def validate_finite(name: str, value: float) -> None:
    if not isinstance(value, Real) or isinstance(value, bool):
        raise TypeError(f"`{name}` must be a real number but got {repr(value)}")
    if not math.isfinite(value):
        raise ValueError(f"`{name}` must be finite but got {value}")


def validate_theta(theta: float) -> None:
    validate_finite("theta", theta)
    if not 0 <= theta <= math.pi:
        raise ValueError(f"`theta` must be in [0, pi] but got {theta}")


def validate_tau(tau: float) -> None:
    validate_finite("tau", tau)
    if tau < 0:
        raise ValueError(f"`tau` must be >= 0 but got {tau}")


def validate_m(m: int) -> None:
    validate_int("m", m)
    if m < 2:
        raise ValueError(f"`m` must be >= 2 but got {m}")


def validate_atom_index(atom: int, n_atoms: int) -> None:
    validate_int("atom", atom)
    if not 0 <= atom < n_atoms:
        raise IndexError(f"`atom` must be in [0, {n_atoms}) but got {atom}")


def validate_range(name: str, start: float, stop: float, step: Optional[float]) -> None:
    if step is not None and step <= 0:
        raise ValueError(f"`{name}` step must be > 0 but got {step}")
    if stop < start:
        raise ValueError(f"`{name}` must not be empty but got {start}:{stop}")


def validate_non_empty(name: str, values: Sequence) -> None:
    if not len(values):
        raise ValueError(f"`{name}` must not be empty")


def validate_choice(name: str, value: str, choices: Sequence[str]) -> None:
    if value not in choices:
        expected = ", ".join(map(repr, choices))
        raise ValueError(f"`{name}` must be one of {expected} but got {repr(value)}")
