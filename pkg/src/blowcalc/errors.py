"""Exception hierarchy shared across the engine.

Exit-code mapping used by the CLI: input problems exit 2, resource caps
exit 3, false verdicts exit 1 (verdicts are values, not exceptions).
"""


class BlowcalcError(Exception):
    """Base class for all engine errors."""


class ResourceLimitError(BlowcalcError):
    """A desk-scale cap was exceeded (never a silent wrong answer)."""


class InputError(BlowcalcError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    """Polynomial text did not parse; carries the offset into the string."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at offset {pos} in {text!r}")


class SceneError(InputError):
    """Scene document is invalid; carries a JSON-path-style location."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class RingMismatchError(InputError):
    """Operands live in different rings."""


class CenterNotCoordinateError(InputError):
    """No declared frame renders the center generators as variables."""


class CenterNotContainedError(InputError):
    """The center is not a subscheme of the chart."""


class UnknownSourceChartError(InputError):
    """A record references a chart that is not a leaf of the forest."""


class NonPrincipalError(InputError):
    """An operation restricted to locally principal inputs got something else."""


class FrameError(InputError):
    """A declared coordinate frame is not an invertible affine-linear change."""


class MixedDimensionError(InputError):
    """Components of mixed dimension without a declared decomposition."""


class ShapeMismatchError(InputError):
    """Input does not match the multiplicity-dropping gadget shape."""


class OracleCannotResolveError(BlowcalcError):
    """No available resolution oracle covers this input (honest partial coverage)."""


class CertificationError(BlowcalcError):
    """An internal verification failed; signals an engine bug, never bad input."""
