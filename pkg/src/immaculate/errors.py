"""Exception types shared across the package.

Everything raised on bad *input* derives from ValueError so callers can catch
broadly; InternalCheckError signals a broken invariant inside the library
itself and derives from RuntimeError instead.
"""


class ImmaculateError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ImmaculateError, ValueError):
    """Text or JSON input could not be parsed at all."""


class InvalidInputError(ImmaculateError, ValueError):
    """Input parsed fine but violates a semantic requirement.

    Examples: a hook value outside its cell's allowed range, a tableau that
    is not a standard immaculate tableau where one is required.
    """


class GuardExceededError(ImmaculateError, ValueError):
    """A brute-force or exhaustive operation was asked to exceed its size guard."""


class InternalCheckError(ImmaculateError, RuntimeError):
    """A self-check that should be impossible to fail has failed.

    If one of these escapes, it is a bug in the library (or a counterexample
    to the theory it implements), never a user mistake.
    """
