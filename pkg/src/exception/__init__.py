import sys
import logging


def error_message_detail(error: Exception, error_detail: sys) -> str:
    """
    Extracts detailed error information including file name, line number, and the error message.

    :param error: The exception that occurred.
    :param error_detail: The sys module to access traceback details.
    :return: A formatted error message string.
    """
    # Extract traceback details (exception information)
    _, _, exc_tb = error_detail.exc_info()

    # Raised outside an except block: nothing to point at
    if exc_tb is None:
        return str(error)

    # Walk to the innermost frame, that is where the geometry actually failed
    while exc_tb.tb_next is not None:
        exc_tb = exc_tb.tb_next

    file_name = exc_tb.tb_frame.f_code.co_filename
    line_number = exc_tb.tb_lineno
    error_message = f"Error occurred in python script: [{file_name}] at line number [{line_number}]: {str(error)}"

    # Log the error for better tracking
    logging.error(error_message)

    return error_message


class GeometryException(Exception):
    """
    Base exception of the disk-geometry toolkit.

    Stage classes wrap unexpected failures with ``raise GeometryException(e, sys) from e``,
    which enriches the message with the failing file and line. Geometry primitives raise
    the subclasses below directly with a plain message.
    """
    def __init__(self, error_message, error_detail: sys = None):
        """
        :param error_message: The error (or a string describing it).
        :param error_detail: The sys module to access traceback details, or None.
        """
        super().__init__(str(error_message))

        if error_detail is not None:
            self.error_message = error_message_detail(error_message, error_detail)
        else:
            self.error_message = str(error_message)

    def __str__(self) -> str:
        return self.error_message


class DomainError(GeometryException):
    """Invalid input: coordinates off the model surface, negative radius, bad scene values."""


class SceneParseError(DomainError):
    """Scene file could not be read or violates the scene schema."""


class UnsupportedGeneratorError(DomainError):
    """A contraction generator was asked to work in a plane where it is not valid."""


class DegenerateGeodesicError(GeometryException):
    """Coincident or antipodal endpoints: no unique geodesic."""


class NoTangentError(GeometryException):
    """One disk contains the other, outer common tangents do not exist."""


class InfiniteFamilyError(GeometryException):
    """Coincident equal disks: every tangent line of the disk is a common tangent."""


class InfiniteCurvatureError(GeometryException):
    """Geodesic curvature requested for a circle of radius 0."""


class PoleProximityError(GeometryException):
    """Stereographic projection evaluated at (or too near) its pole."""


class ChainIntegrityError(GeometryException):
    """A boundary chain whose pieces do not close up or do not alternate properly."""


class HemisphereError(GeometryException):
    """Spherical configuration not contained in a closed hemisphere."""


class SpindleUndefinedError(GeometryException):
    """Spindle requested for points farther apart than twice its radius."""


class TreeStructureError(GeometryException):
    """A central or co-central set failed its tree certificate."""


class SamplingError(GeometryException):
    """Rejection sampler exhausted its budget."""


class ContractionViolationError(GeometryException):
    """A generator produced a configuration that is not a contraction of its input."""


INPUT_ERRORS = (DomainError, HemisphereError)


def is_input_error(error: BaseException) -> bool:
    """True when ``error`` or anything in its cause chain is an input error."""
    seen = set()
    while error is not None and id(error) not in seen:
        if isinstance(error, INPUT_ERRORS):
            return True
        seen.add(id(error))
        error = error.__cause__ or error.__context__
    return False
