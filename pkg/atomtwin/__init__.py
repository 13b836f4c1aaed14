# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
U{AtomTwin} is a desk-scale digital twin of a neutral-atom gate-model quantum
computer. It compiles circuits to the machine's native gate set, simulates
them ideally and under Monte-Carlo noise, tunes the Rydberg C_Z gate at the
pulse level and reproduces the GHZ, phase estimation and QAOA benchmarks.

@since: 0.1
@status: Pre-Alpha
"""

from atomtwin import _version


__all__ = [
    'BaseError',
    'SimulationError',
    'CircuitError',
    'CompileError',
    'ConnectivityError',
    'IntegratorError',
    'TuningError',
    'DomainError',
    'ConfigError',
    'DecodeError',
    'EOStream',
    'EncodeError',
    'encode',
    'decode',
    '__version__',
    'version'
]

#: AtomTwin version number.
__version__ = version = _version.version

#: Largest register the statevector simulator accepts.
MAX_QUBITS = 14


class BaseError(Exception):
    """
    Base AtomTwin Error.

    All AtomTwin related errors should be subclassed from this class.
    """


class SimulationError(BaseError):
    """
    Raised when the statevector simulator is handed something it cannot
    simulate: a register of the wrong size, an unknown site or an invalid
    distribution.
    """


class CircuitError(SimulationError):
    """
    Raised when a native operation or circuit is malformed (non-finite angle,
    C{C_Z} on identical sites, duplicate register sites).
    """


class CompileError(BaseError):
    """
    Raised when an abstract program cannot be lowered to the native gate set.
    """


class ConnectivityError(CompileError):
    """
    Raised for a two-qubit gate between sites that share neither a row nor a
    column.

    @ivar site_a: First site of the offending pair.
    @ivar site_b: Second site of the offending pair.
    """

    def __init__(self, site_a, site_b, msg=None):
        self.site_a = site_a
        self.site_b = site_b

        if msg is None:
            msg = 'Sites %s and %s share neither a row nor a column' % (
                site_a, site_b)

        CompileError.__init__(self, msg)


class IntegratorError(BaseError):
    """
    Raised if the pulse integrator fails to converge or drifts in norm.
    """


class TuningError(BaseError):
    """
    Raised if C{C_Z} tuning cannot reach the return population floor.

    @ivar best: The best tuned gate found before giving up.
    """

    def __init__(self, msg, best=None):
        BaseError.__init__(self, msg)

        self.best = best


class DomainError(BaseError):
    """
    Raised when a formula is evaluated outside its domain of validity.
    """


class ConfigError(BaseError):
    """
    Raised for an unreadable or invalid machine configuration.

    @ivar field: The offending C{section.key}, if known.
    @ivar lineno: The offending line number, if known.
    """

    def __init__(self, msg, field=None, lineno=None):
        self.field = field
        self.lineno = lineno

        if lineno is not None:
            msg = 'line %d: %s' % (lineno, msg)

        if field is not None:
            msg = '%s: %s' % (field, msg)

        BaseError.__init__(self, msg)


class DecodeError(BaseError):
    """
    Raised if there is an error in decoding a native circuit text stream.
    """


class EOStream(BaseError):
    """
    Raised if the circuit text stream has come to a natural end.
    """


class EncodeError(BaseError):
    """
    Raised if an element could not be encoded to circuit text.
    """


def decode(stream, *args, **kwargs):
    """
    Decodes circuit text into a L{NativeCircuit<circuit.NativeCircuit>}.

    @param stream: The circuit text.
    @type stream: C{str} or L{util.LineStream}
    @return: The decoded circuit.
    """
    from atomtwin import codec

    decoder = codec.Decoder(stream, *args, **kwargs)

    return decoder.readCircuit()


def encode(*args, **kwargs):
    """
    A helper function to encode native circuits (or bare native operations)
    to circuit text.

    @return: A L{util.LineStream} object that contains the text.
    """
    from atomtwin import codec

    encoder = codec.Encoder(**kwargs)

    [encoder.writeElement(el) for el in args]

    stream = encoder.stream
    stream.seek(0)

    return stream
