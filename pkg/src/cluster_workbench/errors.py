"""Error taxonomy shared by all engine modules.

DomainError:    the caller asked for something outside the defined domain
                (bad vertex index, crossing diagonals, non-Dynkin input, ...).
IntegrityError: an internal consistency guarantee failed (inexact division
                where exactness is guaranteed, a broken bijection, ...).
                Seeing one means a bug, not bad input.
"""


class ClusterWorkbenchError(Exception):
    pass


class DomainError(ClusterWorkbenchError):
    pass


class IntegrityError(ClusterWorkbenchError):
    pass
