"""
Trace replay.

Rebuilds a witness from the parameters recorded in its ConstructionTrace alone,
without any search.
"""

from digitwitness.errors import ConstructionDefectError, DomainError
from digitwitness.numtheory.fracpow import ladder_value
from digitwitness.numtheory.patterns import gap_pattern, pattern_general
from digitwitness.numtheory.solver import chain_value
from digitwitness.types.witness_schema import LADDER_KEYS, ConstructionTrace, Route


def _required(trace: ConstructionTrace, *names: str) -> None:
    missing = [name for name in names if getattr(trace, name) is None]
    if missing:
        raise DomainError(f"trace for route {trace.route.value} lacks {', '.join(missing)}")


def replay_trace(q: int, trace: ConstructionTrace) -> int:
    """
    Re-derive the witness described by trace in base q.

    Raises:
        DomainError: if the trace is missing parameters its route needs
        ConstructionDefectError: if a recorded amplification shift is inconsistent
    """
    route = trace.route
    if route in (Route.BASE2_PATTERN, Route.BASEQ_PATTERN):
        _required(trace, "m", "k", "n")
        return pattern_general(q, trace.m, trace.k, trace.n)
    if route == Route.BASE2_AMPLIFIED:
        _required(trace, "m", "k", "n")
        u = pattern_general(2, trace.m, trace.k, trace.n)
        for step in trace.amplification:
            if (1 << step.w) <= u:
                raise ConstructionDefectError(f"recorded shift w={step.w} does not exceed the witness")
            u = ((1 << (2 * step.w + 1)) + 1) * u
        return u
    if route == Route.BASEQ_GAP:
        _required(trace, "k", "n")
        return gap_pattern(q, trace.k, trace.n)
    if route == Route.BASEQ_CHAIN:
        _required(trace, "k", "n", "chain")
        return chain_value(q, gap_pattern(q, trace.k, trace.n), trace.chain)
    if route == Route.FRAC_SQUARE:
        _required(trace, "inner")
        inner = replay_trace(q, trace.inner)
        return inner * inner
    if route == Route.FRAC_LADDER:
        _required(trace, "n")
        ladder = trace.ladder
        missing = [key for key in LADDER_KEYS if key not in ladder]
        if missing:
            raise DomainError(f"ladder trace lacks {', '.join(missing)}")
        return ladder_value(q, ladder["h"], ladder["m"], trace.n, ladder["d"], ladder["e"])
    raise DomainError(f"cannot replay route {route.value}")
