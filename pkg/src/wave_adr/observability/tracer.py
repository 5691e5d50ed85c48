"""Wall-clock spans for the setup and solve phases"""
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional
import time

from structlog import get_logger

logger = get_logger(__name__)


@dataclass
class SpanContext:
    """One timed phase"""
    name: str
    start_time: float
    parent: Optional[str] = None
    attributes: Dict[str, Any] = field(default_factory=dict)
    duration: Optional[float] = None
    error: Optional[str] = None

    def set_attribute(self, key: str, value: Any):
        self.attributes[key] = value

    def end(self) -> float:
        """End span and return duration"""
        self.duration = time.perf_counter() - self.start_time
        return self.duration


class PhaseTracer:
    """
    In-memory tracer for one solve.

    Usage:
        tracer = PhaseTracer("problem")
        with tracer.span("eikonal", n=127):
            ...
        tracer.timings()  # {"eikonal": 0.41}
    """

    def __init__(self, run_name: str = "solve"):
        self.run_name = run_name
        self.spans: List[SpanContext] = []
        self._stack: List[SpanContext] = []

    @contextmanager
    def span(self, name: str, **attributes) -> Iterator[SpanContext]:
        parent = self._stack[-1].name if self._stack else None
        ctx = SpanContext(
            name=name, start_time=time.perf_counter(), parent=parent, attributes=attributes
        )
        self._stack.append(ctx)
        try:
            yield ctx
        except Exception as e:
            ctx.error = str(e)
            raise
        finally:
            duration = ctx.end()
            self._stack.pop()
            self.spans.append(ctx)
            if ctx.error is None:
                logger.info(
                    "phase_done",
                    run=self.run_name,
                    phase=name,
                    seconds=round(duration, 6),
                    **ctx.attributes,
                )
            else:
                logger.error(
                    "phase_failed", run=self.run_name, phase=name, error=ctx.error
                )

    def timings(self) -> Dict[str, float]:
        """Seconds per phase name; repeated phases add up."""
        out: Dict[str, float] = {}
        for s in self.spans:
            out[s.name] = out.get(s.name, 0.0) + (s.duration or 0.0)
        return out

    def total(self) -> float:
        return sum(s.duration or 0.0 for s in self.spans if s.parent is None)
