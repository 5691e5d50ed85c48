from .tracer import PhaseTracer, SpanContext

__all__ = ['PhaseTracer', 'SpanContext']
