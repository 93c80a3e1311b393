"""prcalc: a reflective interpreter for primitive recursion with
predicate abstraction, ordinal termination measures, and a coded
self-evaluation layer."""

__version__ = "0.1.0"
