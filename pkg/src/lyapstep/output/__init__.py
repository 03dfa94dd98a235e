"""Output generation for lyapstep."""

from lyapstep.output.writer import ExperimentWriter, atomic_write_text, format_number

__all__ = ["ExperimentWriter", "atomic_write_text", "format_number"]
