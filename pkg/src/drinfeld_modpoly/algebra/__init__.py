"""Exact arithmetic: finite fields, F_q[T], its fraction field, quotient algebras and series."""
