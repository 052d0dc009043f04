"""Generalized Cesàro operators on sequence spaces."""
