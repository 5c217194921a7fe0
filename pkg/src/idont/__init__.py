"""Instructional-design ontology toolkit for Indic adult-literacy primers."""

__version__ = "0.1.0"
