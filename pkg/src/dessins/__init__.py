"""Plane-tree dessins d'enfants with passports of size one."""

__version__ = "0.1.0"
