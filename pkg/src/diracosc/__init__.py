"""Dirac oscillator ladder operators and their graded colour algebras."""
