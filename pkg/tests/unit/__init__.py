"""Unit tests for semitree components"""
