"""
Semitree Application
"""
