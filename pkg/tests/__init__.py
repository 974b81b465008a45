"""
Test package for proofmin.
"""
