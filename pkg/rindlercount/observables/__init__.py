"""Detector observables: single-detector statistics, pair correlations, dynamics."""
