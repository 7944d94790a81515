"""Exact Jordan structure of matrices and its behaviour under finite-rank perturbations."""
