"""
cat0-collapse - CAT(0) comparison geometry and verified simplicial collapse.

Structure:
    core/          - Shared utilities (config, logging, exceptions, enums, sampling)
    topology/      - Simplicial complexes, free faces and collapses
    geometry/      - Metric simplices, comparison triangles, subembeddings
    geodesics/     - Simplex points, unfoldings, balance points, reroutes, solvers
    verification/  - Link, homology, sampled CAT(0) and Property A checks
    engine/        - The verified collapse engine
    io/            - Complex documents, reports and the command line

Usage:
    # Command line
    python -m src collapse fixtures/tetra.yaml

    # Import in code
    from src.io import parse_complex
    from src.engine import run
"""

__version__ = "0.1.0"
