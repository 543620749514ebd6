"""
dmdplace

Reduced-order modelling of a clamped-free beam by Dynamic Mode Decomposition and
Hankel-singular-value placement of collocated sensor/actuator pairs.

Sub-packages:
    - model: truth snapshots and mass-loaded mode correction
    - identification: DMD, Hankel matrices and Gramian checks
    - placement: placement cost, exhaustive search and the design loop
    - control: modal LTI assembly, LQR and vibration metrics
    - artifacts: CSV/JSON output
"""

__version__ = "0.1.0"
