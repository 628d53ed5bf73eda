"""
Pacing Reduction Package
Exact second-price pacing games and the Pure-Circuit gadget reductions
"""

__version__ = "1.0.0"
