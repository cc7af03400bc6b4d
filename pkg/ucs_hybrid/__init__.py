"""
UCS Hybrid Toolkit

Trains a small feed-forward network that predicts the uniaxial
compressive strength of concrete, with derivative-free metaheuristics
(SBO, HGSO, SFO, VSA) tuning its weights.

Usage:
    from ucs_hybrid.services.training_service import train_hybrid
    # or
    python -m ucs_hybrid train --data concrete.csv --algo sbo
"""

__version__ = "0.1.0"
__title__ = "UCS Hybrid Toolkit"
__description__ = "Metaheuristic-trained neural networks for concrete strength."
