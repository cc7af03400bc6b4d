"""
Published reference values

Descriptive statistics of the 323-sample concrete dataset, the accuracy
figures reported for the four hybrids, and the weights of the ANN-SBO
network. Values are copied as printed; nothing here is computed.
"""

# ============================================================================
# DATASET STATISTICS (mean, standard error, sample variance, min, max)
# ============================================================================

REFERENCE_SAMPLE_COUNT = 323

DATASET_STATISTICS = {
    "CSC": (48.35, 0.24, 18.79, 35.50, 63.40),
    "TSC": (8.28, 0.03, 0.34, 6.90, 10.20),
    "CA": (75.58, 5.47, 9667.60, 1.00, 388.00),
    "DMAX": (30.71, 0.65, 134.97, 16.00, 80.00),
    "SPC": (8.24, 0.27, 24.01, 0.00, 20.00),
    "FM": (3.04, 0.01, 0.07, 2.20, 3.50),
    "WB": (0.43, 0.01, 0.01, 0.25, 0.69),
    "SR": (37.13, 0.24, 19.04, 28.00, 45.00),
    "UCS": (53.64, 0.98, 310.48, 4.23, 96.30),
}

# ============================================================================
# ACCURACY OF THE FOUR HYBRIDS
# (training RMSE, MAPE, MAE, R, testing RMSE, MAPE, MAE, R)
# ============================================================================

HYBRID_ACCURACY = {
    "HGSO": (9.5808, 19.8959, 7.5026, 0.85405, 9.5249, 15.9719, 7.8632, 0.87394),
    "SFO": (8.6609, 18.2992, 6.5996, 0.87083, 8.5728, 15.3845, 7.0550, 0.87936),
    "VSA": (5.8703, 12.4676, 4.4869, 0.94302, 5.3086, 9.4970, 4.4006, 0.95329),
    "SBO": (5.6826, 11.8997, 4.1476, 0.94703, 5.1679, 8.0629, 3.9068, 0.95663),
}

# Selected population sizes
SELECTED_POPULATION_SIZES = {"HGSO": 300, "SFO": 300, "VSA": 400, "SBO": 300}

# ============================================================================
# ANN-SBO WEIGHTS (8 -> 4 -> 1)
# ============================================================================

FROZEN_IW = (
    (0.6833, -0.5114, -0.5029, 0.2177, 0.6053, -0.8074, 0.5226, -0.6722),
    (0.3366, -0.7136, 0.8009, 0.4262, -0.8098, -0.7488, -0.2934, 0.1542),
    (0.5897, -0.8527, 0.6029, 0.4868, -0.3901, -0.6794, 0.3389, 0.6066),
    (0.3746, 1.0160, -0.6758, -0.0013, -0.8689, -0.0004, -0.5348, 0.3186),
)
FROZEN_B1 = (-1.6649, -0.5550, 0.5550, 1.6649)
FROZEN_LW = (0.2191, 0.7574, -0.1970, -0.6422)
FROZEN_B2 = -0.5543
