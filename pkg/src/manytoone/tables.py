"""Scenario grids of the k = 3 simulation tables with their published rates.

Each row: (means, sds, n_control, n_treatment, published). Means and sds are
ordered (control, treatment 1, treatment 2, treatment 3). ``published`` holds
the 16 rates in RATE_COLUMNS order.
"""

RATE_COLUMNS = ("Du0", "d1", "d2", "d3", "DuS", "S1", "S2", "S3",
                "DuH", "h1", "h2", "h3", "W0", "w1", "w2", "w3")

TABLES = {
    "h0_small": [
        ((5, 5, 5, 5), (1, 1, 1, 1), 6, 6,
         (0.049, 0.017, 0.021, 0.022, 0.051, 0.019, 0.020, 0.021, 0.049, 0.018, 0.019, 0.021, 0.043, 0.015, 0.017, 0.018)),
        ((5, 5, 5, 5), (1, 1, 1, 4), 6, 6,
         (0.080, 0.000, 0.000, 0.080, 0.062, 0.019, 0.020, 0.027, 0.052, 0.018, 0.019, 0.020, 0.047, 0.016, 0.017, 0.017)),
        ((5, 5, 5, 5), (1, 1, 1, 1), 9, 5,
         (0.057, 0.021, 0.022, 0.023, 0.054, 0.019, 0.020, 0.021, 0.054, 0.018, 0.020, 0.022, 0.048, 0.016, 0.018, 0.019)),
        ((5, 5, 5, 5), (1, 1, 1, 4), 9, 5,
         (0.102, 0.001, 0.001, 0.101, 0.061, 0.018, 0.018, 0.028, 0.052, 0.016, 0.018, 0.019, 0.048, 0.015, 0.016, 0.018)),
    ],
    "h1_balanced": [
        ((5, 5, 5, 3), (1, 1, 1, 1), 6, 6,
         (0.890, 0.020, 0.017, 0.890, 0.854, 0.019, 0.015, 0.853, 0.846, 0.018, 0.015, 0.845, 0.817, 0.014, 0.012, 0.816)),
        ((5, 5, 5, 3), (1, 1, 1, 4), 6, 6,
         (0.354, 0.000, 0.000, 0.354, 0.202, 0.018, 0.017, 0.179, 0.174, 0.018, 0.017, 0.150, 0.164, 0.018, 0.014, 0.142)),
        ((5, 5, 5, 3), (1, 1, 4, 1), 6, 6,
         (0.264, 0.000, 0.070, 0.228, 0.839, 0.023, 0.028, 0.836, 0.836, 0.022, 0.020, 0.833, 0.814, 0.020, 0.018, 0.812)),
        ((5, 5, 5, 3), (1, 4, 1, 1), 6, 6,
         (0.270, 0.070, 0.001, 0.237, 0.826, 0.027, 0.015, 0.824, 0.821, 0.022, 0.013, 0.818, 0.806, 0.021, 0.011, 0.802)),
        ((5, 5, 5, 3), (4, 1, 1, 1), 6, 6,
         (0.366, 0.068, 0.068, 0.366, 0.234, 0.035, 0.035, 0.234, 0.207, 0.031, 0.029, 0.207, 0.130, 0.016, 0.019, 0.130)),
        ((5, 5, 3, 3), (1, 1, 1, 1), 6, 6,
         (0.958, 0.017, 0.892, 0.879, 0.930, 0.015, 0.840, 0.835, 0.929, 0.016, 0.837, 0.827, 0.905, 0.012, 0.807, 0.794)),
        ((5, 5, 3, 3), (1, 1, 1, 4), 6, 6,
         (0.480, 0.000, 0.238, 0.380, 0.862, 0.022, 0.841, 0.180, 0.851, 0.022, 0.833, 0.141, 0.835, 0.019, 0.818, 0.130)),
        ((5, 5, 3, 3), (1, 1, 4, 1), 6, 6,
         (0.464, 0.000, 0.363, 0.224, 0.857, 0.020, 0.168, 0.838, 0.846, 0.019, 0.128, 0.831, 0.829, 0.018, 0.121, 0.811)),
        ((5, 5, 3, 3), (1, 4, 1, 1), 6, 6,
         (0.353, 0.076, 0.239, 0.235, 0.932, 0.030, 0.833, 0.827, 0.927, 0.021, 0.822, 0.823, 0.916, 0.018, 0.804, 0.808)),
        ((5, 5, 3, 3), (4, 1, 1, 1), 6, 6,
         (0.403, 0.068, 0.353, 0.363, 0.266, 0.031, 0.226, 0.230, 0.230, 0.025, 0.192, 0.198, 0.142, 0.016, 0.121, 0.121)),
        ((5, 3, 3, 3), (1, 1, 1, 1), 6, 6,
         (0.984, 0.896, 0.908, 0.893, 0.974, 0.865, 0.858, 0.852, 0.974, 0.857, 0.854, 0.847, 0.960, 0.826, 0.828, 0.818)),
        ((5, 3, 3, 3), (1, 1, 1, 4), 6, 6,
         (0.514, 0.258, 0.238, 0.359, 0.938, 0.830, 0.846, 0.182, 0.931, 0.820, 0.839, 0.145, 0.919, 0.801, 0.818, 0.135)),
        ((5, 3, 3, 3), (1, 1, 4, 1), 6, 6,
         (0.502, 0.225, 0.355, 0.225, 0.932, 0.824, 0.173, 0.816, 0.927, 0.816, 0.135, 0.811, 0.915, 0.797, 0.128, 0.790)),
        ((5, 3, 3, 3), (1, 4, 1, 1), 6, 6,
         (0.532, 0.378, 0.249, 0.235, 0.936, 0.189, 0.829, 0.829, 0.930, 0.146, 0.821, 0.820, 0.917, 0.136, 0.804, 0.803)),
        ((5, 3, 3, 3), (4, 1, 1, 1), 6, 6,
         (0.410, 0.355, 0.350, 0.346, 0.282, 0.230, 0.227, 0.230, 0.243, 0.204, 0.193, 0.196, 0.155, 0.126, 0.124, 0.128)),
    ],
    "h1_unbalanced": [
        ((5, 5, 5, 3), (1, 1, 1, 1), 9, 5,
         (0.909, 0.019, 0.018, 0.909, 0.851, 0.021, 0.019, 0.850, 0.828, 0.020, 0.021, 0.827, 0.812, 0.019, 0.015, 0.812)),
        ((5, 5, 5, 3), (1, 1, 1, 4), 9, 5,
         (0.430, 0.002, 0.000, 0.430, 0.194, 0.020, 0.012, 0.171, 0.147, 0.019, 0.012, 0.121, 0.139, 0.018, 0.011, 0.114)),
        ((5, 5, 5, 3), (1, 1, 4, 1), 9, 5,
         (0.405, 0.002, 0.113, 0.350, 0.844, 0.024, 0.026, 0.839, 0.814, 0.022, 0.019, 0.809, 0.803, 0.021, 0.018, 0.799)),
        ((5, 5, 5, 3), (1, 4, 1, 1), 9, 5,
         (0.394, 0.110, 0.002, 0.340, 0.839, 0.034, 0.018, 0.835, 0.811, 0.023, 0.015, 0.807, 0.801, 0.021, 0.015, 0.797)),
        ((5, 5, 5, 3), (4, 1, 1, 1), 9, 5,
         (0.234, 0.022, 0.018, 0.234, 0.280, 0.028, 0.028, 0.280, 0.278, 0.028, 0.030, 0.278, 0.200, 0.019, 0.014, 0.200)),
        ((5, 5, 3, 3), (1, 1, 1, 1), 9, 5,
         (0.974, 0.019, 0.897, 0.903, 0.960, 0.018, 0.855, 0.850, 0.952, 0.020, 0.830, 0.828, 0.942, 0.016, 0.814, 0.809)),
        ((5, 5, 3, 3), (1, 1, 1, 4), 9, 5,
         (0.568, 0.002, 0.333, 0.421, 0.862, 0.020, 0.845, 0.163, 0.834, 0.021, 0.819, 0.108, 0.823, 0.021, 0.808, 0.102)),
        ((5, 5, 3, 3), (1, 1, 4, 1), 9, 5,
         (0.568, 0.002, 0.412, 0.342, 0.859, 0.019, 0.160, 0.837, 0.826, 0.018, 0.116, 0.807, 0.818, 0.018, 0.111, 0.800)),
        ((5, 5, 3, 3), (1, 4, 1, 1), 9, 5,
         (0.482, 0.117, 0.336, 0.329, 0.952, 0.037, 0.829, 0.833, 0.944, 0.024, 0.797, 0.818, 0.940, 0.021, 0.789, 0.808)),
        ((5, 5, 3, 3), (4, 1, 1, 1), 9, 5,
         (0.289, 0.024, 0.244, 0.243, 0.349, 0.030, 0.297, 0.295, 0.351, 0.031, 0.300, 0.296, 0.252, 0.020, 0.210, 0.208)),
        ((5, 3, 3, 3), (1, 1, 1, 4), 9, 5,
         (0.623, 0.338, 0.330, 0.415, 0.959, 0.831, 0.844, 0.160, 0.950, 0.807, 0.818, 0.105, 0.947, 0.803, 0.808, 0.103)),
        ((5, 3, 3, 3), (1, 1, 4, 1), 9, 5,
         (0.639, 0.358, 0.420, 0.343, 0.966, 0.859, 0.156, 0.848, 0.956, 0.824, 0.102, 0.818, 0.952, 0.814, 0.096, 0.814)),
        ((5, 3, 3, 3), (1, 4, 1, 1), 9, 5,
         (0.636, 0.422, 0.331, 0.336, 0.964, 0.163, 0.849, 0.844, 0.950, 0.116, 0.809, 0.817, 0.950, 0.111, 0.802, 0.810)),
        ((5, 3, 3, 3), (4, 1, 1, 1), 9, 5,
         (0.310, 0.234, 0.237, 0.235, 0.365, 0.286, 0.291, 0.282, 0.366, 0.289, 0.295, 0.281, 0.272, 0.201, 0.205, 0.203)),
    ],
    "h0_moderate": [
        ((5, 5, 5, 5), (1, 1, 1, 1), 20, 20,
         (0.051, 0.020, 0.020, 0.020, 0.049, 0.018, 0.020, 0.020, 0.052, 0.019, 0.021, 0.020, 0.045, 0.016, 0.019, 0.018)),
        ((5, 5, 5, 5), (1, 1, 1, 4), 20, 20,
         (0.064, 0.000, 0.000, 0.064, 0.050, 0.017, 0.019, 0.018, 0.050, 0.017, 0.020, 0.017, 0.046, 0.016, 0.019, 0.015)),
    ],
    "h1_moderate": [
        ((5, 5, 4, 4), (1, 1, 1, 1), 20, 20,
         (0.945, 0.012, 0.845, 0.850, 0.935, 0.011, 0.827, 0.833, 0.938, 0.012, 0.830, 0.837, 0.920, 0.009, 0.807, 0.814)),
        ((5, 5, 4, 4), (1, 1, 1, 4), 20, 20,
         (0.381, 0.000, 0.123, 0.319, 0.852, 0.017, 0.841, 0.141, 0.854, 0.018, 0.843, 0.136, 0.843, 0.016, 0.832, 0.126)),
        ((5, 5, 4, 4), (1, 1, 4, 1), 20, 20,
         (0.383, 0.000, 0.327, 0.112, 0.852, 0.015, 0.156, 0.834, 0.855, 0.015, 0.146, 0.838, 0.843, 0.015, 0.138, 0.825)),
        ((5, 5, 4, 4), (1, 4, 1, 1), 20, 20,
         (0.229, 0.068, 0.122, 0.117, 0.936, 0.023, 0.841, 0.831, 0.937, 0.020, 0.844, 0.834, 0.930, 0.018, 0.832, 0.821)),
        ((5, 5, 4, 4), (4, 1, 1, 1), 20, 20,
         (0.380, 0.066, 0.328, 0.335, 0.269, 0.035, 0.227, 0.227, 0.262, 0.035, 0.222, 0.218, 0.165, 0.018, 0.136, 0.130)),
    ],
}
