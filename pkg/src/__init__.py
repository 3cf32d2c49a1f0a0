# Threshold lab
# PAC-Bayes limitation experiments for 1-D thresholds

__version__ = "0.1.0"
