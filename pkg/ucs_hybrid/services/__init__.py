"""Domain services: dataset, network, metrics, training and run logging"""
