# -*- coding: utf-8 -*-

"""
Neural networks, band-wise forecasters, baselines and short/long-term fusion
"""
