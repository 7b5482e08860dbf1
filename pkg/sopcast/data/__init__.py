# -*- coding: utf-8 -*-

"""
Series containers, windowing and the synthetic dataset generator
"""
