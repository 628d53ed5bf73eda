"""Circuit Package"""
