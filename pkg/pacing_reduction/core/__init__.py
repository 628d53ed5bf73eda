"""Core Package"""
