"""Solver Package"""
