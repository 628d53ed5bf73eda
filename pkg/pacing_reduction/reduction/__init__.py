"""Reduction Package"""
