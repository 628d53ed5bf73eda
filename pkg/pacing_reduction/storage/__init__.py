"""Storage Package"""
