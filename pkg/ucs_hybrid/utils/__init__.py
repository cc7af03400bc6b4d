"""UCS hybrid toolkit - Utilities package"""
