"""
TWMDG Embed
Temporal walk embeddings and temporal link prediction for transaction graphs
"""
__version__ = "1.0.0"
