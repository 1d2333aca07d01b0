"""Tipi valore: scalari esatti, polinomi, algebra di Weyl, matrici."""
