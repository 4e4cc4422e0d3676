"""
An exact sl2-action on the weak order of the symmetric group, and strong
Sperner certificates for weak orders of finite Coxeter groups.
"""

__version__ = "0.1.0"
