from rich.table import Table

__all__ = ['Table']
