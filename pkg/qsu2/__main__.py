"""Allow running as: python -m qsu2"""
from qsu2.cli import main

main()
