"""
cat0-collapse package entry point.
Usage: python -m src <command> [options]
"""
from src.io.cli import main

if __name__ == "__main__":
    main()
