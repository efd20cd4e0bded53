from setuptools import setup

# Metadata, dependencies and the 'toriq' console script live in pyproject.toml.
# This shim only keeps `pip install -e .` working with older setuptools.
if __name__ == "__main__":
    setup()
