from setuptools import setup, find_packages


# List of requirements
# This could be retrieved from requirements.txt
requirements = [
    "numpy",
    "scipy",
    "Pillow",
    "tqdm",
    "toml",
]


# Package (minimal) configuration
setup(
    name="boostcoh",
    version="0.0.1",
    description="coherence of boosted spin states of relativistic wave packets",
    package_dir={"": "."},
    packages=find_packages(exclude=["tests", "tests.*"]),  # __init__.py folders search
    install_requires=requirements,
    entry_points={"console_scripts": ["sweep=boostcoh.cli:main"]},
)
