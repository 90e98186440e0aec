from setuptools import find_packages, setup

setup(
    name="pv_performance",
    version="0.1.0",
    description="Performance, economic and environmental analysis of rooftop grid-tied PV systems",
    packages=find_packages(include=["config", "config.*", "src", "src.*"]),
    py_modules=["main"],
    install_requires=[
        "numpy",
        "pandas",
        "scipy",
        "numpy-financial",
        "pydantic>=2",
        "python-dotenv",
        "tqdm",
    ],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["pvperf = main:main"]},
    python_requires=">=3.9",
)
