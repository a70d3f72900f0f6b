from setuptools import setup, find_packages

setup(
    name="Rotary_Coverage_Sim",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "examples*"]),
    package_data={"Rotary_Coverage_Sim": ["config/*.json"]},
    install_requires=[
        "numpy>=1.24.0",
        "tqdm>=4.65.0",
        "psutil>=5.9.0",
    ],
    extras_require={"test": ["pytest>=7.0"]},
    entry_points={
        "console_scripts": ["rotary-coverage=Rotary_Coverage_Sim.sim.cli:main"],
    },
    python_requires=">=3.8",
)
