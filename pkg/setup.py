from setuptools import setup, find_packages

setup(
    name="disk-geometry",
    version="0.1.0",
    description="Convex hulls and intersections of disks in constant-curvature planes, with contraction checks",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"])
)
