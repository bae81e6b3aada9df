from setuptools import setup

setup(
   name='moebiusql',
   version='0.1.0',
   description='spectral and number-theory experiments on the Moebius function',
   author='Afshawn Lotfi',
   author_email='',
   packages=['moebiusql', 'moebiusql.arith', 'moebiusql.artifacts', 'moebiusql.dynsys', 'moebiusql.measures', 'moebiusql.randmodel', 'moebiusql.spectral', 'moebiusql.transactions', 'moebiusql.utils'],
   install_requires=[
    "numpy",
    "scipy",
    "numba",
    "pandas",
    "plotly",
   ],
   entry_points={
    "console_scripts": ["moebiusql=moebiusql.cli:main"],
   },
)
