"""
Setup config for shellswarm package
"""

from setuptools import setup, find_packages

setup(name='shellswarm',
      version='1.0.0',
      description='Equilibria, gradient flows and convexity of power-law interaction energies',
      long_description_content_type='text/x-rst',
      long_description=open('README.rst').read(),
      keywords='aggregation interaction energy swarm equilibria optimal transport',
      license='Apache License 2.0',
      zip_safe=False,
      packages=find_packages(exclude=['tests']),
      entry_points={'console_scripts': ['shellswarm=shellswarm.shellswarm:main']},
      test_requires=['pytest',
                     'pytest-cov',
                     'hypothesis'],
      python_requires='>=3.7',
      install_requires=[
          'psutil',
          'pyyaml',
          'numpy',
          'pandas>=1.0',
          'scipy>=1.4'
      ])
