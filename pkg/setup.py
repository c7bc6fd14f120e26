# coding: utf-8
from setuptools import setup
import os


README = os.path.join(os.path.dirname(__file__), 'README.rst')

setup(name='qfock',
      version='0.1.0',
      description='Exact q-deformed Fock spaces from perfect crystals.',
      long_description=open(README).read(),
      license="MIT",
      packages=['qfock'],
      zip_safe=False,
      platforms='any',
      include_package_data=True,
      install_requires=['sympy>=1.12'],
      extras_require={'tests': ['pytest', 'hypothesis']},
      entry_points={'console_scripts': ['qfock = qfock.cli:main']},
      classifiers=[
          'Development Status :: 3 - Alpha',
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: MIT License',
          'Natural Language :: English',
          'Operating System :: OS Independent',
          'Programming Language :: Python',
          'Programming Language :: Python :: 3',
          'Topic :: Scientific/Engineering :: Mathematics',
      ],
      python_requires='>=3.10',
)
